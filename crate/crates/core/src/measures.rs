//! Finite-set information measures, all in bits.
//!
//! Every conditional quantity is a difference of marginal entropies, so
//! zero-probability conditioning events never need special handling. Small
//! negative results from cancellation (down to `-1e-9`) are reported as 0;
//! anything more negative is an [`Error::Inconsistent`].

use serde::Serialize;

use crate::dist::{marginal_masses, JointTable, SubsetMask};
use crate::error::{Error, Result};

/// Values in `[-NEGATIVE_GATE, 0)` are float noise.
pub const NEGATIVE_GATE: f64 = 1e-9;

/// Shannon entropy in bits of a (possibly unnormalized) mass vector, `0 log 0 = 0`.
pub fn shannon_entropy(masses: &[f64]) -> f64 {
    let h = -masses
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| p * p.log2())
        .sum::<f64>();
    // a point mass sums to -0
    h + 0.0
}

pub(crate) fn gate(quantity: &'static str, value: f64) -> Result<f64> {
    if value >= 0.0 {
        Ok(value)
    } else if value >= -NEGATIVE_GATE {
        Ok(0.0)
    } else {
        Err(Error::Inconsistent { quantity, value })
    }
}

/// Entropy of the marginal on `subset`; the empty subset has entropy 0.
pub(crate) fn subset_entropy(joint: &JointTable, subset: SubsetMask) -> f64 {
    if subset.is_empty() {
        0.0
    } else if subset == joint.shape().full_mask() {
        shannon_entropy(joint.probs())
    } else {
        shannon_entropy(&marginal_masses(&joint.shape(), joint.probs(), subset))
    }
}

pub fn entropy(joint: &JointTable, subset: SubsetMask) -> Result<f64> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    joint.shape().check_mask(subset)?;
    Ok(subset_entropy(joint, subset))
}

/// `H(target | given) = H(target ∪ given) - H(given)`.
pub fn conditional_entropy(
    joint: &JointTable,
    target: SubsetMask,
    given: SubsetMask,
) -> Result<f64> {
    if target.is_empty() {
        return Err(Error::EmptySubset);
    }
    let shape = joint.shape();
    shape.check_mask(target)?;
    shape.check_mask(given)?;
    if !target.is_disjoint(given) {
        return Err(Error::OverlappingSubsets);
    }
    gate(
        "conditional entropy",
        subset_entropy(joint, target.union(given)) - subset_entropy(joint, given),
    )
}

/// `I(a; b | given)`.
pub fn mutual_information(
    joint: &JointTable,
    a: SubsetMask,
    b: SubsetMask,
    given: SubsetMask,
) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySubset);
    }
    let shape = joint.shape();
    for m in [a, b, given] {
        shape.check_mask(m)?;
    }
    if !a.is_disjoint(b) || !a.is_disjoint(given) || !b.is_disjoint(given) {
        return Err(Error::OverlappingSubsets);
    }
    let h = |m: SubsetMask| subset_entropy(joint, m);
    gate(
        "mutual information",
        h(a.union(given)) + h(b.union(given)) - h(a.union(b).union(given)) - h(given),
    )
}

/// `Σ_i H(X_i) - H(X_0..X_{N-1})`.
pub fn multi_information(joint: &JointTable) -> Result<f64> {
    let n = joint.n_vars();
    let singles: f64 = (0..n)
        .map(|i| subset_entropy(joint, SubsetMask::single(i)))
        .sum();
    gate(
        "multi-information",
        singles - subset_entropy(joint, SubsetMask::full(n)),
    )
}

/// Joint entropy minus the entropy each variable keeps once all others are known.
///
/// Evaluated as `Σ_i H(all but i) - (N-1) H(all)`.
pub fn binding_information(joint: &JointTable) -> Result<f64> {
    let n = joint.n_vars();
    let full = SubsetMask::full(n);
    let leave_one_out: f64 = (0..n).map(|i| subset_entropy(joint, full.without(i))).sum();
    gate(
        "binding information",
        leave_one_out - (n as f64 - 1.0) * subset_entropy(joint, full),
    )
}

/// `Σ_i H(X_i | all others)`.
pub fn residual_entropy(joint: &JointTable) -> Result<f64> {
    let n = joint.n_vars();
    let full = SubsetMask::full(n);
    let h = subset_entropy(joint, full);
    gate(
        "residual entropy",
        (0..n)
            .map(|i| h - subset_entropy(joint, full.without(i)))
            .sum(),
    )
}

fn check_ordering(n: usize, ordering: &[usize]) -> Result<()> {
    let mut seen = vec![false; n];
    if ordering.len() != n {
        return Err(Error::NotAPermutation(n));
    }
    for &v in ordering {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(Error::NotAPermutation(n));
        }
    }
    Ok(())
}

/// Per-step predictive information along `ordering`:
/// element `t` is `I(X_σ(t); X_σ(t+1..) | X_σ(..t))`. The last element is 0.
pub fn pir_profile(joint: &JointTable, ordering: &[usize]) -> Result<Vec<f64>> {
    let n = joint.n_vars();
    check_ordering(n, ordering)?;
    let mut past = SubsetMask::EMPTY;
    let mut profile = Vec::with_capacity(n);
    for (t, &v) in ordering.iter().enumerate() {
        let present = SubsetMask::single(v);
        let future = SubsetMask::from_indices(&ordering[t + 1..]);
        let value = if future.is_empty() {
            0.0
        } else {
            mutual_information(joint, present, future, past)?
        };
        profile.push(value);
        past = past.with(v);
    }
    Ok(profile)
}

/// Sum of [`pir_profile`]; equal to [`binding_information`] for any ordering.
pub fn binding_by_accumulation(joint: &JointTable, ordering: &[usize]) -> Result<f64> {
    Ok(pir_profile(joint, ordering)?.iter().sum())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureReport {
    pub joint_entropy: f64,
    pub multi_information: f64,
    pub binding_information: f64,
    pub residual_entropy: f64,
    pub per_variable_entropies: Vec<f64>,
}

impl MeasureReport {
    pub fn compute(joint: &JointTable) -> Result<Self> {
        let n = joint.n_vars();
        let full = SubsetMask::full(n);
        let h = subset_entropy(joint, full);
        let singles: Vec<f64> = (0..n)
            .map(|i| subset_entropy(joint, SubsetMask::single(i)))
            .collect();
        let loo: Vec<f64> = (0..n)
            .map(|i| subset_entropy(joint, full.without(i)))
            .collect();
        let loo_sum: f64 = loo.iter().sum();
        Ok(Self {
            joint_entropy: h,
            multi_information: gate("multi-information", singles.iter().sum::<f64>() - h)?,
            binding_information: gate("binding information", loo_sum - (n as f64 - 1.0) * h)?,
            residual_entropy: gate("residual entropy", n as f64 * h - loo_sum)?,
            per_variable_entropies: singles,
        })
    }
}
