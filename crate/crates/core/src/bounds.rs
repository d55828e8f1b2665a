//! Linear constraints between joint entropy `H`, multi-information `I` and
//! binding information `B` for `N` variables on a `K`-symbol alphabet.
//!
//! Five of them are theorems; the last two (`I ≤ (N-1) B` and `B ≤ (N-1) I`)
//! are empirical conjectures whose per-`N` proofs live in [`crate::prover`].

use serde::Serialize;

use crate::dist::{JointTable, Shape, SubsetMask};
use crate::error::Result;
use crate::measures::MeasureReport;
use crate::processes::{
    derive_seed, giant_bit_process, independent_uniform, known_state, modulo_process,
    random_simplex,
};

/// A margin below `-VIOLATION_THRESHOLD` bits is a genuine violation.
pub const VIOLATION_THRESHOLD: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Inequality {
    /// `I ≤ N log K - H`
    MultiVsEntropyCeiling,
    /// `I ≤ (N-1) H`
    MultiVsEntropy,
    /// `B ≤ H`
    BindingVsEntropy,
    /// `B ≤ (N-1)(N log K - H)`
    BindingVsEntropyCeiling,
    /// `I + B ≤ N log K`
    SumCeiling,
    /// `I ≤ (N-1) B`
    MultiVsBinding,
    /// `B ≤ (N-1) I`
    BindingVsMulti,
}

impl Inequality {
    pub const ALL: [Inequality; 7] = [
        Inequality::MultiVsEntropyCeiling,
        Inequality::MultiVsEntropy,
        Inequality::BindingVsEntropy,
        Inequality::BindingVsEntropyCeiling,
        Inequality::SumCeiling,
        Inequality::MultiVsBinding,
        Inequality::BindingVsMulti,
    ];

    /// Proven for every `N`, as opposed to checked empirically.
    pub fn is_theorem(self) -> bool {
        !matches!(
            self,
            Inequality::MultiVsBinding | Inequality::BindingVsMulti
        )
    }

    pub fn label(self) -> &'static str {
        match self {
            Inequality::MultiVsEntropyCeiling => "I<=NlogK-H",
            Inequality::MultiVsEntropy => "I<=(N-1)H",
            Inequality::BindingVsEntropy => "B<=H",
            Inequality::BindingVsEntropyCeiling => "B<=(N-1)(NlogK-H)",
            Inequality::SumCeiling => "I+B<=NlogK",
            Inequality::MultiVsBinding => "I<=(N-1)B",
            Inequality::BindingVsMulti => "B<=(N-1)I",
        }
    }

    /// `(lhs, rhs)` for the given measurements.
    pub fn sides(self, n: usize, k: usize, h: f64, i: f64, b: f64) -> (f64, f64) {
        let n1 = n as f64 - 1.0;
        let cap = n as f64 * (k as f64).log2();
        match self {
            Inequality::MultiVsEntropyCeiling => (i, cap - h),
            Inequality::MultiVsEntropy => (i, n1 * h),
            Inequality::BindingVsEntropy => (b, h),
            Inequality::BindingVsEntropyCeiling => (b, n1 * (cap - h)),
            Inequality::SumCeiling => (i + b, cap),
            Inequality::MultiVsBinding => (i, n1 * b),
            Inequality::BindingVsMulti => (b, n1 * i),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundRecord {
    pub name: &'static str,
    pub inequality: Inequality,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`
    pub margin: f64,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub n: usize,
    pub k: usize,
    pub joint_entropy: f64,
    pub multi_information: f64,
    pub binding_information: f64,
    pub records: Vec<BoundRecord>,
}

impl BoundsReport {
    pub fn all_satisfied(&self) -> bool {
        self.records.iter().all(|r| r.satisfied)
    }

    pub fn margins(&self) -> [f64; 7] {
        std::array::from_fn(|j| self.records[j].margin)
    }

    pub fn record(&self, which: Inequality) -> &BoundRecord {
        self.records
            .iter()
            .find(|r| r.inequality == which)
            .expect("every inequality is recorded")
    }
}

pub fn check_measurements(n: usize, k: usize, h: f64, i: f64, b: f64) -> BoundsReport {
    let records = Inequality::ALL
        .iter()
        .map(|&ineq| {
            let (lhs, rhs) = ineq.sides(n, k, h, i, b);
            let margin = rhs - lhs;
            BoundRecord {
                name: ineq.label(),
                inequality: ineq,
                lhs,
                rhs,
                margin,
                satisfied: margin >= -VIOLATION_THRESHOLD,
            }
        })
        .collect();
    BoundsReport {
        n,
        k,
        joint_entropy: h,
        multi_information: i,
        binding_information: b,
        records,
    }
}

/// Evaluates all seven inequalities on `joint`.
pub fn check_bounds(joint: &JointTable) -> Result<BoundsReport> {
    let m = MeasureReport::compute(joint)?;
    Ok(check_measurements(
        joint.n_vars(),
        joint.alphabet_size(),
        m.joint_entropy,
        m.multi_information,
        m.binding_information,
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CornerPoint {
    pub label: &'static str,
    pub joint_entropy: f64,
    pub multi_information: f64,
    pub binding_information: f64,
}

/// The labelled points of the `(H, I, B)` feasible region, each obtained by
/// building the process and measuring it: known state, giant bit (binary
/// alphabets only), modulo-K process and independent uniform symbols.
pub fn corner_points(n: usize, k: usize) -> Result<Vec<CornerPoint>> {
    let mut tables: Vec<(&'static str, JointTable)> =
        vec![("known_state", known_state(n, k, &vec![0; n].into())?)];
    if k == 2 {
        tables.push(("giant_bit", giant_bit_process(n, SubsetMask::full(n))?));
    }
    tables.push(("modulo", modulo_process(n, k, 0)?));
    tables.push(("independent", independent_uniform(n, k)?));
    tables
        .into_iter()
        .map(|(label, t)| {
            let m = MeasureReport::compute(&t)?;
            Ok(CornerPoint {
                label,
                joint_entropy: m.joint_entropy,
                multi_information: m.multi_information,
                binding_information: m.binding_information,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleRow {
    pub seed: u64,
    pub report: BoundsReport,
}

/// Checks `samples` uniform-simplex draws; draw `j` uses `derive_seed(seed, j)`.
pub fn random_batch(n: usize, k: usize, samples: usize, seed: u64) -> Result<Vec<SampleRow>> {
    let shape = Shape::new(n, k)?;
    (0..samples as u64)
        .map(|j| {
            let s = derive_seed(seed, j);
            Ok(SampleRow {
                seed: s,
                report: check_bounds(&random_simplex(shape, s))?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn parity_six() {
        let r = check_bounds(&modulo_process(6, 2, 0).unwrap()).unwrap();
        assert!(r.all_satisfied());
        assert_abs_diff_eq!(r.joint_entropy, 5.0, epsilon = 1e-9);
        assert_abs_diff_eq!(r.multi_information, 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(r.binding_information, 5.0, epsilon = 1e-9);
        assert!(r.record(Inequality::BindingVsEntropy).margin.abs() < 1e-9);
        // also tight: B ≤ (N-1)(N - H) and B ≤ (N-1) I
        assert!(r.record(Inequality::BindingVsEntropyCeiling).margin.abs() < 1e-9);
        assert!(r.record(Inequality::BindingVsMulti).margin.abs() < 1e-9);
    }

    #[test]
    fn giant_bit_six() {
        let r = check_bounds(&giant_bit_process(6, SubsetMask::full(6)).unwrap()).unwrap();
        assert!(r.all_satisfied());
        assert_abs_diff_eq!(r.joint_entropy, 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(r.multi_information, 5.0, epsilon = 1e-9);
        assert_abs_diff_eq!(r.binding_information, 1.0, epsilon = 1e-9);
        assert!(r.record(Inequality::MultiVsEntropy).margin.abs() < 1e-9);
        assert!(r.record(Inequality::MultiVsBinding).margin.abs() < 1e-9);
    }

    #[test]
    fn independent_six() {
        let r = check_bounds(&independent_uniform(6, 2).unwrap()).unwrap();
        assert!(r.all_satisfied());
        assert_abs_diff_eq!(r.joint_entropy, 6.0, epsilon = 1e-9);
        assert!(r.record(Inequality::MultiVsEntropyCeiling).margin.abs() < 1e-9);
        assert!(r.record(Inequality::BindingVsEntropyCeiling).margin.abs() < 1e-9);
        assert_abs_diff_eq!(r.record(Inequality::SumCeiling).margin, 6.0, epsilon = 1e-9);
    }

    #[test]
    fn violation_is_flagged() {
        // not a realizable triple: B > H
        let r = check_measurements(3, 2, 1.0, 0.5, 1.5);
        assert!(!r.record(Inequality::BindingVsEntropy).satisfied);
        assert!(!r.all_satisfied());
        assert_eq!(r.record(Inequality::BindingVsEntropy).margin, -0.5);
    }

    #[test]
    fn corner_examples() {
        let pts = corner_points(6, 2).unwrap();
        let triples: Vec<[f64; 3]> = pts
            .iter()
            .map(|p| [p.joint_entropy, p.multi_information, p.binding_information])
            .collect();
        let expected = [
            [0.0, 0.0, 0.0],
            [1.0, 5.0, 1.0],
            [5.0, 1.0, 5.0],
            [6.0, 0.0, 0.0],
        ];
        for (got, want) in triples.iter().zip(expected) {
            for (g, w) in got.iter().zip(want) {
                assert_abs_diff_eq!(*g, w, epsilon = 1e-9);
            }
        }

        let pts = corner_points(2, 2).unwrap();
        for p in &pts[1..3] {
            assert_abs_diff_eq!(p.joint_entropy, 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(p.multi_information, 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(p.binding_information, 1.0, epsilon = 1e-12);
        }

        let pts = corner_points(3, 3).unwrap();
        assert_eq!(pts.len(), 3);
        let modulo = pts.iter().find(|p| p.label == "modulo").unwrap();
        let l3 = 3f64.log2();
        assert_abs_diff_eq!(modulo.joint_entropy, 2.0 * l3, epsilon = 1e-9);
        assert_abs_diff_eq!(modulo.multi_information, l3, epsilon = 1e-9);
        assert_abs_diff_eq!(modulo.binding_information, 2.0 * l3, epsilon = 1e-9);
    }

    #[test]
    fn small_random_batch_holds() {
        let rows = random_batch(3, 2, 1000, 11).unwrap();
        assert_eq!(rows.len(), 1000);
        assert!(rows.iter().all(|r| r.report.all_satisfied()));
        assert_eq!(rows, random_batch(3, 2, 1000, 11).unwrap());
    }
}
