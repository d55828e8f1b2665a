//! Rates of stationary first-order Markov chains.
//!
//! For a first-order chain every limit involved has a closed form:
//! `H(n) = H(1) + (n-1) h`, the excess entropy and multi-information rate both
//! equal `H(1) - h`, and the entropy of one symbol given the whole past and
//! future reduces to `H(X_0 | X_-1, X_1)`. Brute-force block distributions are
//! available alongside for cross-checking.

use nalgebra::{DMatrix, DVector};
use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use serde::Serialize;

use crate::dist::{JointTable, Shape, SubsetMask};
use crate::error::{Error, Result};
use crate::measures::{self, gate, shannon_entropy};

/// Rows must sum to one within this before they are renormalized.
pub const ROW_TOLERANCE: f64 = 1e-9;

/// Random chains used for property checks reject transition probabilities below this.
pub const MIN_RANDOM_TRANSITION: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct MarkovModel {
    transition: Vec<Vec<f64>>,
    stationary: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateReport {
    /// `H(1)`, entropy of the stationary distribution.
    pub marginal_entropy: f64,
    /// Entropy rate.
    pub h_mu: f64,
    /// Multi-information rate, `H(1) - h_mu`.
    pub rho_mu: f64,
    /// Residual entropy rate.
    pub r_mu: f64,
    /// Predictive information rate, `h_mu - r_mu`.
    pub b_mu: f64,
    /// Past/future mutual information; equals `rho_mu` here.
    pub excess_entropy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityRow {
    pub n: usize,
    pub block_entropy: f64,
    pub multi_information: f64,
    pub predictive_information: f64,
    /// `H(n) - n h_mu - I_pred(n)`
    pub extensive_entropy_residual: f64,
    /// `I(X_1..n) + I_pred(n) - n rho_mu`
    pub extensive_multi_information_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub rows: Vec<IdentityRow>,
    pub max_violation: f64,
}

fn check_rows(transition: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let k = transition.len();
    if k < 2 {
        return Err(Error::NotStochastic(format!(
            "need at least 2 states, got {k}"
        )));
    }
    transition
        .iter()
        .enumerate()
        .map(|(i, row)| {
            if row.len() != k {
                return Err(Error::NotStochastic(format!(
                    "row {i} has {} entries, expected {k}",
                    row.len()
                )));
            }
            if let Some(p) = row.iter().find(|p| !p.is_finite() || **p < 0.0) {
                return Err(Error::NotStochastic(format!("row {i} has entry {p}")));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > ROW_TOLERANCE {
                return Err(Error::NotStochastic(format!("row {i} sums to {sum}")));
            }
            Ok(row.iter().map(|p| p / sum).collect())
        })
        .collect()
}

/// Number of closed communicating classes of the transition graph.
fn closed_classes(transition: &[Vec<f64>]) -> usize {
    let k = transition.len();
    let reach: Vec<Vec<bool>> = (0..k)
        .map(|s| {
            let mut seen = vec![false; k];
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(i) = stack.pop() {
                for (j, &p) in transition[i].iter().enumerate() {
                    if p > 0.0 && !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            seen
        })
        .collect();
    let recurrent = |i: usize| (0..k).all(|j| !reach[i][j] || reach[j][i]);
    let mut classes: Vec<&Vec<bool>> = Vec::new();
    for i in (0..k).filter(|&i| recurrent(i)) {
        if !classes.contains(&&reach[i]) {
            classes.push(&reach[i]);
        }
    }
    classes.len()
}

/// Solves `π T = π`, `Σ π = 1`. Chains with more than one closed class are rejected.
pub fn stationary_distribution(transition: &[Vec<f64>]) -> Result<Vec<f64>> {
    let t = check_rows(transition)?;
    let k = t.len();
    let classes = closed_classes(&t);
    if classes != 1 {
        return Err(Error::NonUniqueStationary(classes));
    }
    // (Tᵀ - I) π = 0 with the last equation replaced by normalization
    let mut a = DMatrix::from_fn(k, k, |i, j| t[j][i] - if i == j { 1.0 } else { 0.0 });
    a.row_mut(k - 1).fill(1.0);
    let mut b = DVector::zeros(k);
    b[k - 1] = 1.0;
    let pi = a
        .lu()
        .solve(&b)
        .ok_or_else(|| Error::NotStochastic("singular stationary system".into()))?;
    let mut pi: Vec<f64> = pi.iter().map(|&p| p.max(0.0)).collect();
    let total: f64 = pi.iter().sum();
    pi.iter_mut().for_each(|p| *p /= total);
    Ok(pi)
}

impl MarkovModel {
    pub fn new(transition: Vec<Vec<f64>>) -> Result<Self> {
        let stationary = stationary_distribution(&transition)?;
        let transition = check_rows(&transition)?;
        Ok(Self {
            transition,
            stationary,
        })
    }

    /// Binary chain that flips state with probability `flip`.
    pub fn binary_symmetric(flip: f64) -> Result<Self> {
        Self::new(vec![vec![1.0 - flip, flip], vec![flip, 1.0 - flip]])
    }

    /// Rows drawn uniformly from the simplex; chains with any transition
    /// probability below [`MIN_RANDOM_TRANSITION`] are redrawn.
    pub fn random<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Result<Self> {
        loop {
            let rows: Vec<Vec<f64>> = (0..k)
                .map(|_| {
                    let raw: Vec<f64> = (0..k).map(|_| rng.sample::<f64, _>(Exp1)).collect();
                    let s: f64 = raw.iter().sum();
                    raw.into_iter().map(|x| x / s).collect()
                })
                .collect();
            if rows.iter().flatten().all(|&p| p >= MIN_RANDOM_TRANSITION) {
                return Self::new(rows);
            }
        }
    }

    /// Parses `K` followed by `K` rows of `K` probabilities.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut tokens = text.split_whitespace();
        let k: usize = tokens
            .next()
            .ok_or(Error::EmptyFile)?
            .parse()
            .map_err(|e| Error::Parse(format!("bad alphabet size: {e}")))?;
        let values = tokens
            .map(|t| {
                t.parse::<f64>()
                    .map_err(|e| Error::Parse(format!("bad probability {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if values.len() != k * k {
            return Err(Error::Parse(format!(
                "expected {} transition probabilities, got {}",
                k * k,
                values.len()
            )));
        }
        Self::new(values.chunks(k).map(|r| r.to_vec()).collect())
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.k());
        for row in &self.transition {
            let cells: Vec<String> = row.iter().map(|p| format!("{p}")).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.transition.len()
    }

    pub fn transition(&self) -> &[Vec<f64>] {
        &self.transition
    }

    pub fn stationary(&self) -> &[f64] {
        &self.stationary
    }

    /// `H(1)`.
    pub fn marginal_entropy(&self) -> f64 {
        shannon_entropy(&self.stationary)
    }

    /// `Σ_i π_i H(T_i)`.
    pub fn entropy_rate(&self) -> f64 {
        self.stationary
            .iter()
            .zip(&self.transition)
            .map(|(p, row)| p * shannon_entropy(row))
            .sum()
    }

    /// `H(1) + (n - 1) h`.
    pub fn block_entropy(&self, n: usize) -> f64 {
        assert!(n >= 1, "block length must be positive");
        self.marginal_entropy() + (n - 1) as f64 * self.entropy_rate()
    }

    /// Stationary distribution of `n` consecutive symbols; variable 0 is the earliest.
    pub fn block_joint(&self, n: usize) -> Result<JointTable> {
        let k = self.k();
        let shape = Shape::new(n, k).map_err(|_| Error::BlockTooLarge { n, k })?;
        let mut probs = self.stationary.clone();
        let mut width = 1;
        for _ in 1..n {
            // extend each path by one symbol in the new most-significant digit
            let mut next = vec![0.0; probs.len() * k];
            for (idx, &p) in probs.iter().enumerate() {
                let last = idx / width;
                for (x, &t) in self.transition[last].iter().enumerate() {
                    next[idx + x * probs.len()] = p * t;
                }
            }
            width = probs.len();
            probs = next;
        }
        JointTable::new(shape, probs)
    }

    /// Block entropy by enumerating all `K^n` paths.
    pub fn block_entropy_brute(&self, n: usize) -> Result<f64> {
        Ok(shannon_entropy(self.block_joint(n)?.probs()))
    }

    /// `H(1) - h`.
    pub fn multi_information_rate(&self) -> f64 {
        (self.marginal_entropy() - self.entropy_rate()).max(0.0)
    }

    /// `2 H(n) - H(2n)` from brute-force block distributions.
    pub fn excess_entropy_estimate(&self, n: usize) -> Result<f64> {
        let h_n = self.block_entropy_brute(n)?;
        let h_2n = self.block_entropy_brute(2 * n)?;
        gate("excess entropy estimate", 2.0 * h_n - h_2n)
    }

    /// `H(n) + H(m) - H(n + m)`: the information a length-`n` block carries about
    /// the next `m` symbols, by brute force. For a first-order chain this no
    /// longer depends on `m` once `m ≥ 1`.
    pub fn predictive_information(&self, n: usize, horizon: usize) -> Result<f64> {
        let h = |len| self.block_entropy_brute(len);
        gate(
            "predictive information",
            h(n)? + h(horizon)? - h(n + horizon)?,
        )
    }

    /// `H(X_0 | X_-1, X_1)` from the three-symbol joint `π(a) T(a,b) T(b,c)`.
    pub fn residual_rate(&self) -> f64 {
        let three = self
            .block_joint(3)
            .expect("three-symbol block of a validated chain");
        measures::conditional_entropy(
            &three,
            SubsetMask::single(1),
            SubsetMask::from_indices(&[0, 2]),
        )
        .expect("disjoint nonempty subsets")
    }

    /// `h - r`.
    pub fn pir_rate(&self) -> f64 {
        (self.entropy_rate() - self.residual_rate()).max(0.0)
    }

    pub fn rates(&self) -> RateReport {
        let h_mu = self.entropy_rate();
        let r_mu = self.residual_rate();
        let rho_mu = self.multi_information_rate();
        RateReport {
            marginal_entropy: self.marginal_entropy(),
            h_mu,
            rho_mu,
            r_mu,
            b_mu: (h_mu - r_mu).max(0.0),
            excess_entropy: rho_mu,
        }
    }

    /// Checks `H(n) = n h + I_pred(n)` and `I(X_1..n) + I_pred(n) = n ρ` for
    /// `n = 1..=n_max`, with every block quantity computed by brute force.
    pub fn identity_checks(&self, n_max: usize) -> Result<IdentityReport> {
        let h_mu = self.entropy_rate();
        let rho_mu = self.multi_information_rate();
        let mut rows = Vec::with_capacity(n_max);
        let mut max_violation: f64 = 0.0;
        for n in 1..=n_max {
            let block = self.block_joint(n)?;
            let block_entropy = shannon_entropy(block.probs());
            let multi_information = measures::multi_information(&block)?;
            let predictive_information = self.predictive_information(n, 1)?;
            let e6 = block_entropy - n as f64 * h_mu - predictive_information;
            let e9 = multi_information + predictive_information - n as f64 * rho_mu;
            max_violation = max_violation.max(e6.abs()).max(e9.abs());
            rows.push(IdentityRow {
                n,
                block_entropy,
                multi_information,
                predictive_information,
                extensive_entropy_residual: e6,
                extensive_multi_information_residual: e9,
            });
        }
        Ok(IdentityReport {
            rows,
            max_violation,
        })
    }

    /// A stationary sample path of `length` symbols.
    pub fn sample(&self, length: usize, seed: u64) -> Vec<usize> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let initial = WeightedIndex::new(&self.stationary).expect("stationary weights");
        let rows: Vec<WeightedIndex<f64>> = self
            .transition
            .iter()
            .map(|r| WeightedIndex::new(r).expect("stochastic row"))
            .collect();
        let mut out = Vec::with_capacity(length);
        if length == 0 {
            return out;
        }
        let mut state = initial.sample(&mut rng);
        out.push(state);
        for _ in 1..length {
            state = rows[state].sample(&mut rng);
            out.push(state);
        }
        out
    }
}
