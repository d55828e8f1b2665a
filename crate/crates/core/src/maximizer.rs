//! Mirror ascent of binding information or multi-information over the
//! probability simplex.
//!
//! Each step is the exponentiated-gradient update `p ← p · exp(η ∇f)`,
//! renormalized. A step is accepted only if it increases the objective;
//! otherwise `η` is halved. Both objectives are non-concave, so several
//! uniform-simplex starts are run and the best result kept.
//!
//! Stationarity is measured in the geometry the update lives in: the norm of
//! the gradient's projection onto the simplex tangent space under the Fisher
//! metric at `p`, `sqrt(Σ_x p(x) (g(x) - Σ_y p(y) g(y))²)`. Components of
//! configurations whose mass has collapsed towards zero carry weight `p(x)`,
//! so boundary optima (where the true maximizers live) have norm near zero.

use serde::Serialize;

use crate::dist::{marginal_masses, reduced_indices, JointTable, Shape, SubsetMask};
use crate::error::{Error, Result};
use crate::measures::{self, shannon_entropy};
use crate::processes::{derive_seed, random_simplex};

/// Floor applied to probabilities before taking logarithms.
pub const PROBABILITY_FLOOR: f64 = 1e-12;

/// `K^N` above this is rejected by [`maximize`].
pub const MAX_OPTIMIZER_STATES: usize = 1 << 14;

/// Runs within this many bits of the theoretical cap count as converged.
pub const CAP_SLACK: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    Binding,
    Multi,
}

impl std::str::FromStr for Objective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "binding" | "B" => Ok(Objective::Binding),
            "multi" | "I" => Ok(Objective::Multi),
            other => Err(Error::Parse(format!("unknown objective {other:?}"))),
        }
    }
}

impl Objective {
    /// `(N-1) log2 K`, the largest value either objective can take.
    pub fn cap(self, shape: Shape) -> f64 {
        (shape.n_vars() as f64 - 1.0) * (shape.alphabet_size() as f64).log2()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaximizeConfig {
    pub restarts: usize,
    pub max_iters: usize,
    /// Stop once the projected gradient norm drops below this.
    pub tol: f64,
    pub seed: u64,
    pub initial_step: f64,
}

impl Default for MaximizeConfig {
    fn default() -> Self {
        Self {
            restarts: 20,
            max_iters: 5000,
            tol: 1e-6,
            seed: 0,
            initial_step: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimizationResult {
    pub objective: Objective,
    pub best_value: f64,
    #[serde(skip)]
    pub best_table: JointTable,
    pub iterations: usize,
    pub restarts_used: usize,
    pub best_restart: usize,
    pub converged: bool,
}

/// One run of mirror ascent from a fixed start.
#[derive(Debug, Clone, PartialEq)]
pub struct AscentTrace {
    /// Objective after the start and after every accepted step.
    pub values: Vec<f64>,
    pub table: JointTable,
    pub iterations: usize,
    pub converged: bool,
    pub gradient_norm: f64,
}

/// Precomputed marginal index maps for one shape and objective.
struct Evaluator {
    shape: Shape,
    objective: Objective,
    /// For `Binding`: map onto each leave-one-out marginal. For `Multi`: onto each singleton.
    maps: Vec<(SubsetMask, Vec<usize>)>,
}

impl Evaluator {
    fn new(shape: Shape, objective: Objective) -> Self {
        let n = shape.n_vars();
        let full = SubsetMask::full(n);
        let masks: Vec<SubsetMask> = match objective {
            Objective::Binding => (0..n).map(|i| full.without(i)).collect(),
            Objective::Multi => (0..n).map(SubsetMask::single).collect(),
        };
        let maps = masks
            .into_iter()
            .filter(|m| !m.is_empty())
            .map(|m| (m, reduced_indices(&shape, m)))
            .collect();
        Self {
            shape,
            objective,
            maps,
        }
    }

    fn marginal(&self, probs: &[f64], m: SubsetMask) -> Vec<f64> {
        marginal_masses(&self.shape, probs, m)
    }

    /// Objective in bits.
    fn value(&self, probs: &[f64]) -> f64 {
        let h = shannon_entropy(probs);
        let parts: f64 = self
            .maps
            .iter()
            .map(|(m, _)| shannon_entropy(&self.marginal(probs, *m)))
            .sum();
        match self.objective {
            Objective::Binding => parts - (self.shape.n_vars() as f64 - 1.0) * h,
            Objective::Multi => parts - h,
        }
    }

    /// Gradient in bits with respect to each (floored) probability.
    fn gradient(&self, probs: &[f64]) -> Vec<f64> {
        let floored: Vec<f64> = probs.iter().map(|&p| p.max(PROBABILITY_FLOOR)).collect();
        let own_weight = match self.objective {
            Objective::Binding => self.shape.n_vars() as f64 - 1.0,
            Objective::Multi => 1.0,
        };
        let mut grad: Vec<f64> = floored
            .iter()
            .map(|p| own_weight * (1.0 + p.ln()))
            .collect();
        for (m, map) in &self.maps {
            let logs: Vec<f64> = self
                .marginal(&floored, *m)
                .iter()
                .map(|q| 1.0 + q.ln())
                .collect();
            for (g, &j) in grad.iter_mut().zip(map) {
                *g -= logs[j];
            }
        }
        grad.iter_mut().for_each(|g| *g /= std::f64::consts::LN_2);
        grad
    }
}

/// Gradient of binding information in bits, at `max(p, 1e-12)`:
/// `[(N-1)(1 + ln p(x)) - Σ_i (1 + ln p_(-i)(x_(-i)))] / ln 2`.
pub fn binding_gradient(joint: &JointTable) -> Vec<f64> {
    Evaluator::new(joint.shape(), Objective::Binding).gradient(joint.probs())
}

/// Gradient of multi-information in bits:
/// `[(1 + ln p(x)) - Σ_i (1 + ln p_i(x_i))] / ln 2`.
pub fn multi_information_gradient(joint: &JointTable) -> Vec<f64> {
    Evaluator::new(joint.shape(), Objective::Multi).gradient(joint.probs())
}

pub fn gradient(objective: Objective, joint: &JointTable) -> Vec<f64> {
    Evaluator::new(joint.shape(), objective).gradient(joint.probs())
}

/// Fisher-metric norm of the gradient projected onto the simplex tangent at `probs`.
pub fn projected_gradient_norm(probs: &[f64], grad: &[f64]) -> f64 {
    let mean: f64 = probs.iter().zip(grad).map(|(p, g)| p * g).sum();
    probs
        .iter()
        .zip(grad)
        .map(|(p, g)| p * (g - mean).powi(2))
        .sum::<f64>()
        .sqrt()
}

fn exponentiated_step(probs: &[f64], grad: &[f64], step: f64) -> Vec<f64> {
    let shift = grad
        .iter()
        .zip(probs)
        .filter(|(_, &p)| p > 0.0)
        .map(|(g, _)| step * g)
        .fold(f64::NEG_INFINITY, f64::max);
    let mut next: Vec<f64> = probs
        .iter()
        .zip(grad)
        .map(|(p, g)| p * (step * g - shift).exp())
        .collect();
    let total: f64 = next.iter().sum();
    next.iter_mut().for_each(|p| *p /= total);
    next
}

/// Mirror ascent from `start` until converged, stalled, or out of iterations.
pub fn ascend(objective: Objective, start: &JointTable, config: &MaximizeConfig) -> AscentTrace {
    let shape = start.shape();
    let eval = Evaluator::new(shape, objective);
    let cap = objective.cap(shape);
    let mut probs = start.probs().to_vec();
    let mut value = eval.value(&probs);
    let mut values = vec![value];
    let mut step = config.initial_step;
    let mut iterations = 0;
    let mut converged = false;
    let mut grad = eval.gradient(&probs);
    let mut norm = projected_gradient_norm(&probs, &grad);

    while iterations < config.max_iters {
        if norm < config.tol || value >= cap - CAP_SLACK {
            converged = true;
            break;
        }
        iterations += 1;
        let mut accepted = false;
        while step > 1e-14 {
            let candidate = exponentiated_step(&probs, &grad, step);
            let v = eval.value(&candidate);
            if v > value {
                probs = candidate;
                value = v;
                accepted = true;
                step *= 1.5;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
        values.push(value);
        grad = eval.gradient(&probs);
        norm = projected_gradient_norm(&probs, &grad);
    }
    if !converged && (norm < config.tol || value >= cap - CAP_SLACK) {
        converged = true;
    }
    let table = JointTable::new(shape, probs).expect("mirror steps stay on the simplex");
    AscentTrace {
        values,
        table,
        iterations,
        converged,
        gradient_norm: norm,
    }
}

/// Best of `config.restarts` mirror-ascent runs from uniform-simplex starts.
///
/// Ties are broken by fewer iterations, then by lower restart index.
pub fn maximize(
    objective: Objective,
    n: usize,
    k: usize,
    config: &MaximizeConfig,
) -> Result<OptimizationResult> {
    let shape = Shape::with_limit(n, k, MAX_OPTIMIZER_STATES)?;
    let restarts = config.restarts.max(1);
    let mut best: Option<(usize, AscentTrace)> = None;
    for r in 0..restarts {
        let start = random_simplex(shape, derive_seed(config.seed, r as u64));
        let trace = ascend(objective, &start, config);
        let v = *trace.values.last().expect("at least the start value");
        let better = match &best {
            None => true,
            Some((_, b)) => {
                let bv = *b.values.last().expect("nonempty");
                v > bv || (v == bv && trace.iterations < b.iterations)
            }
        };
        if better {
            best = Some((r, trace));
        }
    }
    let (best_restart, trace) = best.expect("at least one restart");
    Ok(OptimizationResult {
        objective,
        best_value: *trace.values.last().expect("nonempty"),
        best_table: trace.table,
        iterations: trace.iterations,
        restarts_used: restarts,
        best_restart,
        converged: trace.converged,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnosis {
    /// Every `(N-1)`-variable marginal within total variation `tol` of uniform.
    pub pseudo_independent: bool,
    /// Largest total-variation distance of an `(N-1)`-marginal from uniform.
    pub max_marginal_deviation: f64,
    /// `H(X_i | all others)` per variable.
    pub residual_entropies: Vec<f64>,
    /// Every residual entropy below `tol`.
    pub residuals_vanish: bool,
}

pub fn classify_optimum(table: &JointTable, tol: f64) -> Result<Diagnosis> {
    let n = table.n_vars();
    let full = SubsetMask::full(n);
    let mut max_dev: f64 = 0.0;
    let mut residual_entropies = Vec::with_capacity(n);
    for i in 0..n {
        let rest = full.without(i);
        if !rest.is_empty() {
            let marg = table.marginalize(rest)?;
            let u = 1.0 / marg.probs().len() as f64;
            let tv = 0.5 * marg.probs().iter().map(|p| (p - u).abs()).sum::<f64>();
            max_dev = max_dev.max(tv);
        }
        residual_entropies.push(measures::conditional_entropy(
            table,
            SubsetMask::single(i),
            rest,
        )?);
    }
    Ok(Diagnosis {
        pseudo_independent: max_dev < tol,
        max_marginal_deviation: max_dev,
        residuals_vanish: residual_entropies.iter().all(|&h| h < tol),
        residual_entropies,
    })
}
