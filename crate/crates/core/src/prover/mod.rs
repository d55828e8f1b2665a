//! Per-`N` certificates that a linear entropy functional is nonnegative.
//!
//! A functional is certified by writing it as a nonnegative combination of the
//! elemental Shannon inequalities
//!
//! - `H(X_i | X_rest) ≥ 0`
//! - `I(X_i; X_j | X_S) ≥ 0` for `S ⊆ rest ∖ {i, j}`
//!
//! For permutation-symmetric targets it is enough to work with their images
//! under averaging over permutations. In terms of the per-size entropies
//! `h_0 = 0, h_1, .., h_N` those are
//!
//! - top monotonicity `h_N - h_(N-1) ≥ 0`
//! - size-wise submodularity `2 h_k - h_(k-1) - h_(k+1) ≥ 0`, `1 ≤ k ≤ N-1`
//!
//! which reduces the problem to `N` coordinates. Both searches are exact
//! rational linear programs. When no combination exists the prover returns a
//! refutation instead: a point of the cone (normalized to `h_1 = 1`, resp.
//! `Σ_i H(X_i) = 1`) at which the target is negative. It is a vertex of the
//! normalized cone minimizing the target.

mod functional;
pub mod simplex;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use functional::{
    symmetrize, EntropyFunctional, MeasureCombination, SymmetricFunctional, MAX_MASK_VARS,
};
pub use simplex::Rational;

use crate::dist::SubsetMask;
use crate::error::{Error, Result};
use functional::int;
use simplex::{LpOutcome, StandardForm};

/// The elemental cone has `2^N - 1` coordinates; past this it is impractical.
pub const MAX_GENERAL_VARS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Cone {
    /// Per-size coordinates `h_1..h_N`.
    Symmetric,
    /// One coordinate per nonempty subset.
    Elemental,
}

/// One generating inequality of a cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    /// `h_N - h_(N-1) ≥ 0`
    TopMonotone,
    /// `2 h_k - h_(k-1) - h_(k+1) ≥ 0`
    Submodular { k: usize },
    /// `H(X_i | all others) ≥ 0`
    ConditionalEntropy { i: usize },
    /// `I(X_i; X_j | X_given) ≥ 0`
    ConditionalMutualInformation {
        i: usize,
        j: usize,
        given: SubsetMask,
    },
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::TopMonotone => write!(f, "h_N-h_(N-1)>=0"),
            Generator::Submodular { k } => write!(f, "2h_{k}-h_{}-h_{}>=0", k - 1, k + 1),
            Generator::ConditionalEntropy { i } => write!(f, "H(X{i}|rest)>=0"),
            Generator::ConditionalMutualInformation { i, j, given } => {
                let g: Vec<String> = given.indices().map(|v| format!("X{v}")).collect();
                if g.is_empty() {
                    write!(f, "I(X{i};X{j})>=0")
                } else {
                    write!(f, "I(X{i};X{j}|{})>=0", g.join(","))
                }
            }
        }
    }
}

/// Generators of the symmetric cone for `n` variables: submodularity for
/// `k = 1..N-1`, then top monotonicity.
pub fn symmetric_generators(n: usize) -> Vec<Generator> {
    (1..n)
        .map(|k| Generator::Submodular { k })
        .chain(std::iter::once(Generator::TopMonotone))
        .collect()
}

/// Elemental inequalities for `n` variables: the `N` conditional entropies,
/// then `I(X_i; X_j | X_S)` for `i < j` and `S` in increasing mask order.
pub fn elemental_generators(n: usize) -> Vec<Generator> {
    let mut out: Vec<Generator> = (0..n)
        .map(|i| Generator::ConditionalEntropy { i })
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            let rest = SubsetMask::full(n).without(i).without(j);
            let mut s = 0u32;
            // enumerate submasks of `rest` in increasing order
            loop {
                out.push(Generator::ConditionalMutualInformation {
                    i,
                    j,
                    given: SubsetMask::from_bits(s),
                });
                if s == rest.bits() {
                    break;
                }
                s = (s.wrapping_sub(rest.bits())) & rest.bits();
            }
        }
    }
    out
}

/// Coefficient vector of a symmetric generator, indexed `0..=N` (index 0 unused).
fn symmetric_row(n: usize, g: Generator) -> Vec<Rational> {
    let mut row = vec![Rational::zero(); n + 1];
    match g {
        Generator::TopMonotone => {
            row[n] += int(1);
            row[n - 1] -= int(1);
        }
        Generator::Submodular { k } => {
            row[k] += int(2);
            row[k - 1] -= int(1);
            row[k + 1] -= int(1);
        }
        _ => unreachable!("not a symmetric generator"),
    }
    row[0] = Rational::zero();
    row
}

/// Coefficient vector of an elemental generator, indexed by `mask - 1`.
fn elemental_row(n: usize, g: Generator) -> Vec<Rational> {
    let mut row = vec![Rational::zero(); (1 << n) - 1];
    let mut add = |m: SubsetMask, v: i64| {
        if !m.is_empty() {
            row[m.bits() as usize - 1] += int(v);
        }
    };
    let full = SubsetMask::full(n);
    match g {
        Generator::ConditionalEntropy { i } => {
            add(full, 1);
            add(full.without(i), -1);
        }
        Generator::ConditionalMutualInformation { i, j, given } => {
            add(given.with(i), 1);
            add(given.with(j), 1);
            add(given.with(i).with(j), -1);
            add(given, -1);
        }
        _ => unreachable!("not an elemental generator"),
    }
    row
}

fn generators(cone: Cone, n: usize) -> Vec<Generator> {
    match cone {
        Cone::Symmetric => symmetric_generators(n),
        Cone::Elemental => elemental_generators(n),
    }
}

/// Coordinates `1..=N` for the symmetric cone, `1..2^N` (masks) for the elemental one.
fn generator_row(cone: Cone, n: usize, g: Generator) -> Vec<Rational> {
    match cone {
        Cone::Symmetric => symmetric_row(n, g)[1..].to_vec(),
        Cone::Elemental => elemental_row(n, g),
    }
}

fn symmetric_target(target: &SymmetricFunctional) -> Vec<Rational> {
    target.coefficients()[1..].to_vec()
}

fn elemental_target(target: &EntropyFunctional) -> Vec<Rational> {
    let n = target.n();
    (1..(1u32 << n))
        .map(|m| target.coefficient(SubsetMask::from_bits(m)))
        .collect()
}

/// Exact rationals serialized as `"p/q"` strings.
mod rational_strings {
    use super::*;

    pub fn to_string(q: &Rational) -> String {
        format!("{}/{}", q.numer(), q.denom())
    }

    pub fn parse(s: &str) -> std::result::Result<Rational, String> {
        Rational::from_str(s.trim()).map_err(|e| format!("bad rational {s:?}: {e}"))
    }

    pub fn serialize_vec<S: Serializer>(
        v: &[Rational],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(to_string))
    }

    pub fn deserialize_vec<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        raw.iter()
            .map(|s| parse(s).map_err(D::Error::custom))
            .collect()
    }

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&to_string(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let raw = String::deserialize(d)?;
        parse(&raw).map_err(D::Error::custom)
    }
}

/// Nonnegative multipliers, one per generator of `cone` in canonical order,
/// whose combination equals the target exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProofCertificate {
    pub n: usize,
    pub cone: Cone,
    /// Human-readable generator names, parallel to `multipliers`.
    pub constraints: Vec<String>,
    #[serde(serialize_with = "rational_strings::serialize_vec")]
    #[serde(deserialize_with = "rational_strings::deserialize_vec")]
    pub multipliers: Vec<Rational>,
    /// Target minus combination, coordinate by coordinate; all zero for a valid proof.
    #[serde(serialize_with = "rational_strings::serialize_vec")]
    #[serde(deserialize_with = "rational_strings::deserialize_vec")]
    pub residual: Vec<Rational>,
}

/// A point of the cone where the target is negative.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Refutation {
    pub n: usize,
    pub cone: Cone,
    /// Symmetric cone: `h_1..h_N`. Elemental cone: `h(S)` for masks `1..2^N`.
    #[serde(serialize_with = "rational_strings::serialize_vec")]
    #[serde(deserialize_with = "rational_strings::deserialize_vec")]
    pub point: Vec<Rational>,
    /// Target value at `point` (negative).
    #[serde(with = "rational_strings")]
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ProofOutcome {
    Proven(ProofCertificate),
    Refuted(Refutation),
}

impl ProofOutcome {
    pub fn is_proven(&self) -> bool {
        matches!(self, ProofOutcome::Proven(_))
    }

    pub fn certificate(&self) -> Option<&ProofCertificate> {
        match self {
            ProofOutcome::Proven(c) => Some(c),
            ProofOutcome::Refuted(_) => None,
        }
    }

    pub fn refutation(&self) -> Option<&Refutation> {
        match self {
            ProofOutcome::Proven(_) => None,
            ProofOutcome::Refuted(r) => Some(r),
        }
    }
}

fn combine(rows: &[Vec<Rational>], multipliers: &[Rational]) -> Vec<Rational> {
    let dim = rows.first().map_or(0, Vec::len);
    let mut out = vec![Rational::zero(); dim];
    for (row, mult) in rows.iter().zip(multipliers) {
        if mult.is_zero() {
            continue;
        }
        for (o, v) in out.iter_mut().zip(row) {
            if !v.is_zero() {
                *o += v * mult;
            }
        }
    }
    out
}

fn decide(cone: Cone, n: usize, target: Vec<Rational>) -> Result<ProofOutcome> {
    let gens = generators(cone, n);
    let rows: Vec<Vec<Rational>> = gens.iter().map(|&g| generator_row(cone, n, g)).collect();
    let dim = target.len();
    let m = rows.len();

    // Is target = Σ λ_j row_j with λ ≥ 0?
    let proof_lp = StandardForm {
        a: (0..dim)
            .map(|coord| rows.iter().map(|r| r[coord].clone()).collect())
            .collect(),
        b: target.clone(),
        c: vec![Rational::zero(); m],
    };
    if let LpOutcome::Optimal { x, .. } = simplex::solve(&proof_lp) {
        let combo = combine(&rows, &x);
        let residual: Vec<Rational> = target.iter().zip(&combo).map(|(t, c)| t - c).collect();
        return Ok(ProofOutcome::Proven(ProofCertificate {
            n,
            cone,
            constraints: gens.iter().map(ToString::to_string).collect(),
            multipliers: x,
            residual,
        }));
    }

    // min target·h over { h ≥ 0, row_j·h ≥ 0, normalization(h) = 1 }.
    // Variables: h (dim), then one surplus per generator.
    let width = dim + m;
    let mut a = Vec::with_capacity(m + 1);
    for (j, row) in rows.iter().enumerate() {
        let mut r = row.clone();
        r.resize(width, Rational::zero());
        r[dim + j] = int(-1);
        a.push(r);
    }
    let mut norm = vec![Rational::zero(); width];
    match cone {
        Cone::Symmetric => norm[0] = int(1),
        Cone::Elemental => {
            for i in 0..n {
                norm[(1 << i) - 1] = int(1);
            }
        }
    }
    a.push(norm);
    let mut b = vec![Rational::zero(); m];
    b.push(int(1));
    let mut c = target.clone();
    c.resize(width, Rational::zero());
    match simplex::solve(&StandardForm { a, b, c }) {
        LpOutcome::Optimal { x, value } if value.is_negative() => {
            Ok(ProofOutcome::Refuted(Refutation {
                n,
                cone,
                point: x[..dim].to_vec(),
                value,
            }))
        }
        other => Err(Error::Inconsistent {
            quantity: "refutation LP",
            value: match other {
                LpOutcome::Optimal { value, .. } => functional::rational_to_f64(&value),
                _ => f64::NAN,
            },
        }),
    }
}

/// Decides the symmetric target over the symmetric Shannon cone.
pub fn prove_symmetric(target: &SymmetricFunctional) -> Result<ProofOutcome> {
    let n = target.n();
    if n < 2 {
        return Err(Error::UnsupportedN(n));
    }
    decide(Cone::Symmetric, n, symmetric_target(target))
}

/// Decides the target over the full elemental cone (`N ≤ 6`).
pub fn prove_general(target: &EntropyFunctional) -> Result<ProofOutcome> {
    let n = target.n();
    if n > MAX_GENERAL_VARS {
        return Err(Error::TooManyVariables {
            n,
            max: MAX_GENERAL_VARS,
        });
    }
    if n < 2 {
        return Err(Error::UnsupportedN(n));
    }
    decide(Cone::Elemental, n, elemental_target(target))
}

fn verify_coordinates(cert: &ProofCertificate, target: &[Rational]) -> bool {
    let gens = generators(cert.cone, cert.n);
    if cert.multipliers.len() != gens.len() || cert.multipliers.iter().any(Signed::is_negative) {
        return false;
    }
    let rows: Vec<Vec<Rational>> = gens
        .iter()
        .map(|&g| generator_row(cert.cone, cert.n, g))
        .collect();
    combine(&rows, &cert.multipliers) == target
}

/// Recomputes the certificate's combination and compares it with `target`
/// coefficient by coefficient. Symmetric-cone certificates are checked
/// against the symmetrized target.
pub fn verify_certificate(target: &EntropyFunctional, cert: &ProofCertificate) -> Result<bool> {
    if target.n() != cert.n {
        return Err(Error::DimensionMismatch {
            certificate: cert.n,
            target: target.n(),
        });
    }
    match cert.cone {
        Cone::Symmetric => verify_symmetric_certificate(&symmetrize(target)?, cert),
        Cone::Elemental => Ok(verify_coordinates(cert, &elemental_target(target))),
    }
}

pub fn verify_symmetric_certificate(
    target: &SymmetricFunctional,
    cert: &ProofCertificate,
) -> Result<bool> {
    if target.n() != cert.n {
        return Err(Error::DimensionMismatch {
            certificate: cert.n,
            target: target.n(),
        });
    }
    if cert.cone != Cone::Symmetric {
        return Ok(false);
    }
    Ok(verify_coordinates(cert, &symmetric_target(target)))
}

impl Refutation {
    /// Every generator is nonnegative at the point, the normalization holds,
    /// and the recorded value is the target's value there.
    pub fn check_symmetric(&self, target: &SymmetricFunctional) -> bool {
        if self.cone != Cone::Symmetric || self.n != target.n() || self.point.len() != self.n {
            return false;
        }
        let mut h = vec![Rational::zero()];
        h.extend(self.point.iter().cloned());
        let in_cone = symmetric_generators(self.n).iter().all(|&g| {
            !symmetric_row(self.n, g)
                .iter()
                .zip(&h)
                .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
                .is_negative()
        });
        in_cone && h[1].is_one() && target.evaluate(&h) == self.value && self.value.is_negative()
    }

    pub fn check_general(&self, target: &EntropyFunctional) -> bool {
        let n = self.n;
        if self.cone != Cone::Elemental || n != target.n() || self.point.len() != (1 << n) - 1 {
            return false;
        }
        let dot = |row: &[Rational]| {
            row.iter()
                .zip(&self.point)
                .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
        };
        let in_cone = elemental_generators(n)
            .iter()
            .all(|&g| !dot(&elemental_row(n, g)).is_negative());
        let singles = (0..n).fold(Rational::zero(), |acc, i| acc + &self.point[(1 << i) - 1]);
        let value = target.evaluate_exact(|m| self.point[m.bits() as usize - 1].clone());
        in_cone && singles.is_one() && value == self.value && value.is_negative()
    }
}

/// Integer-valued rational, for building targets by hand.
pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}
