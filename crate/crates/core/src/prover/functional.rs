//! Linear functionals of subset entropies with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::simplex::Rational;
use crate::dist::{JointTable, SubsetMask};
use crate::error::{Error, Result};
use crate::measures::subset_entropy;

/// Largest `N` for which subsets can be enumerated as masks.
pub const MAX_MASK_VARS: usize = 32;

pub(crate) fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub(crate) fn binomial(n: usize, k: usize) -> BigInt {
    debug_assert!(k <= n);
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| {
        acc * BigInt::from(n - i) / BigInt::from(i + 1)
    })
}

/// `Σ_S c_S H(X_S)` over nonempty subsets `S` of `N` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntropyFunctional {
    n: usize,
    coefficients: BTreeMap<SubsetMask, Rational>,
}

impl EntropyFunctional {
    pub fn zero(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_MASK_VARS {
            return Err(Error::UnsupportedN(n));
        }
        Ok(Self {
            n,
            coefficients: BTreeMap::new(),
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Adds `value` to the coefficient of `H(X_subset)`.
    pub fn add_term(&mut self, subset: SubsetMask, value: Rational) -> Result<()> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        if !subset.is_within(self.n) {
            return Err(Error::SubsetOutOfRange {
                mask: subset.bits(),
                n: self.n,
            });
        }
        let entry = self
            .coefficients
            .entry(subset)
            .or_insert_with(Rational::zero);
        *entry += value;
        if entry.is_zero() {
            self.coefficients.remove(&subset);
        }
        Ok(())
    }

    pub fn with_term(mut self, subset: SubsetMask, value: Rational) -> Result<Self> {
        self.add_term(subset, value)?;
        Ok(self)
    }

    pub fn coefficient(&self, subset: SubsetMask) -> Rational {
        self.coefficients
            .get(&subset)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Nonzero coefficients in mask order.
    pub fn terms(&self) -> impl Iterator<Item = (SubsetMask, &Rational)> {
        self.coefficients.iter().map(|(m, c)| (*m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// `self + factor * other`.
    pub fn add_scaled(&mut self, other: &EntropyFunctional, factor: &Rational) -> Result<()> {
        if other.n != self.n {
            return Err(Error::DimensionMismatch {
                certificate: other.n,
                target: self.n,
            });
        }
        for (m, c) in other.terms() {
            self.add_term(m, c * factor)?;
        }
        Ok(())
    }

    /// Value on the entropies of an actual distribution, in bits.
    pub fn evaluate(&self, joint: &JointTable) -> Result<f64> {
        if joint.n_vars() != self.n {
            return Err(Error::DimensionMismatch {
                certificate: self.n,
                target: joint.n_vars(),
            });
        }
        Ok(self
            .terms()
            .map(|(m, c)| rational_to_f64(c) * subset_entropy(joint, m))
            .sum())
    }

    /// Exact value on a pseudo-entropy assignment.
    pub fn evaluate_exact(&self, h: impl Fn(SubsetMask) -> Rational) -> Rational {
        self.terms()
            .fold(Rational::zero(), |acc, (m, c)| acc + c * h(m))
    }

    pub fn joint_entropy(n: usize) -> Result<Self> {
        Self::zero(n)?.with_term(SubsetMask::full(n), Rational::one())
    }

    /// `Σ_i H(X_i) - H(X_all)`.
    pub fn multi_information(n: usize) -> Result<Self> {
        let mut f = Self::zero(n)?;
        for i in 0..n {
            f.add_term(SubsetMask::single(i), Rational::one())?;
        }
        f.add_term(SubsetMask::full(n), -Rational::one())?;
        Ok(f)
    }

    /// `Σ_i H(X_all∖i) - (N-1) H(X_all)`.
    pub fn binding_information(n: usize) -> Result<Self> {
        let mut f = Self::zero(n)?;
        let full = SubsetMask::full(n);
        if n >= 2 {
            for i in 0..n {
                f.add_term(full.without(i), Rational::one())?;
            }
        }
        f.add_term(full, -int(n as i64 - 1))?;
        Ok(f)
    }
}

pub(crate) fn rational_to_f64(q: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
}

/// A permutation-symmetric functional `Σ_k c_k h_k`, where `h_k` is the common
/// entropy of every `k`-subset. Index 0 is unused and kept at zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricFunctional {
    coefficients: Vec<Rational>,
}

impl SymmetricFunctional {
    /// `coefficients[k]` multiplies `h_k`; `coefficients[0]` must be zero.
    pub fn new(coefficients: Vec<Rational>) -> Result<Self> {
        if coefficients.len() < 2 {
            return Err(Error::UnsupportedN(coefficients.len().saturating_sub(1)));
        }
        if !coefficients[0].is_zero() {
            return Err(Error::InvalidTarget(
                "coefficient of h_0 must be zero".into(),
            ));
        }
        Ok(Self { coefficients })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    /// `Σ_k c_k h_k` with `h[0]` ignored.
    pub fn evaluate(&self, h: &[Rational]) -> Rational {
        self.coefficients
            .iter()
            .zip(h)
            .skip(1)
            .fold(Rational::zero(), |acc, (c, v)| acc + c * v)
    }
}

/// Collapses a permutation-invariant functional to per-size coefficients:
/// `c_k` is the sum of the coefficients over all `k`-subsets.
pub fn symmetrize(functional: &EntropyFunctional) -> Result<SymmetricFunctional> {
    let n = functional.n();
    let mut by_size: Vec<Vec<&Rational>> = vec![Vec::new(); n + 1];
    for (m, c) in functional.terms() {
        by_size[m.len()].push(c);
    }
    let mut coefficients = vec![Rational::zero(); n + 1];
    for (k, cs) in by_size.iter().enumerate().skip(1) {
        if cs.is_empty() {
            continue;
        }
        let count = binomial(n, k);
        if BigInt::from(cs.len()) != count || cs.iter().any(|c| *c != cs[0]) {
            return Err(Error::NotSymmetric);
        }
        coefficients[k] = cs[0] * Rational::from_integer(count);
    }
    SymmetricFunctional::new(coefficients)
}

/// Coefficient of the form `constant + per_n * N`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
struct Affine {
    constant: Rational,
    per_n: Rational,
}

impl Affine {
    fn at(&self, n: usize) -> Rational {
        &self.constant + &self.per_n * int(n as i64)
    }
}

/// A combination `a(N) B + b(N) I + c(N) H` with coefficients affine in `N`,
/// written like `(N-1)B-I`, `2I - B` or `H-B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureCombination {
    text: String,
    binding: Affine,
    multi: Affine,
    entropy: Affine,
}

impl fmt::Display for MeasureCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

impl std::str::FromStr for MeasureCombination {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MeasureCombination::parse(s)
    }
}

impl MeasureCombination {
    /// `(N-1) B - I`, nonnegative iff `I ≤ (N-1) B`.
    pub fn scaled_binding_minus_multi() -> Self {
        Self::parse("(N-1)B-I").expect("valid expression")
    }

    /// `(N-1) I - B`, nonnegative iff `B ≤ (N-1) I`.
    pub fn scaled_multi_minus_binding() -> Self {
        Self::parse("(N-1)I-B").expect("valid expression")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(Error::InvalidTarget("empty expression".into()));
        }
        let bad = |msg: &str| Error::InvalidTarget(format!("{msg} in {text:?}"));
        let mut out = Self {
            text: chars.iter().collect(),
            binding: Affine::default(),
            multi: Affine::default(),
            entropy: Affine::default(),
        };
        let mut pos = 0;
        while pos < chars.len() {
            let mut sign = int(1);
            match chars[pos] {
                '+' => pos += 1,
                '-' => {
                    sign = int(-1);
                    pos += 1;
                }
                _ if pos > 0 => return Err(bad("expected '+' or '-'")),
                _ => {}
            }
            let mut coef = Affine {
                constant: int(1),
                per_n: Rational::zero(),
            };
            if pos < chars.len() && chars[pos] == '(' {
                let close = chars[pos..]
                    .iter()
                    .position(|&c| c == ')')
                    .ok_or_else(|| bad("unclosed '('"))?
                    + pos;
                coef =
                    parse_affine(&chars[pos + 1..close]).ok_or_else(|| bad("bad coefficient"))?;
                pos = close + 1;
            } else {
                let start = pos;
                while pos < chars.len() && (chars[pos].is_ascii_digit() || chars[pos] == 'N') {
                    pos += 1;
                }
                if pos > start {
                    coef =
                        parse_affine(&chars[start..pos]).ok_or_else(|| bad("bad coefficient"))?;
                }
            }
            if pos < chars.len() && chars[pos] == '*' {
                pos += 1;
            }
            let slot = match chars.get(pos) {
                Some('B') => &mut out.binding,
                Some('I') => &mut out.multi,
                Some('H') => &mut out.entropy,
                _ => return Err(bad("expected B, I or H")),
            };
            slot.constant += &sign * &coef.constant;
            slot.per_n += &sign * &coef.per_n;
            pos += 1;
        }
        Ok(out)
    }

    /// The functional for `n` variables, enumerated over subsets.
    pub fn functional(&self, n: usize) -> Result<EntropyFunctional> {
        if n < 2 {
            return Err(Error::UnsupportedN(n));
        }
        let mut f = EntropyFunctional::zero(n)?;
        f.add_scaled(
            &EntropyFunctional::binding_information(n)?,
            &self.binding.at(n),
        )?;
        f.add_scaled(&EntropyFunctional::multi_information(n)?, &self.multi.at(n))?;
        f.add_scaled(&EntropyFunctional::joint_entropy(n)?, &self.entropy.at(n))?;
        Ok(f)
    }

    /// The per-size coefficients directly, without enumerating subsets; works
    /// for any `N ≥ 2`.
    pub fn symmetric_functional(&self, n: usize) -> Result<SymmetricFunctional> {
        if n < 2 {
            return Err(Error::UnsupportedN(n));
        }
        let nn = int(n as i64);
        let mut c = vec![Rational::zero(); n + 1];
        // B: +1 on each of the N (N-1)-subsets, -(N-1) on the full set
        let b = self.binding.at(n);
        c[n - 1] += &b * &nn;
        c[n] -= &b * (&nn - int(1));
        // I: +1 on each singleton, -1 on the full set
        let i = self.multi.at(n);
        c[1] += &i * &nn;
        c[n] -= &i;
        c[n] += self.entropy.at(n);
        SymmetricFunctional::new(c)
    }
}

/// Parses sums like `N-1`, `2N+3`, `3`.
fn parse_affine(chars: &[char]) -> Option<Affine> {
    if chars.is_empty() {
        return None;
    }
    let mut out = Affine::default();
    let mut pos = 0;
    while pos < chars.len() {
        let mut sign = int(1);
        match chars[pos] {
            '+' => pos += 1,
            '-' => {
                sign = int(-1);
                pos += 1;
            }
            _ if pos > 0 => return None,
            _ => {}
        }
        let start = pos;
        while pos < chars.len() && chars[pos].is_ascii_digit() {
            pos += 1;
        }
        let number = if pos > start {
            Some(
                chars[start..pos]
                    .iter()
                    .collect::<String>()
                    .parse::<i64>()
                    .ok()?,
            )
        } else {
            None
        };
        if pos < chars.len() && chars[pos] == '*' {
            pos += 1;
        }
        if pos < chars.len() && chars[pos] == 'N' {
            out.per_n += &sign * int(number.unwrap_or(1));
            pos += 1;
        } else {
            out.constant += &sign * int(number?);
        }
    }
    Some(out)
}
