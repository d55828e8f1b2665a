//! Dense joint distributions over `N` variables sharing an alphabet of size `K`.
//!
//! Variables are numbered `0..N`. A configuration `(x_0, .., x_{N-1})` is stored
//! at mixed-radix index `Σ x_i K^i`, so variable 0 is the least significant
//! digit. The text format is a header line `N K` followed by the `K^N`
//! probabilities in index order.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Largest dense table we agree to allocate.
pub const MAX_STATES: usize = 1 << 28;

/// Tolerance on the total mass of a table handed to [`JointTable::new`].
pub const SUM_TOLERANCE: f64 = 1e-9;

/// Entries above `-NEGATIVE_NOISE` are treated as float noise and clamped to 0.
pub const NEGATIVE_NOISE: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Shape {
    n_vars: usize,
    alphabet_size: usize,
    state_count: usize,
}

impl Shape {
    pub fn new(n_vars: usize, alphabet_size: usize) -> Result<Self> {
        Self::with_limit(n_vars, alphabet_size, MAX_STATES)
    }

    /// Like [`Shape::new`] with a caller-chosen cap on `K^N`.
    pub fn with_limit(n_vars: usize, alphabet_size: usize, limit: usize) -> Result<Self> {
        if n_vars == 0 {
            return Err(Error::InvalidShape("need at least one variable".into()));
        }
        if alphabet_size < 2 {
            return Err(Error::InvalidShape(format!(
                "alphabet size must be at least 2, got {alphabet_size}"
            )));
        }
        let states = (alphabet_size as u128).checked_pow(n_vars as u32);
        match states {
            Some(s) if s <= limit as u128 => Ok(Self {
                n_vars,
                alphabet_size,
                state_count: s as usize,
            }),
            _ => Err(Error::StateSpaceTooLarge {
                states: states.unwrap_or(u128::MAX),
                limit: limit as u128,
            }),
        }
    }

    #[inline]
    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    #[inline]
    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    /// `K^N`.
    #[inline]
    pub fn state_count(&self) -> usize {
        self.state_count
    }

    /// The mask containing every variable.
    pub fn full_mask(&self) -> SubsetMask {
        SubsetMask::full(self.n_vars)
    }

    pub fn index_of(&self, config: &Configuration) -> Result<usize> {
        self.check_config(config)?;
        Ok(config
            .symbols()
            .iter()
            .rev()
            .fold(0, |acc, &x| acc * self.alphabet_size + x))
    }

    pub fn config_of(&self, mut index: usize) -> Configuration {
        debug_assert!(index < self.state_count);
        let mut symbols = Vec::with_capacity(self.n_vars);
        for _ in 0..self.n_vars {
            symbols.push(index % self.alphabet_size);
            index /= self.alphabet_size;
        }
        Configuration(symbols)
    }

    pub fn check_config(&self, config: &Configuration) -> Result<()> {
        if config.len() != self.n_vars {
            return Err(Error::ConfigurationLength {
                expected: self.n_vars,
                got: config.len(),
            });
        }
        if let Some((position, &symbol)) = config
            .symbols()
            .iter()
            .enumerate()
            .find(|(_, &x)| x >= self.alphabet_size)
        {
            return Err(Error::InvalidSymbol {
                position,
                symbol,
                k: self.alphabet_size,
            });
        }
        Ok(())
    }

    pub fn check_mask(&self, mask: SubsetMask) -> Result<()> {
        if mask.is_within(self.n_vars) {
            Ok(())
        } else {
            Err(Error::SubsetOutOfRange {
                mask: mask.bits(),
                n: self.n_vars,
            })
        }
    }
}

/// One symbol per variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration(Vec<usize>);

impl Configuration {
    pub fn new(symbols: Vec<usize>) -> Self {
        Self(symbols)
    }

    pub fn symbols(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<usize>> for Configuration {
    fn from(v: Vec<usize>) -> Self {
        Self(v)
    }
}

/// A set of variable indices, bit `i` standing for variable `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SubsetMask(u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub fn from_bits(bits: u32) -> Self {
        Self(bits)
    }

    /// Panics if an index is 32 or larger.
    pub fn from_indices(indices: &[usize]) -> Self {
        Self(indices.iter().fold(0, |acc, &i| {
            assert!(i < 32, "variable index {i} out of range");
            acc | (1 << i)
        }))
    }

    pub fn single(i: usize) -> Self {
        Self::from_indices(&[i])
    }

    pub fn full(n: usize) -> Self {
        assert!(n <= 32);
        if n == 32 {
            Self(u32::MAX)
        } else {
            Self((1u32 << n) - 1)
        }
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        i < 32 && self.0 & (1 << i) != 0
    }

    pub fn is_within(self, n: usize) -> bool {
        (self.0 & !Self::full(n).0) == 0
    }

    pub fn union(self, other: Self) -> Self {
        Self(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        Self(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        Self(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn with(self, i: usize) -> Self {
        Self(self.0 | (1 << i))
    }

    pub fn without(self, i: usize) -> Self {
        Self(self.0 & !(1 << i))
    }

    /// Member indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |&i| bits & (1 << i) != 0)
    }
}

/// A validated probability table over `K^N` configurations.
#[derive(Debug, Clone, PartialEq)]
pub struct JointTable {
    shape: Shape,
    probs: Vec<f64>,
}

impl JointTable {
    /// Validates and renormalizes `probs`.
    ///
    /// Entries in `[-1e-15, 0)` are clamped to zero; anything more negative, any
    /// non-finite entry, or a total mass more than `1e-9` away from one is rejected.
    pub fn new(shape: Shape, mut probs: Vec<f64>) -> Result<Self> {
        if probs.len() != shape.state_count() {
            return Err(Error::ShapeMismatch {
                expected: shape.state_count(),
                got: probs.len(),
            });
        }
        for (i, p) in probs.iter_mut().enumerate() {
            if !p.is_finite() {
                return Err(Error::NotADistribution(format!("entry {i} is {p}")));
            }
            if *p < 0.0 {
                if *p < -NEGATIVE_NOISE {
                    return Err(Error::NotADistribution(format!(
                        "entry {i} is negative: {p}"
                    )));
                }
                *p = 0.0;
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::NotADistribution(format!("entries sum to {sum}")));
        }
        probs.iter_mut().for_each(|p| *p /= sum);
        Ok(Self { shape, probs })
    }

    /// Builds a table by evaluating `f` at every configuration.
    pub fn from_fn(shape: Shape, mut f: impl FnMut(&Configuration) -> f64) -> Result<Self> {
        let probs = (0..shape.state_count())
            .map(|i| f(&shape.config_of(i)))
            .collect();
        Self::new(shape, probs)
    }

    /// Point mass at `index`.
    pub(crate) fn point_mass(shape: Shape, index: usize) -> Self {
        let mut probs = vec![0.0; shape.state_count()];
        probs[index] = 1.0;
        Self { shape, probs }
    }

    #[inline]
    pub fn shape(&self) -> Shape {
        self.shape
    }

    #[inline]
    pub fn n_vars(&self) -> usize {
        self.shape.n_vars
    }

    #[inline]
    pub fn alphabet_size(&self) -> usize {
        self.shape.alphabet_size
    }

    #[inline]
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, config: &Configuration) -> Result<f64> {
        Ok(self.probs[self.shape.index_of(config)?])
    }

    pub fn into_probs(self) -> Vec<f64> {
        self.probs
    }

    /// Sums out every variable not in `keep`. Kept variables retain their
    /// relative order, so the lowest kept index becomes variable 0.
    pub fn marginalize(&self, keep: SubsetMask) -> Result<JointTable> {
        if keep.is_empty() {
            return Err(Error::EmptySubset);
        }
        self.shape.check_mask(keep)?;
        if keep == self.shape.full_mask() {
            return Ok(self.clone());
        }
        let shape = Shape::new(keep.len(), self.shape.alphabet_size)?;
        let probs = marginal_masses(&self.shape, &self.probs, keep);
        Ok(JointTable { shape, probs })
    }

    /// Writes the `N K` header and probabilities, one per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.shape.n_vars, self.shape.alphabet_size);
        for p in &self.probs {
            let _ = writeln!(out, "{p:e}");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut tokens = text.split_whitespace();
        let mut header = |what: &str| -> Result<usize> {
            tokens
                .next()
                .ok_or_else(|| Error::Parse(format!("missing {what} in header")))?
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("bad {what}: {e}")))
        };
        let n = header("N")?;
        let k = header("K")?;
        let shape = Shape::new(n, k)?;
        let probs = tokens
            .map(|t| {
                t.parse::<f64>()
                    .map_err(|e| Error::Parse(format!("bad probability {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        JointTable::new(shape, probs)
    }
}

/// Marginal masses of `probs` on `keep`, in the reduced table's index order.
///
/// Works on unnormalized arrays too; the gradient code relies on that.
pub(crate) fn marginal_masses(shape: &Shape, probs: &[f64], keep: SubsetMask) -> Vec<f64> {
    let k = shape.alphabet_size;
    let n = shape.n_vars;
    // stride of each variable inside the reduced table, 0 if dropped
    let mut strides = vec![0usize; n];
    let mut s = 1;
    for (i, stride) in strides.iter_mut().enumerate() {
        if keep.contains(i) {
            *stride = s;
            s *= k;
        }
    }
    let mut out = vec![0.0; s];
    let mut digits = vec![0usize; n];
    let mut reduced = 0usize;
    for &p in probs {
        out[reduced] += p;
        // odometer increment
        for i in 0..n {
            digits[i] += 1;
            reduced += strides[i];
            if digits[i] < k {
                break;
            }
            digits[i] = 0;
            reduced -= k * strides[i];
        }
    }
    out
}

/// For every configuration index of `shape`, its index in the marginal table on `keep`.
pub(crate) fn reduced_indices(shape: &Shape, keep: SubsetMask) -> Vec<usize> {
    let k = shape.alphabet_size;
    let n = shape.n_vars;
    let mut strides = vec![0usize; n];
    let mut s = 1;
    for (i, stride) in strides.iter_mut().enumerate() {
        if keep.contains(i) {
            *stride = s;
            s *= k;
        }
    }
    let mut out = Vec::with_capacity(shape.state_count);
    let mut digits = vec![0usize; n];
    let mut reduced = 0usize;
    for _ in 0..shape.state_count {
        out.push(reduced);
        for i in 0..n {
            digits[i] += 1;
            reduced += strides[i];
            if digits[i] < k {
                break;
            }
            digits[i] = 0;
            reduced -= k * strides[i];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(n: usize, k: usize) -> Shape {
        Shape::new(n, k).unwrap()
    }

    #[test]
    fn make_joint_examples() {
        let t = JointTable::new(shape(1, 2), vec![0.5, 0.5]).unwrap();
        assert_eq!(t.probs(), &[0.5, 0.5]);
        assert!(JointTable::new(shape(2, 2), vec![0.5, 0.0, 0.0, 0.5]).is_ok());
        assert!(matches!(
            JointTable::new(shape(2, 2), vec![0.7, 0.7, 0.0, 0.0]),
            Err(Error::NotADistribution(_))
        ));
        assert!(matches!(
            JointTable::new(shape(2, 2), vec![0.5, 0.5]),
            Err(Error::ShapeMismatch {
                expected: 4,
                got: 2
            })
        ));
    }

    #[test]
    fn make_joint_clamps_and_renormalizes() {
        let t = JointTable::new(shape(1, 2), vec![-1e-16, 1.0 + 5e-10]).unwrap();
        assert_eq!(t.probs()[0], 0.0);
        assert!((t.probs().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(JointTable::new(shape(1, 2), vec![-1e-12, 1.0]).is_err());
        assert!(JointTable::new(shape(1, 2), vec![f64::NAN, 1.0]).is_err());
    }

    #[test]
    fn shape_guardrail() {
        assert!(Shape::new(28, 2).is_ok());
        assert!(matches!(
            Shape::new(29, 2),
            Err(Error::StateSpaceTooLarge { .. })
        ));
        assert!(Shape::new(0, 2).is_err());
        assert!(Shape::new(3, 1).is_err());
        assert!(Shape::new(200, 3).is_err());
    }

    #[test]
    fn index_examples() {
        let s = shape(3, 2);
        assert_eq!(s.index_of(&vec![1, 0, 0].into()).unwrap(), 1);
        assert_eq!(s.index_of(&vec![0, 0, 1].into()).unwrap(), 4);
        assert_eq!(shape(2, 3).index_of(&vec![2, 1].into()).unwrap(), 5);
        assert!(matches!(
            s.index_of(&vec![0, 2, 0].into()),
            Err(Error::InvalidSymbol { position: 1, .. })
        ));
        assert!(s.index_of(&vec![0, 0].into()).is_err());
    }

    #[test]
    fn index_round_trip_exhaustive() {
        for n in 1..=4 {
            for k in 2..=3 {
                let s = shape(n, k);
                for i in 0..s.state_count() {
                    assert_eq!(s.index_of(&s.config_of(i)).unwrap(), i);
                }
            }
        }
    }

    #[test]
    fn marginalize_examples() {
        let giant = JointTable::new(shape(2, 2), vec![0.5, 0.0, 0.0, 0.5]).unwrap();
        let m = giant.marginalize(SubsetMask::single(0)).unwrap();
        assert_eq!(m.probs(), &[0.5, 0.5]);

        let parity = JointTable::from_fn(shape(3, 2), |c| {
            if c.symbols().iter().sum::<usize>() % 2 == 0 {
                0.25
            } else {
                0.0
            }
        })
        .unwrap();
        let pair = parity
            .marginalize(SubsetMask::from_indices(&[0, 1]))
            .unwrap();
        for p in pair.probs() {
            assert!((p - 0.25).abs() < 1e-15);
        }
        assert_eq!(parity.marginalize(SubsetMask::full(3)).unwrap(), parity);
        assert!(matches!(
            parity.marginalize(SubsetMask::EMPTY),
            Err(Error::EmptySubset)
        ));
        assert!(parity.marginalize(SubsetMask::single(3)).is_err());
    }

    #[test]
    fn marginal_keeps_variable_order() {
        // p(x0, x1, x2) concentrated on (0, 1, 2) with K = 3
        let s = shape(3, 3);
        let idx = s.index_of(&vec![0, 1, 2].into()).unwrap();
        let t = JointTable::point_mass(s, idx);
        let m = t.marginalize(SubsetMask::from_indices(&[0, 2])).unwrap();
        let j = m.shape().index_of(&vec![0, 2].into()).unwrap();
        assert_eq!(m.probs()[j], 1.0);
    }

    #[test]
    fn text_round_trip() {
        let t = JointTable::new(
            shape(2, 3),
            vec![0.1, 0.2, 0.05, 0.05, 0.1, 0.1, 0.2, 0.1, 0.1],
        )
        .unwrap();
        let back = JointTable::from_text(&t.to_text()).unwrap();
        assert_eq!(back, t);
        assert!(JointTable::from_text("2 2\n0.5 0.5").is_err());
        assert!(JointTable::from_text("").is_err());
    }

    #[test]
    fn mask_ops() {
        let m = SubsetMask::from_indices(&[0, 2, 3]);
        assert_eq!(m.len(), 3);
        assert_eq!(m.indices().collect::<Vec<_>>(), vec![0, 2, 3]);
        assert!(m.is_within(4));
        assert!(!m.is_within(3));
        assert_eq!(m.without(2).with(1), SubsetMask::from_indices(&[0, 1, 3]));
    }
}
