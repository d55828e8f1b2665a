//! Canonical distributions: modulo-K (parity) processes, giant-bit processes,
//! independent uniform symbols, a known state, and uniform draws from the simplex.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use serde::{Deserialize, Serialize};

use crate::dist::{Configuration, JointTable, Shape, SubsetMask};
use crate::error::{Error, Result};

/// Uniform on the `K^(N-1)` configurations whose symbol sum is `m` mod `K`.
pub fn modulo_process(n: usize, k: usize, m: usize) -> Result<JointTable> {
    let shape = Shape::new(n, k)?;
    if m >= k {
        return Err(Error::InvalidResidue { m, k });
    }
    let mass = (k as f64).powi(1 - n as i32);
    JointTable::from_fn(shape, |c| {
        if c.symbols().iter().sum::<usize>() % k == m {
            mass
        } else {
            0.0
        }
    })
}

/// Binary process putting mass ½ on the configuration with `x_i = 1` exactly
/// for `i ∈ ones`, and ½ on its bitwise complement.
pub fn giant_bit_process(n: usize, ones: SubsetMask) -> Result<JointTable> {
    let shape = Shape::new(n, 2)?;
    shape.check_mask(ones)?;
    let a = ones.bits() as usize;
    let b = SubsetMask::full(n).difference(ones).bits() as usize;
    let mut probs = vec![0.0; shape.state_count()];
    probs[a] += 0.5;
    probs[b] += 0.5;
    JointTable::new(shape, probs)
}

/// Every configuration with probability `K^-N`.
pub fn independent_uniform(n: usize, k: usize) -> Result<JointTable> {
    let shape = Shape::new(n, k)?;
    let states = shape.state_count();
    JointTable::new(shape, vec![1.0 / states as f64; states])
}

/// Point mass on `config`.
pub fn known_state(n: usize, k: usize, config: &Configuration) -> Result<JointTable> {
    let shape = Shape::new(n, k)?;
    let index = shape.index_of(config)?;
    Ok(JointTable::point_mass(shape, index))
}

/// A uniform draw from the probability simplex over `shape`'s configurations,
/// using normalized unit-rate exponential variates.
pub fn random_simplex(shape: Shape, seed: u64) -> JointTable {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_simplex_with(shape, &mut rng)
}

pub fn random_simplex_with<R: Rng + ?Sized>(shape: Shape, rng: &mut R) -> JointTable {
    let raw: Vec<f64> = (0..shape.state_count())
        .map(|_| rng.sample::<f64, _>(Exp1))
        .collect();
    let total: f64 = raw.iter().sum();
    JointTable::new(shape, raw.into_iter().map(|x| x / total).collect())
        .expect("normalized exponential draws form a distribution")
}

/// Derives the seed of the `index`-th member of a seeded batch (splitmix64 finalizer).
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut z = base.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProcessSpec {
    Modulo {
        n: usize,
        k: usize,
        m: usize,
    },
    GiantBit {
        n: usize,
        ones: Vec<usize>,
    },
    IndependentUniform {
        n: usize,
        k: usize,
    },
    KnownState {
        n: usize,
        k: usize,
        config: Vec<usize>,
    },
    RandomSimplex {
        n: usize,
        k: usize,
        seed: u64,
    },
}

impl ProcessSpec {
    pub fn build(&self) -> Result<JointTable> {
        match self {
            ProcessSpec::Modulo { n, k, m } => modulo_process(*n, *k, *m),
            ProcessSpec::GiantBit { n, ones } => {
                if let Some(&i) = ones.iter().find(|&&i| i >= *n) {
                    return Err(Error::SubsetOutOfRange {
                        mask: 1u32.checked_shl(i as u32).unwrap_or(0),
                        n: *n,
                    });
                }
                giant_bit_process(*n, SubsetMask::from_indices(ones))
            }
            ProcessSpec::IndependentUniform { n, k } => independent_uniform(*n, *k),
            ProcessSpec::KnownState { n, k, config } => {
                known_state(*n, *k, &Configuration::new(config.clone()))
            }
            ProcessSpec::RandomSimplex { n, k, seed } => {
                Ok(random_simplex(Shape::new(*n, *k)?, *seed))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{binding_information, multi_information};
    use approx::assert_abs_diff_eq;

    fn support(t: &JointTable) -> Vec<Vec<usize>> {
        let s = t.shape();
        t.probs()
            .iter()
            .enumerate()
            .filter(|(_, &p)| p > 0.0)
            .map(|(i, _)| s.config_of(i).symbols().to_vec())
            .collect()
    }

    #[test]
    fn modulo_examples() {
        let t = modulo_process(3, 2, 0).unwrap();
        let mut sup = support(&t);
        sup.sort();
        assert_eq!(
            sup,
            vec![vec![0, 0, 0], vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]
        );
        assert!(t.probs().iter().all(|&p| p == 0.0 || p == 0.25));

        let xor = modulo_process(2, 2, 1).unwrap();
        assert_eq!(xor.probs(), &[0.0, 0.5, 0.5, 0.0]);

        let t = modulo_process(2, 3, 0).unwrap();
        let mut sup = support(&t);
        sup.sort();
        assert_eq!(sup, vec![vec![0, 0], vec![1, 2], vec![2, 1]]);
        for c in sup {
            assert_abs_diff_eq!(t.prob(&c.into()).unwrap(), 1.0 / 3.0, epsilon = 1e-15);
        }
        assert!(matches!(
            modulo_process(3, 2, 2),
            Err(Error::InvalidResidue { m: 2, k: 2 })
        ));
    }

    #[test]
    fn giant_bit_examples() {
        let t = giant_bit_process(6, SubsetMask::full(6)).unwrap();
        assert_eq!(t.probs()[0], 0.5);
        assert_eq!(t.probs()[63], 0.5);
        let t = giant_bit_process(2, SubsetMask::single(0)).unwrap();
        assert_eq!(t.prob(&vec![1, 0].into()).unwrap(), 0.5);
        assert_eq!(t.prob(&vec![0, 1].into()).unwrap(), 0.5);
        let t = giant_bit_process(3, SubsetMask::EMPTY).unwrap();
        assert_eq!(t.probs()[0], 0.5);
        assert_eq!(t.probs()[7], 0.5);
        assert!(giant_bit_process(3, SubsetMask::single(3)).is_err());
    }

    #[test]
    fn independent_and_known() {
        assert_eq!(independent_uniform(1, 2).unwrap().probs(), &[0.5, 0.5]);
        let t = independent_uniform(2, 3).unwrap();
        assert!(t.probs().iter().all(|&p| (p - 1.0 / 9.0).abs() < 1e-15));
        assert_eq!(
            known_state(1, 3, &vec![2].into()).unwrap().probs(),
            &[0.0, 0.0, 1.0]
        );
        assert!(matches!(
            known_state(2, 3, &vec![3, 0].into()),
            Err(Error::InvalidSymbol { .. })
        ));
    }

    #[test]
    fn random_simplex_is_deterministic() {
        let s = Shape::new(3, 2).unwrap();
        assert_eq!(random_simplex(s, 7), random_simplex(s, 7));
        assert_ne!(random_simplex(s, 7), random_simplex(s, 8));
    }

    #[test]
    fn random_simplex_mean_is_uniform() {
        let s = Shape::new(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let draws = 100_000;
        let mut mean = vec![0.0; 8];
        for _ in 0..draws {
            let t = random_simplex_with(s, &mut rng);
            for (acc, p) in mean.iter_mut().zip(t.probs()) {
                *acc += p / draws as f64;
            }
        }
        for m in mean {
            assert!((m - 0.125).abs() < 1e-2, "mean entry {m}");
        }
    }

    #[test]
    fn modulo_support_and_value_sweep() {
        for n in 2..=4 {
            for k in 2..=3 {
                for m in 0..k {
                    let t = modulo_process(n, k, m).unwrap();
                    assert_eq!(support(&t).len(), k.pow(n as u32 - 1));
                    // every (N-1)-variable marginal is uniform
                    for drop in 0..n {
                        let marg = t.marginalize(SubsetMask::full(n).without(drop)).unwrap();
                        let u = 1.0 / marg.probs().len() as f64;
                        assert!(marg.probs().iter().all(|&p| (p - u).abs() < 1e-12));
                    }
                    let log_k = (k as f64).log2();
                    assert_abs_diff_eq!(
                        binding_information(&t).unwrap(),
                        (n as f64 - 1.0) * log_k,
                        epsilon = 1e-9
                    );
                    assert_abs_diff_eq!(multi_information(&t).unwrap(), log_k, epsilon = 1e-9);
                }
            }
        }
    }

    #[test]
    fn giant_bit_values() {
        for n in 2..=6 {
            for ones in [0u32, 1, 0b101 & ((1 << n) - 1)] {
                let t = giant_bit_process(n, SubsetMask::from_bits(ones)).unwrap();
                assert_abs_diff_eq!(binding_information(&t).unwrap(), 1.0, epsilon = 1e-9);
                assert_abs_diff_eq!(
                    multi_information(&t).unwrap(),
                    n as f64 - 1.0,
                    epsilon = 1e-9
                );
            }
        }
    }

    #[test]
    fn spec_builds() {
        let spec: ProcessSpec =
            serde_json::from_str(r#"{"kind":"modulo","n":3,"k":2,"m":1}"#).unwrap();
        assert_eq!(spec.build().unwrap(), modulo_process(3, 2, 1).unwrap());
        assert!(ProcessSpec::GiantBit {
            n: 3,
            ones: vec![5]
        }
        .build()
        .is_err());
    }
}
