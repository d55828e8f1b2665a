//! Plug-in estimates of block distributions and entropy rates from an
//! observed symbol sequence.
//!
//! Blocks are counted over overlapping windows without wraparound, so a
//! sequence of length `L` yields `L - n + 1` blocks of length `n`. No bias
//! correction is applied.

use std::path::Path;

use serde::Serialize;

use crate::dist::{JointTable, Shape, MAX_STATES};
use crate::error::{Error, Result};
use crate::measures::{self, shannon_entropy};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolSequence {
    symbols: Vec<usize>,
    k: usize,
}

impl SymbolSequence {
    pub fn new(symbols: Vec<usize>, k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidShape(format!("alphabet size {k} < 2")));
        }
        if symbols.is_empty() {
            return Err(Error::EmptyFile);
        }
        if let Some((position, &s)) = symbols.iter().enumerate().find(|(_, &s)| s >= k) {
            return Err(Error::SymbolOutOfRange {
                position,
                symbol: s as u64,
                k,
            });
        }
        Ok(Self { symbols, k })
    }

    /// Whitespace-separated integers.
    pub fn parse(text: &str, k: usize) -> Result<Self> {
        let mut symbols = Vec::new();
        for (position, tok) in text.split_ascii_whitespace().enumerate() {
            let v: u64 = tok.parse().map_err(|_| {
                Error::Parse(format!("symbol {position}: {tok:?} is not an integer"))
            })?;
            if v >= k as u64 {
                return Err(Error::SymbolOutOfRange {
                    position,
                    symbol: v,
                    k,
                });
            }
            symbols.push(v as usize);
        }
        Self::new(symbols, k)
    }

    pub fn symbols(&self) -> &[usize] {
        &self.symbols
    }

    pub fn alphabet_size(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// One symbol per line.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.symbols.len() * 2);
        for s in &self.symbols {
            out.push_str(&s.to_string());
            out.push('\n');
        }
        out
    }
}

pub fn read_sequence(path: impl AsRef<Path>, k: usize) -> Result<SymbolSequence> {
    let text = std::fs::read_to_string(path)?;
    SymbolSequence::parse(&text, k)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmpiricalBlockModel {
    pub block_length: usize,
    pub k: usize,
    /// Indexed like [`JointTable`]: the earliest symbol of a window is variable 0.
    pub counts: Vec<u64>,
    pub total_windows: u64,
}

impl EmpiricalBlockModel {
    pub fn to_joint(&self) -> Result<JointTable> {
        let shape = Shape::new(self.block_length, self.k)?;
        let total = self.total_windows as f64;
        JointTable::new(
            shape,
            self.counts.iter().map(|&c| c as f64 / total).collect(),
        )
    }

    pub fn entropy(&self) -> f64 {
        let total = self.total_windows as f64;
        let probs: Vec<f64> = self.counts.iter().map(|&c| c as f64 / total).collect();
        shannon_entropy(&probs)
    }
}

fn block_states(n: usize, k: usize) -> Result<usize> {
    let too_large = || Error::BlockTooLarge { n, k };
    let states = u32::try_from(n)
        .ok()
        .and_then(|e| k.checked_pow(e))
        .ok_or_else(too_large)?;
    if states > MAX_STATES {
        return Err(too_large());
    }
    Ok(states)
}

pub fn empirical_blocks(seq: &SymbolSequence, n: usize) -> Result<EmpiricalBlockModel> {
    if n == 0 {
        return Err(Error::InvalidShape("block length 0".into()));
    }
    if seq.len() < n {
        return Err(Error::SequenceTooShort {
            len: seq.len(),
            needed: n,
        });
    }
    let k = seq.k;
    let states = block_states(n, k)?;
    let top = states / k;
    let mut counts = vec![0u64; states];
    let s = &seq.symbols;
    let mut idx = s[..n].iter().rev().fold(0, |acc, &x| acc * k + x);
    counts[idx] += 1;
    for &next in &s[n..] {
        idx = idx / k + next * top;
        counts[idx] += 1;
    }
    Ok(EmpiricalBlockModel {
        block_length: n,
        k,
        counts,
        total_windows: (s.len() - n + 1) as u64,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateRow {
    pub n: usize,
    /// `Ĥ(n)`
    pub block_entropy: f64,
    /// `Ĥ(n) - Ĥ(n-1)`
    pub entropy_rate: f64,
    /// `2Ĥ(n) - Ĥ(2n)`
    pub excess_entropy: f64,
    /// `Î(1..n) - Î(1..n-1)`
    pub multi_information_rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateReport {
    pub length: usize,
    pub k: usize,
    pub n_max: usize,
    pub rows: Vec<EstimateRow>,
    /// Binding information of the `n_max`-block distribution.
    pub binding_information: f64,
    /// Windows per cell of the `n_max`-block table; small values mean undersampling.
    pub windows_per_state: f64,
}

/// Plug-in rate estimates for `n = 1..=n_max`. Needs `2 n_max` symbols.
pub fn estimated_rates(seq: &SymbolSequence, n_max: usize) -> Result<EstimateReport> {
    if n_max < 1 {
        return Err(Error::InvalidShape("n_max must be at least 1".into()));
    }
    if seq.len() < 2 * n_max {
        return Err(Error::SequenceTooShort {
            len: seq.len(),
            needed: 2 * n_max,
        });
    }
    block_states(2 * n_max, seq.k)?;

    let blocks: Vec<EmpiricalBlockModel> = (1..=2 * n_max)
        .map(|n| empirical_blocks(seq, n))
        .collect::<Result<_>>()?;
    let h = |n: usize| if n == 0 { 0.0 } else { blocks[n - 1].entropy() };

    let multi = |n: usize| -> Result<f64> {
        if n < 2 {
            return Ok(0.0);
        }
        measures::multi_information(&blocks[n - 1].to_joint()?)
    };

    let mut rows = Vec::with_capacity(n_max);
    let mut prev_multi = 0.0;
    for n in 1..=n_max {
        let m = multi(n)?;
        rows.push(EstimateRow {
            n,
            block_entropy: h(n),
            entropy_rate: h(n) - h(n - 1),
            excess_entropy: 2.0 * h(n) - h(2 * n),
            multi_information_rate: m - prev_multi,
        });
        prev_multi = m;
    }
    let top = &blocks[n_max - 1];
    let binding_information = if n_max >= 2 {
        measures::binding_information(&top.to_joint()?)?
    } else {
        0.0
    };
    Ok(EstimateReport {
        length: seq.len(),
        k: seq.k,
        n_max,
        rows,
        binding_information,
        windows_per_state: top.total_windows as f64 / top.counts.len() as f64,
    })
}
