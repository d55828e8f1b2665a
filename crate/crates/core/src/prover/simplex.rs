//! Dense two-phase simplex over exact rationals with Bland's rule.
//!
//! Solves `min c·x  s.t.  A x = b, x ≥ 0`. Bland's rule (lowest-index entering
//! column, lowest-index basic variable among ratio ties) rules out cycling, so
//! every solve terminates.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

#[derive(Debug, Clone)]
pub struct StandardForm {
    pub a: Vec<Vec<Rational>>,
    pub b: Vec<Rational>,
    pub c: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Rational>>, // constraint rows; last entry is the rhs
    cost: Vec<Rational>,      // reduced costs; last entry is -objective
    basis: Vec<usize>,
    allowed: Vec<bool>,
}

impl Tableau {
    fn width(&self) -> usize {
        self.cost.len() - 1
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let piv = self.rows[r][col].clone();
        if !piv.is_one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v /= &piv;
                }
            }
        }
        let pivot_row = self.rows[r].clone();
        let eliminate = |row: &mut Vec<Rational>| {
            let f = row[col].clone();
            if f.is_zero() {
                return;
            }
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.cost);
        self.basis[r] = col;
    }

    /// Runs simplex iterations until optimal (`true`) or unbounded (`false`).
    fn run(&mut self) -> bool {
        let rhs = self.width();
        loop {
            let entering = (0..rhs).find(|&j| self.allowed[j] && self.cost[j].is_negative());
            let Some(col) = entering else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[col].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[col];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, col),
                None => return false,
            }
        }
    }
}

pub fn solve(lp: &StandardForm) -> LpOutcome {
    let m = lp.a.len();
    let n = lp.c.len();
    debug_assert!(lp.a.iter().all(|r| r.len() == n));
    debug_assert_eq!(lp.b.len(), m);

    // Phase 1: artificial basis, rows flipped so the rhs is nonnegative.
    let width = n + m;
    let mut rows = Vec::with_capacity(m);
    for (i, (a_row, b_i)) in lp.a.iter().zip(&lp.b).enumerate() {
        let flip = b_i.is_negative();
        let mut row: Vec<Rational> = a_row
            .iter()
            .map(|v| if flip { -v.clone() } else { v.clone() })
            .collect();
        row.extend((0..m).map(|j| {
            if j == i {
                Rational::one()
            } else {
                Rational::zero()
            }
        }));
        row.push(if flip { -b_i.clone() } else { b_i.clone() });
        rows.push(row);
    }
    let mut cost = vec![Rational::zero(); width + 1];
    for row in &rows {
        for j in (0..n).chain(std::iter::once(width)) {
            cost[j] -= &row[j];
        }
    }
    let mut t = Tableau {
        rows,
        cost,
        basis: (n..n + m).collect(),
        allowed: vec![true; width],
    };
    let bounded = t.run();
    debug_assert!(bounded, "phase one is bounded below by zero");
    if !t.cost[width].is_zero() {
        return LpOutcome::Infeasible;
    }

    // Drive remaining artificials out of the basis; drop redundant rows.
    let mut r = 0;
    while r < t.rows.len() {
        if t.basis[r] >= n {
            match (0..n).find(|&j| !t.rows[r][j].is_zero()) {
                Some(col) => t.pivot(r, col),
                None => {
                    t.rows.remove(r);
                    t.basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }
    for j in n..width {
        t.allowed[j] = false;
    }

    // Phase 2
    let mut cost = vec![Rational::zero(); width + 1];
    cost[..n].clone_from_slice(&lp.c);
    for (row, &bv) in t.rows.iter().zip(&t.basis) {
        let cb = &lp.c[bv];
        if cb.is_zero() {
            continue;
        }
        for (j, v) in row.iter().enumerate() {
            if !v.is_zero() {
                cost[j] -= cb * v;
            }
        }
    }
    t.cost = cost;
    if !t.run() {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); n];
    for (row, &bv) in t.rows.iter().zip(&t.basis) {
        x[bv] = row[width].clone();
    }
    let value = -t.cost[width].clone();
    LpOutcome::Optimal { x, value }
}
