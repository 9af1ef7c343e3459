//! Dense two-phase primal simplex. Pivots follow the largest reduced cost and
//! fall back to Bland's rule during long degenerate stretches.
//!
//! Solves `max cᵀx  s.t.  A_ub x ≤ b_ub,  A_eq x = b_eq,  x ≥ 0` and returns
//! the optimal vertex together with the dual multipliers of every row.

use crate::error::{Error, Result};

const PIVOT_EPS: f64 = 1e-9;
/// Entries this small after a pivot are roundoff and are snapped to zero.
const ZERO_SNAP: f64 = 1e-12;
const MAX_PIVOTS: usize = 200_000;
/// Consecutive degenerate pivots before switching to Bland's rule.
const BLAND_AFTER: usize = 50;

#[derive(Clone, Debug, Default)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    pub ub_rows: Vec<(Vec<f64>, f64)>,
    pub eq_rows: Vec<(Vec<f64>, f64)>,
}

#[derive(Clone, Debug)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub objective: f64,
    /// Multipliers of the `≤` rows (non-negative).
    pub ub_duals: Vec<f64>,
    /// Multipliers of the `=` rows (free sign).
    pub eq_duals: Vec<f64>,
}

impl LinearProgram {
    pub fn new(n_vars: usize) -> Self {
        LinearProgram { objective: vec![0.0; n_vars], ..Default::default() }
    }

    pub fn n_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add_le(&mut self, row: Vec<f64>, rhs: f64) {
        self.ub_rows.push((row, rhs));
    }

    pub fn add_eq(&mut self, row: Vec<f64>, rhs: f64) {
        self.eq_rows.push((row, rhs));
    }

    pub fn solve(&self) -> Result<LpSolution> {
        Tableau::build(self)?.run(self)
    }
}

struct Tableau {
    /// `m` rows of `width + 1` entries; the last entry is the right-hand side.
    rows: Vec<Vec<f64>>,
    basis: Vec<usize>,
    n: usize,
    /// Column holding `+e_i` in the sign-adjusted system for each row.
    unit_col: Vec<usize>,
    /// `-1` where a row was negated to make its right-hand side non-negative.
    sign: Vec<f64>,
    artificial: Vec<bool>,
    width: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Result<Self> {
        let n = lp.n_vars();
        let m_ub = lp.ub_rows.len();
        let m = m_ub + lp.eq_rows.len();
        for (row, rhs) in lp.ub_rows.iter().chain(&lp.eq_rows) {
            if row.len() != n || !rhs.is_finite() || row.iter().any(|v| !v.is_finite()) {
                return Err(Error::Shape(format!("constraint row must have {n} finite entries")));
            }
        }
        // columns: originals, one slack per ≤ row, then artificials as needed
        let mut unit_col = vec![0; m];
        let mut sign = vec![1.0; m];
        let mut needs_art = vec![false; m];
        for (i, (_, rhs)) in lp.ub_rows.iter().enumerate() {
            if *rhs < 0.0 {
                sign[i] = -1.0;
                needs_art[i] = true;
            }
        }
        for i in m_ub..m {
            needs_art[i] = true;
            if lp.eq_rows[i - m_ub].1 < 0.0 {
                sign[i] = -1.0;
            }
        }
        let n_art = needs_art.iter().filter(|b| **b).count();
        let width = n + m_ub + n_art;
        let mut artificial = vec![false; width];
        let mut rows = vec![vec![0.0; width + 1]; m];
        let mut next_art = n + m_ub;
        for i in 0..m {
            let (src, rhs) = if i < m_ub { &lp.ub_rows[i] } else { &lp.eq_rows[i - m_ub] };
            for (j, v) in src.iter().enumerate() {
                rows[i][j] = sign[i] * v;
            }
            rows[i][width] = sign[i] * rhs;
            if i < m_ub {
                rows[i][n + i] = sign[i];
                if sign[i] > 0.0 {
                    unit_col[i] = n + i;
                }
            }
            if needs_art[i] {
                rows[i][next_art] = 1.0;
                artificial[next_art] = true;
                unit_col[i] = next_art;
                next_art += 1;
            }
        }
        let basis = unit_col.clone();
        Ok(Tableau { rows, basis, n, unit_col, sign, artificial, width })
    }

    fn reduced_costs(&self, cost: &[f64]) -> Vec<f64> {
        let mut r = cost.to_vec();
        r.push(0.0);
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = cost[b];
            if cb != 0.0 {
                for (rj, tij) in r.iter_mut().zip(&self.rows[i]) {
                    *rj -= cb * tij;
                }
            }
        }
        r
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.rows[row][col];
        for v in self.rows[row].iter_mut() {
            *v /= p;
        }
        let pivot_row = self.rows[row].clone();
        for (i, r) in self.rows.iter_mut().enumerate() {
            if i == row {
                continue;
            }
            let f = r[col];
            if f != 0.0 {
                for (v, pv) in r.iter_mut().zip(&pivot_row) {
                    *v -= f * pv;
                    if v.abs() < ZERO_SNAP {
                        *v = 0.0;
                    }
                }
                r[col] = 0.0;
            }
        }
        self.basis[row] = col;
    }

    /// Maximizes `cost` over the current basis; artificial columns never enter
    /// when `allow_art` is false.
    fn optimize(&mut self, cost: &[f64], allow_art: bool) -> Result<()> {
        let mut degenerate_run = 0;
        for _ in 0..MAX_PIVOTS {
            let r = self.reduced_costs(cost);
            let eligible = |j: &usize| (allow_art || !self.artificial[*j]) && r[*j] > PIVOT_EPS;
            let entering = if degenerate_run > BLAND_AFTER {
                (0..self.width).find(eligible)
            } else {
                (0..self.width).filter(eligible).max_by(|&a, &b| r[a].total_cmp(&r[b]))
            };
            let Some(col) = entering else { return Ok(()) };
            let mut best: Option<(f64, usize)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                let a = row[col];
                if a > PIVOT_EPS {
                    let ratio = row[self.width] / a;
                    best = match best {
                        None => Some((ratio, i)),
                        Some((br, bi)) => {
                            if ratio < br - PIVOT_EPS
                                || ((ratio - br).abs() <= PIVOT_EPS && self.basis[i] < self.basis[bi])
                            {
                                Some((ratio, i))
                            } else {
                                Some((br, bi))
                            }
                        }
                    };
                }
            }
            let Some((ratio, row)) = best else { return Err(Error::Unbounded) };
            degenerate_run = if ratio <= PIVOT_EPS { degenerate_run + 1 } else { 0 };
            self.pivot(row, col);
        }
        Err(Error::NotConverged { iterations: MAX_PIVOTS, residual: f64::NAN })
    }

    fn run(mut self, lp: &LinearProgram) -> Result<LpSolution> {
        if self.artificial.iter().any(|a| *a) {
            let phase1: Vec<f64> = self.artificial.iter().map(|a| if *a { -1.0 } else { 0.0 }).collect();
            self.optimize(&phase1, true)?;
            let infeasibility: f64 = self
                .basis
                .iter()
                .enumerate()
                .filter(|(_, b)| self.artificial[**b])
                .map(|(i, _)| self.rows[i][self.width])
                .sum();
            let scale = 1.0 + self.rows.iter().map(|r| r[self.width].abs()).fold(0.0, f64::max);
            if infeasibility > 1e-9 * scale {
                return Err(Error::Infeasible);
            }
            // drive basic artificials out where a real column can replace them
            // (the row sits at zero level, so the pivot sign does not matter)
            for i in 0..self.rows.len() {
                if self.artificial[self.basis[i]] {
                    let pick = (0..self.width)
                        .filter(|&j| !self.artificial[j])
                        .max_by(|&a, &b| self.rows[i][a].abs().total_cmp(&self.rows[i][b].abs()));
                    if let Some(j) = pick.filter(|&j| self.rows[i][j].abs() > 1e-9) {
                        self.rows[i][self.width] = 0.0;
                        self.pivot(i, j);
                    }
                }
            }
        }
        let mut cost = lp.objective.clone();
        cost.resize(self.width, 0.0);
        self.optimize(&cost, false)?;

        let mut x = vec![0.0; self.n];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.n {
                x[b] = self.rows[i][self.width].max(0.0);
            }
        }
        let r = self.reduced_costs(&cost);
        let duals: Vec<f64> = (0..self.rows.len()).map(|i| -self.sign[i] * r[self.unit_col[i]]).collect();
        let m_ub = lp.ub_rows.len();
        let objective = lp.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
        Ok(LpSolution {
            x,
            objective,
            ub_duals: duals[..m_ub].iter().map(|v| v.max(0.0)).collect(),
            eq_duals: duals[m_ub..].to_vec(),
        })
    }
}
