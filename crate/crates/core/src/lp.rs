//! Dense two-phase primal simplex for small linear programs.
//!
//! Problems are stated in the inequality form
//!
//! ```text
//!   minimize    cᵀx
//!   subject to  A x ≤ b,   x ≥ 0,
//! ```
//!
//! with no sign restriction on b (phase 1 introduces artificials for rows
//! with negative right-hand sides). The solver keeps a full tableau, which
//! is appropriate for the problem sizes used here (hundreds of rows).

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LpError {
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("simplex did not terminate within {0} pivots")]
    Stalled(usize),
    #[error("dimension mismatch: {0}")]
    Shape(String),
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub objective: f64,
    /// Nonnegative multipliers of the rows of A x ≤ b at the optimum.
    pub row_duals: Vec<f64>,
    pub pivots: usize,
}

/// minimize cᵀx s.t. a_rows·x ≤ b, x ≥ 0.
#[derive(Debug, Clone)]
pub struct DenseLp {
    pub c: Vec<f64>,
    pub rows: Vec<Vec<f64>>,
    pub b: Vec<f64>,
}

const PIVOT_TOL: f64 = 1e-9;
const COST_TOL: f64 = 1e-9;

struct Tableau {
    ncols: usize, // structural + slacks + artificials + rhs
    nrows: usize,
    data: Vec<f64>,   // nrows x ncols, row major
    obj: Vec<f64>,    // reduced-cost row, length ncols (rhs slot = -objective)
    basis: Vec<usize>,
    n_struct: usize,
    n_slack: usize,
    enterable: usize, // columns allowed to enter (excludes artificials in phase 2)
    flipped: Vec<bool>,
}

impl Tableau {
    fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.ncols + j]
    }

    fn rhs(&self, i: usize) -> f64 {
        self.at(i, self.ncols - 1)
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let ncols = self.ncols;
        let piv = self.at(row, col);
        let start = row * ncols;
        let inv = 1.0 / piv;
        for j in 0..ncols {
            self.data[start + j] *= inv;
        }
        self.data[start + col] = 1.0;
        for i in 0..self.nrows {
            if i == row {
                continue;
            }
            let f = self.at(i, col);
            if f.abs() <= 1e-300 {
                continue;
            }
            let ibase = i * ncols;
            for j in 0..ncols {
                self.data[ibase + j] -= f * self.data[start + j];
            }
            self.data[ibase + col] = 0.0;
        }
        let f = self.obj[col];
        if f.abs() > 1e-300 {
            for j in 0..ncols {
                self.obj[j] -= f * self.data[start + j];
            }
            self.obj[col] = 0.0;
        }
        self.basis[row] = col;
    }

    /// Run the simplex on the current objective row until optimal.
    fn optimize(&mut self, max_pivots: usize, pivots: &mut usize) -> Result<(), LpError> {
        let mut bland = false;
        let mut last_obj = f64::INFINITY;
        let mut no_progress = 0usize;
        loop {
            // entering column
            let mut col = None;
            if bland {
                for j in 0..self.enterable {
                    if self.obj[j] < -COST_TOL {
                        col = Some(j);
                        break;
                    }
                }
            } else {
                let mut best = -COST_TOL;
                for j in 0..self.enterable {
                    if self.obj[j] < best {
                        best = self.obj[j];
                        col = Some(j);
                    }
                }
            }
            let Some(col) = col else {
                return Ok(());
            };
            // ratio test
            let mut row = None;
            let mut best_ratio = f64::INFINITY;
            for i in 0..self.nrows {
                let a = self.at(i, col);
                if a > PIVOT_TOL {
                    let ratio = self.rhs(i) / a;
                    if ratio < best_ratio - 1e-12
                        || (ratio < best_ratio + 1e-12
                            && row.is_some_and(|r: usize| self.basis[i] < self.basis[r]))
                    {
                        best_ratio = ratio;
                        row = Some(i);
                    }
                }
            }
            let Some(row) = row else {
                return Err(LpError::Unbounded);
            };
            self.pivot(row, col);
            *pivots += 1;
            if *pivots > max_pivots {
                return Err(LpError::Stalled(max_pivots));
            }
            let cur = -self.obj[self.ncols - 1];
            if cur < last_obj - 1e-12 {
                last_obj = cur;
                no_progress = 0;
            } else {
                no_progress += 1;
                if no_progress > 2 * (self.nrows + self.enterable) {
                    bland = true; // anti-cycling
                }
            }
        }
    }
}

impl DenseLp {
    pub fn solve(&self, max_pivots: usize) -> Result<LpSolution, LpError> {
        let m = self.rows.len();
        let n = self.c.len();
        if self.b.len() != m {
            return Err(LpError::Shape(format!(
                "{} rows but {} rhs entries",
                m,
                self.b.len()
            )));
        }
        for (i, r) in self.rows.iter().enumerate() {
            if r.len() != n {
                return Err(LpError::Shape(format!(
                    "row {i} has {} entries, expected {n}",
                    r.len()
                )));
            }
        }

        let flipped: Vec<bool> = self.b.iter().map(|&bi| bi < 0.0).collect();
        let n_art = flipped.iter().filter(|&&f| f).count();
        let ncols = n + m + n_art + 1;
        let mut data = vec![0.0f64; m * ncols];
        let mut basis = vec![0usize; m];
        let mut art_idx = 0usize;
        for i in 0..m {
            let sign = if flipped[i] { -1.0 } else { 1.0 };
            for j in 0..n {
                data[i * ncols + j] = sign * self.rows[i][j];
            }
            data[i * ncols + n + i] = sign; // slack
            data[i * ncols + ncols - 1] = sign * self.b[i];
            if flipped[i] {
                let col = n + m + art_idx;
                data[i * ncols + col] = 1.0;
                basis[i] = col;
                art_idx += 1;
            } else {
                basis[i] = n + i;
            }
        }

        let mut t = Tableau {
            ncols,
            nrows: m,
            data,
            obj: vec![0.0; ncols],
            basis,
            n_struct: n,
            n_slack: m,
            enterable: n + m,
            flipped,
        };
        let mut pivots = 0usize;

        if n_art > 0 {
            // phase 1: minimize the sum of artificials
            for i in 0..m {
                if t.basis[i] >= n + m {
                    for j in 0..ncols {
                        t.obj[j] -= t.data[i * ncols + j];
                    }
                }
            }
            for j in n + m..ncols - 1 {
                t.obj[j] = 0.0;
            }
            t.optimize(max_pivots, &mut pivots)
                .map_err(|e| match e {
                    // an unbounded phase-1 cannot happen; keep the error
                    LpError::Unbounded => LpError::Infeasible,
                    other => other,
                })?;
            let phase1 = -t.obj[ncols - 1];
            if phase1 > 1e-7 {
                return Err(LpError::Infeasible);
            }
            // drive any remaining artificials out of the basis
            for i in 0..m {
                if t.basis[i] >= n + m {
                    if let Some(col) = (0..n + m).find(|&j| t.at(i, j).abs() > PIVOT_TOL) {
                        t.pivot(i, col);
                        pivots += 1;
                    }
                    // an all-zero row is redundant; its artificial stays at 0
                }
            }
        }

        // phase 2 objective
        t.obj = vec![0.0; ncols];
        for j in 0..n {
            t.obj[j] = self.c[j];
        }
        for i in 0..m {
            let cb = if t.basis[i] < n { self.c[t.basis[i]] } else { 0.0 };
            if cb != 0.0 {
                for j in 0..ncols {
                    t.obj[j] -= cb * t.data[i * ncols + j];
                }
            }
        }
        t.enterable = n + m;
        t.optimize(max_pivots, &mut pivots)?;

        let mut x = vec![0.0; n];
        for i in 0..m {
            if t.basis[i] < n {
                x[t.basis[i]] = t.rhs(i);
            }
        }
        let mut row_duals = vec![0.0; m];
        for i in 0..m {
            let rc = t.obj[t.n_struct + i];
            row_duals[i] = if t.flipped[i] { -rc } else { rc };
        }
        let objective = -t.obj[ncols - 1];
        let _ = t.n_slack;
        Ok(LpSolution {
            x,
            objective,
            row_duals,
            pivots,
        })
    }
}
