//! Dense two-phase simplex for the small linear programs that arise in
//! planar grasp analysis (a handful of rows, at most a dozen columns).
//!
//! Problems are in standard form: minimize `c·x` subject to `A x = b`,
//! `x ≥ 0`. Bland's rule is used throughout, so the solver cannot cycle.

/// Equality residual accepted as feasible, relative to `max(1, ‖b‖∞)`.
pub const FEAS_TOL: f64 = 1e-9;

const PIVOT_TOL: f64 = 1e-11;
const COST_TOL: f64 = 1e-11;
const MAX_PIVOTS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Primal point; meaningful only when `status` is `Optimal`.
    pub x: Vec<f64>,
    pub objective: f64,
}

struct Tableau {
    /// `rows` constraint rows followed by one objective row. The last column
    /// is the right-hand side.
    t: Vec<Vec<f64>>,
    basis: Vec<usize>,
    /// Columns allowed to enter the basis are `0..enter_limit`.
    enter_limit: usize,
}

impl Tableau {
    fn rows(&self) -> usize {
        self.basis.len()
    }

    fn rhs(&self) -> usize {
        self.t[0].len() - 1
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let rhs = self.rhs();
        let p = self.t[row][col];
        for v in self.t[row].iter_mut() {
            *v /= p;
        }
        let pivot_row = self.t[row].clone();
        for (i, r) in self.t.iter_mut().enumerate() {
            if i == row {
                continue;
            }
            let f = r[col];
            if f != 0.0 {
                for j in 0..=rhs {
                    r[j] -= f * pivot_row[j];
                }
                r[col] = 0.0;
            }
        }
        self.basis[row] = col;
    }

    /// Runs simplex iterations on the current objective row. Returns `false`
    /// if the objective is unbounded below.
    fn optimize(&mut self) -> bool {
        let m = self.rows();
        let rhs = self.rhs();
        for _ in 0..MAX_PIVOTS {
            let obj = &self.t[m];
            let Some(col) = (0..self.enter_limit).find(|&j| obj[j] < -COST_TOL) else {
                return true;
            };
            let mut best: Option<(usize, f64)> = None;
            for i in 0..m {
                let a = self.t[i][col];
                if a > PIVOT_TOL {
                    let ratio = self.t[i][rhs] / a;
                    best = match best {
                        None => Some((i, ratio)),
                        Some((bi, br)) => {
                            if ratio < br - 1e-15
                                || (ratio <= br + 1e-15 && self.basis[i] < self.basis[bi])
                            {
                                Some((i, ratio))
                            } else {
                                Some((bi, br))
                            }
                        }
                    };
                }
            }
            match best {
                Some((row, _)) => self.pivot(row, col),
                None => return false,
            }
        }
        true
    }

    fn primal(&self, n: usize) -> Vec<f64> {
        let rhs = self.rhs();
        let mut x = vec![0.0; n];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < n {
                x[b] = self.t[i][rhs].max(0.0);
            }
        }
        x
    }
}

fn scale_of(b: &[f64]) -> f64 {
    b.iter().fold(1.0_f64, |acc, v| acc.max(v.abs()))
}

fn residual(a: &[Vec<f64>], b: &[f64], x: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(row, bi)| {
            let ax: f64 = row.iter().zip(x).map(|(aij, xj)| aij * xj).sum();
            (ax - bi).abs()
        })
        .fold(0.0, f64::max)
}

/// Phase one: finds a feasible basis. Returns the tableau (artificial columns
/// still present) or `None` if infeasible.
fn phase_one(a: &[Vec<f64>], b: &[f64], n: usize) -> Option<Tableau> {
    let m = a.len();
    let width = n + m + 1;
    let mut t = vec![vec![0.0; width]; m + 1];
    for i in 0..m {
        let sign = if b[i] < 0.0 { -1.0 } else { 1.0 };
        for j in 0..n {
            t[i][j] = sign * a[i][j];
        }
        t[i][n + i] = 1.0;
        t[i][width - 1] = sign * b[i];
    }
    for j in 0..n {
        t[m][j] = -(0..m).map(|i| t[i][j]).sum::<f64>();
    }
    t[m][width - 1] = -(0..m).map(|i| t[i][width - 1]).sum::<f64>();

    let mut tab = Tableau {
        t,
        basis: (n..n + m).collect(),
        enter_limit: n,
    };
    tab.optimize();

    let x = tab.primal(n);
    if residual(a, b, &x) > FEAS_TOL * scale_of(b) {
        return None;
    }

    // Drive zero-level artificials out of the basis; drop redundant rows.
    let mut i = 0;
    while i < tab.rows() {
        if tab.basis[i] >= n {
            match (0..n).find(|&j| tab.t[i][j].abs() > 1e-9) {
                Some(j) => tab.pivot(i, j),
                None => {
                    tab.t.remove(i);
                    tab.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    Some(tab)
}

/// True iff some `x ≥ 0` satisfies `A x = b` within [`FEAS_TOL`].
pub fn feasible(a: &[Vec<f64>], b: &[f64]) -> bool {
    let n = a.first().map_or(0, Vec::len);
    phase_one(a, b, n).is_some()
}

/// Minimizes `c·x` subject to `A x = b`, `x ≥ 0`.
pub fn minimize(a: &[Vec<f64>], b: &[f64], c: &[f64]) -> LpSolution {
    let n = c.len();
    debug_assert!(a.iter().all(|row| row.len() == n));
    let Some(mut tab) = phase_one(a, b, n) else {
        return LpSolution {
            status: LpStatus::Infeasible,
            x: vec![0.0; n],
            objective: f64::NAN,
        };
    };

    let m = tab.rows();
    let rhs = tab.rhs();
    let mut obj = vec![0.0; rhs + 1];
    obj[..n].copy_from_slice(c);
    for i in 0..m {
        let cb = c[tab.basis[i]];
        if cb != 0.0 {
            for j in 0..=rhs {
                obj[j] -= cb * tab.t[i][j];
            }
        }
    }
    tab.t[m] = obj;

    if !tab.optimize() {
        return LpSolution {
            status: LpStatus::Unbounded,
            x: tab.primal(n),
            objective: f64::NEG_INFINITY,
        };
    }
    let x = tab.primal(n);
    let objective = x.iter().zip(c).map(|(xi, ci)| xi * ci).sum();
    LpSolution {
        status: LpStatus::Optimal,
        x,
        objective,
    }
}
