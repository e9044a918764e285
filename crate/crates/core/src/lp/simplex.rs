//! Exact two-phase simplex with Bland's rule.
//!
//! Problems are in standard form: maximize `c·x` subject to `Ax = b`, `x ≥ 0`.
//! Linearly dependent rows are removed by exact row reduction first, so the
//! phase-one artificials can always be driven out of the basis.

use super::LinearProgram;
use crate::error::{Error, Result};
use num_rational::BigRational;
use num_traits::{Signed, Zero};

type Q = BigRational;

#[derive(Debug, Clone, PartialEq)]
pub enum SimplexOutcome {
    Optimal {
        value: Q,
        vertex: Vec<Q>,
    },
    /// `farkas` is a multiplier `y` on the original rows with `Aᵀy ≥ 0` and
    /// `b·y < 0`; `phase_one` is the (negative) optimum of `-Σ artificials`,
    /// or zero when the rows are already inconsistent after reduction.
    Infeasible {
        farkas: Vec<Q>,
        phase_one: Q,
    },
    /// A feasible point plus a direction `d ≥ 0` with `Ad = 0` and `c·d > 0`.
    Unbounded {
        point: Vec<Q>,
        ray: Vec<Q>,
    },
}

/// Rows in the form used by the tableau: each row holds the coefficients
/// followed by the right-hand side.
struct Tableau {
    rows: Vec<Vec<Q>>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Q {
        &self.rows[i][self.ncols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v = &*v / &p;
            }
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Simplex multipliers `y_i = Σ_k c_{B_k} T[k][col_i]` read through the
    /// given identity columns.
    fn duals(&self, cost: &[Q], identity_cols: std::ops::Range<usize>) -> Vec<Q> {
        identity_cols
            .map(|col| {
                self.rows
                    .iter()
                    .zip(&self.basis)
                    .fold(Q::zero(), |acc, (row, &b)| acc + &cost[b] * &row[col])
            })
            .collect()
    }

    fn reduced_cost(&self, cost: &[Q], j: usize) -> Q {
        let mut d = cost[j].clone();
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if !row[j].is_zero() && !cost[b].is_zero() {
                d -= &cost[b] * &row[j];
            }
        }
        d
    }

    /// Maximizes `cost` over columns `< allowed`. Returns the entering column
    /// if the problem is unbounded along it.
    fn optimize(&mut self, cost: &[Q], allowed: usize) -> Option<usize> {
        loop {
            // Bland: lowest-index improving column
            let entering = (0..allowed)
                .filter(|j| !self.basis.contains(j))
                .find(|&j| self.reduced_cost(cost, j).is_positive());
            let j = entering?;
            let mut leave: Option<(usize, Q)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][j];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((i, _)) => self.pivot(i, j),
                None => return Some(j),
            }
        }
    }

    fn solution(&self, nvars: usize) -> Vec<Q> {
        let mut x = vec![Q::zero(); nvars];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < nvars {
                x[b] = self.rhs(i).clone();
            }
        }
        x
    }
}

/// Exact row reduction of `[A | b]`. Returns the independent rows and, when
/// `track` is set, the multipliers expressing each kept row in the original
/// rows. An inconsistent row yields `Err(multiplier)`.
struct Reduced {
    rows: Vec<Vec<Q>>,
    rhs: Vec<Q>,
    combos: Vec<Vec<Q>>,
}

fn reduce_rows(lp: &LinearProgram, track: bool) -> std::result::Result<Reduced, Vec<Q>> {
    let n = lp.num_vars;
    let m = lp.rows.len();
    // each working row: coefficients, rhs, then (optionally) the combination
    let width = n + 1 + if track { m } else { 0 };
    let mut work: Vec<Vec<Q>> = lp
        .rows
        .iter()
        .zip(&lp.rhs)
        .enumerate()
        .map(|(i, (row, b))| {
            let mut w = Vec::with_capacity(width);
            w.extend(row.iter().cloned());
            w.push(b.clone());
            if track {
                w.extend((0..m).map(|k| if k == i { Q::from_integer(1.into()) } else { Q::zero() }));
            }
            w
        })
        .collect();
    let mut pivot_rows = 0;
    for col in 0..n {
        let Some(p) = (pivot_rows..work.len()).find(|&i| !work[i][col].is_zero()) else {
            continue;
        };
        work.swap(pivot_rows, p);
        let pv = work[pivot_rows][col].clone();
        for v in work[pivot_rows].iter_mut() {
            if !v.is_zero() {
                *v = &*v / &pv;
            }
        }
        let prow = work[pivot_rows].clone();
        for (i, row) in work.iter_mut().enumerate() {
            if i == pivot_rows || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        pivot_rows += 1;
    }
    // rows past pivot_rows have zero coefficients
    for row in &work[pivot_rows..] {
        if !row[n].is_zero() {
            if !track {
                return Err(Vec::new());
            }
            // 0 = c with c ≠ 0: y = ±combo gives Aᵀy = 0 and b·y = -|c|
            let sign = if row[n].is_positive() { -1 } else { 1 };
            let y = row[n + 1..]
                .iter()
                .map(|v| v * Q::from_integer(sign.into()))
                .collect();
            return Err(y);
        }
    }
    work.truncate(pivot_rows);
    let mut out = Reduced {
        rows: Vec::with_capacity(pivot_rows),
        rhs: Vec::with_capacity(pivot_rows),
        combos: Vec::new(),
    };
    for mut w in work {
        if track {
            out.combos.push(w.split_off(n + 1));
        }
        out.rhs.push(w.pop().expect("rhs present"));
        out.rows.push(w);
    }
    Ok(out)
}

/// A basic feasible solution of `Ax = b, x ≥ 0`, ready for phase two with any objective.
#[derive(Clone)]
pub struct FeasibleStart {
    nvars: usize,
    rows: Vec<Vec<Q>>,
    basis: Vec<usize>,
}

impl FeasibleStart {
    /// Runs phase one. On infeasibility returns the Farkas multiplier and the
    /// phase-one optimum.
    pub fn find(lp: &LinearProgram) -> Result<std::result::Result<Self, (Vec<Q>, Q)>> {
        lp.check()?;
        let n = lp.num_vars;
        let reduced = match reduce_rows(lp, false) {
            Ok(r) => r,
            Err(_) => {
                let y = reduce_rows(lp, true).err().expect("inconsistent on replay");
                return Ok(Err((y, Q::zero())));
            }
        };
        let r = reduced.rows.len();
        let ncols = n + r;
        let mut signs = Vec::with_capacity(r);
        let mut rows = Vec::with_capacity(r);
        for (i, (row, b)) in reduced.rows.into_iter().zip(reduced.rhs).enumerate() {
            let flip = b.is_negative();
            signs.push(flip);
            let mut t: Vec<Q> = row.into_iter().map(|v| if flip { -v } else { v }).collect();
            t.extend((0..r).map(|k| if k == i { Q::from_integer(1.into()) } else { Q::zero() }));
            t.push(if flip { -b } else { b });
            rows.push(t);
        }
        let mut tab = Tableau {
            rows,
            basis: (n..ncols).collect(),
            ncols,
        };
        let cost: Vec<Q> = (0..ncols)
            .map(|j| if j < n { Q::zero() } else { Q::from_integer((-1).into()) })
            .collect();
        let unbounded = tab.optimize(&cost, ncols);
        debug_assert!(unbounded.is_none(), "phase one is bounded");
        let value = tab
            .basis
            .iter()
            .enumerate()
            .fold(Q::zero(), |acc, (i, &b)| acc + &cost[b] * tab.rhs(i));
        if value.is_negative() {
            let y = tab.duals(&cost, n..ncols);
            // undo the sign flips, then map back through the row reduction
            let y: Vec<Q> = y
                .into_iter()
                .zip(&signs)
                .map(|(v, &f)| if f { -v } else { v })
                .collect();
            let replay = reduce_rows(lp, true).expect("rows were consistent");
            let m = lp.rows.len();
            let farkas = (0..m)
                .map(|k| {
                    replay
                        .combos
                        .iter()
                        .zip(&y)
                        .fold(Q::zero(), |acc, (combo, yi)| acc + &combo[k] * yi)
                })
                .collect();
            return Ok(Err((farkas, value)));
        }
        // drive remaining (zero-level) artificials out of the basis
        let mut i = 0;
        while i < tab.rows.len() {
            if tab.basis[i] >= n {
                match (0..n).find(|&j| !tab.rows[i][j].is_zero()) {
                    Some(j) => tab.pivot(i, j),
                    None => {
                        // cannot happen for independent rows; drop defensively
                        tab.rows.remove(i);
                        tab.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
        let rows = tab
            .rows
            .into_iter()
            .map(|mut row| {
                let rhs = row.pop().expect("rhs present");
                row.truncate(n);
                row.push(rhs);
                row
            })
            .collect();
        Ok(Ok(FeasibleStart {
            nvars: n,
            rows,
            basis: tab.basis,
        }))
    }

    /// The basic feasible solution itself.
    pub fn point(&self) -> Vec<Q> {
        let tab = Tableau {
            rows: self.rows.clone(),
            basis: self.basis.clone(),
            ncols: self.nvars,
        };
        tab.solution(self.nvars)
    }

    /// Phase two for `objective` from this start.
    pub fn maximize(&self, objective: &[Q]) -> Result<SimplexOutcome> {
        if objective.len() != self.nvars {
            return Err(Error::MalformedLp(format!(
                "objective has {} entries, expected {}",
                objective.len(),
                self.nvars
            )));
        }
        let mut tab = Tableau {
            rows: self.rows.clone(),
            basis: self.basis.clone(),
            ncols: self.nvars,
        };
        if let Some(j) = tab.optimize(objective, self.nvars) {
            let point = tab.solution(self.nvars);
            let mut ray = vec![Q::zero(); self.nvars];
            ray[j] = Q::from_integer(1.into());
            for (i, &b) in tab.basis.iter().enumerate() {
                ray[b] = -tab.rows[i][j].clone();
            }
            return Ok(SimplexOutcome::Unbounded { point, ray });
        }
        let vertex = tab.solution(self.nvars);
        let value = vertex
            .iter()
            .zip(objective)
            .fold(Q::zero(), |acc, (x, c)| acc + x * c);
        Ok(SimplexOutcome::Optimal { value, vertex })
    }
}

/// Maximizes `lp.objective` subject to `lp`'s equalities and `x ≥ 0`.
pub fn simplex_solve(lp: &LinearProgram) -> Result<SimplexOutcome> {
    match FeasibleStart::find(lp)? {
        Ok(start) => start.maximize(&lp.objective),
        Err((farkas, phase_one)) => Ok(SimplexOutcome::Infeasible { farkas, phase_one }),
    }
}
