//! Exact linear programming over left invariant means.
//!
//! On a finite semigroup a mean is a probability vector `p` over the
//! elements, and it is left invariant iff for every `s` its pushforward under
//! `λ_s` equals `p`: `p_u = Σ_{t : st = u} p_t` for all `s, u`. Together with
//! `Σ p = 1` these equalities cut out the polytope `LIM(S)`.

mod means;
mod simplex;

pub use means::*;
pub use simplex::{simplex_solve, FeasibleStart, SimplexOutcome};

use crate::error::{Error, Result};
use crate::ratio::{fmt_ratio, parse_ratio};
use crate::subset::SubsetMask;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt::Write as _;

/// Maximize `objective · x` subject to `rows · x = rhs` and `x ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub rows: Vec<Vec<BigRational>>,
    pub rhs: Vec<BigRational>,
    pub objective: Vec<BigRational>,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            rows: Vec::new(),
            rhs: Vec::new(),
            objective: vec![BigRational::zero(); num_vars],
        }
    }

    pub fn add_row(&mut self, coeffs: Vec<BigRational>, rhs: BigRational) {
        self.rows.push(coeffs);
        self.rhs.push(rhs);
    }

    pub(crate) fn check(&self) -> Result<()> {
        if self.objective.len() != self.num_vars {
            return Err(Error::MalformedLp(format!(
                "objective has {} entries, expected {}",
                self.objective.len(),
                self.num_vars
            )));
        }
        if self.rows.len() != self.rhs.len() {
            return Err(Error::MalformedLp("row and rhs counts differ".into()));
        }
        if let Some(i) = self.rows.iter().position(|r| r.len() != self.num_vars) {
            return Err(Error::MalformedLp(format!(
                "row {i} has {} entries, expected {}",
                self.rows[i].len(),
                self.num_vars
            )));
        }
        Ok(())
    }

    /// Text dump: `vars n`, one `eq c_0 .. c_{n-1} = b` line per row, then `obj ..`.
    pub fn to_dump(&self) -> String {
        let mut out = format!("vars {}\n", self.num_vars);
        for (row, b) in self.rows.iter().zip(&self.rhs) {
            out.push_str("eq");
            for c in row {
                write!(out, " {c}").unwrap();
            }
            writeln!(out, " = {b}").unwrap();
        }
        out.push_str("obj");
        for c in &self.objective {
            write!(out, " {c}").unwrap();
        }
        out.push('\n');
        out
    }

    pub fn from_dump(text: &str) -> Result<Self> {
        let bad = |line: usize, msg: &str| Error::Parse {
            line,
            msg: msg.to_string(),
        };
        let num = |line: usize, tok: &str| parse_ratio(tok).ok_or_else(|| bad(line, "bad rational"));
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, first) = lines.next().ok_or_else(|| bad(1, "empty dump"))?;
        let n: usize = first
            .strip_prefix("vars ")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| bad(1, "expected `vars n`"))?;
        let mut lp = LinearProgram::new(n);
        let mut saw_obj = false;
        for (i, line) in lines {
            let lineno = i + 1;
            let mut toks = line.split_whitespace();
            match toks.next() {
                Some("eq") => {
                    let toks: Vec<&str> = toks.collect();
                    let eqpos = toks
                        .iter()
                        .position(|t| *t == "=")
                        .ok_or_else(|| bad(lineno, "missing `=`"))?;
                    let coeffs = toks[..eqpos]
                        .iter()
                        .map(|t| num(lineno, t))
                        .collect::<Result<Vec<_>>>()?;
                    if toks.len() != eqpos + 2 {
                        return Err(bad(lineno, "expected one value after `=`"));
                    }
                    lp.add_row(coeffs, num(lineno, toks[eqpos + 1])?);
                }
                Some("obj") => {
                    lp.objective = toks.map(|t| num(lineno, t)).collect::<Result<Vec<_>>>()?;
                    saw_obj = true;
                }
                _ => return Err(bad(lineno, "expected `eq` or `obj`")),
            }
        }
        if !saw_obj {
            return Err(bad(0, "missing `obj` line"));
        }
        lp.check()?;
        Ok(lp)
    }
}

/// A probability vector over the elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MeanVector {
    weights: Vec<BigRational>,
}

impl MeanVector {
    pub fn new(weights: Vec<BigRational>) -> Result<Self> {
        if weights.iter().any(|w| w.is_negative()) {
            return Err(Error::PreconditionViolated("negative weight".into()));
        }
        let total: BigRational = weights.iter().sum();
        if !total.is_one() {
            return Err(Error::PreconditionViolated(format!(
                "weights sum to {}",
                fmt_ratio(&total)
            )));
        }
        Ok(MeanVector { weights })
    }

    pub fn uniform(n: usize) -> Self {
        let w = BigRational::new(1.into(), (n as i64).into());
        MeanVector {
            weights: vec![w; n],
        }
    }

    pub fn point_mass(n: usize, x: usize) -> Self {
        let mut weights = vec![BigRational::zero(); n];
        weights[x] = BigRational::one();
        MeanVector { weights }
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `μ(A) = Σ_{a ∈ A} p_a`.
    pub fn measure(&self, a: SubsetMask) -> BigRational {
        a.iter().map(|x| &self.weights[x]).sum()
    }

    pub fn support(&self) -> SubsetMask {
        let items = (0..self.len()).filter(|&x| !self.weights[x].is_zero());
        SubsetMask::from_indices(self.len(), items).expect("order fits a mask")
    }

    /// `p_i <num>/<den>` lines, tab separated.
    pub fn to_tsv(&self) -> String {
        self.weights
            .iter()
            .enumerate()
            .map(|(i, w)| format!("p_{i}\t{}\n", fmt_ratio(w)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::ratio;

    #[test]
    fn dump_roundtrip() {
        let mut lp = LinearProgram::new(2);
        lp.add_row(vec![ratio(1, 1), ratio(1, 2)], ratio(3, 4));
        lp.objective = vec![ratio(0, 1), ratio(1, 1)];
        let text = lp.to_dump();
        assert_eq!(text, "vars 2\neq 1 1/2 = 3/4\nobj 0 1\n");
        assert_eq!(LinearProgram::from_dump(&text).unwrap(), lp);
    }

    #[test]
    fn dump_errors() {
        assert!(LinearProgram::from_dump("").is_err());
        assert!(LinearProgram::from_dump("vars 2\neq 1 1 1\nobj 0 0").is_err());
        assert!(LinearProgram::from_dump("vars 2\neq 1 = 1\nobj 0 0").is_err());
        assert!(LinearProgram::from_dump("vars 2\neq 1 1 = 1").is_err());
    }

    #[test]
    fn mean_vector_validation() {
        assert!(MeanVector::new(vec![ratio(1, 2), ratio(1, 2)]).is_ok());
        assert!(MeanVector::new(vec![ratio(1, 2), ratio(1, 3)]).is_err());
        let neg = MeanVector::new(vec![ratio(3, 2), -ratio(1, 2)]);
        assert!(neg.is_err());
        let u = MeanVector::uniform(4);
        assert_eq!(u.measure(SubsetMask::from_indices(4, [0, 3]).unwrap()), ratio(1, 2));
        assert_eq!(MeanVector::point_mass(3, 1).to_tsv(), "p_0\t0/1\np_1\t1/1\np_2\t0/1\n");
    }
}
