//! Left invariant means: amenability, Banach density, products, quotients.

use super::{FeasibleStart, LinearProgram, MeanVector, SimplexOutcome};
use crate::error::{Error, Result};
use crate::semigroup::{direct_product, FiniteSemigroup, QuotientMap};
use crate::subset::SubsetMask;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::HashSet;

type Q = BigRational;

fn q(v: i64) -> Q {
    Q::from_integer(v.into())
}

/// The rows of `LIM(S)`: `Σ p = 1` and `p_u − Σ_{t : st = u} p_t = 0` for
/// every `s, u`. Rows that vanish identically, or repeat an earlier row, are
/// left out.
fn lim_rows(s: &FiniteSemigroup, lp: &mut LinearProgram) {
    let n = s.order();
    lp.add_row(vec![q(1); n], q(1));
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    for a in s.elements() {
        for u in s.elements() {
            let mut row = vec![0i64; n];
            row[u] += 1;
            for t in s.elements() {
                if s.mul(a, t) == u {
                    row[t] -= 1;
                }
            }
            if row.iter().all(|&c| c == 0) || !seen.insert(row.clone()) {
                continue;
            }
            lp.add_row(row.into_iter().map(q).collect(), q(0));
        }
    }
}

/// Maximize `p(objective)` over `LIM(S)`.
pub fn build_lim_program(s: &FiniteSemigroup, objective: SubsetMask) -> LinearProgram {
    let mut lp = LinearProgram::new(s.order());
    lim_rows(s, &mut lp);
    for x in objective.iter() {
        lp.objective[x] = q(1);
    }
    lp
}

impl MeanVector {
    /// Whether the pushforward under every `λ_s` is the vector itself.
    pub fn is_left_invariant(&self, s: &FiniteSemigroup) -> bool {
        if self.len() != s.order() {
            return false;
        }
        let w = self.weights();
        s.elements().all(|a| {
            let mut push = vec![Q::zero(); s.order()];
            for t in s.elements() {
                push[s.mul(a, t)] += &w[t];
            }
            push == w
        })
    }
}

/// Phase one of `LIM(S)` solved once, reused for every objective.
#[derive(Clone)]
pub struct LimSolver {
    order: usize,
    start: Option<FeasibleStart>,
}

impl LimSolver {
    pub fn new(s: &FiniteSemigroup) -> Self {
        let lp = build_lim_program(s, SubsetMask::empty(s.order()));
        let start = FeasibleStart::find(&lp)
            .expect("LIM program is well formed")
            .ok();
        LimSolver {
            order: s.order(),
            start,
        }
    }

    pub fn is_amenable(&self) -> bool {
        self.start.is_some()
    }

    /// Some left invariant mean (the phase-one vertex).
    pub fn some_mean(&self) -> Result<MeanVector> {
        let start = self.start.as_ref().ok_or(Error::NotAmenable)?;
        MeanVector::new(start.point())
    }

    /// Maximizes `c · p` over `LIM(S)`, returning the value and the vertex.
    pub fn maximize(&self, objective: &[Q]) -> Result<(Q, MeanVector)> {
        let start = self.start.as_ref().ok_or(Error::NotAmenable)?;
        match start.maximize(objective)? {
            SimplexOutcome::Optimal { value, vertex } => Ok((value, MeanVector::new(vertex)?)),
            other => Err(Error::TheoremViolation(format!(
                "LIM program is a bounded polytope but phase two returned {other:?}"
            ))),
        }
    }

    /// `d*(A)` and a maximizing mean.
    pub fn banach_density(&self, a: SubsetMask) -> Result<(Q, MeanVector)> {
        if a.order() != self.order {
            return Err(Error::SizeMismatch {
                left: a.order(),
                right: self.order,
            });
        }
        let mut c = vec![Q::zero(); self.order];
        for x in a.iter() {
            c[x] = q(1);
        }
        self.maximize(&c)
    }
}

/// Whether `S` carries a left invariant mean.
pub fn is_left_amenable(s: &FiniteSemigroup) -> bool {
    LimSolver::new(s).is_amenable()
}

/// `d*(A) = max { p(A) : p ∈ LIM(S) }` with a maximizing vertex.
pub fn banach_density(s: &FiniteSemigroup, a: SubsetMask) -> Result<(Q, MeanVector)> {
    LimSolver::new(s).banach_density(a)
}

fn require_invariant(p: &MeanVector, s: &FiniteSemigroup, what: &str) -> Result<()> {
    if p.len() != s.order() {
        return Err(Error::SizeMismatch {
            left: p.len(),
            right: s.order(),
        });
    }
    if !p.is_left_invariant(s) {
        return Err(Error::NotInvariantInput(format!("{what} is not left invariant")));
    }
    Ok(())
}

/// The outer product `r_{(i,j)} = p_i q_j` on `S × T`, indexed as in
/// [`direct_product`]. Both the invariance of `r` and `r(A×B) = p(A)q(B)` on
/// singleton rectangles are checked before returning.
pub fn product_mean(p: &MeanVector, s: &FiniteSemigroup, q_: &MeanVector, t: &FiniteSemigroup) -> Result<MeanVector> {
    require_invariant(p, s, "left factor mean")?;
    require_invariant(q_, t, "right factor mean")?;
    let st = direct_product(s, t)?;
    let m = t.order();
    let weights: Vec<Q> = (0..st.order())
        .map(|k| &p.weights()[k / m] * &q_.weights()[k % m])
        .collect();
    let r = MeanVector::new(weights)?;
    if !r.is_left_invariant(&st) {
        return Err(Error::TheoremViolation("product of invariant means is not invariant".into()));
    }
    for i in s.elements() {
        for j in t.elements() {
            let rect = SubsetMask::singleton(st.order(), i * m + j);
            if r.measure(rect) != &p.weights()[i] * &q_.weights()[j] {
                return Err(Error::TheoremViolation(format!(
                    "product mean fails on rectangle ({i},{j})"
                )));
            }
        }
    }
    Ok(r)
}

/// `q_u = Σ_{h(t) = u} p_t`.
pub fn pushforward_mean(p: &MeanVector, h: &QuotientMap) -> Result<MeanVector> {
    require_invariant(p, h.source(), "mean")?;
    let mut weights = vec![Q::zero(); h.target().order()];
    for (t, &u) in h.class_of().iter().enumerate() {
        weights[u] += &p.weights()[t];
    }
    let out = MeanVector::new(weights)?;
    if !out.is_left_invariant(h.target()) {
        return Err(Error::TheoremViolation("pushforward of an invariant mean is not invariant".into()));
    }
    Ok(out)
}

/// Some `p ∈ LIM(source)` whose pushforward is `q`. Infeasibility would
/// contradict the lifting theorem and is reported as a violation.
pub fn lift_mean_feasible(q_: &MeanVector, h: &QuotientMap) -> Result<MeanVector> {
    require_invariant(q_, h.target(), "target mean")?;
    let s = h.source();
    let n = s.order();
    let mut lp = LinearProgram::new(n);
    lim_rows(s, &mut lp);
    for u in h.target().elements() {
        let row = (0..n)
            .map(|t| if h.class_of()[t] == u { q(1) } else { q(0) })
            .collect();
        lp.add_row(row, q_.weights()[u].clone());
    }
    match super::simplex_solve(&lp)? {
        SimplexOutcome::Optimal { vertex, .. } => {
            let p = MeanVector::new(vertex)?;
            debug_assert!(p.is_left_invariant(s));
            Ok(p)
        }
        SimplexOutcome::Infeasible { .. } => Err(Error::TheoremViolation(
            "no invariant mean on the source pushes forward to the given mean".into(),
        )),
        SimplexOutcome::Unbounded { .. } => Err(Error::TheoremViolation("zero objective reported unbounded".into())),
    }
}

/// Returns `R = {s : |F ∩ As⁻¹| ≥ η|F|}` and whether `p(R) ≥ (p(A) − η)/(1 − η)`.
pub fn translate_bound_check(
    s: &FiniteSemigroup,
    p: &MeanVector,
    a: SubsetMask,
    f: SubsetMask,
    eta: &Q,
) -> Result<(SubsetMask, bool)> {
    require_invariant(p, s, "mean")?;
    if f.is_empty() {
        return Err(Error::EmptyF);
    }
    let pa = p.measure(a);
    if *eta <= Q::zero() || *eta >= pa {
        return Err(Error::BadEta);
    }
    let size = q(f.len() as i64);
    let r = s
        .elements()
        .filter(|&x| q(f.intersection(s.right_preimage(a, x)).len() as i64) >= eta * &size);
    let r = SubsetMask::from_indices(s.order(), r)?;
    let bound = (pa - eta) / (Q::one() - eta);
    Ok((r, p.measure(r) >= bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::ratio;
    use crate::semigroup::*;

    fn set(n: usize, xs: &[usize]) -> SubsetMask {
        SubsetMask::from_indices(n, xs.iter().copied()).unwrap()
    }

    #[test]
    fn lim_rows_for_small_examples() {
        // C2: λ_1 swaps, forcing p_0 = p_1
        let lp = build_lim_program(&cyclic_group(2), set(2, &[0]));
        assert!(lp.rows.iter().skip(1).all(|r| r[0] == -r[1].clone()));
        // RZ2: every λ_s is the identity, only the normalisation remains
        assert_eq!(build_lim_program(&right_zero(2), set(2, &[])).rows.len(), 1);
        assert!(!is_left_amenable(&left_zero(2)));
    }

    #[test]
    fn banach_density_examples() {
        assert_eq!(banach_density(&cyclic_group(2), set(2, &[0])).unwrap().0, ratio(1, 2));
        let (v, p) = banach_density(&right_zero(2), set(2, &[0])).unwrap();
        assert_eq!(v, ratio(1, 1));
        assert!(p.is_left_invariant(&right_zero(2)));
        let semi = chain_semilattice(2);
        assert_eq!(banach_density(&semi, set(2, &[1])).unwrap().0, ratio(0, 1));
        assert_eq!(banach_density(&left_zero(2), set(2, &[0])), Err(Error::NotAmenable));
    }

    #[test]
    fn product_means() {
        let c2 = cyclic_group(2);
        let u = MeanVector::uniform(2);
        let r = product_mean(&u, &c2, &u, &c2).unwrap();
        assert_eq!(r, MeanVector::uniform(4));
        let rz = right_zero(2);
        let r = product_mean(&MeanVector::point_mass(2, 0), &rz, &u, &c2).unwrap();
        assert_eq!(r.weights(), &[ratio(1, 2), ratio(1, 2), ratio(0, 1), ratio(0, 1)]);
        let r = product_mean(&u, &c2, &MeanVector::point_mass(1, 0), &trivial()).unwrap();
        assert_eq!(r, u);
        let bad = MeanVector::point_mass(2, 0);
        assert!(matches!(product_mean(&bad, &c2, &u, &c2), Err(Error::NotInvariantInput(_))));
    }

    #[test]
    fn pushforward_and_lift_through_collapse() {
        let s = direct_product(&cyclic_group(2), &right_zero(2)).unwrap();
        let h = collapse_quotient(&s).unwrap();
        let pushed = pushforward_mean(&MeanVector::uniform(4), &h).unwrap();
        assert_eq!(pushed, MeanVector::uniform(2));
        let lifted = lift_mean_feasible(&MeanVector::uniform(2), &h).unwrap();
        assert!(lifted.is_left_invariant(&s));
        assert_eq!(pushforward_mean(&lifted, &h).unwrap(), MeanVector::uniform(2));
        let id = QuotientMap::identity(&cyclic_group(2));
        assert_eq!(lift_mean_feasible(&MeanVector::uniform(2), &id).unwrap(), MeanVector::uniform(2));
        let to_point = QuotientMap::to_trivial(&s);
        let one = MeanVector::point_mass(1, 0);
        assert_eq!(pushforward_mean(&MeanVector::uniform(4), &to_point).unwrap(), one);
        assert!(lift_mean_feasible(&one, &to_point).unwrap().is_left_invariant(&s));
    }

    #[test]
    fn translate_bound_examples() {
        let rz = right_zero(2);
        let p = MeanVector::point_mass(2, 0);
        let (r, holds) = translate_bound_check(&rz, &p, set(2, &[0]), rz.full(), &ratio(1, 2)).unwrap();
        assert_eq!(r, set(2, &[0]));
        assert!(holds);
        let c2 = cyclic_group(2);
        let u = MeanVector::uniform(2);
        let (r, holds) = translate_bound_check(&c2, &u, set(2, &[0]), c2.full(), &ratio(1, 4)).unwrap();
        assert_eq!(r, c2.full());
        assert!(holds);
        let (r, holds) = translate_bound_check(&c2, &u, c2.full(), set(2, &[1]), &ratio(9, 10)).unwrap();
        assert_eq!(r, c2.full());
        assert!(holds);
        assert_eq!(
            translate_bound_check(&c2, &u, set(2, &[0]), c2.full(), &ratio(1, 2)),
            Err(Error::BadEta)
        );
        assert_eq!(
            translate_bound_check(&c2, &u, set(2, &[0]), set(2, &[]), &ratio(1, 4)),
            Err(Error::EmptyF)
        );
    }
}
