//! Named small semigroups used by tests, the sampler and the examples.

use super::FiniteSemigroup;

fn build(order: usize, f: impl Fn(usize, usize) -> usize) -> FiniteSemigroup {
    FiniteSemigroup::from_fn(order, f).expect("builder produced an invalid table")
}

pub fn trivial() -> FiniteSemigroup {
    build(1, |_, _| 0)
}

/// `Z_n` under addition.
pub fn cyclic_group(n: usize) -> FiniteSemigroup {
    build(n, |i, j| (i + j) % n)
}

/// `xy = x`.
pub fn left_zero(n: usize) -> FiniteSemigroup {
    build(n, |i, _| i)
}

/// `xy = y`.
pub fn right_zero(n: usize) -> FiniteSemigroup {
    build(n, |_, j| j)
}

/// The chain `0 < 1 < .. < n-1` under `min`; `0` is absorbing.
pub fn chain_semilattice(n: usize) -> FiniteSemigroup {
    build(n, |i, j| i.min(j))
}

/// `I × J` with `(i,j)(k,l) = (i,l)`; element `(i,j)` has index `i·cols + j`.
pub fn rectangular_band(rows: usize, cols: usize) -> FiniteSemigroup {
    build(rows * cols, |x, y| (x / cols) * cols + y % cols)
}

/// The monogenic semigroup `⟨a | a^(index+period) = a^index⟩`, elements
/// `a^1 .. a^(index+period-1)` at indices `0 ..`.
pub fn monogenic(index: usize, period: usize) -> FiniteSemigroup {
    assert!(index >= 1 && period >= 1);
    let order = index + period - 1;
    let reduce = |e: usize| {
        if e < index + period {
            e
        } else {
            index + (e - index) % period
        }
    };
    build(order, |i, j| reduce(i + 1 + j + 1) - 1)
}

/// Adjoins a new identity element at index `n`.
pub fn adjoin_identity(s: &FiniteSemigroup) -> FiniteSemigroup {
    let n = s.order();
    build(n + 1, |i, j| match (i == n, j == n) {
        (true, _) => j,
        (_, true) => i,
        _ => s.mul(i, j),
    })
}

/// Adjoins a new zero element at index `n`.
pub fn adjoin_zero(s: &FiniteSemigroup) -> FiniteSemigroup {
    let n = s.order();
    build(n + 1, |i, j| if i == n || j == n { n } else { s.mul(i, j) })
}

/// Nonempty subsets of `{1, .., m}` under union. Element `k` is the subset
/// whose bit pattern is `k + 1` (bit `i` stands for the number `i + 1`).
pub fn union_semilattice(m: usize) -> FiniteSemigroup {
    let order = (1usize << m) - 1;
    let s = build(order, |i, j| ((i + 1) | (j + 1)) - 1);
    let labels = (0..order)
        .map(|k| {
            let items: Vec<String> = (0..m)
                .filter(|b| (k + 1) >> b & 1 == 1)
                .map(|b| (b + 1).to_string())
                .collect();
            format!("{{{}}}", items.join(","))
        })
        .collect();
    s.with_labels(labels).expect("label count matches")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monogenic_shapes() {
        // index 1, period n is the cyclic group of order n (shifted labels)
        let g = monogenic(1, 3);
        assert_eq!(g.order(), 3);
        assert_eq!(g.mul(2, 0), 0);
        let nil = monogenic(3, 1);
        assert_eq!(nil.order(), 3);
        assert_eq!(nil.mul(0, 0), 1);
        assert_eq!(nil.mul(0, 1), 2);
        assert_eq!(nil.mul(1, 1), 2);
    }

    #[test]
    fn union_semilattice_order() {
        let s = union_semilattice(3);
        assert_eq!(s.order(), 7);
        assert_eq!(s.mul(0, 1), 2);
        assert_eq!(s.label(6), "{1,2,3}");
    }

    #[test]
    fn adjoined_elements() {
        let s = adjoin_identity(&left_zero(2));
        assert_eq!(s.mul(2, 1), 1);
        let z = adjoin_zero(&cyclic_group(2));
        assert_eq!(z.mul(1, 2), 2);
    }
}
