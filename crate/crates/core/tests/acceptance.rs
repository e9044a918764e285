//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
//!
//! Expected values here come from independent computations in this file
//! (brute-force filters, vertex enumeration) or from closed forms of the
//! worked examples, never from the code under test.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semidense::lp::{build_lim_program, simplex_solve, LinearProgram, SimplexOutcome};
use semidense::ratio::{fmt_ratio, ratio};
use semidense::search::{
    enumerate_semigroups, enumerate_semigroups_par, recheck, run_campaign, Campaign, CampaignParams, CampaignReport,
    Record,
};
use semidense::semigroup::Dedup;
use semidense::truncated::{free_semigroup_example, pfn_defect, pfn_density_a, pfn_max_ratio};
use semidense::SubsetMask;
use std::process::ExitCode;
use std::time::Instant;

type Q = BigRational;
type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn params(order_max: usize, dedup: Dedup) -> CampaignParams {
    CampaignParams {
        order_max,
        dedup,
        ..CampaignParams::default()
    }
}

fn campaigns(list: &[(Campaign, CampaignParams)]) -> Verdict {
    let mut notes = Vec::new();
    let mut failed = Vec::new();
    for (c, p) in list {
        let rep = run_campaign(*c, p).map_err(|e| format!("{c}: {e}"))?;
        notes.push(summary(&rep));
        if !rep.passed() {
            failed.push(
                rep.violations
                    .first()
                    .map(|v| v.to_tsv())
                    .unwrap_or_default(),
            );
        }
    }
    if failed.is_empty() {
        Ok(notes.join("; "))
    } else {
        Err(format!("{}; first violation: {}", notes.join("; "), failed.join(" | ")))
    }
}

fn summary(rep: &CampaignReport) -> String {
    format!(
        "{} dedup={} semigroups={} assertions={} violations={}",
        rep.campaign,
        rep.params.dedup,
        rep.semigroups,
        rep.assertions,
        rep.violations.len()
    )
}

fn c1() -> Verdict {
    // Anti-isomorphism does not preserve SFC, so the iso-only census is run
    // as well; it strictly contains the iso+anti one.
    campaigns(&[
        (Campaign::DensityEquality, params(4, Dedup::IsoAnti)),
        (Campaign::DensityEquality, params(4, Dedup::Iso)),
    ])
}

fn c2() -> Verdict {
    let rep = run_campaign(Campaign::InequalityChain, &params(4, Dedup::Iso)).map_err(|e| e.to_string())?;
    let note = format!("{}, left amenable without SFC: {}", summary(&rep), rep.amenable_non_sfc.len());
    if rep.passed() {
        Ok(note)
    } else {
        Err(note)
    }
}

fn c3() -> Verdict {
    campaigns(&[(Campaign::Tfae, params(4, Dedup::Iso))])
}

fn c4() -> Verdict {
    campaigns(&[
        (Campaign::Cofinality, params(4, Dedup::Iso)),
        (Campaign::RightZero, params(4, Dedup::Iso)),
    ])
}

fn c5() -> Verdict {
    campaigns(&[(Campaign::Thickness, params(4, Dedup::Iso))])
}

fn c6() -> Verdict {
    campaigns(&[
        (Campaign::Quotient, params(4, Dedup::Iso)),
        (Campaign::Lift, params(4, Dedup::Iso)),
    ])
}

fn c7() -> Verdict {
    let p = CampaignParams {
        samples: 256,
        seed: 7,
        ..params(3, Dedup::Iso)
    };
    campaigns(&[(Campaign::Product, p)])
}

fn c8() -> Verdict {
    let p = params(4, Dedup::Iso);
    let rep = run_campaign(Campaign::TranslateBound, &p).map_err(|e| e.to_string())?;
    let note = summary(&rep);
    if rep.passed() && rep.assertions >= 10_000 {
        Ok(note)
    } else {
        Err(note)
    }
}

fn c9() -> Verdict {
    let mut bad = Vec::new();
    for n in 1..=8u32 {
        let (r, _) = pfn_max_ratio(n).map_err(|e| e.to_string())?;
        if r != ratio(1, 2) {
            bad.push(format!("ratio(n={n})={}", fmt_ratio(&r)));
        }
        let defect = pfn_defect(n, 1).map_err(|e| e.to_string())?;
        if defect != ratio(1, n as usize + 1) {
            bad.push(format!("defect(n={n})={}", fmt_ratio(&defect)));
        }
    }
    for m in 2..=5 {
        let t = pfn_density_a(m).map_err(|e| e.to_string())?;
        if !t.d_a.is_zero() || !t.witness_holds {
            bad.push(format!("d(m={m})={}", fmt_ratio(&t.d_a)));
        }
    }
    if bad.is_empty() {
        Ok("ratio 1/2 and defect 1/(n+1) for n=1..8; d=0 for m=2..5".into())
    } else {
        Err(bad.join(", "))
    }
}

fn c10() -> Verdict {
    let mut notes = Vec::new();
    for len in 2..=6 {
        let ex = free_semigroup_example(len, 2).map_err(|e| e.to_string())?;
        if !ex.all_hold() {
            return Err(format!("certificate fails at length {len}: {ex:?}"));
        }
        notes.push(format!("{}:{}", len, ex.words));
    }
    Ok(format!("four certificates hold; words per length {}", notes.join(" ")))
}

// --- LP oracle: basic feasible solutions by Gaussian elimination ---

/// Solves `M x = rhs` for `M` with full column rank; `None` otherwise.
fn solve_full_rank(m: &[Vec<Q>], rhs: &[Q]) -> Option<Vec<Q>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| row.iter().cloned().chain([b.clone()]).collect())
        .collect();
    let mut r = 0;
    for c in 0..cols {
        let piv = (r..a.len()).find(|&i| !a[i][c].is_zero())?;
        a.swap(r, piv);
        let inv = a[r][c].recip();
        for v in a[r].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
        r += 1;
    }
    if a[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    Some((0..cols).map(|c| a[c][cols].clone()).collect())
}

/// Vertices of `{x ≥ 0 : rows·x = rhs}`.
fn vertices(rows: &[Vec<Q>], rhs: &[Q], n: usize) -> Vec<Vec<Q>> {
    let mut out = Vec::new();
    for support in 0u32..(1 << n) {
        let cols: Vec<usize> = (0..n).filter(|&j| support >> j & 1 == 1).collect();
        if cols.len() > rows.len() {
            continue;
        }
        let x = if cols.is_empty() {
            rhs.iter().all(Zero::is_zero).then(Vec::new)
        } else {
            let sub: Vec<Vec<Q>> = rows.iter().map(|r| cols.iter().map(|&j| r[j].clone()).collect()).collect();
            solve_full_rank(&sub, rhs)
        };
        if let Some(x) = x.filter(|x| x.iter().all(|v| !v.is_negative())) {
            let mut full = vec![Q::zero(); n];
            for (&j, v) in cols.iter().zip(x) {
                full[j] = v;
            }
            if !out.contains(&full) {
                out.push(full);
            }
        }
    }
    out
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn feasible(lp: &LinearProgram, x: &[Q]) -> bool {
    x.len() == lp.num_vars
        && x.iter().all(|v| !v.is_negative())
        && lp.rows.iter().zip(&lp.rhs).all(|(r, b)| dot(r, x) == *b)
}

/// Checks one program against the oracle.
fn check_lp(lp: &LinearProgram) -> Result<&'static str, String> {
    let n = lp.num_vars;
    let verts = vertices(&lp.rows, &lp.rhs, n);
    // Extreme rays are the vertices of `{d ≥ 0 : Ad = 0, Σd = 1}`.
    let mut ray_rows = lp.rows.clone();
    ray_rows.push(vec![Q::one(); n]);
    let mut ray_rhs = vec![Q::zero(); lp.rows.len()];
    ray_rhs.push(Q::one());
    let rays = vertices(&ray_rows, &ray_rhs, n);
    let unbounded = !verts.is_empty() && rays.iter().any(|d| dot(&lp.objective, d).is_positive());
    let outcome = simplex_solve(lp).map_err(|e| e.to_string())?;
    match outcome {
        SimplexOutcome::Optimal { value, vertex } => {
            let best = verts.iter().map(|v| dot(&lp.objective, v)).max();
            if unbounded || best.as_ref() != Some(&value) || !feasible(lp, &vertex) || dot(&lp.objective, &vertex) != value {
                return Err(format!("optimal {} vs oracle {:?}\n{}", fmt_ratio(&value), best, lp.to_dump()));
            }
            Ok("optimal")
        }
        SimplexOutcome::Infeasible { farkas, .. } => {
            let aty_ok = (0..n).all(|j| {
                let col: Q = lp.rows.iter().zip(&farkas).map(|(r, y)| &r[j] * y).sum();
                !col.is_negative()
            });
            if !verts.is_empty() || farkas.len() != lp.rows.len() || !aty_ok || !dot(&lp.rhs, &farkas).is_negative() {
                return Err(format!("bad infeasibility claim\n{}", lp.to_dump()));
            }
            Ok("infeasible")
        }
        SimplexOutcome::Unbounded { point, ray } => {
            let zero_rows = lp.rows.iter().all(|r| dot(r, &ray).is_zero());
            if !unbounded
                || !feasible(lp, &point)
                || !zero_rows
                || ray.iter().any(Signed::is_negative)
                || !dot(&lp.objective, &ray).is_positive()
            {
                return Err(format!("bad unboundedness claim\n{}", lp.to_dump()));
            }
            Ok("unbounded")
        }
    }
}

fn random_lp(rng: &mut ChaCha8Rng) -> LinearProgram {
    let n = rng.random_range(1..=5);
    let m = rng.random_range(1..=4);
    let mut lp = LinearProgram::new(n);
    let q = |v: i64| Q::from_integer(BigInt::from(v));
    for _ in 0..m {
        let row = (0..n).map(|_| q(rng.random_range(-3..=3))).collect();
        lp.add_row(row, q(rng.random_range(-4..=4)));
    }
    lp.objective = (0..n).map(|_| q(rng.random_range(-3..=3))).collect();
    lp
}

fn c11() -> Verdict {
    let mut counts = std::collections::BTreeMap::new();
    let mut lim = 0;
    for order in 1..=3 {
        for s in enumerate_semigroups(order, Dedup::None).map_err(|e| e.to_string())? {
            for bits in 0u32..(1 << order) {
                let a = SubsetMask::from_bits(order, bits).map_err(|e| e.to_string())?;
                check_lp(&build_lim_program(&s, a))?;
                lim += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        *counts.entry(check_lp(&random_lp(&mut rng))?).or_insert(0) += 1;
    }
    Ok(format!("{lim} LIM programs; random outcomes {counts:?}"))
}

fn brute_count(n: usize) -> usize {
    let cells = n * n;
    (0..n.pow(cells as u32))
        .filter(|&code| {
            let mut t = vec![0usize; cells];
            let mut c = code;
            for v in t.iter_mut() {
                *v = c % n;
                c /= n;
            }
            (0..n).all(|a| (0..n).all(|b| (0..n).all(|d| t[t[a * n + b] * n + d] == t[a * n + t[b * n + d]])))
        })
        .count()
}

fn c12() -> Verdict {
    let two = enumerate_semigroups(2, Dedup::None).map_err(|e| e.to_string())?.len();
    let three = enumerate_semigroups(3, Dedup::None).map_err(|e| e.to_string())?.len();
    let (b2, b3) = (brute_count(2), brute_count(3));
    if two != 8 || b2 != 8 || three != b3 {
        return Err(format!("order 2: {two} (brute {b2}); order 3: {three} (brute {b3})"));
    }
    for (n, dedup) in [(4, Dedup::None), (4, Dedup::Iso)] {
        let seq = enumerate_semigroups_par(n, dedup, 1).map_err(|e| e.to_string())?;
        let par = enumerate_semigroups_par(n, dedup, 4).map_err(|e| e.to_string())?;
        if seq != par {
            return Err(format!("order {n} {dedup}: jobs 1 and 4 differ"));
        }
    }
    let run = |jobs| {
        let p = CampaignParams { jobs, ..params(4, Dedup::Iso) };
        run_campaign(Campaign::TranslateBound, &p).map(|r| r.to_tsv())
    };
    if run(1).map_err(|e| e.to_string())? != run(4).map_err(|e| e.to_string())? {
        return Err("translate_bound report differs between jobs 1 and 4".into());
    }
    Ok(format!("order 2: {two}; order 3: {three} = brute {b3}; jobs 1 and 4 agree"))
}

fn c13() -> Verdict {
    let rep = run_campaign(Campaign::OpenQDt, &params(4, Dedup::Iso)).map_err(|e| e.to_string())?;
    let mut unreproduced = 0;
    for d in &rep.discoveries {
        let back = Record::from_tsv(&d.to_tsv()).map_err(|e| e.to_string())?;
        if !recheck(&back, rep.params.oracle_bound).map_err(|e| e.to_string())? {
            unreproduced += 1;
        }
    }
    let note = format!(
        "{} discoveries={} unreproduced={}",
        summary(&rep),
        rep.discoveries.len(),
        unreproduced
    );
    if rep.violations.is_empty() && unreproduced == 0 {
        Ok(note)
    } else {
        Err(note)
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        ("density equality", c1),
        ("inequality chain", c2),
        ("equivalent conditions", c3),
        ("cofinality and right zeros", c4),
        ("thickness", c5),
        ("quotient suite", c6),
        ("product law", c7),
        ("translate bound", c8),
        ("union semilattice example", c9),
        ("free semigroup example", c10),
        ("solver oracle", c11),
        ("enumerator checkpoints", c12),
        ("open-question hunts", c13),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = f();
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(note) => println!("criterion {}: PASS {name} [{secs:.1}s] {note}", i + 1),
            Err(note) => {
                failures += 1;
                println!("criterion {}: FAIL {name} [{secs:.1}s] {note}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
