use crate::output::Out;
use crate::{Cli, Command, ExampleKind, FgName, Format, Predicate};
use semidense::densities::{
    delta_set, density_report, invariant_core, piecewise_syndetic, translation_density_oracle,
};
use semidense::lp::{build_lim_program, LimSolver};
use semidense::ratio::{fmt_ratio, ratio};
use semidense::search::{recheck, run_campaign, Campaign, CampaignParams, CampaignReport, Record};
use semidense::semigroup::{
    classify, collapse_quotient, direct_product, is_left_cancellative, is_right_cancellative, is_thick, kernel,
    minimal_left_ideals, Dedup,
};
use semidense::sgt::{parse_sgt, parse_subset, write_sgt};
use semidense::truncated::{
    density_along_net, free_semigroup_example, pfn_defect, pfn_density_a, pfn_folner_set, pfn_max_ratio,
    FgSemigroup, FreeSemigroup, NatAdd, PfN,
};
use semidense::{Error, FiniteSemigroup, SubsetMask, MASK_WIDTH};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_INPUT: u8 = 2;
const EXIT_VIOLATION: u8 = 3;

/// Failure of a command: bad input (exit 2) or a contradicted theorem (exit 3).
enum Failure {
    Input(String),
    Violation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::TheoremViolation(msg) => Failure::Violation(msg),
            other => Failure::Input(other.to_string()),
        }
    }
}

type CmdResult = Result<(), Failure>;

/// Global settings shared by every command.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub oracle_bound: usize,
    pub mask_width: usize,
    pub jobs: usize,
    pub seed: u64,
    pub format: Format,
}

impl RunConfig {
    fn from_cli(cli: &Cli) -> Result<Self, Failure> {
        let cfg = RunConfig {
            oracle_bound: cli.oracle_bound,
            mask_width: MASK_WIDTH,
            jobs: cli.jobs,
            seed: cli.seed,
            format: cli.format,
        };
        if cfg.jobs == 0 {
            return Err(Failure::Input("--jobs must be at least 1".into()));
        }
        if cfg.oracle_bound > cfg.mask_width {
            return Err(Failure::Input(format!(
                "--oracle-bound {} exceeds the mask width {}",
                cfg.oracle_bound, cfg.mask_width
            )));
        }
        Ok(cfg)
    }
}

pub fn run(cli: Cli) -> ExitCode {
    let result = RunConfig::from_cli(&cli).and_then(|cfg| dispatch(&cli.command, &cfg));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Violation(msg)) => {
            eprintln!("VIOLATION: {msg}");
            ExitCode::from(EXIT_VIOLATION)
        }
    }
}

fn dispatch(command: &Command, cfg: &RunConfig) -> CmdResult {
    match command {
        Command::Analyze { table, subsets } => analyze(cfg, table, subsets),
        Command::Campaign {
            name,
            order_min,
            order_max,
            samples,
            semigroup_samples,
            dedup,
            artifacts,
        } => {
            let campaign: Campaign = name.parse()?;
            let dedup: Dedup = dedup.parse().map_err(Failure::Input)?;
            let params = CampaignParams {
                order_min: *order_min,
                order_max: *order_max,
                seed: cfg.seed,
                samples: *samples,
                semigroup_samples: *semigroup_samples,
                jobs: cfg.jobs,
                dedup,
                oracle_bound: cfg.oracle_bound,
            };
            campaign_cmd(cfg, campaign, &params, artifacts)
        }
        Command::Product { left, right, a, b, out } => product(cfg, left, right, a.as_deref(), b.as_deref(), out.as_deref()),
        Command::Quotient { table, subsets, out } => quotient(cfg, table, subsets, out.as_deref()),
        Command::Example { which } => match which {
            ExampleKind::Pfn { n_max } => example_pfn(cfg, *n_max),
            ExampleKind::Free { len } => example_free(cfg, *len),
        },
        Command::Net {
            fg,
            subset,
            n_max,
            shift_len,
        } => net(cfg, *fg, *subset, *n_max, *shift_len),
        Command::LpDump { table, subset } => {
            let s = load(table)?;
            let a = match subset {
                Some(spec) => parse_subset(s.order(), spec)?,
                None => SubsetMask::empty(s.order()),
            };
            print!("{}", build_lim_program(&s, a).to_dump());
            Ok(())
        }
        Command::Recheck { record } => recheck_cmd(cfg, record),
    }
}

fn load(path: &Path) -> Result<FiniteSemigroup, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(parse_sgt(&text)?)
}

fn sets(list: &[SubsetMask]) -> String {
    list.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" ")
}

fn analyze(cfg: &RunConfig, path: &Path, specs: &[String]) -> CmdResult {
    let s = load(path)?;
    let n = s.order();
    let subsets = specs
        .iter()
        .map(|spec| parse_subset(n, spec))
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = Out::new(cfg.format);
    let flags = classify(&s).names();
    let core = invariant_core(&s);
    let sfc = !core.core.is_empty();
    let lim = LimSolver::new(&s);
    out.kv("order", n);
    out.kv("flags", if flags.is_empty() { "-".to_string() } else { flags.join(",") });
    out.kv("sfc", sfc);
    out.kv("left_amenable", lim.is_amenable());
    out.kv("kernel", kernel(&s));
    out.kv("minimal_left_ideals", sets(&minimal_left_ideals(&s)));
    match delta_set(&s) {
        Ok(delta) => out.kv("delta", delta),
        Err(_) => out.kv("delta", "-"),
    }
    out.kv("atoms", sets(&core.atoms));
    let mut disagreements = Vec::new();
    for a in subsets {
        out.kv("subset", a);
        if sfc {
            let report = density_report(&s, a)?;
            out.tsv_block(&report.to_tsv());
            let mean: Vec<String> = report.witness_mean.weights().iter().map(fmt_ratio).collect();
            out.kv("witness_mean", mean.join(","));
            let mut agree = report.agree();
            if n <= cfg.oracle_bound {
                let dt = translation_density_oracle(&s, a, cfg.oracle_bound)?;
                agree &= dt == report.d_t;
                out.kv("d_t_oracle", fmt_ratio(&dt));
            }
            if !agree {
                disagreements.push(a);
            }
        } else {
            out.kv("notice", "no SFC: d is undefined, d_star needs an invariant mean");
            if lim.is_amenable() {
                out.kv("d_star", fmt_ratio(&lim.banach_density(a)?.0));
            }
            if n <= cfg.oracle_bound {
                out.kv("d_t_oracle", fmt_ratio(&translation_density_oracle(&s, a, cfg.oracle_bound)?));
            }
        }
        out.kv("thick", is_thick(&s, a));
        out.kv("piecewise_syndetic", piecewise_syndetic(&s, a));
    }
    out.print();
    if disagreements.is_empty() {
        Ok(())
    } else {
        Err(Failure::Violation(format!("densities disagree on {}", sets(&disagreements))))
    }
}

fn campaign_cmd(cfg: &RunConfig, campaign: Campaign, params: &CampaignParams, artifacts: &Path) -> CmdResult {
    let report = run_campaign(campaign, params)?;
    let mut out = Out::new(cfg.format);
    out.tsv_block(&report.to_tsv());
    if !report.violations.is_empty() || !report.discoveries.is_empty() {
        for path in dump_artifacts(&report, artifacts)? {
            out.kv("artifact", path.display());
        }
    }
    out.print();
    if !report.discoveries.is_empty() {
        eprintln!("DISCOVERY: {} record(s) in {}", report.discoveries.len(), campaign);
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Violation(format!(
            "{} violation(s) in {}",
            report.violations.len(),
            campaign
        )))
    }
}

/// Writes `<kind>-NNNN.sgt`, `.record` and `.repro` per record; returns the record paths.
fn dump_artifacts(report: &CampaignReport, dir: &Path) -> Result<Vec<PathBuf>, Failure> {
    let io = |e: std::io::Error| Failure::Input(format!("{}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(io)?;
    let mut written = Vec::new();
    let groups = [("violation", &report.violations), ("discovery", &report.discoveries)];
    for (kind, records) in groups {
        for (k, rec) in records.iter().enumerate() {
            let stem = format!("{}-{kind}-{:04}", report.campaign, k + 1);
            for (j, s) in rec.semigroups.iter().enumerate() {
                let suffix = if j == 0 { String::new() } else { format!("-{j}") };
                fs::write(dir.join(format!("{stem}{suffix}.sgt")), write_sgt(s)).map_err(io)?;
            }
            let record = dir.join(format!("{stem}.record"));
            fs::write(&record, format!("{}\n", rec.to_tsv())).map_err(io)?;
            let repro = format!(
                "semidense --oracle-bound {} recheck {}\n",
                report.params.oracle_bound,
                record.display()
            );
            fs::write(dir.join(format!("{stem}.repro")), repro).map_err(io)?;
            written.push(record);
        }
    }
    Ok(written)
}

fn recheck_cmd(cfg: &RunConfig, path: &Path) -> CmdResult {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let line = text
        .lines()
        .find(|l| !l.trim().is_empty())
        .ok_or_else(|| Failure::Input("empty record file".into()))?;
    let record = Record::from_tsv(line)?;
    let reproduced = recheck(&record, cfg.oracle_bound)?;
    let mut out = Out::new(cfg.format);
    out.kv("assertion", &record.assertion);
    out.kv("expected", &record.expected);
    out.kv("actual", &record.actual);
    out.kv("reproduced", reproduced);
    out.print();
    Ok(())
}

fn product(
    cfg: &RunConfig,
    left: &Path,
    right: &Path,
    a: Option<&str>,
    b: Option<&str>,
    out_path: Option<&Path>,
) -> CmdResult {
    let (s, t) = (load(left)?, load(right)?);
    let st = direct_product(&s, &t)?;
    let mut out = Out::new(cfg.format);
    out.kv("order", st.order());
    if let Some(path) = out_path {
        fs::write(path, write_sgt(&st)).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        out.kv("written", path.display());
    } else {
        out.line(["table"]);
        for row in st.rows() {
            out.line(row);
        }
    }
    let mut violation = None;
    if let (Some(a), Some(b)) = (a, b) {
        let a = parse_subset(s.order(), a)?;
        let b = parse_subset(t.order(), b)?;
        let (ls, lt, lst) = (LimSolver::new(&s), LimSolver::new(&t), LimSolver::new(&st));
        if ls.is_amenable() && lt.is_amenable() {
            let m = t.order();
            let ab = SubsetMask::from_indices(st.order(), a.iter().flat_map(|i| b.iter().map(move |j| i * m + j)))?;
            let lhs = lst.banach_density(ab)?.0;
            let rhs = ls.banach_density(a)?.0 * lt.banach_density(b)?.0;
            out.kv("d_star_product", fmt_ratio(&lhs));
            out.kv("d_star_a_times_d_star_b", fmt_ratio(&rhs));
            if lhs != rhs {
                violation = Some(format!("d*(A×B) = {} but d*(A)d*(B) = {}", fmt_ratio(&lhs), fmt_ratio(&rhs)));
            }
        } else {
            out.kv("notice", "a factor is not left amenable; product law not checked");
        }
    }
    out.print();
    violation.map_or(Ok(()), |v| Err(Failure::Violation(v)))
}

fn quotient(cfg: &RunConfig, path: &Path, specs: &[String], out_path: Option<&Path>) -> CmdResult {
    let s = load(path)?;
    let h = collapse_quotient(&s)?;
    let t = h.target();
    let source_sfc = !invariant_core(&s).core.is_empty();
    let cancellative = is_left_cancellative(t) && is_right_cancellative(t);
    let mut out = Out::new(cfg.format);
    out.kv("target_order", t.order());
    out.kv(
        "class_of",
        h.class_of().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","),
    );
    out.kv("cancellative", cancellative);
    if let Some(p) = out_path {
        fs::write(p, write_sgt(t)).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
        out.kv("written", p.display());
    } else {
        out.line(["table"]);
        for row in t.rows() {
            out.line(row);
        }
    }
    let mut violation = None;
    if !source_sfc {
        out.kv(
            "warning",
            "NonSFCQuotient: source lacks SFC, so the quotient need not be cancellative",
        );
    } else if !cancellative {
        violation = Some("quotient of an SFC semigroup is not cancellative".to_string());
    }
    let (ls, lt) = (LimSolver::new(&s), LimSolver::new(t));
    let target_core = invariant_core(t);
    for spec in specs {
        let b = parse_subset(t.order(), spec)?;
        out.kv("subset", b);
        if !(ls.is_amenable() && lt.is_amenable()) {
            out.kv("notice", "not left amenable; densities skipped");
            continue;
        }
        let pre = ls.banach_density(h.preimage(b))?.0;
        let tgt = lt.banach_density(b)?.0;
        out.kv("d_star_preimage", fmt_ratio(&pre));
        out.kv("d_star_target", fmt_ratio(&tgt));
        if let Ok((d, _)) = target_core.folner_density(b) {
            out.kv("d_target", fmt_ratio(&d));
        }
        if source_sfc && pre != tgt {
            violation = Some(format!("d*(B) = {} but d*(h⁻¹[B]) = {}", fmt_ratio(&tgt), fmt_ratio(&pre)));
        }
    }
    out.print();
    violation.map_or(Ok(()), |v| Err(Failure::Violation(v)))
}

fn example_pfn(cfg: &RunConfig, n_max: u32) -> CmdResult {
    if n_max == 0 || n_max > 12 {
        return Err(Failure::Input("--n-max must be between 1 and 12".into()));
    }
    let mut out = Out::new(cfg.format);
    let mut bad = Vec::new();
    out.line(["n", "ratio", "defect"]);
    for n in 1..=n_max {
        let (r, _) = pfn_max_ratio(n)?;
        let defect = pfn_defect(n, 1)?;
        if r != ratio(1, 2) || defect != ratio(1, n as usize + 1) {
            bad.push(format!("n={n}"));
        }
        out.line([n.to_string(), fmt_ratio(&r), fmt_ratio(&defect)]);
    }
    out.line(["m", "d_no_one", "d_has_one"]);
    for m in 2..=5 {
        let t = pfn_density_a(m)?;
        if t.d_a != ratio(0, 1) || t.d_complement != ratio(1, 1) || !t.witness_holds {
            bad.push(format!("m={m}"));
        }
        out.line([m.to_string(), fmt_ratio(&t.d_a), fmt_ratio(&t.d_complement)]);
    }
    out.print();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Failure::Violation(format!("unexpected values at {}", bad.join(","))))
    }
}

fn example_free(cfg: &RunConfig, len: usize) -> CmdResult {
    let ex = free_semigroup_example(len, 2)?;
    let mut out = Out::new(cfg.format);
    out.kv("len", ex.len);
    out.kv("words", ex.words);
    out.kv("a_misses_b", ex.a_misses_b);
    out.kv("b_misses_a", ex.b_misses_a);
    out.kv("union_full", ex.union_full);
    out.kv("shift_full", ex.shift_full);
    out.print();
    if ex.all_hold() {
        Ok(())
    } else {
        Err(Failure::Violation("a certificate failed".into()))
    }
}

fn net(cfg: &RunConfig, fg: FgName, subset: Predicate, n_max: usize, shift_len: usize) -> CmdResult {
    if n_max == 0 {
        return Err(Failure::Input("--n-max must be at least 1".into()));
    }
    let pred: Box<dyn Fn(u64) -> bool> = match (fg, subset) {
        (_, Predicate::All) => Box::new(|_| true),
        (FgName::Nat, Predicate::Evens) => Box::new(|x| x % 2 == 0),
        (FgName::Nat, Predicate::Odds) => Box::new(|x| x % 2 == 1),
        (FgName::Free, Predicate::StartsA) => Box::new(|w| FreeSemigroup::first_letter(w) == 0),
        (FgName::Free, Predicate::StartsB) => Box::new(|w| FreeSemigroup::first_letter(w) == 1),
        (FgName::Pfn, Predicate::NoOne) => Box::new(|x| x & 1 == 0),
        (FgName::Pfn, Predicate::HasOne) => Box::new(|x| x & 1 == 1),
        (fg, p) => return Err(Failure::Input(format!("subset {p:?} does not apply to {fg:?}"))),
    };
    let points = match fg {
        FgName::Nat => {
            let shifts: Vec<u64> = NatAdd.ball(shift_len).into_iter().collect();
            density_along_net(&NatAdd, &pred, &|n| Ok((1..=n as u64).collect()), 1..=n_max, &shifts)?
        }
        FgName::Free => {
            if n_max + shift_len > 62 || n_max > 16 {
                return Err(Failure::Input("words too long: keep --n-max ≤ 16 and --n-max + --shift-len ≤ 62".into()));
            }
            let fs = FreeSemigroup { alphabet: 2 };
            let shifts: Vec<u64> = fs.ball(shift_len).into_iter().collect();
            density_along_net(&fs, &pred, &|n| Ok(fs.ball(n).into_iter().collect()), 1..=n_max, &shifts)?
        }
        FgName::Pfn => {
            if n_max > 31 {
                return Err(Failure::Input("--n-max must be at most 31 for pfn".into()));
            }
            let pf = PfN {
                generators: 2 * n_max as u32,
            };
            let shifts: Vec<u64> = pf.ball(shift_len.min(3)).into_iter().collect();
            density_along_net(&pf, &pred, &|n| pfn_folner_set(n as u32), 1..=n_max, &shifts)?
        }
    };
    let mut out = Out::new(cfg.format);
    out.line(["n", "ratio", "defect"]);
    for p in points {
        out.line([p.n.to_string(), fmt_ratio(&p.ratio), fmt_ratio(&p.defect)]);
    }
    out.print();
    Ok(())
}
