use std::fs::File;
use std::io::{BufWriter, Write};

use compactify::asymptotics::{
    self, asym_expected_branches, asym_expected_cdeg_smooth, asym_expected_r_branches, asym_fringe, asym_total_fringe,
    asym_var_cdeg_smooth, asym_var_r_branches, empirical_fluctuation, fluctuation_series, geometric_grid, log4,
    AsymptoticEstimate, ErrorOrder,
};
use compactify::exact::{self, to_f64, FormulaConstants, MarkedMoments, SeriesBuilder};
use compactify::montecarlo::{self, Statistic, GENERATOR};
use compactify::oracle::{self, TreeIdentities, DEFAULT_PATH_BOUND, DEFAULT_TREE_BOUND};
use compactify::verify::{verify_bounded, Bounds, Sweep};
use compactify::{BinaryTree, Error, LatticePath};
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::args::*;
use crate::output::{float_of, Cell, Format, Report};

/// Failure of a command, split by exit status.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::TreeSyntax { .. } | Error::PathSyntax { .. } | Error::BoundExceeded { .. } => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Compute(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

/// A rendered report plus whether every check in it passed.
pub struct Outcome {
    pub report: Report,
    pub passed: bool,
    /// Diagnostics for standard error.
    pub notes: Vec<String>,
    /// Where the report goes instead of standard output.
    pub out: Option<std::path::PathBuf>,
}

impl Outcome {
    fn ok(report: Report) -> Self {
        Outcome { report, passed: true, notes: Vec::new(), out: None }
    }

    pub fn emit(&self, format: Format) -> Result<(), Failure> {
        match &self.out {
            Some(path) => {
                let mut w = BufWriter::new(File::create(path)?);
                self.report.write(format, &mut w)?;
                w.flush()?;
            }
            None => {
                let stdout = std::io::stdout();
                let mut lock = stdout.lock();
                self.report.write(format, &mut lock)?;
            }
        }
        Ok(())
    }
}

type Run = Result<Outcome, Failure>;
type ExactThunk = Box<dyn Fn() -> compactify::Result<BigRational>>;

fn need_r(r: Option<u32>, what: &str) -> Result<u32, Failure> {
    r.ok_or_else(|| Failure::Usage(format!("{what} needs --r")))
}

fn parse_constants(mutate: Option<&str>) -> Result<FormulaConstants, Failure> {
    let constants = FormulaConstants::default();
    let Some(spec) = mutate else {
        return Ok(constants);
    };
    let (name, bit) =
        spec.split_once(':').ok_or_else(|| Failure::Usage(format!("--mutate expects NAME:BIT, got {spec}")))?;
    let bit = bit.parse().map_err(|_| Failure::Usage(format!("bad bit index in {spec}")))?;
    constants.with_bit_flipped(name, bit).map_err(|e| Failure::Usage(e.to_string()))
}

pub fn run(cli: &Cli) -> Run {
    let constants = parse_constants(cli.mutate.as_deref())?;
    match &cli.command {
        Command::Tree { action, tree, steps } => tree_command(*action, tree, *steps),
        Command::Path { action, path, steps } => path_command(*action, path, *steps),
        Command::Exact { statistic, n, r } => exact_command(*statistic, *n, *r, &constants),
        Command::Oracle { statistic, n, bound } => oracle_command(*statistic, *n, *bound, &constants),
        Command::Verify { sweep, nmax, bound } => {
            verify_command(sweep, *nmax, *bound, &constants, cli.mutate.as_deref())
        }
        Command::Asym { expansion, n, r, terms, no_exact } => asym_command(*expansion, *n, *r, *terms, !*no_exact),
        Command::Fluctuation { which, nmin, nmax, terms, points, out } => {
            let mut outcome = fluctuation_command(*which, *nmin, *nmax, *terms, *points)?;
            outcome.out = out.clone();
            Ok(outcome)
        }
        Command::Mc(args) => mc_command(args),
    }
}

fn tree_command(action: TreeAction, text: &str, steps: bool) -> Run {
    let tree: BinaryTree = text.parse()?;
    let report = match action {
        TreeAction::Reduce => {
            let mut report = Report::new("tree reduce", &["step", "tree", "size", "register"]).param("tree", text);
            if steps {
                for (i, t) in tree.reduction_chain().iter().enumerate() {
                    report.row(vec![i.into(), t.to_string().into(), t.size().into(), t.register().into()]);
                }
            } else {
                let reduced = tree.reduce()?;
                report.row(vec![
                    1usize.into(),
                    reduced.to_string().into(),
                    reduced.size().into(),
                    reduced.register().into(),
                ]);
            }
            report
        }
        TreeAction::Register => {
            let mut report = Report::new("tree register", &["tree", "register"]).param("tree", text);
            report.row(vec![tree.to_string().into(), tree.register().into()]);
            report
        }
        TreeAction::Branches => {
            let profile = tree.branch_profile();
            let mut report = Report::new("tree branches", &["r", "branches", "nodes"]).param("tree", text);
            for (r, (&b, &nodes)) in profile.counts.iter().zip(&profile.node_counts).enumerate() {
                report.row(vec![r.into(), b.into(), nodes.into()]);
            }
            report.row(vec!["total".into(), profile.total().into(), (tree.node_count() as u64).into()]);
            report
        }
    };
    Ok(Outcome::ok(report))
}

fn path_command(action: PathAction, text: &str, steps: bool) -> Run {
    let path: LatticePath = text.parse()?;
    let report = match action {
        PathAction::Reduce => {
            let mut report = Report::new("path reduce", &["step", "path", "length", "normalized"]).param("path", text);
            let chain = if steps { path.reduction_chain()? } else { vec![path.clone(), path.reduce()?] };
            for (i, p) in chain.iter().enumerate() {
                let normalized = if p.len() >= 2 { Cell::from(p.normalize()?.path.to_string()) } else { Cell::Empty };
                report.row(vec![i.into(), p.to_string().into(), p.len().into(), normalized]);
            }
            report
        }
        PathAction::Cdeg => {
            let mut report = Report::new("path cdeg", &["path", "cdeg"]).param("path", text);
            report.row(vec![path.to_string().into(), path.cdeg()?.into()]);
            report
        }
        PathAction::Fringes => {
            let mut report = Report::new("path fringes", &["r", "fringe_size"]).param("path", text);
            let sizes = path.fringe_sizes()?;
            for (r, &s) in sizes.iter().enumerate() {
                report.row(vec![r.into(), s.into()]);
            }
            report.row(vec!["total".into(), sizes.iter().sum::<usize>().into()]);
            report
        }
    };
    Ok(Outcome::ok(report))
}

fn exact_row(report: &mut Report, statistic: &str, n: u64, r: Option<u32>, value: BigRational) {
    let float = float_of(&value);
    report.row(vec![statistic.into(), n.into(), r.into(), value.into(), float.into()]);
}

fn exact_command(statistic: ExactStatistic, n: u64, r: Option<u32>, c: &FormulaConstants) -> Run {
    let name = statistic_name(statistic);
    let mut report = Report::new("exact", &["statistic", "n", "r", "exact", "float"])
        .param("statistic", name.as_str())
        .param("n", n)
        .param("r", r);
    let int = |x: BigInt| BigRational::from_integer(x);
    match statistic {
        ExactStatistic::Catalan => exact_row(&mut report, &name, n, None, int(c.catalan(n)?)),
        ExactStatistic::Touchard => {
            let holds = c.touchard_check(n);
            report = Report::new("exact", &["statistic", "n", "holds"]).param("statistic", name.as_str()).param("n", n);
            report.row(vec![name.as_str().into(), n.into(), holds.into()]);
            let mut outcome = Outcome::ok(report);
            outcome.passed = holds;
            return Ok(outcome);
        }
        ExactStatistic::RBranches => {
            let r = need_r(r, &name)?;
            exact_row(&mut report, &name, n, Some(r), c.expected_r_branches(n, r)?);
        }
        ExactStatistic::RBranchesVariance => {
            let r = need_r(r, &name)?;
            let m = MarkedMoments::r_branches_with(&SeriesBuilder::new(*c), r, n as usize)?;
            exact_row(&mut report, &name, n, Some(r), m.variance(n)?);
        }
        ExactStatistic::TotalBranches => exact_row(&mut report, &name, n, None, c.expected_branches(n)?),
        ExactStatistic::CdegCount => {
            let r = need_r(r, &name)?;
            exact_row(&mut report, &name, n, Some(r), int(c.count_paths_cdeg(n, r)?));
        }
        ExactStatistic::CdegProbability => {
            let r = need_r(r, &name)?;
            exact_row(&mut report, &name, n, Some(r), c.prob_cdeg(n, r)?);
        }
        ExactStatistic::CdegDistribution => {
            for (r, p) in c.cdeg_distribution(n)?.into_iter().enumerate() {
                exact_row(&mut report, &name, n, Some(r as u32), p);
            }
        }
        ExactStatistic::CdegMean => exact_row(&mut report, &name, n, None, c.expected_cdeg(n)?),
        ExactStatistic::CdegMeanClosed => exact_row(&mut report, &name, n, None, c.expected_cdeg_closed(n)?),
        ExactStatistic::CdegVariance => exact_row(&mut report, &name, n, None, exact::var_cdeg_exact(n)?),
        ExactStatistic::Fringe => {
            let r = need_r(r, &name)?;
            exact_row(&mut report, &name, n, Some(r), c.expected_fringe(n, r)?);
        }
        ExactStatistic::FringeVariance => {
            let r = need_r(r, &name)?;
            let m = MarkedMoments::fringe_with(&SeriesBuilder::new(*c), r, n as usize)?;
            exact_row(&mut report, &name, n, Some(r), m.variance(n)?);
        }
        ExactStatistic::TotalFringe => exact_row(&mut report, &name, n, None, c.expected_total_fringe(n)?),
    }
    Ok(Outcome::ok(report))
}

fn statistic_name<T: clap::ValueEnum>(value: T) -> String {
    value.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
}

fn bounds_from(bound: BoundArgs) -> Bounds {
    match bound.unsafe_bound {
        Some(b) => Bounds { trees: b, paths: b },
        None => Bounds::default(),
    }
}

fn oracle_command(statistic: OracleStatistic, n: usize, bound: BoundArgs, c: &FormulaConstants) -> Run {
    let name = statistic_name(statistic);
    let tree_bound = bound.unsafe_bound.unwrap_or(DEFAULT_TREE_BOUND);
    let path_bound = bound.unsafe_bound.unwrap_or(DEFAULT_PATH_BOUND);
    let identities = TreeIdentities { register_drop: c.register_drop, leaf_offset: c.leaf_offset };
    let columns = ["statistic", "n", "r", "count", "mean", "variance"];
    let mut report = Report::new("oracle", &columns).param("statistic", name.as_str()).param("n", n);
    let mut add = |r: Option<usize>, count: Cell, mean: Option<BigRational>, var: Option<BigRational>| {
        report.row(vec![name.as_str().into(), n.into(), r.into(), count, mean.into(), var.into()]);
    };
    match statistic {
        OracleStatistic::Catalan => {
            if n > tree_bound {
                return Err(Error::BoundExceeded { what: "tree size", value: n, bound: tree_bound }.into());
            }
            let count = compactify::tree::enumerate_trees_bounded(n, tree_bound)?.count();
            add(None, count.into(), None, None);
        }
        OracleStatistic::Registers | OracleStatistic::RBranches | OracleStatistic::TotalBranches => {
            let stats = oracle::tree_stats_with(n, tree_bound, identities)?;
            match statistic {
                OracleStatistic::Registers => {
                    for (r, &k) in stats.register_counts.iter().enumerate() {
                        add(Some(r), k.into(), None, None);
                    }
                }
                OracleStatistic::RBranches => {
                    for r in 0..stats.r_branches.len() {
                        add(Some(r), stats.count.into(), Some(stats.mean_r_branches(r)), Some(stats.var_r_branches(r)));
                    }
                }
                _ => add(None, stats.count.into(), Some(stats.mean_total_branches()), Some(stats.var_total_branches())),
            }
        }
        _ => {
            let stats = oracle::path_stats_bounded(n, path_bound)?;
            match statistic {
                OracleStatistic::CdegCounts => {
                    for (r, &k) in stats.cdeg_counts.iter().enumerate() {
                        add(Some(r), k.into(), None, None);
                    }
                }
                OracleStatistic::Cdeg => add(None, stats.count.into(), Some(stats.mean_cdeg()), Some(stats.var_cdeg())),
                OracleStatistic::Fringes => {
                    for r in 0..stats.fringes.len() {
                        add(Some(r), stats.count.into(), Some(stats.mean_fringe(r)), Some(stats.var_fringe(r)));
                    }
                }
                _ => add(None, stats.count.into(), Some(stats.mean_total_fringe()), None),
            }
        }
    }
    Ok(Outcome::ok(report))
}

fn verify_command(sweep: &str, nmax: usize, bound: BoundArgs, c: &FormulaConstants, mutate: Option<&str>) -> Run {
    let sweeps: Vec<Sweep> = if sweep == "all" {
        Sweep::ALL.to_vec()
    } else {
        vec![sweep.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?]
    };
    let bounds = bounds_from(bound);
    let mut report = Report::new("verify", &["sweep", "nmax", "checks", "mismatches", "passed"])
        .param("sweep", sweep)
        .param("nmax", nmax)
        .meta("mutation", mutate);
    let mut passed = true;
    let mut notes = Vec::new();
    for s in sweeps {
        let n = if sweep == "all" { nmax.min(sweep_limit(s, bounds)) } else { nmax };
        if n < nmax {
            notes.push(format!("{s}: capped at n = {n}"));
        }
        let r = verify_bounded(s, n, c, bounds)?;
        passed &= r.passed();
        notes.extend(r.mismatches.iter().map(|m| format!("{s}: {m}")));
        report.row(vec![s.name().into(), r.nmax.into(), r.checks.into(), r.mismatch_count.into(), r.passed().into()]);
    }
    Ok(Outcome { report, passed, notes, out: None })
}

fn sweep_limit(s: Sweep, bounds: Bounds) -> usize {
    match s {
        Sweep::Catalan | Sweep::RegisterReduction | Sweep::RBranches | Sweep::BranchIdentity | Sweep::TotalBranches => {
            bounds.trees
        }
        Sweep::Touchard => usize::MAX,
        _ => bounds.paths,
    }
}

fn error_name(e: ErrorOrder) -> String {
    match e {
        ErrorOrder::Exact => "exact".into(),
        ErrorOrder::Power(a) => format!("O(n^{a})"),
        ErrorOrder::LogOverN => "O(log n / n)".into(),
        ErrorOrder::InverseLog => "O(1 / log n)".into(),
        ErrorOrder::Exponential { degree, theta } => format!("O(n^{degree} theta^-n), theta = {theta}"),
        ErrorOrder::Fluctuation(a) => format!("periodic term omitted + O(n^{a})"),
        ErrorOrder::Unspecified => "unspecified".into(),
    }
}

fn asym_command(expansion: Expansion, n: u64, r: Option<u32>, terms: usize, with_exact: bool) -> Run {
    let name = statistic_name(expansion);
    let needs_r = matches!(
        expansion,
        Expansion::RBranches | Expansion::RBranchesVariance | Expansion::Fringe | Expansion::FringeVariance
    );
    let r = if needs_r { Some(need_r(r, &name)?) } else { None };
    let rr = r.unwrap_or(0);
    let (estimate, exact): (AsymptoticEstimate, Option<ExactThunk>) = match expansion {
        Expansion::RBranches => {
            (asym_expected_r_branches(n, rr)?, Some(Box::new(move || exact::expected_r_branches(n, rr))))
        }
        Expansion::RBranchesVariance => {
            (asym_var_r_branches(n, rr)?, Some(Box::new(move || exact::var_r_branches_exact(n, rr))))
        }
        Expansion::Branches => (asym_expected_branches(n, terms)?, Some(Box::new(move || exact::expected_branches(n)))),
        Expansion::Cdeg => (asym_expected_cdeg_smooth(n)?, Some(Box::new(move || exact::expected_cdeg(n)))),
        Expansion::CdegVariance => (asym_var_cdeg_smooth(n)?, Some(Box::new(move || exact::var_cdeg_exact(n)))),
        Expansion::Fringe => (asym_fringe(n, rr)?.0, Some(Box::new(move || exact::expected_fringe(n, rr)))),
        Expansion::FringeVariance => (asym_fringe(n, rr)?.1, Some(Box::new(move || exact::var_fringe_exact(n, rr)))),
        Expansion::TotalFringe => {
            (asym_total_fringe(n, terms)?, Some(Box::new(move || exact::expected_total_fringe(n))))
        }
    };
    let exact_value = match exact {
        Some(f) if with_exact => Some(f()?),
        _ => None,
    };
    let exact_float = exact_value.as_ref().map(float_of);
    let residual = exact_float.map(|e| e - estimate.value);
    let mut report =
        Report::new("asym", &["expansion", "n", "r", "asymptotic", "error_order", "exact", "exact_float", "residual"])
            .param("expansion", name.as_str())
            .param("n", n)
            .param("r", r)
            .param("terms", terms);
    report.row(vec![
        name.as_str().into(),
        n.into(),
        r.into(),
        estimate.value.into(),
        error_name(estimate.error).into(),
        exact_value.into(),
        exact_float.into(),
        residual.into(),
    ]);
    Ok(Outcome::ok(report))
}

fn fluctuation_command(which: FluctuationKind, nmin: u64, nmax: u64, terms: usize, points: usize) -> Run {
    if nmin == 0 || nmax < nmin {
        return Err(Failure::Usage("need 1 <= nmin <= nmax".into()));
    }
    let ns: Vec<u64> = if points == 0 { (nmin..=nmax).collect() } else { geometric_grid(nmin, nmax, points) };
    let name = statistic_name(which);
    let series = match which {
        FluctuationKind::Branches => Some(fluctuation_series("branches", terms)?),
        FluctuationKind::TotalFringe => Some(fluctuation_series("total-fringe", terms)?),
        _ => None,
    };
    let f = |x: compactify::Result<BigRational>| x.map(|q| to_f64(&q));
    let pts = match which {
        FluctuationKind::Branches => empirical_fluctuation(
            |n| f(exact::expected_branches(n)),
            |n| Ok(asymptotics::asym_expected_branches_smooth(n)?.value),
            ns,
        )?,
        FluctuationKind::Cdeg => {
            empirical_fluctuation(|n| f(exact::expected_cdeg(n)), |n| Ok(asym_expected_cdeg_smooth(n)?.value), ns)?
        }
        FluctuationKind::CdegVariance => {
            empirical_fluctuation(|n| f(exact::var_cdeg_exact(n)), |n| Ok(asym_var_cdeg_smooth(n)?.value), ns)?
        }
        FluctuationKind::TotalFringe => empirical_fluctuation(
            |n| f(exact::expected_total_fringe(n)),
            |n| Ok(asymptotics::asym_total_fringe_smooth(n)?.value),
            ns,
        )?,
    };
    let mut report = Report::new("fluctuation", &["n", "x", "phase", "empirical", "fourier"])
        .param("which", name.as_str())
        .param("nmin", nmin)
        .param("nmax", nmax)
        .param("terms", terms);
    for p in pts {
        let x = log4(p.n as f64);
        let fourier = series.as_ref().map(|s| s.evaluate(x));
        report.row(vec![p.n.into(), x.into(), p.phase.into(), p.residual.into(), fourier.into()]);
    }
    Ok(Outcome::ok(report))
}

fn mc_command(args: &McArgs) -> Run {
    let name = statistic_name(args.statistic);
    if args.statistic == McStatistic::Normality {
        let r = need_r(args.r, "normality")?;
        let rep = montecarlo::normality_test(r, args.n, args.samples, args.seed)?;
        let mut report = Report::new(
            "mc normality",
            &["r", "n", "samples", "seed", "exact_mean", "exact_variance", "ks", "threshold", "pass"],
        )
        .param("r", r)
        .param("n", args.n)
        .param("samples", args.samples)
        .param("seed", args.seed)
        .meta("generator", GENERATOR);
        report.row(vec![
            r.into(),
            args.n.into(),
            args.samples.into(),
            args.seed.into(),
            rep.exact_mean.into(),
            rep.exact_variance.into(),
            rep.ks.into(),
            rep.threshold.into(),
            rep.pass.into(),
        ]);
        let mut outcome = Outcome::ok(report);
        outcome.passed = rep.pass;
        return Ok(outcome);
    }
    let kind = match args.statistic {
        McStatistic::RBranches => Statistic::RBranches(need_r(args.r, &name)?),
        McStatistic::TotalBranches => Statistic::TotalBranches,
        McStatistic::Cdeg => Statistic::Cdeg,
        McStatistic::Fringe => Statistic::Fringe(need_r(args.r, &name)?),
        McStatistic::TotalFringe => Statistic::TotalFringe,
        McStatistic::Normality => unreachable!("handled above"),
    };
    let n = args.n as u64;
    let summary = montecarlo::sample_statistic(kind, args.n, args.samples, args.seed)?;
    let exact_mean = match kind {
        Statistic::RBranches(r) => exact::expected_r_branches(n, r),
        Statistic::TotalBranches => exact::expected_branches(n),
        Statistic::Cdeg => exact::expected_cdeg(n),
        Statistic::Fringe(r) => exact::expected_fringe(n, r),
        Statistic::TotalFringe => exact::expected_total_fringe(n),
    }
    .ok();
    let mut report =
        Report::new("mc", &["statistic", "n", "samples", "seed", "mean", "variance", "standard_error", "exact_mean"])
            .param("statistic", kind.to_string())
            .param("n", args.n)
            .param("samples", args.samples)
            .param("seed", args.seed)
            .meta("generator", GENERATOR);
    report.row(vec![
        kind.to_string().into(),
        args.n.into(),
        summary.count.into(),
        args.seed.into(),
        summary.mean.into(),
        summary.variance.into(),
        summary.standard_error().into(),
        exact_mean.into(),
    ]);
    Ok(Outcome::ok(report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mutation_flag_parsing() {
        assert_eq!(parse_constants(None).unwrap(), FormulaConstants::default());
        let c = parse_constants(Some("path_base:0")).unwrap();
        assert_eq!(c.path_base, 5);
        assert!(matches!(parse_constants(Some("path_base")), Err(Failure::Usage(_))));
        assert!(matches!(parse_constants(Some("nope:1")), Err(Failure::Usage(_))));
        assert!(matches!(parse_constants(Some("path_base:x")), Err(Failure::Usage(_))));
    }

    #[test]
    fn error_classes() {
        assert!(matches!(Failure::from(Error::PathSyntax { position: 0, found: 'x' }), Failure::Usage(_)));
        assert!(matches!(Failure::from(Error::LeafNotReducible), Failure::Compute(_)));
    }
}
