//! Command-line front end: analyze germs and curves, compute Castelnuovo
//! profiles of zero-dimensional schemes, evaluate the numerical criteria
//! for a singularity configuration, and build verified cuspidal curves.
//!
//! Exit codes: 0 success, 1 input error, 2 domain limitation (irrational
//! data or an exceeded search budget), 3 internal inconsistency.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use esfkit::algebra::{parse_poly, MultiPoly, Rat};
use esfkit::castelnuovo::{barkats_reduce, davis_split, SchemeError, SchemeSpec};
use esfkit::cluster::parse_rat;
use esfkit::criteria::{self, CurveSummary};
use esfkit::invariants::{
    catalog_entry, gamma_lower_bound, smooth_intersection_max, CatalogType, GammaBudget,
};
use esfkit::local::{iea_fix_ideal, tjurina_ideal};
use esfkit::resolution::{invariants_from_tree, resolve, ResolveError};
use esfkit::zariski;

#[derive(Parser)]
#[command(name = "esfkit", version, about = "Exact invariants of singular plane curves")]
struct Cli {
    /// Output format: json, csv or text (where supported)
    #[arg(long, global = true, default_value = "json")]
    format: String,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    /// Maximal candidate degree for enumerated auxiliary germs
    #[arg(long, global = true)]
    budget_degree: Option<u32>,
    /// Maximal candidate count for enumerated auxiliary germs
    #[arg(long, global = true)]
    budget_grid: Option<usize>,
    /// Jet-order cap for colength stabilization
    #[arg(long, global = true)]
    jet_cap: Option<u32>,
    /// Seed for randomized constructions
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Resolve a germ or locate the singular points of a curve
    Analyze(AnalyzeArgs),
    /// Castelnuovo function of a zero-dimensional scheme
    Castelnuovo(CastelnuovoArgs),
    /// Evaluate the numerical criteria for a singularity configuration
    Check(CheckArgs),
    /// Build and verify cuspidal curves; report dimension counts
    Zariski(ZariskiArgs),
    /// Gamma invariant of a germ by witness enumeration
    Gamma(GammaArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Local germ to resolve at the base point
    #[arg(long, conflicts_with_all = ["type", "curve"])]
    germ: Option<String>,
    /// Base point "x,y" for the germ (default origin)
    #[arg(long, default_value = "0,0")]
    at: String,
    /// Catalog type name (A5, D4, E6, ord:4)
    #[arg(long = "type")]
    r#type: Option<String>,
    /// Global curve: analyze its whole singular locus
    #[arg(long)]
    curve: Option<String>,
}

#[derive(Args)]
struct CastelnuovoArgs {
    /// Scheme description file (JSON)
    #[arg(long)]
    scheme: std::path::PathBuf,
    /// Also split off the fixed curve at the maximal plateau
    #[arg(long)]
    davis: bool,
    /// Reduce to a non-decomposable subscheme on a curve of this degree
    #[arg(long)]
    barkats: Option<u32>,
}

#[derive(Args)]
struct CheckArgs {
    /// Summary file (JSON) with degree and singularity list
    #[arg(long, conflicts_with_all = ["d"])]
    summary: Option<std::path::PathBuf>,
    /// Degree for an inline summary
    #[arg(long)]
    d: Option<u32>,
    /// Inline singularities "A2:6,ord3:2"
    #[arg(long, default_value = "")]
    types: String,
    /// Criteria selector: all, smoothness, irreducibility, existence, density
    #[arg(long, default_value = "all")]
    criteria: String,
    /// Include the superseded comparison bounds
    #[arg(long)]
    legacy: bool,
    /// Re-evaluate over a whole degree range "lo:hi" (CSV batch studies)
    #[arg(long)]
    d_range: Option<String>,
}

#[derive(Args)]
struct ZariskiArgs {
    /// Build the six-cusp sextic
    #[arg(long)]
    sextic: bool,
    #[arg(short)]
    p: Option<u32>,
    #[arg(short)]
    d: Option<u32>,
    /// Also construct and verify the curve (small degrees only)
    #[arg(long)]
    construct: bool,
}

#[derive(Args)]
struct GammaArgs {
    #[arg(long)]
    germ: String,
    /// Base point "x,y"
    #[arg(long, default_value = "0,0")]
    at: String,
    /// Which local scheme to use: ea (Tjurina) or eafix
    #[arg(long, default_value = "ea")]
    scheme: String,
    /// Tjurina-type codimension for the square upper bound
    #[arg(long)]
    tau_prime: Option<u64>,
    /// Also enumerate smooth-germ intersection maxima
    #[arg(long)]
    smooth: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(payload) => {
            let envelope = json!({
                "tool": "esfkit",
                "version": esfkit::VERSION,
                "config": {
                    "format": cli.format,
                    "seed": cli.seed,
                    "budget_degree": cli.budget_degree,
                    "budget_grid": cli.budget_grid,
                    "jet_cap": cli.jet_cap,
                },
                "result": payload,
            });
            let text = if cli.format == "csv" {
                envelope
                    .pointer("/result/csv")
                    .and_then(|v| v.as_str())
                    .map(|s| s.to_string())
                    .unwrap_or_else(|| envelope.to_string())
            } else {
                serde_json::to_string_pretty(&envelope).unwrap()
            };
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text) {
                        eprintln!("error: cannot write {}: {}", path.display(), e);
                        return ExitCode::from(1);
                    }
                }
                None => {
                    let mut stdout = std::io::stdout();
                    let _ = writeln!(stdout, "{}", text);
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn input(msg: impl Into<String>) -> CliError {
        CliError {
            code: 1,
            message: msg.into(),
        }
    }

    fn domain(msg: impl Into<String>) -> CliError {
        CliError {
            code: 2,
            message: msg.into(),
        }
    }

    fn internal(msg: impl Into<String>) -> CliError {
        CliError {
            code: 3,
            message: msg.into(),
        }
    }
}

fn from_resolve(e: ResolveError) -> CliError {
    match e {
        ResolveError::IrrationalBranchPoint { poly } => CliError::domain(format!(
            "resolution needs an irrational branch point: no rational root of {}. \
             Supply the cluster combinatorics directly as a cluster JSON instead.",
            poly
        )),
        ResolveError::Internal(msg) => CliError::internal(msg),
        ResolveError::Root(e) => CliError::domain(e.to_string()),
        other => CliError::input(other.to_string()),
    }
}

fn from_scheme(e: SchemeError) -> CliError {
    match e {
        SchemeError::Inconsistent(msg) => CliError::internal(msg),
        SchemeError::Unstable => CliError::domain(SchemeError::Unstable.to_string()),
        SchemeError::Local(inner @ esfkit::local::LocalError::NotZeroDimensional { .. }) => {
            CliError::domain(inner.to_string())
        }
        other => CliError::input(other.to_string()),
    }
}

fn parse_point(s: &str) -> Result<(Rat, Rat), CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(CliError::input("point must be given as \"x,y\""));
    }
    Ok((
        parse_rat(parts[0]).map_err(CliError::input)?,
        parse_rat(parts[1]).map_err(CliError::input)?,
    ))
}

fn parse_germ(s: &str) -> Result<MultiPoly, CliError> {
    parse_poly(s).map_err(|e| CliError::input(e.to_string()))
}

fn run(cli: &Cli) -> Result<serde_json::Value, CliError> {
    if let Some(cap) = cli.jet_cap {
        esfkit::local::set_jet_cap(cap);
    }
    match &cli.command {
        Command::Analyze(args) => analyze(cli, args),
        Command::Castelnuovo(args) => castelnuovo(cli, args),
        Command::Check(args) => check(cli, args),
        Command::Zariski(args) => zariski_cmd(cli, args),
        Command::Gamma(args) => gamma(cli, args),
    }
}

fn analyze(_cli: &Cli, args: &AnalyzeArgs) -> Result<serde_json::Value, CliError> {
    if let Some(name) = &args.r#type {
        let t = CatalogType::parse(name)
            .ok_or_else(|| CliError::input(format!("unknown catalog type {}", name)))?;
        let entry = catalog_entry(&t).map_err(|e| CliError::internal(e.to_string()))?;
        return Ok(json!({ "catalog": entry }));
    }
    if let Some(curve) = &args.curve {
        let f = parse_germ(curve)?;
        let locus = zariski::verify_singularities(&f).map_err(|e| match e {
            zariski::ConstructError::Resolve(r) => from_resolve(r),
            zariski::ConstructError::Scheme(s) => from_scheme(s),
            other => CliError::domain(other.to_string()),
        })?;
        return Ok(json!({ "curve": f.to_string(), "singular_locus": locus }));
    }
    let germ_text = args
        .germ
        .as_ref()
        .ok_or_else(|| CliError::input("analyze needs --germ, --type or --curve"))?;
    let f = parse_germ(germ_text)?;
    let at = parse_point(&args.at)?;
    let tree = resolve(&f, &at).map_err(from_resolve)?;
    let record = invariants_from_tree(&tree).map_err(from_resolve)?;
    let label = zariski::classify(&tree, &record);
    Ok(json!({
        "germ": f.to_string(),
        "at": [at.0.to_string(), at.1.to_string()],
        "label": label,
        "record": record,
        "tree": tree.to_json(),
    }))
}

fn castelnuovo(_cli: &Cli, args: &CastelnuovoArgs) -> Result<serde_json::Value, CliError> {
    let text = std::fs::read_to_string(&args.scheme)
        .map_err(|e| CliError::input(format!("cannot read {}: {}", args.scheme.display(), e)))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| CliError::input(e.to_string()))?;
    let scheme = SchemeSpec::from_json(&value).map_err(from_scheme)?;
    let profile = scheme.profile().map_err(from_scheme)?;
    let mut out = json!({
        "degree": scheme.degree(),
        "profile": profile,
        "csv": profile.csv(),
    });
    if args.davis {
        // split at the maximal plateau with a positive value
        let mut d0 = None;
        for e in (profile.a as i64..=(profile.t as i64)).rev() {
            if profile.cx_at(e) == profile.cx_at(e + 1) && profile.cx_at(e) > 0 {
                d0 = Some(e as u32);
                break;
            }
        }
        let d0 = d0.ok_or_else(|| {
            CliError::input("no Castelnuovo plateau: the scheme admits no fixed-curve split")
        })?;
        let rep = davis_split(&scheme, d0).map_err(from_scheme)?;
        if let Some(f) = &rep.falsification {
            return Err(CliError::internal(format!(
                "fixed-curve splitting contradicts the expected profile: {}",
                f
            )));
        }
        out["davis"] = json!({
            "d0": rep.d0,
            "fixed_curve": rep.fixed_curve.to_string(),
            "fixed_degree": rep.fixed_degree,
            "intersection_degree": rep.intersection.degree(),
            "min_formula_holds": rep.min_formula_holds,
        });
    }
    if let Some(d) = args.barkats {
        let rep = barkats_reduce(&scheme, d).map_err(from_scheme)?;
        out["barkats"] = json!({
            "k": rep.k,
            "r0": rep.r0,
            "h1_preserved": rep.h1_preserved,
            "reduced_degree": rep.reduced.degree(),
            "splits": rep.splits.len(),
            "checks": rep.checks,
        });
    }
    Ok(out)
}

fn check(cli: &Cli, args: &CheckArgs) -> Result<serde_json::Value, CliError> {
    let summary = if let Some(path) = &args.summary {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("cannot read {}: {}", path.display(), e)))?;
        let value: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| CliError::input(e.to_string()))?;
        CurveSummary::from_json(&value).map_err(CliError::input)?
    } else {
        let d = args
            .d
            .ok_or_else(|| CliError::input("check needs --summary or --d with --types"))?;
        let mut types: Vec<(&str, u64)> = Vec::new();
        for part in args.types.split(',').filter(|s| !s.is_empty()) {
            let (name, count) = match part.rsplit_once(':') {
                Some((n, c)) if c.parse::<u64>().is_ok() => (n, c.parse().unwrap()),
                _ => (part, 1),
            };
            types.push((name, count));
        }
        CurveSummary::from_types(d, &types).map_err(|e| CliError::input(e.to_string()))?
    };

    if let Some(range) = &args.d_range {
        return check_range(cli, args, &summary, range);
    }

    let mut results = Vec::new();
    let want = |k: &str| args.criteria == "all" || args.criteria == k;
    if want("smoothness") {
        results.push(criteria::check_smoothness_gamma(&summary));
        results.push(criteria::check_smoothness_tau(&summary));
        results.push(criteria::check_smoothness_nodes_cusps(&summary));
        results.push(criteria::check_smoothness_ordinary(&summary));
    }
    if want("irreducibility") {
        results.extend(criteria::check_irreducibility(&summary));
        results.extend(criteria::check_irreducibility_weak(&summary));
        results.push(criteria::check_irreducibility_nodes_cusps(&summary));
        results.extend(criteria::check_irreducibility_ordinary(&summary));
    }
    if want("existence") {
        results.push(criteria::check_existence(&summary));
        results.push(criteria::check_necessary(&summary));
        results.push(criteria::check_necessary_ordinary(&summary));
        results.push(criteria::check_nori(&summary));
    }
    if want("density") {
        results.extend(criteria::check_density_conditions(&summary));
    }
    if args.legacy {
        results.push(criteria::check_legacy_mu(&summary));
        results.push(criteria::check_legacy_alpha(&summary));
    }
    let csv = {
        let mut s = String::from("criterion,verdict,lhs,rhs\n");
        for r in &results {
            s.push_str(&format!(
                "{},{:?},{},{}\n",
                r.id,
                r.verdict,
                r.lhs.as_deref().unwrap_or(""),
                r.rhs.as_deref().unwrap_or("")
            ));
        }
        s
    };
    Ok(json!({
        "d": summary.d,
        "singularities": summary.entries,
        "results": results,
        "expected_dimension": {
            "topological": criteria::expected_dimension(&summary, criteria::SchemeKind::Es),
            "fixed_position": criteria::expected_dimension(&summary, criteria::SchemeKind::EsFix),
            "singularity_scheme": criteria::expected_dimension(&summary, criteria::SchemeKind::Sing),
        },
        "csv": csv,
    }))
}

/// Evaluate the selected criteria for every degree in a range; the CSV
/// is one verdict matrix row per (degree, criterion).
fn check_range(
    _cli: &Cli,
    args: &CheckArgs,
    base: &CurveSummary,
    range: &str,
) -> Result<serde_json::Value, CliError> {
    let (lo, hi) = range
        .split_once(':')
        .and_then(|(a, b)| Some((a.parse::<u32>().ok()?, b.parse::<u32>().ok()?)))
        .ok_or_else(|| CliError::input("d-range must be \"lo:hi\""))?;
    if lo > hi || hi - lo > 500 {
        return Err(CliError::input("empty or oversized degree range"));
    }
    let mut csv = String::from("d,criterion,verdict,lhs,rhs\n");
    let mut rows = Vec::new();
    for d in lo..=hi {
        let summary = CurveSummary {
            d,
            entries: base.entries.clone(),
        };
        let report = criteria::check_all(&summary);
        for r in &report.results {
            if args.criteria != "all" && !r.id.starts_with(args.criteria.as_str()) {
                continue;
            }
            csv.push_str(&format!(
                "{},{},{:?},{},{}\n",
                d,
                r.id,
                r.verdict,
                r.lhs.as_deref().unwrap_or(""),
                r.rhs.as_deref().unwrap_or("")
            ));
        }
        rows.push(serde_json::json!({ "d": d, "results": report.results }));
    }
    Ok(serde_json::json!({ "range": [lo, hi], "rows": rows, "csv": csv }))
}

fn zariski_cmd(cli: &Cli, args: &ZariskiArgs) -> Result<serde_json::Value, CliError> {
    if args.sextic {
        let s = zariski::zariski_sextic(cli.seed).map_err(|e| CliError::domain(e.to_string()))?;
        return Ok(json!({ "sextic": s }));
    }
    let (p, d) = match (args.p, args.d) {
        (Some(p), Some(d)) => (p, d),
        _ => return Err(CliError::input("zariski needs --sextic or both -p and -d")),
    };
    let dims = zariski::prop_dimensions(p, d).map_err(|e| match e {
        zariski::ConstructError::BadParameters(m) => CliError::input(m),
        other => CliError::internal(other.to_string()),
    })?;
    let mut out = json!({ "dimensions": dims });
    if args.construct {
        let inst = zariski::zariski_curve(p, d, cli.seed).map_err(|e| match e {
            zariski::ConstructError::BadParameters(m) => CliError::input(m),
            zariski::ConstructError::Budget(m) => CliError::domain(m),
            other => CliError::domain(other.to_string()),
        })?;
        out["instance"] = serde_json::to_value(&inst).unwrap();
    }
    Ok(out)
}

fn gamma(cli: &Cli, args: &GammaArgs) -> Result<serde_json::Value, CliError> {
    let f = parse_germ(&args.germ)?;
    let at = parse_point(&args.at)?;
    let ideal = match args.scheme.as_str() {
        "ea" => tjurina_ideal(&f, &at),
        "eafix" => iea_fix_ideal(&f, &at),
        other => return Err(CliError::input(format!("unknown scheme model {}", other))),
    }
    .map_err(|e| CliError::input(e.to_string()))?;

    // determinacy and multiplicity feed the default budget
    let tree = resolve(&f, &at).map_err(from_resolve)?;
    let record = invariants_from_tree(&tree).map_err(from_resolve)?;
    let tau_prime = args.tau_prime.or_else(|| {
        zariski::classify(&tree, &record).and_then(|label| {
            CatalogType::parse(&label)
                .and_then(|t| catalog_entry(&t).ok())
                .map(|e| e.tau_es)
        })
    });
    let mut budget = GammaBudget::for_germ(record.nu_s, record.multiplicity);
    if let Some(b) = cli.budget_degree {
        budget.max_degree = b;
    }
    if let Some(g) = cli.budget_grid {
        budget.max_candidates = g;
    }
    let report = gamma_lower_bound(&f, &ideal, tau_prime, &budget)
        .map_err(|e| CliError::domain(e.to_string()))?;
    let mut out = json!({
        "germ": f.to_string(),
        "scheme": args.scheme,
        "budget": budget,
        "gamma": report,
    });
    if args.smooth {
        // the density conditions use the position-fixing scheme here
        let fix = iea_fix_ideal(&f, &at).map_err(|e| CliError::input(e.to_string()))?;
        let rep = smooth_intersection_max(&fix, record.nu_s as u32 + 1, Some(record.nu_s))
            .map_err(|e| CliError::domain(e.to_string()))?;
        out["smooth_intersection"] = serde_json::to_value(&rep).unwrap();
    }
    Ok(out)
}
