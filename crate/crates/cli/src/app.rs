//! Argument parsing and command dispatch.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::ops::ControlFlow;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ptile_core::budget::DEFAULT_NODE_BUDGET;
use ptile_core::constructions::{
    build_nonpt_product_witness, build_p2cubed_witness, build_p2p2_witness, build_p2q2_witness, build_p3p2_witness,
    build_p3q2_witness, decompose_ascending_chain, subgroup_complement_elementary, ChainDecomposition, Combiner,
    ComplementMethod, ConstructionReport,
};
use ptile_core::fourier::{find_spectrum, is_spectral_pair, spectrum_via_pt, zero_set};
use ptile_core::group::DEFAULT_MAX_ORDER;
use ptile_core::properties::{
    check_property, classify_tile, invariant_factors, known_classification, Certificate, ClassificationWitness,
    KnownStatus, Property, PropertyVerdict,
};
use ptile_core::tiling::{
    enumerate_complements_with, for_each_tile, is_tiling_pair, periods, PairRecord, Route, SweepOptions,
};
use ptile_core::{parse_group_with_max, parse_subset, BudgetUsage, Group, GroupSubset, SearchConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::cache::{Cache, CacheError};
use crate::record::{cache_key, RunRecord, Status, VERSION};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] ptile_core::Error),
    #[error(transparent)]
    Cache(#[from] CacheError),
    #[error("writing {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

#[derive(Parser, Debug)]
#[command(name = "ptile", version, about = "Translational tilings of finite abelian groups")]
pub struct Cli {
    /// Print the full JSON record instead of the summary
    #[arg(long, global = true)]
    json: bool,

    /// Search node budget per top-level search
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,

    /// Largest group order accepted by the parser
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: u64,

    /// Largest group order accepted by exhaustive sweeps
    #[arg(long, global = true, default_value_t = 40)]
    exhaustive_bound: u64,

    /// Seed for randomized sampling
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Neither read nor write the result cache
    #[arg(long, global = true)]
    no_cache: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order, exponent, invariant factors and known PT status
    Group { group: String },
    /// Check whether Omega + T is a tiling
    Verify {
        group: String,
        #[arg(long)]
        omega: String,
        #[arg(long)]
        t: String,
        /// Use a single route instead of all three
        #[arg(long)]
        route: Option<Route>,
    },
    /// Enumerate the tiling complements of a set
    Complements {
        group: String,
        #[arg(long)]
        omega: String,
        /// Include every translate, not only complements containing 0
        #[arg(long)]
        all: bool,
        /// Number of complements listed in the summary
        #[arg(long, default_value_t = 20)]
        limit: usize,
    },
    /// Period group of a set
    Periods {
        group: String,
        #[arg(long)]
        set: String,
    },
    /// Characters where the Fourier transform of a set vanishes
    Zeroset {
        group: String,
        #[arg(long)]
        set: String,
    },
    /// A spectrum for a set, through a tiling complement when given
    Spectrum {
        group: String,
        #[arg(long)]
        omega: String,
        #[arg(long)]
        t: Option<String>,
    },
    /// Exhaustive PT, UPT, Hajos or Redei check
    Property {
        group: String,
        /// Comma-separated list of pt, upt, hajos, redei, or all
        #[arg(long, default_value = "all")]
        check: String,
        /// Write the verdicts with their certificates to this file
        #[arg(long)]
        certificate_out: Option<PathBuf>,
    },
    /// Build and check one of the explicit constructions
    Construct(ConstructArgs),
    /// Known PT status of a group, or the periodicity class of a tile
    Classify {
        group: String,
        #[arg(long)]
        omega: Option<String>,
    },
    /// Ascending chain decomposition of a tile
    Decompose {
        group: String,
        #[arg(long)]
        omega: String,
        /// Also find a subgroup complement (elementary p-groups)
        #[arg(long)]
        subgroup_complement: bool,
    },
    /// Count and list tiling pairs
    Tilings {
        group: String,
        /// Only tiles of this size
        #[arg(long)]
        size: Option<usize>,
        /// Number of pairs listed in sweep order
        #[arg(long, default_value_t = 20)]
        limit: usize,
        /// Uniform random sample of this many pairs, drawn with --seed
        #[arg(long, default_value_t = 0)]
        sample: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ConstructionName {
    P2q2,
    P2p2,
    P3q2,
    P3p2,
    P2cubed,
    NonptProduct,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[arg(value_enum)]
    name: ConstructionName,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    q: Option<u64>,
    /// Order of the cyclic factor for nonpt-product
    #[arg(long)]
    m: Option<u64>,
    /// Base group for nonpt-product
    #[arg(long)]
    group: Option<String>,
    /// Tile for nonpt-product
    #[arg(long)]
    omega: Option<String>,
    /// Complements for nonpt-product, repeated
    #[arg(long)]
    t: Vec<String>,
}

/// What a command computed, before it becomes a record.
struct Output {
    group: String,
    status: Status,
    result: Value,
    summary: Vec<String>,
    budget: Option<BudgetUsage>,
}

type Work = Box<dyn FnOnce(&SearchConfig) -> ptile_core::Result<Output>>;

struct Job {
    command: &'static str,
    group: String,
    parameters: BTreeMap<String, String>,
    work: Work,
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn execute(cli: &Cli) -> Result<i32, CliError> {
    let config = SearchConfig {
        budget: cli.budget,
        exhaustive_bound: cli.exhaustive_bound,
    };
    let job = prepare(cli)?;
    let mut parameters = job.parameters;
    parameters.insert("budget".into(), cli.budget.to_string());
    parameters.insert("exhaustive_bound".into(), cli.exhaustive_bound.to_string());
    let hash = cache_key(job.command, &parameters, VERSION);

    let cache = if cli.no_cache {
        None
    } else {
        match Cache::default_dir().map(|d| Cache::open(&d)) {
            Some(Ok(c)) => Some(c),
            Some(Err(e)) => {
                log::warn!("cache disabled: {e}");
                None
            }
            None => None,
        }
    };
    let cached = match &cache {
        Some(c) => c.lookup(&hash).unwrap_or_else(|e| {
            log::warn!("cache lookup failed: {e}");
            None
        }),
        None => None,
    };
    let record = match cached {
        Some(r) => {
            log::info!("cache hit {hash}");
            r
        }
        None => {
            let out = match (job.work)(&config) {
                Ok(out) => out,
                Err(e) if e.is_budget() => Output {
                    group: job.group,
                    status: Status::Unknown,
                    result: json!({ "error": e.to_string() }),
                    summary: vec![format!("unknown: {e}")],
                    budget: Some(BudgetUsage {
                        limit: cli.budget,
                        used: cli.budget,
                    }),
                },
                Err(e) => return Err(e.into()),
            };
            let record = RunRecord {
                command: job.command.to_string(),
                group: out.group,
                parameters,
                status: out.status,
                result: out.result,
                summary: out.summary,
                budget: out.budget,
                version: VERSION.to_string(),
                hash,
            };
            if let Some(c) = &cache {
                if let Err(e) = c.store(&record) {
                    log::warn!("cache store failed: {e}");
                }
            }
            record
        }
    };

    if cli.json {
        println!("{}", record.to_json_line());
    } else {
        for line in &record.summary {
            println!("{line}");
        }
    }
    if let Command::Property {
        certificate_out: Some(path),
        ..
    } = &cli.command
    {
        let text = serde_json::to_string_pretty(&record.result).expect("value serializes");
        std::fs::write(path, text + "\n").map_err(|source| CliError::Write {
            path: path.clone(),
            source,
        })?;
        if !cli.json {
            println!("certificate: {}", path.display());
        }
    }
    Ok(record.status.exit_code())
}

fn params(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn subset_of(group: &Group, indices: &[usize]) -> String {
    GroupSubset::from_indices(group, indices.iter().copied())
        .map(|s| s.to_string())
        .unwrap_or_else(|_| format!("{indices:?}"))
}

fn yes(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

fn prepare(cli: &Cli) -> Result<Job, CliError> {
    let parse_group = |s: &str| parse_group_with_max(s, cli.max_order);
    let job = match &cli.command {
        Command::Group { group } => {
            let g = parse_group(group)?;
            let spec = g.spec();
            Job {
                command: "group",
                group: spec.clone(),
                parameters: params(&[("group", spec.clone())]),
                work: Box::new(move |_| group_info(&g)),
            }
        }
        Command::Verify { group, omega, t, route } => {
            let g = parse_group(group)?;
            let omega = parse_subset(&g, omega)?;
            let t = parse_subset(&g, t)?;
            let route_name = route.map_or_else(|| "all".to_string(), |r| r.to_string());
            let route = *route;
            Job {
                command: "verify",
                group: g.spec(),
                parameters: params(&[
                    ("group", g.spec()),
                    ("omega", omega.to_string()),
                    ("t", t.to_string()),
                    ("route", route_name),
                ]),
                work: Box::new(move |_| verify(&omega, &t, route)),
            }
        }
        Command::Complements {
            group,
            omega,
            all,
            limit,
        } => {
            let g = parse_group(group)?;
            let omega = parse_subset(&g, omega)?;
            let (all, limit) = (*all, *limit);
            Job {
                command: "complements",
                group: g.spec(),
                parameters: params(&[
                    ("group", g.spec()),
                    ("omega", omega.to_string()),
                    ("all", all.to_string()),
                    ("limit", limit.to_string()),
                ]),
                work: Box::new(move |cfg| complements(&omega, all, limit, cfg)),
            }
        }
        Command::Periods { group, set } => {
            let g = parse_group(group)?;
            let a = parse_subset(&g, set)?;
            Job {
                command: "periods",
                group: g.spec(),
                parameters: params(&[("group", g.spec()), ("set", a.to_string())]),
                work: Box::new(move |_| {
                    let p = periods(&a);
                    let elems = p.elements();
                    Ok(Output {
                        group: a.group().spec(),
                        status: Status::Computed,
                        summary: vec![
                            format!("periods: {}", p.subgroup().carrier()),
                            format!("order: {}", p.order()),
                            format!("periodic: {}", yes(!p.is_trivial())),
                        ],
                        result: json!({ "periods": elems, "order": p.order(), "periodic": !p.is_trivial() }),
                        budget: None,
                    })
                }),
            }
        }
        Command::Zeroset { group, set } => {
            let g = parse_group(group)?;
            let a = parse_subset(&g, set)?;
            Job {
                command: "zeroset",
                group: g.spec(),
                parameters: params(&[("group", g.spec()), ("set", a.to_string())]),
                work: Box::new(move |_| {
                    let z = zero_set(&a).into_subset();
                    Ok(Output {
                        group: a.group().spec(),
                        status: Status::Computed,
                        summary: vec![format!("zero set: {z}"), format!("size: {}", z.len())],
                        result: json!({ "zero_set": z.to_vec(), "size": z.len() }),
                        budget: None,
                    })
                }),
            }
        }
        Command::Spectrum { group, omega, t } => {
            let g = parse_group(group)?;
            let omega = parse_subset(&g, omega)?;
            let t = t.as_deref().map(|s| parse_subset(&g, s)).transpose()?;
            let t_param = t.as_ref().map_or_else(|| "none".to_string(), |t| t.to_string());
            Job {
                command: "spectrum",
                group: g.spec(),
                parameters: params(&[("group", g.spec()), ("omega", omega.to_string()), ("t", t_param)]),
                work: Box::new(move |cfg| spectrum(&omega, t.as_ref(), cfg)),
            }
        }
        Command::Property { group, check, .. } => {
            let g = parse_group(group)?;
            let props = parse_checks(check)?;
            let names: Vec<String> = props.iter().map(|p| p.to_string()).collect();
            Job {
                command: "property",
                group: g.spec(),
                parameters: params(&[("group", g.spec()), ("check", names.join(","))]),
                work: Box::new(move |cfg| property(&g, &props, cfg)),
            }
        }
        Command::Construct(args) => prepare_construct(args, cli.max_order)?,
        Command::Classify { group, omega } => {
            let g = parse_group(group)?;
            match omega {
                None => Job {
                    command: "classify",
                    group: g.spec(),
                    parameters: params(&[("group", g.spec())]),
                    work: Box::new(move |_| classify_group(&g)),
                },
                Some(o) => {
                    let omega = parse_subset(&g, o)?;
                    Job {
                        command: "classify",
                        group: g.spec(),
                        parameters: params(&[("group", g.spec()), ("omega", omega.to_string())]),
                        work: Box::new(move |cfg| classify(&omega, cfg)),
                    }
                }
            }
        }
        Command::Decompose {
            group,
            omega,
            subgroup_complement,
        } => {
            let g = parse_group(group)?;
            let omega = parse_subset(&g, omega)?;
            let with_complement = *subgroup_complement;
            Job {
                command: "decompose",
                group: g.spec(),
                parameters: params(&[
                    ("group", g.spec()),
                    ("omega", omega.to_string()),
                    ("subgroup_complement", with_complement.to_string()),
                ]),
                work: Box::new(move |cfg| decompose(&omega, with_complement, cfg)),
            }
        }
        Command::Tilings {
            group,
            size,
            limit,
            sample,
        } => {
            let g = parse_group(group)?;
            let (size, limit, sample, seed) = (*size, *limit, *sample, cli.seed);
            let mut p = params(&[
                ("group", g.spec()),
                ("size", size.map_or_else(|| "any".to_string(), |s| s.to_string())),
                ("limit", limit.to_string()),
                ("sample", sample.to_string()),
            ]);
            if sample > 0 {
                p.insert("seed".into(), seed.to_string());
            }
            Job {
                command: "tilings",
                group: g.spec(),
                parameters: p,
                work: Box::new(move |cfg| tilings(&g, size, limit, sample, seed, cfg)),
            }
        }
    };
    Ok(job)
}

fn parse_checks(text: &str) -> Result<Vec<Property>, CliError> {
    let all = [Property::Pt, Property::Upt, Property::Hajos, Property::Redei];
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if part.eq_ignore_ascii_case("all") {
            out.extend(all);
        } else {
            out.push(part.parse::<Property>()?);
        }
    }
    if out.is_empty() {
        return Err(CliError::Usage("--check needs at least one property".into()));
    }
    let mut seen = Vec::new();
    out.retain(|p| {
        let fresh = !seen.contains(p);
        seen.push(*p);
        fresh
    });
    Ok(out)
}

fn group_info(g: &Group) -> ptile_core::Result<Output> {
    let inv = invariant_factors(g);
    let known = known_classification(&inv)?;
    Ok(Output {
        group: g.spec(),
        status: Status::Computed,
        summary: vec![
            format!("group: {g}"),
            format!("order: {}", g.order()),
            format!("exponent: {}", g.exponent()),
            format!("rank: {}", g.rank()),
            format!("invariant factors: {inv:?}"),
            format!("PT: {} ({})", known.status, known.citation),
        ],
        result: json!({
            "factors": g.factors(),
            "order": g.order(),
            "exponent": g.exponent(),
            "rank": g.rank(),
            "invariant_factors": inv,
            "classification": known,
        }),
        budget: None,
    })
}

fn verify(omega: &GroupSubset, t: &GroupSubset, route: Option<Route>) -> ptile_core::Result<Output> {
    let routes: Vec<Route> = route.map_or_else(|| Route::ALL.to_vec(), |r| vec![r]);
    let mut by_route = BTreeMap::new();
    for r in &routes {
        by_route.insert(r.to_string(), is_tiling_pair(omega, t, *r)?);
    }
    let verdicts: Vec<bool> = by_route.values().copied().collect();
    if verdicts.windows(2).any(|w| w[0] != w[1]) {
        return Err(ptile_core::Error::Internal(format!(
            "tiling routes disagree: {by_route:?}"
        )));
    }
    let tiling = verdicts[0];
    let detail: Vec<String> = by_route.iter().map(|(k, v)| format!("{k}={v}")).collect();
    Ok(Output {
        group: omega.group().spec(),
        status: Status::Computed,
        summary: vec![
            format!("tiling: {}", yes(tiling)),
            format!("routes: {}", detail.join(", ")),
        ],
        result: json!({ "tiling": tiling, "routes": by_route }),
        budget: None,
    })
}

fn complements(omega: &GroupSubset, all: bool, limit: usize, cfg: &SearchConfig) -> ptile_core::Result<Output> {
    let mut budget = cfg.budget();
    let found = enumerate_complements_with(omega, !all, &mut budget)?;
    let mut summary = vec![format!("complements: {}", found.len())];
    summary.extend(found.iter().take(limit).map(|t| format!("  {t}")));
    if found.len() > limit {
        summary.push(format!("  ... {} more", found.len() - limit));
    }
    let listed: Vec<Vec<usize>> = found.iter().map(|t| t.to_vec()).collect();
    Ok(Output {
        group: omega.group().spec(),
        status: Status::Computed,
        summary,
        result: json!({ "count": found.len(), "complements": listed }),
        budget: Some(budget.usage()),
    })
}

fn spectrum(omega: &GroupSubset, t: Option<&GroupSubset>, cfg: &SearchConfig) -> ptile_core::Result<Output> {
    let mut budget = cfg.budget();
    let (method, lambda) = match t {
        Some(t) => ("complement", Some(spectrum_via_pt(omega, t, &mut budget)?)),
        None => ("clique", find_spectrum(omega, &mut budget)?),
    };
    let verified = match &lambda {
        Some(l) => is_spectral_pair(omega, l)?,
        None => false,
    };
    let summary = match &lambda {
        Some(l) => vec![
            format!("spectrum: {l}"),
            format!("spectral pair: {}", yes(verified)),
            format!("method: {method}"),
        ],
        None => vec!["spectrum: none".to_string(), format!("method: {method}")],
    };
    Ok(Output {
        group: omega.group().spec(),
        status: Status::Computed,
        summary,
        result: json!({
            "spectrum": lambda.as_ref().map(|l| l.to_vec()),
            "spectral_pair": verified,
            "method": method,
        }),
        budget: Some(budget.usage()),
    })
}

fn certificate_lines(g: &Group, cert: &Certificate) -> Vec<String> {
    match cert {
        Certificate::Counterexample {
            omega,
            complements,
            reason,
        } => {
            let ts: Vec<String> = complements.iter().map(|t| subset_of(g, t)).collect();
            vec![
                format!(
                    "  certificate: tile {} with complements {}",
                    subset_of(g, omega),
                    ts.join(", ")
                ),
                format!("  reason: {reason}"),
            ]
        }
        Certificate::Exhausted { tiles, pairs } => {
            vec![format!("  certificate: exhausted {tiles} tile classes, {pairs} pairs")]
        }
    }
}

fn property(g: &Group, props: &[Property], cfg: &SearchConfig) -> ptile_core::Result<Output> {
    let mut verdicts: Vec<PropertyVerdict> = Vec::new();
    let mut summary = Vec::new();
    let mut used = 0u64;
    for &p in props {
        let v = check_property(g, p, cfg)?;
        used += v.budget.used;
        match v.holds {
            Some(h) => summary.push(format!("{p}: {}", yes(h))),
            None => summary.push(format!("{p}: unknown (budget of {} nodes exhausted)", v.budget.limit)),
        }
        if let Some(c) = &v.certificate {
            summary.extend(certificate_lines(g, c));
        }
        if let Some(c) = &v.citation {
            summary.push(format!("  known: {c}"));
        }
        verdicts.push(v);
    }
    let status = if verdicts.iter().any(|v| v.holds.is_none()) {
        Status::Unknown
    } else {
        Status::Computed
    };
    Ok(Output {
        group: g.spec(),
        status,
        summary,
        result: json!({ "verdicts": verdicts }),
        budget: Some(BudgetUsage {
            limit: cfg.budget,
            used,
        }),
    })
}

fn prepare_construct(args: &ConstructArgs, max_order: u64) -> Result<Job, CliError> {
    let p = args.p.unwrap_or(match args.name {
        ConstructionName::P3p2 | ConstructionName::P2cubed => 3,
        _ => 2,
    });
    let q = args.q.unwrap_or(3);
    let mut parameters = params(&[("name", format!("{:?}", args.name).to_lowercase())]);
    let work: Work = match args.name {
        ConstructionName::P2q2 => {
            parameters.extend(params(&[("p", p.to_string()), ("q", q.to_string())]));
            Box::new(move |cfg| build_p2q2_witness(p, q, cfg).map(construction_output))
        }
        ConstructionName::P3q2 => {
            parameters.extend(params(&[("p", p.to_string()), ("q", q.to_string())]));
            Box::new(move |cfg| build_p3q2_witness(p, q, cfg).map(construction_output))
        }
        ConstructionName::P2p2 => {
            parameters.insert("p".into(), p.to_string());
            Box::new(move |cfg| build_p2p2_witness(p, cfg).map(construction_output))
        }
        ConstructionName::P3p2 => {
            parameters.insert("p".into(), p.to_string());
            Box::new(move |cfg| build_p3p2_witness(p, cfg).map(construction_output))
        }
        ConstructionName::P2cubed => {
            parameters.insert("p".into(), p.to_string());
            Box::new(move |cfg| build_p2cubed_witness(p, cfg).map(construction_output))
        }
        ConstructionName::NonptProduct => {
            let (Some(group), Some(omega), Some(m)) = (&args.group, &args.omega, args.m) else {
                return Err(CliError::Usage(
                    "nonpt-product needs --group, --omega, --m and --t".into(),
                ));
            };
            let g = parse_group_with_max(group, max_order)?;
            let omega = parse_subset(&g, omega)?;
            let ts = args
                .t
                .iter()
                .map(|t| parse_subset(&g, t))
                .collect::<ptile_core::Result<Vec<_>>>()?;
            let t_param: Vec<String> = ts.iter().map(|t| t.to_string()).collect();
            parameters.extend(params(&[
                ("group", g.spec()),
                ("omega", omega.to_string()),
                ("t", t_param.join(";")),
                ("m", m.to_string()),
            ]));
            Box::new(move |cfg| build_nonpt_product_witness(&omega, &ts, m, cfg).map(construction_output))
        }
    };
    Ok(Job {
        command: "construct",
        group: parameters.get("group").cloned().unwrap_or_default(),
        parameters,
        work,
    })
}

fn construction_output(report: ConstructionReport) -> Output {
    let g = &report.group;
    let mut summary = vec![format!("construction: {} in {g}", report.name)];
    let ps: Vec<String> = report.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
    summary.push(format!("parameters: {}", ps.join(", ")));
    for (name, set) in &report.sets {
        summary.push(format!("{name} = {}", subset_of(g, set)));
    }
    summary.push("claims:".to_string());
    for c in &report.claims {
        let tag = match c.holds {
            Some(true) => "holds",
            Some(false) => "fails",
            None => "unknown",
        };
        summary.push(format!("  [{tag}] {} ({})", c.claim, c.method));
    }
    for n in &report.notes {
        summary.push(format!("note: {n}"));
    }
    let status = if report.claims.iter().any(|c| c.holds.is_none()) {
        Status::Unknown
    } else {
        Status::Computed
    };
    Output {
        group: g.spec(),
        status,
        summary,
        result: serde_json::to_value(&report).expect("report serializes"),
        budget: None,
    }
}

fn classify_group(g: &Group) -> ptile_core::Result<Output> {
    let inv = invariant_factors(g);
    let known = known_classification(&inv)?;
    let status = if known.status == KnownStatus::Unknown {
        Status::Unknown
    } else {
        Status::Computed
    };
    Ok(Output {
        group: g.spec(),
        status,
        summary: vec![format!("PT: {} ({})", known.status, known.citation)],
        result: serde_json::to_value(&known).expect("classification serializes"),
        budget: None,
    })
}

fn classify(omega: &GroupSubset, cfg: &SearchConfig) -> ptile_core::Result<Output> {
    let g = omega.group();
    let c = classify_tile(omega, cfg)?;
    let mut summary = vec![
        format!("complements: {}", c.complement_count),
        format!("periodic: {}", yes(c.periodic)),
        format!("uniformly periodic: {}", yes(c.uniformly_periodic)),
        format!("dual uniformly periodic: {}", yes(c.dual_uniformly_periodic)),
    ];
    match &c.witness {
        Some(ClassificationWitness::CommonPeriod(x)) => {
            summary.push(format!("witness: common period {}", g.element(*x)?));
        }
        Some(ClassificationWitness::PeriodicReplacement(s)) => {
            summary.push(format!("witness: periodic tile {}", subset_of(g, s)));
        }
        None => {}
    }
    Ok(Output {
        group: g.spec(),
        status: Status::Computed,
        summary,
        result: serde_json::to_value(&c).expect("classification serializes"),
        budget: None,
    })
}

fn chain_lines(dec: &ChainDecomposition) -> Vec<String> {
    let g = &dec.group;
    let mut out = vec![format!("levels: {}", dec.levels.len())];
    for (j, level) in dec.levels.iter().enumerate() {
        let op = match level.combiner {
            Combiner::Plus => "plus",
            Combiner::Circ => "circ",
        };
        out.push(format!(
            "H{} = {} (order {}), D{} = {}, {op}",
            j + 1,
            subset_of(g, &level.subgroup),
            level.subgroup.len(),
            j + 1,
            subset_of(g, &level.reps),
        ));
        if level.combiner == Combiner::Circ {
            let phi: Vec<String> = level
                .phi
                .iter()
                .map(|&(x, d)| {
                    let show = |i: usize| g.element(i).map(|e| e.to_string()).unwrap_or_else(|_| i.to_string());
                    format!("{}->{}", show(x), show(d))
                })
                .collect();
            out.push(format!("  phi: {}", phi.join(", ")));
        }
    }
    out.push(format!(
        "offset: {}",
        g.element(dec.offset).map(|e| e.to_string()).unwrap_or_default()
    ));
    out
}

fn decompose(omega: &GroupSubset, with_complement: bool, cfg: &SearchConfig) -> ptile_core::Result<Output> {
    let mut budget = cfg.budget();
    let dec = decompose_ascending_chain(omega, &mut budget)?;
    let recomposed = dec.recompose()? == *omega;
    let mut summary = chain_lines(&dec);
    summary.push(format!("recomposes: {}", yes(recomposed)));
    let mut complement = Value::Null;
    if with_complement {
        match subgroup_complement_elementary(omega, &mut budget)? {
            Some(sc) => {
                let method = match sc.method {
                    ComplementMethod::Chain => "chain",
                    ComplementMethod::Exhaustive => "exhaustive",
                };
                summary.push(format!("subgroup complement: {} ({method})", sc.subgroup.carrier()));
                complement = json!({ "subgroup": sc.subgroup.carrier().to_vec(), "method": sc.method });
            }
            None => summary.push("subgroup complement: none".to_string()),
        }
    }
    Ok(Output {
        group: omega.group().spec(),
        status: Status::Computed,
        summary,
        result: json!({ "chain": dec, "recomposes": recomposed, "subgroup_complement": complement }),
        budget: Some(budget.usage()),
    })
}

fn tilings(
    g: &Group,
    size: Option<usize>,
    limit: usize,
    sample: usize,
    seed: u64,
    cfg: &SearchConfig,
) -> ptile_core::Result<Output> {
    let mut budget = cfg.budget();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut classes = 0u64;
    let mut pairs = 0u64;
    let mut listed: Vec<PairRecord> = Vec::new();
    let mut reservoir: Vec<PairRecord> = Vec::new();
    let _ = for_each_tile(g, SweepOptions { size_filter: size }, cfg, &mut budget, |class| {
        classes += 1;
        for omega in class.normalized_translates() {
            for t in &class.complements {
                let rec = PairRecord {
                    omega: omega.to_vec(),
                    t: t.to_vec(),
                };
                if sample > 0 {
                    if reservoir.len() < sample {
                        reservoir.push(rec.clone());
                    } else {
                        let j = rng.gen_range(0..=pairs) as usize;
                        if j < sample {
                            reservoir[j] = rec.clone();
                        }
                    }
                }
                if listed.len() < limit {
                    listed.push(rec);
                }
                pairs += 1;
            }
        }
        Ok(ControlFlow::Continue(()))
    })?;
    reservoir.sort_by(|a, b| (a.omega.len(), &a.omega, &a.t).cmp(&(b.omega.len(), &b.omega, &b.t)));
    let mut summary = vec![format!("tile classes: {classes}"), format!("pairs: {pairs}")];
    let show = |r: &PairRecord| format!("  {} + {}", subset_of(g, &r.omega), subset_of(g, &r.t));
    summary.extend(listed.iter().map(show));
    if pairs as usize > listed.len() {
        summary.push(format!("  ... {} more", pairs as usize - listed.len()));
    }
    if sample > 0 {
        summary.push(format!("sample (seed {seed}):"));
        summary.extend(reservoir.iter().map(show));
    }
    Ok(Output {
        group: g.spec(),
        status: Status::Computed,
        summary,
        result: json!({
            "tile_classes": classes,
            "pairs": pairs,
            "listed": listed,
            "sample": reservoir,
        }),
        budget: Some(budget.usage()),
    })
}
