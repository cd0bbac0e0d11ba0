use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use uncertain_sort::instances::{
    deserialize, family_names, optimum_cost, serialize, AsteroidKind, CostModel, FirstProbe, GeneratorSpec, ValueModel,
};
use uncertain_sort::offline::{brute_force_optimum, is_feasible_query_set, optimum_query_set, query_set_cost};
use uncertain_sort::online::{Algorithm, ProbabilityRule};
use uncertain_sort::scalar::{format_decimal, format_scalar, int, parse_scalar, rat, sqrt3_bounds, Enclosure};
use uncertain_sort::{valid_permutation, Error, Instance, Permutation, Scalar};

const EXIT_USAGE: u8 = 2;
const EXIT_VERIFY: u8 = 3;
const EXIT_MODEL: u8 = 4;

#[derive(Parser)]
#[command(name = "usort", version, about = "Sorting under explorable uncertainty")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance document.
    Gen {
        /// Family name (see `--help` for the list).
        family: String,
        #[command(flatten)]
        params: FamilyParams,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one algorithm on an instance.
    Solve {
        algorithm: String,
        path: PathBuf,
        #[command(flatten)]
        alg: AlgParams,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also compute the exact expected cost and ratio.
        #[arg(long)]
        expected: bool,
        /// Print a CSV row after the table.
        #[arg(long)]
        csv: bool,
    },
    /// Compute the offline optimum query set.
    Opt {
        path: PathBuf,
        /// Cross-check against exhaustive search.
        #[arg(long)]
        brute: bool,
    },
    /// Check a proposed query set and output order.
    Verify {
        path: PathBuf,
        /// Comma-separated indices, e.g. `0,2` (empty for none).
        queryset: String,
        /// Comma-separated indices in output order.
        permutation: String,
    },
    /// Competitive-ratio experiment over a family or a directory of documents.
    Ratio {
        algorithm: String,
        /// Family name or directory of `.json` documents.
        source: String,
        #[command(flatten)]
        alg: AlgParams,
        #[command(flatten)]
        params: FamilyParams,
        #[arg(long, default_value_t = 1)]
        trials: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Clone)]
struct AlgParams {
    /// Trial probability for `--rule fixed`, as a rational.
    #[arg(long)]
    p: Option<String>,
    /// Probability rule: fixed, half or sqrt3.
    #[arg(long)]
    rule: Option<String>,
}

#[derive(Args, Clone)]
struct FamilyParams {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long = "M")]
    m: Option<usize>,
    #[arg(long)]
    delta: Option<String>,
    #[arg(long)]
    eps: Option<String>,
    #[arg(long)]
    w: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long)]
    variant: Option<usize>,
    /// single or double (also fig5a, fig5b).
    #[arg(long)]
    kind: Option<String>,
    /// left or right.
    #[arg(long)]
    first: Option<String>,
    #[arg(long)]
    cost_model: Option<String>,
    #[arg(long)]
    value_model: Option<String>,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidParameters(_) | Error::UnsupportedRule(_) => EXIT_USAGE,
            _ => EXIT_MODEL,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::usage(format!("{e:#}"))
    }
}

type Outcome = Result<(), Failure>;

fn scalar(text: &Option<String>, default: Scalar, what: &str) -> Result<Scalar, Failure> {
    match text {
        None => Ok(default),
        Some(t) => parse_scalar(t).map_err(|e| Failure::usage(format!("--{what}: {e}"))),
    }
}

fn first_probe(text: &Option<String>) -> Result<FirstProbe, Failure> {
    match text.as_deref() {
        None | Some("left") => Ok(FirstProbe::Left),
        Some("right") => Ok(FirstProbe::Right),
        Some(other) => Err(Failure::usage(format!("--first must be left or right, got {other:?}"))),
    }
}

/// Builds the generator for `family`; `seed` overrides `--seed` for the seeded families.
fn spec_for(family: &str, p: &FamilyParams, seed: u64) -> Result<GeneratorSpec, Failure> {
    let family = family.replace('_', "-");
    let n = p.n.unwrap_or(8);
    let k = p.k.unwrap_or(2);
    Ok(match family.as_str() {
        "random" => GeneratorSpec::Random {
            seed,
            n,
            delta: scalar(&p.delta, int(0), "delta")?,
            cost_model: CostModel::parse(p.cost_model.as_deref().unwrap_or("uniform"))?,
            value_model: ValueModel::parse(p.value_model.as_deref().unwrap_or("uniform-in-interval"))?,
        },
        "scripted" => GeneratorSpec::RandomScripted {
            seed,
            n,
            max_steps: p.steps.unwrap_or(4),
        },
        "laminar" => GeneratorSpec::Laminar {
            seed,
            n,
            depth: p.depth.unwrap_or(3),
        },
        "lemma4" => GeneratorSpec::Lemma4Pair {
            delta: scalar(&p.delta, int(0), "delta")?,
            first: first_probe(&p.first)?,
        },
        "two-triangles" => GeneratorSpec::TwoTriangles,
        "figure3" => GeneratorSpec::Figure3Chain { k },
        "triangle-chain" => GeneratorSpec::TriangleChain {
            k,
            lone: first_probe(&p.first)?,
        },
        "nested-star" => GeneratorSpec::NestedStar { n },
        "cost-path" => GeneratorSpec::CostPath {
            n,
            eps: scalar(&p.eps, rat(1, 4 * n.max(1) as i64), "eps")?,
        },
        "cpcp" => GeneratorSpec::CpcpAdversary {
            n: p.n.unwrap_or(2),
            m: p.m.unwrap_or(4),
        },
        "advice-triangles" => GeneratorSpec::AdviceTriangles {
            m: k,
            delta: scalar(&p.delta, int(1), "delta")?,
            variant: p.variant.unwrap_or(1),
        },
        "advice-pairs" => GeneratorSpec::AdvicePairs { pairs: n },
        "tight-path" => GeneratorSpec::TightPath {
            w: scalar(&p.w, rat(4, 3), "w")?,
        },
        "asteroid" => {
            let delta = scalar(&p.delta, int(1), "delta")?;
            let eps = scalar(&p.eps, &delta / int(4), "eps")?;
            GeneratorSpec::Asteroid {
                kind: AsteroidKind::parse(p.kind.as_deref().unwrap_or("fig5a"))?,
                k,
                delta,
                eps,
            }
        }
        other => {
            return Err(Failure::usage(format!(
                "unknown family {other:?}; expected one of {}",
                family_names().join(", ")
            )))
        }
    })
}

fn is_seeded(spec: &GeneratorSpec) -> bool {
    matches!(
        spec,
        GeneratorSpec::Random { .. } | GeneratorSpec::RandomScripted { .. } | GeneratorSpec::Laminar { .. }
    )
}

fn read_instance(path: &Path) -> Result<Instance, Failure> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(Failure::from)?;
    deserialize(&text).map_err(|e| Failure {
        code: EXIT_MODEL,
        message: format!("{}: {e}", path.display()),
    })
}

fn write_output(out: &Option<PathBuf>, text: &str) -> Outcome {
    match out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(Failure::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// `p/q` for exact values, otherwise the midpoint to twelve places.
fn show_enclosure(e: &Enclosure) -> String {
    if e.is_exact() {
        format_scalar(&e.lo)
    } else {
        format_decimal(&e.midpoint(), 12)
    }
}

fn decimal(e: &Enclosure) -> String {
    format_decimal(&e.midpoint(), 6)
}

fn ratio_of(cost: &Enclosure, opt: &Scalar) -> Option<Enclosure> {
    if *opt == int(0) {
        return (cost.hi == int(0)).then(|| Enclosure::exact(int(1)));
    }
    Some(cost.div_positive(opt))
}

/// Quotes a CSV field when it contains a separator or quote.
fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

fn join(items: impl IntoIterator<Item = usize>) -> String {
    items.into_iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

fn parse_indices(text: &str, what: &str) -> Result<Vec<usize>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| Failure::usage(format!("{what}: bad index {s:?}")))
        })
        .collect()
}

fn algorithm(name: &str, p: &AlgParams) -> Result<Algorithm, Failure> {
    Ok(Algorithm::parse(name, p.rule.as_deref(), p.p.as_deref())?)
}

/// Proven worst-case ratio for the algorithm, with the slack used when comparing.
fn proven_bound(alg: &Algorithm) -> Option<Scalar> {
    Some(match alg {
        Algorithm::Simple | Algorithm::StableSort | Algorithm::VertexCover | Algorithm::Alg3 => int(2),
        Algorithm::Alg1 {
            rule: ProbabilityRule::Fixed(p),
            ..
        } if *p == rat(1, 2) => rat(3, 2),
        Algorithm::Alg2(ProbabilityRule::Half) => rat(57, 32),
        Algorithm::Alg2(ProbabilityRule::Sqrt3) => int(1) + rat(4, 3) / sqrt3_bounds(64).0 + rat(1, 1_000_000),
        Algorithm::AdviceHalf | Algorithm::AdviceLg3 => int(1),
        _ => return None,
    })
}

fn cmd_gen(family: &str, params: &FamilyParams, out: &Option<PathBuf>) -> Outcome {
    let spec = spec_for(family, params, params.seed)?;
    let inst = spec.generate()?;
    write_output(out, &serialize(&inst))
}

fn cmd_solve(name: &str, path: &Path, params: &AlgParams, seed: u64, expected: bool, csv: bool) -> Outcome {
    let inst = read_instance(path)?;
    let alg = algorithm(name, params)?;
    let report = alg.run_seeded(&inst, seed)?;
    println!("algorithm   {}", alg.name());
    println!("seed        {seed}");
    println!("queried     {{{}}}", join(report.queried()));
    println!("queries     {}", report.query_count());
    println!(
        "cost        {} ({})",
        format_scalar(&report.total_cost),
        format_decimal(&report.total_cost, 6)
    );
    println!("permutation {}", join(report.permutation.order.iter().copied()));
    let bits = report.advice_bits();
    if let Some(b) = bits {
        println!("advice bits {b}");
    }
    let mut cost = Enclosure::exact(report.total_cost.clone());
    let mut ratio = None;
    if expected {
        cost = alg.expected_cost(&inst)?;
        let opt = optimum_cost(&alg, &inst)?;
        println!("expected    {} ({})", show_enclosure(&cost), decimal(&cost));
        println!("optimum     {}", format_scalar(&opt));
        ratio = ratio_of(&cost, &opt);
        match &ratio {
            Some(r) => println!("ratio       {} ({})", show_enclosure(r), decimal(r)),
            None => println!("ratio       unbounded (free optimum)"),
        }
    }
    if csv {
        let opt = optimum_cost(&alg, &inst)?;
        let ratio = ratio.or_else(|| ratio_of(&cost, &opt));
        println!("{}", CSV_HEADER);
        println!(
            "{},{},{seed},{},{},{},{}",
            csv_field(&path.display().to_string()),
            alg.name(),
            show_enclosure(&cost),
            format_scalar(&opt),
            ratio.as_ref().map(show_enclosure).unwrap_or_default(),
            bits.map(|b| b.to_string()).unwrap_or_default()
        );
    }
    Ok(())
}

fn cmd_opt(path: &Path, brute: bool) -> Outcome {
    let inst = read_instance(path)?;
    let set = optimum_query_set(&inst)?;
    let cost = query_set_cost(&inst, &set);
    println!("optimum {{{}}}", join(set.iter().copied()));
    println!("cost    {} ({})", format_scalar(&cost), format_decimal(&cost, 6));
    if brute {
        let bf = brute_force_optimum(&inst)?;
        if bf.cost == cost && bf.minimizers.contains(&set) {
            println!("MATCH ({} optimal sets)", bf.minimizers.len());
        } else {
            println!("MISMATCH: exhaustive optimum {}", format_scalar(&bf.cost));
            return Err(Failure {
                code: EXIT_VERIFY,
                message: "optimum disagrees with exhaustive search".into(),
            });
        }
    }
    Ok(())
}

fn cmd_verify(path: &Path, queryset: &str, permutation: &str) -> Outcome {
    let inst = read_instance(path)?;
    let set: BTreeSet<usize> = parse_indices(queryset, "queryset")?.into_iter().collect();
    if let Some(&bad) = set.iter().find(|&&i| i >= inst.len()) {
        return Err(Failure::usage(format!("queryset: index {bad} out of range")));
    }
    let pi = Permutation::new(parse_indices(permutation, "permutation")?);
    let feasible = is_feasible_query_set(&inst, &set)?;
    let values = inst.values()?;
    let valid = pi.len() == inst.len() && pi.is_bijection() && valid_permutation(&inst, values, &pi);
    println!("query set   {}", if feasible { "feasible" } else { "INFEASIBLE" });
    println!("permutation {}", if valid { "valid" } else { "INVALID" });
    println!("cost        {}", format_scalar(&query_set_cost(&inst, &set)));
    if feasible && valid {
        Ok(())
    } else {
        Err(Failure {
            code: EXIT_VERIFY,
            message: "verification failed".into(),
        })
    }
}

const CSV_HEADER: &str = "instance,algorithm,seed,cost,opt,ratio,bits";

struct Row {
    instance: String,
    seed: u64,
    cost: Enclosure,
    opt: Scalar,
    ratio: Option<Enclosure>,
    bits: Option<u64>,
}

fn evaluate(alg: &Algorithm, instance: String, inst: &Instance, seed: u64) -> Result<Row, Failure> {
    let report = alg.run_seeded(inst, seed)?;
    let cost = if alg.is_randomized() {
        alg.expected_cost(inst)?
    } else {
        Enclosure::exact(report.total_cost.clone())
    };
    let opt = optimum_cost(alg, inst)?;
    Ok(Row {
        ratio: ratio_of(&cost, &opt),
        instance,
        seed,
        cost,
        opt,
        bits: report.advice_bits(),
    })
}

fn corpus(dir: &Path) -> Result<Vec<(String, Instance)>, Failure> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .with_context(|| format!("listing {}", dir.display()))
        .map_err(Failure::from)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| {
            let id = p
                .file_name()
                .map(|f| f.to_string_lossy().into_owned())
                .unwrap_or_default();
            Ok((id, read_instance(p)?))
        })
        .collect()
}

fn cmd_ratio(
    name: &str,
    source: &str,
    alg_params: &AlgParams,
    params: &FamilyParams,
    trials: u64,
    out: &Option<PathBuf>,
) -> Outcome {
    let alg = algorithm(name, alg_params)?;
    let jobs: Vec<(String, Instance, u64)> = if Path::new(source).is_dir() {
        corpus(Path::new(source))?
            .into_iter()
            .flat_map(|(id, inst)| (0..trials).map(move |t| (id.clone(), inst.clone(), params.seed + t)))
            .collect()
    } else {
        let base = spec_for(source, params, params.seed)?;
        if is_seeded(&base) {
            (0..trials)
                .map(|t| {
                    let spec = spec_for(source, params, params.seed + t)?;
                    Ok((spec.label(), spec.generate()?, params.seed + t))
                })
                .collect::<Result<_, Failure>>()?
        } else {
            let inst = base.generate()?;
            (0..trials)
                .map(|t| (base.label(), inst.clone(), params.seed + t))
                .collect()
        }
    };
    let mut rows = jobs
        .into_par_iter()
        .map(|(id, inst, seed)| evaluate(&alg, id, &inst, seed))
        .collect::<Result<Vec<Row>, Failure>>()?;
    rows.sort_by(|a, b| a.instance.cmp(&b.instance).then(a.seed.cmp(&b.seed)));

    let mut text = String::new();
    writeln!(text, "{CSV_HEADER}").unwrap();
    for r in &rows {
        writeln!(
            text,
            "{},{},{},{},{},{},{}",
            csv_field(&r.instance),
            alg.name(),
            r.seed,
            show_enclosure(&r.cost),
            format_scalar(&r.opt),
            r.ratio.as_ref().map(show_enclosure).unwrap_or_default(),
            r.bits.map(|b| b.to_string()).unwrap_or_default()
        )
        .unwrap();
    }
    write_output(out, &text)?;

    let ratios: Vec<&Enclosure> = rows.iter().filter_map(|r| r.ratio.as_ref()).collect();
    let unbounded = rows.len() - ratios.len();
    let bound = proven_bound(&alg);
    let mut summary = format!("rows {}", rows.len());
    if let Some(max) = ratios.iter().map(|r| &r.hi).max() {
        let sum: Scalar = ratios.iter().map(|r| r.midpoint()).sum();
        let mean = sum / int(ratios.len() as i64);
        write!(
            summary,
            " max {} ({}) mean {}",
            format_scalar(max),
            format_decimal(max, 6),
            format_decimal(&mean, 6)
        )
        .unwrap();
        if let Some(b) = &bound {
            let verdict = if max <= b { "within" } else { "EXCEEDS" };
            write!(summary, " {verdict} bound {}", format_decimal(b, 6)).unwrap();
        }
    }
    if unbounded > 0 {
        write!(summary, " unbounded {unbounded}").unwrap();
    }
    eprintln!("{summary}");
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let outcome = match &cli.command {
        Command::Gen { family, params, out } => cmd_gen(family, params, out),
        Command::Solve {
            algorithm,
            path,
            alg,
            seed,
            expected,
            csv,
        } => cmd_solve(algorithm, path, alg, *seed, *expected, *csv),
        Command::Opt { path, brute } => cmd_opt(path, *brute),
        Command::Verify {
            path,
            queryset,
            permutation,
        } => cmd_verify(path, queryset, permutation),
        Command::Ratio {
            algorithm,
            source,
            alg,
            params,
            trials,
            out,
        } => cmd_ratio(algorithm, source, alg, params, *trials, out),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
