//! `supercodim`: exact graded codimensions, witness evaluations and bound
//! checks for b(2) and other superalgebras given by structure constants.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use num_bigint::BigUint;

use supercodim_core::algebra::{build_b2, build_sl2, format_coords, verify_axioms, StructureSuperalgebra};
use supercodim_core::bounds::{self, Partition};
use supercodim_core::codim::{CodimCache, CodimConfig, CodimEngine, IdentityVerdict};
use supercodim_core::numeric::QuadExt3;
use supercodim_core::poly::{parse_poly, SpanningStrategy};
use supercodim_core::report::{render, CheckRow, ExactValue, OutputFormat, Verdict};
use supercodim_core::witness::{self, WLayout, WitnessSpec, WitnessValues};
use supercodim_core::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "supercodim", version, about = "Exact graded codimensions and witness checks for Lie superalgebras")]
struct Cli {
    /// Output format for result rows.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Text => OutputFormat::Text,
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check grading, super-anticommutativity and super-Jacobi on all basis triples.
    Axioms {
        /// `b2`, `sl2` or `file:PATH` (a structure-constant table).
        #[arg(long, default_value = "b2")]
        algebra: String,
    },
    /// Graded codimensions c_{k,l} or the total c_n.
    Codim(CodimArgs),
    /// Exact evaluations of the witness polynomials.
    Witness {
        #[command(subcommand)]
        which: WitnessCmd,
    },
    /// Exact inequality checks on partitions and lower bounds.
    Bounds {
        #[command(subcommand)]
        which: BoundsCmd,
    },
    /// Test whether a polynomial file is a graded identity.
    PolyCheck {
        file: PathBuf,
        #[arg(long, default_value = "b2")]
        algebra: String,
        /// Turn the answer into a pass/fail verdict.
        #[arg(long, value_enum)]
        expect: Option<Expect>,
    },
    /// Inspect or clear the codimension cache.
    Cache {
        #[command(subcommand)]
        action: CacheCmd,
        #[arg(long, env = "SUPERCODIM_CACHE", global = true)]
        cache: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct CodimArgs {
    #[arg(long, requires = "l", conflicts_with = "total")]
    k: Option<usize>,
    #[arg(long, requires = "k", conflicts_with = "total")]
    l: Option<usize>,
    /// Total graded codimension of degree N.
    #[arg(long, value_name = "N", required_unless_present = "k")]
    total: Option<usize>,
    #[arg(long, default_value = "b2")]
    algebra: String,
    /// Span with the (k+l-1)! combs that start with the first variable.
    #[arg(long)]
    reduced: bool,
    #[arg(long, default_value_t = supercodim_core::codim::DEFAULT_MAX_DEGREE)]
    max_degree: usize,
    /// Cache file; read before and written after the computation.
    #[arg(long, env = "SUPERCODIM_CACHE")]
    cache: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Expect {
    Identity,
    NonIdentity,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Layout {
    AlternatedTail,
    AsWritten,
}

impl From<Layout> for WLayout {
    fn from(l: Layout) -> Self {
        match l {
            Layout::AlternatedTail => WLayout::AlternatedTail,
            Layout::AsWritten => WLayout::AsWritten,
        }
    }
}

#[derive(Args, Debug, Clone, Copy)]
struct WitnessArgs {
    #[arg(long, default_value_t = 1)]
    t: usize,
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Tail length for lemma4 (1..=5); omitted means all five.
    #[arg(long)]
    i: Option<usize>,
    #[arg(long, value_enum, default_value_t = Layout::AlternatedTail)]
    layout: Layout,
}

#[derive(Subcommand, Debug)]
enum WitnessCmd {
    /// g with t alternating triples evaluates to 8^t h.
    Eq1(WitnessArgs),
    /// g' = Sym1 Sym2 Sym3 g evaluates to (t!)^3 8^t h.
    Eq3a(WitnessArgs),
    /// w evaluates to 8^(k+1) h.
    Eq6(WitnessArgs),
    /// w' evaluates to (3k)!(k!)^3 8^(k+1) h.
    WPrime(WitnessArgs),
    /// u = w'(g', ...) evaluates to the product of both values.
    U(WitnessArgs),
    /// u' = u x1 ... xi evaluates to +-2^i phi(u), moved from h to e.
    Lemma4(WitnessArgs),
}

#[derive(Subcommand, Debug)]
enum BoundsCmd {
    /// Sandwich of the character degree between Phi^n / n^(d^2+d) and n Phi^n.
    Lemma1 {
        #[arg(long, required_unless_present = "partition")]
        n: Option<usize>,
        #[arg(long, default_value_t = 6)]
        max_parts: usize,
        /// A single partition such as 34,33,33.
        #[arg(long, conflicts_with = "n")]
        partition: Option<String>,
        /// Allow n < 100; verdicts are then marked exploratory.
        #[arg(long)]
        explore: bool,
    },
    /// deg chi_(t,t,t) >= m^-12 3^m for t in 1..=T.
    Eq4 {
        #[arg(long)]
        t: usize,
    },
    /// deg chi_(3k,k,k,k) >= r^-20 (2 sqrt 3)^r for k in 1..=K.
    Eq7 {
        #[arg(long)]
        k: usize,
    },
    /// Lower bound for c_{m+1,r+6}, certified against a non-identity when feasible.
    Lemma2 {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        k: usize,
    },
    /// Lower bound for c_n when n - 7 is a multiple of 6.
    Lemma3 {
        #[arg(long)]
        n: usize,
    },
    /// Lower bound for c_n when n - 7 is not a multiple of 6.
    Lemma5 {
        #[arg(long)]
        n: usize,
    },
    /// sum C(q,i) 3^i (2 sqrt 3)^(q-i) = (3 + 2 sqrt 3)^q for q in 0..=Q.
    Binomial {
        #[arg(long)]
        q: usize,
    },
    /// C(n,i) <= n C(n,i+1); all i < n when --i is omitted.
    BinomStep {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: Option<usize>,
    },
    /// Hook degree, Phi^n and a decimal Phi for one partition.
    Phi {
        #[arg(long)]
        partition: String,
        #[arg(long, default_value_t = 6)]
        places: usize,
    },
}

#[derive(Subcommand, Debug)]
enum CacheCmd {
    Inspect,
    Clear,
}

fn load_algebra(spec: &str) -> Result<Arc<StructureSuperalgebra>> {
    let alg = match spec {
        "b2" => build_b2(),
        "sl2" => build_sl2(),
        other => {
            let path = other
                .strip_prefix("file:")
                .ok_or_else(|| Error::Precondition(format!("unknown algebra `{other}`; use b2, sl2 or file:PATH")))?;
            let text = std::fs::read_to_string(path)?;
            let id = Path::new(path)
                .file_stem()
                .map_or("file".to_string(), |s| s.to_string_lossy().into_owned());
            StructureSuperalgebra::from_table_text(id, &text)?
        }
    };
    Ok(Arc::new(alg))
}

fn cmd_axioms(algebra: &str) -> Result<Vec<CheckRow>> {
    let alg = load_algebra(algebra)?;
    let report = verify_axioms(&alg);
    let (lhs, note) = match &report.violation {
        None => ("all hold".to_string(), format!("{} pairs, {} triples", report.pairs_checked, report.triples_checked)),
        Some(v) => {
            let names: Vec<&str> = v.basis.iter().map(|&i| alg.name(i)).collect();
            (
                format!("{} fails", v.axiom),
                format!(
                    "basis ({}): {} vs {}",
                    names.join(","),
                    format_coords(alg.names(), &v.lhs),
                    format_coords(alg.names(), &v.rhs)
                ),
            )
        }
    };
    Ok(vec![CheckRow::new(
        "axioms",
        format!("algebra={}", alg.id()),
        ExactValue::Element(lhs),
        "=",
        ExactValue::Element("all hold".into()),
        Verdict::from_bool(report.passed()),
    )
    .with_note(note)])
}

fn cmd_codim(args: &CodimArgs) -> Result<Vec<CheckRow>> {
    let alg = load_algebra(&args.algebra)?;
    let config = CodimConfig {
        max_degree: args.max_degree,
        strategy: if args.reduced {
            SpanningStrategy::FirstVariableFixed
        } else {
            SpanningStrategy::Full
        },
    };
    let mut engine = CodimEngine::with_config(alg, config);
    if let Some(path) = &args.cache {
        engine.set_cache(CodimCache::load(path)?);
    }
    let pairs: Vec<(usize, usize)> = match (args.k, args.l, args.total) {
        (Some(k), Some(l), _) => vec![(k, l)],
        (_, _, Some(n)) => {
            // rejects n above the ceiling before any work
            engine.total_codim(n)?;
            (0..=n).map(|k| (k, n - k)).collect()
        }
        _ => return Err(Error::Precondition("give --k and --l, or --total".into())),
    };
    let mut rows = Vec::new();
    for (k, l) in pairs {
        let rec = engine.codim_record(k, l)?;
        rows.push(
            CheckRow::new(
                "codim",
                format!("algebra={} k={k} l={l}", rec.request.algebra_id),
                BigUint::from(rec.value),
                "rank of",
                ExactValue::Element(format!("{}x{}", rec.n_rows, rec.n_cols)),
                Verdict::Info,
            ),
        );
    }
    if let Some(n) = args.total {
        let total = engine.total_codim(n)?;
        rows.push(CheckRow::new(
            "codim-total",
            format!("algebra={} n={n}", engine.algebra().id()),
            total,
            "=",
            ExactValue::Element("sum_k C(n,k) c(k,n-k)".into()),
            Verdict::Info,
        ));
    }
    if let Some(path) = &args.cache {
        engine.cache().save(path)?;
    }
    Ok(rows)
}

fn cmd_witness(which: &WitnessCmd) -> Result<Vec<CheckRow>> {
    let alg = Arc::new(build_b2());
    let vals = WitnessValues::new(&alg)?;
    let rows = match which {
        WitnessCmd::Eq1(a) => vec![witness::verify_eq1(&vals, spec(a)?.t)?.row()],
        WitnessCmd::Eq3a(a) => vec![witness::verify_eq3a(&vals, spec(a)?.t)?.row()],
        WitnessCmd::Eq6(a) => vec![witness::verify_eq6(&vals, a.k, a.layout.into())?.row()],
        WitnessCmd::WPrime(a) => vec![witness::verify_w_prime(&vals, a.k, a.layout.into())?.row()],
        WitnessCmd::U(a) => vec![witness::verify_u(&vals, spec(a)?.t, a.k, a.layout.into())?.row()],
        WitnessCmd::Lemma4(a) => {
            let s = spec(a)?;
            let tails: Vec<usize> = match a.i {
                Some(i) => vec![i],
                None => (1..=witness::MAX_TAIL).collect(),
            };
            if tails.contains(&0) {
                return Err(Error::Precondition("--i must be between 1 and 5".into()));
            }
            witness::verify_lemma4(&vals, s.t, s.k, &tails, a.layout.into())?
                .iter()
                .map(|o| o.row())
                .collect()
        }
    };
    Ok(rows)
}

fn spec(a: &WitnessArgs) -> Result<WitnessSpec> {
    WitnessSpec::new(a.t, a.k, a.i.unwrap_or(0))
}

fn cmd_bounds(which: &BoundsCmd) -> Result<Vec<CheckRow>> {
    match which {
        BoundsCmd::Lemma1 { n, max_parts, partition, explore } => match (partition, n) {
            (Some(p), _) => bounds::lemma1_check(&p.parse::<Partition>()?, *explore),
            (None, Some(n)) => Ok(bounds::lemma1_grid(*n, *max_parts, *explore)?.rows()),
            (None, None) => Err(Error::Precondition("give --n or --partition".into())),
        },
        BoundsCmd::Eq4 { t } => (1..=*t).map(bounds::eq4_check).collect(),
        BoundsCmd::Eq7 { k } => (1..=*k).map(bounds::eq7_check).collect(),
        BoundsCmd::Lemma2 { t, k } => lemma2_rows(*t, *k),
        BoundsCmd::Lemma3 { n } => {
            let bound = bounds::lemma3_bound(*n)?;
            let mid = bounds::lemma3_intermediate(*n)?;
            growth_rows(*n, bound, Some(mid))
        }
        BoundsCmd::Lemma5 { n } => growth_rows(*n, bounds::lemma5_bound(*n)?, None),
        BoundsCmd::Binomial { q } => Ok((0..=*q).map(bounds::binomial_identity_check).collect()),
        BoundsCmd::BinomStep { n, i } => match i {
            Some(i) => Ok(vec![bounds::binom_step_check(*n, *i)?]),
            None => (0..*n).map(|i| bounds::binom_step_check(*n, i)).collect(),
        },
        BoundsCmd::Phi { partition, places } => {
            let mu: Partition = partition.parse()?;
            Ok(vec![
                {
                    let (hooks, tableaux) = (mu.hook_degree(), bounds::count_tableaux(mu.parts()));
                    let ok = hooks == tableaux;
                    CheckRow::new("hook-degree", format!("mu={mu}"), hooks, "=", tableaux, Verdict::from_bool(ok))
                }
                    .with_note("hook length formula vs tableau count"),
                CheckRow::new("phi", format!("mu={mu}"), mu.phi_pow_n(), "=", ExactValue::Element(format!("Phi^{}", mu.n())), Verdict::Info)
                    .with_note(format!("Phi ~ {}", mu.phi_decimal(*places))),
            ])
        }
    }
}

fn lemma2_rows(t: usize, k: usize) -> Result<Vec<CheckRow>> {
    let bound = bounds::lemma2_bound(t, k)?;
    let alg = Arc::new(build_b2());
    let vals = WitnessValues::new(&alg)?;
    match witness::verify_u(&vals, t, k, WLayout::AlternatedTail) {
        Ok(u) => {
            let certified = BigUint::from(u32::from(!u.computed.is_zero()));
            let source = format!("u with {} terms evaluates to {}", u.terms, u.computed);
            Ok(vec![bounds::lemma2_compare(t, k, &certified, &source)?])
        }
        Err(Error::Ceiling(msg)) => Ok(vec![CheckRow::new(
            "lemma2",
            format!("t={t} k={k}"),
            bound,
            "<=",
            ExactValue::Element(format!("c({},{})", 3 * t + 1, 6 * k + 6)),
            Verdict::Info,
        )
        .with_note(format!("no certificate: {msg}"))]),
        Err(e) => Err(e),
    }
}

fn growth_rows(
    n: usize,
    bound: QuadExt3,
    intermediate: Option<QuadExt3>,
) -> Result<Vec<CheckRow>> {
    let mut engine = CodimEngine::new(Arc::new(build_b2()));
    if n <= engine.config().max_degree {
        let total = engine.total_codim(n)?;
        return bounds::growth_compare(n, &total);
    }
    let route = bounds::GrowthRoute::for_n(n)?;
    let mut rows = vec![CheckRow::new(
        route.name(),
        format!("n={n}"),
        ExactValue::Element(format!("c_{n}")),
        ">=",
        bound.clone(),
        Verdict::Info,
    )
    .with_note(format!("bound ~ {:.3e}; c_{n} beyond the codimension ceiling", bound.approx_f64()))];
    if let Some(mid) = intermediate {
        rows.push(
            CheckRow::new("lemma3-forms", format!("n={n}"), mid.clone(), ">=", bound.clone(), Verdict::from_bool(mid >= bound))
                .with_note("intermediate form vs final form"),
        );
    }
    Ok(rows)
}

fn cmd_poly_check(file: &Path, algebra: &str, expect: Option<Expect>) -> Result<Vec<CheckRow>> {
    let alg = load_algebra(algebra)?;
    let p = parse_poly(&std::fs::read_to_string(file)?)?;
    let engine = CodimEngine::new(Arc::clone(&alg));
    let verdict = engine.is_graded_identity(&p)?;
    let answer = match &verdict {
        IdentityVerdict::Identity => "identity".to_string(),
        IdentityVerdict::NotIdentity { assignment, value } => {
            let pairs: Vec<String> = p
                .var_names()
                .iter()
                .zip(assignment)
                .map(|(v, &b)| format!("{v}={}", alg.name(b)))
                .collect();
            format!(
                "not identity: {} gives {}",
                pairs.join(" "),
                format_coords(alg.names(), value)
            )
        }
    };
    let (rhs, v) = match expect {
        None => ("graded identity?", Verdict::Info),
        Some(Expect::Identity) => ("identity", Verdict::from_bool(verdict.is_identity())),
        Some(Expect::NonIdentity) => ("not identity", Verdict::from_bool(!verdict.is_identity())),
    };
    Ok(vec![CheckRow::new(
        "poly-check",
        format!("file={}", file.display()),
        ExactValue::Element(answer),
        "vs",
        ExactValue::Element(rhs.into()),
        v,
    )
    .with_note(format!("{} terms, degree {:?}", p.len(), p.degree()))])
}

fn cmd_cache(action: &CacheCmd, path: Option<&Path>) -> Result<Vec<CheckRow>> {
    let path = path.ok_or_else(|| Error::Precondition("no cache path: pass --cache or set SUPERCODIM_CACHE".into()))?;
    match action {
        CacheCmd::Inspect => {
            let cache = CodimCache::load(path)?;
            Ok(cache
                .records()
                .map(|r| {
                    CheckRow::new(
                        "cache",
                        format!("algebra={} k={} l={}", r.request.algebra_id, r.request.k, r.request.l),
                        BigUint::from(r.value),
                        "rank of",
                        ExactValue::Element(format!("{}x{}", r.n_rows, r.n_cols)),
                        Verdict::Info,
                    )
                    .with_note(r.timestamp.to_rfc3339())
                })
                .collect())
        }
        CacheCmd::Clear => {
            let existed = path.exists();
            if existed {
                std::fs::remove_file(path)?;
            }
            Ok(vec![CheckRow::new(
                "cache-clear",
                format!("path={}", path.display()),
                ExactValue::Element(if existed { "removed" } else { "absent" }.into()),
                "=",
                ExactValue::Element("cleared".into()),
                Verdict::Info,
            )])
        }
    }
}

fn run(cli: &Cli) -> Result<Vec<CheckRow>> {
    let rows = match &cli.command {
        Command::Axioms { algebra } => cmd_axioms(algebra)?,
        Command::Codim(args) => cmd_codim(args)?,
        Command::Witness { which } => cmd_witness(which)?,
        Command::Bounds { which } => cmd_bounds(which)?,
        Command::PolyCheck { file, algebra, expect } => cmd_poly_check(file, algebra, *expect)?,
        Command::Cache { action, cache } => cmd_cache(action, cache.as_deref())?,
    };
    Ok(rows)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|rows| Ok((render(&rows, cli.format.into())?, rows))) {
        Ok((out, rows)) => {
            print!("{out}");
            if rows.iter().any(CheckRow::is_failure) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
