use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gtcond::analysis::{
    lemma1_chain_check, lemma1_check, lemma2_check, lemma3_bound, verify_correcting,
};
use gtcond::condense::{
    codeword_graph_matrix, induced_code, kautz_singleton_matrix, plan_extractor_style_with,
    plan_lossless_style_with, random_function, PlanOptions, PlannedScheme, SchemeParams,
};
use gtcond::decode::{threshold_count, threshold_decode};
use gtcond::gtcore::format::{
    matrix_to_string, observation_to_string, parse_matrix, parse_observation, parse_support,
    support_to_string,
};
use gtcond::mixtures::check_list_bound_planned;
use gtcond::noise::{corrupt_random, greedy_attack, DEFAULT_ENUM_CAP};
use gtcond::scalar::parse_frac;
use gtcond::sweep::{run_sweep, write_csv, GridPoint, MatrixSource, SweepConfig};
use gtcond::{encode, Error, Frac, NoiseBudget, Result};

#[derive(Parser, Debug)]
#[command(
    name = "gtcond",
    version,
    about = "Noisy non-adaptive group testing with condenser-based matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a measurement matrix (GTM1).
    Gen(GenArgs),
    /// Plan scheme parameters and print them as key=value lines.
    Plan(PlanArgs),
    /// Encode a support (GTV1) into an observation.
    Encode(EncodeArgs),
    /// Apply bounded noise to an observation.
    Corrupt(CorruptArgs),
    /// Threshold-decode an observation into a support.
    Decode(DecodeArgs),
    /// Exhaustively verify a matrix, or check the list-size bound on a planned table.
    Verify(VerifyArgs),
    /// Print the trade-off and counting bounds for given parameters.
    Bounds(BoundsArgs),
    /// Run a Monte Carlo sweep over noise budgets and write CSV.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Random,
    KautzSingleton,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, value_enum, default_value = "random")]
    kind: Kind,
    /// Input bits: the universe is 2^n.
    #[arg(long)]
    n_bits: Option<u32>,
    /// Seed bits: the block length is 2^t.
    #[arg(long)]
    t_bits: Option<u32>,
    /// Output bits: the alphabet is 2^l.
    #[arg(long)]
    l_bits: Option<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Field size for Kautz–Singleton.
    #[arg(long)]
    q: Option<u32>,
    /// Message length for Kautz–Singleton (universe q^w).
    #[arg(long)]
    w: Option<u32>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Style {
    Extractor,
    Lossless,
}

#[derive(Args, Debug, Clone)]
struct PlanArgs {
    #[arg(long, value_enum, default_value = "extractor")]
    style: Style,
    /// Sparsity D.
    #[arg(long)]
    sparsity: u64,
    /// Universe size N (rounded up to a power of two).
    #[arg(long)]
    universe: u64,
    /// False-positive rate p, as a fraction or decimal.
    #[arg(long, value_parser = frac_arg, default_value = "0")]
    p: Frac,
    /// False-negative rate ν.
    #[arg(long, value_parser = frac_arg, default_value = "0")]
    nu: Frac,
    /// Allowed relative output overhead δ (lossless style).
    #[arg(long, value_parser = frac_arg)]
    delta: Option<Frac>,
    /// Override the seed length t.
    #[arg(long)]
    t_bits: Option<u32>,
}

#[derive(Args, Debug)]
struct EncodeArgs {
    #[arg(long)]
    matrix: PathBuf,
    #[arg(long)]
    support: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Random,
    Greedy,
}

#[derive(Args, Debug)]
struct CorruptArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, default_value_t = 0)]
    e0: usize,
    #[arg(long, default_value_t = 0)]
    e1: usize,
    #[arg(long, value_enum, default_value = "random")]
    mode: Mode,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Matrix the observation came from (greedy mode).
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Planted support (greedy mode).
    #[arg(long)]
    support: Option<PathBuf>,
    /// Block length the attacked decoder uses (greedy mode).
    #[arg(long = "T")]
    block_length: Option<u64>,
    /// ν/γ of the attacked decoder (greedy mode).
    #[arg(long, value_parser = frac_arg)]
    nu_over_gamma: Option<Frac>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DecodeArgs {
    #[arg(long)]
    matrix: PathBuf,
    #[arg(long)]
    obs: PathBuf,
    /// Block length T (uniform column weight).
    #[arg(long = "T")]
    block_length: u64,
    #[arg(long, value_parser = frac_arg, default_value = "0")]
    nu_over_gamma: Frac,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Check the list-size bound on a planned random table instead.
    #[arg(long)]
    list_bound: bool,
    #[arg(long, required_unless_present = "list_bound")]
    matrix: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    d: usize,
    #[arg(long, default_value_t = 0)]
    e0: usize,
    #[arg(long, default_value_t = 0)]
    e1: usize,
    #[arg(long, default_value_t = 0)]
    acc_e0: usize,
    /// Enumeration cap; defaults to GT_ENUM_CAP or 10^7.
    #[arg(long)]
    cap: Option<u128>,
    /// Planner sparsity (list-bound mode).
    #[arg(long, default_value_t = 4)]
    sparsity: u64,
    #[arg(long, default_value_t = 256)]
    universe: u64,
    #[arg(long, value_parser = frac_arg, default_value = "0")]
    p: Frac,
    #[arg(long, value_parser = frac_arg, default_value = "0")]
    nu: Frac,
    #[arg(long, default_value_t = 200)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    e0: usize,
    #[arg(long, default_value_t = 0)]
    e1: usize,
    #[arg(long, default_value_t = 0)]
    e0p: usize,
    #[arg(long, default_value_t = 0)]
    e1p: usize,
    #[arg(long, value_parser = frac_arg, default_value = "1/2")]
    eps: Frac,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Use an explicit GTM1 matrix instead of a planned one.
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Block length of the explicit matrix.
    #[arg(long = "T")]
    block_length: Option<u64>,
    #[arg(long, value_parser = frac_arg, default_value = "0")]
    nu_over_gamma: Frac,
    /// Success requires an output smaller than K (explicit matrix).
    #[arg(long = "K")]
    list_cap: Option<u64>,
    #[arg(long, default_value_t = 4)]
    sparsity: u64,
    #[arg(long, default_value_t = 256)]
    universe: u64,
    /// Planner rates; the matrix is planned for these.
    #[arg(long, value_parser = frac_arg, default_value = "0")]
    p: Frac,
    #[arg(long, value_parser = frac_arg, default_value = "0")]
    nu: Frac,
    /// Seed for drawing the planned table.
    #[arg(long, default_value_t = 0)]
    table_seed: u64,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated flip budgets `e0:e1`.
    #[arg(long, value_delimiter = ',')]
    grid: Vec<String>,
    /// Comma-separated rate pairs `p:nu`, converted to (⌊pM⌋, ⌊νM/D⌋).
    #[arg(long, value_delimiter = ',')]
    rate_grid: Vec<String>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn frac_arg(s: &str) -> std::result::Result<Frac, String> {
    parse_frac(s).map_err(|e| e.to_string())
}

fn pair<T>(s: &str, parse: impl Fn(&str) -> Option<T>) -> Result<(T, T)> {
    let bad = || Error::InvalidParameter(format!("expected a:b, got {s:?}"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    Ok((
        parse(a.trim()).ok_or_else(bad)?,
        parse(b.trim()).ok_or_else(bad)?,
    ))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn enum_cap(flag: Option<u128>) -> Result<u128> {
    if let Some(c) = flag {
        return Ok(c);
    }
    match std::env::var("GT_ENUM_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("GT_ENUM_CAP = {v:?} is not an integer"))),
        Err(_) => Ok(DEFAULT_ENUM_CAP),
    }
}

fn plan(args: &PlanArgs) -> Result<SchemeParams> {
    let opts = PlanOptions {
        t_bits: args.t_bits,
        ..PlanOptions::default()
    };
    match args.style {
        Style::Extractor => {
            plan_extractor_style_with(args.sparsity, args.universe, args.p, args.nu, &opts)
        }
        Style::Lossless => {
            let delta = args
                .delta
                .ok_or_else(|| Error::InvalidParameter("lossless style needs --delta".into()))?;
            plan_lossless_style_with(args.sparsity, args.universe, delta, &opts)
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gen(a) => {
            let matrix = match a.kind {
                Kind::Random => {
                    let need = |v: Option<u32>, name: &str| {
                        v.ok_or_else(|| {
                            Error::InvalidParameter(format!("--kind random needs --{name}"))
                        })
                    };
                    let f = random_function(
                        need(a.n_bits, "n-bits")?,
                        need(a.t_bits, "t-bits")?,
                        need(a.l_bits, "l-bits")?,
                        a.seed,
                    )?;
                    codeword_graph_matrix(&induced_code(&f))
                }
                Kind::KautzSingleton => {
                    let q = a.q.ok_or_else(|| {
                        Error::InvalidParameter("--kind kautz-singleton needs --q".into())
                    })?;
                    let w = a.w.ok_or_else(|| {
                        Error::InvalidParameter("--kind kautz-singleton needs --w".into())
                    })?;
                    kautz_singleton_matrix(q, w)?
                }
            };
            emit(a.out.as_deref(), &matrix_to_string(&matrix))
        }
        Command::Plan(a) => {
            let params = plan(&a)?;
            emit(None, &params.to_kv_lines())
        }
        Command::Encode(a) => {
            let m = parse_matrix(&fs::read_to_string(&a.matrix)?)?;
            let x = parse_support(&fs::read_to_string(&a.support)?)?;
            emit(a.out.as_deref(), &observation_to_string(&encode(&m, &x)?))
        }
        Command::Corrupt(a) => {
            let y = parse_observation(&fs::read_to_string(&a.input)?)?;
            let budget = NoiseBudget::new(a.e0, a.e1);
            let c = match a.mode {
                Mode::Random => corrupt_random(&y, budget, a.seed),
                Mode::Greedy => {
                    let missing =
                        |f: &str| Error::InvalidParameter(format!("--mode greedy needs --{f}"));
                    let m = parse_matrix(&fs::read_to_string(
                        a.matrix.ok_or_else(|| missing("matrix"))?,
                    )?)?;
                    let x = parse_support(&fs::read_to_string(
                        a.support.ok_or_else(|| missing("support"))?,
                    )?)?;
                    let t = a.block_length.ok_or_else(|| missing("T"))?;
                    let nog = a.nu_over_gamma.unwrap_or_default();
                    if encode(&m, &x)? != y {
                        return Err(Error::InvalidParameter(
                            "observation is not the encoding of the support".into(),
                        ));
                    }
                    greedy_attack(&m, &x, budget, threshold_count(t, nog) as i64)?
                }
            };
            eprintln!(
                "applied_e0={} applied_e1={} capped={}",
                c.applied.e0, c.applied.e1, c.capped
            );
            emit(a.out.as_deref(), &observation_to_string(&c.output))
        }
        Command::Decode(a) => {
            let m = parse_matrix(&fs::read_to_string(&a.matrix)?)?;
            let y = parse_observation(&fs::read_to_string(&a.obs)?)?;
            let r = threshold_decode(&m, &y, a.block_length, a.nu_over_gamma)?;
            eprintln!(
                "decoded_weight={} threshold_count={}",
                r.support.weight(),
                r.threshold_count
            );
            emit(a.out.as_deref(), &support_to_string(&r.support))
        }
        Command::Verify(a) => {
            if a.list_bound {
                let params = plan_extractor_style_with(
                    a.sparsity,
                    a.universe,
                    a.p,
                    a.nu,
                    &PlanOptions::default(),
                )?;
                let scheme = PlannedScheme::realize(params, a.seed)?;
                let r = check_list_bound_planned(&scheme, a.trials, a.seed)?;
                let text = format!(
                    "samples={}\nchecked={}\nvacuous={}\nbound={}\nmax_list={}\nviolations={}\n",
                    r.samples, r.checked, r.vacuous, r.bound, r.max_list, r.violations
                );
                return emit(None, &text);
            }
            let path = a.matrix.expect("required unless --list-bound");
            let m = parse_matrix(&fs::read_to_string(path)?)?;
            let budget = NoiseBudget::new(a.e0, a.e1);
            let r = verify_correcting(
                &m,
                a.d,
                budget,
                NoiseBudget::new(a.acc_e0, 0),
                enum_cap(a.cap)?,
            )?;
            let mut text = format!(
                "passed={}\npairs={}\ndistinct_observations={}\n",
                r.passed, r.pairs, r.distinct_observations
            );
            if let Some(w) = &r.witness {
                text.push_str(&format!(
                    "witness_observation={}\nwitness_union={:?}\nwitness_consistent={:?}\n",
                    w.observation,
                    w.union.indices(),
                    w.consistent.indices()
                ));
            }
            if a.d >= 1 && m.rows() >= 1 {
                text.push_str(&lemma1_check(m.rows(), a.d, a.e0, a.e1, a.acc_e0, 0)?.to_kv_lines());
            }
            emit(None, &text)
        }
        Command::Bounds(a) => {
            let mut text = lemma1_check(a.m, a.d, a.e0, a.e1, a.e0p, a.e1p)?.to_kv_lines();
            text.push_str(&lemma1_chain_check(a.m, a.d, a.e0, a.e1, a.e0p, a.e1p)?.to_kv_lines());
            text.push_str(&lemma2_check(a.m, a.d, a.n, a.e1, a.e0p, a.e1p, a.eps)?.to_kv_lines());
            let (n, d, e0p, e1p) = (a.n as u64, a.d as u64, a.e0p as u64, a.e1p as u64);
            text.push_str(
                &lemma3_bound(n, d, e0p, e1p)?
                    .to_report(n, d, e0p, e1p)
                    .to_kv_lines(),
            );
            emit(None, &text)
        }
        Command::Sweep(a) => {
            let Format::Csv = a.format;
            let source = match &a.matrix {
                Some(path) => {
                    let m = parse_matrix(&fs::read_to_string(path)?)?;
                    let t = a
                        .block_length
                        .or_else(|| m.uniform_column_weight().map(|w| w as u64))
                        .ok_or_else(|| {
                            Error::InvalidParameter(
                                "matrix has no uniform column weight; pass --T".into(),
                            )
                        })?;
                    MatrixSource::Given {
                        list_cap: a.list_cap.unwrap_or(u64::MAX),
                        matrix: m,
                        block_length: t,
                        nu_over_gamma: a.nu_over_gamma,
                    }
                }
                None => MatrixSource::Planned {
                    params: plan_extractor_style_with(
                        a.sparsity,
                        a.universe,
                        a.p,
                        a.nu,
                        &PlanOptions::default(),
                    )?,
                    table_seed: a.table_seed,
                },
            };
            let mut grid = Vec::new();
            for g in &a.grid {
                let (e0, e1) = pair(g, |s| s.parse::<usize>().ok())?;
                grid.push(GridPoint::Budget(NoiseBudget::new(e0, e1)));
            }
            for g in &a.rate_grid {
                let (p, nu) = pair(g, |s| parse_frac(s).ok())?;
                grid.push(GridPoint::Rates { p, nu });
            }
            if grid.is_empty() {
                grid.push(GridPoint::Budget(NoiseBudget::NONE));
            }
            let cfg = SweepConfig {
                source,
                sparsity: a.sparsity as usize,
                trials: a.trials,
                seed: a.seed,
                grid,
            };
            let rows = run_sweep(&cfg)?;
            match &a.out {
                Some(p) => write_csv(&rows, fs::File::create(p)?),
                None => write_csv(&rows, io::stdout().lock()),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Io(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
