use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use essbmf::algorithms::{asso, grecon, grecond, greess, AssoParams, FactorizationResult, DEFAULT_GRECON_CONCEPT_CAP};
use essbmf::boolmat::factors_to_matrices;
use essbmf::essential::{boolean_rank_oracle, essential_report, DEFAULT_RANK_CONCEPT_CAP};
use essbmf::eval::{curve_csv, essential_csv, run_experiment, thresholds_csv, Algorithm, ExperimentConfig};
use essbmf::io::{format_concepts, format_matrix, load_matrix, to_dense_string, MatrixFormat};
use essbmf::synth::{add_noise, gen_planted, NoiseKind, NoiseSpec, SynthSpec};
use essbmf::{BmfError, BooleanMatrix, FactorSet};

#[derive(Parser)]
#[command(name = "essbmf", version, about = "Boolean matrix factorization from below")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Factorize a matrix and write the factors as a concept list.
    Factorize(FactorizeArgs),
    /// Write the essential part E(I) of a matrix.
    Essential(EssentialArgs),
    /// Exact Boolean rank of a small matrix.
    Rank(RankArgs),
    /// Generate planted product matrices.
    Synth(SynthArgs),
    /// Flip cells of a matrix at random.
    Noise(NoiseArgs),
    /// Run a batch experiment and write curve, threshold and essential CSVs.
    Eval(EvalArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Matrix file.
    #[arg(long)]
    input: PathBuf,
    /// Input format.
    #[arg(long, default_value = "dense")]
    format: MatrixFormat,
    /// Column count for sparse input without a `#cols=` header.
    #[arg(long)]
    cols: Option<usize>,
}

impl InputArgs {
    fn load(&self) -> Result<BooleanMatrix, CliError> {
        load_matrix(&self.input, self.format, self.cols).map_err(|e| CliError::input(&self.input, e))
    }
}

#[derive(Args)]
struct FactorizeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value = "greess")]
    algorithm: Algorithm,
    /// Stop once at most this many 1s are uncovered.
    #[arg(long, conflicts_with = "max_factors")]
    epsilon: Option<usize>,
    /// Stop after this many factors (required for asso).
    #[arg(long)]
    max_factors: Option<usize>,
    #[arg(long, default_value_t = 0.85)]
    tau: f64,
    #[arg(long, default_value_t = 1.0)]
    wplus: f64,
    #[arg(long, default_value_t = 1.0)]
    wminus: f64,
    /// Concept enumeration cap for grecon.
    #[arg(long, default_value_t = DEFAULT_GRECON_CONCEPT_CAP)]
    max_concepts: usize,
    /// Concept list output; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Dense dump of the object-factor matrix A.
    #[arg(long)]
    a_out: Option<PathBuf>,
    /// Dense dump of the factor-attribute matrix B.
    #[arg(long)]
    b_out: Option<PathBuf>,
    /// Per-step CSV `step,e_u,e_o`.
    #[arg(long)]
    steps_out: Option<PathBuf>,
}

#[derive(Args)]
struct EssentialArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Dense E(I) output; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RankArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Refuse inputs with more formal concepts than this.
    #[arg(long, default_value_t = DEFAULT_RANK_CONCEPT_CAP)]
    max_concepts: usize,
    /// Only use concepts whose interval holds an essential cell.
    #[arg(long)]
    restrict: bool,
}

#[derive(Args)]
struct SpecArgs {
    #[arg(long)]
    rows: usize,
    #[arg(long)]
    cols: usize,
    /// Planted factor count.
    #[arg(long)]
    k: usize,
    #[arg(long)]
    dens_a: f64,
    #[arg(long)]
    dens_b: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    count: usize,
}

impl SpecArgs {
    fn spec(&self) -> SynthSpec {
        SynthSpec {
            n_rows: self.rows,
            n_cols: self.cols,
            k_true: self.k,
            dens_a: self.dens_a,
            dens_b: self.dens_b,
            seed: self.seed,
            count: self.count,
        }
    }
}

#[derive(Args)]
struct SynthArgs {
    #[command(flatten)]
    spec: SpecArgs,
    #[arg(long)]
    out_dir: PathBuf,
    /// Output format.
    #[arg(long, default_value = "dense")]
    format: MatrixFormat,
}

#[derive(Args)]
struct NoiseArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long = "type")]
    kind: NoiseKind,
    #[arg(long)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output in the input format; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Comma-separated algorithm list.
    #[arg(long, value_delimiter = ',', default_value = "greess,grecond")]
    algorithms: Vec<Algorithm>,
    #[arg(long, default_value_t = 0)]
    epsilon: usize,
    #[arg(long, value_delimiter = ',', default_value = "5,10,15,20,25")]
    k_grid: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "0.25,0.5,0.75,1")]
    thresholds: Vec<f64>,
    #[arg(long = "noise-type")]
    noise_type: Option<NoiseKind>,
    #[arg(long, default_value_t = 0.0, requires = "noise_type")]
    p: f64,
    #[arg(long, default_value_t = 0)]
    noise_seed: u64,
    /// Measure coverage against the noise-free matrix.
    #[arg(long)]
    against_clean: bool,
    /// Factor count for asso.
    #[arg(long, default_value_t = 30)]
    asso_k: usize,
    #[arg(long, default_value_t = 0.85)]
    tau: f64,
    #[arg(long, default_value_t = 1.0)]
    wplus: f64,
    #[arg(long, default_value_t = 1.0)]
    wminus: f64,
    #[arg(long, default_value_t = DEFAULT_GRECON_CONCEPT_CAP)]
    max_concepts: usize,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long)]
    out_dir: PathBuf,
}

/// An error together with the exit code it maps to.
#[derive(Debug)]
struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError { code: 1, message: message.into() }
    }

    fn input(path: &Path, e: BmfError) -> Self {
        match e {
            BmfError::Parse { .. } | BmfError::Io(_) => CliError {
                code: 2,
                message: format!("{}: {e}", path.display()),
            },
            other => other.into(),
        }
    }
}

impl From<BmfError> for CliError {
    fn from(e: BmfError) -> Self {
        let code = match e {
            BmfError::ConceptCapExceeded { .. } => 3,
            BmfError::Parse { .. } | BmfError::Io(_) | BmfError::DimensionMismatch { .. } => 2,
            _ => 1,
        };
        CliError { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError { code: 2, message: e.to_string() }
    }
}

/// Writes via a temporary file in the target directory and renames it into place.
fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn emit(out: Option<&Path>, contents: &str) -> Result<(), CliError> {
    match out {
        Some(p) => write_atomic(p, contents),
        None => {
            std::io::stdout().write_all(contents.as_bytes())?;
            Ok(())
        }
    }
}

/// Keeps the first `k` factors of a greedy run; greedy choices never depend
/// on later ones, so this equals stopping after `k` steps.
fn truncate(m: &BooleanMatrix, r: FactorizationResult, k: usize) -> FactorizationResult {
    if r.len() <= k {
        return r;
    }
    let f = &r.factors;
    let prefix = FactorSet::from_concepts(f.n_rows(), f.n_cols(), f.concepts()[..k].to_vec());
    FactorizationResult::from_factors(m, prefix)
}

fn factorize(args: &FactorizeArgs) -> Result<(), CliError> {
    let m = args.input.load()?;
    let epsilon = args.epsilon.unwrap_or(0);
    let result = match args.algorithm {
        Algorithm::GreEss => {
            let eps = if args.max_factors.is_some() { 0 } else { epsilon };
            let r = greess(&m, eps)?;
            match args.max_factors {
                Some(k) => truncate(&m, r, k),
                None => r,
            }
        }
        Algorithm::GreConD => grecond(&m, epsilon, args.max_factors),
        Algorithm::GreCon => {
            let eps = if args.max_factors.is_some() { 0 } else { epsilon };
            let r = grecon(&m, eps, args.max_concepts)?;
            match args.max_factors {
                Some(k) => truncate(&m, r, k),
                None => r,
            }
        }
        Algorithm::Asso => {
            let k = args
                .max_factors
                .ok_or_else(|| CliError::usage("asso needs --max-factors"))?;
            let params = AssoParams {
                k,
                tau: args.tau,
                w_plus: args.wplus,
                w_minus: args.wminus,
            };
            asso(&m, &params)?.result
        }
    };

    emit(args.out.as_deref(), &format_concepts(result.factors.iter()))?;
    if args.a_out.is_some() || args.b_out.is_some() {
        let (a, b) = factors_to_matrices(&result.factors, result.len())?;
        if let Some(p) = &args.a_out {
            write_atomic(p, &to_dense_string(&a))?;
        }
        if let Some(p) = &args.b_out {
            write_atomic(p, &to_dense_string(&b))?;
        }
    }
    if let Some(p) = &args.steps_out {
        let mut s = format!("step,e_u,e_o\n0,{},0\n", m.count_ones());
        for (l, (u, o)) in result.per_step.iter().enumerate() {
            s.push_str(&format!("{},{u},{o}\n", l + 1));
        }
        write_atomic(p, &s)?;
    }
    eprintln!(
        "{}: {} factors, e_u={}, e_o={}",
        args.algorithm.name(),
        result.len(),
        result.residual_uncovered,
        result.residual_overcovered
    );
    Ok(())
}

fn essential(args: &EssentialArgs) -> Result<(), CliError> {
    let m = args.input.load()?;
    let rep = essential_report(&m);
    emit(args.out.as_deref(), &to_dense_string(&rep.essential))?;
    eprintln!(
        "ones_I={}, ones_E={}, ratio={:.4}{}",
        rep.ones_input,
        rep.ones_essential,
        rep.ratio,
        if rep.zero_input { " (zero input)" } else { "" }
    );
    Ok(())
}

fn rank(args: &RankArgs) -> Result<(), CliError> {
    let m = args.input.load()?;
    let r = boolean_rank_oracle(&m, args.restrict, args.max_concepts)?;
    println!("{r}");
    Ok(())
}

fn synth(args: &SynthArgs) -> Result<(), CliError> {
    let spec = args.spec.spec();
    std::fs::create_dir_all(&args.out_dir)?;
    let ext = match args.format {
        MatrixFormat::Dense => "dense",
        MatrixFormat::Sparse => "sparse",
    };
    for d in 0..spec.count {
        let planted = gen_planted(&spec, d)?;
        let path = args.out_dir.join(format!("dataset_{d:04}.{ext}"));
        write_atomic(&path, &format_matrix(&planted.input, args.format))?;
    }
    write_atomic(&args.out_dir.join("metadata.txt"), &spec.metadata())?;
    eprintln!("wrote {} datasets to {}", spec.count, args.out_dir.display());
    Ok(())
}

fn noise(args: &NoiseArgs) -> Result<(), CliError> {
    let m = args.input.load()?;
    let noisy = add_noise(
        &m,
        &NoiseSpec {
            kind: args.kind,
            p: args.p,
            seed: args.seed,
        },
    )?;
    emit(args.out.as_deref(), &format_matrix(&noisy, args.input.format))
}

fn eval(args: &EvalArgs) -> Result<(), CliError> {
    let mut cfg = ExperimentConfig::new(args.spec.spec(), args.algorithms.clone());
    cfg.epsilon = args.epsilon;
    cfg.k_grid = args.k_grid.clone();
    cfg.thresholds = args.thresholds.clone();
    cfg.noise = args.noise_type.map(|kind| NoiseSpec {
        kind,
        p: args.p,
        seed: args.noise_seed,
    });
    cfg.against_clean = args.against_clean;
    cfg.asso = AssoParams {
        k: args.asso_k,
        tau: args.tau,
        w_plus: args.wplus,
        w_minus: args.wminus,
    };
    cfg.grecon_cap = args.max_concepts;
    cfg.threads = args.threads;
    let report = run_experiment(&cfg)?;

    std::fs::create_dir_all(&args.out_dir)?;
    write_atomic(&args.out_dir.join("curve.csv"), &curve_csv(&report))?;
    write_atomic(&args.out_dir.join("thresholds.csv"), &thresholds_csv(&report))?;
    write_atomic(&args.out_dir.join("essential.csv"), &essential_csv(&report))?;

    eprintln!(
        "{} datasets, mean density {:.4}, mean essential ratio {:.4}",
        args.spec.count, report.mean_density, report.mean_essential_ratio
    );
    for a in &report.algorithms {
        let at: Vec<String> = a.at_k.iter().map(|(k, c)| format!("k={k}:{c:.4}")).collect();
        eprintln!(
            "{:8} {}  mean factors {:.2}  {:.2?}",
            a.algorithm.name(),
            at.join(" "),
            a.mean_factors,
            a.elapsed
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let outcome = match &cli.command {
        Command::Factorize(a) => factorize(a),
        Command::Essential(a) => essential(a),
        Command::Rank(a) => rank(a),
        Command::Synth(a) => synth(a),
        Command::Noise(a) => noise(a),
        Command::Eval(a) => eval(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
