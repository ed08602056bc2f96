//! Command-line front door: enumeration, complexity scoring, guessing,
//! synthesis, evaluation and cipher dictionary inspection.
//!
//! Exit codes: 0 success, 1 domain failure (no candidates, all
//! trajectories invalid), 2 usage or parse error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use pattern_oracle::config::{load_from_env, GlobalConfig, OutputFormat};
use pattern_oracle::engine::{EngineError, GuessConfig};
use pattern_oracle::eval::{
    feature_correlation_experiment, generate_corpus, load_corpus, success_curve, write_corpus,
    CorpusSpec,
};
use pattern_oracle::pattern::{enumerate_valid_patterns, Pattern};
use pattern_oracle::synth::{synthesize_trajectory, SynthConfig};
use pattern_oracle::trajectory::{load_trajectory, save_trajectory};
use pattern_oracle::{build_cipher_dictionary, complexity_score, guess_detailed, score_histogram};

#[derive(Parser)]
#[command(name = "pattern-oracle", version, about = "Unlock-pattern reconstruction toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the valid pattern space.
    Enumerate(EnumerateArgs),
    /// Score pattern complexity.
    Complexity(ComplexityArgs),
    /// Reconstruct ranked pattern candidates from trajectory files.
    Guess(GuessArgs),
    /// Render a synthetic trajectory for a pattern.
    Synth(SynthArgs),
    /// Evaluate success curves over a labeled corpus.
    Eval(EvalArgs),
    /// Cipher dictionary inspection.
    Dict(DictArgs),
}

fn parse_length(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|_| "length must be 4..9".to_string())?;
    if (4..=9).contains(&n) {
        Ok(n)
    } else {
        Err("length must be 4..9".into())
    }
}

fn parse_tilt(s: &str) -> Result<(f64, f64, f64), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err("tilt must be three comma-separated degrees, e.g. 25,0,0".into());
    }
    let mut v = [0.0; 3];
    for (i, p) in parts.iter().enumerate() {
        v[i] = p.trim().parse().map_err(|_| format!("bad tilt component {p:?}"))?;
    }
    Ok((v[0], v[1], v[2]))
}

#[derive(Args)]
struct EnumerateArgs {
    /// Print only the number of patterns.
    #[arg(long)]
    count: bool,
    /// Restrict to patterns of this many keys (4..9).
    #[arg(long, value_parser = parse_length)]
    length: Option<usize>,
}

#[derive(Args)]
struct ComplexityArgs {
    /// Pattern text like 1-6-8-3.
    pattern: Option<String>,
    /// Score the whole pattern space.
    #[arg(long, conflicts_with = "pattern")]
    all: bool,
    /// With --all: print only the maximum score.
    #[arg(long, requires = "all")]
    max: bool,
    /// With --all: print the score histogram (bins of 6).
    #[arg(long, requires = "all")]
    histogram: bool,
    #[arg(long)]
    format: Option<OutputFormat>,
}

#[derive(Args)]
struct GuessArgs {
    /// Trajectory CSV files (several files fuse into one list).
    #[arg(required = true)]
    trajectories: Vec<PathBuf>,
    /// Keep the N best guesses.
    #[arg(long)]
    top: Option<usize>,
    /// Turning-point threshold in px (default: 5% of bbox diagonal).
    #[arg(long)]
    epsilon: Option<f64>,
    /// Direction-vs-length weight of the similarity.
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long)]
    beam_width: Option<usize>,
    /// Disable the crossing-structure consistency filter.
    #[arg(long)]
    no_consistency_filter: bool,
    #[arg(long)]
    format: Option<OutputFormat>,
}

#[derive(Args)]
struct SynthArgs {
    /// Pattern text like 1-6-8-3.
    #[arg(long)]
    pattern: String,
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    /// Grid dot spacing in px.
    #[arg(long, default_value_t = 120.0)]
    spacing: f64,
    /// Samples per grid-spacing of stroke length.
    #[arg(long, default_value_t = 30)]
    samples_per_segment: usize,
    /// Camera tilt in degrees: pitch,yaw,roll.
    #[arg(long, value_parser = parse_tilt, default_value = "0,0,0")]
    tilt: (f64, f64, f64),
    /// Gaussian noise sigma in px.
    #[arg(long, default_value_t = 0.0)]
    noise: f64,
    /// Redundant head/tail stroke length in px.
    #[arg(long, default_value_t = 0.0)]
    head_tail: f64,
}

#[derive(Args)]
struct EvalArgs {
    /// Directory containing trajectory CSVs and manifest.json.
    #[arg(long, conflicts_with = "samples")]
    corpus: Option<PathBuf>,
    /// Generate a fresh random corpus of this many samples instead.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Max |tilt| per axis for generated corpora, degrees.
    #[arg(long, default_value_t = 0.0)]
    tilt_max: f64,
    /// Noise sigma for generated corpora, px.
    #[arg(long, default_value_t = 0.0)]
    noise: f64,
    /// Head/tail stroke length for generated corpora, px.
    #[arg(long, default_value_t = 0.0)]
    head_tail: f64,
    #[arg(long, default_value_t = 20)]
    max_attempts: usize,
    /// Worker threads for sample evaluation.
    #[arg(long)]
    jobs: Option<usize>,
    /// Sweep one generation parameter: tilt=0,15,25 or noise=0,2,4.
    #[arg(long)]
    sweep: Option<String>,
    /// Write curve CSVs and the JSON report here instead of stdout.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Run the length/angle feature-correlation experiment instead of the
    /// success curve.
    #[arg(long)]
    feature_correlation: bool,
}

#[derive(Args)]
struct DictArgs {
    #[command(subcommand)]
    command: DictCommand,
}

#[derive(Subcommand)]
enum DictCommand {
    /// Print all 504 ciphers.
    Dump {
        #[arg(long)]
        format: Option<OutputFormat>,
    },
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> CliError {
        CliError { code: 2, message: message.into() }
    }
    fn domain(message: impl Into<String>) -> CliError {
        CliError { code: 1, message: message.into() }
    }
}

fn parse_pattern(text: &str) -> Result<Pattern, CliError> {
    text.parse()
        .map_err(|e| CliError::usage(format!("invalid pattern {text:?}: {e}")))
}

fn cmd_enumerate(args: EnumerateArgs) -> Result<(), CliError> {
    let iter = enumerate_valid_patterns()
        .filter(|p| args.length.map_or(true, |l| p.len() == l));
    if args.count {
        println!("{}", iter.count());
    } else {
        let mut out = String::new();
        for p in iter {
            out.push_str(&p.to_string());
            out.push('\n');
        }
        print!("{out}");
    }
    Ok(())
}

fn cmd_complexity(args: ComplexityArgs, cfg: &GlobalConfig) -> Result<(), CliError> {
    let format = args.format.or(cfg.format).unwrap_or_default();
    if args.all {
        let scores: Vec<_> = enumerate_valid_patterns()
            .map(|p| (p.to_string(), complexity_score(&p)))
            .collect();
        if args.max {
            let max = scores
                .iter()
                .map(|(_, s)| s.score)
                .fold(f64::NEG_INFINITY, f64::max);
            println!("{max:.4}");
        } else if args.histogram {
            for (label, count) in score_histogram(scores.iter().map(|(_, s)| s.score)) {
                println!("{label}\t{count}");
            }
        } else {
            for (text, s) in scores {
                println!("{text}\t{:.4}", s.score);
            }
        }
        return Ok(());
    }
    let Some(text) = args.pattern else {
        return Err(CliError::usage("give a pattern or --all"));
    };
    let score = complexity_score(&parse_pattern(&text)?);
    match format {
        OutputFormat::Json => println!(
            "{}",
            serde_json::to_string_pretty(&score).expect("score serializes")
        ),
        _ => println!("{:.4}", score.score),
    }
    Ok(())
}

fn guess_config(args: &GuessArgs, cfg: &GlobalConfig) -> GuessConfig {
    let mut g = GuessConfig::default();
    g.epsilon = args.epsilon.or(cfg.epsilon);
    if let Some(theta) = args.theta.or(cfg.theta) {
        g.engine.similarity.theta = theta;
    }
    if let Some(b) = args.beam_width.or(cfg.beam_width) {
        g.engine.beam_width = b;
    }
    if args.no_consistency_filter {
        g.engine.consistency_filter = false;
    } else if let Some(f) = cfg.consistency_filter {
        g.engine.consistency_filter = f;
    }
    g
}

fn cmd_guess(args: GuessArgs, cfg: &GlobalConfig) -> Result<(), CliError> {
    let format = args.format.or(cfg.format).unwrap_or_default();
    let top = args.top.or(cfg.top).unwrap_or(20);
    let gcfg = guess_config(&args, cfg);
    let trajectories: Vec<_> = args
        .trajectories
        .iter()
        .map(|p| load_trajectory(p).map_err(|e| CliError::usage(e.to_string())))
        .collect::<Result<_, _>>()?;
    let (list, skipped) = guess_detailed(&trajectories, &gcfg).map_err(|e| match e {
        EngineError::AllTrajectoriesInvalid | EngineError::NoCandidates => {
            CliError::domain(e.to_string())
        }
    })?;
    for s in skipped {
        eprintln!("warning: skipped {s}");
    }
    let list = list.truncated(top);
    match format {
        OutputFormat::Json => println!(
            "{}",
            serde_json::to_string_pretty(&list.entries).expect("list serializes")
        ),
        _ => print!("{}", list.to_text()),
    }
    Ok(())
}

fn cmd_synth(args: SynthArgs, cfg: &GlobalConfig) -> Result<(), CliError> {
    let pattern = parse_pattern(&args.pattern)?;
    let scfg = SynthConfig {
        pattern,
        grid_spacing_px: args.spacing,
        samples_per_segment: args.samples_per_segment,
        camera_tilt_deg: args.tilt,
        noise_sigma_px: args.noise,
        head_tail_len_px: args.head_tail,
        rng_seed: args.seed.or(cfg.seed).unwrap_or(0),
    };
    let t = synthesize_trajectory(&scfg);
    save_trajectory(&t, &args.out).map_err(|e| CliError::usage(e.to_string()))?;
    Ok(())
}

fn sweep_values(spec: &str) -> Result<(String, Vec<f64>), CliError> {
    let (key, rest) = spec
        .split_once('=')
        .ok_or_else(|| CliError::usage("sweep must look like tilt=0,15,25"))?;
    if !matches!(key, "tilt" | "noise" | "head_tail") {
        return Err(CliError::usage(format!(
            "unknown sweep parameter {key:?} (tilt, noise, head_tail)"
        )));
    }
    let values = rest
        .split(',')
        .map(|v| {
            v.trim()
                .parse()
                .map_err(|_| CliError::usage(format!("bad sweep value {v:?}")))
        })
        .collect::<Result<Vec<f64>, _>>()?;
    Ok((key.to_string(), values))
}

fn cmd_eval(args: EvalArgs, cfg: &GlobalConfig) -> Result<(), CliError> {
    if let Some(jobs) = args.jobs.or(cfg.jobs) {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    let gcfg = GuessConfig::default();
    let base_spec = CorpusSpec {
        n_samples: args.samples.unwrap_or(100),
        max_tilt_deg: args.tilt_max,
        noise_sigma_px: args.noise,
        head_tail_len_px: args.head_tail,
        seed: args.seed.or(cfg.seed).unwrap_or(0),
        ..CorpusSpec::default()
    };

    if let Some(sweep) = &args.sweep {
        let (key, values) = sweep_values(sweep)?;
        for v in values {
            let mut spec = base_spec.clone();
            match key.as_str() {
                "tilt" => spec.max_tilt_deg = v,
                "noise" => spec.noise_sigma_px = v,
                _ => spec.head_tail_len_px = v,
            }
            let samples = generate_corpus(&spec);
            let report = success_curve(&samples, args.max_attempts, &gcfg);
            match &args.out_dir {
                Some(dir) => {
                    let path = dir.join(format!("curve_{key}_{v}.csv"));
                    std::fs::write(&path, report.curve_csv())
                        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
                }
                None => {
                    println!("# {key} = {v}");
                    print!("{}", report.curve_csv());
                }
            }
        }
        return Ok(());
    }

    let samples = match &args.corpus {
        Some(dir) => load_corpus(dir).map_err(|e| CliError::usage(e.to_string()))?,
        None => generate_corpus(&base_spec),
    };

    if args.feature_correlation {
        let report = feature_correlation_experiment(&samples);
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        );
        return Ok(());
    }

    let report = success_curve(&samples, args.max_attempts, &gcfg);
    match &args.out_dir {
        Some(dir) => {
            if args.corpus.is_none() {
                write_corpus(&samples, dir).map_err(|e| CliError::usage(e.to_string()))?;
            }
            std::fs::write(dir.join("curve.csv"), report.curve_csv())
                .map_err(|e| CliError::usage(e.to_string()))?;
            std::fs::write(
                dir.join("report.json"),
                serde_json::to_string_pretty(&report).expect("report serializes"),
            )
            .map_err(|e| CliError::usage(e.to_string()))?;
        }
        None => {
            print!("{}", report.curve_csv());
        }
    }
    Ok(())
}

fn cmd_dict(args: DictArgs, cfg: &GlobalConfig) -> Result<(), CliError> {
    let DictCommand::Dump { format } = args.command;
    let format = format.or(cfg.format).unwrap_or_default();
    let dict = build_cipher_dictionary();
    match format {
        OutputFormat::Json => println!(
            "{}",
            serde_json::to_string_pretty(dict).expect("dictionary serializes")
        ),
        _ => {
            for c in dict {
                let expansion: Vec<String> =
                    c.key_expansion.iter().map(|k| k.to_string()).collect();
                println!(
                    "{}-{}-{}\t{}\tu=({},{})\tv=({},{})\tw=({:.4},{:.4})",
                    c.dots.0,
                    c.dots.1,
                    c.dots.2,
                    expansion.join("-"),
                    c.u.0,
                    c.u.1,
                    c.v.0,
                    c.v.1,
                    c.w.0,
                    c.w.1
                );
            }
        }
    }
    Ok(())
}

fn run() -> Result<(), CliError> {
    let cli = Cli::parse();
    let cfg = load_from_env().map_err(|e| CliError::usage(e.to_string()))?;
    match cli.command {
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Complexity(a) => cmd_complexity(a, &cfg),
        Command::Guess(a) => cmd_guess(a, &cfg),
        Command::Synth(a) => cmd_synth(a, &cfg),
        Command::Eval(a) => cmd_eval(a, &cfg),
        Command::Dict(a) => cmd_dict(a, &cfg),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
