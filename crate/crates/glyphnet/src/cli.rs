//! Command-line entry point wiring the pipeline end to end: corpus
//! generation, feature extraction, training, evaluation, single-image
//! prediction, and gradient verification.
//!
//! Exit codes: 0 success, 1 usage error (bad flags or flag values), 2
//! input/format error, 3 verification failure (gradient check above
//! tolerance). Every command is deterministic given its flags and inputs.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result, ResultExt};
use crate::experiment::{
    classify, run_experiment_with_initial, score_all, similarity_report, train_run, ExperimentMode,
    SimilarityGroups,
};
use crate::features::{extract_features, FeatureVector, GridSpec, PipelineConfig};
use crate::mlp::{gradient_check, InitMode, NetworkTopology, TrainConfig, UpdateMode};
use crate::persistence::{
    load_bundle, load_model, parse_pgm, read_features_any, read_manifest, save_bundle, save_corpus,
    write_features_split, TrainedBundle, TrainedNetwork, BUNDLE_MAGIC,
};
use crate::rng::mix;
use crate::synthgen::{generate_corpus, CorpusSpec, Letter, PerturbationParams, Split};

#[derive(Parser, Debug)]
#[command(
    name = "glyphnet",
    version,
    about = "Handwritten-alphabet recognizer: synthetic corpus, grid features, MLP",
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate the synthetic glyph corpus (PGM files plus manifest.csv)
    Gen(GenArgs),
    /// Extract 5x5 grid features from a generated corpus into a CSV
    Extract(ExtractArgs),
    /// Train networks on the train split of a feature CSV
    Train(TrainArgs),
    /// Evaluate a trained model: per-letter table, average, similarity report
    Eval(EvalArgs),
    /// Classify a single PGM image with a trained model
    Predict(PredictArgs),
    /// Verify backpropagation against central finite differences
    Gradcheck(GradcheckArgs),
}

#[derive(Args, Debug)]
struct GenArgs {
    /// Output corpus directory
    #[arg(long)]
    out: PathBuf,
    /// Corpus seed
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    train_per_letter: usize,
    #[arg(long, default_value_t = 5)]
    test_per_letter: usize,
    /// Max rotation in degrees
    #[arg(long, default_value_t = 10.0)]
    rotation_max: f64,
    /// Max horizontal shear factor
    #[arg(long, default_value_t = 0.15)]
    shear_max: f64,
    /// Max relative scale jitter per axis
    #[arg(long, default_value_t = 0.10)]
    scale_jitter: f64,
    /// Max translation in pixels
    #[arg(long, default_value_t = 3.0)]
    translate_max: f64,
    /// Stroke dilation steps (0-2)
    #[arg(long, default_value_t = 1)]
    dilation_steps: usize,
    /// Per-pixel flip probability
    #[arg(long, default_value_t = 0.01)]
    noise_rate: f64,
}

#[derive(Args, Debug)]
struct ExtractArgs {
    /// Corpus directory containing manifest.csv
    #[arg(long = "in")]
    in_dir: PathBuf,
    /// Output feature CSV file
    #[arg(long)]
    out: PathBuf,
    /// Binarization threshold (intensity < threshold is ink)
    #[arg(long, default_value_t = 128)]
    threshold: u8,
    /// Standard side length images are scaled to
    #[arg(long, default_value_t = 50)]
    size: usize,
    /// Grid rows/columns (a single number; the grid is square)
    #[arg(long, default_value_t = 5)]
    grid: usize,
    /// Minimum foreground pixels for a cell to digitize to 1
    #[arg(long, default_value_t = 1)]
    min_pixels: usize,
}

#[derive(Args, Debug)]
struct TrainArgs {
    /// Input feature CSV (train split rows are used)
    #[arg(long)]
    features: PathBuf,
    /// Output model file
    #[arg(long)]
    out: PathBuf,
    /// multiclass (one 26-output network) or per-letter (26 one-vs-rest)
    #[arg(long, default_value = "multiclass")]
    mode: String,
    /// Learning rate coefficient
    #[arg(long, default_value_t = 0.05)]
    lr: f64,
    #[arg(long, default_value_t = 1000)]
    max_epochs: usize,
    /// Mean-loss convergence tolerance
    #[arg(long, default_value_t = 0.005)]
    tol: f64,
    /// Weight initialization: symmetric [-0.5,0.5) or paper [0,1)
    #[arg(long, default_value = "symmetric")]
    init: String,
    /// Gradient application: per-sample or batch
    #[arg(long, default_value = "per-sample")]
    update: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct EvalArgs {
    /// Trained model file (train command output)
    #[arg(long)]
    model: PathBuf,
    /// Feature CSV with split column (extract command output)
    #[arg(long)]
    features: PathBuf,
    /// Training repetitions to aggregate (run 0 reuses the stored model)
    #[arg(long, default_value_t = 10)]
    runs: usize,
    /// Report format: table or csv
    #[arg(long, default_value = "table")]
    report: String,
}

#[derive(Args, Debug)]
struct PredictArgs {
    /// Trained model file
    #[arg(long)]
    model: PathBuf,
    /// PGM image to classify
    #[arg(long)]
    image: PathBuf,
}

#[derive(Args, Debug)]
struct GradcheckArgs {
    /// Seed for the random network and probe sample
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Finite-difference step
    #[arg(long, default_value_t = 1e-5)]
    eps: f64,
    /// Max acceptable relative error
    #[arg(long, default_value_t = 1e-4)]
    tol: f64,
}

/// Parses arguments and runs the selected command, returning the process
/// exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code_for(&err)
        }
    }
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Gen(args) => cmd_gen(args),
        Command::Extract(args) => cmd_extract(args),
        Command::Train(args) => cmd_train(args),
        Command::Eval(args) => cmd_eval(args),
        Command::Predict(args) => cmd_predict(args),
        Command::Gradcheck(args) => cmd_gradcheck(args),
    }
}

/// Maps an error to its exit code: invalid configuration values are usage
/// errors (1); everything else is an input/format error (2).
fn exit_code_for(err: &Error) -> i32 {
    match err.root() {
        Error::InvalidConfig(_) | Error::InvalidEpsilon(_) | Error::InvalidTopology(_) => 1,
        _ => 2,
    }
}

/// Prints a line to stdout, tolerating a closed pipe (`eval | head` must
/// not panic mid-report).
fn outln(args: std::fmt::Arguments) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    let _ = writeln!(stdout, "{args}");
}

macro_rules! outln {
    ($($arg:tt)*) => { outln(format_args!($($arg)*)) };
}

/// Prints a pre-rendered multi-line report without a trailing extra line.
fn out_text(text: &str) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(text.as_bytes());
}

fn read_file(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path)
        .map_err(Error::from)
        .context(path.display().to_string())
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes)
        .map_err(Error::from)
        .context(path.display().to_string())
}

fn cmd_gen(args: GenArgs) -> Result<i32> {
    let spec = CorpusSpec {
        train_per_letter: args.train_per_letter,
        test_per_letter: args.test_per_letter,
        seed: args.seed,
        params: PerturbationParams {
            rotation_max: args.rotation_max,
            shear_max: args.shear_max,
            scale_jitter: args.scale_jitter,
            translate_max: args.translate_max,
            dilation_steps: args.dilation_steps,
            pixel_noise_rate: args.noise_rate,
        },
    };
    let corpus = generate_corpus(&spec)?;
    save_corpus(&corpus, &args.out)?;
    outln!(
        "wrote {} samples and manifest.csv to {}",
        corpus.len(),
        args.out.display()
    );
    Ok(0)
}

fn cmd_extract(args: ExtractArgs) -> Result<i32> {
    let pipeline = PipelineConfig {
        threshold: args.threshold,
        standard_side: args.size,
        grid: GridSpec {
            rows: args.grid,
            cols: args.grid,
            min_pixels: args.min_pixels,
        },
    };
    pipeline.validate()?;
    let manifest_path = args.in_dir.join("manifest.csv");
    let manifest =
        read_manifest(&read_file(&manifest_path)?).context(manifest_path.display().to_string())?;
    let mut rows = Vec::with_capacity(manifest.len());
    for entry in &manifest {
        let path = args.in_dir.join(&entry.relative_path);
        let image = parse_pgm(&read_file(&path)?).context(path.display().to_string())?;
        let features = extract_features(&image, &pipeline).context(path.display().to_string())?;
        rows.push((entry.split, entry.label, features));
    }
    write_file(&args.out, &write_features_split(&rows))?;
    outln!(
        "wrote {} feature rows to {}",
        rows.len(),
        args.out.display()
    );
    Ok(0)
}

fn parse_train_config(args: &TrainArgs) -> Result<(TrainConfig, ExperimentMode)> {
    let init_mode = InitMode::from_tag(&args.init)
        .ok_or_else(|| Error::InvalidConfig(format!("unknown init mode '{}'", args.init)))?;
    let update_mode = UpdateMode::from_tag(&args.update)
        .ok_or_else(|| Error::InvalidConfig(format!("unknown update mode '{}'", args.update)))?;
    let mode = ExperimentMode::from_tag(&args.mode)
        .ok_or_else(|| Error::InvalidConfig(format!("unknown mode '{}'", args.mode)))?;
    let config = TrainConfig {
        learning_rate: args.lr,
        max_epochs: args.max_epochs,
        tolerance: args.tol,
        init_mode,
        update_mode,
        seed: args.seed,
    };
    config.validate()?;
    Ok((config, mode))
}

fn network_label(trained: &TrainedNetwork) -> String {
    trained
        .label
        .map_or_else(|| "*".to_string(), |l| l.to_string())
}

fn cmd_train(args: TrainArgs) -> Result<i32> {
    let (config, mode) = parse_train_config(&args)?;
    let file = read_features_any(&read_file(&args.features)?)
        .context(args.features.display().to_string())?;
    // The split column is optional here: a plain label,f00.. file is
    // treated as all-train.
    let train_rows: Vec<(Letter, FeatureVector)> = file
        .rows
        .into_iter()
        .filter(|row| row.split.is_none_or(|s| s == Split::Train))
        .map(|row| (row.label, row.features))
        .collect();
    if train_rows.is_empty() {
        return Err(Error::EmptyDataset);
    }
    // Training here is run 0 of the evaluation protocol, so the effective
    // seed is mix(seed, 0), letting eval reuse this model as its first run.
    let networks = train_run(&train_rows, &config, mode, mix(config.seed, 0))?;
    for trained in &networks {
        outln!(
            "network {}: epochs {}, final mean loss {:.6}, stop {}",
            network_label(trained),
            trained.report.epochs_run,
            trained.report.final_mean_loss,
            trained.report.stop_reason.tag()
        );
    }
    let bundle = TrainedBundle {
        mode,
        config,
        networks,
    };
    write_file(&args.out, &save_bundle(&bundle))?;
    outln!("wrote model to {}", args.out.display());
    Ok(0)
}

fn cmd_eval(args: EvalArgs) -> Result<i32> {
    if args.report != "table" && args.report != "csv" {
        return Err(Error::InvalidConfig(format!(
            "unknown report format '{}'",
            args.report
        )));
    }
    let bundle = load_bundle(&read_file(&args.model)?).context(args.model.display().to_string())?;
    let file = read_features_any(&read_file(&args.features)?)
        .context(args.features.display().to_string())?;
    if !file.has_split {
        return Err(Error::MalformedHeader(format!(
            "{}: eval needs the split,label,f00.. feature variant (extract output)",
            args.features.display()
        )));
    }
    let mut train = Vec::new();
    let mut test = Vec::new();
    for row in file.rows {
        match row.split.expect("split column present") {
            Split::Train => train.push((row.label, row.features)),
            Split::Test => test.push((row.label, row.features)),
        }
    }
    let (table, matrix) = run_experiment_with_initial(
        &train,
        &test,
        &bundle.networks,
        &bundle.config,
        bundle.mode,
        args.runs,
    )?;
    let similarity = similarity_report(&matrix, &SimilarityGroups::standard());
    let report = match args.report.as_str() {
        "table" => crate::experiment::render_text(&table, &similarity),
        _ => crate::experiment::render_csv(&table, &similarity),
    };
    out_text(&report);
    Ok(0)
}

/// Loads either a trained bundle or a bare multiclass model file.
fn load_networks(bytes: &[u8], path: &Path) -> Result<(Vec<TrainedNetwork>, ExperimentMode)> {
    let is_bundle = bytes
        .get(..BUNDLE_MAGIC.len())
        .is_some_and(|head| head == BUNDLE_MAGIC.as_bytes());
    if is_bundle {
        let bundle = load_bundle(bytes).context(path.display().to_string())?;
        Ok((bundle.networks, bundle.mode))
    } else {
        let network = load_model(bytes).context(path.display().to_string())?;
        if network.topology().output_units() != 26 {
            return Err(Error::ShapeMismatch(format!(
                "{}: a bare model needs 26 outputs to classify, has {}",
                path.display(),
                network.topology().output_units()
            )));
        }
        Ok((
            vec![TrainedNetwork {
                label: None,
                report: crate::mlp::TrainReport {
                    epochs_run: 0,
                    final_mean_loss: f64::NAN,
                    stop_reason: crate::mlp::StopReason::MaxEpochs,
                },
                network,
            }],
            ExperimentMode::Multiclass,
        ))
    }
}

fn cmd_predict(args: PredictArgs) -> Result<i32> {
    let (networks, mode) = load_networks(&read_file(&args.model)?, &args.model)?;
    let image = parse_pgm(&read_file(&args.image)?).context(args.image.display().to_string())?;
    let features = extract_features(&image, &PipelineConfig::default())
        .context(args.image.display().to_string())?;
    let letter = classify(&networks, mode, &features)?;
    let scores = score_all(&networks, mode, &features)?;
    outln!("{letter}");
    for (l, score) in Letter::all().zip(&scores) {
        outln!("{l} {score:.6}");
    }
    Ok(0)
}

fn cmd_gradcheck(args: GradcheckArgs) -> Result<i32> {
    let topology = NetworkTopology::multiclass(25);
    let max_error = gradient_check(&topology, args.seed, args.eps)?;
    outln!(
        "max relative error: {max_error:.3e} (tolerance {:.3e})",
        args.tol
    );
    if max_error <= args.tol {
        Ok(0)
    } else {
        eprintln!("gradient check failed: {max_error:.3e} > {:.3e}", args.tol);
        Ok(3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> i32 {
        run(args.iter().copied())
    }

    #[test]
    fn help_and_version_exit_zero() {
        assert_eq!(run_args(&["glyphnet", "--help"]), 0);
        assert_eq!(run_args(&["glyphnet", "--version"]), 0);
        assert_eq!(run_args(&["glyphnet", "gen", "--help"]), 0);
    }

    #[test]
    fn missing_required_flags_exit_one() {
        assert_eq!(run_args(&["glyphnet", "gen"]), 1);
        assert_eq!(run_args(&["glyphnet", "gen", "--out", "/tmp/x"]), 1); // no --seed
        assert_eq!(run_args(&["glyphnet"]), 1);
        assert_eq!(run_args(&["glyphnet", "frobnicate"]), 1);
    }

    #[test]
    fn unparseable_flag_values_exit_one() {
        assert_eq!(
            run_args(&["glyphnet", "gen", "--out", "/tmp/x", "--seed", "banana"]),
            1
        );
        assert_eq!(run_args(&["glyphnet", "gradcheck", "--eps", "fast"]), 1);
    }

    #[test]
    fn invalid_config_values_exit_one() {
        // Valid syntax, invalid semantics: learning rate must be positive.
        let err = parse_train_config(&TrainArgs {
            features: PathBuf::from("f"),
            out: PathBuf::from("m"),
            mode: "multiclass".into(),
            lr: 0.0,
            max_epochs: 1000,
            tol: 0.005,
            init: "symmetric".into(),
            update: "per-sample".into(),
            seed: 0,
        })
        .unwrap_err();
        assert_eq!(exit_code_for(&err), 1);

        let err = parse_train_config(&TrainArgs {
            features: PathBuf::from("f"),
            out: PathBuf::from("m"),
            mode: "simclass".into(),
            lr: 0.05,
            max_epochs: 1000,
            tol: 0.005,
            init: "symmetric".into(),
            update: "per-sample".into(),
            seed: 0,
        })
        .unwrap_err();
        assert_eq!(exit_code_for(&err), 1);
    }

    #[test]
    fn io_and_format_errors_exit_two() {
        let missing = Error::from(std::io::Error::from(std::io::ErrorKind::NotFound));
        assert_eq!(exit_code_for(&missing), 2);
        assert_eq!(exit_code_for(&Error::EmptyImage), 2);
        assert_eq!(exit_code_for(&Error::BadMagic("x".into())), 2);
        // Context wrapping does not change the classification.
        let wrapped = Error::EmptyImage.context("corpus/a/train_000.pgm".to_string());
        assert_eq!(exit_code_for(&wrapped), 2);
        let wrapped_config = Error::InvalidConfig("bad".into()).context("somewhere".to_string());
        assert_eq!(exit_code_for(&wrapped_config), 1);
    }

    #[test]
    fn gradcheck_exit_codes() {
        assert_eq!(run_args(&["glyphnet", "gradcheck", "--eps", "0"]), 1);
        assert_eq!(run_args(&["glyphnet", "gradcheck", "--eps", "-1e-5"]), 1);
        assert_eq!(run_args(&["glyphnet", "gradcheck", "--tol", "0"]), 3);
        assert_eq!(run_args(&["glyphnet", "gradcheck"]), 0);
    }

    #[test]
    fn predict_rejects_missing_files_with_exit_two() {
        let dir = tempfile::tempdir().unwrap();
        let model = dir.path().join("missing-model");
        assert_eq!(
            run_args(&[
                "glyphnet",
                "predict",
                "--model",
                model.to_str().unwrap(),
                "--image",
                model.to_str().unwrap(),
            ]),
            2
        );
    }

    #[test]
    fn eval_rejects_splitless_features() {
        use crate::persistence::{save_bundle, write_features, TrainedBundle};
        let dir = tempfile::tempdir().unwrap();
        let model_path = dir.path().join("model");
        let features_path = dir.path().join("features.csv");

        let config = TrainConfig {
            max_epochs: 1,
            ..TrainConfig::default()
        };
        let rows: Vec<(Letter, FeatureVector)> = Letter::all()
            .map(|l| (l, FeatureVector::new(vec![l.index() % 2 == 0; 25])))
            .collect();
        let networks = train_run(&rows, &config, ExperimentMode::Multiclass, 0).unwrap();
        let bundle = TrainedBundle {
            mode: ExperimentMode::Multiclass,
            config,
            networks,
        };
        std::fs::write(&model_path, save_bundle(&bundle)).unwrap();
        std::fs::write(&features_path, write_features(&rows)).unwrap();

        assert_eq!(
            run_args(&[
                "glyphnet",
                "eval",
                "--model",
                model_path.to_str().unwrap(),
                "--features",
                features_path.to_str().unwrap(),
            ]),
            2
        );
    }

    #[test]
    fn eval_rejects_bad_report_format() {
        assert_eq!(
            run_args(&[
                "glyphnet",
                "eval",
                "--model",
                "m",
                "--features",
                "f",
                "--report",
                "json"
            ]),
            1
        );
    }
}
