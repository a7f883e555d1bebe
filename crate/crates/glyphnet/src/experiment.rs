//! Experiment harness: trains on the corpus, evaluates per-letter accuracy
//! and epochs, reproduces the results-table structure (alphabet, sample
//! counts, epochs, % accuracy, average), and reports confusion among the
//! visually similar letter groups {c,e}, {i,j,l,r}, {u,v}.
//!
//! Five test samples per letter give 20% accuracy granularity, so a single
//! evaluation cannot produce values like 94.0; the harness therefore
//! repeats training `runs` times (fresh seed per run, `mix(seed, r)`) and
//! aggregates. Reported epochs are the arithmetic mean over runs, rounded
//! half-up.

use crate::error::{Error, Result};
use crate::features::{extract_features, FeatureVector, PipelineConfig};
use crate::mlp::{self, NetworkTopology, TrainConfig};
use crate::persistence::TrainedNetwork;
use crate::rng::mix;
use crate::synthgen::{Corpus, Letter, Split};

/// A labeled dataset: one feature vector per sample, in corpus order.
pub type LabeledFeatures = Vec<(Letter, FeatureVector)>;

/// How networks map to letters: one 26-output classifier, or 26 one-vs-rest
/// networks whose highest score decides the label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentMode {
    Multiclass,
    PerLetter,
}

impl ExperimentMode {
    pub fn tag(self) -> &'static str {
        match self {
            ExperimentMode::Multiclass => "multiclass",
            ExperimentMode::PerLetter => "per-letter",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "multiclass" => Some(ExperimentMode::Multiclass),
            "per-letter" => Some(ExperimentMode::PerLetter),
            _ => None,
        }
    }

    /// Number of networks this mode trains.
    pub fn network_count(self) -> usize {
        match self {
            ExperimentMode::Multiclass => 1,
            ExperimentMode::PerLetter => 26,
        }
    }
}

/// One results-table row.
#[derive(Debug, Clone, PartialEq)]
pub struct PerLetterResult {
    pub letter: Letter,
    pub n_train: usize,
    pub n_test: usize,
    pub epochs: usize,
    pub accuracy: f64,
}

/// The full results table: 26 rows in alphabetical order plus the run count
/// and the average accuracy (always the recomputed mean of the rows).
#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    rows: Vec<PerLetterResult>,
    runs: usize,
    average: f64,
}

impl ResultTable {
    /// Builds a table from 26 alphabetical rows, computing the average.
    pub fn new(rows: Vec<PerLetterResult>, runs: usize) -> Result<Self> {
        let accuracies: Vec<f64> = rows.iter().map(|r| r.accuracy).collect();
        let average = average_accuracy(&accuracies)?;
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.letter.index(), i, "rows must be alphabetical");
            assert!(
                (0.0..=100.0).contains(&row.accuracy),
                "accuracy out of range"
            );
        }
        Ok(ResultTable {
            rows,
            runs,
            average,
        })
    }

    pub fn rows(&self) -> &[PerLetterResult] {
        &self.rows
    }

    pub fn runs(&self) -> usize {
        self.runs
    }

    pub fn average(&self) -> f64 {
        self.average
    }
}

/// 26×26 counts; rows are true letters, columns predicted letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfusionMatrix {
    counts: Vec<usize>,
}

impl Default for ConfusionMatrix {
    fn default() -> Self {
        Self::new()
    }
}

impl ConfusionMatrix {
    pub fn new() -> Self {
        ConfusionMatrix {
            counts: vec![0; 26 * 26],
        }
    }

    pub fn add(&mut self, actual: Letter, predicted: Letter) {
        self.counts[actual.index() * 26 + predicted.index()] += 1;
    }

    pub fn count(&self, actual: Letter, predicted: Letter) -> usize {
        self.counts[actual.index() * 26 + predicted.index()]
    }

    /// Number of evaluated samples of `actual` (the row sum).
    pub fn row_total(&self, actual: Letter) -> usize {
        self.counts[actual.index() * 26..(actual.index() + 1) * 26]
            .iter()
            .sum()
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    /// Total misclassifications (off-diagonal mass).
    pub fn off_diagonal_total(&self) -> usize {
        let mut sum = 0;
        for a in 0..26 {
            for p in 0..26 {
                if a != p {
                    sum += self.counts[a * 26 + p];
                }
            }
        }
        sum
    }
}

/// Counts (true, predicted) pairs into a confusion matrix.
pub fn confusion_matrix(pairs: &[(Letter, Letter)]) -> ConfusionMatrix {
    let mut matrix = ConfusionMatrix::new();
    for &(actual, predicted) in pairs {
        matrix.add(actual, predicted);
    }
    matrix
}

/// The fixed similar-letter groups: {c,e}, {i,j,l,r}, {u,v}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimilarityGroups {
    groups: Vec<Vec<Letter>>,
}

impl SimilarityGroups {
    /// Builds groups, checking disjointness.
    pub fn new(groups: Vec<Vec<Letter>>) -> Self {
        let mut seen = [false; 26];
        for group in &groups {
            for &letter in group {
                assert!(!seen[letter.index()], "similarity groups must be disjoint");
                seen[letter.index()] = true;
            }
        }
        SimilarityGroups { groups }
    }

    pub fn standard() -> Self {
        let of =
            |s: &str| -> Vec<Letter> { s.chars().map(|c| Letter::from_char(c).unwrap()).collect() };
        Self::new(vec![of("ce"), of("ijlr"), of("uv")])
    }

    pub fn groups(&self) -> &[Vec<Letter>] {
        &self.groups
    }
}

/// One group's confusion summary. `rate` is a percentage: within-group
/// misclassifications over all evaluated samples of the group's letters.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupRate {
    pub letters: Vec<Letter>,
    pub confused: usize,
    pub total: usize,
    pub rate: f64,
}

/// Similarity report: per-group rates plus the overall misclassification
/// rate for context. Informational only — nothing asserts the groups are
/// worse than average.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityReport {
    pub groups: Vec<GroupRate>,
    pub overall_confused: usize,
    pub overall_total: usize,
    pub overall_rate: f64,
}

/// Computes per-group within-group misclassification rates from a confusion
/// matrix.
pub fn similarity_report(matrix: &ConfusionMatrix, groups: &SimilarityGroups) -> SimilarityReport {
    let mut out = Vec::with_capacity(groups.groups().len());
    for group in groups.groups() {
        let mut confused = 0;
        let mut total = 0;
        for &actual in group {
            total += matrix.row_total(actual);
            for &predicted in group {
                if actual != predicted {
                    confused += matrix.count(actual, predicted);
                }
            }
        }
        let rate = if total == 0 {
            0.0
        } else {
            confused as f64 * 100.0 / total as f64
        };
        out.push(GroupRate {
            letters: group.clone(),
            confused,
            total,
            rate,
        });
    }
    let overall_confused = matrix.off_diagonal_total();
    let overall_total = matrix.total();
    let overall_rate = if overall_total == 0 {
        0.0
    } else {
        overall_confused as f64 * 100.0 / overall_total as f64
    };
    SimilarityReport {
        groups: out,
        overall_confused,
        overall_total,
        overall_rate,
    }
}

/// Arithmetic mean of exactly 26 per-letter accuracies.
pub fn average_accuracy(accuracies: &[f64]) -> Result<f64> {
    if accuracies.len() != 26 {
        return Err(Error::WrongRowCount(accuracies.len()));
    }
    Ok(accuracies.iter().sum::<f64>() / 26.0)
}

// ---------------------------------------------------------------------------
// Training and evaluation
// ---------------------------------------------------------------------------

/// One training run's raw outcome: epoch counts (1 entry for multiclass, 26
/// alphabetical for per-letter) and every `(true, predicted)` test pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub epochs: Vec<usize>,
    pub predictions: Vec<(Letter, Letter)>,
}

fn one_hot(letter: Letter) -> Vec<f64> {
    let mut target = vec![0.0; 26];
    target[letter.index()] = 1.0;
    target
}

/// Trains one run's networks: a single multiclass network, or 26
/// one-vs-rest networks (each trained on all letters' features with target
/// 1 for its own letter). The run seed replaces `config.seed`; per-letter
/// networks use `mix(run_seed, letter index)`.
pub fn train_run(
    train: &[(Letter, FeatureVector)],
    config: &TrainConfig,
    mode: ExperimentMode,
    run_seed: u64,
) -> Result<Vec<TrainedNetwork>> {
    config.validate()?;
    if train.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let arity = train[0].1.len();
    match mode {
        ExperimentMode::Multiclass => {
            let samples: Vec<(FeatureVector, Vec<f64>)> = train
                .iter()
                .map(|(letter, features)| (features.clone(), one_hot(*letter)))
                .collect();
            let run_config = TrainConfig {
                seed: run_seed,
                ..*config
            };
            let net = mlp::init_network(&NetworkTopology::multiclass(arity), &run_config);
            let (net, report) = mlp::train(net, &samples, &run_config)?;
            Ok(vec![TrainedNetwork {
                label: None,
                report,
                network: net,
            }])
        }
        ExperimentMode::PerLetter => {
            let mut networks = Vec::with_capacity(26);
            for letter in Letter::all() {
                let samples: Vec<(FeatureVector, Vec<f64>)> = train
                    .iter()
                    .map(|(label, features)| {
                        (
                            features.clone(),
                            vec![if *label == letter { 1.0 } else { 0.0 }],
                        )
                    })
                    .collect();
                let letter_config = TrainConfig {
                    seed: mix(run_seed, letter.index() as u64),
                    ..*config
                };
                let net = mlp::init_network(&NetworkTopology::per_letter(arity), &letter_config);
                let (net, report) = mlp::train(net, &samples, &letter_config)?;
                networks.push(TrainedNetwork {
                    label: Some(letter),
                    report,
                    network: net,
                });
            }
            Ok(networks)
        }
    }
}

fn check_networks(networks: &[TrainedNetwork], mode: ExperimentMode) -> Result<()> {
    if networks.len() != mode.network_count() {
        return Err(Error::ShapeMismatch(format!(
            "{} mode needs {} networks, got {}",
            mode.tag(),
            mode.network_count(),
            networks.len()
        )));
    }
    match mode {
        ExperimentMode::Multiclass => {
            let out = networks[0].network.topology().output_units();
            if out != 26 {
                return Err(Error::ShapeMismatch(format!(
                    "multiclass network must have 26 outputs, has {out}"
                )));
            }
        }
        ExperimentMode::PerLetter => {
            for (i, trained) in networks.iter().enumerate() {
                let out = trained.network.topology().output_units();
                if out != 1 {
                    return Err(Error::ShapeMismatch(format!(
                        "one-vs-rest network {i} must have 1 output, has {out}"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// One score per letter: the multiclass network's 26 outputs, or each
/// one-vs-rest network's single output.
pub fn score_all(
    networks: &[TrainedNetwork],
    mode: ExperimentMode,
    features: &FeatureVector,
) -> Result<Vec<f64>> {
    check_networks(networks, mode)?;
    match mode {
        ExperimentMode::Multiclass => {
            let activations = mlp::forward(&networks[0].network, &features.to_reals())?;
            Ok(activations.last().expect("network has layers").clone())
        }
        ExperimentMode::PerLetter => {
            let mut scores = Vec::with_capacity(26);
            for trained in networks {
                let activations = mlp::forward(&trained.network, &features.to_reals())?;
                scores.push(activations.last().expect("network has layers")[0]);
            }
            Ok(scores)
        }
    }
}

/// Labels one feature vector: multiclass argmax, or the highest one-vs-rest
/// score (lowest letter wins ties in both cases).
pub fn classify(
    networks: &[TrainedNetwork],
    mode: ExperimentMode,
    features: &FeatureVector,
) -> Result<Letter> {
    Ok(Letter::from_index(mlp::argmax(&score_all(
        networks, mode, features,
    )?)))
}

/// Evaluates trained networks on a test set, returning `(true, predicted)`
/// pairs in test order.
pub fn evaluate_run(
    networks: &[TrainedNetwork],
    mode: ExperimentMode,
    test: &[(Letter, FeatureVector)],
) -> Result<Vec<(Letter, Letter)>> {
    let mut pairs = Vec::with_capacity(test.len());
    for (label, features) in test {
        pairs.push((*label, classify(networks, mode, features)?));
    }
    Ok(pairs)
}

fn outcome_epochs(networks: &[TrainedNetwork]) -> Vec<usize> {
    networks.iter().map(|t| t.report.epochs_run).collect()
}

fn per_letter_counts(rows: &[(Letter, FeatureVector)]) -> [usize; 26] {
    let mut counts = [0usize; 26];
    for (letter, _) in rows {
        counts[letter.index()] += 1;
    }
    counts
}

/// Mean of `sum/runs` rounded half-up to an integer, in exact arithmetic.
fn mean_epochs_half_up(sum: usize, runs: usize) -> usize {
    (2 * sum + runs) / (2 * runs)
}

/// Aggregates run outcomes into the results table and confusion matrix.
/// This is the harness hook: tests can feed stub predictions directly.
pub fn tabulate(
    n_train: &[usize; 26],
    n_test: &[usize; 26],
    mode: ExperimentMode,
    outcomes: &[RunOutcome],
) -> Result<(ResultTable, ConfusionMatrix)> {
    if outcomes.is_empty() {
        return Err(Error::InvalidConfig("at least one run is required".into()));
    }
    let runs = outcomes.len();
    let mut correct = [0usize; 26];
    let mut matrix = ConfusionMatrix::new();
    let mut epoch_sums = vec![0usize; mode.network_count()];
    for outcome in outcomes {
        if outcome.epochs.len() != mode.network_count() {
            return Err(Error::ShapeMismatch(format!(
                "{} mode records {} epoch entries per run, got {}",
                mode.tag(),
                mode.network_count(),
                outcome.epochs.len()
            )));
        }
        for (sum, &epochs) in epoch_sums.iter_mut().zip(&outcome.epochs) {
            *sum += epochs;
        }
        for &(actual, predicted) in &outcome.predictions {
            matrix.add(actual, predicted);
            if actual == predicted {
                correct[actual.index()] += 1;
            }
        }
    }

    let mut rows = Vec::with_capacity(26);
    for letter in Letter::all() {
        let i = letter.index();
        if n_test[i] == 0 {
            return Err(Error::MissingLetter(letter.as_char()));
        }
        let epochs = match mode {
            ExperimentMode::Multiclass => mean_epochs_half_up(epoch_sums[0], runs),
            ExperimentMode::PerLetter => mean_epochs_half_up(epoch_sums[i], runs),
        };
        let accuracy = correct[i] as f64 * 100.0 / (n_test[i] * runs) as f64;
        rows.push(PerLetterResult {
            letter,
            n_train: n_train[i],
            n_test: n_test[i],
            epochs,
            accuracy,
        });
    }
    Ok((ResultTable::new(rows, runs)?, matrix))
}

fn check_coverage(n_train: &[usize; 26], n_test: &[usize; 26]) -> Result<()> {
    for letter in Letter::all() {
        if n_train[letter.index()] == 0 || n_test[letter.index()] == 0 {
            return Err(Error::MissingLetter(letter.as_char()));
        }
    }
    Ok(())
}

/// Runs the experiment on pre-extracted features: `runs` trainings with
/// seeds `mix(config.seed, r)`, each evaluated on the full test set.
pub fn run_experiment_on(
    train: &[(Letter, FeatureVector)],
    test: &[(Letter, FeatureVector)],
    config: &TrainConfig,
    mode: ExperimentMode,
    runs: usize,
) -> Result<(ResultTable, ConfusionMatrix)> {
    run_experiment_inner(train, test, None, config, mode, runs)
}

/// Like [`run_experiment_on`], but run 0 evaluates the given already-trained
/// networks (with their recorded epoch counts) instead of training afresh.
/// With the networks produced by seed `mix(config.seed, 0)` this yields
/// byte-identical results to [`run_experiment_on`] — it lets a stored model
/// bundle stand in for the first run.
pub fn run_experiment_with_initial(
    train: &[(Letter, FeatureVector)],
    test: &[(Letter, FeatureVector)],
    initial: &[TrainedNetwork],
    config: &TrainConfig,
    mode: ExperimentMode,
    runs: usize,
) -> Result<(ResultTable, ConfusionMatrix)> {
    run_experiment_inner(train, test, Some(initial), config, mode, runs)
}

fn run_experiment_inner(
    train: &[(Letter, FeatureVector)],
    test: &[(Letter, FeatureVector)],
    initial: Option<&[TrainedNetwork]>,
    config: &TrainConfig,
    mode: ExperimentMode,
    runs: usize,
) -> Result<(ResultTable, ConfusionMatrix)> {
    if runs == 0 {
        return Err(Error::InvalidConfig("runs must be at least 1".into()));
    }
    config.validate()?;
    if train.is_empty() || test.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let n_train = per_letter_counts(train);
    let n_test = per_letter_counts(test);
    check_coverage(&n_train, &n_test)?;

    let mut outcomes = Vec::with_capacity(runs);
    for r in 0..runs {
        let networks = match (r, initial) {
            (0, Some(networks)) => {
                check_networks(networks, mode)?;
                networks.to_vec()
            }
            _ => train_run(train, config, mode, mix(config.seed, r as u64))?,
        };
        outcomes.push(RunOutcome {
            epochs: outcome_epochs(&networks),
            predictions: evaluate_run(&networks, mode, test)?,
        });
    }
    tabulate(&n_train, &n_test, mode, &outcomes)
}

/// Extracts features for every corpus image (once per image) and splits
/// them into train and test sets, preserving corpus order.
pub fn corpus_features(
    corpus: &Corpus,
    pipeline: &PipelineConfig,
) -> Result<(LabeledFeatures, LabeledFeatures)> {
    let mut train = Vec::new();
    let mut test = Vec::new();
    for sample in &corpus.samples {
        let features = extract_features(&sample.image, pipeline)?;
        match sample.split {
            Split::Train => train.push((sample.label, features)),
            Split::Test => test.push((sample.label, features)),
        }
    }
    Ok((train, test))
}

/// The full experiment on an in-memory corpus: extract features with the
/// default pipeline, train `runs` times, and aggregate the table and
/// confusion matrix.
pub fn run_experiment(
    corpus: &Corpus,
    config: &TrainConfig,
    mode: ExperimentMode,
    runs: usize,
) -> Result<(ResultTable, ConfusionMatrix)> {
    let (train, test) = corpus_features(corpus, &PipelineConfig::default())?;
    run_experiment_on(&train, &test, config, mode, runs)
}

// ---------------------------------------------------------------------------
// Report rendering
// ---------------------------------------------------------------------------

use std::fmt::Write as _;

/// Renders the text report: the results table (Alphabet, Train, Test,
/// Epochs, Accuracy), the average, and the similarity-group rates.
pub fn render_text(table: &ResultTable, similarity: &SimilarityReport) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "{:<8}{:>7}{:>7}{:>8}{:>13}",
        "Alphabet", "Train", "Test", "Epochs", "Accuracy(%)"
    )
    .unwrap();
    for row in table.rows() {
        writeln!(
            out,
            "{:<8}{:>7}{:>7}{:>8}{:>13.1}",
            row.letter, row.n_train, row.n_test, row.epochs, row.accuracy
        )
        .unwrap();
    }
    writeln!(out).unwrap();
    writeln!(out, "Runs: {}", table.runs()).unwrap();
    writeln!(out, "Average accuracy: {:.2}%", table.average()).unwrap();
    writeln!(out).unwrap();
    writeln!(out, "Similar-letter groups (within-group confusion):").unwrap();
    for group in &similarity.groups {
        let letters: Vec<String> = group.letters.iter().map(|l| l.to_string()).collect();
        writeln!(
            out,
            "  {}: {:.2}% ({} of {})",
            letters.join(","),
            group.rate,
            group.confused,
            group.total
        )
        .unwrap();
    }
    writeln!(
        out,
        "Overall misclassification: {:.2}% ({} of {})",
        similarity.overall_rate, similarity.overall_confused, similarity.overall_total
    )
    .unwrap();
    out
}

/// Renders the CSV report: `alphabet,train,test,epochs,accuracy` rows, an
/// `average` row, and `#`-prefixed similarity comment lines.
pub fn render_csv(table: &ResultTable, similarity: &SimilarityReport) -> String {
    let mut out = String::from("alphabet,train,test,epochs,accuracy\n");
    for row in table.rows() {
        writeln!(
            out,
            "{},{},{},{},{:.1}",
            row.letter, row.n_train, row.n_test, row.epochs, row.accuracy
        )
        .unwrap();
    }
    writeln!(out, "average,,,,{:.2}", table.average()).unwrap();
    for group in &similarity.groups {
        let letters: Vec<String> = group.letters.iter().map(|l| l.to_string()).collect();
        writeln!(
            out,
            "# similarity {}: {:.2}%",
            letters.join(","),
            group.rate
        )
        .unwrap();
    }
    writeln!(
        out,
        "# overall misclassification: {:.2}%",
        similarity.overall_rate
    )
    .unwrap();
    out
}
