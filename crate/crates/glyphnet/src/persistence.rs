//! File formats: netpbm PGM images, ASCII glyph text, corpus manifest CSV,
//! feature CSV, and bit-exact model serialization.
//!
//! Real-valued parameters are stored as 16-hex-digit IEEE-754 binary64 bit
//! patterns rather than decimals: shortest-round-trip decimal rendering
//! differs across language runtimes, while the bit pattern is exact
//! everywhere (including subnormals and negative zero). Model files start
//! with the magic line `GLYPHNET-MLP 1`; trained-bundle files (training
//! config + reports + one or 26 embedded model blocks) start with
//! `GLYPHNET-TRAIN 1`.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result, ResultExt};
use crate::experiment::ExperimentMode;
use crate::features::FeatureVector;
use crate::imaging::{BinaryImage, GrayImage};
use crate::mlp::{
    Activation, InitMode, LayerSpec, Matrix, Network, NetworkTopology, StopReason, TrainConfig,
    TrainReport, UpdateMode,
};
use crate::synthgen::{Corpus, Letter, Split};

pub const MODEL_MAGIC: &str = "GLYPHNET-MLP 1";
pub const BUNDLE_MAGIC: &str = "GLYPHNET-TRAIN 1";

// ---------------------------------------------------------------------------
// PGM images
// ---------------------------------------------------------------------------

/// Parses a netpbm grayscale image, P2 (ASCII) or P5 (binary), maxval ≤ 255.
///
/// `#` comments and arbitrary whitespace are accepted in the header per the
/// netpbm convention; samples are rescaled from the declared maxval to the
/// crate's 0–255 intensity range.
pub fn parse_pgm(bytes: &[u8]) -> Result<GrayImage> {
    let magic = bytes
        .get(0..2)
        .ok_or_else(|| Error::MalformedHeader("file shorter than a magic number".into()))?;
    let binary = match magic {
        b"P2" => false,
        b"P5" => true,
        other => {
            return Err(Error::MalformedHeader(format!(
                "magic {:?} is not P2 or P5",
                String::from_utf8_lossy(other)
            )))
        }
    };

    let mut cursor = 2;
    let width = read_header_int(bytes, &mut cursor)?;
    let height = read_header_int(bytes, &mut cursor)?;
    let maxval = read_header_int(bytes, &mut cursor)?;
    if width == 0 || height == 0 {
        return Err(Error::MalformedHeader(format!(
            "dimensions {width}x{height} must be at least 1x1"
        )));
    }
    if maxval == 0 {
        return Err(Error::MalformedHeader("maxval 0 is not allowed".into()));
    }
    if maxval > 255 {
        return Err(Error::UnsupportedMaxval(maxval));
    }

    let count = width as usize * height as usize;
    let mut samples = Vec::with_capacity(count);
    if binary {
        // Exactly one whitespace byte separates the header from the raster.
        match bytes.get(cursor) {
            Some(b) if b.is_ascii_whitespace() => cursor += 1,
            Some(_) => {
                return Err(Error::MalformedHeader(
                    "expected a whitespace byte after maxval".into(),
                ))
            }
            None => return Err(Error::TruncatedData("raster missing".into())),
        }
        let raster = bytes.get(cursor..cursor + count).ok_or_else(|| {
            Error::TruncatedData(format!(
                "raster has {} of {count} bytes",
                bytes.len().saturating_sub(cursor)
            ))
        })?;
        for &b in raster {
            samples.push(check_sample(b as u32, maxval)?);
        }
    } else {
        for _ in 0..count {
            let v = read_header_int(bytes, &mut cursor).map_err(|e| match e {
                Error::MalformedHeader(m) if m.contains("ended") => {
                    Error::TruncatedData(format!("raster incomplete: {m}"))
                }
                other => other,
            })?;
            samples.push(check_sample(v, maxval)?);
        }
    }
    Ok(GrayImage::new(width as usize, height as usize, samples))
}

fn check_sample(v: u32, maxval: u32) -> Result<u8> {
    if v > maxval {
        return Err(Error::MalformedHeader(format!(
            "sample {v} exceeds maxval {maxval}"
        )));
    }
    Ok(((v * 255 + maxval / 2) / maxval) as u8)
}

/// Reads one ASCII unsigned integer, skipping whitespace and `#` comments.
fn read_header_int(bytes: &[u8], cursor: &mut usize) -> Result<u32> {
    loop {
        match bytes.get(*cursor) {
            Some(b) if b.is_ascii_whitespace() => *cursor += 1,
            Some(b'#') => {
                while let Some(&b) = bytes.get(*cursor) {
                    *cursor += 1;
                    if b == b'\n' {
                        break;
                    }
                }
            }
            Some(_) => break,
            None => {
                return Err(Error::MalformedHeader(
                    "header ended before all fields were read".into(),
                ))
            }
        }
    }
    let start = *cursor;
    while let Some(b) = bytes.get(*cursor) {
        if b.is_ascii_digit() {
            *cursor += 1;
        } else {
            break;
        }
    }
    if start == *cursor {
        return Err(Error::MalformedHeader(format!(
            "expected a digit at byte {start}"
        )));
    }
    let text = std::str::from_utf8(&bytes[start..*cursor]).expect("digits are ascii");
    text.parse::<u32>()
        .map_err(|_| Error::MalformedHeader(format!("integer {text} out of range")))
}

/// Writes the canonical form: `P5\n<w> <h>\n255\n` plus `w*h` raster bytes.
pub fn write_pgm(img: &GrayImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    out.extend_from_slice(img.pixels());
    out
}

// ---------------------------------------------------------------------------
// Glyph text
// ---------------------------------------------------------------------------

/// Parses the fixture format: one row per line, `#` = ink, `.` = background.
/// The trailing newline is optional.
pub fn parse_glyph_text(text: &str) -> Result<BinaryImage> {
    let lines: Vec<&str> = text.lines().map(|l| l.trim_end_matches('\r')).collect();
    if lines.is_empty() || lines.iter().all(|l| l.is_empty()) {
        return Err(Error::EmptyInput);
    }
    let width = lines[0].chars().count();
    let mut bits = Vec::with_capacity(width * lines.len());
    for line in &lines {
        if line.chars().count() != width {
            return Err(Error::RaggedRows);
        }
        for c in line.chars() {
            bits.push(match c {
                '#' => true,
                '.' => false,
                other => return Err(Error::InvalidCharacter(other)),
            });
        }
    }
    if width == 0 {
        return Err(Error::EmptyInput);
    }
    Ok(BinaryImage::new(width, lines.len(), bits))
}

/// Renders a binary image in the glyph text format (with trailing newline).
pub fn write_glyph_text(img: &BinaryImage) -> String {
    let mut out = String::with_capacity((img.width() + 1) * img.height());
    for y in 0..img.height() {
        for x in 0..img.width() {
            out.push(if img.get(x, y) { '#' } else { '.' });
        }
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// Token reader shared by the model and bundle formats
// ---------------------------------------------------------------------------

struct Tokens<'a> {
    iter: std::str::SplitWhitespace<'a>,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> Self {
        Tokens {
            iter: text.split_whitespace(),
        }
    }

    fn next(&mut self, what: &str) -> Result<&'a str> {
        self.iter
            .next()
            .ok_or_else(|| Error::TruncatedData(format!("expected {what}")))
    }

    fn expect(&mut self, literal: &str) -> Result<()> {
        let tok = self.next(&format!("keyword '{literal}'"))?;
        if tok == literal {
            Ok(())
        } else {
            Err(Error::TruncatedData(format!(
                "expected keyword '{literal}', found {tok:?}"
            )))
        }
    }

    fn usize(&mut self, what: &str) -> Result<usize> {
        let tok = self.next(what)?;
        tok.parse()
            .map_err(|_| Error::TruncatedData(format!("{what}: invalid integer {tok:?}")))
    }

    fn u64(&mut self, what: &str) -> Result<u64> {
        let tok = self.next(what)?;
        tok.parse()
            .map_err(|_| Error::TruncatedData(format!("{what}: invalid integer {tok:?}")))
    }

    /// A real encoded as its 16-hex-digit binary64 bit pattern; rejects
    /// non-finite values.
    fn real(&mut self, what: &str) -> Result<f64> {
        let v = self.real_allow_any(what)?;
        if !v.is_finite() {
            return Err(Error::NonFiniteValue(format!("{v} ({what})")));
        }
        Ok(v)
    }

    fn real_allow_any(&mut self, what: &str) -> Result<f64> {
        let tok = self.next(what)?;
        let bits = u64::from_str_radix(tok, 16)
            .map_err(|_| Error::TruncatedData(format!("{what}: invalid hex real {tok:?}")))?;
        if tok.len() != 16 {
            return Err(Error::TruncatedData(format!(
                "{what}: hex real must be 16 digits, got {tok:?}"
            )));
        }
        Ok(f64::from_bits(bits))
    }

    fn at_end(&mut self) -> bool {
        self.iter.clone().next().is_none()
    }
}

fn hex(v: f64) -> String {
    format!("{:016X}", v.to_bits())
}

// ---------------------------------------------------------------------------
// Model serialization
// ---------------------------------------------------------------------------

/// Serializes a network. Layout:
///
/// ```text
/// GLYPHNET-MLP 1
/// layers <n>
/// layer <i> <units> <activation>      (n lines)
/// weights <l> <rows> <cols>           (for each non-input layer l)
/// <rows lines of cols hex-encoded reals>
/// biases <l> <n>
/// <one line of n hex-encoded reals>
/// ```
pub fn save_model(net: &Network) -> Vec<u8> {
    let mut out = String::new();
    write_model_block(&mut out, net);
    out.into_bytes()
}

fn write_model_block(out: &mut String, net: &Network) {
    let layers = net.topology().layers();
    writeln!(out, "{MODEL_MAGIC}").unwrap();
    writeln!(out, "layers {}", layers.len()).unwrap();
    for (i, layer) in layers.iter().enumerate() {
        writeln!(out, "layer {i} {} {}", layer.units, layer.activation.tag()).unwrap();
    }
    for (l, (w, b)) in net.weights().iter().zip(net.biases()).enumerate() {
        writeln!(out, "weights {} {} {}", l + 1, w.rows(), w.cols()).unwrap();
        for r in 0..w.rows() {
            let row = &w.data()[r * w.cols()..(r + 1) * w.cols()];
            let line: Vec<String> = row.iter().map(|&v| hex(v)).collect();
            writeln!(out, "{}", line.join(" ")).unwrap();
        }
        writeln!(out, "biases {} {}", l + 1, b.len()).unwrap();
        let line: Vec<String> = b.iter().map(|&v| hex(v)).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
}

/// Deserializes [`save_model`] output. Rejects wrong magic, shape
/// mismatches, non-finite parameters, and truncated or trailing data.
pub fn load_model(bytes: &[u8]) -> Result<Network> {
    let text = std::str::from_utf8(bytes)
        .map_err(|_| Error::TruncatedData("model file is not valid UTF-8".into()))?;
    let first_line = text.lines().next().unwrap_or("").trim_end_matches('\r');
    if first_line != MODEL_MAGIC {
        return Err(Error::BadMagic(first_line.to_string()));
    }
    let mut tokens = Tokens::new(text);
    let net = parse_model_tokens(&mut tokens)?;
    if !tokens.at_end() {
        return Err(Error::TruncatedData(
            "trailing data after the model block".into(),
        ));
    }
    Ok(net)
}

/// Parses one model block from a token stream (used directly by the bundle
/// format, which embeds model blocks).
fn parse_model_tokens(tokens: &mut Tokens) -> Result<Network> {
    let magic_word = tokens.next("magic")?;
    let magic_version = tokens.next("magic version")?;
    if magic_word != "GLYPHNET-MLP" || magic_version != "1" {
        return Err(Error::BadMagic(format!("{magic_word} {magic_version}")));
    }

    tokens.expect("layers")?;
    let layer_count = tokens.usize("layer count")?;
    if layer_count < 2 {
        return Err(Error::ShapeMismatch(format!(
            "layer count {layer_count} is below the 2-layer minimum"
        )));
    }
    let mut layers = Vec::with_capacity(layer_count);
    for i in 0..layer_count {
        tokens.expect("layer")?;
        let index = tokens.usize("layer index")?;
        if index != i {
            return Err(Error::ShapeMismatch(format!(
                "layer index {index} out of order (expected {i})"
            )));
        }
        let units = tokens.usize("layer units")?;
        let tag = tokens.next("layer activation")?;
        let activation = Activation::from_tag(tag)
            .ok_or_else(|| Error::TruncatedData(format!("unknown activation {tag:?}")))?;
        layers.push(LayerSpec { units, activation });
    }
    let topology = NetworkTopology::new(layers)?;

    let mut weights = Vec::with_capacity(layer_count - 1);
    let mut biases = Vec::with_capacity(layer_count - 1);
    for l in 1..layer_count {
        let expected_rows = topology.layers()[l].units;
        let expected_cols = topology.layers()[l - 1].units;

        tokens.expect("weights")?;
        let index = tokens.usize("weights layer index")?;
        let rows = tokens.usize("weights rows")?;
        let cols = tokens.usize("weights cols")?;
        if index != l || rows != expected_rows || cols != expected_cols {
            return Err(Error::ShapeMismatch(format!(
                "weights {index} declared {rows}x{cols}, topology needs layer {l} \
                 as {expected_rows}x{expected_cols}"
            )));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for _ in 0..rows * cols {
            data.push(tokens.real("weight")?);
        }
        weights.push(Matrix::from_vec(rows, cols, data));

        tokens.expect("biases")?;
        let index = tokens.usize("biases layer index")?;
        let n = tokens.usize("biases length")?;
        if index != l || n != expected_rows {
            return Err(Error::ShapeMismatch(format!(
                "biases {index} declared length {n}, topology needs layer {l} \
                 with {expected_rows}"
            )));
        }
        let mut b = Vec::with_capacity(n);
        for _ in 0..n {
            b.push(tokens.real("bias")?);
        }
        biases.push(b);
    }
    Network::from_parts(topology, weights, biases)
}

// ---------------------------------------------------------------------------
// Trained bundles (model container with config and reports)
// ---------------------------------------------------------------------------

/// One trained network inside a bundle: its one-vs-rest letter (`None` for
/// the multiclass network), training report, and parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainedNetwork {
    pub label: Option<Letter>,
    pub report: TrainReport,
    pub network: Network,
}

/// A training run's full output: the mode, the exact configuration (kept so
/// evaluation can repeat training for multi-run reports), and one network
/// (multiclass) or 26 (per-letter, alphabetical).
#[derive(Debug, Clone, PartialEq)]
pub struct TrainedBundle {
    pub mode: ExperimentMode,
    pub config: TrainConfig,
    pub networks: Vec<TrainedNetwork>,
}

/// Serializes a bundle: a `GLYPHNET-TRAIN 1` header with the config
/// (reals hex-encoded), then per network a metadata block and an embedded
/// model block.
pub fn save_bundle(bundle: &TrainedBundle) -> Vec<u8> {
    let mut out = String::new();
    writeln!(out, "{BUNDLE_MAGIC}").unwrap();
    writeln!(out, "mode {}", bundle.mode.tag()).unwrap();
    writeln!(out, "lr {}", hex(bundle.config.learning_rate)).unwrap();
    writeln!(out, "max-epochs {}", bundle.config.max_epochs).unwrap();
    writeln!(out, "tolerance {}", hex(bundle.config.tolerance)).unwrap();
    writeln!(out, "init {}", bundle.config.init_mode.tag()).unwrap();
    writeln!(out, "update {}", bundle.config.update_mode.tag()).unwrap();
    writeln!(out, "seed {}", bundle.config.seed).unwrap();
    writeln!(out, "networks {}", bundle.networks.len()).unwrap();
    for (i, trained) in bundle.networks.iter().enumerate() {
        let label = trained.label.map_or("*".to_string(), |l| l.to_string());
        writeln!(out, "network {i} {label}").unwrap();
        writeln!(out, "epochs {}", trained.report.epochs_run).unwrap();
        writeln!(out, "final-loss {}", hex(trained.report.final_mean_loss)).unwrap();
        writeln!(out, "stop {}", trained.report.stop_reason.tag()).unwrap();
        write_model_block(&mut out, &trained.network);
    }
    out.into_bytes()
}

/// Deserializes [`save_bundle`] output.
pub fn load_bundle(bytes: &[u8]) -> Result<TrainedBundle> {
    let text = std::str::from_utf8(bytes)
        .map_err(|_| Error::TruncatedData("bundle file is not valid UTF-8".into()))?;
    let first_line = text.lines().next().unwrap_or("").trim_end_matches('\r');
    if first_line != BUNDLE_MAGIC {
        return Err(Error::BadMagic(first_line.to_string()));
    }
    let mut tokens = Tokens::new(text);
    tokens.next("magic")?;
    tokens.next("magic version")?;

    tokens.expect("mode")?;
    let mode_tag = tokens.next("mode value")?;
    let mode = ExperimentMode::from_tag(mode_tag)
        .ok_or_else(|| Error::TruncatedData(format!("unknown mode {mode_tag:?}")))?;
    tokens.expect("lr")?;
    let learning_rate = tokens.real("lr")?;
    tokens.expect("max-epochs")?;
    let max_epochs = tokens.usize("max-epochs")?;
    tokens.expect("tolerance")?;
    let tolerance = tokens.real("tolerance")?;
    tokens.expect("init")?;
    let init_tag = tokens.next("init value")?;
    let init_mode = InitMode::from_tag(init_tag)
        .ok_or_else(|| Error::TruncatedData(format!("unknown init mode {init_tag:?}")))?;
    tokens.expect("update")?;
    let update_tag = tokens.next("update value")?;
    let update_mode = UpdateMode::from_tag(update_tag)
        .ok_or_else(|| Error::TruncatedData(format!("unknown update mode {update_tag:?}")))?;
    tokens.expect("seed")?;
    let seed = tokens.u64("seed")?;
    let config = TrainConfig {
        learning_rate,
        max_epochs,
        tolerance,
        init_mode,
        update_mode,
        seed,
    };
    config.validate()?;

    tokens.expect("networks")?;
    let count = tokens.usize("network count")?;
    let expected = match mode {
        ExperimentMode::Multiclass => 1,
        ExperimentMode::PerLetter => 26,
    };
    if count != expected {
        return Err(Error::ShapeMismatch(format!(
            "{} bundles need {expected} networks, found {count}",
            mode.tag()
        )));
    }

    let mut networks = Vec::with_capacity(count);
    for i in 0..count {
        tokens.expect("network")?;
        let index = tokens.usize("network index")?;
        if index != i {
            return Err(Error::ShapeMismatch(format!(
                "network index {index} out of order (expected {i})"
            )));
        }
        let label_tok = tokens.next("network label")?;
        let label = match (mode, label_tok) {
            (ExperimentMode::Multiclass, "*") => None,
            (ExperimentMode::PerLetter, tok) if tok.chars().count() == 1 => {
                let letter = Letter::from_char(tok.chars().next().unwrap())
                    .map_err(|_| Error::InvalidLabel(tok.to_string()))?;
                if letter.index() != i {
                    return Err(Error::ShapeMismatch(format!(
                        "network {i} labeled '{letter}', expected '{}'",
                        Letter::from_index(i)
                    )));
                }
                Some(letter)
            }
            (_, tok) => return Err(Error::InvalidLabel(tok.to_string())),
        };
        tokens.expect("epochs")?;
        let epochs_run = tokens.usize("epochs")?;
        tokens.expect("final-loss")?;
        let final_mean_loss = tokens.real("final-loss")?;
        tokens.expect("stop")?;
        let stop_tag = tokens.next("stop reason")?;
        let stop_reason = StopReason::from_tag(stop_tag)
            .ok_or_else(|| Error::TruncatedData(format!("unknown stop reason {stop_tag:?}")))?;
        let network = parse_model_tokens(&mut tokens)?;
        networks.push(TrainedNetwork {
            label,
            report: TrainReport {
                epochs_run,
                final_mean_loss,
                stop_reason,
            },
            network,
        });
    }
    if !tokens.at_end() {
        return Err(Error::TruncatedData(
            "trailing data after the last network".into(),
        ));
    }
    Ok(TrainedBundle {
        mode,
        config,
        networks,
    })
}

// ---------------------------------------------------------------------------
// Feature CSV
// ---------------------------------------------------------------------------

/// One parsed feature row; `split` is present only in the split variant.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureRow {
    pub split: Option<Split>,
    pub label: Letter,
    pub features: FeatureVector,
}

/// A parsed feature file.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureFile {
    pub has_split: bool,
    pub rows: Vec<FeatureRow>,
}

fn feature_header(arity: usize, with_split: bool) -> String {
    let mut header = String::from(if with_split { "split,label" } else { "label" });
    for i in 0..arity {
        write!(header, ",f{i:02}").unwrap();
    }
    header
}

/// Writes the plain variant: header `label,f00..f24` (for arity 25), one
/// row per sample with 0/1 fields.
pub fn write_features(rows: &[(Letter, FeatureVector)]) -> Vec<u8> {
    let arity = rows.first().map_or(25, |(_, f)| f.len());
    let mut out = feature_header(arity, false);
    out.push('\n');
    for (label, features) in rows {
        out.push(label.as_char());
        for i in 0..features.len() {
            out.push(',');
            out.push(if features.bit(i) { '1' } else { '0' });
        }
        out.push('\n');
    }
    out.into_bytes()
}

/// Writes the split variant with the extra leading `split` column (the
/// extract command's output format).
pub fn write_features_split(rows: &[(Split, Letter, FeatureVector)]) -> Vec<u8> {
    let arity = rows.first().map_or(25, |(_, _, f)| f.len());
    let mut out = feature_header(arity, true);
    out.push('\n');
    for (split, label, features) in rows {
        out.push_str(split.tag());
        out.push(',');
        out.push(label.as_char());
        for i in 0..features.len() {
            out.push(',');
            out.push(if features.bit(i) { '1' } else { '0' });
        }
        out.push('\n');
    }
    out.into_bytes()
}

/// Reads either feature CSV variant, detecting the split column from the
/// header.
pub fn read_features_any(bytes: &[u8]) -> Result<FeatureFile> {
    let text = std::str::from_utf8(bytes)
        .map_err(|_| Error::MalformedHeader("feature file is not valid UTF-8".into()))?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::MalformedHeader("feature file is empty".into()))?
        .trim_end_matches('\r');
    let fields: Vec<&str> = header.split(',').collect();
    let (has_split, arity) = match fields.as_slice() {
        ["split", "label", rest @ ..] if !rest.is_empty() => (true, rest.len()),
        ["label", rest @ ..] if !rest.is_empty() => (false, rest.len()),
        _ => {
            return Err(Error::MalformedHeader(format!(
                "unrecognized feature header {header:?}"
            )))
        }
    };
    let expected_fields = arity + if has_split { 2 } else { 1 };

    let mut rows = Vec::new();
    for line in lines {
        let line = line.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != expected_fields {
            return Err(Error::WrongArity {
                expected: expected_fields,
                got: fields.len(),
            });
        }
        let mut iter = fields.into_iter();
        let split = if has_split {
            let tag = iter.next().unwrap();
            Some(Split::from_tag(tag).ok_or_else(|| Error::InvalidLabel(tag.to_string()))?)
        } else {
            None
        };
        let label_field = iter.next().unwrap();
        let mut chars = label_field.chars();
        let label = match (chars.next(), chars.next()) {
            (Some(c), None) => {
                Letter::from_char(c).map_err(|_| Error::InvalidLabel(label_field.to_string()))?
            }
            _ => return Err(Error::InvalidLabel(label_field.to_string())),
        };
        let mut bits = Vec::with_capacity(arity);
        for field in iter {
            bits.push(match field {
                "0" => false,
                "1" => true,
                other => return Err(Error::InvalidBit(other.to_string())),
            });
        }
        rows.push(FeatureRow {
            split,
            label,
            features: FeatureVector::new(bits),
        });
    }
    Ok(FeatureFile { has_split, rows })
}

/// Reads the plain variant produced by [`write_features`].
pub fn read_features(bytes: &[u8]) -> Result<Vec<(Letter, FeatureVector)>> {
    let file = read_features_any(bytes)?;
    if file.has_split {
        return Err(Error::MalformedHeader(
            "expected the plain label,f00.. variant, found a split column".into(),
        ));
    }
    Ok(file
        .rows
        .into_iter()
        .map(|row| (row.label, row.features))
        .collect())
}

// ---------------------------------------------------------------------------
// Corpus manifest and directory layout
// ---------------------------------------------------------------------------

/// One manifest line: a corpus image path (relative to the corpus root)
/// with its label and split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestRow {
    pub relative_path: String,
    pub label: Letter,
    pub split: Split,
}

/// Relative path of a corpus image: `<letter>/<split>_<index>.pgm`.
pub fn sample_rel_path(label: Letter, split: Split, index: usize) -> String {
    format!("{label}/{}_{index:03}.pgm", split.tag())
}

/// Writes the manifest CSV: header `relative_path,label,split`.
pub fn write_manifest(rows: &[ManifestRow]) -> Vec<u8> {
    let mut out = String::from("relative_path,label,split\n");
    for row in rows {
        writeln!(
            out,
            "{},{},{}",
            row.relative_path,
            row.label,
            row.split.tag()
        )
        .unwrap();
    }
    out.into_bytes()
}

/// Reads a manifest, enforcing the header, field arity, and path
/// uniqueness.
pub fn read_manifest(bytes: &[u8]) -> Result<Vec<ManifestRow>> {
    let text = std::str::from_utf8(bytes)
        .map_err(|_| Error::MalformedHeader("manifest is not valid UTF-8".into()))?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::MalformedHeader("manifest is empty".into()))?
        .trim_end_matches('\r');
    if header != "relative_path,label,split" {
        return Err(Error::MalformedHeader(format!(
            "unrecognized manifest header {header:?}"
        )));
    }
    let mut rows = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for line in lines {
        let line = line.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(Error::WrongArity {
                expected: 3,
                got: fields.len(),
            });
        }
        let relative_path = fields[0].to_string();
        if !seen.insert(relative_path.clone()) {
            return Err(Error::DuplicatePath(relative_path));
        }
        let mut chars = fields[1].chars();
        let label = match (chars.next(), chars.next()) {
            (Some(c), None) => {
                Letter::from_char(c).map_err(|_| Error::InvalidLabel(fields[1].to_string()))?
            }
            _ => return Err(Error::InvalidLabel(fields[1].to_string())),
        };
        let split =
            Split::from_tag(fields[2]).ok_or_else(|| Error::InvalidLabel(fields[2].to_string()))?;
        rows.push(ManifestRow {
            relative_path,
            label,
            split,
        });
    }
    Ok(rows)
}

/// Writes a corpus to disk: one PGM per sample under
/// `<letter>/<split>_<index>.pgm`, plus `manifest.csv` listing every image
/// in corpus order. Returns the manifest rows.
pub fn save_corpus(corpus: &Corpus, dir: &Path) -> Result<Vec<ManifestRow>> {
    std::fs::create_dir_all(dir)
        .map_err(Error::from)
        .context(dir.display().to_string())?;
    let mut rows = Vec::with_capacity(corpus.samples.len());
    for sample in &corpus.samples {
        let rel = sample_rel_path(sample.label, sample.split, sample.index);
        let path = dir.join(&rel);
        let parent = path.parent().expect("sample paths have a parent");
        std::fs::create_dir_all(parent)
            .map_err(Error::from)
            .context(parent.display().to_string())?;
        std::fs::write(&path, write_pgm(&sample.image))
            .map_err(Error::from)
            .context(path.display().to_string())?;
        rows.push(ManifestRow {
            relative_path: rel,
            label: sample.label,
            split: sample.split,
        });
    }
    let manifest_path = dir.join("manifest.csv");
    std::fs::write(&manifest_path, write_manifest(&rows))
        .map_err(Error::from)
        .context(manifest_path.display().to_string())?;
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mlp::{init_network, NetworkTopology, TrainConfig};

    mod pgm {
        use super::*;

        #[test]
        fn parses_ascii_p2() {
            let img = parse_pgm(b"P2 2 2 255 0 0 0 0").unwrap();
            assert_eq!((img.width(), img.height()), (2, 2));
            assert_eq!(img.pixels(), &[0, 0, 0, 0]);
        }

        #[test]
        fn equivalent_p5_parses_identically() {
            let p5 = b"P5\n2 2\n255\n\x00\x00\x00\x00";
            assert_eq!(
                parse_pgm(p5).unwrap(),
                parse_pgm(b"P2 2 2 255 0 0 0 0").unwrap()
            );
        }

        #[test]
        fn comments_and_odd_whitespace_are_accepted() {
            let text = b"P2 # a comment\n# another\n 2\t1 # width height\n255\n 7 200 ";
            let img = parse_pgm(text).unwrap();
            assert_eq!(img.pixels(), &[7, 200]);
        }

        #[test]
        fn sixteen_bit_maxval_is_unsupported() {
            assert!(matches!(
                parse_pgm(b"P2 2 2 65535 0 0 0 0"),
                Err(Error::UnsupportedMaxval(65535))
            ));
        }

        #[test]
        fn low_maxval_rescales_to_255() {
            let img = parse_pgm(b"P2 2 1 1 0 1").unwrap();
            assert_eq!(img.pixels(), &[0, 255]);
        }

        #[test]
        fn truncated_p5_raster_is_an_error() {
            assert!(matches!(
                parse_pgm(b"P5\n2 2\n255\n\x00\x00"),
                Err(Error::TruncatedData(_))
            ));
        }

        #[test]
        fn truncated_p2_samples_are_an_error() {
            assert!(matches!(
                parse_pgm(b"P2 2 2 255 0 0"),
                Err(Error::TruncatedData(_))
            ));
        }

        #[test]
        fn garbage_magic_is_malformed() {
            assert!(matches!(
                parse_pgm(b"P6 1 1 255 0"),
                Err(Error::MalformedHeader(_))
            ));
            assert!(matches!(parse_pgm(b"x"), Err(Error::MalformedHeader(_))));
        }

        #[test]
        fn sample_above_maxval_is_rejected() {
            assert!(matches!(
                parse_pgm(b"P2 1 1 10 11"),
                Err(Error::MalformedHeader(_))
            ));
        }

        #[test]
        fn canonical_write_form() {
            let img = GrayImage::new(1, 1, vec![0]);
            assert_eq!(write_pgm(&img), b"P5\n1 1\n255\n\x00");
        }

        #[test]
        fn two_by_two_header_is_eleven_bytes_plus_raster() {
            let img = GrayImage::new(2, 2, vec![1, 2, 3, 4]);
            let bytes = write_pgm(&img);
            assert_eq!(&bytes[..11], b"P5\n2 2\n255\n");
            assert_eq!(bytes.len(), 11 + 4);
        }

        #[test]
        fn write_parse_round_trip() {
            let pixels: Vec<u8> = (0..35).map(|i| (i * 7 % 256) as u8).collect();
            let img = GrayImage::new(7, 5, pixels);
            assert_eq!(parse_pgm(&write_pgm(&img)).unwrap(), img);
        }
    }

    mod glyph_text {
        use super::*;

        #[test]
        fn parses_and_round_trips() {
            let img = parse_glyph_text("#.\n.#").unwrap();
            assert_eq!(img.bits(), &[true, false, false, true]);
            assert_eq!(write_glyph_text(&img), "#.\n.#\n");
            assert_eq!(parse_glyph_text(&write_glyph_text(&img)).unwrap(), img);
        }

        #[test]
        fn trailing_newline_is_optional() {
            assert_eq!(
                parse_glyph_text("#.\n.#\n").unwrap(),
                parse_glyph_text("#.\n.#").unwrap()
            );
        }

        #[test]
        fn ragged_rows_are_rejected() {
            assert!(matches!(parse_glyph_text("##\n#"), Err(Error::RaggedRows)));
        }

        #[test]
        fn empty_input_is_rejected() {
            assert!(matches!(parse_glyph_text(""), Err(Error::EmptyInput)));
            assert!(matches!(parse_glyph_text("\n\n"), Err(Error::EmptyInput)));
        }

        #[test]
        fn other_characters_are_rejected() {
            assert!(matches!(
                parse_glyph_text("#x\n.."),
                Err(Error::InvalidCharacter('x'))
            ));
        }
    }

    mod model {
        use super::*;

        fn sample_net(seed: u64) -> Network {
            init_network(
                &NetworkTopology::multiclass(25),
                &TrainConfig {
                    seed,
                    ..TrainConfig::default()
                },
            )
        }

        #[test]
        fn round_trip_is_bit_exact() {
            let net = sample_net(99);
            let loaded = load_model(&save_model(&net)).unwrap();
            assert_eq!(loaded, net);
            for (a, b) in loaded.weights().iter().zip(net.weights()) {
                for (x, y) in a.data().iter().zip(b.data()) {
                    assert_eq!(x.to_bits(), y.to_bits());
                }
            }
        }

        #[test]
        fn special_values_survive_the_round_trip() {
            let topology = NetworkTopology::new(vec![
                LayerSpec {
                    units: 2,
                    activation: Activation::Identity,
                },
                LayerSpec {
                    units: 2,
                    activation: Activation::Logsig,
                },
            ])
            .unwrap();
            let subnormal = f64::from_bits(0x0000_0000_0000_0001);
            let net = Network::from_parts(
                topology,
                vec![Matrix::from_vec(
                    2,
                    2,
                    vec![-0.0, subnormal, f64::MIN, f64::MAX],
                )],
                vec![vec![5e-324, -1.0]],
            )
            .unwrap();
            let loaded = load_model(&save_model(&net)).unwrap();
            let bits = |n: &Network| -> Vec<u64> {
                n.weights()[0]
                    .data()
                    .iter()
                    .chain(n.biases()[0].iter())
                    .map(|v| v.to_bits())
                    .collect()
            };
            assert_eq!(bits(&loaded), bits(&net));
            // Negative zero keeps its sign bit.
            assert_eq!(loaded.weights()[0].get(0, 0).to_bits(), (-0.0f64).to_bits());
        }

        #[test]
        fn one_point_zero_encodes_canonically() {
            assert_eq!(hex(1.0), "3FF0000000000000");
        }

        #[test]
        fn wrong_magic_is_rejected() {
            let mut bytes = save_model(&sample_net(1));
            let text = String::from_utf8(bytes.clone()).unwrap();
            let tampered = text.replace("GLYPHNET-MLP 1", "GLYPHNET-MLP 9");
            assert!(matches!(
                load_model(tampered.as_bytes()),
                Err(Error::BadMagic(m)) if m == "GLYPHNET-MLP 9"
            ));
            bytes.clear();
            assert!(matches!(load_model(&bytes), Err(Error::BadMagic(_))));
        }

        #[test]
        fn shape_tampering_is_rejected() {
            let text = String::from_utf8(save_model(&sample_net(2))).unwrap();
            let tampered = text.replace("weights 1 25 25", "weights 1 25 24");
            assert!(matches!(
                load_model(tampered.as_bytes()),
                Err(Error::ShapeMismatch(_))
            ));
        }

        #[test]
        fn non_finite_values_are_rejected() {
            let text = String::from_utf8(save_model(&sample_net(3))).unwrap();
            // Replace the first weight with +inf's bit pattern.
            let first_weight = text
                .lines()
                .nth(7)
                .unwrap()
                .split_whitespace()
                .next()
                .unwrap()
                .to_string();
            let tampered = text.replacen(&first_weight, "7FF0000000000000", 1);
            assert!(matches!(
                load_model(tampered.as_bytes()),
                Err(Error::NonFiniteValue(_))
            ));
        }

        #[test]
        fn truncation_is_rejected() {
            let bytes = save_model(&sample_net(4));
            let truncated = &bytes[..bytes.len() / 2];
            assert!(matches!(
                load_model(truncated),
                Err(Error::TruncatedData(_) | Error::ShapeMismatch(_))
            ));
        }

        #[test]
        fn predictions_survive_the_round_trip() {
            use crate::features::FeatureVector;
            use crate::mlp::predict;
            let net = sample_net(5);
            let loaded = load_model(&save_model(&net)).unwrap();
            let features = FeatureVector::from_bit_string("1011001110001101010101011").unwrap();
            let (i1, o1) = predict(&net, &features).unwrap();
            let (i2, o2) = predict(&loaded, &features).unwrap();
            assert_eq!(i1, i2);
            let bits = |v: &[f64]| v.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
            assert_eq!(bits(&o1), bits(&o2));
        }
    }

    mod bundles {
        use super::*;
        use crate::mlp::StopReason;

        fn sample_bundle() -> TrainedBundle {
            let config = TrainConfig {
                seed: 42,
                ..TrainConfig::default()
            };
            let network = init_network(&NetworkTopology::multiclass(25), &config);
            TrainedBundle {
                mode: ExperimentMode::Multiclass,
                config,
                networks: vec![TrainedNetwork {
                    label: None,
                    report: TrainReport {
                        epochs_run: 321,
                        final_mean_loss: 0.004999,
                        stop_reason: StopReason::ToleranceMet,
                    },
                    network,
                }],
            }
        }

        #[test]
        fn round_trip_is_exact() {
            let bundle = sample_bundle();
            let loaded = load_bundle(&save_bundle(&bundle)).unwrap();
            assert_eq!(loaded, bundle);
            assert_eq!(
                loaded.networks[0].report.final_mean_loss.to_bits(),
                bundle.networks[0].report.final_mean_loss.to_bits()
            );
        }

        #[test]
        fn per_letter_round_trip() {
            let config = TrainConfig::default();
            let networks = Letter::all()
                .map(|letter| TrainedNetwork {
                    label: Some(letter),
                    report: TrainReport {
                        epochs_run: 10 + letter.index(),
                        final_mean_loss: 0.001 * (letter.index() + 1) as f64,
                        stop_reason: StopReason::MaxEpochs,
                    },
                    network: init_network(
                        &NetworkTopology::per_letter(25),
                        &TrainConfig {
                            seed: letter.index() as u64,
                            ..TrainConfig::default()
                        },
                    ),
                })
                .collect();
            let bundle = TrainedBundle {
                mode: ExperimentMode::PerLetter,
                config,
                networks,
            };
            assert_eq!(load_bundle(&save_bundle(&bundle)).unwrap(), bundle);
        }

        #[test]
        fn model_magic_is_not_a_bundle() {
            let net = init_network(&NetworkTopology::multiclass(25), &TrainConfig::default());
            assert!(matches!(
                load_bundle(&save_model(&net)),
                Err(Error::BadMagic(_))
            ));
        }

        #[test]
        fn network_count_must_match_mode() {
            let bundle = sample_bundle();
            let text = String::from_utf8(save_bundle(&bundle)).unwrap();
            let tampered = text.replace("mode multiclass", "mode per-letter");
            assert!(matches!(
                load_bundle(tampered.as_bytes()),
                Err(Error::ShapeMismatch(_))
            ));
        }
    }

    mod features_csv {
        use super::*;

        fn rows() -> Vec<(Letter, FeatureVector)> {
            vec![
                (
                    Letter::from_char('a').unwrap(),
                    FeatureVector::new(vec![false; 25]),
                ),
                (
                    Letter::from_char('z').unwrap(),
                    FeatureVector::from_bit_string("1111110001100011000111111").unwrap(),
                ),
            ]
        }

        #[test]
        fn plain_variant_layout() {
            let bytes = write_features(&rows());
            let text = String::from_utf8(bytes).unwrap();
            let mut lines = text.lines();
            let header = lines.next().unwrap();
            assert!(header.starts_with("label,f00,f01,"));
            assert!(header.ends_with(",f24"));
            assert_eq!(header.split(',').count(), 26);
            assert_eq!(
                lines.next().unwrap(),
                format!("a,{}", vec!["0"; 25].join(","))
            );
        }

        #[test]
        fn round_trip_preserves_order_labels_and_bits() {
            let original = rows();
            let parsed = read_features(&write_features(&original)).unwrap();
            assert_eq!(parsed, original);
        }

        #[test]
        fn split_variant_round_trip() {
            let rows = vec![
                (
                    Split::Train,
                    Letter::from_char('b').unwrap(),
                    FeatureVector::new(vec![true; 25]),
                ),
                (
                    Split::Test,
                    Letter::from_char('b').unwrap(),
                    FeatureVector::new(vec![false; 25]),
                ),
            ];
            let bytes = write_features_split(&rows);
            let text = String::from_utf8(bytes.clone()).unwrap();
            assert!(text.starts_with("split,label,f00"));
            let parsed = read_features_any(&bytes).unwrap();
            assert!(parsed.has_split);
            assert_eq!(parsed.rows.len(), 2);
            assert_eq!(parsed.rows[0].split, Some(Split::Train));
            assert_eq!(parsed.rows[1].split, Some(Split::Test));
            assert_eq!(parsed.rows[0].label.as_char(), 'b');
        }

        #[test]
        fn short_rows_are_wrong_arity() {
            let mut text = String::from_utf8(write_features(&rows())).unwrap();
            text.push_str(&format!("c,{}\n", vec!["1"; 24].join(",")));
            assert!(matches!(
                read_features(text.as_bytes()),
                Err(Error::WrongArity {
                    expected: 26,
                    got: 25
                })
            ));
        }

        #[test]
        fn bad_bits_and_labels_are_rejected() {
            let header = feature_header(2, false);
            let two = |row: &str| format!("{header}\n{row}\n");
            assert!(matches!(
                read_features_any(two("a,1,2").as_bytes()),
                Err(Error::InvalidBit(b)) if b == "2"
            ));
            assert!(matches!(
                read_features_any(two("A,1,0").as_bytes()),
                Err(Error::InvalidLabel(_))
            ));
            assert!(matches!(
                read_features_any(two("ab,1,0").as_bytes()),
                Err(Error::InvalidLabel(_))
            ));
        }

        #[test]
        fn bad_split_tag_is_rejected() {
            let text = "split,label,f00,f01\nvalidation,a,0,1\n";
            assert!(matches!(
                read_features_any(text.as_bytes()),
                Err(Error::InvalidLabel(s)) if s == "validation"
            ));
        }
    }

    mod manifest {
        use super::*;

        #[test]
        fn layout_and_round_trip() {
            let rows = vec![
                ManifestRow {
                    relative_path: sample_rel_path(
                        Letter::from_char('a').unwrap(),
                        Split::Train,
                        0,
                    ),
                    label: Letter::from_char('a').unwrap(),
                    split: Split::Train,
                },
                ManifestRow {
                    relative_path: sample_rel_path(Letter::from_char('a').unwrap(), Split::Test, 0),
                    label: Letter::from_char('a').unwrap(),
                    split: Split::Test,
                },
            ];
            let bytes = write_manifest(&rows);
            let text = String::from_utf8(bytes.clone()).unwrap();
            assert_eq!(
                text,
                "relative_path,label,split\na/train_000.pgm,a,train\na/test_000.pgm,a,test\n"
            );
            assert_eq!(read_manifest(&bytes).unwrap(), rows);
        }

        #[test]
        fn duplicate_paths_are_rejected() {
            let text = "relative_path,label,split\nx.pgm,a,train\nx.pgm,b,test\n";
            assert!(matches!(
                read_manifest(text.as_bytes()),
                Err(Error::DuplicatePath(p)) if p == "x.pgm"
            ));
        }

        #[test]
        fn bad_header_is_rejected() {
            assert!(matches!(
                read_manifest(b"path,label,split\n"),
                Err(Error::MalformedHeader(_))
            ));
        }
    }
}
