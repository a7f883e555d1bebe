//! Deterministic synthetic handwriting: embedded reference glyphs for a–z
//! plus seeded affine perturbations, generating labeled train/test corpora.
//!
//! The 26 templates are hand-designed block-letter rasters embedded in the
//! binary (see the `templates` submodule); "handwriting variation" is a
//! seeded chain of rotation, shear, per-axis scale, translation, dilation,
//! and pixel noise. Every letter draws from its own [`SplitMix64`] stream
//! derived with [`mix`], so changing one letter's sample count never
//! perturbs another letter's samples.

mod templates;

use crate::error::{Error, Result};
use crate::imaging::{scale_to_standard, BinaryImage, GrayImage};
use crate::persistence::parse_glyph_text;
use crate::rng::{mix, SplitMix64};

/// Design size of the reference glyphs (pixels per side).
pub const DESIGN_SIDE: usize = 50;

/// A lowercase letter `a..=z`, stored as its alphabet index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u8);

impl Letter {
    /// Parses a lowercase ASCII letter.
    pub fn from_char(c: char) -> Result<Letter> {
        if c.is_ascii_lowercase() {
            Ok(Letter(c as u8 - b'a'))
        } else {
            Err(Error::UnknownLetter(c))
        }
    }

    /// Builds from an alphabet index. Panics when `index >= 26`.
    pub fn from_index(index: usize) -> Letter {
        assert!(index < 26, "letter index {index} out of range");
        Letter(index as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn as_char(self) -> char {
        (b'a' + self.0) as char
    }

    /// All 26 letters in alphabetical order.
    pub fn all() -> impl Iterator<Item = Letter> {
        (0..26).map(Letter)
    }
}

impl std::fmt::Display for Letter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        // pad() keeps width/alignment specs working in table rendering.
        f.pad(self.as_char().encode_utf8(&mut [0; 4]))
    }
}

/// Which partition a sample belongs to. `Train` orders before `Test`, which
/// fixes the manifest ordering within a letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Split {
    Train,
    Test,
}

impl Split {
    pub fn tag(self) -> &'static str {
        match self {
            Split::Train => "train",
            Split::Test => "test",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Split> {
        match tag {
            "train" => Some(Split::Train),
            "test" => Some(Split::Test),
            _ => None,
        }
    }
}

/// A reference glyph: the letter plus its design-size bitmap.
#[derive(Debug, Clone)]
pub struct GlyphTemplate {
    pub letter: Letter,
    pub bitmap: BinaryImage,
}

/// Returns the embedded reference template for a letter.
///
/// The bitmap is the embedded 25x25 raster upscaled to the 50x50 design
/// size; it is stable across runs and versions within a major format
/// version. Non-letters fail with [`Error::UnknownLetter`].
pub fn reference_glyph(letter: char) -> Result<BinaryImage> {
    Ok(template_bitmap(Letter::from_char(letter)?))
}

fn template_bitmap(letter: Letter) -> BinaryImage {
    let art = templates::GLYPH_ART[letter.index()];
    let small = parse_glyph_text(art).expect("embedded glyph art is well-formed");
    scale_to_standard(&small, DESIGN_SIDE)
}

/// All 26 templates in alphabetical order.
pub fn all_templates() -> Vec<GlyphTemplate> {
    Letter::all()
        .map(|letter| GlyphTemplate {
            letter,
            bitmap: template_bitmap(letter),
        })
        .collect()
}

/// Bounds for the random perturbation of a template.
///
/// All magnitudes are symmetric around zero: e.g. `rotation_max = 10` means
/// the rotation angle is drawn uniformly from `[-10°, +10°)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationParams {
    /// Rotation bound in degrees.
    pub rotation_max: f64,
    /// Horizontal shear coefficient bound (dimensionless).
    pub shear_max: f64,
    /// Per-axis scale jitter: each axis scales by `1 ± scale_jitter`.
    pub scale_jitter: f64,
    /// Translation bound in pixels (each axis).
    pub translate_max: f64,
    /// Rounds of 8-neighbor dilation applied after the affine map (0..=2).
    pub dilation_steps: usize,
    /// Probability of flipping each output pixel, in `[0, 1)`.
    pub pixel_noise_rate: f64,
}

impl Default for PerturbationParams {
    fn default() -> Self {
        PerturbationParams {
            rotation_max: 10.0,
            shear_max: 0.15,
            scale_jitter: 0.10,
            translate_max: 3.0,
            dilation_steps: 1,
            pixel_noise_rate: 0.01,
        }
    }
}

impl PerturbationParams {
    /// A parameter set that reproduces the template exactly.
    pub fn none() -> Self {
        PerturbationParams {
            rotation_max: 0.0,
            shear_max: 0.0,
            scale_jitter: 0.0,
            translate_max: 0.0,
            dilation_steps: 0,
            pixel_noise_rate: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let magnitudes = [
            ("rotation_max", self.rotation_max),
            ("shear_max", self.shear_max),
            ("scale_jitter", self.scale_jitter),
            ("translate_max", self.translate_max),
        ];
        for (name, value) in magnitudes {
            if value < 0.0 || !value.is_finite() {
                return Err(Error::InvalidConfig(format!(
                    "{name} must be a non-negative finite number, got {value}"
                )));
            }
        }
        if self.dilation_steps > 2 {
            return Err(Error::InvalidConfig(format!(
                "dilation_steps must be in 0..=2, got {}",
                self.dilation_steps
            )));
        }
        if !(0.0..1.0).contains(&self.pixel_noise_rate) {
            return Err(Error::InvalidConfig(format!(
                "pixel_noise_rate must be in [0, 1), got {}",
                self.pixel_noise_rate
            )));
        }
        Ok(())
    }
}

/// Shape of a generated corpus: per-letter sample counts, master seed, and
/// perturbation bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusSpec {
    pub train_per_letter: usize,
    pub test_per_letter: usize,
    pub seed: u64,
    pub params: PerturbationParams,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            train_per_letter: 20,
            test_per_letter: 5,
            seed: 0,
            params: PerturbationParams::default(),
        }
    }
}

impl CorpusSpec {
    pub fn validate(&self) -> Result<()> {
        if self.train_per_letter < 1 {
            return Err(Error::InvalidConfig("train_per_letter must be >= 1".into()));
        }
        self.params.validate()
    }
}

/// One labeled corpus image. `index` counts within the letter and split.
#[derive(Debug, Clone)]
pub struct Sample {
    pub image: GrayImage,
    pub label: Letter,
    pub split: Split,
    pub index: usize,
}

/// A generated corpus; samples are ordered by (letter, split, index) with
/// `Train` before `Test`.
#[derive(Debug, Clone)]
pub struct Corpus {
    pub samples: Vec<Sample>,
}

impl Corpus {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// Applies one random perturbation to a template.
///
/// Draw order is fixed: rotation, shear, scale-x, scale-y, translate-x,
/// translate-y, then one draw per output pixel for noise (consumed even at
/// rate 0, so the stream layout does not depend on parameter values). The
/// affine map `K(shear)·S(scale)·R(rotation)` acts about the image center
/// with an added translation, and is applied by inverse mapping with
/// nearest-neighbor sampling (out-of-bounds sources are background). Then
/// `dilation_steps` rounds of 8-neighbor dilation thicken the strokes, each
/// pixel flips independently with `pixel_noise_rate`, and the result is
/// rendered gray (ink 0, background 255) so the downstream pipeline's
/// binarization stage is exercised.
pub fn perturb(
    template: &BinaryImage,
    params: &PerturbationParams,
    rng: &mut SplitMix64,
) -> GrayImage {
    let theta = rng.next_signed(params.rotation_max).to_radians();
    let shear = rng.next_signed(params.shear_max);
    let scale_x = 1.0 + rng.next_signed(params.scale_jitter);
    let scale_y = 1.0 + rng.next_signed(params.scale_jitter);
    let translate_x = rng.next_signed(params.translate_max);
    let translate_y = rng.next_signed(params.translate_max);

    let (width, height) = (template.width(), template.height());
    let (cx, cy) = ((width as f64 - 1.0) / 2.0, (height as f64 - 1.0) / 2.0);

    // Forward matrix A = K(shear) · S(scale) · R(theta); we sample by the
    // inverse, so each destination pixel pulls from A⁻¹ · (dst - c - t) + c.
    let (sin, cos) = theta.sin_cos();
    let a11 = scale_x * cos + shear * scale_y * sin;
    let a12 = -scale_x * sin + shear * scale_y * cos;
    let a21 = scale_y * sin;
    let a22 = scale_y * cos;
    let det = a11 * a22 - a12 * a21;

    let mut warped = BinaryImage::blank(width, height);
    for y in 0..height {
        for x in 0..width {
            let dx = x as f64 - cx - translate_x;
            let dy = y as f64 - cy - translate_y;
            let sx = (a22 * dx - a12 * dy) / det + cx;
            let sy = (-a21 * dx + a11 * dy) / det + cy;
            let (sx, sy) = (sx.round(), sy.round());
            if sx >= 0.0 && sy >= 0.0 && (sx as usize) < width && (sy as usize) < height {
                warped.set(x, y, template.get(sx as usize, sy as usize));
            }
        }
    }

    for _ in 0..params.dilation_steps {
        warped = dilate8(&warped);
    }

    for y in 0..height {
        for x in 0..width {
            if rng.next_unit() < params.pixel_noise_rate {
                let current = warped.get(x, y);
                warped.set(x, y, !current);
            }
        }
    }

    warped.to_gray()
}

/// One round of 8-neighbor dilation: every background pixel with at least
/// one foreground 8-neighbor becomes foreground.
fn dilate8(img: &BinaryImage) -> BinaryImage {
    let mut out = img.clone();
    for y in 0..img.height() {
        for x in 0..img.width() {
            if img.get(x, y) {
                continue;
            }
            let has_fg_neighbor = (-1..=1).any(|dy: isize| {
                (-1..=1).any(|dx: isize| {
                    (dx != 0 || dy != 0) && img.get_or_background(x as isize + dx, y as isize + dy)
                })
            });
            if has_fg_neighbor {
                out.set(x, y, true);
            }
        }
    }
    out
}

/// Generates a full corpus.
///
/// For each letter index `i` a fresh generator seeded with
/// `mix(spec.seed, i)` produces the train samples then the test samples, so
/// per-letter streams are independent and the corpus is bit-deterministic
/// for a given `CorpusSpec`.
pub fn generate_corpus(spec: &CorpusSpec) -> Result<Corpus> {
    spec.validate()?;
    let mut samples = Vec::with_capacity(26 * (spec.train_per_letter + spec.test_per_letter));
    for letter in Letter::all() {
        let template = template_bitmap(letter);
        let mut rng = SplitMix64::new(mix(spec.seed, letter.index() as u64));
        for (split, count) in [
            (Split::Train, spec.train_per_letter),
            (Split::Test, spec.test_per_letter),
        ] {
            for index in 0..count {
                samples.push(Sample {
                    image: perturb(&template, &spec.params, &mut rng),
                    label: letter,
                    split,
                    index,
                });
            }
        }
    }
    Ok(Corpus { samples })
}
