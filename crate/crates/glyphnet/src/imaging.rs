//! Raster types and the image-level preprocessing primitives: binarization,
//! despeckle/hole-fill cleaning, content cropping, scaling to the standard
//! size, and Zhang-Suen thinning.
//!
//! All operations are pure functions; images are plain row-major buffers.
//! Conventions used throughout: intensity 0 is darkest ink and 255 is white
//! paper; in binary images bit `true` (1) is foreground ink. Out-of-bounds
//! pixels count as background everywhere.

use crate::error::{Error, Result};

/// Grayscale raster, row-major, intensities 0 (ink) to 255 (paper).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    /// Builds an image from row-major pixels.
    ///
    /// Shape violations are programmer errors and panic.
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Self {
        assert!(width >= 1 && height >= 1, "image dimensions must be >= 1");
        assert_eq!(pixels.len(), width * height, "pixel count must be w*h");
        GrayImage {
            width,
            height,
            pixels,
        }
    }

    /// Constant-intensity image.
    pub fn filled(width: usize, height: usize, intensity: u8) -> Self {
        GrayImage::new(width, height, vec![intensity; width * height])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    /// Intensity at column `x`, row `y`. Panics out of bounds.
    pub fn get(&self, x: usize, y: usize) -> u8 {
        assert!(x < self.width && y < self.height);
        self.pixels[y * self.width + x]
    }
}

/// Binary raster, row-major, `true` = foreground ink.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryImage {
    width: usize,
    height: usize,
    bits: Vec<bool>,
}

impl BinaryImage {
    /// Builds an image from row-major bits.
    ///
    /// Shape violations are programmer errors and panic.
    pub fn new(width: usize, height: usize, bits: Vec<bool>) -> Self {
        assert!(width >= 1 && height >= 1, "image dimensions must be >= 1");
        assert_eq!(bits.len(), width * height, "bit count must be w*h");
        BinaryImage {
            width,
            height,
            bits,
        }
    }

    /// All-background image.
    pub fn blank(width: usize, height: usize) -> Self {
        BinaryImage::new(width, height, vec![false; width * height])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Bit at column `x`, row `y`. Panics out of bounds.
    pub fn get(&self, x: usize, y: usize) -> bool {
        assert!(x < self.width && y < self.height);
        self.bits[y * self.width + x]
    }

    pub fn set(&mut self, x: usize, y: usize, value: bool) {
        assert!(x < self.width && y < self.height);
        self.bits[y * self.width + x] = value;
    }

    /// Bit at possibly out-of-bounds signed coordinates; outside the image
    /// everything is background.
    pub fn get_or_background(&self, x: isize, y: isize) -> bool {
        if x < 0 || y < 0 || x as usize >= self.width || y as usize >= self.height {
            false
        } else {
            self.bits[y as usize * self.width + x as usize]
        }
    }

    /// Number of foreground pixels.
    pub fn count_foreground(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Renders to grayscale with the crate's polarity: ink 0, background 255.
    pub fn to_gray(&self) -> GrayImage {
        let pixels = self.bits.iter().map(|&b| if b { 0 } else { 255 }).collect();
        GrayImage::new(self.width, self.height, pixels)
    }
}

/// Inclusive pixel rectangle: `(x0, y0)` top-left to `(x1, y1)` bottom-right.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundingBox {
    pub x0: usize,
    pub y0: usize,
    pub x1: usize,
    pub y1: usize,
}

impl BoundingBox {
    pub fn width(&self) -> usize {
        self.x1 - self.x0 + 1
    }

    pub fn height(&self) -> usize {
        self.y1 - self.y0 + 1
    }
}

/// Thresholds a grayscale image: bit = 1 exactly when intensity < `threshold`
/// (ink-is-dark polarity; the comparison is strict, so threshold 0 selects
/// nothing).
pub fn binarize(img: &GrayImage, threshold: u8) -> BinaryImage {
    let bits = img.pixels.iter().map(|&p| p < threshold).collect();
    BinaryImage::new(img.width, img.height, bits)
}

/// Single-pass despeckle + hole fill.
///
/// Both rules read the *input* image only: a foreground pixel with zero
/// foreground 8-neighbors is cleared, and a background pixel whose eight
/// neighbors are all foreground is set. Out-of-bounds counts as background,
/// so border pixels can never be hole-filled.
pub fn clean(img: &BinaryImage) -> BinaryImage {
    let mut out = img.clone();
    for y in 0..img.height {
        for x in 0..img.width {
            let mut fg_neighbors = 0;
            for (dx, dy) in NEIGHBORS_8 {
                if img.get_or_background(x as isize + dx, y as isize + dy) {
                    fg_neighbors += 1;
                }
            }
            if img.get(x, y) {
                if fg_neighbors == 0 {
                    out.set(x, y, false);
                }
            } else if fg_neighbors == 8 {
                out.set(x, y, true);
            }
        }
    }
    out
}

/// The 8-neighborhood offsets in Zhang-Suen order P2..P9:
/// N, NE, E, SE, S, SW, W, NW.
const NEIGHBORS_8: [(isize, isize); 8] = [
    (0, -1),
    (1, -1),
    (1, 0),
    (1, 1),
    (0, 1),
    (-1, 1),
    (-1, 0),
    (-1, -1),
];

/// Zhang-Suen thinning iterated to a fixed point.
///
/// Each iteration runs the two classic sub-passes; within a sub-pass all
/// deletions are decided against the same snapshot and applied together.
/// A foreground pixel `p` is deleted when, with P2..P9 its neighbors in the
/// order N, NE, E, SE, S, SW, W, NW:
///
/// * B(p), the number of foreground neighbors, is in `2..=6`;
/// * A(p), the number of background→foreground transitions in the circular
///   sequence P2, P3, ..., P9, P2, equals 1;
/// * sub-pass 1: P2·P4·P6 = 0 and P4·P6·P8 = 0;
/// * sub-pass 2: P2·P4·P8 = 0 and P2·P6·P8 = 0.
///
/// Iteration stops when neither sub-pass deletes a pixel, which makes the
/// result a fixed point of the operation; the output foreground is always a
/// subset of the input foreground. Known quirk of the classic formulation,
/// accepted here: an isolated 2x2 block is erased entirely.
pub fn thin(img: &BinaryImage) -> BinaryImage {
    let mut current = img.clone();
    let mut deletions: Vec<(usize, usize)> = Vec::new();
    loop {
        let mut changed = false;
        for sub_pass in 0..2 {
            deletions.clear();
            for y in 0..current.height {
                for x in 0..current.width {
                    if current.get(x, y) && should_delete(&current, x, y, sub_pass) {
                        deletions.push((x, y));
                    }
                }
            }
            for &(x, y) in &deletions {
                current.set(x, y, false);
            }
            changed |= !deletions.is_empty();
        }
        if !changed {
            return current;
        }
    }
}

fn should_delete(img: &BinaryImage, x: usize, y: usize, sub_pass: usize) -> bool {
    let mut p = [false; 8];
    for (i, (dx, dy)) in NEIGHBORS_8.iter().enumerate() {
        p[i] = img.get_or_background(x as isize + dx, y as isize + dy);
    }
    let b: usize = p.iter().filter(|&&v| v).count();
    if !(2..=6).contains(&b) {
        return false;
    }
    let mut transitions = 0;
    for i in 0..8 {
        if !p[i] && p[(i + 1) % 8] {
            transitions += 1;
        }
    }
    if transitions != 1 {
        return false;
    }
    // p[0] = P2 (N), p[2] = P4 (E), p[4] = P6 (S), p[6] = P8 (W).
    let (n, e, s, w) = (p[0], p[2], p[4], p[6]);
    if sub_pass == 0 {
        !(n && e && s) && !(e && s && w)
    } else {
        !(n && e && w) && !(n && s && w)
    }
}

/// Tight crop to the foreground content.
///
/// The returned box is inclusive and tight: every border row and column of
/// the cropped image contains at least one foreground pixel.
pub fn crop_to_content(img: &BinaryImage) -> Result<(BinaryImage, BoundingBox)> {
    let (mut x0, mut y0) = (usize::MAX, usize::MAX);
    let (mut x1, mut y1) = (0usize, 0usize);
    let mut any = false;
    for y in 0..img.height {
        for x in 0..img.width {
            if img.get(x, y) {
                any = true;
                x0 = x0.min(x);
                y0 = y0.min(y);
                x1 = x1.max(x);
                y1 = y1.max(y);
            }
        }
    }
    if !any {
        return Err(Error::EmptyImage);
    }
    let bbox = BoundingBox { x0, y0, x1, y1 };
    let mut bits = Vec::with_capacity(bbox.width() * bbox.height());
    for y in y0..=y1 {
        for x in x0..=x1 {
            bits.push(img.get(x, y));
        }
    }
    Ok((BinaryImage::new(bbox.width(), bbox.height(), bits), bbox))
}

/// Nearest-neighbor rescale to `side` x `side`.
///
/// Sampling is independent per axis (anisotropic, aspect ratio not
/// preserved): source index = floor(dst_index * src_dim / side).
pub fn scale_to_standard(img: &BinaryImage, side: usize) -> BinaryImage {
    assert!(side >= 1, "side must be >= 1");
    let mut bits = Vec::with_capacity(side * side);
    for y in 0..side {
        let sy = y * img.height / side;
        for x in 0..side {
            let sx = x * img.width / side;
            bits.push(img.get(sx, sy));
        }
    }
    BinaryImage::new(side, side, bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bin(rows: &[&str]) -> BinaryImage {
        let height = rows.len();
        let width = rows[0].len();
        let bits = rows
            .iter()
            .flat_map(|r| r.chars())
            .map(|c| match c {
                '#' | '1' => true,
                '.' | '0' => false,
                other => panic!("bad test bit {other:?}"),
            })
            .collect();
        BinaryImage::new(width, height, bits)
    }

    fn rows(img: &BinaryImage) -> Vec<String> {
        (0..img.height())
            .map(|y| {
                (0..img.width())
                    .map(|x| if img.get(x, y) { '#' } else { '.' })
                    .collect()
            })
            .collect()
    }

    mod binarize_op {
        use super::*;

        #[test]
        fn all_ink_below_threshold() {
            let img = GrayImage::filled(2, 2, 0);
            assert_eq!(binarize(&img, 128).count_foreground(), 4);
        }

        #[test]
        fn blank_page_above_threshold() {
            let img = GrayImage::filled(2, 2, 255);
            assert_eq!(binarize(&img, 128).count_foreground(), 0);
        }

        #[test]
        fn comparison_is_strictly_less_than() {
            let img = GrayImage::new(2, 2, vec![100, 200, 128, 127]);
            let b = binarize(&img, 128);
            assert_eq!(b.bits(), &[true, false, false, true]);
        }

        #[test]
        fn raising_threshold_never_clears_a_bit() {
            let pixels: Vec<u8> = (0u16..=255).map(|v| (v * 37 % 256) as u8).collect();
            let img = GrayImage::new(16, 16, pixels);
            let mut previous = binarize(&img, 0);
            for t in 1..=255u8 {
                let next = binarize(&img, t);
                for (p, n) in previous.bits().iter().zip(next.bits()) {
                    assert!(!p | n, "threshold {t} cleared a set bit");
                }
                previous = next;
            }
        }
    }

    mod clean_op {
        use super::*;

        #[test]
        fn isolated_pixel_removed() {
            let img = bin(&["...", ".#.", "..."]);
            assert_eq!(clean(&img).count_foreground(), 0);
        }

        #[test]
        fn hole_filled() {
            let img = bin(&["###", "#.#", "###"]);
            assert_eq!(clean(&img).count_foreground(), 9);
        }

        #[test]
        fn line_unchanged() {
            let img = bin(&["#####"]);
            assert_eq!(clean(&img), img);
        }

        #[test]
        fn result_has_no_isolated_foreground() {
            // A speckle field: every other pixel, no two adjacent.
            let img = bin(&["#.#.#", ".....", "#.#.#", ".....", "#.#.#"]);
            let cleaned = clean(&img);
            assert_eq!(cleaned.count_foreground(), 0);
        }

        #[test]
        fn rules_read_the_input_not_the_output() {
            // The center of this plus is kept (4 neighbors); the arms each
            // have the center as a neighbor, so nothing is a speckle.
            let img = bin(&[".#.", "###", ".#."]);
            assert_eq!(clean(&img), img);
        }
    }

    mod thin_op {
        use super::*;

        #[test]
        fn single_pixel_unchanged() {
            let img = bin(&["...", ".#.", "..."]);
            assert_eq!(thin(&img), img);
        }

        #[test]
        fn one_pixel_line_unchanged() {
            let img = bin(&["#######"]);
            assert_eq!(thin(&img), img);
        }

        /// Frozen from an independent reference trace of the classic
        /// algorithm: a 5x5 solid block collapses to its center pixel.
        #[test]
        fn solid_block_skeleton_fixture() {
            let img = bin(&["#####", "#####", "#####", "#####", "#####"]);
            let skeleton = thin(&img);
            assert_eq!(
                rows(&skeleton),
                vec![".....", ".....", "..#..", ".....", "....."]
            );
        }

        /// Documented quirk of the classic formulation: an isolated 2x2
        /// block is erased entirely (every pixel satisfies both sub-pass
        /// conditions simultaneously).
        #[test]
        fn isolated_2x2_block_is_erased() {
            let img = bin(&["....", ".##.", ".##.", "...."]);
            assert_eq!(thin(&img).count_foreground(), 0);
        }

        #[test]
        fn thick_bar_thins_to_single_width_line() {
            let img = bin(&[
                "..........",
                ".########.",
                ".########.",
                ".########.",
                "..........",
            ]);
            let skeleton = thin(&img);
            // Subset of the input.
            for (s, i) in skeleton.bits().iter().zip(img.bits()) {
                assert!(!s | i);
            }
            // A horizontal run survives on the middle row.
            assert!(skeleton.count_foreground() >= 4);
            assert!((0..10).all(|x| !skeleton.get(x, 0) && !skeleton.get(x, 4)));
        }

        #[test]
        fn idempotent_on_a_glyph_like_shape() {
            let img = bin(&[
                "........", ".######.", ".##..##.", ".##..##.", ".######.", "........",
            ]);
            let once = thin(&img);
            assert_eq!(thin(&once), once);
        }
    }

    mod crop_op {
        use super::*;

        #[test]
        fn single_pixel_box() {
            let mut img = BinaryImage::blank(5, 5);
            img.set(2, 3, true);
            let (cropped, bbox) = crop_to_content(&img).unwrap();
            assert_eq!((cropped.width(), cropped.height()), (1, 1));
            assert!(cropped.get(0, 0));
            assert_eq!(
                bbox,
                BoundingBox {
                    x0: 2,
                    y0: 3,
                    x1: 2,
                    y1: 3
                }
            );
        }

        #[test]
        fn full_image_is_unchanged() {
            let img = bin(&["###", "###", "###", "###"]);
            let (cropped, bbox) = crop_to_content(&img).unwrap();
            assert_eq!(cropped, img);
            assert_eq!((bbox.width(), bbox.height()), (3, 4));
        }

        #[test]
        fn empty_image_is_an_error() {
            let img = BinaryImage::blank(4, 4);
            assert!(matches!(crop_to_content(&img), Err(Error::EmptyImage)));
        }

        #[test]
        fn crop_is_tight_and_idempotent() {
            let img = bin(&[".....", "..#..", ".###.", ".....", "....."]);
            let (cropped, _) = crop_to_content(&img).unwrap();
            assert_eq!(rows(&cropped), vec![".#.", "###"]);
            let (again, bbox) = crop_to_content(&cropped).unwrap();
            assert_eq!(again, cropped);
            assert_eq!((bbox.x0, bbox.y0), (0, 0));
        }
    }

    mod scale_op {
        use super::*;

        #[test]
        fn integer_upscale_replicates_blocks() {
            let mut img = BinaryImage::blank(10, 10);
            img.set(3, 7, true);
            let scaled = scale_to_standard(&img, 50);
            for y in 0..50 {
                for x in 0..50 {
                    let expected = (15..20).contains(&x) && (35..40).contains(&y);
                    assert_eq!(scaled.get(x, y), expected, "at ({x},{y})");
                }
            }
        }

        #[test]
        fn same_size_is_identity() {
            let img = bin(&["#.#", ".#.", "#.#"]);
            let scaled = scale_to_standard(&scale_to_standard(&img, 3), 3);
            assert_eq!(scaled, img);
        }

        #[test]
        fn single_foreground_pixel_fills_output() {
            let img = bin(&["#"]);
            let scaled = scale_to_standard(&img, 50);
            assert_eq!(scaled.count_foreground(), 2500);
        }

        #[test]
        fn anisotropic_stretch_fills_both_axes() {
            // 1x4 vertical bar stretches to cover the full 8x8 square.
            let img = BinaryImage::new(1, 4, vec![true; 4]);
            let scaled = scale_to_standard(&img, 8);
            assert_eq!(scaled.count_foreground(), 64);
        }
    }

    #[test]
    fn to_gray_uses_ink_polarity() {
        let img = bin(&["#."]);
        let gray = img.to_gray();
        assert_eq!(gray.pixels(), &[0, 255]);
        assert_eq!(binarize(&gray, 128), img);
    }
}
