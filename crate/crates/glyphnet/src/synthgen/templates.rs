//! Embedded reference glyph bitmaps for the 26 lowercase letters.
//!
//! Each glyph is a 25x25 raster ('#' = ink, '.' = background) drawn with a
//! 2-pixel pen; `reference_glyph` upscales it 2x to the 50x50 design size.
//! The designs are tuned so that the 26 extracted feature vectors are
//! pairwise distinct (checked by tests).

const GLYPH_A: &str = "\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
.......########....##....\n\
.....############..##....\n\
....#####....#####.##....\n\
...####........######....\n\
...###..........#####....\n\
..###............####....\n\
..###............####....\n\
..##..............###....\n\
..##..............###....\n\
..##..............###....\n\
..##..............###....\n\
..###............####....\n\
..###............####....\n\
...###..........#####....\n\
...####........######....\n\
....#####....#####.#####.\n\
.....############..#####.\n\
.......########..........\n\
.........................\n";

const GLYPH_B: &str = "\
..##.....................\n\
..##.....................\n\
..##.....................\n\
..##.....................\n\
..##.....................\n\
..##.....................\n\
..##....########.........\n\
..##..############.......\n\
..########....######.....\n\
..######........####.....\n\
..####............###....\n\
..####............####...\n\
..###..............###...\n\
..##................##...\n\
..##................##...\n\
..##................##...\n\
..##................##...\n\
..###..............###...\n\
..####............####...\n\
..####............###....\n\
..######........####.....\n\
..########....######.....\n\
..##..############.......\n\
........########.........\n\
.........................\n";

const GLYPH_C: &str = "\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
.........########........\n\
.......############......\n\
.....######....######....\n\
.....####........####....\n\
....###............##....\n\
...####..................\n\
...###...................\n\
...##....................\n\
...##....................\n\
...##....................\n\
...##....................\n\
...###...................\n\
...####..................\n\
....###............##....\n\
.....####........####....\n\
.....######....######....\n\
.......############......\n\
.........########........\n\
.........................\n";

const GLYPH_D: &str = "\
....................##...\n\
....................##...\n\
....................##...\n\
....................##...\n\
....................##...\n\
....................##...\n\
.........########...##...\n\
.......############.##...\n\
.....######....#######...\n\
.....####........#####...\n\
....###............###...\n\
...####............####..\n\
...###..............###..\n\
...##...............###..\n\
...##...............###..\n\
...##...............###..\n\
...##...............###..\n\
...###..............###..\n\
...####............####..\n\
....###............###...\n\
.....####........#####...\n\
.....######....#######...\n\
.......############.##...\n\
.........########........\n\
.........................\n";

const GLYPH_E: &str = "\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
.........########........\n\
.......############......\n\
.....######....######....\n\
.....####........####....\n\
....###............###...\n\
...####............####..\n\
...###..............###..\n\
...####################..\n\
...####################..\n\
...##................##..\n\
...##................##..\n\
...###..............###..\n\
...####............####..\n\
....###............###...\n\
.....####........####....\n\
.....######......####....\n\
.......#######...##......\n\
.........#####...........\n\
.........................\n";

const GLYPH_F: &str = "\
.............########....\n\
...........############..\n\
..........#####....#####.\n\
.........####........###.\n\
.........###..........##.\n\
.........##..............\n\
.........##..............\n\
.........##..............\n\
.........##..............\n\
...###############.......\n\
...###############.......\n\
.........##..............\n\
.........##..............\n\
.........##..............\n\
.........##..............\n\
.........##..............\n\
.........##..............\n\
.........##..............\n\
.........##..............\n\
.........##..............\n\
.........##..............\n\
.........##..............\n\
.........##..............\n\
.........................\n\
.........................\n";

const GLYPH_G: &str = "\
.........................\n\
.........................\n\
.........................\n\
.......########...##.....\n\
.....############.##.....\n\
....#####....#######.....\n\
...####........#####.....\n\
...###..........####.....\n\
..###............###.....\n\
..###............###.....\n\
..##..............##.....\n\
..##..............##.....\n\
..###............###.....\n\
..###............###.....\n\
...###..........####.....\n\
...####........#####.....\n\
....#####....#######.....\n\
.....############.####...\n\
.......########...####...\n\
...................###...\n\
...................###...\n\
..................###....\n\
.................####....\n\
.......###....######.....\n\
.......############......\n";

const GLYPH_H: &str = "\
..##.....................\n\
..##.....................\n\
..##.....................\n\
..##.....................\n\
..##.....................\n\
..##.....................\n\
..##....########.........\n\
..##.##############......\n\
..########....######.....\n\
..#####..........####....\n\
..####............###....\n\
..###..............###...\n\
..###..............###...\n\
..##...............###...\n\
..##...............###...\n\
..##...............##....\n\
..##...............##....\n\
..##...............##....\n\
..##...............##....\n\
..##...............##....\n\
..##...............##....\n\
..##...............##....\n\
..##...............##....\n\
.........................\n\
.........................\n";

const GLYPH_I: &str = "\
.........................\n\
..........###............\n\
..........###............\n\
..........###............\n\
.........................\n\
.........................\n\
.........................\n\
......######.............\n\
......######.............\n\
..........##.............\n\
..........##.............\n\
..........##.............\n\
..........##.............\n\
..........##.............\n\
..........##.............\n\
..........##.............\n\
..........##.............\n\
..........##.............\n\
..........##.............\n\
..........##.............\n\
..........##.............\n\
.....#############.......\n\
.....#############.......\n\
.........................\n\
.........................\n";

const GLYPH_J: &str = "\
.........................\n\
..............###........\n\
..............###........\n\
..............###........\n\
.........................\n\
.........................\n\
.........................\n\
..............##.........\n\
..............##.........\n\
..............##.........\n\
..............##.........\n\
..............##.........\n\
..............##.........\n\
..............##.........\n\
..............##.........\n\
..............##.........\n\
..............##.........\n\
..............##.........\n\
..............####.......\n\
..............####.......\n\
...............###.......\n\
...............###.......\n\
..............###........\n\
............#####........\n\
.........#######.........\n";

const GLYPH_K: &str = "\
..##.....................\n\
..##.....................\n\
..##.....................\n\
..##.....................\n\
..##.....................\n\
..##.....................\n\
..##...............##....\n\
..##.............####....\n\
..##...........#####.....\n\
..##.........#####.......\n\
..##........#####........\n\
..##......#####..........\n\
..##....#####............\n\
..##...#####.............\n\
..##.#######.............\n\
..######.####............\n\
..####....####...........\n\
..##.......#####.........\n\
..##.........####........\n\
..##..........#####......\n\
..##............####.....\n\
..##.............####....\n\
..##..............####...\n\
....................##...\n\
.........................\n";

const GLYPH_L: &str = "\
......######.............\n\
......######.............\n\
..........##.............\n\
..........##.............\n\
..........##.............\n\
..........##.............\n\
..........##.............\n\
..........##.............\n\
..........##.............\n\
..........##.............\n\
..........##.............\n\
..........##.............\n\
..........##.............\n\
..........##.............\n\
..........##.............\n\
..........##.............\n\
..........##.............\n\
..........##.............\n\
..........##.............\n\
..........##.............\n\
..........##.............\n\
............###..###.....\n\
............########.....\n\
.............######......\n\
.........................\n";

const GLYPH_M: &str = "\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
..##.######...######.....\n\
..##########.########....\n\
..#####..#######..####...\n\
..####....#####....####..\n\
..###......###......###..\n\
..##.......###.......##..\n\
..##.......###......###..\n\
..##.......###......###..\n\
..##.......##.......##...\n\
..##.......##.......##...\n\
..##.......##.......##...\n\
..##.......##.......##...\n\
..##.......##.......##...\n\
..##.......##.......##...\n\
..##.......##.......##...\n\
..##.......##.......##...\n\
..##.......##.......##...\n\
.........................\n\
.........................\n";

const GLYPH_N: &str = "\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
...##...########.........\n\
...##.############.......\n\
...#######....#####......\n\
...#####........####.....\n\
...####..........###.....\n\
...###............###....\n\
...###............###....\n\
...##.............###....\n\
...##.............###....\n\
...##.............##.....\n\
...##.............##.....\n\
...##.............##.....\n\
...##.............##.....\n\
...##.............##.....\n\
...##.............##.....\n\
...##.............##.....\n\
...##.............##.....\n\
.........................\n\
.........................\n";

const GLYPH_O: &str = "\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
.........########........\n\
.......############......\n\
.....######....######....\n\
.....####........####....\n\
....###............###...\n\
...####............####..\n\
...###..............###..\n\
...##................##..\n\
...##................##..\n\
...##................##..\n\
...##................##..\n\
...###..............###..\n\
...####............####..\n\
....###............###...\n\
.....####........####....\n\
.....######....######....\n\
.......############......\n\
.........########........\n\
.........................\n";

const GLYPH_P: &str = "\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
...##....########........\n\
...##..############......\n\
...##.#####....#####.....\n\
...######........####....\n\
...####............###...\n\
...####............###...\n\
...###..............##...\n\
...###..............##...\n\
...####............###...\n\
...####............###...\n\
...######........####....\n\
...##.#####....#####.....\n\
...##..############......\n\
...##....########........\n\
...##....................\n\
...##....................\n\
...##....................\n\
...##....................\n\
...##....................\n";

const GLYPH_Q: &str = "\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
........########..##.....\n\
......##############.....\n\
.....#####....######.....\n\
....####........####.....\n\
...###............###....\n\
...###............###....\n\
...##.............###....\n\
...##.............###....\n\
...###............###....\n\
...###............###....\n\
....####........####.....\n\
.....#####....######.....\n\
......##############.....\n\
........########..##.....\n\
..................##.....\n\
..................##.....\n\
..................##.....\n\
..................#####..\n\
..................#####..\n";

const GLYPH_R: &str = "\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
....##...########........\n\
....##.############......\n\
....#######....#####.....\n\
....#####........####....\n\
....####..........###....\n\
....###............##....\n\
....###............##....\n\
....##...................\n\
....##...................\n\
....##...................\n\
....##...................\n\
....##...................\n\
....##...................\n\
....##...................\n\
....##...................\n\
....##...................\n\
....##...................\n\
.........................\n\
.........................\n";

const GLYPH_S: &str = "\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
......###############....\n\
....#################....\n\
....##...................\n\
....##...................\n\
....##...................\n\
....##...................\n\
....##...................\n\
.....###############.....\n\
.....################....\n\
...................##....\n\
...................##....\n\
...................##....\n\
...................##....\n\
...................##....\n\
...................##....\n\
....###############......\n\
....###############......\n\
.........................\n\
.........................\n";

const GLYPH_T: &str = "\
.........................\n\
.........##..............\n\
.........##..............\n\
.........##..............\n\
.........##..............\n\
.........##..............\n\
...##############........\n\
...##############........\n\
.........##..............\n\
.........##..............\n\
.........##..............\n\
.........##..............\n\
.........##..............\n\
.........##..............\n\
.........##..............\n\
.........##..............\n\
.........##..............\n\
.........##..............\n\
.........##..............\n\
.........##.........##...\n\
.........##........###...\n\
.................#####...\n\
...............######....\n\
...............####......\n\
.........................\n";

const GLYPH_U: &str = "\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
...##..............##....\n\
...##..............##....\n\
...##..............##....\n\
...##..............##....\n\
...##..............##....\n\
...##..............##....\n\
...##..............##....\n\
...##..............##....\n\
...##..............##....\n\
...##..............##....\n\
...##..............##....\n\
...###............###....\n\
...###............###....\n\
....###..........####....\n\
....####........#####....\n\
.....#####....#######....\n\
......############.##....\n\
........########.........\n\
.........................\n";

const GLYPH_V: &str = "\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
...##..............##....\n\
...###............###....\n\
...###............###....\n\
....###..........###.....\n\
....###..........###.....\n\
.....###........###......\n\
.....###........###......\n\
......###......###.......\n\
......###......###.......\n\
.......###....###........\n\
.......###....###........\n\
........###..###.........\n\
........###..###.........\n\
.........######..........\n\
.........######..........\n\
..........####...........\n\
..........####...........\n\
...........##............\n\
.........................\n";

const GLYPH_W: &str = "\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
..##..................##.\n\
..##..................##.\n\
..###.......##.......###.\n\
...##......####......##..\n\
...##......####......##..\n\
...###.....####.....###..\n\
....##....######....##...\n\
....##....######....##...\n\
....###...##..##...###...\n\
....###..###..###..###...\n\
.....##..###..###..##....\n\
.....##..##....##..##....\n\
.....######....######....\n\
......#####....#####.....\n\
......####......####.....\n\
......####......####.....\n\
.......###......###......\n\
.......##........##......\n\
.........................\n";

const GLYPH_X: &str = "\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
...##...............##...\n\
...###.............###...\n\
....###...........###....\n\
.....###.........###.....\n\
......###.......###......\n\
.......####...####.......\n\
........####.####........\n\
.........#######.........\n\
..........#####..........\n\
..........#####..........\n\
.........#######.........\n\
........####.####........\n\
.......####...####.......\n\
......###.......###......\n\
.....###.........###.....\n\
....###...........###....\n\
...###.............###...\n\
...##...............##...\n\
.........................\n";

const GLYPH_Y: &str = "\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
...##...............##...\n\
...###.............###...\n\
....###...........###....\n\
.....###.........###.....\n\
.....###.........###.....\n\
......###.......###......\n\
.......###.....###.......\n\
........###...###........\n\
........###...###........\n\
.........###.###.........\n\
..........#####..........\n\
...........###...........\n\
...........###...........\n\
..........###............\n\
.........###.............\n\
........###..............\n\
........###..............\n\
.......###...............\n\
......###................\n";

const GLYPH_Z: &str = "\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
.........................\n\
....#################....\n\
....#################....\n\
...................##....\n\
..................###....\n\
................####.....\n\
...............####......\n\
..............####.......\n\
.............####........\n\
............####.........\n\
..........####...........\n\
.........####............\n\
........####.............\n\
.......####..............\n\
......####...............\n\
.....###.................\n\
....#################....\n\
....#################....\n\
.........................\n\
.........................\n";

pub(super) const GLYPH_ART: [&str; 26] = [
    GLYPH_A, GLYPH_B, GLYPH_C, GLYPH_D, GLYPH_E, GLYPH_F, GLYPH_G, GLYPH_H, GLYPH_I, GLYPH_J,
    GLYPH_K, GLYPH_L, GLYPH_M, GLYPH_N, GLYPH_O, GLYPH_P, GLYPH_Q, GLYPH_R, GLYPH_S, GLYPH_T,
    GLYPH_U, GLYPH_V, GLYPH_W, GLYPH_X, GLYPH_Y, GLYPH_Z,
];
