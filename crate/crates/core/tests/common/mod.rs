#![allow(dead_code)]

use qdouble::group::{parse_group_spec, FiniteGroup};

/// Groups used across the integration suites, by spec string.
pub const CATALOG: [&str; 14] =
    ["Z:2", "Z:3", "Z:4", "Z:6", "S:3", "D:4", "Q8", "A:4", "AGL1:4", "AGL1:5", "AGL1:7", "AGL1:8", "AGL1:9", "NF:J9"];

/// Catalog members that are affine groups of a near-field (`Z:2` is `AGL1:2`,
/// `A:4` is `AGL1:4`).
pub const AFFINE: [&str; 9] = ["Z:2", "S:3", "A:4", "AGL1:4", "AGL1:5", "AGL1:7", "AGL1:8", "AGL1:9", "NF:J9"];

pub fn build(spec: &str) -> FiniteGroup {
    match spec {
        "Q8" => qdouble::group::quaternion_group(),
        "trivial" => FiniteGroup::trivial(),
        s => parse_group_spec(s).unwrap().build(10_000).unwrap(),
    }
}

/// The S matrix of `D(S_3)` times 6, rows and columns in the order A..H.
pub const S3_S_TIMES_6: [[i128; 8]; 8] = [
    [1, 1, 2, 3, 3, 2, 2, 2],
    [1, 1, 2, -3, -3, 2, 2, 2],
    [2, 2, 4, 0, 0, -2, -2, -2],
    [3, -3, 0, 3, -3, 0, 0, 0],
    [3, -3, 0, -3, 3, 0, 0, 0],
    [2, 2, -2, 0, 0, 4, -2, -2],
    [2, 2, -2, 0, 0, -2, 4, -2],
    [2, 2, -2, 0, 0, -2, -2, 4],
];

/// The same matrix as evaluated from the S formula; it differs from
/// [`S3_S_TIMES_6`] in the `G`/`H` entries of the fluxion block.
pub const S3_S_FORMULA_TIMES_6: [[i128; 8]; 8] = [
    [1, 1, 2, 3, 3, 2, 2, 2],
    [1, 1, 2, -3, -3, 2, 2, 2],
    [2, 2, 4, 0, 0, -2, -2, -2],
    [3, -3, 0, 3, -3, 0, 0, 0],
    [3, -3, 0, -3, 3, 0, 0, 0],
    [2, 2, -2, 0, 0, 4, -2, -2],
    [2, 2, -2, 0, 0, -2, -2, 4],
    [2, 2, -2, 0, 0, -2, 4, -2],
];

/// Fusion rules of `D(S_3)`, row X, column Y.
pub const S3_FUSION: [[&str; 8]; 8] = [
    ["A", "B", "C", "D", "E", "F", "G", "H"],
    ["B", "A", "C", "E", "D", "F", "G", "H"],
    ["C", "C", "A+B+C", "D+E", "D+E", "G+H", "F+H", "F+G"],
    ["D", "E", "D+E", "A+C+F+G+H", "B+C+F+G+H", "D+E", "D+E", "D+E"],
    ["E", "D", "D+E", "B+C+F+G+H", "A+C+F+G+H", "D+E", "D+E", "D+E"],
    ["F", "F", "G+H", "D+E", "D+E", "A+B+F", "H+C", "G+C"],
    ["G", "G", "F+H", "D+E", "D+E", "H+C", "A+B+G", "F+C"],
    ["H", "H", "F+G", "D+E", "D+E", "G+C", "F+C", "A+B+H"],
];

/// `"A+C+F"` to a multiplicity vector over A..H.
pub fn parse_fusion(entry: &str) -> [u32; 8] {
    let mut out = [0; 8];
    for t in entry.split('+') {
        out[(t.as_bytes()[0] - b'A') as usize] += 1;
    }
    out
}
