//! Combinatorial types of six points in the plane, by the lines joining them.
//!
//! Nine degenerate types are distinguished, numbered as follows:
//!
//! | case | description | joining lines |
//! |------|-------------|---------------|
//! | 1 | all six on one line | 1 |
//! | 2 | exactly five on a line | 6 |
//! | 3 | exactly four on a line, no 3-point line | 10 |
//! | 4 | exactly four on a line and a 3-point line | 8 |
//! | 5 | two 3-point lines through a common point | 11 |
//! | 6 | one 3-point line | 13 |
//! | 7 | two disjoint 3-point lines | 11 |
//! | 8 | three 3-point lines (a triangle) | 9 |
//! | 9 | four 3-point lines (complete quadrilateral) | 7 |
//!
//! Six points with no three collinear are in general position (15 lines).

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use serde::Serialize;

use super::field::GaloisField;
use super::geometry::{incident, line_through, meet, Line, ProjPoint};
use super::OracleError;

/// Joining-line counts for cases 1 through 9.
pub const LINE_COUNT_TABLE: [usize; 9] = [1, 6, 10, 8, 11, 13, 11, 9, 7];

pub const GENERAL_POSITION_LINE_COUNT: usize = 15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ConfigCase {
    Case(u8),
    GeneralPosition,
}

impl ConfigCase {
    pub fn all_degenerate() -> impl Iterator<Item = ConfigCase> {
        (1..=9).map(ConfigCase::Case)
    }

    /// Number of joining lines predicted by the table.
    pub fn expected_line_count(self) -> usize {
        match self {
            ConfigCase::Case(j) => LINE_COUNT_TABLE[j as usize - 1],
            ConfigCase::GeneralPosition => GENERAL_POSITION_LINE_COUNT,
        }
    }
}

impl fmt::Display for ConfigCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigCase::Case(j) => write!(f, "case {j}"),
            ConfigCase::GeneralPosition => f.write_str("general position"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub case: ConfigCase,
    pub line_count: usize,
    /// Every line through at least two of the points, with the indices on it.
    pub lines: Vec<(Line, Vec<usize>)>,
}

/// All lines through at least two of `pts`, with the points on each.
pub fn joining_lines(f: &GaloisField, pts: &[ProjPoint]) -> Vec<(Line, Vec<usize>)> {
    let mut lines: BTreeMap<Line, Vec<usize>> = BTreeMap::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let Some(l) = line_through(f, &pts[i], &pts[j]) else {
                continue;
            };
            lines.entry(l).or_insert_with(|| {
                (0..pts.len()).filter(|&k| incident(f, &l, &pts[k])).collect()
            });
        }
    }
    lines.into_iter().collect()
}

pub fn classify_configuration(f: &GaloisField, pts: &[ProjPoint; 6]) -> Result<Classification, OracleError> {
    for i in 0..6 {
        for j in i + 1..6 {
            if pts[i] == pts[j] {
                return Err(OracleError::DuplicatePoints(i, j));
            }
        }
    }
    let lines = joining_lines(f, pts);
    let line_count = lines.len();
    let sizes: Vec<usize> = lines.iter().map(|(_, on)| on.len()).collect();
    let max = sizes.iter().copied().max().unwrap_or(0);
    let triples: Vec<&Vec<usize>> = lines.iter().map(|(_, on)| on).filter(|on| on.len() == 3).collect();
    let unclassifiable = || OracleError::UnclassifiableConfiguration(sizes.clone());

    let case = match (max, triples.len()) {
        (6, _) => ConfigCase::Case(1),
        (5, _) => ConfigCase::Case(2),
        (4, 0) => ConfigCase::Case(3),
        (4, 1) => ConfigCase::Case(4),
        (4, _) => return Err(unclassifiable()),
        (3, 1) => ConfigCase::Case(6),
        (3, 2) => {
            if triples[0].iter().any(|i| triples[1].contains(i)) {
                ConfigCase::Case(5)
            } else {
                ConfigCase::Case(7)
            }
        }
        (3, 3) => ConfigCase::Case(8),
        (3, 4) => ConfigCase::Case(9),
        (3, _) => return Err(unclassifiable()),
        (2, _) => ConfigCase::GeneralPosition,
        _ => return Err(unclassifiable()),
    };
    Ok(Classification { case, line_count, lines })
}

fn random_point_on<R: Rng + ?Sized>(f: &GaloisField, l: &Line, rng: &mut R) -> ProjPoint {
    loop {
        if let Some(p) = meet(f, l, &random_line(f, rng)) {
            return p;
        }
    }
}

/// A random line through `q` other than `avoid`.
fn random_line_through<R: Rng + ?Sized>(f: &GaloisField, q: &ProjPoint, avoid: &Line, rng: &mut R) -> Line {
    loop {
        let r = ProjPoint::random(f, rng);
        if let Some(m) = line_through(f, q, &r) {
            if m != *avoid {
                return m;
            }
        }
    }
}

fn random_line<R: Rng + ?Sized>(f: &GaloisField, rng: &mut R) -> Line {
    ProjPoint::random(f, rng)
}

/// One randomized attempt at the shape of `case`. The result may have
/// accidental extra collinearities or repeated points; callers classify it.
pub fn witness_attempt<R: Rng + ?Sized>(f: &GaloisField, case: ConfigCase, rng: &mut R) -> [ProjPoint; 6] {
    let pt = |rng: &mut R| ProjPoint::random(f, rng);
    match case {
        ConfigCase::Case(1) => {
            let l = random_line(f, rng);
            std::array::from_fn(|_| random_point_on(f, &l, rng))
        }
        ConfigCase::Case(2) => {
            let l = random_line(f, rng);
            let mut v: Vec<_> = (0..5).map(|_| random_point_on(f, &l, rng)).collect();
            v.push(pt(rng));
            v.try_into().unwrap()
        }
        ConfigCase::Case(3) | ConfigCase::Case(4) => {
            let l = random_line(f, rng);
            let mut v: Vec<_> = (0..4).map(|_| random_point_on(f, &l, rng)).collect();
            let a = pt(rng);
            let b = if case == ConfigCase::Case(4) {
                // on the line from a through one of the four
                let m = line_through(f, &a, &v[0]).unwrap_or_else(|| random_line(f, rng));
                random_point_on(f, &m, rng)
            } else {
                pt(rng)
            };
            v.extend([a, b]);
            v.try_into().unwrap()
        }
        ConfigCase::Case(5) => {
            let shared = pt(rng);
            let l1 = random_line_through(f, &shared, &random_line(f, rng), rng);
            let l2 = random_line_through(f, &shared, &l1, rng);
            [
                shared,
                random_point_on(f, &l1, rng),
                random_point_on(f, &l1, rng),
                random_point_on(f, &l2, rng),
                random_point_on(f, &l2, rng),
                pt(rng),
            ]
        }
        ConfigCase::Case(6) => {
            let l = random_line(f, rng);
            let mut v: Vec<_> = (0..3).map(|_| random_point_on(f, &l, rng)).collect();
            v.extend((0..3).map(|_| pt(rng)));
            v.try_into().unwrap()
        }
        ConfigCase::Case(7) => {
            let l1 = random_line(f, rng);
            let l2 = random_line(f, rng);
            let mut v: Vec<_> = (0..3).map(|_| random_point_on(f, &l1, rng)).collect();
            v.extend((0..3).map(|_| random_point_on(f, &l2, rng)));
            v.try_into().unwrap()
        }
        ConfigCase::Case(8) => {
            // triangle vertices plus one further point on each side
            let [a, b, c] = [pt(rng), pt(rng), pt(rng)];
            let side = |p: &ProjPoint, q: &ProjPoint, rng: &mut R| {
                line_through(f, p, q).unwrap_or_else(|| random_line(f, rng))
            };
            let (ab, bc, ca) = (side(&a, &b, rng), side(&b, &c, rng), side(&c, &a, rng));
            [
                a,
                random_point_on(f, &ab, rng),
                b,
                random_point_on(f, &bc, rng),
                c,
                random_point_on(f, &ca, rng),
            ]
        }
        ConfigCase::Case(9) => {
            // pairwise intersections of four lines
            let ls: [Line; 4] = std::array::from_fn(|_| random_line(f, rng));
            let mut v = Vec::with_capacity(6);
            for i in 0..4 {
                for j in i + 1..4 {
                    v.push(meet(f, &ls[i], &ls[j]).unwrap_or_else(|| pt(rng)));
                }
            }
            v.try_into().unwrap()
        }
        _ => std::array::from_fn(|_| pt(rng)),
    }
}

/// Searches for six distinct points realizing `case` exactly.
pub fn find_witness<R: Rng + ?Sized>(
    f: &GaloisField,
    case: ConfigCase,
    attempts: usize,
    rng: &mut R,
) -> Option<([ProjPoint; 6], Classification)> {
    (0..attempts).find_map(|_| {
        let pts = witness_attempt(f, case, rng);
        match classify_configuration(f, &pts) {
            Ok(c) if c.case == case => Some((pts, c)),
            _ => None,
        }
    })
}
