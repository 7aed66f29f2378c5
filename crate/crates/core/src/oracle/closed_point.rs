//! Closed points of `P²` over `F_p` as Frobenius orbits of geometric points.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::field::GaloisField;
use super::geometry::{collinear, line_through, on_common_conic, ProjPoint};
use super::OracleError;

/// Attempts made by [`sample_closed_point`] before giving up.
pub const SAMPLING_BUDGET: usize = 10_000;

/// A closed point of degree `n`: `points[i]` is the `i`-th Frobenius image of
/// `points[0]`, all coordinates in `field = F_{p^n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedPoint {
    field: GaloisField,
    points: Vec<ProjPoint>,
}

/// The Frobenius orbit of `p`, in order `p, F(p), F²(p), …`.
pub fn frobenius_orbit(f: &GaloisField, p: &ProjPoint) -> Vec<ProjPoint> {
    let mut orbit = vec![*p];
    loop {
        let next = orbit.last().unwrap().frobenius(f);
        if next == *p {
            return orbit;
        }
        orbit.push(next);
    }
}

impl ClosedPoint {
    /// The closed point through `p`; its degree is the orbit length.
    pub fn through(field: GaloisField, p: ProjPoint) -> Self {
        let points = frobenius_orbit(&field, &p);
        ClosedPoint { field, points }
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    /// Frobenius maps `points[i]` to `points[i+1 mod n]`.
    pub fn is_frobenius_transitive(&self) -> bool {
        let n = self.points.len();
        (0..n).all(|i| self.points[i].frobenius(&self.field) == self.points[(i + 1) % n])
    }

    pub fn as_six(&self) -> Option<[ProjPoint; 6]> {
        self.points.clone().try_into().ok()
    }
}

/// Draws a closed point of the given degree over `F_p`, deterministically per
/// `seed`.
pub fn sample_closed_point(p: u64, degree: usize, seed: u64) -> Result<ClosedPoint, OracleError> {
    if degree != 3 && degree != 6 {
        return Err(OracleError::UnsupportedExtension(degree));
    }
    let field = GaloisField::for_oracle(p, degree)?;
    sample_closed_point_in(&field, seed)
}

/// Like [`sample_closed_point`] with the ambient field `F_{p^n}` given; the
/// sampled point has degree exactly `n`.
pub fn sample_closed_point_in(field: &GaloisField, seed: u64) -> Result<ClosedPoint, OracleError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLING_BUDGET {
        let p = ProjPoint::random(field, &mut rng);
        let cp = ClosedPoint::through(*field, p);
        if cp.degree() == field.degree() {
            return Ok(cp);
        }
    }
    Err(OracleError::SamplingExhausted(SAMPLING_BUDGET))
}

/// Collinear triples among six points, as index triples `i < j < k`.
pub fn collinear_triples(f: &GaloisField, pts: &[ProjPoint; 6]) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for i in 0..6 {
        for j in i + 1..6 {
            for k in j + 1..6 {
                if collinear(f, &pts[i], &pts[j], &pts[k]) {
                    out.push([i, j, k]);
                }
            }
        }
    }
    out
}

/// Outcome of checking the two general-position conditions on six points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneralPositionReport {
    /// No three of the six points lie on a line.
    pub no_three_collinear: bool,
    /// The six points do not lie on a common conic.
    pub not_on_conic: bool,
    pub collinear_triples: Vec<[usize; 3]>,
}

impl GeneralPositionReport {
    pub fn passes(&self) -> bool {
        self.no_three_collinear && self.not_on_conic
    }
}

pub fn verify_general_position_points(f: &GaloisField, pts: &[ProjPoint; 6]) -> GeneralPositionReport {
    let triples = collinear_triples(f, pts);
    GeneralPositionReport {
        no_three_collinear: triples.is_empty(),
        not_on_conic: !on_common_conic(f, pts),
        collinear_triples: triples,
    }
}

/// Checks a degree-6 closed point for three collinear geometric points and for
/// a conic through all six.
pub fn verify_general_position(pt: &ClosedPoint) -> Result<GeneralPositionReport, OracleError> {
    let six = pt.as_six().ok_or(OracleError::WrongClosedPointDegree(pt.degree()))?;
    Ok(verify_general_position_points(pt.field(), &six))
}

/// Smallest `k` with the line through `a, b` fixed by the `k`-th Frobenius power.
pub fn line_field_of_definition(f: &GaloisField, a: &ProjPoint, b: &ProjPoint) -> Option<usize> {
    let l = line_through(f, a, b)?;
    (1..=f.degree()).find(|&k| l.defined_over(f, k))
}
