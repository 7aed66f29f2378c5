//! Standard quadratic Cremona transformations, both as bookkeeping on curve
//! classes `n·h - Σ mᵢEᵢ` and as explicit maps of `P²(F_{p^m})`.
//!
//! The transformation centred at a non-collinear triple `P₀, P₁, P₂` is
//! `x ↦ σ(A⁻¹x)` where `A` has columns `Pᵢ` and `σ(y) = (y₁y₂ : y₀y₂ : y₀y₁)`.
//! The line through `Pⱼ, Pₖ` is contracted to the coordinate point `eᵢ` of
//! the target plane, which becomes the new labelled point replacing `Pᵢ`. On
//! classes this is
//!
//! ```text
//! n' = 2n - m₀ - m₁ - m₂,    mᵢ' = n - mⱼ - mₖ.
//! ```

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::field::{Fe, GaloisField};
use super::geometry::{collinear, incident, line_through, Mat3, ProjPoint};
use super::poly::Poly;
use super::OracleError;
use crate::cycle::{BrauerLabel, CycleClass, Orbit, OrbitId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PointLabel(pub u32);

impl fmt::Display for PointLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", self.0)
    }
}

/// `n·h - Σ mᵢEᵢ` in the line basis; `-ω = 3h`. Absent labels have
/// multiplicity 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveClass {
    line_degree: i64,
    mults: BTreeMap<PointLabel, i64>,
}

fn distinct<const N: usize>(labels: &[PointLabel; N]) -> Result<(), OracleError> {
    for i in 0..N {
        for j in i + 1..N {
            if labels[i] == labels[j] {
                return Err(OracleError::RepeatedCenter(labels[i]));
            }
        }
    }
    Ok(())
}

impl CurveClass {
    pub fn new(line_degree: i64, mults: BTreeMap<PointLabel, i64>) -> Result<Self, OracleError> {
        if line_degree < 1 {
            return Err(OracleError::DegenerateImage(line_degree));
        }
        if let Some((&l, &m)) = mults.iter().find(|(_, &m)| m < 0) {
            return Err(OracleError::NegativeMultiplicity(l, m));
        }
        Ok(CurveClass { line_degree, mults })
    }

    pub fn line_degree(&self) -> i64 {
        self.line_degree
    }

    pub fn mult(&self, label: PointLabel) -> i64 {
        self.mults.get(&label).copied().unwrap_or(0)
    }

    pub fn mults(&self) -> &BTreeMap<PointLabel, i64> {
        &self.mults
    }

    fn next_label(&self) -> u32 {
        self.mults.keys().next_back().map_or(1, |l| l.0 + 1)
    }

    /// Bookkeeping of one quadratic transformation; the three new points get
    /// the next unused labels, in the order of `centers`.
    pub fn quad_transform_push(&self, centers: [PointLabel; 3]) -> Result<(CurveClass, [PointLabel; 3]), OracleError> {
        let next = self.next_label();
        let fresh = [0, 1, 2].map(|i| PointLabel(next + i));
        Ok((self.quad_transform_with(centers, fresh)?, fresh))
    }

    pub(crate) fn quad_transform_with(
        &self,
        centers: [PointLabel; 3],
        fresh: [PointLabel; 3],
    ) -> Result<CurveClass, OracleError> {
        distinct(&centers)?;
        let n = self.line_degree;
        let m = centers.map(|c| self.mult(c));
        let line_degree = 2 * n - m[0] - m[1] - m[2];
        let mut mults = self.mults.clone();
        for c in centers {
            mults.remove(&c);
        }
        for i in 0..3 {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            mults.insert(fresh[i], n - m[j] - m[k]);
        }
        CurveClass::new(line_degree, mults)
    }

    /// Three quadratic transformations: at `six[0..3]`, then at `six[3..6]`,
    /// then at the points created by the first. Returns the final class and
    /// the labels of the six resulting points (those from the third step,
    /// then those from the second).
    pub fn phi6_decomposition_push(&self, six: [PointLabel; 6]) -> Result<(CurveClass, [PointLabel; 6]), OracleError> {
        distinct(&six)?;
        let next = self.next_label();
        let fresh: [PointLabel; 9] = std::array::from_fn(|i| PointLabel(next + i as u32));
        let (first, second, third) = split_fresh(&fresh);
        let a = [six[0], six[1], six[2]];
        let b = [six[3], six[4], six[5]];
        let c1 = self.quad_transform_with(a, first)?;
        let c2 = c1.quad_transform_with(b, second)?;
        let c3 = c2.quad_transform_with(first, third)?;
        Ok((c3, join_six(third, second)))
    }

    /// The class `-dω - Σ bᵢxᵢ` with each orbit spread over its labels.
    pub fn from_cycle(c: &CycleClass, labels: &[(OrbitId, Vec<PointLabel>)]) -> Result<Self, OracleError> {
        let mut mults = BTreeMap::new();
        for (id, ls) in labels {
            let o = c.orbit(*id).ok_or(OracleError::UnknownOrbit(*id))?;
            if ls.len() as i64 != o.degree() {
                return Err(OracleError::OrbitLabelMismatch(*id));
            }
            for &l in ls {
                mults.insert(l, o.mult());
            }
        }
        CurveClass::new(3 * c.d(), mults)
    }

    /// Back to cycle data; requires `3 | n`, multiplicities constant on each
    /// orbit and zero off the listed orbits.
    pub fn to_cycle(&self, label: BrauerLabel, orbits: &[(OrbitId, Vec<PointLabel>)]) -> Result<CycleClass, OracleError> {
        if self.line_degree % 3 != 0 {
            return Err(OracleError::NotAnticanonicalMultiple(self.line_degree));
        }
        let mut covered = Vec::new();
        let mut out = Vec::with_capacity(orbits.len());
        for (id, ls) in orbits {
            let b = ls.first().map_or(0, |&l| self.mult(l));
            if ls.iter().any(|&l| self.mult(l) != b) {
                return Err(OracleError::NotGaloisInvariant(*id));
            }
            covered.extend_from_slice(ls);
            out.push(Orbit::new(*id, ls.len() as i64, b)?);
        }
        if let Some((&l, _)) = self.mults.iter().find(|(l, &m)| m != 0 && !covered.contains(l)) {
            return Err(OracleError::UnassignedPoint(l));
        }
        Ok(CycleClass::new(label, self.line_degree / 3, out)?.normalized())
    }
}

fn split_fresh(fresh: &[PointLabel; 9]) -> ([PointLabel; 3], [PointLabel; 3], [PointLabel; 3]) {
    (
        [fresh[0], fresh[1], fresh[2]],
        [fresh[3], fresh[4], fresh[5]],
        [fresh[6], fresh[7], fresh[8]],
    )
}

fn join_six(a: [PointLabel; 3], b: [PointLabel; 3]) -> [PointLabel; 6] {
    [a[0], a[1], a[2], b[0], b[1], b[2]]
}

/// `σ(y) = (y₁y₂, y₀y₂, y₀y₁)`.
fn sigma(f: &GaloisField, y: [Fe; 3]) -> [Fe; 3] {
    [f.mul(y[1], y[2]), f.mul(y[0], y[2]), f.mul(y[0], y[1])]
}

/// The quadratic transformation `x ↦ σ(A⁻¹x)` for a non-collinear triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CremonaMap {
    field: GaloisField,
    to_standard: Mat3,
}

impl CremonaMap {
    pub fn centred_at(f: &GaloisField, centers: [ProjPoint; 3]) -> Result<Self, OracleError> {
        if collinear(f, &centers[0], &centers[1], &centers[2]) {
            return Err(OracleError::CollinearCenters);
        }
        let a = Mat3::from_columns(centers.map(|p| p.coords()));
        let to_standard = a.inverse(f).ok_or(OracleError::CollinearCenters)?;
        Ok(CremonaMap { field: *f, to_standard })
    }

    /// Image of a point off the three contracted lines.
    pub fn apply(&self, p: &ProjPoint) -> Option<ProjPoint> {
        let f = &self.field;
        let y = self.to_standard.apply(f, p.coords());
        if y.iter().any(Fe::is_zero) {
            return None;
        }
        ProjPoint::new(f, sigma(f, y))
    }

    pub fn push_curve(&self, c: &ParamCurve) -> ParamCurve {
        let f = &self.field;
        let m = &self.to_standard.0;
        let y: [Poly; 3] = std::array::from_fn(|i| {
            (0..3).fold(Poly::zero(), |acc, j| acc.add(f, &c.comps[j].scale(f, m[i][j])))
        });
        let comps = [y[1].mul(f, &y[2]), y[0].mul(f, &y[2]), y[0].mul(f, &y[1])];
        ParamCurve::reduced(f, comps, 2 * c.degree)
    }
}

/// A rational curve `(s : t) ↦ (c₀, c₁, c₂)` given by binary forms of degree
/// `degree`, stored dehomogenized at `s = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamCurve {
    comps: [Poly; 3],
    degree: usize,
}

impl ParamCurve {
    /// The line `s·a + t·b`.
    pub fn line(f: &GaloisField, a: &ProjPoint, b: &ProjPoint) -> Self {
        let comps = std::array::from_fn(|i| Poly::from_coeffs(vec![a.coords()[i], b.coords()[i]]));
        ParamCurve::reduced(f, comps, 1)
    }

    /// Removes the common factor of the three forms, including powers of `s`.
    fn reduced(f: &GaloisField, comps: [Poly; 3], degree: usize) -> Self {
        let g = comps.iter().fold(Poly::zero(), |acc, c| Poly::gcd(f, &acc, c));
        let (comps, mut degree) = match g.degree() {
            Some(dg) if dg > 0 => (comps.map(|c| c.divrem(f, &g).0), degree - dg),
            _ => (comps, degree),
        };
        let top = comps.iter().filter_map(Poly::degree).max().unwrap_or(0);
        degree = degree.min(top);
        ParamCurve { comps, degree }
    }

    /// Degree of the image curve (0 if the curve was contracted to a point).
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of parameters, with multiplicity, mapping to `p`. For a
    /// birational parametrization this is the multiplicity of the image curve
    /// at `p`.
    pub fn multiplicity_at(&self, f: &GaloisField, p: &ProjPoint) -> usize {
        let q = p.coords();
        let c = &self.comps;
        let scaled = |i: usize, k: usize| c[i].scale(f, q[k]);
        let minus = |a: Poly, b: Poly| a.add(f, &b.scale(f, f.neg(f.one())));
        // components of c × q
        let x = [
            minus(scaled(1, 2), scaled(2, 1)),
            minus(scaled(2, 0), scaled(0, 2)),
            minus(scaled(0, 1), scaled(1, 0)),
        ];
        let nonzero: Vec<&Poly> = x.iter().filter(|p| !p.is_zero()).collect();
        if nonzero.is_empty() {
            // the whole curve is the point p
            return usize::MAX;
        }
        let g = nonzero.iter().fold(Poly::zero(), |acc, c| Poly::gcd(f, &acc, c));
        let finite = g.degree().unwrap_or(0);
        let at_infinity = nonzero
            .iter()
            .map(|c| self.degree - c.degree().unwrap())
            .min()
            .unwrap();
        finite + at_infinity
    }
}

/// Labelled points of `P²(F_{p^m})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedPlane {
    field: GaloisField,
    points: BTreeMap<PointLabel, ProjPoint>,
}

impl MarkedPlane {
    pub fn new(field: GaloisField, points: BTreeMap<PointLabel, ProjPoint>) -> Self {
        MarkedPlane { field, points }
    }

    /// Points labelled `first, first + 1, …` in order.
    pub fn from_points(field: GaloisField, first: u32, pts: &[ProjPoint]) -> Self {
        let points = pts.iter().zip(first..).map(|(p, l)| (PointLabel(l), *p)).collect();
        MarkedPlane { field, points }
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn points(&self) -> &BTreeMap<PointLabel, ProjPoint> {
        &self.points
    }

    pub fn point(&self, l: PointLabel) -> Result<ProjPoint, OracleError> {
        self.points.get(&l).copied().ok_or(OracleError::UnknownPoint(l))
    }

    pub fn next_label(&self) -> u32 {
        self.points.keys().next_back().map_or(1, |l| l.0 + 1)
    }

    fn quad_transform_with(
        &self,
        centers: [PointLabel; 3],
        fresh: [PointLabel; 3],
    ) -> Result<(MarkedPlane, CremonaMap), OracleError> {
        distinct(&centers)?;
        let f = &self.field;
        let pts = [self.point(centers[0])?, self.point(centers[1])?, self.point(centers[2])?];
        let map = CremonaMap::centred_at(f, pts)?;
        let mut points = BTreeMap::new();
        for (&l, p) in &self.points {
            if centers.contains(&l) {
                continue;
            }
            let image = map.apply(p).ok_or(OracleError::PointOnContractedLine(l))?;
            points.insert(l, image);
        }
        for (i, &l) in fresh.iter().enumerate() {
            let mut e = [Fe::ZERO; 3];
            e[i] = f.one();
            points.insert(l, ProjPoint::new(f, e).unwrap());
        }
        Ok((MarkedPlane { field: *f, points }, map))
    }

    pub fn quad_transform(&self, centers: [PointLabel; 3]) -> Result<(MarkedPlane, CremonaMap, [PointLabel; 3]), OracleError> {
        let next = self.next_label();
        let fresh = [0, 1, 2].map(|i| PointLabel(next + i));
        let (plane, map) = self.quad_transform_with(centers, fresh)?;
        Ok((plane, map, fresh))
    }

    /// Line class `h - Σ Eᵢ` over the labelled points lying on the line.
    pub fn line_class(&self, a: &ProjPoint, b: &ProjPoint) -> Option<CurveClass> {
        let f = &self.field;
        let l = line_through(f, a, b)?;
        let mults = self
            .points
            .iter()
            .filter(|(_, p)| incident(f, &l, p))
            .map(|(&lab, _)| (lab, 1))
            .collect();
        CurveClass::new(1, mults).ok()
    }
}

/// A class, the marked plane it lives on, and optionally an actual curve in
/// that class, transformed together.
#[derive(Debug, Clone)]
pub struct TrackedClass {
    pub class: CurveClass,
    pub plane: MarkedPlane,
    pub curve: Option<ParamCurve>,
}

impl TrackedClass {
    pub fn new(class: CurveClass, plane: MarkedPlane) -> Self {
        TrackedClass { class, plane, curve: None }
    }

    /// The line through `a` and `b` with its class read off by incidence.
    pub fn line(plane: MarkedPlane, a: &ProjPoint, b: &ProjPoint) -> Option<Self> {
        let class = plane.line_class(a, b)?;
        let curve = ParamCurve::line(plane.field(), a, b);
        Some(TrackedClass { class, plane, curve: Some(curve) })
    }

    fn next_label(&self) -> u32 {
        self.plane.next_label().max(self.class.next_label())
    }

    /// [`quad_transform_push`] on all three components.
    pub fn quad_transform(&self, centers: [PointLabel; 3]) -> Result<(TrackedClass, [PointLabel; 3]), OracleError> {
        let next = self.next_label();
        let fresh = [0, 1, 2].map(|i| PointLabel(next + i));
        Ok((self.quad_transform_with(centers, fresh)?, fresh))
    }

    fn quad_transform_with(&self, centers: [PointLabel; 3], fresh: [PointLabel; 3]) -> Result<TrackedClass, OracleError> {
        let (plane, map) = self.plane.quad_transform_with(centers, fresh)?;
        let class = self.class.quad_transform_with(centers, fresh)?;
        let curve = self.curve.as_ref().map(|c| map.push_curve(c));
        Ok(TrackedClass { class, plane, curve })
    }

    /// The three-step decomposition of `φ₆`, geometrically realized.
    pub fn phi6_decomposition(&self, six: [PointLabel; 6]) -> Result<(TrackedClass, [PointLabel; 6]), OracleError> {
        distinct(&six)?;
        let next = self.next_label();
        let fresh: [PointLabel; 9] = std::array::from_fn(|i| PointLabel(next + i as u32));
        let (first, second, third) = split_fresh(&fresh);
        let t1 = self.quad_transform_with([six[0], six[1], six[2]], first)?;
        let t2 = t1.quad_transform_with([six[3], six[4], six[5]], second)?;
        let t3 = t2.quad_transform_with(first, third)?;
        Ok((t3, join_six(third, second)))
    }

    /// The class of the tracked curve as measured on the marked points.
    pub fn measured_class(&self) -> Option<(usize, BTreeMap<PointLabel, usize>)> {
        let curve = self.curve.as_ref()?;
        let f = self.plane.field();
        let mults = self
            .plane
            .points()
            .iter()
            .map(|(&l, p)| (l, curve.multiplicity_at(f, p)))
            .collect();
        Some((curve.degree(), mults))
    }

    /// Whether the measured class of the curve equals the bookkept class.
    pub fn curve_matches_class(&self) -> bool {
        let Some((deg, mults)) = self.measured_class() else {
            return false;
        };
        deg as i64 == self.class.line_degree()
            && mults.iter().all(|(&l, &m)| m as i64 == self.class.mult(l))
            && self.class.mults().keys().all(|l| mults.contains_key(l))
    }
}

/// Bookkeeping plus the geometric validity check of the centres.
pub fn quad_transform_push(
    class: &CurveClass,
    plane: &MarkedPlane,
    centers: [PointLabel; 3],
) -> Result<(CurveClass, MarkedPlane, [PointLabel; 3]), OracleError> {
    let (t, fresh) = TrackedClass::new(class.clone(), plane.clone()).quad_transform(centers)?;
    Ok((t.class, t.plane, fresh))
}

/// Bookkeeping for the three-step decomposition, with each triple of centres
/// checked in the plane where it is used.
pub fn phi6_decomposition_push(
    class: &CurveClass,
    plane: &MarkedPlane,
    six: [PointLabel; 6],
) -> Result<(CurveClass, MarkedPlane, [PointLabel; 6]), OracleError> {
    let (t, labels) = TrackedClass::new(class.clone(), plane.clone()).phi6_decomposition(six)?;
    Ok((t.class, t.plane, labels))
}
