//! Cycles `-d·ω - Σ bᵢxᵢ` on a Severi–Brauer surface and their integer
//! invariants.
//!
//! Every closed point on a non-trivial Severi–Brauer surface has degree
//! divisible by 3. A base orbit of degree `n` carrying multiplicity `b`
//! contributes `n·b` to linear sums and `n·b²` to quadratic sums, because the
//! multiplicity is applied to each of its `n` geometric points.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Upper bound on `d`, orbit degrees and multiplicities.
///
/// With every coefficient below `2^31` the quadratic invariants fit in `i128`
/// with room to spare, so only the link formulas need checked arithmetic.
pub const MAX_COEFFICIENT: i64 = (1 << 31) - 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleError {
    #[error("anticanonical coefficient d must be at least 1, got {0}")]
    NonPositiveDegree(i64),
    #[error("orbit {id}: degree {degree} is not a positive multiple of 3")]
    BadOrbitDegree { id: OrbitId, degree: i64 },
    #[error("orbit {id}: multiplicity {mult} is negative")]
    NegativeMultiplicity { id: OrbitId, mult: i64 },
    #[error("orbit id {0} appears more than once")]
    DuplicateOrbitId(OrbitId),
    #[error("coefficient {0} exceeds the supported bound {MAX_COEFFICIENT}")]
    ArithmeticOverflow(i64),
}

/// Class of a Severi–Brauer surface in the 3-torsion of the Brauer group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BrauerLabel {
    Trivial,
    Gamma,
    #[serde(rename = "gamma_inv")]
    GammaInverse,
}

impl BrauerLabel {
    pub fn inverse(self) -> Self {
        match self {
            BrauerLabel::Trivial => BrauerLabel::Trivial,
            BrauerLabel::Gamma => BrauerLabel::GammaInverse,
            BrauerLabel::GammaInverse => BrauerLabel::Gamma,
        }
    }

    /// Label after `n` successive links.
    pub fn flipped(self, n: usize) -> Self {
        if n % 2 == 0 {
            self
        } else {
            self.inverse()
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            BrauerLabel::Trivial => "trivial",
            BrauerLabel::Gamma => "gamma",
            BrauerLabel::GammaInverse => "gamma_inv",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "trivial" => Some(BrauerLabel::Trivial),
            "gamma" => Some(BrauerLabel::Gamma),
            "gamma_inv" => Some(BrauerLabel::GammaInverse),
            _ => None,
        }
    }
}

impl fmt::Display for BrauerLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OrbitId(pub u32);

impl fmt::Display for OrbitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A closed point used as a base point: `degree` geometric points, each with
/// multiplicity `mult`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Orbit {
    id: OrbitId,
    degree: i64,
    mult: i64,
}

impl Orbit {
    pub fn new(id: OrbitId, degree: i64, mult: i64) -> Result<Self, CycleError> {
        if degree <= 0 || degree % 3 != 0 {
            return Err(CycleError::BadOrbitDegree { id, degree });
        }
        if mult < 0 {
            return Err(CycleError::NegativeMultiplicity { id, mult });
        }
        for v in [degree, mult] {
            if v > MAX_COEFFICIENT {
                return Err(CycleError::ArithmeticOverflow(v));
            }
        }
        Ok(Orbit { id, degree, mult })
    }

    pub fn id(&self) -> OrbitId {
        self.id
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn mult(&self) -> i64 {
        self.mult
    }
}

/// The cycle `-d·ω - Σ bᵢxᵢ` on a surface of class `label`.
///
/// Orbits are kept in the order they were supplied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleClass {
    label: BrauerLabel,
    d: i64,
    orbits: Vec<Orbit>,
}

impl CycleClass {
    pub fn new(label: BrauerLabel, d: i64, orbits: Vec<Orbit>) -> Result<Self, CycleError> {
        if d < 1 {
            return Err(CycleError::NonPositiveDegree(d));
        }
        if d > MAX_COEFFICIENT {
            return Err(CycleError::ArithmeticOverflow(d));
        }
        let mut seen = BTreeSet::new();
        for o in &orbits {
            if !seen.insert(o.id) {
                return Err(CycleError::DuplicateOrbitId(o.id));
            }
        }
        Ok(CycleClass { label, d, orbits })
    }

    /// The anticanonical class `-ω` itself.
    pub fn anticanonical(label: BrauerLabel) -> Self {
        CycleClass {
            label,
            d: 1,
            orbits: Vec::new(),
        }
    }

    /// Convenience constructor assigning ids `1, 2, …` to `(degree, mult)` pairs.
    pub fn from_pairs(label: BrauerLabel, d: i64, pairs: &[(i64, i64)]) -> Result<Self, CycleError> {
        let orbits = pairs
            .iter()
            .zip(1u32..)
            .map(|(&(deg, b), id)| Orbit::new(OrbitId(id), deg, b))
            .collect::<Result<Vec<_>, _>>()?;
        CycleClass::new(label, d, orbits)
    }

    pub fn label(&self) -> BrauerLabel {
        self.label
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    pub fn orbit(&self, id: OrbitId) -> Option<&Orbit> {
        self.orbits.iter().find(|o| o.id == id)
    }

    pub fn is_anticanonical(&self) -> bool {
        self.d == 1 && self.orbits.iter().all(|o| o.mult == 0)
    }

    pub fn max_orbit_id(&self) -> Option<OrbitId> {
        self.orbits.iter().map(|o| o.id).max()
    }

    /// Drops orbits with multiplicity zero.
    pub fn normalized(&self) -> Self {
        CycleClass {
            label: self.label,
            d: self.d,
            orbits: self.orbits.iter().copied().filter(|o| o.mult > 0).collect(),
        }
    }

    /// `(degree, mult)` pairs sorted, ignoring ids and zero multiplicities.
    pub fn shape(&self) -> Vec<(i64, i64)> {
        let mut v: Vec<_> = self
            .orbits
            .iter()
            .filter(|o| o.mult > 0)
            .map(|o| (o.degree, o.mult))
            .collect();
        v.sort_unstable();
        v
    }

    /// Same class up to renaming of orbits.
    pub fn equivalent(&self, other: &CycleClass) -> bool {
        self.label == other.label && self.d == other.d && self.shape() == other.shape()
    }

    fn linear_sum(&self) -> i128 {
        self.orbits
            .iter()
            .map(|o| o.degree as i128 * o.mult as i128)
            .sum()
    }

    fn quadratic_sum(&self) -> i128 {
        self.orbits
            .iter()
            .map(|o| o.degree as i128 * o.mult as i128 * o.mult as i128)
            .sum()
    }

    /// `(α, α) = 9d² - Σ deg·b²`.
    pub fn self_intersection(&self) -> i128 {
        let d = self.d as i128;
        9 * d * d - self.quadratic_sum()
    }

    /// `p_a(α) = 9(d² - d)/2 + 1 - Σ deg·b(b-1)/2`.
    pub fn arithmetic_genus(&self) -> i128 {
        let d = self.d as i128;
        // d² - d and b(b-1) are products of consecutive integers
        let correction: i128 = self
            .orbits
            .iter()
            .map(|o| {
                let b = o.mult as i128;
                o.degree as i128 * (b * (b - 1) / 2)
            })
            .sum();
        9 * (d * d - d) / 2 + 1 - correction
    }

    /// Orbit of maximal multiplicity among those with `b > 0`; ties go to the
    /// smaller degree, then the smaller id.
    pub fn max_multiplicity_orbit(&self) -> Option<&Orbit> {
        self.orbits
            .iter()
            .filter(|o| o.mult > 0)
            .min_by_key(|o| (std::cmp::Reverse(o.mult), o.degree, o.id))
    }

    pub fn noether_check(&self) -> NoetherReport {
        let self_intersection = self.self_intersection();
        let linear = 9 * self.d as i128 - self.linear_sum();
        let max_mult = self.orbits.iter().map(|o| o.mult).max().unwrap_or(0);
        let max_mult_ok = self.d < 2 || max_mult >= self.d + 1;
        let max_degree_ok = max_mult == 0
            || self
                .orbits
                .iter()
                .filter(|o| o.mult == max_mult)
                .all(|o| o.degree < 9);
        NoetherReport {
            quadratic: self_intersection == 9,
            linear: linear == 9,
            max_mult_bound: max_mult_ok,
            max_point_degree: max_degree_ok,
            self_intersection,
            linear_value: linear,
            arithmetic_genus: self.arithmetic_genus(),
        }
    }
}

impl fmt::Display for CycleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] d={}", self.label, self.d)?;
        for o in &self.orbits {
            write!(f, " {}:({},{})", o.id, o.degree, o.mult)?;
        }
        Ok(())
    }
}

/// Verdicts of the Noether-type relations for a cycle.
///
/// `quadratic` is `9d² - Σ deg·b² = 9`, `linear` is `9d - Σ deg·b = 9`,
/// `max_mult_bound` is `max b ≥ d + 1` (vacuous for `d = 1`) and
/// `max_point_degree` says every orbit of maximal multiplicity has degree 3 or 6.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NoetherReport {
    pub quadratic: bool,
    pub linear: bool,
    pub max_mult_bound: bool,
    pub max_point_degree: bool,
    pub self_intersection: i128,
    pub linear_value: i128,
    pub arithmetic_genus: i128,
}

impl NoetherReport {
    /// The two equalities that characterise pushforwards of `-ω`.
    pub fn consistent(&self) -> bool {
        self.quadratic && self.linear
    }

    pub fn all_pass(&self) -> bool {
        self.quadratic && self.linear && self.max_mult_bound && self.max_point_degree
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use BrauerLabel::*;

    fn cycle(d: i64, pairs: &[(i64, i64)]) -> CycleClass {
        CycleClass::from_pairs(Gamma, d, pairs).unwrap()
    }

    #[test]
    fn label_inverse_is_involution() {
        for l in [Trivial, Gamma, GammaInverse] {
            assert_eq!(l.inverse().inverse(), l);
            assert_eq!(BrauerLabel::parse(l.as_str()), Some(l));
        }
        assert_eq!(Gamma.inverse(), GammaInverse);
        assert_eq!(Trivial.inverse(), Trivial);
        assert_eq!(Gamma.flipped(3), GammaInverse);
        assert_eq!(Gamma.flipped(4), Gamma);
    }

    #[test]
    fn rejects_malformed_data() {
        assert_eq!(
            Orbit::new(OrbitId(1), 4, 1),
            Err(CycleError::BadOrbitDegree { id: OrbitId(1), degree: 4 })
        );
        assert!(Orbit::new(OrbitId(1), 0, 1).is_err());
        assert!(Orbit::new(OrbitId(1), 3, -1).is_err());
        assert_eq!(
            CycleClass::from_pairs(Gamma, 0, &[]),
            Err(CycleError::NonPositiveDegree(0))
        );
        let o = Orbit::new(OrbitId(7), 3, 1).unwrap();
        assert_eq!(
            CycleClass::new(Gamma, 2, vec![o, o]),
            Err(CycleError::DuplicateOrbitId(OrbitId(7)))
        );
        assert!(CycleClass::from_pairs(Gamma, MAX_COEFFICIENT + 1, &[]).is_err());
    }

    #[test]
    fn self_intersection_examples() {
        assert_eq!(cycle(1, &[]).self_intersection(), 9);
        assert_eq!(cycle(5, &[(6, 6)]).self_intersection(), 9);
        assert_eq!(cycle(2, &[(3, 3)]).self_intersection(), 9);
    }

    #[test]
    fn arithmetic_genus_examples() {
        assert_eq!(cycle(1, &[]).arithmetic_genus(), 1);
        assert_eq!(cycle(2, &[(3, 3)]).arithmetic_genus(), 1);
        assert_eq!(cycle(10, &[(6, 12), (3, 3)]).arithmetic_genus(), 1);
    }

    #[test]
    fn noether_examples() {
        assert!(cycle(1, &[]).noether_check().all_pass());
        assert!(cycle(2, &[(3, 3)]).noether_check().all_pass());
        let bad = cycle(2, &[(3, 2)]).noether_check();
        assert!(!bad.linear);
        assert_eq!(bad.linear_value, 12);
        assert!(!bad.consistent());
        // d ≥ 2 with no base points cannot satisfy the multiplicity bound
        assert!(!cycle(3, &[]).noether_check().max_mult_bound);
        // a degree-9 orbit of maximal multiplicity fails the degree flag
        assert!(!cycle(2, &[(9, 3)]).noether_check().max_point_degree);
    }

    #[test]
    fn max_multiplicity_examples() {
        assert!(cycle(1, &[]).max_multiplicity_orbit().is_none());
        assert!(cycle(1, &[(3, 0)]).max_multiplicity_orbit().is_none());
        let c = cycle(10, &[(6, 12), (3, 3)]);
        assert_eq!(c.max_multiplicity_orbit().unwrap().mult(), 12);
        let c = cycle(4, &[(3, 6), (3, 3)]);
        assert_eq!(c.max_multiplicity_orbit().unwrap().mult(), 6);
    }

    #[test]
    fn max_multiplicity_tie_break() {
        let c = cycle(9, &[(6, 5), (3, 5), (3, 5)]);
        let o = c.max_multiplicity_orbit().unwrap();
        assert_eq!((o.degree(), o.id()), (3, OrbitId(2)));
    }

    #[test]
    fn normalization_keeps_invariants() {
        let c = cycle(2, &[(3, 3), (6, 0), (3, 0)]);
        let n = c.normalized();
        assert_eq!(n.orbits().len(), 1);
        assert_eq!(n.self_intersection(), c.self_intersection());
        assert_eq!(n.arithmetic_genus(), c.arithmetic_genus());
        assert_eq!(n.noether_check(), c.noether_check());
        assert!(c.equivalent(&n));
    }
}
