//! Elementary links `φ₃(x)` and `φ₆(x)` acting on cycle data.
//!
//! A link centred at a closed point `x` of degree 3 (resp. 6) carrying
//! multiplicity `b` sends `-d·ω - b·x - Σ bᵢxᵢ` to
//!
//! ```text
//! φ₃: -(2d - b)·ω' - (3d - 2b)·x' - Σ bᵢxᵢ'
//! φ₆: -(5d - 4b)·ω' - (6d - 5b)·x' - Σ bᵢxᵢ'
//! ```
//!
//! on a surface of the inverse Brauer class. `x'` is a new closed point of
//! the same degree as `x`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cycle::{BrauerLabel, CycleClass, CycleError, Orbit, OrbitId, MAX_COEFFICIENT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinkKind {
    Phi3,
    Phi6,
}

impl LinkKind {
    /// Degree of the centre (and of the image point).
    pub fn center_degree(self) -> i64 {
        match self {
            LinkKind::Phi3 => 3,
            LinkKind::Phi6 => 6,
        }
    }

    pub fn for_degree(degree: i64) -> Option<Self> {
        match degree {
            3 => Some(LinkKind::Phi3),
            6 => Some(LinkKind::Phi6),
            _ => None,
        }
    }

    /// `(d, b) ↦ (d', b')` for a centre of multiplicity `b`.
    pub fn transform(self, d: i64, b: i64) -> (i64, i64) {
        match self {
            LinkKind::Phi3 => (2 * d - b, 3 * d - 2 * b),
            LinkKind::Phi6 => (5 * d - 4 * b, 6 * d - 5 * b),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            LinkKind::Phi3 => "phi3",
            LinkKind::Phi6 => "phi6",
        }
    }
}

impl fmt::Display for LinkKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Where a link is centred.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Center {
    /// A base orbit already present in the cycle.
    Existing(OrbitId),
    /// A closed point of the given degree that is not a base point (`b = 0`).
    Fresh { degree: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkError {
    #[error("{kind} needs a centre of degree {}, got degree {found}", kind.center_degree())]
    WrongDegree { kind: LinkKind, found: i64 },
    #[error("no elementary link is centred at points of degree {0}")]
    UnsupportedDegree(i64),
    #[error("orbit {0} is not part of the cycle")]
    MissingCenter(OrbitId),
    #[error("image would have anticanonical coefficient {0} < 1")]
    DegenerateImage(i64),
    #[error("image point would carry negative multiplicity {0}")]
    NegativeImageMultiplicity(i64),
    #[error("coefficient {0} exceeds the supported bound")]
    ArithmeticOverflow(i64),
    #[error(transparent)]
    Cycle(#[from] CycleError),
}

/// One elementary link as recorded in a factorization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Link {
    pub kind: LinkKind,
    pub center_id: OrbitId,
    pub center_mult: i64,
    pub source_label: BrauerLabel,
    pub target_label: BrauerLabel,
    pub image_orbit_id: OrbitId,
    pub image_mult: i64,
}

/// Hands out orbit ids for the points created by links.
///
/// Ids are drawn from a monotone counter, so a sequence of pushes performed
/// through one session is reproducible and never reuses an id.
#[derive(Debug, Clone)]
pub struct LinkSession {
    next_id: u32,
}

impl LinkSession {
    pub fn starting_at(next_id: u32) -> Self {
        LinkSession { next_id }
    }

    /// Session whose first fresh id follows every id already used by `c`.
    pub fn for_cycle(c: &CycleClass) -> Self {
        LinkSession::starting_at(c.max_orbit_id().map_or(1, |id| id.0 + 1))
    }

    pub fn fresh_id(&mut self) -> OrbitId {
        let id = OrbitId(self.next_id);
        self.next_id += 1;
        id
    }

    pub fn phi3_push(&mut self, c: &CycleClass, center: Center) -> Result<(CycleClass, Link), LinkError> {
        self.push_kind(LinkKind::Phi3, c, center)
    }

    pub fn phi6_push(&mut self, c: &CycleClass, center: Center) -> Result<(CycleClass, Link), LinkError> {
        self.push_kind(LinkKind::Phi6, c, center)
    }

    /// Applies the link matching the degree of `center`.
    pub fn push(&mut self, c: &CycleClass, center: Center) -> Result<(CycleClass, Link), LinkError> {
        let degree = match center {
            Center::Existing(id) => c.orbit(id).ok_or(LinkError::MissingCenter(id))?.degree(),
            Center::Fresh { degree } => degree,
        };
        let kind = LinkKind::for_degree(degree).ok_or(LinkError::UnsupportedDegree(degree))?;
        self.push_kind(kind, c, center)
    }

    fn push_kind(&mut self, kind: LinkKind, c: &CycleClass, center: Center) -> Result<(CycleClass, Link), LinkError> {
        let (center_id, degree, b) = match center {
            Center::Existing(id) => {
                let o = c.orbit(id).ok_or(LinkError::MissingCenter(id))?;
                (Some(id), o.degree(), o.mult())
            }
            Center::Fresh { degree } => (None, degree, 0),
        };
        if degree != kind.center_degree() {
            return Err(LinkError::WrongDegree { kind, found: degree });
        }
        let (d_new, b_new) = kind.transform(c.d(), b);
        if d_new < 1 {
            return Err(LinkError::DegenerateImage(d_new));
        }
        if b_new < 0 {
            return Err(LinkError::NegativeImageMultiplicity(b_new));
        }
        for v in [d_new, b_new] {
            if v > MAX_COEFFICIENT {
                return Err(LinkError::ArithmeticOverflow(v));
            }
        }
        let center_id = center_id.unwrap_or_else(|| self.fresh_id());
        let image_id = self.fresh_id();
        let image = Orbit::new(image_id, degree, b_new)?;

        let mut orbits = Vec::with_capacity(c.orbits().len() + 1);
        match center {
            Center::Existing(_) => {
                for o in c.orbits() {
                    orbits.push(if o.id() == center_id { image } else { *o });
                }
            }
            Center::Fresh { .. } => {
                orbits.push(image);
                orbits.extend_from_slice(c.orbits());
            }
        }
        let target = c.label().inverse();
        let out = CycleClass::new(target, d_new, orbits)?.normalized();
        let link = Link {
            kind,
            center_id,
            center_mult: b,
            source_label: c.label(),
            target_label: target,
            image_orbit_id: image_id,
            image_mult: b_new,
        };
        Ok((out, link))
    }
}

/// `φ₃(x)_*` with a throwaway session.
pub fn phi3_push(c: &CycleClass, center: Center) -> Result<(CycleClass, Link), LinkError> {
    LinkSession::for_cycle(c).phi3_push(c, center)
}

/// `φ₆(x)_*` with a throwaway session.
pub fn phi6_push(c: &CycleClass, center: Center) -> Result<(CycleClass, Link), LinkError> {
    LinkSession::for_cycle(c).phi6_push(c, center)
}

pub fn push(c: &CycleClass, center: Center) -> Result<(CycleClass, Link), LinkError> {
    LinkSession::for_cycle(c).push(c, center)
}

#[cfg(test)]
mod tests {
    use super::*;
    use BrauerLabel::*;

    fn cycle(d: i64, pairs: &[(i64, i64)]) -> CycleClass {
        CycleClass::from_pairs(Gamma, d, pairs).unwrap()
    }

    #[test]
    fn phi3_examples() {
        let (out, link) = phi3_push(&cycle(1, &[]), Center::Fresh { degree: 3 }).unwrap();
        assert_eq!((out.d(), out.shape()), (2, vec![(3, 3)]));
        assert_eq!(out.label(), GammaInverse);
        assert_eq!((link.source_label, link.target_label), (Gamma, GammaInverse));

        let (out, _) = phi3_push(&cycle(2, &[(3, 3)]), Center::Existing(OrbitId(1))).unwrap();
        assert_eq!(out.d(), 1);
        assert!(out.orbits().is_empty());

        let (out, _) = phi3_push(&cycle(4, &[(3, 6), (3, 3)]), Center::Existing(OrbitId(1))).unwrap();
        assert_eq!((out.d(), out.shape()), (2, vec![(3, 3)]));
    }

    #[test]
    fn phi6_examples() {
        let (out, _) = phi6_push(&cycle(1, &[]), Center::Fresh { degree: 6 }).unwrap();
        assert_eq!((out.d(), out.shape()), (5, vec![(6, 6)]));

        let (out, _) = phi6_push(&cycle(5, &[(6, 6)]), Center::Existing(OrbitId(1))).unwrap();
        assert!(out.is_anticanonical());

        let (out, _) = phi6_push(&cycle(25, &[(6, 30), (6, 6)]), Center::Existing(OrbitId(1))).unwrap();
        assert_eq!((out.d(), out.shape()), (5, vec![(6, 6)]));
    }

    #[test]
    fn dispatch_and_guards() {
        let c = cycle(10, &[(6, 12), (3, 3), (9, 0)]);
        let (a, la) = push(&c, Center::Existing(OrbitId(2))).unwrap();
        let (b, lb) = phi3_push(&c, Center::Existing(OrbitId(2))).unwrap();
        assert_eq!((a, la.kind), (b, lb.kind));
        let (a, la) = push(&c, Center::Existing(OrbitId(1))).unwrap();
        let (b, _) = phi6_push(&c, Center::Existing(OrbitId(1))).unwrap();
        assert_eq!((a, la.kind), (b, LinkKind::Phi6));

        assert_eq!(push(&c, Center::Existing(OrbitId(3))), Err(LinkError::UnsupportedDegree(9)));
        assert_eq!(push(&c, Center::Fresh { degree: 12 }), Err(LinkError::UnsupportedDegree(12)));
        assert_eq!(push(&c, Center::Existing(OrbitId(8))), Err(LinkError::MissingCenter(OrbitId(8))));
        assert_eq!(
            phi3_push(&c, Center::Existing(OrbitId(1))),
            Err(LinkError::WrongDegree { kind: LinkKind::Phi3, found: 6 })
        );
        assert_eq!(
            phi6_push(&c, Center::Fresh { degree: 3 }),
            Err(LinkError::WrongDegree { kind: LinkKind::Phi6, found: 3 })
        );
    }

    #[test]
    fn degenerate_and_negative_images() {
        // 2d - b = 0
        let c = CycleClass::from_pairs(Gamma, 2, &[(3, 4)]).unwrap();
        assert_eq!(phi3_push(&c, Center::Existing(OrbitId(1))), Err(LinkError::DegenerateImage(0)));
        // 2d - b = 2 but 3d - 2b = -1
        let c = CycleClass::from_pairs(Gamma, 5, &[(3, 8)]).unwrap();
        assert_eq!(
            phi3_push(&c, Center::Existing(OrbitId(1))),
            Err(LinkError::NegativeImageMultiplicity(-1))
        );
    }

    #[test]
    fn overflow_is_reported() {
        let big = MAX_COEFFICIENT / 2;
        let c = CycleClass::from_pairs(Gamma, big, &[]).unwrap();
        assert!(matches!(
            phi6_push(&c, Center::Fresh { degree: 6 }),
            Err(LinkError::ArithmeticOverflow(_))
        ));
    }

    #[test]
    fn session_ids_are_monotone() {
        let c = cycle(1, &[]);
        let mut s = LinkSession::for_cycle(&c);
        let (c1, l1) = s.phi3_push(&c, Center::Fresh { degree: 3 }).unwrap();
        let (c2, l2) = s.phi3_push(&c1, Center::Existing(l1.image_orbit_id)).unwrap();
        let (_, l3) = s.phi6_push(&c2, Center::Fresh { degree: 6 }).unwrap();
        let ids = [l1.center_id, l1.image_orbit_id, l2.image_orbit_id, l3.center_id, l3.image_orbit_id];
        assert!(ids.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn other_orbits_are_untouched() {
        let c = cycle(10, &[(6, 12), (3, 3)]);
        let (out, link) = phi6_push(&c, Center::Existing(OrbitId(1))).unwrap();
        assert_eq!(out.orbit(OrbitId(2)), c.orbit(OrbitId(2)));
        assert_eq!(link.image_mult, 0);
        assert_eq!((out.d(), out.shape()), (2, vec![(3, 3)]));
    }
}
