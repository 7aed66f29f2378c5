//! Factorization of a birational map datum into elementary links.
//!
//! Given `g_*(-ω)` as a cycle, repeatedly apply the link centred at a point of
//! maximal multiplicity. Each step lowers `d` (by at least 1 for `φ₃`, by at
//! least 4 for `φ₆`) until the cycle is `-ω` again. What remains is a
//! biregular isomorphism, which is not reconstructed here.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::cycle::{BrauerLabel, CycleClass};
use crate::links::{Center, Link, LinkError, LinkKind, LinkSession};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(len: usize) -> Self {
        if len % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UntwistError {
    #[error("cycle violates the Noether relations: {0}")]
    InconsistentCycle(String),
    #[error("point of maximal multiplicity has degree {0}; no link is centred there")]
    UnsupportedDegree(i64),
    #[error("word of {steps} links ends on a {terminal} surface, but the target was declared {declared}")]
    ParityContradiction {
        steps: usize,
        terminal: BrauerLabel,
        declared: BrauerLabel,
    },
    #[error("untwisting did not terminate within {0} steps")]
    NonTermination(usize),
    #[error("cycles on the trivial Brauer class are not handled by the link calculus")]
    TrivialBrauerClass,
    #[error(transparent)]
    Link(#[from] LinkError),
}

/// A word of links taking `initial` to `-ω`.
///
/// `cycles[i]` is the cycle before `steps[i]`; the last entry is `terminal`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub steps: Vec<Link>,
    pub cycles: Vec<CycleClass>,
    pub parity: Parity,
}

impl Factorization {
    pub fn initial(&self) -> &CycleClass {
        &self.cycles[0]
    }

    pub fn terminal(&self) -> &CycleClass {
        self.cycles.last().expect("factorization always holds the initial cycle")
    }

    /// The sequence of anticanonical coefficients, initial to terminal.
    pub fn d_trace(&self) -> Vec<i64> {
        self.cycles.iter().map(CycleClass::d).collect()
    }

    pub fn kinds(&self) -> Vec<LinkKind> {
        self.steps.iter().map(|l| l.kind).collect()
    }
}

/// Reduces `c` to `-ω` by links at points of maximal multiplicity.
///
/// `declared_target` is the class of the surface the datum is claimed to come
/// from: `c.label()` for a birational automorphism, its inverse for a map
/// between surfaces of opposite classes.
pub fn untwist(c: &CycleClass, declared_target: BrauerLabel) -> Result<Factorization, UntwistError> {
    if c.label() == BrauerLabel::Trivial {
        return Err(UntwistError::TrivialBrauerClass);
    }
    let report = c.noether_check();
    if !report.consistent() {
        return Err(UntwistError::InconsistentCycle(format!(
            "9d² - Σ deg·b² = {}, 9d - Σ deg·b = {} (both must be 9)",
            report.self_intersection, report.linear_value
        )));
    }

    let bound = c.d() as usize;
    let mut session = LinkSession::for_cycle(c);
    let mut cycles = vec![c.normalized()];
    let mut steps = Vec::new();
    loop {
        let current = cycles.last().unwrap();
        if current.d() == 1 {
            break;
        }
        if steps.len() >= bound {
            return Err(UntwistError::NonTermination(bound));
        }
        let center = current.max_multiplicity_orbit().ok_or_else(|| {
            UntwistError::InconsistentCycle(format!("d = {} but no base points remain", current.d()))
        })?;
        if LinkKind::for_degree(center.degree()).is_none() {
            return Err(UntwistError::UnsupportedDegree(center.degree()));
        }
        let (next, link) = match session.push(current, Center::Existing(center.id())) {
            Ok(r) => r,
            Err(LinkError::NegativeImageMultiplicity(m)) | Err(LinkError::DegenerateImage(m)) => {
                return Err(UntwistError::InconsistentCycle(format!(
                    "link at {} produces coefficient {m}",
                    center.id()
                )))
            }
            Err(e) => return Err(e.into()),
        };
        if next.d() >= current.d() {
            return Err(UntwistError::InconsistentCycle(format!(
                "link at {} does not lower d ({} -> {})",
                center.id(),
                current.d(),
                next.d()
            )));
        }
        steps.push(link);
        cycles.push(next);
    }

    let terminal = cycles.last().unwrap();
    if !terminal.orbits().is_empty() {
        return Err(UntwistError::InconsistentCycle(
            "d reached 1 with base points left".to_string(),
        ));
    }
    if terminal.label() != declared_target {
        return Err(UntwistError::ParityContradiction {
            steps: steps.len(),
            terminal: terminal.label(),
            declared: declared_target,
        });
    }
    let parity = Parity::of(steps.len());
    Ok(Factorization { steps, cycles, parity })
}

/// Pushes `-ω` through links at fresh centres of the given kinds.
///
/// The starting surface is chosen so that the resulting cycle lives on a
/// surface of class `end_label`. Returns the intermediate cycles (starting
/// with `-ω`) and the links.
pub fn chain_from_kinds(
    kinds: &[LinkKind],
    end_label: BrauerLabel,
) -> Result<(Vec<CycleClass>, Vec<Link>), LinkError> {
    let start = CycleClass::anticanonical(end_label.flipped(kinds.len()));
    let mut session = LinkSession::starting_at(1);
    let mut cycles = vec![start];
    let mut links = Vec::with_capacity(kinds.len());
    for &kind in kinds {
        let (next, link) = session.push(
            cycles.last().unwrap(),
            Center::Fresh {
                degree: kind.center_degree(),
            },
        )?;
        cycles.push(next);
        links.push(link);
    }
    Ok((cycles, links))
}

/// Link kinds drawn uniformly from a seeded ChaCha8 stream.
pub fn random_kinds(length: usize, seed: u64) -> Vec<LinkKind> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..length)
        .map(|_| if rng.gen_bool(0.5) { LinkKind::Phi6 } else { LinkKind::Phi3 })
        .collect()
}

/// A pseudo-random chain of `length` links from `-ω`, ending on a `γ` surface.
pub fn random_chain(length: usize, seed: u64) -> Result<(CycleClass, Vec<Link>), LinkError> {
    let (mut cycles, links) = chain_from_kinds(&random_kinds(length, seed), BrauerLabel::Gamma)?;
    Ok((cycles.pop().unwrap(), links))
}
