//! Commands behind the `sbuntwist` binary. Every command returns an
//! [`Outcome`]; the binary only prints it and exits with its code.

use std::fmt;
use std::fmt::Write as _;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use serde_json::json;

use sbuntwist_core::cycle::MAX_COEFFICIENT;
use sbuntwist_core::links::LinkSession;
use sbuntwist_core::oracle::field::GaloisField;
use sbuntwist_core::oracle::scan::{formula_scan, geometric_scan, general_position_scan, table_scan};
use sbuntwist_core::{
    untwist, BrauerLabel, Center, CycleClass, CycleError, Factorization, LinkError, LinkKind, Orbit, OrbitId,
    OracleError, UntwistError,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;
pub const EXIT_PARITY: i32 = 4;
pub const EXIT_UNSUPPORTED_DEGREE: i32 = 5;

/// Largest `--dmax` accepted by `verify`.
pub const DMAX_LIMIT: i64 = 10_000;
/// Largest `--samples` accepted by `verify`.
pub const SAMPLES_LIMIT: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Machine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Phi3,
    Phi6,
}

impl From<KindArg> for LinkKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Phi3 => LinkKind::Phi3,
            KindArg::Phi6 => LinkKind::Phi6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TargetArg {
    Gamma,
    GammaInv,
}

impl From<TargetArg> for BrauerLabel {
    fn from(t: TargetArg) -> Self {
        match t {
            TargetArg::Gamma => BrauerLabel::Gamma,
            TargetArg::GammaInv => BrauerLabel::GammaInverse,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyMode {
    OraclePhi3,
    OraclePhi6,
    #[value(name = "lemma3")]
    GeneralPosition,
    Table,
}

/// Centre of a pushed link: an orbit id, or `fresh` (also `0`) for a point
/// that is not yet a base point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CenterArg {
    Fresh,
    Orbit(u32),
}

impl std::str::FromStr for CenterArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fresh" | "0" => Ok(CenterArg::Fresh),
            _ => s
                .trim_start_matches('#')
                .parse()
                .map(CenterArg::Orbit)
                .map_err(|_| format!("expected an orbit id or `fresh`, got `{s}`")),
        }
    }
}

/// What a command prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn out(code: i32, stdout: String) -> Self {
        Outcome { code, stdout, stderr: String::new() }
    }

    fn err(code: i32, stderr: impl fmt::Display) -> Self {
        Outcome { code, stdout: String::new(), stderr: format!("error: {stderr}\n") }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<u32>,
    pub degree: i64,
    pub mult: i64,
}

/// On-disk form of a cycle. Orbit ids are optional on input; when absent
/// they are assigned `1, 2, …` in order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CycleDocument {
    pub label: String,
    pub d: i64,
    pub orbits: Vec<OrbitRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub declared_target: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocumentError {
    pub field: String,
    pub message: String,
}

impl fmt::Display for DocumentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

fn doc_error(field: impl Into<String>, message: impl fmt::Display) -> DocumentError {
    DocumentError { field: field.into(), message: message.to_string() }
}

fn parse_label(field: &str, s: &str) -> Result<BrauerLabel, DocumentError> {
    BrauerLabel::parse(s).ok_or_else(|| doc_error(field, format!("`{s}` is not one of gamma, gamma_inv, trivial")))
}

impl CycleDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        serde_json::from_str(text).map_err(|e| {
            // serde names the field in its message ("missing field `d`", ...)
            doc_error("document", e)
        })
    }

    pub fn to_cycle(&self) -> Result<CycleClass, DocumentError> {
        let label = parse_label("label", &self.label)?;
        if self.d < 1 {
            return Err(doc_error("d", format!("must be at least 1, got {}", self.d)));
        }
        if self.d > MAX_COEFFICIENT {
            return Err(doc_error("d", format!("exceeds the supported bound {MAX_COEFFICIENT}")));
        }
        let with_ids = self.orbits.iter().filter(|o| o.id.is_some()).count();
        if with_ids != 0 && with_ids != self.orbits.len() {
            let i = self.orbits.iter().position(|o| o.id.is_none()).unwrap();
            return Err(doc_error(format!("orbits[{i}].id"), "ids must be given for all orbits or for none"));
        }
        let mut orbits = Vec::with_capacity(self.orbits.len());
        for (i, (r, n)) in self.orbits.iter().zip(1u32..).enumerate() {
            let id = OrbitId(r.id.unwrap_or(n));
            let o = Orbit::new(id, r.degree, r.mult).map_err(|e| match e {
                CycleError::BadOrbitDegree { .. } => doc_error(format!("orbits[{i}].degree"), e),
                CycleError::NegativeMultiplicity { .. } => doc_error(format!("orbits[{i}].mult"), e),
                _ => doc_error(format!("orbits[{i}]"), e),
            })?;
            if orbits.iter().any(|p: &Orbit| p.id() == id) {
                return Err(doc_error(format!("orbits[{i}].id"), format!("id {} appears more than once", id.0)));
            }
            orbits.push(o);
        }
        CycleClass::new(label, self.d, orbits).map_err(|e| doc_error("document", e))
    }

    pub fn declared_target(&self) -> Result<Option<BrauerLabel>, DocumentError> {
        self.declared_target.as_deref().map(|s| parse_label("declared_target", s)).transpose()
    }

    /// Canonical document for `c`: explicit ids, zero multiplicities dropped.
    pub fn from_cycle(c: &CycleClass, declared_target: Option<BrauerLabel>) -> Self {
        CycleDocument {
            label: c.label().as_str().to_string(),
            d: c.d(),
            orbits: c
                .normalized()
                .orbits()
                .iter()
                .map(|o| OrbitRecord { id: Some(o.id().0), degree: o.degree(), mult: o.mult() })
                .collect(),
            declared_target: declared_target.map(|l| l.as_str().to_string()),
        }
    }

    /// `parse` followed by `from_cycle`.
    pub fn canonical(text: &str) -> Result<Self, DocumentError> {
        let doc = CycleDocument::parse(text)?;
        let c = doc.to_cycle()?;
        Ok(CycleDocument::from_cycle(&c, doc.declared_target()?))
    }
}

fn load(text: &str) -> Result<(CycleDocument, CycleClass), Outcome> {
    let doc = CycleDocument::parse(text).map_err(|e| Outcome::err(EXIT_USAGE, e))?;
    let c = doc.to_cycle().map_err(|e| Outcome::err(EXIT_USAGE, e))?;
    Ok((doc, c))
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

pub fn cmd_check(text: &str, format: Format) -> Outcome {
    let (_, c) = match load(text) {
        Ok(v) => v,
        Err(o) => return o,
    };
    let r = c.noether_check();
    let code = if r.consistent() { EXIT_OK } else { EXIT_FAILURE };
    let stdout = match format {
        Format::Machine => to_json(&json!({
            "cycle": CycleDocument::from_cycle(&c, None),
            "report": r,
            "consistent": r.consistent(),
        })),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "cycle {c}").unwrap();
            writeln!(s, "E2 9d² - Σ deg·b² = 9: {} (value {})", verdict(r.quadratic), r.self_intersection).unwrap();
            writeln!(s, "E3 9d - Σ deg·b = 9: {} (value {})", verdict(r.linear), r.linear_value).unwrap();
            writeln!(s, "E4 max b ≥ d + 1: {}", verdict(r.max_mult_bound)).unwrap();
            writeln!(s, "E5 maximal orbits have degree 3 or 6: {}", verdict(r.max_point_degree)).unwrap();
            writeln!(s, "self-intersection: {}", r.self_intersection).unwrap();
            writeln!(s, "arithmetic genus: {}", r.arithmetic_genus).unwrap();
            s
        }
    };
    Outcome::out(code, stdout)
}

pub fn cmd_push(text: &str, kind: KindArg, center: CenterArg, format: Format) -> Outcome {
    let (_, c) = match load(text) {
        Ok(v) => v,
        Err(o) => return o,
    };
    let kind = LinkKind::from(kind);
    let center = match center {
        CenterArg::Fresh => Center::Fresh { degree: kind.center_degree() },
        CenterArg::Orbit(id) => Center::Existing(OrbitId(id)),
    };
    let mut session = LinkSession::for_cycle(&c);
    let pushed = match kind {
        LinkKind::Phi3 => session.phi3_push(&c, center),
        LinkKind::Phi6 => session.phi6_push(&c, center),
    };
    let (image, link) = match pushed {
        Ok(v) => v,
        Err(e @ (LinkError::MissingCenter(_) | LinkError::WrongDegree { .. })) => {
            return Outcome::err(EXIT_USAGE, e)
        }
        Err(e) => return Outcome::err(EXIT_FAILURE, e),
    };
    let doc = CycleDocument::from_cycle(&image, None);
    match format {
        Format::Machine => Outcome::out(EXIT_OK, to_json(&json!({ "document": doc, "link": link }))),
        Format::Text => Outcome {
            code: EXIT_OK,
            stdout: to_json(&doc),
            stderr: format!(
                "{} at {} (b={}) -> {} (b={}), d {} -> {}, {} -> {}\n",
                link.kind,
                link.center_id,
                link.center_mult,
                link.image_orbit_id,
                link.image_mult,
                c.d(),
                image.d(),
                link.source_label,
                link.target_label
            ),
        },
    }
}

/// Exit code for an untwisting failure.
pub fn untwist_exit_code(e: &UntwistError) -> i32 {
    match e {
        UntwistError::InconsistentCycle(_) => EXIT_INCONSISTENT,
        UntwistError::ParityContradiction { .. } => EXIT_PARITY,
        UntwistError::UnsupportedDegree(_) => EXIT_UNSUPPORTED_DEGREE,
        UntwistError::TrivialBrauerClass => EXIT_USAGE,
        UntwistError::NonTermination(_) | UntwistError::Link(_) => EXIT_FAILURE,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorizationReport {
    pub steps: Vec<sbuntwist_core::Link>,
    pub cycles: Vec<CycleDocument>,
    pub d_trace: Vec<i64>,
    pub parity: sbuntwist_core::Parity,
    pub terminal_label: BrauerLabel,
}

impl From<&Factorization> for FactorizationReport {
    fn from(f: &Factorization) -> Self {
        FactorizationReport {
            steps: f.steps.clone(),
            cycles: f.cycles.iter().map(|c| CycleDocument::from_cycle(c, None)).collect(),
            d_trace: f.d_trace(),
            parity: f.parity,
            terminal_label: f.terminal().label(),
        }
    }
}

fn join<T: fmt::Display>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

/// `target` overrides the document's `declared_target`; with neither, the
/// datum is read as a birational automorphism of its own surface.
pub fn cmd_untwist(text: &str, target: Option<TargetArg>, format: Format) -> Outcome {
    let (doc, c) = match load(text) {
        Ok(v) => v,
        Err(o) => return o,
    };
    let declared = match target {
        Some(t) => BrauerLabel::from(t),
        None => match doc.declared_target() {
            Ok(t) => t.unwrap_or(c.label()),
            Err(e) => return Outcome::err(EXIT_USAGE, e),
        },
    };
    let f = match untwist(&c, declared) {
        Ok(f) => f,
        Err(e) => return Outcome::err(untwist_exit_code(&e), e),
    };
    let stdout = match format {
        Format::Machine => to_json(&FactorizationReport::from(&f)),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "word: [{}]", join(f.kinds(), ", ")).unwrap();
            for (i, (l, next)) in f.steps.iter().zip(&f.cycles[1..]).enumerate() {
                writeln!(
                    s,
                    "  {}. {} at {} (b={}) -> {}",
                    i + 1,
                    l.kind,
                    l.center_id,
                    l.center_mult,
                    next
                )
                .unwrap();
            }
            writeln!(s, "d-trace: {}", join(f.d_trace(), " -> ")).unwrap();
            writeln!(s, "parity: {}", if f.steps.len() % 2 == 0 { "even" } else { "odd" }).unwrap();
            writeln!(s, "terminal: {}", f.terminal().label()).unwrap();
            s
        }
    };
    Outcome::out(EXIT_OK, stdout)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyParams {
    pub mode: VerifyMode,
    pub prime: u64,
    pub samples: usize,
    pub seed: u64,
    pub dmax: i64,
}

fn oracle_code(e: &OracleError) -> i32 {
    match e {
        OracleError::NotPrime(_) | OracleError::BadCharacteristic(_) | OracleError::UnsupportedExtension(_) => {
            EXIT_USAGE
        }
        _ => EXIT_FAILURE,
    }
}

pub fn cmd_verify(p: VerifyParams, format: Format) -> Outcome {
    if let Err(e) = GaloisField::for_oracle(p.prime, 1) {
        return Outcome::err(EXIT_USAGE, format!("--prime: {e}"));
    }
    if !(1..=DMAX_LIMIT).contains(&p.dmax) {
        return Outcome::err(EXIT_USAGE, format!("--dmax must lie in 1..={DMAX_LIMIT}"));
    }
    if p.samples > SAMPLES_LIMIT {
        return Outcome::err(EXIT_USAGE, format!("--samples must be at most {SAMPLES_LIMIT}"));
    }
    let run = || -> Result<(usize, serde_json::Value, String), OracleError> {
        let mut s = String::new();
        writeln!(s, "prime {}, samples {}, seed {}", p.prime, p.samples, p.seed).unwrap();
        match p.mode {
            VerifyMode::OraclePhi3 | VerifyMode::OraclePhi6 => {
                let kind = if p.mode == VerifyMode::OraclePhi3 { LinkKind::Phi3 } else { LinkKind::Phi6 };
                let formula = formula_scan(kind, p.dmax);
                let geometry = geometric_scan(kind, p.prime, p.samples, p.seed)?;
                writeln!(
                    s,
                    "{kind} formula, d ≤ {}: {} checks, {} equal, {} rejected on both sides, {} violations",
                    p.dmax,
                    formula.checks,
                    formula.agreed_values,
                    formula.agreed_rejections,
                    formula.violations()
                )
                .unwrap();
                for m in &formula.mismatches {
                    writeln!(s, "  formula mismatch at d={}, b={}: {} vs {}", m.d, m.b, m.symbolic, m.oracle).unwrap();
                }
                writeln!(
                    s,
                    "{kind} geometry: {} curves checked, {} centres in special position skipped, {} violations",
                    geometry.curves_checked,
                    geometry.skipped_special,
                    geometry.violations.len()
                )
                .unwrap();
                for v in &geometry.violations {
                    writeln!(s, "  geometry mismatch: {v}").unwrap();
                }
                let violations = formula.violations() + geometry.violations.len();
                Ok((violations, json!({ "formula": formula, "geometry": geometry }), s))
            }
            VerifyMode::GeneralPosition => {
                let r = general_position_scan(p.prime, p.samples, p.seed)?;
                writeln!(
                    s,
                    "degree-6 points: {}/{} pass, {} with three collinear, {} on a conic, {} collinear off a conic",
                    r.passed, r.samples, r.collinear, r.on_conic, r.collinear_off_conic
                )
                .unwrap();
                for (case, n) in &r.failing_cases {
                    writeln!(s, "  failing, {case}: {n}").unwrap();
                }
                Ok((r.violations(), json!(r), s))
            }
            VerifyMode::Table => {
                let r = table_scan(p.prime, p.samples, p.seed)?;
                for w in &r.witnesses {
                    let found = w.found_lines.map_or("unrealized".to_string(), |n| format!("{n} lines"));
                    writeln!(s, "{}: expected {} lines, witness {}", w.case, w.expected_lines, found).unwrap();
                }
                writeln!(
                    s,
                    "random configurations: {}, unclassifiable {}, line-count mismatches {}",
                    r.random_samples, r.unclassifiable, r.random_count_mismatches
                )
                .unwrap();
                for (case, n) in &r.random_cases {
                    writeln!(s, "  {case}: {n}").unwrap();
                }
                Ok((r.violations(), json!(r), s))
            }
        }
    };
    let (violations, report, mut text) = match run() {
        Ok(v) => v,
        Err(e) => return Outcome::err(oracle_code(&e), e),
    };
    let code = if violations == 0 { EXIT_OK } else { EXIT_FAILURE };
    let mode = VerifyMode::to_possible_value(&p.mode).map(|v| v.get_name().to_string()).unwrap_or_default();
    let stdout = match format {
        Format::Machine => to_json(&json!({
            "mode": mode,
            "prime": p.prime,
            "samples": p.samples,
            "seed": p.seed,
            "dmax": p.dmax,
            "violations": violations,
            "report": report,
        })),
        Format::Text => {
            writeln!(text, "violations: {violations}").unwrap();
            format!("mode {mode}, {text}")
        }
    };
    Outcome::out(code, stdout)
}
