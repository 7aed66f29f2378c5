//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use sbuntwist_core::links::LinkKind;
use sbuntwist_core::oracle::configuration::{ConfigCase, LINE_COUNT_TABLE};
use sbuntwist_core::oracle::cremona::{CurveClass, PointLabel};
use sbuntwist_core::oracle::scan::{compare_formula, formula_scan, general_position_scan, table_scan};
use sbuntwist_core::untwist::{chain_from_kinds, random_kinds};
use sbuntwist_core::{untwist, BrauerLabel, CycleClass, UntwistError};

const CHAINS: u64 = 1000;
const MAX_CHAIN_LENGTH: u64 = 6;
const CHAIN_SEED: u64 = 0xC4A1;
const GRID_DMAX: i64 = 50;
const POSITION_PRIMES: [u64; 4] = [5, 7, 11, 13];
const POSITION_SAMPLES: usize = 100;
const POSITION_SEED: u64 = 1;
const TABLE_PRIMES: [u64; 2] = [7, 11];
const TABLE_RANDOM: usize = 10_000;
const TABLE_SEED: u64 = 3;

struct Chain {
    length: usize,
    /// `-ω` first, the chain's end cycle last.
    cycles: Vec<CycleClass>,
}

fn chains() -> Vec<Chain> {
    (0..CHAINS)
        .map(|i| {
            let seed = CHAIN_SEED + i;
            let length = (i % (MAX_CHAIN_LENGTH + 1)) as usize;
            let (cycles, _) = chain_from_kinds(&random_kinds(length, seed), BrauerLabel::Gamma)
                .unwrap_or_else(|e| panic!("chain {i}: {e}"));
            Chain { length, cycles }
        })
        .collect()
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn report(n: usize, title: &str, limit: Option<Duration>, run: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = run();
    let elapsed = start.elapsed();
    let in_time = limit.map_or(true, |l| elapsed < l);
    let pass = outcome.pass && in_time;
    let limit_text = limit.map_or(String::new(), |l| format!(" (limit {:.0?})", l));
    println!(
        "criterion {n} {}: {title}: {}; {:.3?}{limit_text}",
        if pass { "PASS" } else { "FAIL" },
        outcome.detail,
        elapsed,
    );
    pass
}

fn criterion_1(chains: &[Chain]) -> Outcome {
    let mut checked = 0;
    let mut bad = 0;
    for c in chains.iter().flat_map(|ch| &ch.cycles) {
        let r = c.noether_check();
        checked += 1;
        bad += !(r.self_intersection == 9 && r.linear_value == 9) as usize;
    }
    Outcome {
        pass: bad == 0,
        detail: format!("{checked} cycles, {bad} violate 9d²-Σdeg·b²=9 or 9d-Σdeg·b=9"),
    }
}

fn criterion_2(chains: &[Chain]) -> Outcome {
    let mut bad = Vec::new();
    for (i, ch) in chains.iter().enumerate() {
        let end = ch.cycles.last().unwrap();
        let declared = end.label().flipped(ch.length);
        let ok = match untwist(end, declared) {
            Ok(f) => {
                let trace = f.d_trace();
                trace.windows(2).all(|w| w[1] < w[0])
                    && f.terminal().is_anticanonical()
                    && f.steps.len() == ch.length
                    && f.parity == sbuntwist_core::Parity::of(ch.length)
            }
            Err(_) => false,
        };
        if !ok {
            bad.push(i);
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!("{} chains, {} failures {:?}", chains.len(), bad.len(), &bad[..bad.len().min(5)]),
    }
}

fn criterion_3() -> Outcome {
    let r = formula_scan(LinkKind::Phi3, GRID_DMAX);
    Outcome {
        pass: r.violations() == 0 && r.agreed_values > 0,
        detail: format!(
            "{} grid points, {} equal, {} jointly rejected, {} mismatches",
            r.checks,
            r.agreed_values,
            r.agreed_rejections,
            r.violations()
        ),
    }
}

fn criterion_4() -> Outcome {
    let r = formula_scan(LinkKind::Phi6, GRID_DMAX);
    let six: [PointLabel; 6] = std::array::from_fn(|i| PointLabel(i as u32 + 1));
    let quintic = CurveClass::new(3, BTreeMap::new())
        .and_then(|c| c.phi6_decomposition_push(six))
        .map(|(c, fresh)| (c.line_degree(), fresh.map(|l| c.mult(l))));
    let quintic_ok = quintic == Ok((15, [6; 6])) && compare_formula(LinkKind::Phi6, 1, 0) == Ok(true);
    Outcome {
        pass: r.violations() == 0 && r.agreed_values > 0 && quintic_ok,
        detail: format!(
            "{} grid points, {} equal, {} jointly rejected, {} mismatches; -ω ↦ {:?}",
            r.checks,
            r.agreed_values,
            r.agreed_rejections,
            r.violations(),
            quintic
        ),
    }
}

fn criterion_5() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for p in POSITION_PRIMES {
        match general_position_scan(p, POSITION_SAMPLES, POSITION_SEED) {
            Ok(r) => {
                pass &= r.collinear == 0 && r.on_conic == 0 && r.samples >= POSITION_SAMPLES;
                parts.push(format!(
                    "p={p}: {}/{} pass, {} collinear, {} on a conic, {} collinear off a conic, cases {:?}",
                    r.passed, r.samples, r.collinear, r.on_conic, r.collinear_off_conic, r.failing_cases
                ));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("p={p}: {e}"));
            }
        }
    }
    Outcome { pass, detail: parts.join("; ") }
}

fn criterion_6() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for q in TABLE_PRIMES {
        match table_scan(q, TABLE_RANDOM, TABLE_SEED) {
            Ok(r) => {
                let found: Vec<Option<usize>> = r.witnesses.iter().map(|w| w.found_lines).collect();
                let table_ok = r
                    .witnesses
                    .iter()
                    .all(|w| w.found_lines.map_or(true, |n| n == w.expected_lines));
                let order_ok = r.witnesses.iter().map(|w| w.case).eq(ConfigCase::all_degenerate())
                    && r.witnesses.iter().map(|w| w.expected_lines).eq(LINE_COUNT_TABLE);
                pass &= table_ok && order_ok && r.unclassifiable == 0 && r.random_count_mismatches == 0;
                parts.push(format!(
                    "q={q}: witnesses {:?}, unrealized {:?}, {} random, {} unclassifiable, {} count mismatches",
                    found,
                    r.unrealized(),
                    r.random_samples,
                    r.unclassifiable,
                    r.random_count_mismatches
                ));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("q={q}: {e}"));
            }
        }
    }
    Outcome { pass, detail: parts.join("; ") }
}

/// Every cycle seen in criteria 1 and 2: the chain cycles and the cycles
/// produced while untwisting.
fn all_cycles(chains: &[Chain]) -> Vec<CycleClass> {
    let mut out = Vec::new();
    for ch in chains {
        out.extend(ch.cycles.iter().cloned());
        let end = ch.cycles.last().unwrap();
        if let Ok(f) = untwist(end, end.label().flipped(ch.length)) {
            out.extend(f.cycles);
        }
    }
    out
}

fn criterion_7(cycles: &[CycleClass]) -> Outcome {
    let mut checked = 0;
    let mut bad = 0;
    for c in cycles.iter().filter(|c| c.d() >= 2) {
        let r = c.noether_check();
        checked += 1;
        bad += !(r.max_mult_bound && r.max_point_degree) as usize;
    }
    Outcome {
        pass: bad == 0 && checked > 0,
        detail: format!("{checked} cycles with d ≥ 2, {bad} violate max b ≥ d+1 or centre degree ∈ {{3,6}}"),
    }
}

fn criterion_8(cycles: &[CycleClass]) -> Outcome {
    let bad = cycles
        .iter()
        .filter(|c| c.arithmetic_genus() != 1 || c.self_intersection() != 9)
        .count();
    Outcome {
        pass: bad == 0,
        detail: format!("{} cycles, {bad} with genus ≠ 1 or self-intersection ≠ 9", cycles.len()),
    }
}

fn criterion_9(chains: &[Chain]) -> Outcome {
    let mut bad = 0;
    let mut contradictions = 0;
    for ch in chains {
        let end = ch.cycles.last().unwrap();
        let right = end.label().flipped(ch.length);
        bad += untwist(end, right).is_err() as usize;
        match untwist(end, right.inverse()) {
            Err(UntwistError::ParityContradiction { steps, .. }) if steps == ch.length => contradictions += 1,
            _ => bad += 1,
        }
    }
    Outcome {
        pass: bad == 0,
        detail: format!(
            "{} chains, {contradictions} wrong declarations rejected, {bad} failures",
            chains.len()
        ),
    }
}

fn main() -> ExitCode {
    let chains = chains();
    let cycles = all_cycles(&chains);
    let secs = Duration::from_secs;
    let results = [
        report(1, "Noether equalities along random chains", Some(secs(1)), || criterion_1(&chains)),
        report(2, "untwisting reverses random chains", Some(secs(1)), || criterion_2(&chains)),
        report(3, "phi3 formula equals quadratic transformation", Some(secs(1)), criterion_3),
        report(4, "phi6 formula equals three quadratic transformations", Some(secs(1)), criterion_4),
        report(5, "degree-6 points in general position", Some(secs(30)), criterion_5),
        report(6, "six-point configuration table", Some(secs(60)), criterion_6),
        report(7, "maximal multiplicity bound and centre degree", None, || criterion_7(&cycles)),
        report(8, "genus and self-intersection conserved", None, || criterion_8(&cycles)),
        report(9, "parity of declared targets", None, || criterion_9(&chains)),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria pass", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
