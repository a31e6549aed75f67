//! Abstract belief calculus: partial support structures ⟨S, ⊕⟩, their axiom
//! checks, and the orders used to compare belief pairs.
//!
//! The s-value instantiates S = [0, 1] with ⊕ = max, 0 as the zero element
//! and 1 as the unit.
//!
//! The belief order compares supports directly and co-supports in reverse,
//! so ⟨0, 1⟩ is its minimum and ⟨1, 0⟩ its maximum.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evidence::SupportPair;

/// Absolute tolerance used when comparing support values.
pub const SUPPORT_EPS: f64 = 1e-12;

/// A partial support structure on a real carrier.
#[derive(Clone, Copy)]
pub struct SupportStructure {
    pub name: &'static str,
    pub carrier: (f64, f64),
    pub oplus: fn(f64, f64) -> f64,
    pub zero: f64,
    pub one: f64,
}

impl fmt::Debug for SupportStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SupportStructure")
            .field("name", &self.name)
            .field("carrier", &self.carrier)
            .field("zero", &self.zero)
            .field("one", &self.one)
            .finish()
    }
}

impl SupportStructure {
    /// ⟨[0,1], max⟩, the structure s-values live in.
    pub fn possibility() -> Self {
        Self {
            name: "max",
            carrier: (0.0, 1.0),
            oplus: f64::max,
            zero: 0.0,
            one: 1.0,
        }
    }

    /// ⟨[0,1], min(1, a + b)⟩, a probability-like sum kept inside the carrier.
    pub fn clamped_sum() -> Self {
        Self {
            name: "clamped_sum",
            carrier: (0.0, 1.0),
            oplus: |a, b| (a + b).min(1.0),
            zero: 0.0,
            one: 1.0,
        }
    }

    /// ⟨[0,1), a + b mod 1⟩; wraps around and so breaks convexity.
    pub fn sum_mod_one() -> Self {
        Self {
            name: "sum_mod_one",
            carrier: (0.0, 1.0),
            oplus: |a, b| (a + b).rem_euclid(1.0),
            zero: 0.0,
            one: 1.0,
        }
    }

    pub fn combine(&self, a: f64, b: f64) -> f64 {
        (self.oplus)(a, b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Symmetry,
    Associativity,
    Convexity,
    ZeroElement,
    UnitElement,
}

impl Axiom {
    pub const ALL: [Axiom; 5] = [
        Axiom::Symmetry,
        Axiom::Associativity,
        Axiom::Convexity,
        Axiom::ZeroElement,
        Axiom::UnitElement,
    ];
}

#[derive(Debug, Clone, PartialEq)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub witness: (f64, f64, f64),
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct AxiomReport {
    pub checked: usize,
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn holds(&self, axiom: Axiom) -> bool {
        self.violations.iter().all(|v| v.axiom != axiom)
    }

    pub fn all_hold(&self) -> bool {
        self.violations.is_empty()
    }
}

fn eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= SUPPORT_EPS
}

/// Evaluates the five support-structure axioms on every sampled triple.
///
/// Zero and unit uniqueness are checked against the sampled elements: no
/// other sampled value may act as a zero, and no other sampled value may
/// be reachable from every sampled element.
pub fn check_support_structure(s: &SupportStructure, samples: &[(f64, f64, f64)]) -> AxiomReport {
    let mut report = AxiomReport {
        checked: samples.len(),
        ..Default::default()
    };
    let op = |a, b| s.combine(a, b);
    let mut push = |axiom, witness, detail: String| {
        report.violations.push(AxiomViolation {
            axiom,
            witness,
            detail,
        });
    };

    let mut elems: Vec<f64> = samples.iter().flat_map(|&(a, b, c)| [a, b, c]).collect();
    elems.push(s.zero);
    elems.push(s.one);
    elems.sort_by(f64::total_cmp);
    elems.dedup_by(|a, b| eq(*a, *b));

    for &(a, b, c) in samples {
        let w = (a, b, c);
        if !eq(op(a, b), op(b, a)) {
            push(
                Axiom::Symmetry,
                w,
                format!("{a}⊕{b} = {} but {b}⊕{a} = {}", op(a, b), op(b, a)),
            );
        }
        let left = op(op(a, b), c);
        let right = op(a, op(b, c));
        if !eq(left, right) {
            push(
                Axiom::Associativity,
                w,
                format!("(a⊕b)⊕c = {left}, a⊕(b⊕c) = {right}"),
            );
        }
        if eq(left, a) && !eq(op(a, b), a) {
            push(
                Axiom::Convexity,
                w,
                format!("(a⊕b)⊕c = a but a⊕b = {}", op(a, b)),
            );
        }
    }

    for &a in &elems {
        if !eq(op(a, s.zero), a) {
            push(
                Axiom::ZeroElement,
                (a, s.zero, f64::NAN),
                format!("{a}⊕0 = {}", op(a, s.zero)),
            );
        }
        if !elems.iter().any(|&b| eq(op(a, b), s.one)) {
            push(
                Axiom::UnitElement,
                (a, s.one, f64::NAN),
                format!("no sampled b with {a}⊕b = 1"),
            );
        }
    }
    for &z in elems.iter().filter(|&&z| !eq(z, s.zero)) {
        if elems.iter().all(|&a| eq(op(a, z), a)) {
            push(
                Axiom::ZeroElement,
                (z, f64::NAN, f64::NAN),
                format!("{z} also acts as a zero"),
            );
        }
    }
    for &u in elems.iter().filter(|&&u| !eq(u, s.one) && !eq(u, s.zero)) {
        if elems
            .iter()
            .all(|&a| elems.iter().any(|&b| eq(op(a, b), u)))
        {
            push(
                Axiom::UnitElement,
                (u, f64::NAN, f64::NAN),
                format!("{u} also reachable from every element"),
            );
        }
    }
    report
}

/// a ⪯ b under ⊕ = max: some c gives max(a, c) = b, i.e. a ≤ b.
pub fn support_order(a: f64, b: f64) -> bool {
    a <= b + SUPPORT_EPS
}

/// A ⊑ B: A.support ⪯ B.support and B.co_support ⪯ A.co_support.
pub fn belief_order(a: &SupportPair, b: &SupportPair) -> bool {
    support_order(a.support, b.support) && support_order(b.co_support, a.co_support)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BeliefState {
    Reject,
    Accept,
    /// ⟨a, 1⟩ with a below the critical value.
    AgainstIfSmall,
    /// ⟨1, b⟩ with b below the critical value.
    FavorIfSmall,
    Ignorance,
}

impl BeliefState {
    pub fn as_str(&self) -> &'static str {
        match self {
            BeliefState::Reject => "reject",
            BeliefState::Accept => "accept",
            BeliefState::AgainstIfSmall => "against_if_small",
            BeliefState::FavorIfSmall => "favor_if_small",
            BeliefState::Ignorance => "ignorance",
        }
    }
}

impl fmt::Display for BeliefState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

const STATE_EPS: f64 = 1e-9;

/// Reads a belief pair against caller-chosen critical values `a_c`, `b_c`.
///
/// Intermediate pairs that fall short of their critical value are reported
/// as `Ignorance` (undecided).
pub fn classify_state(pair: &SupportPair, a_c: f64, b_c: f64) -> Result<BeliefState> {
    for (name, v) in [("a_c", a_c), ("b_c", b_c)] {
        if !(v > 0.0 && v < 1.0) {
            return Err(Error::Domain(format!("{name} must lie in (0, 1), got {v}")));
        }
    }
    let one = |v: f64| (v - 1.0).abs() <= STATE_EPS;
    let zero = |v: f64| v.abs() <= STATE_EPS;
    let (a, b) = (pair.support, pair.co_support);
    Ok(match (one(a), one(b)) {
        (true, true) => BeliefState::Ignorance,
        (false, true) if zero(a) => BeliefState::Reject,
        (false, true) if a < a_c => BeliefState::AgainstIfSmall,
        (true, false) if zero(b) => BeliefState::Accept,
        (true, false) if b < b_c => BeliefState::FavorIfSmall,
        (false, false) => {
            return Err(Error::Domain(format!(
                "belief pair ⟨{a}, {b}⟩ has no component equal to 1"
            )))
        }
        _ => BeliefState::Ignorance,
    })
}
