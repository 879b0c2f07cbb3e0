//! Output documents. Field order is fixed by the struct definitions and no
//! timestamps or environment data are included, so serialization is
//! byte-deterministic for a given verdict.

use gm_core::algorithm::{Outcome, PairClass, StepTrace, Verdict};
use gm_core::moebius::{IsometryClass, Moebius};
use serde::{Deserialize, Serialize};

use crate::input::{matrix_of, NormalizedInput, PairInput};

#[derive(Debug, Serialize, Deserialize)]
pub struct Document {
    pub input: NormalizedInput,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub f_sequence: Vec<u64>,
    pub stopping_pair: Option<StoppingPairDoc>,
    pub shortest: Option<ShortestDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<Vec<StepDoc>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct StoppingPairDoc {
    pub c: [[f64; 2]; 2],
    pub d: [[f64; 2]; 2],
    pub word_c: String,
    pub word_d: String,
    pub trace_c: f64,
    pub trace_d: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ShortestDoc {
    pub lengths: Vec<f64>,
    pub cusps: usize,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct StepDoc {
    pub class: String,
    pub n: u64,
    pub boundary: bool,
    pub trace_c: f64,
    pub trace_d: f64,
    pub trace_cd_inv: f64,
    pub jorgensen: f64,
}

pub fn verdict_name(outcome: Outcome) -> &'static str {
    match outcome {
        Outcome::DiscreteFree => "discrete_free",
        Outcome::Discrete => "discrete",
        Outcome::NotDiscrete => "not_discrete",
        Outcome::NotFreeOrNotDiscrete => "not_free_or_not_discrete",
        Outcome::OutOfScopeElliptic => "out_of_scope_elliptic",
    }
}

fn class_name(class: PairClass) -> &'static str {
    match class {
        PairClass::HhDisjoint => "hh_disjoint",
        PairClass::HhIntersecting => "hh_intersecting",
        PairClass::Hp => "hp",
        PairClass::Pp => "pp",
        PairClass::HasElliptic => "has_elliptic",
    }
}

fn step_doc(s: &StepTrace) -> StepDoc {
    StepDoc {
        class: class_name(s.class).into(),
        n: s.n,
        boundary: s.boundary,
        trace_c: s.trace_c,
        trace_d: s.trace_d,
        trace_cd_inv: s.trace_cd_inv,
        jorgensen: s.jorgensen,
    }
}

/// The machine-readable reason accompanying an out-of-scope verdict.
fn elliptic_reason(input: &PairInput, tol: f64) -> String {
    let elliptic = |m: &Moebius| m.classify(tol) == IsometryClass::Elliptic;
    if elliptic(&input.a) || elliptic(&input.b) {
        "elliptic_generator".into()
    } else {
        "elliptic_commutator".into()
    }
}

pub fn build(input: &PairInput, verdict: &Verdict, tol: f64, with_steps: bool) -> Document {
    let reason = if verdict.outcome == Outcome::OutOfScopeElliptic {
        Some(elliptic_reason(input, tol))
    } else {
        None
    };
    Document {
        input: input.normalized(),
        verdict: verdict_name(verdict.outcome).into(),
        reason,
        f_sequence: verdict.f_sequence.clone(),
        stopping_pair: verdict.stopping_pair.as_ref().map(|sp| StoppingPairDoc {
            c: matrix_of(&sp.c),
            d: matrix_of(&sp.d),
            word_c: sp.word_c.to_string(),
            word_d: sp.word_d.to_string(),
            trace_c: sp.trace_c,
            trace_d: sp.trace_d,
        }),
        shortest: verdict.shortest.as_ref().map(|s| ShortestDoc {
            lengths: s.lengths.clone(),
            cusps: s.cusps,
        }),
        steps: with_steps.then(|| verdict.steps.iter().map(step_doc).collect()),
    }
}
