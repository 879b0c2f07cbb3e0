//! The shortened Gilman–Maskit procedure: coherent orientation, closed-form
//! step counts, Fibonacci steps, stopping tests, and the driver that turns a
//! generator pair into a [`Verdict`].
//!
//! Each Fibonacci step replaces an ordered pair (C, D) by (D⁻¹, C⁻¹Dⁿ),
//! where the exponent n counts the linear steps a step-by-step trace
//! reduction would take. For a hyperbolic–hyperbolic pair n is the Euclidean
//! quotient ⌊T_C / T_D⌋ of translation lengths; for a hyperbolic–parabolic
//! pair it is the quotient of the trace excess by the per-step trace
//! decrement. The sequence of exponents is the F-sequence reported in the
//! verdict.

use crate::geometry::{self, IntersectionKind, Side};
use crate::moebius::{IsometryClass, Moebius};
use crate::oracle;
use crate::word::{Letter, Word};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct Config {
    /// Classification and stopping tolerance ε.
    pub tolerance: f64,
    /// Width of the distrust band around integer length ratios.
    pub ratio_tolerance: f64,
    /// Cap on linear steps, in total and within a single exponent.
    pub max_steps: usize,
}

impl Default for Config {
    fn default() -> Config {
        Config {
            tolerance: crate::DEFAULT_TOLERANCE,
            ratio_tolerance: crate::DEFAULT_RATIO_TOLERANCE,
            max_steps: crate::DEFAULT_MAX_STEPS,
        }
    }
}

/// Joint class of an ordered pair, driving the step-count formula. The
/// algorithm path moves monotonically HhDisjoint → Hp → Pp; the other two
/// classes stop immediately.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairClass {
    HhDisjoint,
    HhIntersecting,
    Hp,
    Pp,
    HasElliptic,
}

/// Final answer of the procedure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// Discrete and free of rank two.
    DiscreteFree,
    /// Discrete; reached at a parabolic–parabolic stopping pair whose
    /// products are non-elliptic. Freeness is certified separately (for
    /// instance by a ping-pong argument), not by this verdict.
    Discrete,
    /// Not discrete (Jørgensen violation).
    NotDiscrete,
    /// Contains an elliptic or trivial element among the derived generators:
    /// the group is not free, not discrete, or both.
    NotFreeOrNotDiscrete,
    /// A generator (or the commutator in the intersecting-axes branch) is
    /// elliptic; the procedure does not classify such groups.
    OutOfScopeElliptic,
}

/// An ordered, oriented generator pair with its symbolic bookkeeping:
/// `word_c`/`word_d` express the current generators in the original ones,
/// `recon_a`/`recon_b` express the original generators in the current ones
/// (letter `a` standing for `c`, letter `b` for `d`).
#[derive(Debug, Clone)]
pub struct OrderedPair {
    pub c: Moebius,
    pub d: Moebius,
    pub word_c: Word,
    pub word_d: Word,
    pub recon_a: Word,
    pub recon_b: Word,
}

/// Per-iteration record: the examined pair, its invariants, and the exponent
/// taken.
#[derive(Debug, Clone)]
pub struct StepTrace {
    pub class: PairClass,
    pub c: Moebius,
    pub d: Moebius,
    pub trace_c: f64,
    pub trace_d: f64,
    pub trace_cd_inv: f64,
    pub jorgensen: f64,
    pub n: u64,
    /// The length ratio sat inside the distrust band and the exponent was
    /// decided by the geometric separation count instead of the floor.
    pub boundary: bool,
}

/// Lengths of the candidate shortest closed geodesics on the quotient, plus
/// the number of cusps contributed by parabolic stopping generators.
#[derive(Debug, Clone, PartialEq)]
pub struct ShortestLengths {
    pub lengths: Vec<f64>,
    pub cusps: usize,
}

#[derive(Debug, Clone)]
pub struct StoppingPair {
    pub c: Moebius,
    pub d: Moebius,
    pub word_c: Word,
    pub word_d: Word,
    pub trace_c: f64,
    pub trace_d: f64,
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub outcome: Outcome,
    /// Fibonacci exponents [n₁, n₂, …]; a terminal 1 is appended when the
    /// stop fires on a product trace at a pair containing a parabolic.
    pub f_sequence: Vec<u64>,
    pub steps: Vec<StepTrace>,
    pub stopping_pair: Option<StoppingPair>,
    /// Present exactly when the outcome is `DiscreteFree`.
    pub shortest: Option<ShortestLengths>,
}

/// |tr²C − 4| + |tr[C,D] − 2|: discrete non-elementary groups satisfy ≥ 1.
pub fn jorgensen_value(c: &Moebius, d: &Moebius) -> f64 {
    let t = c.trace();
    (t * t - 4.0).abs() + (c.commutator(d).trace() - 2.0).abs()
}

/// Joint classification of a pair. Identity members count as elliptic here:
/// a trivial derived generator witnesses a relation just as an elliptic one
/// witnesses non-freeness or non-discreteness.
pub fn pair_class(c: &Moebius, d: &Moebius, tol: f64) -> Result<PairClass> {
    use IsometryClass::*;
    let (kc, kd) = (c.classify(tol), d.classify(tol));
    Ok(match (kc, kd) {
        (Elliptic, _) | (_, Elliptic) | (Identity, _) | (_, Identity) => PairClass::HasElliptic,
        (Hyperbolic, Hyperbolic) => {
            let ax_c = geometry::axis(c, tol)?;
            let ax_d = geometry::axis(d, tol)?;
            match geometry::intersection_kind(&ax_c, &ax_d, tol) {
                IntersectionKind::Disjoint => PairClass::HhDisjoint,
                IntersectionKind::Interior => PairClass::HhIntersecting,
                IntersectionKind::SharedEnd => return Err(Error::ElementaryGroup),
            }
        }
        (Hyperbolic, Parabolic) | (Parabolic, Hyperbolic) => PairClass::Hp,
        (Parabolic, Parabolic) => PairClass::Pp,
    })
}

fn letter_word(l: Letter) -> Word {
    Word::letter(l)
}

/// Orients a hyperbolic pair with disjoint axes coherently: the
/// larger-translation-length element comes first, and each element is
/// possibly inverted so that both attracting fixed points lie to the left of
/// the common perpendicular of the axes, oriented from the first axis toward
/// the second. Exactly one of the eight swap/inversion variants qualifies
/// (up to the tie between equal lengths, broken toward keeping the input
/// order).
pub fn coherently_orient(x: &Moebius, y: &Moebius, tol: f64) -> Result<OrderedPair> {
    let tx = x.trace().abs();
    let ty = y.trace().abs();
    for swap in [false, true] {
        let (first, second) = if swap { (y, x) } else { (x, y) };
        let (tf, ts) = if swap { (ty, tx) } else { (tx, ty) };
        if tf + tol < ts {
            continue;
        }
        let ax_f = geometry::axis(first, tol)?;
        let ax_s = geometry::axis(second, tol)?;
        let l = geometry::common_perpendicular(&ax_f, &ax_s, tol)?;
        let (c, c_inverted) = orient_left(first, &l, tol)?;
        let (d, d_inverted) = orient_left(second, &l, tol)?;
        let slot_letter = |is_x: bool, inverted: bool| match (is_x, inverted) {
            (true, false) => Letter::A,
            (true, true) => Letter::AInv,
            (false, false) => Letter::B,
            (false, true) => Letter::BInv,
        };
        let word_c = letter_word(slot_letter(!swap, c_inverted));
        let word_d = letter_word(slot_letter(swap, d_inverted));
        // Original a sits in slot c when not swapped; undo the inversion.
        let recon = |in_c_slot: bool, inverted: bool| {
            let base = if in_c_slot { Letter::A } else { Letter::B };
            letter_word(if inverted { base.inverse() } else { base })
        };
        let recon_a = recon(!swap, if !swap { c_inverted } else { d_inverted });
        let recon_b = recon(swap, if swap { c_inverted } else { d_inverted });
        return Ok(OrderedPair {
            c,
            d,
            word_c,
            word_d,
            recon_a,
            recon_b,
        });
    }
    Err(Error::WrongPairClass)
}

fn orient_left(x: &Moebius, l: &geometry::Geodesic, tol: f64) -> Result<(Moebius, bool)> {
    match geometry::attracting_side(l, x, tol)? {
        Side::Left => Ok((*x, false)),
        Side::Right => Ok((x.inverse(), true)),
    }
}

/// Initial ordering when a parabolic is involved: the hyperbolic element (or
/// the first generator, for two parabolics) takes the C slot.
fn orient_with_parabolic(a: &Moebius, b: &Moebius, tol: f64) -> OrderedPair {
    let a_first = !matches!(a.classify(tol), IsometryClass::Parabolic)
        || matches!(b.classify(tol), IsometryClass::Parabolic);
    if a_first {
        OrderedPair {
            c: *a,
            d: *b,
            word_c: letter_word(Letter::A),
            word_d: letter_word(Letter::B),
            recon_a: letter_word(Letter::A),
            recon_b: letter_word(Letter::B),
        }
    } else {
        OrderedPair {
            c: *b,
            d: *a,
            word_c: letter_word(Letter::B),
            word_d: letter_word(Letter::A),
            recon_a: letter_word(Letter::B),
            recon_b: letter_word(Letter::A),
        }
    }
}

/// Exponent for a hyperbolic–hyperbolic pair: ⌊T_C / T_D⌋, except that
/// ratios within `ratio_tolerance` of an integer are decided by the
/// geometric separation count (the floor of a ratio that is an integer up to
/// rounding noise is not trustworthy). Returns the exponent and whether the
/// boundary protocol fired.
pub fn step_count_hh(c: &Moebius, d: &Moebius, cfg: &Config) -> Result<(u64, bool)> {
    let t_c = c.translation_length(cfg.tolerance)?.length;
    let t_d = d.translation_length(cfg.tolerance)?.length;
    let ratio = t_c / t_d;
    let nearest = ratio.round();
    if (ratio - nearest).abs() < cfg.ratio_tolerance {
        let n = oracle::linear_step_count(c, d, cfg.tolerance)
            .unwrap_or_else(|_| nearest.max(1.0) as u64);
        if n == 0 {
            return Err(Error::ZeroStepCount);
        }
        return Ok((n, true));
    }
    let n = ratio.floor();
    if n < 1.0 {
        return Err(Error::ZeroStepCount);
    }
    Ok((n as u64, false))
}

/// Exponent for a hyperbolic C and parabolic D: tr(C⁻¹Dᵠ) falls exactly
/// linearly in q, by δ = √(tr[C,D] − 2) per step, so the count of steps with
/// trace still ≥ 2 is ⌊(|tr C| − 2)/δ⌋.
pub fn step_count_hp(c: &Moebius, d: &Moebius, cfg: &Config) -> Result<u64> {
    let beta = c.commutator(d).trace() - 2.0;
    if beta <= cfg.tolerance {
        return Err(Error::DegenerateCommutator);
    }
    let n = ((c.trace().abs() - 2.0) / beta.sqrt()).floor();
    if n < 1.0 {
        return Err(Error::ZeroStepCount);
    }
    Ok(n as u64)
}

/// Exponent for two parabolics: a parabolic–parabolic pair that has not
/// stopped advances by exactly one linear step.
pub fn step_count_pp(_c: &Moebius, _d: &Moebius) -> u64 {
    1
}

/// Replaces (C, D) by (D⁻¹, C⁻¹Dⁿ) and rewires all four words: going
/// forward, c' = d⁻¹ and d' = c⁻¹dⁿ; going back, c = c'⁻ⁿ d'⁻¹ and d = c'⁻¹.
pub fn fibonacci_step(pair: &OrderedPair, n: u64) -> Result<OrderedPair> {
    let n_i32 = i32::try_from(n).map_err(|_| Error::MaxStepsExceeded(usize::MAX))?;
    let new_c = pair.d.inverse();
    let new_d = pair.c.inverse().compose(&pair.d.pow(n_i32));
    let word_c = pair.word_d.inverse();
    let word_d = pair.word_c.inverse().concat(&pair.word_d.pow(n_i32));
    let image_old_c = letter_word(Letter::AInv)
        .pow(n_i32)
        .concat(&letter_word(Letter::BInv));
    let image_old_d = letter_word(Letter::AInv);
    let recon_a = pair.recon_a.substitute(&image_old_c, &image_old_d);
    let recon_b = pair.recon_b.substitute(&image_old_c, &image_old_d);
    Ok(OrderedPair {
        c: new_c,
        d: new_d,
        word_c,
        word_d,
        recon_a,
        recon_b,
    })
}

/// Swaps the roles of C and D, with word bookkeeping.
fn swap_pair(pair: &OrderedPair) -> OrderedPair {
    let image_old_c = letter_word(Letter::B);
    let image_old_d = letter_word(Letter::A);
    OrderedPair {
        c: pair.d,
        d: pair.c,
        word_c: pair.word_d.clone(),
        word_d: pair.word_c.clone(),
        recon_a: pair.recon_a.substitute(&image_old_c, &image_old_d),
        recon_b: pair.recon_b.substitute(&image_old_c, &image_old_d),
    }
}

/// Replaces D by D⁻¹, with word bookkeeping.
fn invert_d(pair: &OrderedPair) -> OrderedPair {
    let image_old_c = letter_word(Letter::A);
    let image_old_d = letter_word(Letter::BInv);
    OrderedPair {
        c: pair.c,
        d: pair.d.inverse(),
        word_c: pair.word_c.clone(),
        word_d: pair.word_d.inverse(),
        recon_a: pair.recon_a.substitute(&image_old_c, &image_old_d),
        recon_b: pair.recon_b.substitute(&image_old_c, &image_old_d),
    }
}

/// Outcome of a stopping test: either continue stepping, or stop with a
/// verdict. `terminal_step` marks stops that consume one final linear step
/// (product-trace stops at pairs containing a parabolic), which append a 1
/// to the F-sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StopDecision {
    Continue,
    Stop {
        outcome: Outcome,
        terminal_step: bool,
    },
}

/// The battery of stopping tests, in order: elliptic or trivial member;
/// parabolic–parabolic product traces; tr(CD⁻¹) ≤ −2 (discrete free);
/// elliptic product band |tr(CD⁻¹)| < 2; Jørgensen violation.
pub fn stopping_test(pair: &OrderedPair, class: PairClass, cfg: &Config) -> StopDecision {
    let eps = cfg.tolerance;
    let stop = |outcome, terminal_step| StopDecision::Stop {
        outcome,
        terminal_step,
    };
    match class {
        PairClass::HasElliptic => stop(Outcome::NotFreeOrNotDiscrete, false),
        PairClass::Pp => {
            let t1 = pair.c.compose(&pair.d.inverse()).trace();
            let t2 = pair.c.compose(&pair.d).trace();
            if t1.abs() < 2.0 - eps || t2.abs() < 2.0 - eps {
                stop(Outcome::NotFreeOrNotDiscrete, false)
            } else {
                stop(Outcome::Discrete, true)
            }
        }
        _ => {
            let t = pair.c.compose(&pair.d.inverse()).trace();
            if t <= -2.0 + eps {
                stop(Outcome::DiscreteFree, class == PairClass::Hp)
            } else if t.abs() < 2.0 - eps {
                stop(Outcome::NotFreeOrNotDiscrete, false)
            } else if jorgensen_value(&pair.c, &pair.d) < 1.0 - eps {
                stop(Outcome::NotDiscrete, false)
            } else {
                StopDecision::Continue
            }
        }
    }
}

/// Lengths of the shortest closed geodesics realized by a stopping pair:
/// the hyperbolic members of {C, D} and the shorter of CD, CD⁻¹, sorted
/// ascending. Parabolic members contribute cusps instead of lengths.
pub fn shortest_geodesics(c: &Moebius, d: &Moebius, tol: f64) -> ShortestLengths {
    let mut lengths = Vec::new();
    let mut cusps = 0;
    for g in [c, d] {
        match g.classify(tol) {
            IsometryClass::Hyperbolic => {
                lengths.push(g.translation_length(tol).expect("hyperbolic").length)
            }
            IsometryClass::Parabolic => cusps += 1,
            _ => {}
        }
    }
    let product_length = [c.compose(d), c.compose(&d.inverse())]
        .iter()
        .filter(|p| p.classify(tol) == IsometryClass::Hyperbolic)
        .map(|p| p.translation_length(tol).expect("hyperbolic").length)
        .fold(f64::INFINITY, f64::min);
    if product_length.is_finite() {
        lengths.push(product_length);
    }
    lengths.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ShortestLengths { lengths, cusps }
}

/// Runs the full procedure on a generator pair. Generators are re-signed to
/// nonnegative trace on ingestion; derived lifts keep the signs their
/// products produce, which is what makes the trace stopping tests meaningful.
pub fn run(a: &Moebius, b: &Moebius, cfg: &Config) -> Result<Verdict> {
    let tol = cfg.tolerance;
    let a = a.with_nonneg_trace();
    let b = b.with_nonneg_trace();
    if a.is_identity(tol) || b.is_identity(tol) {
        return Err(Error::IdentityGenerator);
    }
    let (ka, kb) = (a.classify(tol), b.classify(tol));
    if ka == IsometryClass::Elliptic || kb == IsometryClass::Elliptic {
        return Ok(elliptic_verdict());
    }
    if crate::moebius::is_elementary(&a, &b, tol) {
        return Err(Error::ElementaryGroup);
    }
    let pair = if ka == IsometryClass::Hyperbolic && kb == IsometryClass::Hyperbolic {
        let ax_a = geometry::axis(&a, tol)?;
        let ax_b = geometry::axis(&b, tol)?;
        match geometry::intersection_kind(&ax_a, &ax_b, tol) {
            IntersectionKind::Interior => return intersecting_axes_branch(&a, &b, cfg),
            IntersectionKind::SharedEnd => return Err(Error::ElementaryGroup),
            IntersectionKind::Disjoint => coherently_orient(&a, &b, tol)?,
        }
    } else {
        orient_with_parabolic(&a, &b, tol)
    };
    main_loop(pair, cfg)
}

fn elliptic_verdict() -> Verdict {
    Verdict {
        outcome: Outcome::OutOfScopeElliptic,
        f_sequence: Vec::new(),
        steps: Vec::new(),
        stopping_pair: None,
        shortest: None,
    }
}

fn main_loop(mut pair: OrderedPair, cfg: &Config) -> Result<Verdict> {
    let tol = cfg.tolerance;
    let mut steps: Vec<StepTrace> = Vec::new();
    let mut f_sequence: Vec<u64> = Vec::new();
    let mut linear_steps: u64 = 0;
    for _ in 0..cfg.max_steps {
        let mut class = pair_class(&pair.c, &pair.d, tol)?;
        if class == PairClass::Hp {
            // Normalize: hyperbolic first, and D pointing in the
            // trace-decreasing direction for the upcoming powers.
            if pair.c.classify(tol) == IsometryClass::Parabolic {
                pair = swap_pair(&pair);
            }
            let keep = pair.c.compose(&pair.d.inverse()).trace();
            let flip = pair.c.compose(&pair.d).trace();
            if keep > flip {
                pair = invert_d(&pair);
            }
            class = PairClass::Hp;
        }
        match stopping_test(&pair, class, cfg) {
            StopDecision::Stop {
                outcome,
                terminal_step,
            } => {
                if terminal_step {
                    f_sequence.push(1);
                }
                return Ok(finish(outcome, f_sequence, steps, &pair, tol));
            }
            StopDecision::Continue => {}
        }
        let (n, boundary) = match class {
            PairClass::HhDisjoint => {
                let (n, boundary) = step_count_hh(&pair.c, &pair.d, cfg)?;
                // The quotient jumps n linear steps at once, which is only
                // sound while the trace of CD⁻ᵠ stays at or above 2 across
                // the block. Scan the trace recurrence and stop at the
                // first crossing: at or below −2 the reflection lines bound
                // a region (discrete free); inside (−2, 2) an elliptic has
                // appeared.
                if let Some((q, outcome)) = scan_linear_block(&pair, n, tol) {
                    if linear_steps + q > cfg.max_steps as u64 {
                        return Err(Error::MaxStepsExceeded(cfg.max_steps));
                    }
                    f_sequence.push(q);
                    let stopped = stop_mid_block(&pair, q);
                    return Ok(finish(outcome, f_sequence, steps, &stopped, tol));
                }
                (n, boundary)
            }
            PairClass::Hp => (step_count_hp(&pair.c, &pair.d, cfg)?, false),
            PairClass::Pp => (step_count_pp(&pair.c, &pair.d), false),
            PairClass::HhIntersecting => return Err(Error::IntersectingAxes),
            PairClass::HasElliptic => unreachable!("elliptic pairs stop"),
        };
        linear_steps += n;
        if linear_steps > cfg.max_steps as u64 {
            return Err(Error::MaxStepsExceeded(cfg.max_steps));
        }
        steps.push(StepTrace {
            class,
            c: pair.c,
            d: pair.d,
            trace_c: pair.c.trace(),
            trace_d: pair.d.trace(),
            trace_cd_inv: pair.c.compose(&pair.d.inverse()).trace(),
            jorgensen: jorgensen_value(&pair.c, &pair.d),
            n,
            boundary,
        });
        f_sequence.push(n);
        pair = fibonacci_step(&pair, n)?;
    }
    Err(Error::MaxStepsExceeded(cfg.max_steps))
}

/// Walks the traces x_q = tr(C·D⁻ᵠ) through a block of `n` linear steps via
/// the recurrence x_{q+1} = tr(D)·x_q − x_{q−1}. Returns the first interior
/// index at which a stopping trace appears, with its verdict; `None` means
/// the whole block is safe to jump.
fn scan_linear_block(pair: &OrderedPair, n: u64, tol: f64) -> Option<(u64, Outcome)> {
    let t_d = pair.d.trace();
    let mut prev = pair.c.trace();
    let mut cur = pair.c.compose(&pair.d.inverse()).trace();
    for q in 2..=n {
        let next = t_d * cur - prev;
        if next <= -2.0 + tol {
            return Some((q, Outcome::DiscreteFree));
        }
        if next < 2.0 - tol {
            return Some((q, Outcome::NotFreeOrNotDiscrete));
        }
        prev = cur;
        cur = next;
    }
    None
}

/// The pair after `q` linear steps, (D⁻ᵠC, D), with word bookkeeping.
fn stop_mid_block(pair: &OrderedPair, q: u64) -> OrderedPair {
    let q_i32 = i32::try_from(q).expect("block fits i32");
    let new_c = pair.d.pow(-q_i32).compose(&pair.c);
    let word_c = pair.word_d.pow(-q_i32).concat(&pair.word_c);
    // Old C = Dᵠ·(new C); old D unchanged.
    let image_old_c = letter_word(Letter::B).pow(q_i32).concat(&letter_word(Letter::A));
    let image_old_d = letter_word(Letter::B);
    OrderedPair {
        c: new_c,
        d: pair.d,
        word_c,
        word_d: pair.word_d.clone(),
        recon_a: pair.recon_a.substitute(&image_old_c, &image_old_d),
        recon_b: pair.recon_b.substitute(&image_old_c, &image_old_d),
    }
}

fn finish(
    outcome: Outcome,
    f_sequence: Vec<u64>,
    steps: Vec<StepTrace>,
    pair: &OrderedPair,
    tol: f64,
) -> Verdict {
    let shortest = if outcome == Outcome::DiscreteFree {
        Some(shortest_geodesics(&pair.c, &pair.d, tol))
    } else {
        None
    };
    Verdict {
        outcome,
        f_sequence,
        steps,
        stopping_pair: Some(StoppingPair {
            c: pair.c,
            d: pair.d,
            word_c: pair.word_c.clone(),
            word_d: pair.word_d.clone(),
            trace_c: pair.c.trace(),
            trace_d: pair.d.trace(),
        }),
        shortest,
    }
}

/// Hyperbolic generators whose axes cross. An elliptic commutator puts the
/// group outside the procedure's scope; otherwise the pair is reduced by
/// Nielsen moves C ↦ CD^{±n} while the trace strictly drops, and the
/// resulting minimal pair realizes the shortest geodesics.
pub fn intersecting_axes_branch(a: &Moebius, b: &Moebius, cfg: &Config) -> Result<Verdict> {
    let tol = cfg.tolerance;
    let k = a.commutator(b).trace();
    if k.abs() < 2.0 - tol {
        return Ok(elliptic_verdict());
    }
    // Order by translation length, longer first.
    let (mut pair, swapped) = if a.trace().abs() >= b.trace().abs() {
        ((*a, *b), false)
    } else {
        ((*b, *a), true)
    };
    let (mut word_c, mut word_d) = if swapped {
        (letter_word(Letter::B), letter_word(Letter::A))
    } else {
        (letter_word(Letter::A), letter_word(Letter::B))
    };
    loop {
        let t_c = pair.0.translation_length(tol)?.length;
        let t_d = pair.1.translation_length(tol)?.length;
        let n = (t_c / t_d).floor().max(1.0) as i32;
        let plus = pair.0.compose(&pair.1.pow(n));
        let minus = pair.0.compose(&pair.1.pow(-n));
        let (cand, cand_word) = if plus.trace().abs() <= minus.trace().abs() {
            (plus, word_c.concat(&word_d.pow(n)))
        } else {
            (minus, word_c.concat(&word_d.pow(-n)))
        };
        if cand.trace().abs() < 2.0 - tol || cand.is_identity(tol) {
            // A Nielsen move produced a non-hyperbolic element even though
            // the commutator looked non-elliptic: the group cannot be free
            // and discrete.
            return Ok(Verdict {
                outcome: Outcome::NotFreeOrNotDiscrete,
                f_sequence: Vec::new(),
                steps: Vec::new(),
                stopping_pair: None,
                shortest: None,
            });
        }
        if cand.trace().abs() + tol < pair.0.trace().abs() {
            pair.0 = cand;
            word_c = cand_word;
            if pair.0.trace().abs() < pair.1.trace().abs() {
                std::mem::swap(&mut pair.0, &mut pair.1);
                std::mem::swap(&mut word_c, &mut word_d);
            }
        } else {
            break;
        }
    }
    let shortest = shortest_geodesics(&pair.0, &pair.1, tol);
    Ok(Verdict {
        outcome: Outcome::DiscreteFree,
        f_sequence: Vec::new(),
        steps: Vec::new(),
        stopping_pair: Some(StoppingPair {
            c: pair.0,
            d: pair.1,
            word_c,
            word_d,
            trace_c: pair.0.trace(),
            trace_d: pair.1.trace(),
        }),
        shortest: Some(shortest),
    })
}
