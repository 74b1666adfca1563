//! Saturation operators, the set algebra of saturated events, and the
//! embedding `S ↦ D_S` into coherent sets, with the constructive witnesses
//! behind `D_S · D_T = D_{S∩T}`.

use num_traits::Signed;
use rayon::prelude::*;

use crate::algebra::{combine, extract};
use crate::desirability::{set_equal, set_member, SetRep};
use crate::error::{Error, Result};
use crate::partition::{blockwise_min, ci2, Partition, QuestionLattice};
use crate::rational::{int, ratio};
use crate::report::Report;
use crate::sampling::grid;
use crate::space::{anonymous_space, ensure_same, Event, Gamble, Space};

pub use crate::desirability::lift_event;

pub const SATURATION_SIZE_LIMIT: usize = 5;
pub const EVENT_SIZE_LIMIT: usize = 4;

/// `σ_x(S)`: the union of the blocks of `x` that meet `S`.
pub fn saturate(event: &Event, x: &Partition) -> Result<Event> {
    let space = event.space();
    if x.len() != space.len() {
        return Err(Error::SpaceMismatch);
    }
    let members = x
        .blocks()
        .iter()
        .filter(|b| b.iter().any(|&w| event.contains(w)))
        .flatten()
        .copied();
    Event::new(space, members)
}

/// The first question (in lattice order) for which `S` is saturated.
pub fn in_pq(event: &Event, lattice: &QuestionLattice) -> Result<Option<usize>> {
    ensure_same(event.space(), lattice.space())?;
    for i in 0..lattice.len() {
        if saturate(event, lattice.partition(i))? == *event {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

fn all_events(space: &Space) -> Vec<Event> {
    (0..1u64 << space.len()).map(|m| Event::from_mask(space, m)).collect()
}

fn check_limit(what: &'static str, requested: usize, max: usize) -> Result<()> {
    if requested > max {
        Err(Error::LimitExceeded { what, requested, max })
    } else {
        Ok(())
    }
}

/// The six saturation identities over all `S, T ⊆ Ω` and all partitions,
/// for `|Ω|` in `1..=space_size_limit`.
pub fn saturation_lemma_suite(space_size_limit: usize) -> Result<Report> {
    check_limit("saturation suite", space_size_limit, SATURATION_SIZE_LIMIT)?;
    let mut report = Report::new("saturation");
    for n in 1..=space_size_limit {
        let space = anonymous_space(n)?;
        let events = all_events(&space);
        let parts = Partition::all(n);
        let subreports: Vec<Report> = parts
            .par_iter()
            .map(|x| saturation_laws(&events, x).expect("events share the space"))
            .collect();
        subreports.into_iter().for_each(|r| report.merge(r));
        report.note(format!(
            "|Ω|={n}: {} partitions × {} pairs × 6 laws",
            parts.len(),
            events.len() * events.len()
        ));
    }
    Ok(report.finish())
}

fn saturation_laws(events: &[Event], x: &Partition) -> Result<Report> {
    let mut r = Report::new("");
    let sat: Vec<Event> = events.iter().map(|s| saturate(s, x)).collect::<Result<_>>()?;
    let space = events[0].space();
    let empty = Event::empty(space);
    for (i, s) in events.iter().enumerate() {
        for (j, t) in events.iter().enumerate() {
            let inputs = || format!("x={x:?} S={s:?} T={t:?}");
            let (ss, st) = (&sat[i], &sat[j]);
            let both = ss.intersect(st)?;
            r.check("1", saturate(&empty, x)?.is_empty(), inputs, String::new);
            r.check("2", s.is_subset(ss), inputs, String::new);
            r.check("3", saturate(&ss.intersect(t)?, x)? == both, inputs, String::new);
            r.check("4", saturate(ss, x)? == *ss, inputs, String::new);
            r.check("5", !s.is_subset(t) || ss.is_subset(st), inputs, String::new);
            r.check("6", saturate(&both, x)? == both, inputs, String::new);
        }
    }
    Ok(r)
}

/// `σ_{y∨z}(σ_x(S)) = σ_{y∨z}(σ_z(σ_x(S)))` whenever `x∨z ⊥ y∨z | z`,
/// over all partition triples and all `S`.
pub fn set_algebra_extraction_suite(space_size_limit: usize) -> Result<Report> {
    check_limit("set-extraction suite", space_size_limit, EVENT_SIZE_LIMIT)?;
    let mut report = Report::new("set-extraction");
    for n in 1..=space_size_limit {
        let space = anonymous_space(n)?;
        let events = all_events(&space);
        let parts = Partition::all(n);
        let k = parts.len();
        let subreports: Vec<Report> = (0..k * k * k)
            .into_par_iter()
            .map(|t| {
                let (x, y, z) = (&parts[t / (k * k)], &parts[t / k % k], &parts[t % k]);
                let mut r = Report::new("");
                let yz = y.join(z).expect("same size");
                if !ci2(&x.join(z).expect("same size"), &yz, z) {
                    r.skip("separoid precondition fails");
                    return r;
                }
                for s in &events {
                    let sx = saturate(s, x).expect("same space");
                    let lhs = saturate(&sx, &yz).expect("same space");
                    let rhs = saturate(&saturate(&sx, z).expect("same space"), &yz).expect("same space");
                    r.check(
                        "extraction",
                        lhs == rhs,
                        || format!("x={x:?} y={y:?} z={z:?} S={s:?}"),
                        || format!("{lhs:?} vs {rhs:?}"),
                    );
                }
                r
            })
            .collect();
        subreports.into_iter().for_each(|r| report.merge(r));
        report.note(format!("|Ω|={n}: {} triples × {} events", k * k * k, events.len()));
    }
    Ok(report.finish())
}

/// Outcome of [`combine_events_witness`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EventWitness {
    /// `f = f1 + f2` with `f1 ∈ D_S`, `f2 ∈ D_T`.
    Split { f1: Gamble, f2: Gamble },
    /// Disjoint events: `f̃ ∈ D_S`, `g̃ ∈ D_T` and `f̃ + g̃ = 0`.
    Incoherence { f_tilde: Gamble, g_tilde: Gamble },
}

/// Decomposes `f ∈ D_{S∩T}` into members of `D_S` and `D_T` with `δ = 1`;
/// for disjoint events returns a pair summing to zero instead.
pub fn combine_events_witness(s: &Event, t: &Event, f: &Gamble) -> Result<EventWitness> {
    ensure_same(s.space(), t.space())?;
    ensure_same(s.space(), f.space())?;
    let st = s.intersect(t)?;
    if st.is_empty() {
        if s.is_empty() || t.is_empty() {
            return Err(Error::EmptyEvent);
        }
        let pick = |e: &Event| {
            if f.min_over(e).is_some_and(|m| m.is_positive()) {
                f.clone()
            } else {
                Gamble::indicator(e)
            }
        };
        let (f_tilde, g_tilde) = incoherence_witness(s, t, &pick(s), &pick(t))?;
        return Ok(EventWitness::Incoherence { f_tilde, g_tilde });
    }
    if !set_member(&lift_event(&st), f)? {
        return Err(Error::NotInTarget);
    }
    let half = ratio(1, 2);
    if !f.min_over(&st).is_some_and(|m| m.is_positive()) {
        // f ∈ L⁺ with a zero on S∩T: both halves stay in L⁺.
        let f1 = f.scale(&half);
        let f2 = f.sub(&f1)?;
        return Ok(EventWitness::Split { f1, f2 });
    }
    let delta = int(1);
    let f1 = f.map_indexed(|w, v| match (s.contains(w), t.contains(w)) {
        (true, false) => delta.clone(),
        (false, true) => v - &delta,
        _ => v * &half,
    });
    let f2 = f.sub(&f1)?;
    Ok(EventWitness::Split { f1, f2 })
}

/// For disjoint `S`, `T` and `f ∈ D_S`, `g ∈ D_T` with positive infima:
/// `f̃ = f on S, -g on T, 0 elsewhere` and `g̃ = -f̃`.
pub fn incoherence_witness(s: &Event, t: &Event, f: &Gamble, g: &Gamble) -> Result<(Gamble, Gamble)> {
    ensure_same(s.space(), t.space())?;
    ensure_same(s.space(), f.space())?;
    ensure_same(s.space(), g.space())?;
    if s.is_empty() || t.is_empty() {
        return Err(Error::EmptyEvent);
    }
    if !s.intersect(t)?.is_empty() {
        return Err(Error::validation("events", "events must be disjoint"));
    }
    let positive = |h: &Gamble, e: &Event| h.min_over(e).is_some_and(|m| m.is_positive());
    if !positive(f, s) || !positive(g, t) {
        return Err(Error::NotInTarget);
    }
    let f_tilde = f.map_indexed(|w, v| {
        if s.contains(w) {
            v.clone()
        } else if t.contains(w) {
            -g.value(w)
        } else {
            int(0)
        }
    });
    let g_tilde = f_tilde.neg();
    Ok((f_tilde, g_tilde))
}

/// Exhaustive check that `S ↦ D_S`, `σ_x ↦ ε_x` is an injective homomorphism
/// on the full partition lattice, for `|Ω|` in `1..=space_size_limit`.
pub fn event_hom_suite(space_size_limit: usize) -> Result<Report> {
    event_hom_suite_with(space_size_limit, &extract)
}

type Extractor = dyn Fn(&SetRep, &Partition) -> Result<SetRep> + Sync;

/// [`event_hom_suite`] with the extraction under test supplied by the caller.
pub fn event_hom_suite_with(space_size_limit: usize, extractor: &Extractor) -> Result<Report> {
    check_limit("event-hom suite", space_size_limit, EVENT_SIZE_LIMIT)?;
    let mut report = Report::new("event-hom");
    for n in 1..=space_size_limit {
        let space = anonymous_space(n)?;
        let lattice = QuestionLattice::full(&space);
        let r = event_hom_on(&lattice, extractor)?;
        report.merge(r);
        report.note(format!("|Ω|={n}: {} questions, {} events", lattice.len(), 1usize << n));
    }
    Ok(report.finish())
}

/// The homomorphism checks over the events and questions of one lattice.
pub fn event_hom_on(lattice: &QuestionLattice, extractor: &Extractor) -> Result<Report> {
    let space = lattice.space();
    let events = all_events(space);
    let lifted: Vec<SetRep> = events.iter().map(lift_event).collect();
    let mut report = Report::new("");
    let top = SetRep::top(space);
    let unit = SetRep::unit(space);
    report.check("item2-null", set_equal(&lift_event(&Event::empty(space)), &top)?, || "S=∅".into(), String::new);
    report.check("item2-unit", set_equal(&lift_event(&Event::full(space)), &unit)?, || "S=Ω".into(), String::new);
    let gambles: Vec<Gamble> = grid(space, -1, 1).into_iter().filter(|g| !g.is_zero()).collect();
    let subreports: Vec<Result<Report>> = (0..events.len())
        .into_par_iter()
        .map(|i| {
            let mut r = Report::new("");
            let s = &events[i];
            for (j, t) in events.iter().enumerate() {
                let inputs = || format!("S={s:?} T={t:?}");
                let st = s.intersect(t)?;
                let combined = combine(&lifted[i], &lifted[j])?;
                r.check("item1-combination", set_equal(&combined, &lift_event(&st))?, inputs, || {
                    combined.describe()
                });
                if j != i {
                    r.check("injective", !set_equal(&lifted[i], &lifted[j])?, inputs, String::new);
                }
                if !st.is_empty() {
                    let f = Gamble::indicator(&st).scale(&int(2)).sub(&Gamble::indicator(&st.complement()))?;
                    r.check("witness", split_is_valid(s, t, &f)?, || format!("S={s:?} T={t:?} f={f:?}"), String::new);
                }
            }
            for q in lattice.questions() {
                let x = &q.partition;
                let inputs = || format!("S={s:?} x={}", q.name);
                let e = extractor(&lifted[i], x)?;
                let closed = lift_event(&saturate(s, x)?);
                r.check("item3-extraction", set_equal(&e, &closed)?, inputs, || e.describe());
                for f in &gambles {
                    let oracle = s.is_empty()
                        || f.is_nonneg_nonzero()
                        || blockwise_min(f, x)?.min_over(s).is_some_and(|m| m.is_positive());
                    r.check("item3-oracle", set_member(&e, f)? == oracle, inputs, || format!("f={f:?}"));
                }
            }
            Ok(r)
        })
        .collect();
    for r in subreports {
        report.merge(r?);
    }
    Ok(report)
}

/// Re-checks a split returned by [`combine_events_witness`].
pub fn split_is_valid(s: &Event, t: &Event, f: &Gamble) -> Result<bool> {
    match combine_events_witness(s, t, f)? {
        EventWitness::Split { f1, f2 } => Ok(f1.add(&f2)? == *f
            && set_member(&lift_event(s), &f1)?
            && set_member(&lift_event(t), &f2)?),
        EventWitness::Incoherence { .. } => Ok(false),
    }
}

/// Re-checks an incoherence pair for disjoint events.
pub fn incoherence_is_valid(s: &Event, t: &Event, f: &Gamble) -> Result<bool> {
    match combine_events_witness(s, t, f)? {
        EventWitness::Incoherence { f_tilde, g_tilde } => Ok(f_tilde.add(&g_tilde)?.is_zero()
            && set_member(&lift_event(s), &f_tilde)?
            && set_member(&lift_event(t), &g_tilde)?),
        EventWitness::Split { .. } => Ok(false),
    }
}
