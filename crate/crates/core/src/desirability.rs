//! Coherent sets of gambles as values: representations, natural extension,
//! coherence, closure, membership, the information order, and sampled audits
//! of the coherence axioms, maximality and strict desirability.
//!
//! Every non-top representation is generated, together with L⁺, by finitely
//! many rays and finitely many families `{1_B - t·1_R : t > 0}`. Inclusion
//! between sets is decided on that generation, see [`leq`].

use num_traits::{One, Signed, Zero};

use crate::algebra::{extract, extract_member_oracle};
use crate::cone::cone_member;
use crate::error::{Error, Result};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::partition::{blockwise_min, Partition};
use crate::rational::{int, Rational};
use crate::report::Report;
use crate::sampling::{grid, Sampler};
use crate::space::{ensure_same, Event, Gamble, Space};

#[derive(Debug, Clone)]
pub enum SetKind {
    /// The whole of `L(Ω)`, the only incoherent element.
    Top,
    /// `L⁺(Ω)`.
    Unit,
    /// `C(K)` for coherent assertions with no zero gamble.
    Assertions(Vec<Gamble>),
    /// `D_S = {f : min_S f > 0} ∪ L⁺` for `∅ ≠ S ≠ Ω`.
    EventSet(Event),
    /// `M_π`: first nonzero value in world order `π` is positive.
    LexAtom(Vec<usize>),
    /// `ε_x(inner)` kept unevaluated.
    SymbolicExtract { inner: Box<SetRep>, question: Partition },
}

#[derive(Debug, Clone)]
pub struct SetRep {
    space: Space,
    kind: SetKind,
}

impl SetRep {
    pub fn top(space: &Space) -> Self {
        SetRep {
            space: space.clone(),
            kind: SetKind::Top,
        }
    }

    pub fn unit(space: &Space) -> Self {
        SetRep {
            space: space.clone(),
            kind: SetKind::Unit,
        }
    }

    /// `C(K)` for coherent `K`; fails with [`Error::Incoherent`] otherwise.
    pub fn assertions(space: &Space, gambles: Vec<Gamble>) -> Result<Self> {
        match closure(space, &gambles)? {
            rep if rep.is_top() => Err(Error::Incoherent),
            rep => Ok(rep),
        }
    }

    pub fn event(event: &Event) -> Self {
        lift_event(event)
    }

    pub fn lex_atom(space: &Space, order: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; space.len()];
        if order.len() != space.len() {
            return Err(Error::DimensionMismatch {
                expected: space.len(),
                found: order.len(),
            });
        }
        for &w in &order {
            if w >= space.len() || std::mem::replace(&mut seen[w], true) {
                return Err(Error::validation("order", "not a permutation of the worlds"));
            }
        }
        Ok(SetRep {
            space: space.clone(),
            kind: SetKind::LexAtom(order),
        })
    }

    pub(crate) fn symbolic_extract(inner: SetRep, question: Partition) -> Self {
        SetRep {
            space: inner.space.clone(),
            kind: SetKind::SymbolicExtract {
                inner: Box::new(inner),
                question,
            },
        }
    }

    pub(crate) fn from_kind(space: &Space, kind: SetKind) -> Self {
        SetRep {
            space: space.clone(),
            kind,
        }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn kind(&self) -> &SetKind {
        &self.kind
    }

    pub fn is_top(&self) -> bool {
        matches!(self.kind, SetKind::Top)
    }

    pub fn is_unit(&self) -> bool {
        matches!(self.kind, SetKind::Unit)
    }

    /// Short textual form for reports.
    pub fn describe(&self) -> String {
        match &self.kind {
            SetKind::Top => "top".into(),
            SetKind::Unit => "unit".into(),
            SetKind::Assertions(k) => {
                let gs: Vec<String> = k.iter().map(|g| format!("{g:?}")).collect();
                format!("assertions{{{}}}", gs.join(","))
            }
            SetKind::EventSet(s) => format!("event{s:?}"),
            SetKind::LexAtom(order) => format!("lex-atom({})", self.order_names(order)),
            SetKind::SymbolicExtract { inner, question } => {
                format!("extract({}, {})", inner.describe(), question.describe(&self.space))
            }
        }
    }

    fn order_names(&self, order: &[usize]) -> String {
        order
            .iter()
            .map(|&w| self.space.name(w))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Rays and event families generating the set together with L⁺;
    /// `None` for Top.
    pub fn generation(&self) -> Result<Option<Generation>> {
        let n = self.space.len();
        let mut gen = Generation::default();
        match &self.kind {
            SetKind::Top => return Ok(None),
            SetKind::Unit => {}
            SetKind::Assertions(k) => gen.rays = k.clone(),
            SetKind::EventSet(s) => gen.families.push((s.clone(), s.complement())),
            SetKind::LexAtom(order) => {
                let blocks: Vec<Vec<usize>> = order.iter().map(|&w| vec![w]).collect();
                gen.families = ordered_block_families(&self.space, &blocks);
            }
            SetKind::SymbolicExtract { inner, question } => match &inner.kind {
                SetKind::LexAtom(order) => {
                    let blocks = induced_block_order(order, question);
                    gen.families = ordered_block_families(&self.space, &blocks);
                }
                _ => return extract(inner, question)?.generation(),
            },
        }
        debug_assert!(gen.rays.iter().all(|r| r.len() == n));
        Ok(Some(gen))
    }
}

/// Generators of a non-top set beyond L⁺.
#[derive(Debug, Clone, Default)]
pub struct Generation {
    pub rays: Vec<Gamble>,
    /// `(B, R)` stands for all of `1_B - t·1_R`, `t > 0`; `R` is non-empty.
    pub families: Vec<(Event, Event)>,
}

impl Generation {
    /// Representative members: every ray and each family at `t = 1`.
    pub fn samples(&self) -> Vec<Gamble> {
        let mut out = self.rays.clone();
        for (b, r) in &self.families {
            let g = Gamble::indicator(b)
                .sub(&Gamble::indicator(r))
                .expect("same space");
            out.push(g);
        }
        out
    }
}

fn ordered_block_families(space: &Space, blocks: &[Vec<usize>]) -> Vec<(Event, Event)> {
    (0..blocks.len().saturating_sub(1))
        .map(|i| {
            let b = Event::new(space, blocks[i].iter().copied()).expect("valid worlds");
            let r = Event::new(space, blocks[i + 1..].iter().flatten().copied()).expect("valid worlds");
            (b, r)
        })
        .collect()
}

/// Blocks of `question` ordered by their first occurrence in `order`.
pub fn induced_block_order(order: &[usize], question: &Partition) -> Vec<Vec<usize>> {
    let mut seen = vec![false; question.n_blocks()];
    let mut out = Vec::new();
    for &w in order {
        let b = question.block_of(w);
        if !std::mem::replace(&mut seen[b], true) {
            out.push(question.blocks()[b].clone());
        }
    }
    out
}

fn lex_positive(values: impl IntoIterator<Item = Rational>) -> bool {
    values
        .into_iter()
        .find(|v| !v.is_zero())
        .is_some_and(|v| v.is_positive())
}

fn indicators(space: &Space) -> Vec<Gamble> {
    (0..space.len()).map(|w| Gamble::unit(space, w)).collect()
}

/// `f ∈ E(K) = posi(K ∪ L⁺)` for `f ≠ 0`.
pub fn natural_extension_member(gambles: &[Gamble], f: &Gamble) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroGambleQuery);
    }
    let mut gens = gambles.to_vec();
    gens.extend(indicators(f.space()));
    cone_member(&gens, f)
}

/// `0 ∉ E(K)`, decided as: no `λ >= 0` with `Σλ = 1` has `Σ λ_j g_j <= 0`.
pub fn is_coherent_extension(gambles: &[Gamble]) -> Result<bool> {
    let Some(first) = gambles.first() else {
        return Ok(true);
    };
    for g in gambles {
        ensure_same(first.space(), g.space())?;
    }
    let mut lp = LinearProgram::new(gambles.len());
    for w in 0..first.len() {
        let row = gambles.iter().map(|g| g.value(w).clone()).collect();
        lp.add(row, Relation::Le, Rational::zero())?;
    }
    lp.add(vec![Rational::one(); gambles.len()], Relation::Eq, Rational::one())?;
    Ok(!lp.solve().is_feasible())
}

/// `0 ∈ posi(K ∪ {1_ω})` solved directly, without eliminating the
/// indicator coefficients.
pub fn natural_extension_contains_zero(gambles: &[Gamble], space: &Space) -> Result<bool> {
    let mut gens = gambles.to_vec();
    gens.extend(indicators(space));
    crate::cone::zero_in_posi(&gens)
}

/// The closure operator: Top when `K` is incoherent, Unit when `K` adds
/// nothing beyond L⁺, otherwise the assertion set with L⁺ members and
/// duplicates dropped.
pub fn closure(space: &Space, gambles: &[Gamble]) -> Result<SetRep> {
    for g in gambles {
        ensure_same(space, g.space())?;
    }
    if !is_coherent_extension(gambles)? {
        return Ok(SetRep::top(space));
    }
    let mut kept: Vec<Gamble> = Vec::new();
    for g in gambles {
        if !g.is_nonneg_nonzero() && !kept.contains(g) {
            kept.push(g.clone());
        }
    }
    Ok(if kept.is_empty() {
        SetRep::unit(space)
    } else {
        SetRep::from_kind(space, SetKind::Assertions(kept))
    })
}

/// `D_S`, with `D_∅ = L(Ω)` and `D_Ω = L⁺(Ω)`.
pub fn lift_event(event: &Event) -> SetRep {
    let space = event.space();
    if event.is_empty() {
        SetRep::top(space)
    } else if event.is_full() {
        SetRep::unit(space)
    } else {
        SetRep::from_kind(space, SetKind::EventSet(event.clone()))
    }
}

pub fn set_member(d: &SetRep, f: &Gamble) -> Result<bool> {
    ensure_same(&d.space, f.space())?;
    match &d.kind {
        SetKind::Top => Ok(true),
        SetKind::Unit => Ok(f.is_nonneg_nonzero()),
        SetKind::Assertions(k) => {
            if f.is_zero() {
                Ok(false)
            } else {
                natural_extension_member(k, f)
            }
        }
        SetKind::EventSet(s) => Ok(f.is_nonneg_nonzero() || f.min_over(s).is_some_and(|m| m.is_positive())),
        SetKind::LexAtom(order) => Ok(lex_positive(order.iter().map(|&w| f.value(w).clone()))),
        SetKind::SymbolicExtract { inner, question } => match &inner.kind {
            SetKind::LexAtom(order) => local_atom_member(order, question, f),
            SetKind::Assertions(_) if !f.is_zero() => extract_member_oracle(inner, question, f),
            _ => set_member(&extract(inner, question)?, f),
        },
    }
}

/// `f ∈ ε_x(M_π)`: `f ∈ L⁺` or the block minima of `f` are lex-positive in
/// the block order induced by `π`.
pub(crate) fn local_atom_member(order: &[usize], question: &Partition, f: &Gamble) -> Result<bool> {
    if f.is_nonneg_nonzero() {
        return Ok(true);
    }
    let m = blockwise_min(f, question)?;
    let blocks = induced_block_order(order, question);
    Ok(lex_positive(blocks.iter().map(|b| m.value(b[0]).clone())))
}

/// Whether `1_B - t·1_R` lies in `target` for every `t > 0`.
fn family_in(b: &Event, r: &Event, target: &SetRep) -> Result<bool> {
    match &target.kind {
        SetKind::Top => Ok(true),
        SetKind::Unit => Ok(r.is_empty()),
        SetKind::EventSet(t) => Ok(t.is_subset(b) || r.is_empty()),
        SetKind::Assertions(k) => event_ray_unbounded(k, b, r),
        SetKind::LexAtom(_) => {
            let g = Gamble::indicator(b).sub(&Gamble::indicator(r))?;
            set_member(target, &g)
        }
        SetKind::SymbolicExtract { inner, question } => match &inner.kind {
            SetKind::LexAtom(_) => {
                let g = Gamble::indicator(b).sub(&Gamble::indicator(r))?;
                set_member(target, &g)
            }
            _ => family_in(b, r, &extract(inner, question)?),
        },
    }
}

/// `maximize δ s.t. 1_B - δ·1_R ∈ cone(K ∪ indicators)` is unbounded.
pub fn event_ray_unbounded(k: &[Gamble], b: &Event, r: &Event) -> Result<bool> {
    let space = b.space();
    let mut gens = k.to_vec();
    gens.extend(indicators(space));
    let n_vars = gens.len() + 1;
    let mut lp = LinearProgram::new(n_vars);
    for w in 0..space.len() {
        let mut row: Vec<Rational> = gens.iter().map(|g| g.value(w).clone()).collect();
        row.push(if r.contains(w) { int(1) } else { int(0) });
        let rhs = if b.contains(w) { int(1) } else { int(0) };
        lp.add(row, Relation::Eq, rhs)?;
    }
    let mut objective = vec![Rational::zero(); n_vars];
    objective[n_vars - 1] = int(1);
    lp.maximize(objective)?;
    Ok(matches!(lp.solve(), LpOutcome::Unbounded { .. }))
}

/// `D1 ⊆ D2`.
pub fn leq(d1: &SetRep, d2: &SetRep) -> Result<bool> {
    ensure_same(&d1.space, &d2.space)?;
    if d2.is_top() {
        return Ok(true);
    }
    let Some(gen) = d1.generation()? else {
        return Ok(false);
    };
    for r in &gen.rays {
        if !set_member(d2, r)? {
            return Ok(false);
        }
    }
    for (b, r) in &gen.families {
        if !family_in(b, r, d2)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn set_equal(d1: &SetRep, d2: &SetRep) -> Result<bool> {
    Ok(leq(d1, d2)? && leq(d2, d1)?)
}

/// A set of gambles given by a membership predicate, as audited by
/// [`audit_coherence`] and [`audit_maximality`].
pub trait GambleSet {
    fn space(&self) -> &Space;
    fn contains(&self, f: &Gamble) -> Result<bool>;
    /// Known members used to seed member sampling.
    fn seeds(&self) -> Vec<Gamble> {
        Vec::new()
    }
}

impl GambleSet for SetRep {
    fn space(&self) -> &Space {
        &self.space
    }

    fn contains(&self, f: &Gamble) -> Result<bool> {
        set_member(self, f)
    }

    fn seeds(&self) -> Vec<Gamble> {
        match self.generation() {
            Ok(Some(gen)) => gen.samples(),
            _ => Vec::new(),
        }
    }
}

/// Collects up to `n` members: seeds, rejection samples, then positive
/// combinations of members found so far with L⁺ gambles.
fn sample_members<S: GambleSet + ?Sized>(set: &S, n: usize, sampler: &mut Sampler) -> Result<Vec<Gamble>> {
    let space = set.space().clone();
    let mut pool = Vec::new();
    for g in set.seeds() {
        if !g.is_zero() && set.contains(&g)? {
            pool.push(g);
        }
    }
    for _ in 0..4 * n {
        if pool.len() >= n {
            break;
        }
        let g = sampler.nonzero_gamble(&space);
        if set.contains(&g)? {
            pool.push(g);
        }
    }
    let mut attempts = 0;
    while pool.len() < n && attempts < 4 * n {
        attempts += 1;
        let mut g = sampler.nonneg_nonzero(&space).scale(&sampler.positive_rational());
        if !pool.is_empty() {
            let i = sampler.index(pool.len());
            g = g.add(&pool[i].scale(&sampler.positive_rational()))?;
        }
        if !g.is_zero() {
            pool.push(g);
        }
    }
    Ok(pool)
}

/// Sampled audit of D1 (L⁺ included), D2 (0 excluded), D3 (sums) and D4
/// (positive scaling).
pub fn audit_coherence<S: GambleSet + ?Sized>(set: &S, n_samples: usize, seed: u64) -> Result<Report> {
    let space = set.space().clone();
    let mut sampler = Sampler::new(seed);
    let mut report = Report::new("coherence");
    for _ in 0..n_samples {
        let g = sampler.nonneg_nonzero(&space);
        let ok = set.contains(&g)?;
        report.check("D1", ok, || format!("{g:?}"), || "L⁺ gamble rejected".into());
    }
    let zero = Gamble::zero(&space);
    let zero_in = set.contains(&zero)?;
    report.check("D2", !zero_in, || format!("{zero:?}"), || "zero gamble accepted".into());
    let members = sample_members(set, n_samples.max(1), &mut sampler)?;
    if members.is_empty() {
        report.note("no members found for D3/D4");
        return Ok(report.finish());
    }
    for _ in 0..n_samples {
        let f = &members[sampler.index(members.len())];
        let g = &members[sampler.index(members.len())];
        let sum = f.add(g)?;
        let ok = !sum.is_zero() && set.contains(&sum)?;
        report.check("D3", ok, || format!("{f:?} + {g:?}"), || format!("{sum:?}"));
        let c = sampler.positive_rational();
        let scaled = f.scale(&c);
        let ok = set.contains(&scaled)?;
        report.check("D4", ok, || format!("{c} * {f:?}"), || format!("{scaled:?}"));
    }
    Ok(report.finish())
}

pub fn check_coherence_axioms(d: &SetRep, n_samples: usize, seed: u64) -> Result<Report> {
    if d.is_top() {
        return Err(Error::TopNotCoherent);
    }
    audit_coherence(d, n_samples, seed)
}

/// For `n` nonzero gambles (a small integer grid first, then random draws),
/// checks that `f` or `-f` is a member.
pub fn audit_maximality<S: GambleSet + ?Sized>(set: &S, n: usize, seed: u64) -> Result<Report> {
    let space = set.space().clone();
    let mut sampler = Sampler::new(seed);
    let mut report = Report::new("maximality");
    let mut candidates: Vec<Gamble> = match space.len() {
        0..=3 => grid(&space, -2, 2),
        4..=6 => grid(&space, -1, 1),
        _ => Vec::new(),
    }
    .into_iter()
    .filter(|g| !g.is_zero())
    .take(n)
    .collect();
    while candidates.len() < n {
        candidates.push(sampler.nonzero_gamble(&space));
    }
    for f in candidates {
        let ok = set.contains(&f)? || set.contains(&f.neg())?;
        report.check("maximality", ok, || format!("{f:?}"), || "neither f nor -f is a member".into());
    }
    Ok(report.finish())
}

pub fn check_maximality_sampled(d: &SetRep, n: usize, seed: u64) -> Result<Report> {
    audit_maximality(d, n, seed)
}

/// `inf_S f`.
pub fn lower_prevision(event: &Event, f: &Gamble) -> Result<Rational> {
    ensure_same(event.space(), f.space())?;
    f.min_over(event).ok_or(Error::EmptyEvent)
}

/// For sampled members `f` of `D_S` with `inf_S f > 0`, checks that
/// `f - δ` stays in `D_S` for `δ = inf_S f / 2`.
pub fn is_strictly_desirable_event_set(event: &Event, n_samples: usize, seed: u64) -> Result<Report> {
    if event.is_empty() {
        return Err(Error::EmptyEvent);
    }
    let space = event.space().clone();
    let d = lift_event(event);
    let mut sampler = Sampler::new(seed);
    let mut report = Report::new("strict-desirability");
    for _ in 0..n_samples {
        let g = sampler.gamble(&space);
        let f = g.map_indexed(|w, v| {
            if event.contains(w) {
                v.abs() + int(1)
            } else {
                v.clone()
            }
        });
        let delta = lower_prevision(event, &f)? / int(2);
        let shifted = f.shift(&-delta.clone());
        let ok = set_member(&d, &f)? && set_member(&d, &shifted)?;
        report.check(
            "strict",
            ok,
            || format!("S={event:?} f={f:?}"),
            || format!("delta={delta} f-delta={shifted:?}"),
        );
    }
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::make_space;

    fn abc() -> Space {
        make_space(&["a", "b", "c"]).unwrap()
    }

    fn g(s: &Space, v: &[i64]) -> Gamble {
        Gamble::from_ints(s, v).unwrap()
    }

    fn ev(s: &Space, names: &[&str]) -> Event {
        Event::from_names(s, names).unwrap()
    }

    #[test]
    fn natural_extension_examples() {
        let s = abc();
        let k = vec![g(&s, &[1, -1, 0])];
        assert!(natural_extension_member(&k, &g(&s, &[1, -1, 1])).unwrap());
        assert!(!natural_extension_member(&k, &g(&s, &[-1, 1, -1])).unwrap());
        assert!(natural_extension_member(&[], &g(&s, &[0, 1, 0])).unwrap());
        assert_eq!(natural_extension_member(&k, &Gamble::zero(&s)), Err(Error::ZeroGambleQuery));
    }

    #[test]
    fn coherence_examples() {
        let s = abc();
        assert!(is_coherent_extension(&[g(&s, &[1, -1, 0])]).unwrap());
        assert!(!is_coherent_extension(&[g(&s, &[-1, 0, 0])]).unwrap());
        assert!(is_coherent_extension(&[]).unwrap());
        assert!(!is_coherent_extension(&[g(&s, &[0, 0, 0])]).unwrap());
    }

    #[test]
    fn reduced_coherence_matches_unreduced() {
        let s = abc();
        let mut sampler = Sampler::new(11);
        for _ in 0..200 {
            let k: Vec<Gamble> = (0..1 + sampler.index(3)).map(|_| sampler.gamble(&s)).collect();
            assert_eq!(
                is_coherent_extension(&k).unwrap(),
                !natural_extension_contains_zero(&k, &s).unwrap(),
                "{k:?}"
            );
        }
    }

    #[test]
    fn closure_examples() {
        let s = abc();
        assert!(closure(&s, &[g(&s, &[-1, 0, 0])]).unwrap().is_top());
        assert!(closure(&s, &[]).unwrap().is_unit());
        assert!(closure(&s, &[g(&s, &[0, 2, 1])]).unwrap().is_unit());
        let d = closure(&s, &[g(&s, &[1, -1, 0])]).unwrap();
        assert!(matches!(d.kind(), SetKind::Assertions(k) if k.len() == 1));
        assert!(set_equal(&closure(&s, &[]).unwrap(), &SetRep::unit(&s)).unwrap());
    }

    #[test]
    fn membership_examples() {
        let s = abc();
        let d = lift_event(&ev(&s, &["a"]));
        assert!(set_member(&d, &g(&s, &[1, -5, -5])).unwrap());
        assert!(!set_member(&d, &g(&s, &[0, -1, 0])).unwrap());
        let m = SetRep::lex_atom(&s, vec![0, 1, 2]).unwrap();
        assert!(set_member(&m, &g(&s, &[0, 1, -9])).unwrap());
        assert!(!set_member(&m, &Gamble::zero(&s)).unwrap());
        let a = SetRep::assertions(&s, vec![g(&s, &[1, -1, 0])]).unwrap();
        assert!(set_member(&a, &g(&s, &[1, -1, 1])).unwrap());
        assert!(!set_member(&a, &Gamble::zero(&s)).unwrap());
        let other = make_space(&["a", "b"]).unwrap();
        assert_eq!(set_member(&a, &g(&other, &[1, 1])), Err(Error::SpaceMismatch));
    }

    #[test]
    fn lift_normalizes() {
        let s = abc();
        assert!(lift_event(&Event::empty(&s)).is_top());
        assert!(lift_event(&Event::full(&s)).is_unit());
        assert!(set_equal(&lift_event(&Event::empty(&s)), &SetRep::top(&s)).unwrap());
    }

    #[test]
    fn order_examples() {
        let s = abc();
        let unit = SetRep::unit(&s);
        let a = lift_event(&ev(&s, &["a"]));
        let ab = lift_event(&ev(&s, &["a", "b"]));
        assert!(leq(&unit, &a).unwrap());
        let k = SetRep::assertions(&s, vec![g(&s, &[1, -1, 0])]).unwrap();
        assert!(leq(&k, &a).unwrap());
        assert!(leq(&ab, &a).unwrap());
        assert!(!leq(&a, &ab).unwrap());
        let k2 = SetRep::assertions(&s, vec![g(&s, &[2, -2, 0])]).unwrap();
        assert!(set_equal(&k, &k2).unwrap());
        assert!(!leq(&SetRep::top(&s), &a).unwrap());
    }

    #[test]
    fn event_order_agrees_with_sampled_membership() {
        let s = abc();
        let ab = lift_event(&ev(&s, &["a", "b"]));
        let a = lift_event(&ev(&s, &["a"]));
        let mut sampler = Sampler::new(3);
        for _ in 0..100 {
            let f = sampler.nonzero_gamble(&s);
            if set_member(&ab, &f).unwrap() {
                assert!(set_member(&a, &f).unwrap());
            }
        }
    }

    #[test]
    fn event_never_inside_finitely_generated() {
        // An unbounded ray 1_B - t·1_R would put -1_R in the cone.
        let s = abc();
        let k = SetRep::assertions(&s, vec![g(&s, &[1, -1, 0]), g(&s, &[1, 0, -1])]).unwrap();
        let mut sampler = Sampler::new(4);
        for _ in 0..40 {
            let e = sampler.nonempty_event(&s);
            if !e.is_full() {
                assert!(!leq(&lift_event(&e), &k).unwrap());
            }
        }
        // 1_a - t·1_b ∈ cone for all t once -1_b is a generator, which is incoherent.
        let a = ev(&s, &["a"]);
        let b = ev(&s, &["b"]);
        assert!(event_ray_unbounded(&[g(&s, &[0, -1, 0])], &a, &b).unwrap());
        assert!(!event_ray_unbounded(&[g(&s, &[1, -1, 0])], &a, &b).unwrap());
    }

    #[test]
    fn coherence_audits() {
        let s = abc();
        let r = check_coherence_axioms(&SetRep::unit(&s), 100, 1).unwrap();
        assert!(r.is_success() && r.is_consistent());
        let m = SetRep::lex_atom(&s, vec![0, 1, 2]).unwrap();
        assert!(check_coherence_axioms(&m, 100, 1).unwrap().is_success());
        assert!(matches!(
            check_coherence_axioms(&SetRep::top(&s), 10, 1),
            Err(Error::TopNotCoherent)
        ));
    }

    struct WeakEventSet(Event);

    impl GambleSet for WeakEventSet {
        fn space(&self) -> &Space {
            self.0.space()
        }
        fn contains(&self, f: &Gamble) -> Result<bool> {
            Ok(f.min_over(&self.0).is_some_and(|m| !m.is_negative()))
        }
    }

    #[test]
    fn corrupted_set_violates_d2() {
        let s = abc();
        let r = audit_coherence(&WeakEventSet(ev(&s, &["a"])), 50, 2).unwrap();
        assert_eq!(r.failures_for("D2"), 1);
    }

    #[test]
    fn maximality_examples() {
        let s = abc();
        let m = SetRep::lex_atom(&s, vec![2, 0, 1]).unwrap();
        assert!(check_maximality_sampled(&m, 100, 5).unwrap().is_success());
        let two = make_space(&["a", "b"]).unwrap();
        let r = check_maximality_sampled(&SetRep::unit(&two), 24, 5).unwrap();
        assert!(r.failures.iter().any(|f| f.inputs == "(1,-1)" || f.inputs == "(-1,1)"));
        let k = SetRep::assertions(&two, vec![g(&two, &[1, -1])]).unwrap();
        assert!(!check_maximality_sampled(&k, 24, 5).unwrap().is_success());
    }

    #[test]
    fn lower_prevision_examples() {
        let s = abc();
        assert_eq!(lower_prevision(&ev(&s, &["a", "b"]), &g(&s, &[1, 2, -7])).unwrap(), int(1));
        assert_eq!(lower_prevision(&Event::full(&s), &g(&s, &[1, 2, -7])).unwrap(), int(-7));
        assert_eq!(lower_prevision(&Event::empty(&s), &g(&s, &[1, 2, -7])), Err(Error::EmptyEvent));
    }

    #[test]
    fn strict_desirability() {
        let s = abc();
        let d = lift_event(&ev(&s, &["a"]));
        let f = g(&s, &[2, -1, -1]);
        let delta = lower_prevision(&ev(&s, &["a"]), &f).unwrap() / int(2);
        assert_eq!(delta, int(1));
        assert!(set_member(&d, &f.shift(&-delta)).unwrap());
        for names in [vec!["a"], vec!["a", "c"], vec!["a", "b", "c"]] {
            let r = is_strictly_desirable_event_set(&ev(&s, &names), 200, 9).unwrap();
            assert!(r.is_success());
            assert_eq!(r.attempted, 200);
        }
        assert!(matches!(
            is_strictly_desirable_event_set(&Event::empty(&s), 10, 1),
            Err(Error::EmptyEvent)
        ));
    }
}
