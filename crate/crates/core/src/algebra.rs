//! The information algebra on set representations: combination,
//! extraction, supports, and the axiom suite.

use std::collections::HashMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::cone::cone_intersect_subspace;
use crate::desirability::{closure, leq, lift_event, set_equal, set_member, SetKind, SetRep};
use crate::embeddings::saturate;
use crate::error::{Error, Result};
use crate::lp::{LinearProgram, Relation};
use crate::partition::{ci2, measurability_equations, separoid_laws, Partition, QuestionLattice};
use crate::rational::{int, Rational};
use crate::report::Report;
use crate::sampling::Sampler;
use crate::space::{ensure_same, Event, Gamble, Space};

/// A possibility space, a question lattice and named sets over them.
#[derive(Debug, Clone)]
pub struct AlgebraModel {
    lattice: QuestionLattice,
    sets: Vec<(String, SetRep)>,
}

impl AlgebraModel {
    pub fn new(lattice: QuestionLattice, sets: Vec<(String, SetRep)>) -> Result<Self> {
        for (name, d) in &sets {
            ensure_same(lattice.space(), d.space())
                .map_err(|_| Error::validation(format!("sets.{name}"), "set over a different space"))?;
        }
        Ok(AlgebraModel { lattice, sets })
    }

    /// `|Ω| = n`, the full partition lattice, Unit, Top, `n_assertions`
    /// random assertion sets with up to 6 gambles, and two event sets.
    pub fn random(n: usize, n_assertions: usize, seed: u64) -> Result<Self> {
        let space = crate::space::anonymous_space(n)?;
        let mut sampler = Sampler::new(seed);
        let mut sets = vec![
            ("unit".to_string(), SetRep::unit(&space)),
            ("top".to_string(), SetRep::top(&space)),
        ];
        for i in 0..n_assertions {
            let k = random_assertions(&space, 1 + sampler.index(6), &mut sampler);
            sets.push((format!("k{i}"), closure(&space, &k)?));
        }
        for i in 0..2 {
            sets.push((format!("e{i}"), lift_event(&sampler.event(&space))));
        }
        AlgebraModel::new(QuestionLattice::full(&space), sets)
    }

    pub fn space(&self) -> &Space {
        self.lattice.space()
    }

    pub fn lattice(&self) -> &QuestionLattice {
        &self.lattice
    }

    pub fn sets(&self) -> &[(String, SetRep)] {
        &self.sets
    }

    pub fn set(&self, name: &str) -> Result<&SetRep> {
        self.sets
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, d)| d)
            .ok_or_else(|| Error::UnknownSet(name.to_string()))
    }

    pub fn extract_named(&self, set: &str, question: &str) -> Result<SetRep> {
        extract(self.set(set)?, self.lattice.get(question)?)
    }
}

/// Gambles `g` with `p·g > 0` for a random strictly positive `p`, so the
/// result is coherent; one draw in eight adds an arbitrary gamble, which may
/// break coherence.
pub fn random_assertions(space: &Space, size: usize, sampler: &mut Sampler) -> Vec<Gamble> {
    let p: Vec<Rational> = (0..space.len()).map(|_| int(sampler.int(1, 4))).collect();
    let mut out = Vec::with_capacity(size);
    while out.len() < size {
        let g = sampler.nonzero_gamble(space);
        if sampler.index(8) == 0 || g.dot(&p) > Rational::zero() {
            out.push(g);
        }
    }
    out
}

fn indicators(space: &Space) -> Vec<Gamble> {
    (0..space.len()).map(|w| Gamble::unit(space, w)).collect()
}

fn is_local_atom(d: &SetRep) -> bool {
    matches!(d.kind(), SetKind::SymbolicExtract { inner, .. } if matches!(inner.kind(), SetKind::LexAtom(_)))
}

/// Evaluates a symbolic extraction unless it wraps a lexicographic atom.
fn materialize(d: &SetRep) -> Result<Option<SetRep>> {
    match d.kind() {
        SetKind::SymbolicExtract { inner, question } if !is_local_atom(d) => extract(inner, question).map(Some),
        _ => Ok(None),
    }
}

/// `D1 · D2 = C(D1 ∪ D2)`.
pub fn combine(d1: &SetRep, d2: &SetRep) -> Result<SetRep> {
    ensure_same(d1.space(), d2.space())?;
    let space = d1.space();
    use SetKind::*;
    if let Some(m) = materialize(d1)? {
        return combine(&m, d2);
    }
    if let Some(m) = materialize(d2)? {
        return combine(d1, &m);
    }
    match (d1.kind(), d2.kind()) {
        (Top, _) | (_, Top) => Ok(SetRep::top(space)),
        (Unit, _) => Ok(d2.clone()),
        (_, Unit) => Ok(d1.clone()),
        (Assertions(k1), Assertions(k2)) => {
            let mut k = k1.clone();
            k.extend(k2.iter().cloned());
            closure(space, &k)
        }
        (EventSet(s), EventSet(t)) => Ok(lift_event(&s.intersect(t)?)),
        // A maximal set either contains the other operand or, by
        // maximality, some f and -f end up together.
        (LexAtom(_), _) => Ok(if leq(d2, d1)? { d1.clone() } else { SetRep::top(space) }),
        (_, LexAtom(_)) => Ok(if leq(d1, d2)? { d2.clone() } else { SetRep::top(space) }),
        _ => {
            if leq(d1, d2)? {
                return Ok(d2.clone());
            }
            if leq(d2, d1)? {
                return Ok(d1.clone());
            }
            let incoherent = match (d1.kind(), d2.kind()) {
                (Assertions(k), EventSet(s)) | (EventSet(s), Assertions(k)) => Some(assertions_event_incoherent(k, s)?),
                _ => None,
            };
            match incoherent {
                Some(true) => Ok(SetRep::top(space)),
                _ => Err(Error::Unsupported(format!(
                    "combination of {} and {} has no finite representation",
                    d1.describe(),
                    d2.describe()
                ))),
            }
        }
    }
}

/// `C(K) · D_S = L`: some member of `cone(K ∪ indicators)` is negative on
/// all of `S`.
pub fn assertions_event_incoherent(k: &[Gamble], s: &Event) -> Result<bool> {
    let space = s.space();
    let mut gens = k.to_vec();
    gens.extend(indicators(space));
    let mut lp = LinearProgram::new(gens.len());
    for w in s.iter() {
        let row = gens.iter().map(|g| g.value(w).clone()).collect();
        lp.add(row, Relation::Le, -Rational::one())?;
    }
    Ok(lp.solve().is_feasible())
}

/// `ε_x(D) = C(D ∩ L_x)`.
pub fn extract(d: &SetRep, x: &Partition) -> Result<SetRep> {
    let space = d.space();
    if x.len() != space.len() {
        return Err(Error::SpaceMismatch);
    }
    match d.kind() {
        SetKind::Top | SetKind::Unit => Ok(d.clone()),
        SetKind::EventSet(s) => Ok(lift_event(&saturate(s, x)?)),
        SetKind::Assertions(k) => {
            let mut gens = k.clone();
            gens.extend(indicators(space));
            let kept: Vec<Gamble> = cone_intersect_subspace(space, &gens, &measurability_equations(x))?
                .into_iter()
                .filter(|g| !g.is_nonneg_nonzero())
                .collect();
            Ok(if kept.is_empty() {
                SetRep::unit(space)
            } else {
                SetRep::from_kind(space, SetKind::Assertions(kept))
            })
        }
        SetKind::LexAtom(_) if x.is_top() => Ok(d.clone()),
        SetKind::LexAtom(_) => Ok(SetRep::symbolic_extract(d.clone(), x.clone())),
        SetKind::SymbolicExtract { inner, question } => {
            if !matches!(inner.kind(), SetKind::LexAtom(_)) {
                return extract(&extract(inner, question)?, x);
            }
            if x.leq(question)? {
                Ok(SetRep::symbolic_extract((**inner).clone(), x.clone()))
            } else if question.leq(x)? {
                Ok(d.clone())
            } else {
                Err(Error::Unsupported(format!(
                    "extraction of {} to an incomparable question",
                    d.describe()
                )))
            }
        }
    }
}

/// `f ∈ ε_x(C(K))` by one LP: some `x`-measurable `g ∈ cone(K ∪ indicators)`
/// lies below `f`, or `f ∈ L⁺`.
pub fn extract_member_oracle(d: &SetRep, x: &Partition, f: &Gamble) -> Result<bool> {
    ensure_same(d.space(), f.space())?;
    if f.is_zero() {
        return Err(Error::ZeroGambleQuery);
    }
    if x.len() != f.len() {
        return Err(Error::SpaceMismatch);
    }
    let k: &[Gamble] = match d.kind() {
        SetKind::Assertions(k) => k,
        SetKind::Unit => &[],
        _ => return Err(Error::Unsupported("the extraction oracle needs an assertion set".into())),
    };
    if f.is_nonneg_nonzero() {
        return Ok(true);
    }
    let space = d.space();
    let mut gens = k.to_vec();
    gens.extend(indicators(space));
    let mut lp = LinearProgram::new(gens.len());
    for eq in measurability_equations(x) {
        let row = gens.iter().map(|g| g.dot(&eq)).collect();
        lp.add(row, Relation::Eq, Rational::zero())?;
    }
    for w in 0..space.len() {
        let row = gens.iter().map(|g| g.value(w).clone()).collect();
        lp.add(row, Relation::Le, f.value(w).clone())?;
    }
    Ok(lp.solve().is_feasible())
}

/// First question in lattice order with `ε_x(D) = D`.
pub fn find_support(d: &SetRep, lattice: &QuestionLattice) -> Result<Option<usize>> {
    for i in 0..lattice.len() {
        if set_equal(&extract(d, lattice.partition(i))?, d)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// A support found by [`support_of`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Support {
    pub question: usize,
    /// Whether the question lies below every other support in the lattice.
    pub least: bool,
}

/// First support in lattice order, flagged as least when it precedes every
/// other support in the information order on questions.
pub fn support_of(d: &SetRep, lattice: &QuestionLattice) -> Result<Option<Support>> {
    let mut hits = Vec::new();
    for i in 0..lattice.len() {
        if set_equal(&extract(d, lattice.partition(i))?, d)? {
            hits.push(i);
        }
    }
    Ok(hits.first().map(|&first| Support {
        question: first,
        least: hits.iter().all(|&j| lattice.leq(first, j)),
    }))
}

fn record(report: &mut Report, law: &str, outcome: Result<bool>, inputs: impl FnOnce() -> String) {
    match outcome {
        Ok(ok) => report.check(law, ok, inputs, String::new),
        Err(Error::Unsupported(_)) => report.skip(format!("{law}: unsupported combination")),
        Err(e) => report.fail(law, inputs(), format!("error: {e}")),
    }
}

fn equal_after(a: Result<SetRep>, b: Result<SetRep>) -> Result<bool> {
    set_equal(&a?, &b?)
}

/// Semigroup laws, existential-quantifier laws, the extraction axiom,
/// supports and the order facts, over all named sets and lattice questions.
/// Checks that need a combination outside the representable fragment are
/// skipped with a reason.
pub fn axiom_suite(model: &AlgebraModel, n_samples: usize, seed: u64) -> Report {
    let lattice = model.lattice();
    let space = model.space();
    let sets: Vec<&SetRep> = model.sets.iter().map(|(_, d)| d).collect();
    let names: Vec<&str> = model.sets.iter().map(|(n, _)| n.as_str()).collect();
    let qname = |i: usize| lattice.question(i).name.clone();
    let k = lattice.len();
    let mut report = Report::new("axioms");
    report.note("axiom (3c) is checked on the representable fragment only");

    // (2) join-semilattice and quasi-separoid on the lattice.
    report.check("2-join-closed", lattice.verify_tables(), || "lattice tables".into(), String::new);
    let parts: Vec<Partition> = lattice.questions().iter().map(|q| q.partition.clone()).collect();
    let mut sep = Report::new("separoid");
    separoid_laws(&parts, &mut sep);
    sep.failures.iter_mut().for_each(|f| f.law = format!("2-{}", f.law));
    report.merge(sep);

    // (3a) ε_x(0) = 0.
    let top = SetRep::top(space);
    for x in 0..k {
        let e = extract(&top, lattice.partition(x)).map(|d| d.is_top());
        record(&mut report, "3a", e, || format!("x={}", qname(x)));
    }

    // (1) semigroup with null and unit.
    let unit = SetRep::unit(space);
    let subreports: Vec<Report> = (0..sets.len())
        .into_par_iter()
        .map(|i| {
            let mut r = Report::new("");
            let d = sets[i];
            let inputs = || format!("D={}", names[i]);
            record(&mut r, "1-null", combine(d, &top).map(|c| c.is_top()), inputs);
            record(&mut r, "1-unit", equal_after(combine(d, &unit), Ok(d.clone())), inputs);
            record(&mut r, "1-idempotent", equal_after(combine(d, d), Ok(d.clone())), inputs);
            for j in 0..sets.len() {
                let inputs = || format!("D1={} D2={}", names[i], names[j]);
                let ab = combine(d, sets[j]);
                record(&mut r, "1-commutative", equal_after(ab.clone(), combine(sets[j], d)), inputs);
                for l in 0..sets.len() {
                    let inputs = || format!("D1={} D2={} D3={}", names[i], names[j], names[l]);
                    let left = ab.clone().and_then(|ab| combine(&ab, sets[l]));
                    let right = combine(sets[j], sets[l]).and_then(|bc| combine(d, &bc));
                    record(&mut r, "1-associative", equal_after(left, right), inputs);
                }
            }
            r
        })
        .collect();
    subreports.into_iter().for_each(|r| report.merge(r));

    // Extractions of every named set to every question.
    let ext: Vec<Vec<Result<SetRep>>> = sets
        .par_iter()
        .map(|d| (0..k).map(|x| extract(d, lattice.partition(x))).collect())
        .collect();
    let leq_table: Vec<Vec<Result<bool>>> = sets
        .iter()
        .map(|a| sets.iter().map(|b| leq(a, b)).collect())
        .collect();

    let subreports: Vec<Report> = (0..sets.len())
        .into_par_iter()
        .map(|i| {
            let mut r = Report::new("");
            let d = sets[i];
            for x in 0..k {
                let e = &ext[i][x];
                let inputs = || format!("D={} x={}", names[i], qname(x));
                record(&mut r, "3b", e.clone().and_then(|e| equal_after(combine(&e, d), Ok(d.clone()))), inputs);
                record(&mut r, "order-contraction", e.clone().and_then(|e| leq(&e, d)), inputs);
                for j in 0..sets.len() {
                    let inputs = || format!("D1={} D2={} x={}", names[i], names[j], qname(x));
                    if let Ok(true) = leq_table[i][j] {
                        let mono = match (&ext[i][x], &ext[j][x]) {
                            (Ok(a), Ok(b)) => leq(a, b),
                            (Err(e), _) | (_, Err(e)) => Err(e.clone()),
                        };
                        record(&mut r, "order-monotone", mono, inputs);
                    }
                    let px = lattice.partition(x);
                    let lhs = e.clone().and_then(|e1| combine(&e1, sets[j])).and_then(|c| extract(&c, px));
                    let rhs = match (e, &ext[j][x]) {
                        (Ok(a), Ok(b)) => combine(a, b),
                        (Err(err), _) | (_, Err(err)) => Err(err.clone()),
                    };
                    record(&mut r, "3c", equal_after(lhs, rhs), inputs);
                }
            }
            r
        })
        .collect();
    subreports.into_iter().for_each(|r| report.merge(r));

    // (4) extraction axiom and (5) supports.
    let ci: Vec<bool> = (0..k * k * k)
        .into_par_iter()
        .map(|t| ci2(lattice.partition(t / (k * k)), lattice.partition(t / k % k), lattice.partition(t % k)))
        .collect();
    let ci_at = |a: usize, b: usize, c: usize| ci[(a * k + b) * k + c];
    let subreports: Vec<Report> = (0..sets.len())
        .into_par_iter()
        .map(|i| {
            let mut r = Report::new("");
            let d = sets[i];
            let supports: Vec<usize> = (0..k)
                .filter(|&x| matches!(&ext[i][x], Ok(e) if matches!(set_equal(e, d), Ok(true))))
                .collect();
            r.check(
                "5-support",
                !supports.is_empty(),
                || format!("D={}", names[i]),
                || format!("no question x with ε_x(D) = D among {k}"),
            );
            for &x in &supports {
                for y in (0..k).filter(|&y| lattice.leq(x, y)) {
                    r.check(
                        "5-upward",
                        supports.contains(&y),
                        || format!("D={} x={} y={}", names[i], qname(x), qname(y)),
                        String::new,
                    );
                }
            }
            let mut memo: HashMap<(usize, usize), Result<bool>> = HashMap::new();
            for &x in &supports {
                for y in 0..k {
                    for z in 0..k {
                        let yz = lattice.join(y, z);
                        if !ci_at(lattice.join(x, z), yz, z) {
                            r.skip("4: separoid precondition fails");
                            continue;
                        }
                        let outcome = memo
                            .entry((z, yz))
                            .or_insert_with(|| {
                                let inner = ext[i][z].clone().and_then(|ez| extract(&ez, lattice.partition(yz)));
                                equal_after(ext[i][yz].clone(), inner)
                            })
                            .clone();
                        record(&mut r, "4", outcome, || {
                            format!("D={} x={} y={} z={}", names[i], qname(x), qname(y), qname(z))
                        });
                    }
                }
            }
            r
        })
        .collect();
    subreports.into_iter().for_each(|r| report.merge(r));

    // Extraction against the single-LP oracle.
    let oracle_sets: Vec<usize> = (0..sets.len())
        .filter(|&i| matches!(sets[i].kind(), SetKind::Assertions(_) | SetKind::Unit))
        .collect();
    if !oracle_sets.is_empty() && k > 0 {
        let mut sampler = Sampler::new(seed);
        for _ in 0..n_samples {
            let i = oracle_sets[sampler.index(oracle_sets.len())];
            let x = sampler.index(k);
            let f = sampler.nonzero_gamble(space);
            let outcome = match &ext[i][x] {
                Ok(e) => set_member(e, &f).and_then(|a| Ok(a == extract_member_oracle(sets[i], lattice.partition(x), &f)?)),
                Err(e) => Err(e.clone()),
            };
            record(&mut report, "oracle", outcome, || {
                format!("D={} x={} f={f:?}", names[i], qname(x))
            });
        }
    }
    report.finish()
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

    fn p(labels: &[usize]) -> Partition {
        Partition::from_labels(labels).unwrap()
    }

    #[test]
    fn combine_examples() {
        let s = abc();
        let f1 = g(&s, &[1, -1, 0]);
        let f2 = g(&s, &[0, 1, -1]);
        let a = SetRep::assertions(&s, vec![f1.clone()]).unwrap();
        let b = SetRep::assertions(&s, vec![f2.clone()]).unwrap();
        let c = combine(&a, &b).unwrap();
        assert!(set_equal(&c, &closure(&s, &[f1, f2]).unwrap()).unwrap());
        let ab = lift_event(&Event::from_names(&s, &["a", "b"]).unwrap());
        let bc = lift_event(&Event::from_names(&s, &["b", "c"]).unwrap());
        let b_only = lift_event(&Event::from_names(&s, &["b"]).unwrap());
        assert!(set_equal(&combine(&ab, &bc).unwrap(), &b_only).unwrap());
        assert!(combine(&a, &SetRep::top(&s)).unwrap().is_top());
        assert!(set_equal(&combine(&SetRep::unit(&s), &a).unwrap(), &a).unwrap());
    }

    #[test]
    fn combine_with_atoms() {
        let s = abc();
        let m = SetRep::lex_atom(&s, vec![0, 1, 2]).unwrap();
        let a = SetRep::assertions(&s, vec![g(&s, &[1, -1, 0])]).unwrap();
        assert!(set_equal(&combine(&m, &a).unwrap(), &m).unwrap());
        let a2 = SetRep::assertions(&s, vec![g(&s, &[-1, 1, 0])]).unwrap();
        assert!(combine(&m, &a2).unwrap().is_top());
    }

    #[test]
    fn assertion_event_mix() {
        let s = abc();
        let a = SetRep::assertions(&s, vec![g(&s, &[-1, -1, 3])]).unwrap();
        let ab = lift_event(&Event::from_names(&s, &["a", "b"]).unwrap());
        assert!(combine(&a, &ab).unwrap().is_top());
        let c = lift_event(&Event::from_names(&s, &["c"]).unwrap());
        assert!(set_equal(&combine(&a, &c).unwrap(), &c).unwrap());
        let a3 = SetRep::assertions(&s, vec![g(&s, &[1, -1, 0])]).unwrap();
        let b = lift_event(&Event::from_names(&s, &["a", "c"]).unwrap());
        assert!(matches!(combine(&a3, &b), Err(Error::Unsupported(_))));
    }

    #[test]
    fn extract_examples() {
        let s = abc();
        let x = p(&[0, 0, 1]);
        let d = SetRep::assertions(&s, vec![g(&s, &[1, 1, -1])]).unwrap();
        assert!(set_equal(&extract(&d, &x).unwrap(), &d).unwrap());
        let d2 = SetRep::assertions(&s, vec![g(&s, &[1, -1, 0])]).unwrap();
        assert!(extract(&d2, &x).unwrap().is_unit());
        assert!(extract(&SetRep::top(&s), &x).unwrap().is_top());
    }

    #[test]
    fn extract_without_indicators_is_caught() {
        // cone(K) ∩ L_x is {0}; (2,2,-1) = (2,0,-1) + 2·1_b needs the indicators.
        let s = abc();
        let x = p(&[0, 0, 1]);
        let d = SetRep::assertions(&s, vec![g(&s, &[2, 0, -1])]).unwrap();
        let e = extract(&d, &x).unwrap();
        let f = g(&s, &[2, 2, -1]);
        assert_eq!(set_member(&e, &f).unwrap(), extract_member_oracle(&d, &x, &f).unwrap());
        assert!(set_member(&e, &f).unwrap());
    }

    #[test]
    fn oracle_examples() {
        let s = abc();
        let x = p(&[0, 0, 1]);
        let d = SetRep::assertions(&s, vec![g(&s, &[1, 1, -1])]).unwrap();
        assert!(extract_member_oracle(&d, &x, &g(&s, &[1, 1, 0])).unwrap());
        assert!(!extract_member_oracle(&d, &x, &g(&s, &[-1, -1, 5])).unwrap());
        assert!(extract_member_oracle(&d, &x, &g(&s, &[0, 1, 1])).unwrap());
        assert_eq!(extract_member_oracle(&d, &x, &Gamble::zero(&s)), Err(Error::ZeroGambleQuery));
    }

    #[test]
    fn support_examples() {
        let s = abc();
        let full = QuestionLattice::full(&s);
        assert_eq!(find_support(&SetRep::unit(&s), &full).unwrap(), Some(0));
        let d = SetRep::assertions(&s, vec![g(&s, &[1, 1, -1])]).unwrap();
        let lat = QuestionLattice::new(&s, vec![("x".into(), p(&[0, 0, 1]))], true).unwrap();
        assert_eq!(lat.question(find_support(&d, &lat).unwrap().unwrap()).name, "x");
        let only = QuestionLattice::new(&s, vec![("x".into(), p(&[0, 0, 1]))], false).unwrap();
        let d2 = SetRep::assertions(&s, vec![g(&s, &[1, -1, 0])]).unwrap();
        assert_eq!(find_support(&d2, &only).unwrap(), None);
    }

    #[test]
    fn nested_local_atoms() {
        let s = abc();
        let m = SetRep::lex_atom(&s, vec![0, 1, 2]).unwrap();
        let fine = p(&[0, 0, 1]);
        let coarse = Partition::bottom(3);
        let e = extract(&m, &fine).unwrap();
        assert!(set_equal(&extract(&e, &coarse).unwrap(), &extract(&m, &coarse).unwrap()).unwrap());
        assert!(set_equal(&extract(&e, &Partition::top(3)).unwrap(), &e).unwrap());
        assert!(matches!(extract(&e, &p(&[0, 1, 1])), Err(Error::Unsupported(_))));
        assert!(leq(&e, &m).unwrap());
    }

    #[test]
    fn axiom_suite_small() {
        let s = abc();
        let lattice = QuestionLattice::full(&s);
        let sets = vec![
            ("unit".to_string(), SetRep::unit(&s)),
            ("top".to_string(), SetRep::top(&s)),
            ("k1".to_string(), SetRep::assertions(&s, vec![g(&s, &[1, -1, 0])]).unwrap()),
            ("k2".to_string(), SetRep::assertions(&s, vec![g(&s, &[1, 1, -1]), g(&s, &[-1, 2, 0])]).unwrap()),
            ("e1".to_string(), lift_event(&Event::from_names(&s, &["a", "b"]).unwrap())),
            ("e2".to_string(), lift_event(&Event::from_names(&s, &["c"]).unwrap())),
        ];
        let model = AlgebraModel::new(lattice, sets).unwrap();
        let r = axiom_suite(&model, 100, 1);
        assert!(r.is_consistent());
        assert_eq!(r.failed, 0, "{:#?}", r.failures);
        assert!(r.skipped > 0);
    }

    #[test]
    fn axiom_suite_reports_missing_support() {
        let s = abc();
        let lat = QuestionLattice::new(&s, vec![("x".into(), p(&[0, 0, 1]))], false).unwrap();
        let d = SetRep::assertions(&s, vec![g(&s, &[1, -1, 0])]).unwrap();
        let model = AlgebraModel::new(lat, vec![("d".into(), d)]).unwrap();
        let r = axiom_suite(&model, 10, 1);
        assert_eq!(r.failures_for("5-support"), 1);
    }

    #[test]
    fn axiom_suite_without_sets() {
        let s = abc();
        let model = AlgebraModel::new(QuestionLattice::full(&s), vec![]).unwrap();
        let r = axiom_suite(&model, 10, 1);
        assert_eq!(r.failed, 0);
        assert!(r.attempted > 0);
    }
}
