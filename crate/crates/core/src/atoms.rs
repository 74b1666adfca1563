//! Lexicographic atoms `M_π`, their local atoms `ε_x(M_π)`, the atom
//! partitions `At_x`, and suites for the order, join and set-algebra
//! structure on that family.

use std::collections::BTreeSet;

use itertools::Itertools;
use rayon::prelude::*;

use crate::algebra::{combine, extract, random_assertions};
use crate::desirability::{closure, induced_block_order, leq, lift_event, local_atom_member, set_member, SetRep};
use crate::error::{Error, Result};
use crate::partition::{ci2, Partition};
use crate::report::Report;
use crate::sampling::{grid, Sampler};
use crate::space::{anonymous_space, ensure_same, Gamble, Space};

pub const ATOM_SPACE_LIMIT: usize = 8;
pub const ATOM_SUITE_LIMIT: usize = 4;

/// All `|Ω|!` permutation-lexicographic maximal sets, in lexicographic
/// order of the permutations.
#[derive(Debug, Clone)]
pub struct LexAtomFamily {
    space: Space,
    atoms: Vec<Vec<usize>>,
}

pub fn enum_lex_atoms(space: &Space) -> Result<LexAtomFamily> {
    let n = space.len();
    if n > ATOM_SPACE_LIMIT {
        return Err(Error::LimitExceeded {
            what: "lexicographic atom enumeration",
            requested: n,
            max: ATOM_SPACE_LIMIT,
        });
    }
    Ok(LexAtomFamily {
        space: space.clone(),
        atoms: (0..n).permutations(n).collect(),
    })
}

impl LexAtomFamily {
    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn order(&self, i: usize) -> &[usize] {
        &self.atoms[i]
    }

    pub fn orders(&self) -> &[Vec<usize>] {
        &self.atoms
    }

    pub fn set_rep(&self, i: usize) -> SetRep {
        SetRep::lex_atom(&self.space, self.atoms[i].clone()).expect("a permutation")
    }

    /// World names in `π` order.
    pub fn names(&self, i: usize) -> Vec<String> {
        self.atoms[i].iter().map(|&w| self.space.name(w).to_string()).collect()
    }

    fn check(&self, x: &Partition) -> Result<()> {
        if x.len() == self.space.len() {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }
}

/// `ε_x(M_π)`: blocks of `x` in order of first occurrence in `π`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalAtom {
    pub order: Vec<usize>,
    pub question: Partition,
    pub block_order: Vec<Vec<usize>>,
}

impl LocalAtom {
    pub fn member(&self, f: &Gamble) -> Result<bool> {
        local_atom_member(&self.order, &self.question, f)
    }

    pub fn to_set_rep(&self, space: &Space) -> Result<SetRep> {
        extract(&SetRep::lex_atom(space, self.order.clone())?, &self.question)
    }
}

pub fn extract_atom(order: &[usize], x: &Partition) -> Result<LocalAtom> {
    if order.len() != x.len() {
        return Err(Error::SpaceMismatch);
    }
    Ok(LocalAtom {
        order: order.to_vec(),
        question: x.clone(),
        block_order: induced_block_order(order, x),
    })
}

/// `M ≡_x M'`: equal induced block orders.
pub fn atom_equiv(a: &[usize], b: &[usize], x: &Partition) -> Result<bool> {
    if a.len() != x.len() || b.len() != x.len() {
        return Err(Error::SpaceMismatch);
    }
    Ok(induced_block_order(a, x) == induced_block_order(b, x))
}

/// Indices of the atoms containing `D`.
pub fn at_of(d: &SetRep, family: &LexAtomFamily) -> Result<BTreeSet<usize>> {
    ensure_same(d.space(), family.space())?;
    if d.is_top() {
        return Ok(BTreeSet::new());
    }
    let mut out = BTreeSet::new();
    for i in 0..family.len() {
        if leq(d, &family.set_rep(i))? {
            out.insert(i);
        }
    }
    Ok(out)
}

/// `At_x` as a partition of atom indices.
pub fn atom_partition(x: &Partition, family: &LexAtomFamily) -> Result<Partition> {
    family.check(x)?;
    let labels: Vec<Vec<Vec<usize>>> = family.atoms.iter().map(|o| induced_block_order(o, x)).collect();
    Partition::from_labels(&labels)
}

/// Union of the `At_x` blocks meeting `atoms`.
pub fn atom_saturate(atoms: &BTreeSet<usize>, x: &Partition, family: &LexAtomFamily) -> Result<BTreeSet<usize>> {
    let at_x = atom_partition(x, family)?;
    saturate_indices(atoms, &at_x)
}

fn saturate_indices(atoms: &BTreeSet<usize>, at_x: &Partition) -> Result<BTreeSet<usize>> {
    if let Some(&bad) = atoms.iter().find(|&&i| i >= at_x.len()) {
        return Err(Error::validation("atoms", format!("atom index {bad} out of range")));
    }
    Ok(at_x
        .blocks()
        .iter()
        .filter(|b| b.iter().any(|i| atoms.contains(i)))
        .flatten()
        .copied()
        .collect())
}

fn check_limit(what: &'static str, requested: usize) -> Result<()> {
    if requested > ATOM_SUITE_LIMIT {
        Err(Error::LimitExceeded {
            what,
            requested,
            max: ATOM_SUITE_LIMIT,
        })
    } else {
        Ok(())
    }
}

/// Exact maximality of every atom on a coordinate grid.
fn maximality_checks(family: &LexAtomFamily, report: &mut Report) -> Result<()> {
    let space = family.space();
    let (lo, hi) = if space.len() <= 3 { (-2, 2) } else { (-1, 1) };
    let gambles: Vec<Gamble> = grid(space, lo, hi).into_iter().filter(|g| !g.is_zero()).collect();
    for i in 0..family.len() {
        let m = family.set_rep(i);
        for f in &gambles {
            let ok = set_member(&m, f)? != set_member(&m, &f.neg())?;
            report.check("maximality", ok, || format!("π={:?} f={f:?}", family.names(i)), String::new);
        }
    }
    Ok(())
}

/// Order preservation and `At_{x∨y}` refining `At_x ∨ At_y` (asserted);
/// the reverse join direction and conditional independence preservation
/// (measured only).
pub fn atom_separoid_suite(space_size_limit: usize) -> Result<Report> {
    check_limit("atom-separoid suite", space_size_limit)?;
    let mut report = Report::new("atom-separoid");
    for n in 1..=space_size_limit {
        let space = anonymous_space(n)?;
        let family = enum_lex_atoms(&space)?;
        maximality_checks(&family, &mut report)?;
        let parts = Partition::all(n);
        let at: Vec<Partition> = parts.iter().map(|p| atom_partition(p, &family)).collect::<Result<_>>()?;
        let k = parts.len();
        let describe = |i: usize| parts[i].describe(&space);
        for i in 0..family.len() {
            for j in 0..family.len() {
                for (x, p) in parts.iter().enumerate() {
                    let same = atom_equiv(family.order(i), family.order(j), p)?;
                    report.check(
                        "equiv-matches-partition",
                        same == (at[x].block_of(i) == at[x].block_of(j)),
                        || format!("x={} π={:?} π'={:?}", describe(x), family.names(i), family.names(j)),
                        String::new,
                    );
                }
            }
        }
        let subreports: Vec<Report> = (0..k)
            .into_par_iter()
            .map(|x| {
                let mut r = Report::new("");
                for y in 0..k {
                    let inputs = || format!("x={} y={}", describe(x), describe(y));
                    if parts[x].leq(&parts[y]).expect("same size") {
                        r.check("order", at[x].leq(&at[y]).expect("same size"), inputs, String::new);
                    }
                    let xy = parts[x].join(&parts[y]).expect("same size");
                    let at_xy = atom_partition(&xy, &family).expect("same size");
                    let joined = at[x].join(&at[y]).expect("same size");
                    r.check("join-refines", joined.leq(&at_xy).expect("same size"), inputs, String::new);
                    r.explore("join-reverse", at_xy.leq(&joined).expect("same size"), || {
                        format!("x={} y={}: At_x∨At_y={joined:?} At_(x∨y)={at_xy:?}", describe(x), describe(y))
                    });
                    for z in 0..k {
                        if ci2(&parts[x], &parts[y], &parts[z]) {
                            r.explore("ci-preservation", ci2(&at[x], &at[y], &at[z]), || {
                                format!("x={} y={} z={}", describe(x), describe(y), describe(z))
                            });
                        }
                    }
                }
                r
            })
            .collect();
        subreports.into_iter().for_each(|r| report.merge(r));
        report.note(format!("|Ω|={n}: {} atoms, {k} partitions", family.len()));
    }
    Ok(report.finish())
}

/// A pool of `n_sets` sets over `space`: Top, Unit, then alternating
/// random assertion sets and event sets.
pub fn atom_pool(space: &Space, n_sets: usize, seed: u64) -> Result<Vec<SetRep>> {
    let mut sampler = Sampler::new(seed);
    let mut pool = vec![SetRep::top(space), SetRep::unit(space)];
    while pool.len() < n_sets {
        if pool.len() % 2 == 0 {
            let k = random_assertions(space, 1 + sampler.index(3), &mut sampler);
            pool.push(closure(space, &k)?);
        } else {
            pool.push(lift_event(&sampler.event(space)));
        }
    }
    pool.truncate(n_sets);
    Ok(pool)
}

/// `At(D1·D2) = At(D1) ∩ At(D2)`, `At(0) = ∅`, `At(1)` = family, and
/// `σ_x(At(D)) ⊆ At(ε_x(D))` (asserted); the reverse inclusion is
/// measured only.
pub fn atom_set_algebra_suite(space_size_limit: usize, n_sets: usize) -> Result<Report> {
    check_limit("atom-set-algebra suite", space_size_limit)?;
    let mut report = Report::new("atom-set-algebra");
    for n in 1..=space_size_limit {
        let space = anonymous_space(n)?;
        let family = enum_lex_atoms(&space)?;
        let pool = atom_pool(&space, n_sets, n as u64)?;
        let everything: BTreeSet<usize> = (0..family.len()).collect();
        report.check("item2-null", at_of(&SetRep::top(&space), &family)?.is_empty(), || "top".into(), String::new);
        report.check("item2-unit", at_of(&SetRep::unit(&space), &family)? == everything, || "unit".into(), String::new);
        let ats: Vec<BTreeSet<usize>> = pool.iter().map(|d| at_of(d, &family)).collect::<Result<_>>()?;
        for (i, d1) in pool.iter().enumerate() {
            for (j, d2) in pool.iter().enumerate() {
                let inputs = || format!("D1={} D2={}", d1.describe(), d2.describe());
                match combine(d1, d2) {
                    Ok(c) => {
                        let lhs = at_of(&c, &family)?;
                        let rhs: BTreeSet<usize> = ats[i].intersection(&ats[j]).copied().collect();
                        report.check("item1-combination", lhs == rhs, inputs, || format!("{lhs:?} vs {rhs:?}"));
                    }
                    Err(Error::Unsupported(_)) => report.skip("item1: unsupported combination"),
                    Err(e) => return Err(e),
                }
            }
        }
        for (i, d) in pool.iter().enumerate() {
            for p in Partition::all(n) {
                let inputs = || format!("D={} x={}", d.describe(), p.describe(&space));
                let sat = atom_saturate(&ats[i], &p, &family)?;
                let at_e = at_of(&extract(d, &p)?, &family)?;
                report.check("item3-inclusion", sat.is_subset(&at_e), inputs, || {
                    format!("σ_x(At(D))={sat:?} At(ε_x(D))={at_e:?}")
                });
                report.explore("item3-reverse", at_e.is_subset(&sat), || {
                    format!("{}: σ_x(At(D))={sat:?} At(ε_x(D))={at_e:?}", inputs())
                });
            }
        }
        report.note(format!("|Ω|={n}: {} atoms, pool of {}", family.len(), pool.len()));
    }
    Ok(report.finish())
}
