//! Partitions of a finite set, the question join-semilattice, measurability,
//! and (conditional) logical independence of partitions.
//!
//! Partitions are ordered by granularity: `x <= y` when `y` is finer, i.e.
//! every block of `y` sits inside a block of `x`. The coarsest partition
//! (one block) is the bottom and the partition into singletons is the top.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cone::LinearForm;
use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::report::Report;
use crate::space::{Gamble, Space};

/// A partition stored as canonical block ids: blocks are numbered in order
/// of their least member.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    block_of: Vec<usize>,
    #[serde(skip)]
    blocks: Vec<Vec<usize>>,
}

impl std::fmt::Debug for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "[{}]", parts.join("|"))
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(labels: Vec<usize>) -> Result<Self> {
        Partition::from_labels(&labels)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.block_of
    }
}

impl Partition {
    /// Builds a partition from arbitrary per-element labels; equal labels
    /// mean same block.
    pub fn from_labels<T: Eq + std::hash::Hash>(labels: &[T]) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidPartition("partition of an empty set".into()));
        }
        let mut ids: HashMap<&T, usize> = HashMap::new();
        let block_of: Vec<usize> = labels
            .iter()
            .map(|l| {
                let next = ids.len();
                *ids.entry(l).or_insert(next)
            })
            .collect();
        Ok(Partition::from_canonical(block_of))
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &w in block {
                if w >= n {
                    return Err(Error::InvalidPartition(format!("element {w} out of range")));
                }
                if labels[w] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("element {w} in two blocks")));
                }
                labels[w] = b;
            }
        }
        if labels.contains(&usize::MAX) {
            return Err(Error::InvalidPartition("blocks do not cover every element".into()));
        }
        Partition::from_labels(&labels)
    }

    fn from_canonical(block_of: Vec<usize>) -> Self {
        let n_blocks = block_of.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); n_blocks];
        for (w, &b) in block_of.iter().enumerate() {
            blocks[b].push(w);
        }
        Partition { block_of, blocks }
    }

    /// The coarsest partition `{Ω}`.
    pub fn bottom(n: usize) -> Self {
        Partition::from_canonical(vec![0; n])
    }

    /// The finest partition into singletons.
    pub fn top(n: usize) -> Self {
        Partition::from_canonical((0..n).collect())
    }

    /// Every partition of an `n`-element set, via restricted growth strings.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(prefix: &mut Vec<usize>, max: usize, n: usize, out: &mut Vec<Partition>) {
            if prefix.len() == n {
                out.push(Partition::from_canonical(prefix.clone()));
                return;
            }
            for b in 0..=max + 1 {
                prefix.push(b);
                rec(prefix, max.max(b), n, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if n == 0 {
            return out;
        }
        let mut prefix = vec![0];
        rec(&mut prefix, 0, n, &mut out);
        out
    }

    pub fn len(&self) -> usize {
        self.block_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block_of.is_empty()
    }

    pub fn n_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self, w: usize) -> usize {
        self.block_of[w]
    }

    pub fn block_ids(&self) -> &[usize] {
        &self.block_of
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn is_top(&self) -> bool {
        self.blocks.len() == self.block_of.len()
    }

    pub fn is_bottom(&self) -> bool {
        self.blocks.len() == 1
    }

    fn same_size(&self, other: &Partition) -> Result<()> {
        if self.len() == other.len() {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    /// `self <= other`: every block of `other` lies inside a block of `self`.
    pub fn leq(&self, other: &Partition) -> Result<bool> {
        self.same_size(other)?;
        Ok(other
            .blocks
            .iter()
            .all(|b| b.iter().all(|&w| self.block_of[w] == self.block_of[b[0]])))
    }

    /// Non-empty pairwise intersections of blocks.
    pub fn join(&self, other: &Partition) -> Result<Partition> {
        self.same_size(other)?;
        let labels: Vec<(usize, usize)> = self
            .block_of
            .iter()
            .zip(&other.block_of)
            .map(|(&a, &b)| (a, b))
            .collect();
        Partition::from_labels(&labels)
    }

    /// Human-readable form using world names, e.g. `ab|c` or `{x1,x2}|{x3}`.
    pub fn describe(&self, space: &Space) -> String {
        let short = space.worlds().iter().all(|w| w.chars().count() == 1);
        self.blocks
            .iter()
            .map(|b| {
                let names: Vec<&str> = b.iter().map(|&w| space.name(w)).collect();
                if short {
                    names.concat()
                } else {
                    format!("{{{}}}", names.join(","))
                }
            })
            .collect::<Vec<_>>()
            .join("|")
    }
}

pub fn partition_leq(px: &Partition, py: &Partition) -> Result<bool> {
    px.leq(py)
}

pub fn partition_join(px: &Partition, py: &Partition) -> Result<Partition> {
    px.join(py)
}

fn check_sizes(ps: &[&Partition], n: usize) -> Result<()> {
    if ps.iter().all(|p| p.len() == n) {
        Ok(())
    } else {
        Err(Error::SpaceMismatch)
    }
}

/// Every tuple of blocks (one per partition) has a common element.
pub fn independent(ps: &[&Partition]) -> Result<bool> {
    if ps.len() < 2 {
        return Err(Error::TooFewPartitions {
            min: 2,
            found: ps.len(),
        });
    }
    let n = ps[0].len();
    check_sizes(ps, n)?;
    let realized: HashSet<Vec<usize>> = (0..n)
        .map(|w| ps.iter().map(|p| p.block_of[w]).collect())
        .collect();
    let product = ps
        .iter()
        .try_fold(1usize, |acc, p| acc.checked_mul(p.n_blocks()));
    Ok(product == Some(realized.len()))
}

/// `⊥{P_1..P_n} | P`: within every block `B` of `given`, blocks `B_i` that
/// each meet `B` have a common element inside `B`.
pub fn cond_independent(ps: &[&Partition], given: &Partition) -> Result<bool> {
    if ps.is_empty() {
        return Err(Error::TooFewPartitions { min: 1, found: 0 });
    }
    let n = given.len();
    check_sizes(ps, n)?;
    for block in given.blocks() {
        let realized: HashSet<Vec<usize>> = block
            .iter()
            .map(|&w| ps.iter().map(|p| p.block_of[w]).collect())
            .collect();
        let mut product = 1usize;
        for p in ps {
            let meeting: HashSet<usize> = block.iter().map(|&w| p.block_of[w]).collect();
            product = product.saturating_mul(meeting.len());
        }
        if product != realized.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn ci2(x: &Partition, y: &Partition, z: &Partition) -> bool {
    cond_independent(&[x, y], z).expect("partitions of equal size")
}

/// Pairwise equalities `f(ω) = f(ω')` between consecutive members of each block.
pub fn measurability_equations(px: &Partition) -> Vec<LinearForm> {
    let n = px.len();
    let mut out = Vec::new();
    for block in px.blocks() {
        for pair in block.windows(2) {
            let mut form = vec![Rational::zero(); n];
            form[pair[0]] = int(1);
            form[pair[1]] = int(-1);
            out.push(form);
        }
    }
    out
}

fn check_gamble(f: &Gamble, px: &Partition) -> Result<()> {
    if f.len() == px.len() {
        Ok(())
    } else {
        Err(Error::SpaceMismatch)
    }
}

/// Constant on every block.
pub fn is_measurable(f: &Gamble, px: &Partition) -> Result<bool> {
    check_gamble(f, px)?;
    Ok(px
        .blocks()
        .iter()
        .all(|b| b.iter().all(|&w| f.value(w) == f.value(b[0]))))
}

/// The pointwise-largest `px`-measurable gamble below `f`: the minimum of
/// `f` over each block.
pub fn blockwise_min(f: &Gamble, px: &Partition) -> Result<Gamble> {
    check_gamble(f, px)?;
    let mins: Vec<Rational> = px
        .blocks()
        .iter()
        .map(|b| b.iter().map(|&w| f.value(w)).min().cloned().unwrap_or_default())
        .collect();
    let values = (0..f.len()).map(|w| mins[px.block_of(w)].clone()).collect();
    Gamble::new(f.space(), values)
}

/// A named question with its partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Question {
    pub name: String,
    pub partition: Partition,
}

/// A join-closed family of partitions with precomputed order and join tables.
#[derive(Debug, Clone)]
pub struct QuestionLattice {
    space: Space,
    questions: Vec<Question>,
    aliases: BTreeMap<String, usize>,
    additions: Vec<String>,
    leq: Vec<Vec<bool>>,
    join: Vec<Vec<usize>>,
}

impl QuestionLattice {
    /// Closes `named` under join. Questions are ordered coarse to fine
    /// (by block count, then block ids); joins missing from the input are
    /// added under descriptive names and listed in [`closure_additions`].
    ///
    /// [`closure_additions`]: QuestionLattice::closure_additions
    pub fn new(space: &Space, named: Vec<(String, Partition)>, require_top: bool) -> Result<Self> {
        let n = space.len();
        let mut by_partition: BTreeMap<Partition, String> = BTreeMap::new();
        let mut alias_of: Vec<(String, Partition)> = Vec::new();
        for (name, p) in named {
            if p.len() != n {
                return Err(Error::validation(
                    format!("partitions.{name}"),
                    format!("expected {n} block ids, found {}", p.len()),
                ));
            }
            if alias_of.iter().any(|(a, _)| *a == name) {
                return Err(Error::validation(format!("questions.{name}"), "duplicate question name"));
            }
            by_partition.entry(p.clone()).or_insert_with(|| name.clone());
            alias_of.push((name, p));
        }
        if by_partition.is_empty() && !require_top {
            return Err(Error::validation("questions", "at least one question is required"));
        }
        let mut additions = Vec::new();
        if require_top && !by_partition.contains_key(&Partition::top(n)) {
            let top = Partition::top(n);
            let name = top.describe(space);
            additions.push(name.clone());
            by_partition.insert(top, name);
        }
        loop {
            let current: Vec<Partition> = by_partition.keys().cloned().collect();
            let mut fresh = Vec::new();
            for (i, a) in current.iter().enumerate() {
                for b in &current[i + 1..] {
                    let j = a.join(b)?;
                    if !by_partition.contains_key(&j) && !fresh.contains(&j) {
                        fresh.push(j);
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }
            for p in fresh {
                let mut name = p.describe(space);
                while alias_of.iter().any(|(a, _)| *a == name) {
                    name.push('\'');
                }
                additions.push(name.clone());
                by_partition.insert(p, name);
            }
        }
        let mut questions: Vec<Question> = by_partition
            .into_iter()
            .map(|(partition, name)| Question { name, partition })
            .collect();
        questions.sort_by(|a, b| {
            (a.partition.n_blocks(), &a.partition).cmp(&(b.partition.n_blocks(), &b.partition))
        });
        let index: HashMap<&Partition, usize> = questions
            .iter()
            .enumerate()
            .map(|(i, q)| (&q.partition, i))
            .collect();
        let mut aliases = BTreeMap::new();
        for (name, p) in &alias_of {
            aliases.insert(name.clone(), index[p]);
        }
        for (i, q) in questions.iter().enumerate() {
            aliases.entry(q.name.clone()).or_insert(i);
        }
        let k = questions.len();
        let mut leq = vec![vec![false; k]; k];
        let mut join = vec![vec![0; k]; k];
        for i in 0..k {
            for j in 0..k {
                let (a, b) = (&questions[i].partition, &questions[j].partition);
                leq[i][j] = a.leq(b)?;
                join[i][j] = index[&a.join(b)?];
            }
        }
        Ok(QuestionLattice {
            space: space.clone(),
            questions,
            aliases,
            additions,
            leq,
            join,
        })
    }

    /// Every partition of the space, named by [`Partition::describe`].
    pub fn full(space: &Space) -> Self {
        let named = Partition::all(space.len())
            .into_iter()
            .map(|p| (p.describe(space), p))
            .collect();
        QuestionLattice::new(space, named, false).expect("the full partition lattice is join-closed")
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.questions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.questions.is_empty()
    }

    pub fn questions(&self) -> &[Question] {
        &self.questions
    }

    pub fn question(&self, i: usize) -> &Question {
        &self.questions[i]
    }

    pub fn partition(&self, i: usize) -> &Partition {
        &self.questions[i].partition
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.aliases
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownQuestion(name.to_string()))
    }

    pub fn get(&self, name: &str) -> Result<&Partition> {
        self.index_of(name).map(|i| self.partition(i))
    }

    /// Names introduced while closing the input under join.
    pub fn closure_additions(&self) -> &[String] {
        &self.additions
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i][j]
    }

    pub fn top_index(&self) -> Option<usize> {
        self.questions.iter().position(|q| q.partition.is_top())
    }

    /// Recomputes order and join from the partitions and compares with the
    /// stored tables.
    pub fn verify_tables(&self) -> bool {
        let k = self.len();
        (0..k).all(|i| {
            (0..k).all(|j| {
                let (a, b) = (self.partition(i), self.partition(j));
                a.leq(b).ok() == Some(self.leq[i][j])
                    && a.join(b).ok().as_ref() == Some(self.partition(self.join[i][j]))
            })
        })
    }
}

/// Quasi-separoid laws on a list of partitions of the same set:
/// C1 `x ⊥ y | y`, C2 symmetry, C3 `x ⊥ y | z ∧ w <= y ⇒ x ⊥ w | z`,
/// C4 `x ⊥ y | z ⇒ x ⊥ y∨z | z`, and `x ⊥ y | z ⇔ x∨z ⊥ y∨z | z`.
/// Joins are looked up in `ps`, which must be join-closed.
pub(crate) fn separoid_laws(ps: &[Partition], report: &mut Report) {
    let k = ps.len();
    let index: HashMap<&Partition, usize> = ps.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let join: Vec<Vec<usize>> = (0..k)
        .map(|i| (0..k).map(|j| index[&ps[i].join(&ps[j]).expect("same size")]).collect())
        .collect();
    let leq: Vec<Vec<bool>> = (0..k)
        .map(|i| (0..k).map(|j| ps[i].leq(&ps[j]).expect("same size")).collect())
        .collect();
    let ci: Vec<bool> = (0..k * k * k)
        .map(|t| ci2(&ps[t / (k * k)], &ps[t / k % k], &ps[t % k]))
        .collect();
    let at = |x: usize, y: usize, z: usize| ci[(x * k + y) * k + z];
    let name = |i: usize| format!("{:?}", ps[i]);
    for x in 0..k {
        for y in 0..k {
            report.check("C1", at(x, y, y), || format!("x={} y={}", name(x), name(y)), String::new);
            for z in 0..k {
                let holds = at(x, y, z);
                let triple = || format!("x={} y={} z={}", name(x), name(y), name(z));
                if holds {
                    report.check("C2", at(y, x, z), triple, String::new);
                    report.check("C4", at(x, join[y][z], z), triple, String::new);
                    for w in (0..k).filter(|&w| leq[w][y]) {
                        report.check("C3", at(x, w, z), triple, || format!("w={}", name(w)));
                    }
                }
                report.check(
                    "join-equivalence",
                    holds == at(join[x][z], join[y][z], z),
                    triple,
                    String::new,
                );
            }
        }
    }
}

pub const SEPAROID_SIZE_LIMIT: usize = 5;

/// Exhaustive quasi-separoid check over all partitions of sets of size
/// `1..=space_size_limit`.
pub fn quasi_separoid_suite(space_size_limit: usize) -> Result<Report> {
    if space_size_limit > SEPAROID_SIZE_LIMIT {
        return Err(Error::LimitExceeded {
            what: "separoid suite",
            requested: space_size_limit,
            max: SEPAROID_SIZE_LIMIT,
        });
    }
    let mut report = Report::new("separoid");
    for n in 1..=space_size_limit {
        let ps = Partition::all(n);
        report.note(format!("|Ω|={n}: {} partitions, {} triples", ps.len(), ps.len().pow(3)));
        separoid_laws(&ps, &mut report);
    }
    Ok(report.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::make_space;

    fn p(labels: &[usize]) -> Partition {
        Partition::from_labels(labels).unwrap()
    }

    #[test]
    fn canonical_ids() {
        let a = p(&[5, 5, 2]);
        assert_eq!(a.block_ids(), &[0, 0, 1]);
        assert_eq!(a.blocks(), &[vec![0, 1], vec![2]]);
        assert!(Partition::from_blocks(3, &[vec![0], vec![0, 1, 2]]).is_err());
        assert!(Partition::from_blocks(3, &[vec![0], vec![1]]).is_err());
        assert_eq!(Partition::from_blocks(3, &[vec![2], vec![1, 0]]).unwrap(), p(&[0, 0, 1]));
    }

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (1..=5).map(|n| Partition::all(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 15, 52]);
    }

    #[test]
    fn order_examples() {
        let abc = Partition::bottom(3);
        let ab_c = p(&[0, 0, 1]);
        let a_bc = p(&[0, 1, 1]);
        assert!(partition_leq(&abc, &ab_c).unwrap());
        assert!(!partition_leq(&ab_c, &a_bc).unwrap());
        assert!(partition_leq(&ab_c, &ab_c).unwrap());
        assert_eq!(partition_leq(&abc, &Partition::bottom(2)), Err(Error::SpaceMismatch));
    }

    #[test]
    fn join_examples() {
        let ab_c = p(&[0, 0, 1]);
        let a_bc = p(&[0, 1, 1]);
        assert_eq!(partition_join(&ab_c, &a_bc).unwrap(), Partition::top(3));
        assert_eq!(partition_join(&ab_c, &ab_c).unwrap(), ab_c);
        assert_eq!(partition_join(&Partition::bottom(3), &a_bc).unwrap(), a_bc);
    }

    #[test]
    fn independence_examples() {
        // worlds 00, 01, 10, 11
        let rows = p(&[0, 0, 1, 1]);
        let cols = p(&[0, 1, 0, 1]);
        assert!(independent(&[&rows, &cols]).unwrap());
        // drop world 11
        let rows3 = p(&[0, 0, 1]);
        let cols3 = p(&[0, 1, 0]);
        assert!(!independent(&[&rows3, &cols3]).unwrap());
        assert!(independent(&[&Partition::bottom(3), &cols3]).unwrap());
        assert!(matches!(independent(&[&rows]), Err(Error::TooFewPartitions { .. })));
    }

    #[test]
    fn cond_independence_examples() {
        let rows = p(&[0, 0, 1, 1]);
        let cols = p(&[0, 1, 0, 1]);
        assert!(cond_independent(&[&rows, &cols], &cols).unwrap());
        assert!(cond_independent(&[&rows, &cols], &Partition::bottom(4)).unwrap());
        let rows3 = p(&[0, 0, 1]);
        let cols3 = p(&[0, 1, 0]);
        assert!(!cond_independent(&[&rows3, &cols3], &Partition::bottom(3)).unwrap());
        assert!(matches!(
            cond_independent(&[], &rows),
            Err(Error::TooFewPartitions { .. })
        ));
    }

    #[test]
    fn measurability_examples() {
        let s = make_space(&["a", "b", "c"]).unwrap();
        let ab_c = p(&[0, 0, 1]);
        let f = Gamble::from_ints(&s, &[1, 1, -2]).unwrap();
        assert!(is_measurable(&f, &ab_c).unwrap());
        let g = Gamble::from_ints(&s, &[1, 2, 0]).unwrap();
        assert!(!is_measurable(&g, &ab_c).unwrap());
        assert_eq!(blockwise_min(&g, &ab_c).unwrap(), Gamble::from_ints(&s, &[1, 1, 0]).unwrap());
        let h = Gamble::from_ints(&s, &[3, -1, 2]).unwrap();
        assert_eq!(
            blockwise_min(&h, &Partition::bottom(3)).unwrap(),
            Gamble::from_ints(&s, &[-1, -1, -1]).unwrap()
        );
        assert_eq!(measurability_equations(&ab_c).len(), 1);
        assert!(measurability_equations(&Partition::top(3)).is_empty());
    }

    #[test]
    fn lattice_closure() {
        let s = make_space(&["a", "b", "c"]).unwrap();
        let lat = QuestionLattice::new(
            &s,
            vec![("px".into(), p(&[0, 0, 1])), ("py".into(), p(&[0, 1, 1]))],
            false,
        )
        .unwrap();
        assert_eq!(lat.closure_additions(), &["a|b|c".to_string()]);
        assert_eq!(lat.len(), 3);
        assert!(lat.verify_tables());
        let px = lat.index_of("px").unwrap();
        let py = lat.index_of("py").unwrap();
        assert_eq!(lat.join(px, py), lat.top_index().unwrap());
        assert_eq!(lat.index_of("nope"), Err(Error::UnknownQuestion("nope".into())));
    }

    #[test]
    fn separoid_suite_small() {
        let r = quasi_separoid_suite(3).unwrap();
        assert_eq!(r.failed, 0);
        assert!(r.attempted > 125);
        assert!(matches!(quasi_separoid_suite(6), Err(Error::LimitExceeded { .. })));
    }
}
