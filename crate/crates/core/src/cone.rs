//! Exact polyhedral cone machinery.
//!
//! Membership questions are answered by the exact simplex in [`crate::lp`].
//! Conversions between generators (V-representation) and halfspace normals
//! (H-representation, `{f : <n, f> >= 0}`) use an incremental double
//! description over primitive integer vectors. Only topologically closed
//! cones are handled here; strictness lives in the desirability layer.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lp::{LinearProgram, LpOutcome, LpWitness, Relation};
use crate::rational::{primitive, primitive_integer_direction, Rational};
use crate::space::{ensure_same, Gamble, Space};

/// Coefficients of a linear functional, aligned to world order.
pub type LinearForm = Vec<Rational>;

fn check_spaces(space: &Space, gambles: &[Gamble]) -> Result<()> {
    gambles.iter().try_for_each(|g| ensure_same(space, g.space()))
}

/// `Σ λ_j g_j = f` over non-negative λ; the witness holds λ.
pub fn cone_member_witness(gens: &[Gamble], f: &Gamble) -> Result<Option<LpWitness>> {
    if f.is_zero() {
        return Err(Error::ZeroGambleQuery);
    }
    check_spaces(f.space(), gens)?;
    if gens.is_empty() {
        return Ok(None);
    }
    let mut lp = LinearProgram::new(gens.len());
    for w in 0..f.len() {
        let row = gens.iter().map(|g| g.value(w).clone()).collect();
        lp.add(row, Relation::Eq, f.value(w).clone())?;
    }
    Ok(match lp.solve() {
        LpOutcome::Feasible(w) => Some(w),
        _ => None,
    })
}

pub fn cone_member(gens: &[Gamble], f: &Gamble) -> Result<bool> {
    cone_member_witness(gens, f).map(|w| w.is_some())
}

/// Whether some convex combination (`Σλ = 1`, `λ >= 0`) of `gens` vanishes.
pub fn zero_in_posi_witness(gens: &[Gamble]) -> Result<Option<LpWitness>> {
    let Some(first) = gens.first() else {
        return Ok(None);
    };
    check_spaces(first.space(), gens)?;
    let mut lp = LinearProgram::new(gens.len());
    for w in 0..first.len() {
        let row = gens.iter().map(|g| g.value(w).clone()).collect();
        lp.add(row, Relation::Eq, Rational::zero())?;
    }
    lp.add(vec![Rational::one(); gens.len()], Relation::Eq, Rational::one())?;
    Ok(match lp.solve() {
        LpOutcome::Feasible(w) => Some(w),
        _ => None,
    })
}

pub fn zero_in_posi(gens: &[Gamble]) -> Result<bool> {
    zero_in_posi_witness(gens).map(|w| w.is_some())
}

/// Halfspace normals of the closed cone spanned by `gens`. Lineality of the
/// dual shows up as opposite normal pairs; `{}` yields `±e_i` (the cone {0}).
pub fn v_to_h(space: &Space, gens: &[Gamble]) -> Result<Vec<Gamble>> {
    check_spaces(space, gens)?;
    let rows: Vec<IVec> = gens.iter().map(|g| primitive_integer_direction(g.values())).collect();
    let normals = double_description(&rows, space.len(), Adjacency::Combinatorial);
    Ok(to_gambles(space, normals))
}

/// [`v_to_h`] with the algebraic adjacency test (rank of the common active
/// constraints) in place of the combinatorial one.
pub fn v_to_h_rank_adjacency(space: &Space, gens: &[Gamble]) -> Result<Vec<Gamble>> {
    check_spaces(space, gens)?;
    let rows: Vec<IVec> = gens.iter().map(|g| primitive_integer_direction(g.values())).collect();
    let normals = double_description(&rows, space.len(), Adjacency::Rank);
    Ok(to_gambles(space, normals))
}

/// Generators (extreme rays plus both directions of a lineality basis) of
/// `{f : <n, f> >= 0 for all normals n}`.
pub fn h_to_v(space: &Space, halfspaces: &[Gamble]) -> Result<Vec<Gamble>> {
    v_to_h(space, halfspaces)
}

/// Generators of the closed cone `{f ∈ cone(gens) : eq(f) = 0 for all eq}`.
pub fn cone_intersect_subspace(
    space: &Space,
    gens: &[Gamble],
    equations: &[LinearForm],
) -> Result<Vec<Gamble>> {
    check_spaces(space, gens)?;
    let dim = space.len();
    if let Some(bad) = equations.iter().find(|e| e.len() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: bad.len(),
        });
    }
    let rows: Vec<IVec> = gens.iter().map(|g| primitive_integer_direction(g.values())).collect();
    let normals = double_description(&rows, dim, Adjacency::Combinatorial);
    let basis = nullspace_basis(equations, dim);
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    // Coordinates y in the nullspace basis: f = Σ y_j b_j.
    let reduced: Vec<IVec> = normals
        .iter()
        .map(|n| basis.iter().map(|b| idot(n, b)).collect())
        .collect();
    let ys = double_description(&reduced, basis.len(), Adjacency::Combinatorial);
    let mut out: Vec<IVec> = ys
        .iter()
        .map(|y| {
            let mut f = vec![BigInt::zero(); dim];
            for (coef, b) in y.iter().zip(&basis) {
                if coef.is_zero() {
                    continue;
                }
                for (fi, bi) in f.iter_mut().zip(b) {
                    *fi += coef * bi;
                }
            }
            primitive(f)
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(to_gambles(space, out))
}

fn to_gambles(space: &Space, vs: Vec<IVec>) -> Vec<Gamble> {
    vs.into_iter()
        .map(|v| {
            Gamble::new(space, v.into_iter().map(Rational::from_integer).collect())
                .expect("dimension preserved")
        })
        .collect()
}

/// A polyhedral cone held by generators and, optionally, halfspaces.
#[derive(Debug, Clone)]
pub struct Cone {
    space: Space,
    generators: Vec<Gamble>,
    halfspaces: Option<Vec<Gamble>>,
}

impl Cone {
    pub fn from_generators(space: &Space, generators: Vec<Gamble>) -> Result<Self> {
        check_spaces(space, &generators)?;
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Cone {
            space: space.clone(),
            generators,
            halfspaces: None,
        })
    }

    pub fn from_halfspaces(space: &Space, halfspaces: Vec<Gamble>) -> Result<Self> {
        let generators = h_to_v(space, &halfspaces)?;
        Ok(Cone {
            space: space.clone(),
            generators,
            halfspaces: Some(halfspaces),
        })
    }

    pub fn generators(&self) -> &[Gamble] {
        &self.generators
    }

    pub fn halfspaces(&mut self) -> Result<&[Gamble]> {
        if self.halfspaces.is_none() {
            self.halfspaces = Some(v_to_h(&self.space, &self.generators)?);
        }
        Ok(self.halfspaces.as_deref().unwrap_or_default())
    }

    pub fn contains(&self, f: &Gamble) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        cone_member(&self.generators, f)
    }

    /// Checks that both representations describe the same closed cone:
    /// every generator satisfies every halfspace, and every generator
    /// recovered from the halfspaces lies in the span of the generators.
    pub fn audit(&mut self) -> Result<bool> {
        let halfspaces = self.halfspaces()?.to_vec();
        let inside = self.generators.iter().all(|g| {
            halfspaces
                .iter()
                .all(|n| !g.dot(n.values()).is_negative())
        });
        if !inside {
            return Ok(false);
        }
        for r in h_to_v(&self.space, &halfspaces)? {
            if !self.contains(&r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

type IVec = Vec<BigInt>;

fn idot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new() -> Self {
        BitSet(Vec::new())
    }

    fn insert(&mut self, i: usize) {
        let (w, b) = (i / 64, i % 64);
        if self.0.len() <= w {
            self.0.resize(w + 1, 0);
        }
        self.0[w] |= 1 << b;
    }

    fn intersection(&self, other: &BitSet) -> BitSet {
        BitSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_superset(&self, other: &BitSet) -> bool {
        other
            .0
            .iter()
            .enumerate()
            .all(|(i, w)| w & !self.0.get(i).copied().unwrap_or(0) == 0)
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, w)| (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| i * 64 + b))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Adjacency {
    /// No third ray's zero set contains the common zero set.
    Combinatorial,
    /// The common active constraints have rank `d - dim(lineality) - 2`.
    Rank,
}

struct Ray {
    v: IVec,
    zeros: BitSet,
}

/// Double description: generators of `{x : <a, x> >= 0 for all a in normals}`
/// in dimension `dim`, as canonical primitive integer vectors sorted
/// lexicographically. Lineality directions appear with both signs.
pub(crate) fn double_description(normals: &[IVec], dim: usize, adjacency: Adjacency) -> Vec<IVec> {
    let mut order: Vec<IVec> = normals
        .iter()
        .map(|n| primitive(n.clone()))
        .filter(|n| n.iter().any(|v| !v.is_zero()))
        .collect();
    order.sort();
    order.dedup();

    let mut lineality: Vec<IVec> = (0..dim)
        .map(|i| {
            let mut e = vec![BigInt::zero(); dim];
            e[i] = BigInt::one();
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();
    let mut processed: Vec<IVec> = Vec::new();

    for a in order {
        let k = processed.len();
        if let Some(pos) = lineality.iter().position(|l| !idot(&a, l).is_zero()) {
            let mut l = lineality.swap_remove(pos);
            let mut al = idot(&a, &l);
            if al.is_negative() {
                l.iter_mut().for_each(|v| *v = -&*v);
                al = -al;
            }
            for other in lineality.iter_mut() {
                let ao = idot(&a, other);
                if !ao.is_zero() {
                    let v: IVec = other.iter().zip(&l).map(|(o, li)| &al * o - &ao * li).collect();
                    *other = primitive(v);
                }
            }
            for ray in rays.iter_mut() {
                let ar = idot(&a, &ray.v);
                if !ar.is_zero() {
                    let v: IVec = ray.v.iter().zip(&l).map(|(r, li)| &al * r - &ar * li).collect();
                    ray.v = primitive(v);
                }
                ray.zeros.insert(k);
            }
            let mut zeros = BitSet::new();
            (0..k).for_each(|i| zeros.insert(i));
            rays.push(Ray { v: l, zeros });
        } else {
            let signs: Vec<BigInt> = rays.iter().map(|r| idot(&a, &r.v)).collect();
            let pos: Vec<usize> = (0..rays.len()).filter(|&i| signs[i].is_positive()).collect();
            let neg: Vec<usize> = (0..rays.len()).filter(|&i| signs[i].is_negative()).collect();
            let needed = dim.saturating_sub(lineality.len() + 2);
            let mut fresh = Vec::new();
            for &p in &pos {
                for &n in &neg {
                    let common = rays[p].zeros.intersection(&rays[n].zeros);
                    if common.count() < needed {
                        continue;
                    }
                    let adjacent = match adjacency {
                        Adjacency::Combinatorial => !rays.iter().enumerate().any(|(i, r)| {
                            i != p && i != n && r.zeros.is_superset(&common)
                        }),
                        Adjacency::Rank => {
                            let rows: Vec<&IVec> = common.iter().map(|i| &processed[i]).collect();
                            rank(&rows, dim) == needed
                        }
                    };
                    if !adjacent {
                        continue;
                    }
                    let v: IVec = rays[n]
                        .v
                        .iter()
                        .zip(&rays[p].v)
                        .map(|(nv, pv)| &signs[p] * nv - &signs[n] * pv)
                        .collect();
                    let mut zeros = common;
                    zeros.insert(k);
                    fresh.push(Ray { v: primitive(v), zeros });
                }
            }
            let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() + fresh.len());
            for (i, mut r) in rays.into_iter().enumerate() {
                if signs[i].is_negative() {
                    continue;
                }
                if signs[i].is_zero() {
                    r.zeros.insert(k);
                }
                kept.push(r);
            }
            kept.extend(fresh);
            rays = kept;
        }
        processed.push(a);
    }

    let mut out: Vec<IVec> = rays.into_iter().map(|r| r.v).collect();
    for l in lineality {
        out.push(l.iter().map(|v| -v).collect());
        out.push(l);
    }
    out.sort();
    out.dedup();
    out
}

/// Rank of integer row vectors (fraction-free elimination).
fn rank(rows: &[&IVec], dim: usize) -> usize {
    let mut m: Vec<IVec> = rows.iter().map(|r| (*r).clone()).collect();
    let mut r = 0;
    for c in 0..dim {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r].clone();
        for row in m.iter_mut().skip(r + 1) {
            let f = row[c].clone();
            if f.is_zero() {
                continue;
            }
            let v: IVec = row.iter().zip(&pivot).map(|(x, y)| &pivot[c] * x - &f * y).collect();
            *row = primitive(v);
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Integer basis of `{x : <e, x> = 0 for all e}`.
fn nullspace_basis(equations: &[LinearForm], dim: usize) -> Vec<IVec> {
    // Reduced row echelon form over the rationals.
    let mut m: Vec<Vec<Rational>> = equations.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..dim {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][c];
        m[r].iter_mut().for_each(|v| *v *= &inv);
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x -= &f * y;
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    (0..dim)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); dim];
            v[free] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&m[row][free];
            }
            primitive_integer_direction(&v)
        })
        .collect()
}
