//! Exact rational linear programming.
//!
//! A dense two-phase simplex over [`Rational`] using Bland's rule, so it
//! always terminates. All variables are constrained to be non-negative.
//! Every verdict carries data that can be re-checked exactly:
//! a feasible point, or a feasible point plus an improving recession ray.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearConstraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// Non-negative solution values, one per variable.
#[derive(Debug, Clone, PartialEq)]
pub struct LpWitness {
    pub values: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    /// A feasible point; optimal when the program has an objective.
    Feasible(LpWitness),
    /// The objective grows without bound along `ray` starting from `point`.
    Unbounded {
        point: Vec<Rational>,
        ray: Vec<Rational>,
    },
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible)
    }
}

/// `maximize objective · x  s.t.  constraints, x >= 0`.
#[derive(Debug, Clone, Default)]
pub struct LinearProgram {
    n_vars: usize,
    constraints: Vec<LinearConstraint>,
    objective: Option<Vec<Rational>>,
}

impl LinearProgram {
    pub fn new(n_vars: usize) -> Self {
        LinearProgram {
            n_vars,
            constraints: Vec::new(),
            objective: None,
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn constraints(&self) -> &[LinearConstraint] {
        &self.constraints
    }

    pub fn add(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Result<()> {
        if coeffs.len() != self.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars,
                found: coeffs.len(),
            });
        }
        self.constraints.push(LinearConstraint {
            coeffs,
            relation,
            rhs,
        });
        Ok(())
    }

    pub fn maximize(&mut self, objective: Vec<Rational>) -> Result<()> {
        if objective.len() != self.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars,
                found: objective.len(),
            });
        }
        self.objective = Some(objective);
        Ok(())
    }

    /// Exact check that `x` satisfies every constraint and `x >= 0`.
    pub fn satisfies(&self, x: &[Rational]) -> bool {
        x.len() == self.n_vars
            && x.iter().all(|v| !v.is_negative())
            && self.constraints.iter().all(|c| {
                let lhs = dot(&c.coeffs, x);
                match c.relation {
                    Relation::Le => lhs <= c.rhs,
                    Relation::Ge => lhs >= c.rhs,
                    Relation::Eq => lhs == c.rhs,
                }
            })
    }

    /// Exact check that `ray` is a recession direction improving the objective.
    pub fn is_improving_ray(&self, ray: &[Rational]) -> bool {
        let Some(obj) = &self.objective else {
            return false;
        };
        ray.len() == self.n_vars
            && ray.iter().all(|v| !v.is_negative())
            && dot(obj, ray).is_positive()
            && self.constraints.iter().all(|c| {
                let lhs = dot(&c.coeffs, ray);
                match c.relation {
                    Relation::Le => !lhs.is_positive(),
                    Relation::Ge => !lhs.is_negative(),
                    Relation::Eq => lhs.is_zero(),
                }
            })
    }

    pub fn solve(&self) -> LpOutcome {
        Tableau::build(self).run(self.objective.as_deref())
    }
}

/// Feasibility over non-negative variables with `equalities` (a·x = b),
/// `inequalities` (a·x <= b) and an optional objective to maximize.
pub fn lp_feasible(
    n_vars: usize,
    equalities: &[(Vec<Rational>, Rational)],
    inequalities: &[(Vec<Rational>, Rational)],
    objective: Option<Vec<Rational>>,
) -> Result<LpOutcome> {
    let mut lp = LinearProgram::new(n_vars);
    for (a, b) in equalities {
        lp.add(a.clone(), Relation::Eq, b.clone())?;
    }
    for (a, b) in inequalities {
        lp.add(a.clone(), Relation::Le, b.clone())?;
    }
    if let Some(obj) = objective {
        lp.maximize(obj)?;
    }
    Ok(lp.solve())
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

struct Tableau {
    n_orig: usize,
    n_cols: usize,
    /// First artificial column; columns `>= art_start` are artificial.
    art_start: usize,
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let n = lp.n_vars;
        let n_slack = lp
            .constraints
            .iter()
            .filter(|c| c.relation != Relation::Eq)
            .count();
        // Rows are normalized to rhs >= 0. A `<=` row with rhs >= 0 keeps its
        // slack as initial basic variable; all others need an artificial.
        let normalized: Vec<(Vec<Rational>, Relation, Rational)> = lp
            .constraints
            .iter()
            .map(|c| {
                if c.rhs.is_negative() {
                    let flipped = match c.relation {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    };
                    (c.coeffs.iter().map(|v| -v).collect(), flipped, -&c.rhs)
                } else {
                    (c.coeffs.clone(), c.relation, c.rhs.clone())
                }
            })
            .collect();
        let n_art = normalized
            .iter()
            .filter(|(_, rel, _)| *rel != Relation::Le)
            .count();
        let art_start = n + n_slack;
        let n_cols = art_start + n_art;
        let mut rows = Vec::with_capacity(normalized.len());
        let mut basis = Vec::with_capacity(normalized.len());
        let (mut slack, mut art) = (n, art_start);
        for (coeffs, rel, rhs) in normalized {
            let mut row = vec![Rational::zero(); n_cols + 1];
            row[..n].clone_from_slice(&coeffs);
            row[n_cols] = rhs;
            match rel {
                Relation::Le => {
                    row[slack] = Rational::one();
                    basis.push(slack);
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -Rational::one();
                    slack += 1;
                    row[art] = Rational::one();
                    basis.push(art);
                    art += 1;
                }
                Relation::Eq => {
                    row[art] = Rational::one();
                    basis.push(art);
                    art += 1;
                }
            }
            rows.push(row);
        }
        Tableau {
            n_orig: n,
            n_cols,
            art_start,
            rows,
            basis,
        }
    }

    fn rhs(&self) -> usize {
        self.n_cols
    }

    fn pivot(&mut self, r: usize, c: usize, cost: &mut [Rational]) {
        let inv = Rational::one() / &self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pivot_row = self.rows[r].clone();
        let eliminate = |row: &mut [Rational]| {
            let factor = row[c].clone();
            if factor.is_zero() {
                return;
            }
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(cost);
        self.basis[r] = c;
    }

    /// Reduced-cost row for minimizing `c · x`; the last entry holds minus
    /// the current objective value.
    fn cost_row(&self, c: &[Rational]) -> Vec<Rational> {
        let mut cost: Vec<Rational> = c.to_vec();
        cost.push(Rational::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &c[b];
            if cb.is_zero() {
                continue;
            }
            for (v, t) in cost.iter_mut().zip(row) {
                if !t.is_zero() {
                    *v -= cb * t;
                }
            }
        }
        cost
    }

    /// Runs Bland-rule iterations minimizing the given cost row. Returns the
    /// unbounded entering column, if any.
    fn iterate(&mut self, cost: &mut [Rational], allowed: usize) -> Option<usize> {
        let rhs = self.rhs();
        loop {
            let entering = (0..allowed).find(|&j| cost[j].is_negative())?;
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[entering].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[entering];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                None => return Some(entering),
                Some((r, _)) => self.pivot(r, entering, cost),
            }
        }
    }

    fn point(&self) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.n_orig];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if b < self.n_orig {
                x[b] = row[self.rhs()].clone();
            }
        }
        x
    }

    fn run(mut self, objective: Option<&[Rational]>) -> LpOutcome {
        // Phase 1: minimize the sum of artificials.
        if self.art_start < self.n_cols {
            let mut c1 = vec![Rational::zero(); self.n_cols];
            for v in &mut c1[self.art_start..] {
                *v = Rational::one();
            }
            let mut cost = self.cost_row(&c1);
            let unbounded = self.iterate(&mut cost, self.n_cols);
            debug_assert!(unbounded.is_none(), "phase 1 is bounded below by zero");
            if !cost[self.rhs()].is_zero() {
                return LpOutcome::Infeasible;
            }
            self.expel_artificials();
        }

        let Some(obj) = objective else {
            return LpOutcome::Feasible(LpWitness {
                values: self.point(),
            });
        };
        let mut c2 = vec![Rational::zero(); self.n_cols];
        for (v, o) in c2.iter_mut().zip(obj) {
            *v = -o;
        }
        let mut cost = self.cost_row(&c2);
        match self.iterate(&mut cost, self.art_start) {
            None => LpOutcome::Feasible(LpWitness {
                values: self.point(),
            }),
            Some(entering) => {
                let mut ray = vec![Rational::zero(); self.n_orig];
                if entering < self.n_orig {
                    ray[entering] = Rational::one();
                }
                for (row, &b) in self.rows.iter().zip(&self.basis) {
                    if b < self.n_orig {
                        ray[b] = -&row[entering];
                    }
                }
                LpOutcome::Unbounded {
                    point: self.point(),
                    ray,
                }
            }
        }
    }

    /// Pivots zero-valued artificials out of the basis after phase 1 and drops
    /// rows that turn out to be redundant.
    fn expel_artificials(&mut self) {
        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] >= self.art_start {
                let col = (0..self.art_start).find(|&j| !self.rows[r][j].is_zero());
                match col {
                    Some(j) => {
                        let mut dummy = vec![Rational::zero(); self.n_cols + 1];
                        self.pivot(r, j, &mut dummy);
                    }
                    None => {
                        self.rows.remove(r);
                        self.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn single_generator_cannot_sum_to_zero() {
        // λ >= 0, λ = 1, λ·1 = 0
        let out = lp_feasible(1, &[(v(&[1]), int(1)), (v(&[1]), int(0))], &[], None).unwrap();
        assert_eq!(out, LpOutcome::Infeasible);
    }

    #[test]
    fn opposite_generators_balance() {
        // λ1(1,-1) + λ2(-1,1) = 0, λ1 + λ2 = 1
        let eqs = [
            (v(&[1, -1]), int(0)),
            (v(&[-1, 1]), int(0)),
            (v(&[1, 1]), int(1)),
        ];
        match lp_feasible(2, &eqs, &[], None).unwrap() {
            LpOutcome::Feasible(w) => assert_eq!(w.values, vec![ratio(1, 2), ratio(1, 2)]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unbounded_ray_certificate() {
        // maximize δ s.t. (1,0) - δ(0,1) = λ1 (1,0) + λ2 (0,-1); vars (λ1, λ2, δ)
        let mut lp = LinearProgram::new(3);
        lp.add(v(&[1, 0, 0]), Relation::Eq, int(1)).unwrap();
        lp.add(v(&[0, -1, 1]), Relation::Eq, int(0)).unwrap();
        lp.maximize(v(&[0, 0, 1])).unwrap();
        match lp.solve() {
            LpOutcome::Unbounded { point, ray } => {
                assert!(lp.satisfies(&point));
                assert!(lp.is_improving_ray(&ray));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bounded_optimum() {
        // maximize x + y s.t. x + 2y <= 4, 3x + y <= 6
        let mut lp = LinearProgram::new(2);
        lp.add(v(&[1, 2]), Relation::Le, int(4)).unwrap();
        lp.add(v(&[3, 1]), Relation::Le, int(6)).unwrap();
        lp.maximize(v(&[1, 1])).unwrap();
        match lp.solve() {
            LpOutcome::Feasible(w) => assert_eq!(w.values, vec![ratio(8, 5), ratio(6, 5)]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn negative_rhs_and_ge_rows() {
        // x - y >= 1, x + y <= 3, -x <= -2  → x in [2,3]
        let mut lp = LinearProgram::new(2);
        lp.add(v(&[1, -1]), Relation::Ge, int(1)).unwrap();
        lp.add(v(&[1, 1]), Relation::Le, int(3)).unwrap();
        lp.add(v(&[-1, 0]), Relation::Le, int(-2)).unwrap();
        lp.maximize(v(&[0, 1])).unwrap();
        match lp.solve() {
            LpOutcome::Feasible(w) => {
                assert!(lp.satisfies(&w.values));
                assert_eq!(w.values[1], int(1));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn redundant_equalities() {
        let eqs = [(v(&[1, 1]), int(2)), (v(&[2, 2]), int(4))];
        let out = lp_feasible(2, &eqs, &[], Some(v(&[1, 0]))).unwrap();
        assert_eq!(out, LpOutcome::Feasible(LpWitness { values: v(&[2, 0]) }));
    }

    #[test]
    fn dimension_mismatch() {
        assert!(matches!(
            lp_feasible(2, &[(v(&[1]), int(0))], &[], None),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
