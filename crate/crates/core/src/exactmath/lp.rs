//! Dense two-phase simplex over exact rationals, Bland's rule throughout.
//!
//! Every outcome carries something checkable: an optimal point, a Farkas
//! multiplier vector for infeasibility, or a feasible point plus improving ray
//! for unboundedness.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{serde_rational, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    #[serde(with = "serde_rational::vec")]
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    #[serde(with = "serde_rational")]
    pub rhs: Rational,
}

/// `sense objective·x` subject to the constraints and `x_j ≥ lower_bounds[j]`
/// (`None` leaves `x_j` free).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpProblem {
    pub sense: Sense,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    pub lower_bounds: Vec<Option<Rational>>,
}

/// Multipliers `y`, one per constraint, proving infeasibility.
///
/// Valid when `y_i ≥ 0` on `≤` rows, `y_i ≤ 0` on `≥` rows, and with
/// `c = Σ y_i a_i`: `c_j = 0` for free variables, `c_j ≥ 0` for bounded ones,
/// and `Σ c_j l_j > y·b`. Any feasible `x` would give `c·x ≤ y·b` and
/// `c·x ≥ Σ c_j l_j` at once.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FarkasCertificate {
    #[serde(with = "serde_rational::vec")]
    pub multipliers: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnboundedRay {
    #[serde(with = "serde_rational::vec")]
    pub point: Vec<Rational>,
    #[serde(with = "serde_rational::vec")]
    pub direction: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible(FarkasCertificate),
    Unbounded(UnboundedRay),
    Optimal { value: Rational, point: Vec<Rational> },
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible(_))
    }

    pub fn optimal(&self) -> Option<(&Rational, &[Rational])> {
        match self {
            LpOutcome::Optimal { value, point } => Some((value, point)),
            _ => None,
        }
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl LpProblem {
    /// All variables default to `x_j ≥ 0`.
    pub fn new(sense: Sense, objective: Vec<Rational>) -> Self {
        let n = objective.len();
        Self {
            sense,
            objective,
            constraints: Vec::new(),
            lower_bounds: vec![Some(Rational::zero()); n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn constrain(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn set_free(&mut self, var: usize) {
        self.lower_bounds[var] = None;
    }

    pub fn set_lower_bound(&mut self, var: usize, bound: Rational) {
        self.lower_bounds[var] = Some(bound);
    }

    fn check_dimensions(&self) -> Result<()> {
        let n = self.num_vars();
        if self.lower_bounds.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} lower bounds for {n} variables",
                self.lower_bounds.len()
            )));
        }
        for (i, c) in self.constraints.iter().enumerate() {
            if c.coeffs.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "constraint {i} has {} coefficients, expected {n}",
                    c.coeffs.len()
                )));
            }
        }
        Ok(())
    }

    /// Exact feasibility test for a candidate point.
    pub fn is_feasible_point(&self, x: &[Rational]) -> bool {
        if x.len() != self.num_vars() {
            return false;
        }
        let bounds_ok = self
            .lower_bounds
            .iter()
            .zip(x)
            .all(|(lb, xi)| lb.as_ref().is_none_or(|l| xi >= l));
        bounds_ok
            && self.constraints.iter().all(|c| {
                let lhs = dot(&c.coeffs, x);
                match c.relation {
                    Relation::Le => lhs <= c.rhs,
                    Relation::Eq => lhs == c.rhs,
                    Relation::Ge => lhs >= c.rhs,
                }
            })
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        dot(&self.objective, x)
    }

    /// Exact check of a Farkas certificate against this problem.
    pub fn verify_farkas(&self, cert: &FarkasCertificate) -> bool {
        let y = &cert.multipliers;
        if y.len() != self.constraints.len() {
            return false;
        }
        let signs_ok = self.constraints.iter().zip(y).all(|(c, yi)| match c.relation {
            Relation::Le => !yi.is_negative(),
            Relation::Ge => !yi.is_positive(),
            Relation::Eq => true,
        });
        if !signs_ok {
            return false;
        }
        let n = self.num_vars();
        let mut combo = vec![Rational::zero(); n];
        let mut yb = Rational::zero();
        for (c, yi) in self.constraints.iter().zip(y) {
            for (acc, a) in combo.iter_mut().zip(&c.coeffs) {
                *acc += yi * a;
            }
            yb += yi * &c.rhs;
        }
        let mut floor = Rational::zero();
        for (cj, lb) in combo.iter().zip(&self.lower_bounds) {
            match lb {
                None if !cj.is_zero() => return false,
                None => {}
                Some(_) if cj.is_negative() => return false,
                Some(l) => floor += cj * l,
            }
        }
        floor > yb
    }

    /// Exact check of an unboundedness witness.
    pub fn verify_ray(&self, ray: &UnboundedRay) -> bool {
        let d = &ray.direction;
        if !self.is_feasible_point(&ray.point) || d.len() != self.num_vars() {
            return false;
        }
        let cone_ok = self
            .lower_bounds
            .iter()
            .zip(d)
            .all(|(lb, dj)| lb.is_none() || !dj.is_negative())
            && self.constraints.iter().all(|c| {
                let lhs = dot(&c.coeffs, d);
                match c.relation {
                    Relation::Le => !lhs.is_positive(),
                    Relation::Eq => lhs.is_zero(),
                    Relation::Ge => !lhs.is_negative(),
                }
            });
        let gain = dot(&self.objective, d);
        cone_ok
            && match self.sense {
                Sense::Maximize => gain.is_positive(),
                Sense::Minimize => gain.is_negative(),
            }
    }
}

/// How an original variable maps onto standard-form columns.
#[derive(Clone, Copy)]
enum VarMap {
    Shifted(usize),
    Split(usize, usize),
}

struct Tableau {
    /// rows × (cols + 1); the last entry of each row is the right-hand side.
    t: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    cols: usize,
}

enum PhaseEnd {
    Optimal,
    Unbounded(usize),
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.t[row][col].clone();
        if !p.is_one() {
            for x in self.t[row].iter_mut() {
                *x /= &p;
            }
        }
        let pivot_row = self.t[row].clone();
        for (i, r) in self.t.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for (x, pv) in r.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *x -= &f * pv;
                }
            }
        }
        self.basis[row] = col;
    }

    fn reduced_cost(&self, costs: &[Rational], j: usize) -> Rational {
        let mut d = costs[j].clone();
        for (i, &b) in self.basis.iter().enumerate() {
            if !costs[b].is_zero() && !self.t[i][j].is_zero() {
                d -= &costs[b] * &self.t[i][j];
            }
        }
        d
    }

    /// Minimizes `costs·x` from the current basis with Bland's rule.
    fn run(&mut self, costs: &[Rational], allowed: &[bool]) -> PhaseEnd {
        let rhs = self.cols;
        loop {
            let entering = (0..self.cols).find(|&j| {
                allowed[j] && !self.basis.contains(&j) && self.reduced_cost(costs, j).is_negative()
            });
            let Some(col) = entering else {
                return PhaseEnd::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.t.len() {
                let a = &self.t[i][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.t[i][rhs] / a;
                let better = match &leave {
                    None => true,
                    Some((li, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((row, _)) => self.pivot(row, col),
                None => return PhaseEnd::Unbounded(col),
            }
        }
    }

    fn column_values(&self) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.cols];
        for (i, &b) in self.basis.iter().enumerate() {
            x[b] = self.t[i][self.cols].clone();
        }
        x
    }
}

/// Solves `p` exactly.
pub fn lp_solve(p: &LpProblem) -> Result<LpOutcome> {
    p.check_dimensions()?;
    let n = p.num_vars();
    let m = p.constraints.len();

    let mut maps = Vec::with_capacity(n);
    let mut ns = 0;
    for lb in &p.lower_bounds {
        if lb.is_some() {
            maps.push(VarMap::Shifted(ns));
            ns += 1;
        } else {
            maps.push(VarMap::Split(ns, ns + 1));
            ns += 2;
        }
    }
    let slack_rows: Vec<usize> = (0..m)
        .filter(|&i| p.constraints[i].relation != Relation::Eq)
        .collect();
    let nslack = slack_rows.len();
    let art0 = ns + nslack;
    let cols = art0 + m;

    let mut t = vec![vec![Rational::zero(); cols + 1]; m];
    let mut row_sign = vec![Rational::one(); m];
    for (i, c) in p.constraints.iter().enumerate() {
        let row = &mut t[i];
        let mut rhs = c.rhs.clone();
        for (j, a) in c.coeffs.iter().enumerate() {
            match (maps[j], &p.lower_bounds[j]) {
                (VarMap::Shifted(k), Some(l)) => {
                    row[k] = a.clone();
                    rhs -= a * l;
                }
                (VarMap::Split(k, k2), _) => {
                    row[k] = a.clone();
                    row[k2] = -a.clone();
                }
                _ => unreachable!(),
            }
        }
        if let Some(s) = slack_rows.iter().position(|&r| r == i) {
            row[ns + s] = match c.relation {
                Relation::Le => Rational::one(),
                _ => -Rational::one(),
            };
        }
        row[cols] = rhs;
        if row[cols].is_negative() {
            for x in row.iter_mut() {
                *x = -std::mem::take(x);
            }
            row_sign[i] = -Rational::one();
        }
        row[art0 + i] = Rational::one();
    }
    let mut tab = Tableau {
        t,
        basis: (art0..cols).collect(),
        cols,
    };

    // Phase 1: minimize the sum of artificials.
    let mut phase1 = vec![Rational::zero(); cols];
    for c in phase1.iter_mut().skip(art0) {
        *c = Rational::one();
    }
    let everything = vec![true; cols];
    tab.run(&phase1, &everything);
    let infeasibility: Rational = tab
        .basis
        .iter()
        .enumerate()
        .filter(|(_, &b)| b >= art0)
        .map(|(i, _)| tab.t[i][cols].clone())
        .sum();
    if infeasibility.is_positive() {
        // Phase-1 duals π_k = Σ_i c_B(i)·(B⁻¹)_{ik}; B⁻¹ sits in the artificial columns.
        let multipliers = (0..m)
            .map(|k| {
                let pi: Rational = tab
                    .basis
                    .iter()
                    .enumerate()
                    .map(|(i, &b)| &phase1[b] * &tab.t[i][art0 + k])
                    .sum();
                -(pi * &row_sign[k])
            })
            .collect();
        return Ok(LpOutcome::Infeasible(FarkasCertificate { multipliers }));
    }

    // Drive zero-level artificials out of the basis where possible.
    for i in 0..m {
        if tab.basis[i] >= art0 {
            if let Some(j) = (0..art0).find(|&j| !tab.t[i][j].is_zero() && !tab.basis.contains(&j)) {
                tab.pivot(i, j);
            }
        }
    }

    // Phase 2 on the real objective, as a minimization.
    let mut costs = vec![Rational::zero(); cols];
    for (j, c) in p.objective.iter().enumerate() {
        let c = match p.sense {
            Sense::Minimize => c.clone(),
            Sense::Maximize => -c.clone(),
        };
        match maps[j] {
            VarMap::Shifted(k) => costs[k] = c,
            VarMap::Split(k, k2) => {
                costs[k] = c.clone();
                costs[k2] = -c;
            }
        }
    }
    let allowed: Vec<bool> = (0..cols).map(|j| j < art0).collect();
    let end = tab.run(&costs, &allowed);

    let to_original = |cols_x: &[Rational], shift: bool| -> Vec<Rational> {
        maps.iter()
            .zip(&p.lower_bounds)
            .map(|(map, lb)| match (map, lb) {
                (VarMap::Shifted(k), Some(l)) if shift => &cols_x[*k] + l,
                (VarMap::Shifted(k), _) => cols_x[*k].clone(),
                (VarMap::Split(k, k2), _) => &cols_x[*k] - &cols_x[*k2],
            })
            .collect()
    };
    let x_cols = tab.column_values();
    let point = to_original(&x_cols, true);
    match end {
        PhaseEnd::Optimal => {
            let value = p.objective_value(&point);
            Ok(LpOutcome::Optimal { value, point })
        }
        PhaseEnd::Unbounded(col) => {
            let mut dir = vec![Rational::zero(); cols];
            dir[col] = Rational::one();
            for (i, &b) in tab.basis.iter().enumerate() {
                dir[b] = -tab.t[i][col].clone();
            }
            Ok(LpOutcome::Unbounded(UnboundedRay {
                point,
                direction: to_original(&dir, false),
            }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat};

    #[test]
    fn bounded_maximum() {
        let mut p = LpProblem::new(Sense::Maximize, vec![int(1)]);
        p.constrain(vec![int(1)], Relation::Le, int(1));
        let out = lp_solve(&p).unwrap();
        let (v, x) = out.optimal().unwrap();
        assert_eq!(*v, int(1));
        assert!(p.is_feasible_point(x));
    }

    #[test]
    fn infeasible_with_certificate() {
        let mut p = LpProblem::new(Sense::Maximize, vec![int(1)]);
        p.constrain(vec![int(1)], Relation::Le, int(-1));
        match lp_solve(&p).unwrap() {
            LpOutcome::Infeasible(cert) => assert!(p.verify_farkas(&cert)),
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn unbounded_with_ray() {
        let mut p = LpProblem::new(Sense::Maximize, vec![int(1), int(1)]);
        p.constrain(vec![int(1), int(-1)], Relation::Le, int(2));
        match lp_solve(&p).unwrap() {
            LpOutcome::Unbounded(ray) => assert!(p.verify_ray(&ray)),
            other => panic!("expected unbounded, got {other:?}"),
        }
    }

    #[test]
    fn free_variables_and_equalities() {
        // minimize x + y with x - y = 3, x free, y ≥ -2
        let mut p = LpProblem::new(Sense::Minimize, vec![int(1), int(1)]);
        p.set_free(0);
        p.set_lower_bound(1, int(-2));
        p.constrain(vec![int(1), int(-1)], Relation::Eq, int(3));
        let out = lp_solve(&p).unwrap();
        let (v, x) = out.optimal().unwrap();
        assert_eq!(*v, int(-1));
        assert_eq!(x, &[int(1), int(-2)]);
    }

    #[test]
    fn fractional_optimum() {
        // max 3x + 2y with x + y ≤ 4 and 3x + y ≤ 7
        let mut p = LpProblem::new(Sense::Maximize, vec![int(3), int(2)]);
        p.constrain(vec![int(1), int(1)], Relation::Le, int(4));
        p.constrain(vec![int(3), int(1)], Relation::Le, int(7));
        let out = lp_solve(&p).unwrap();
        let (v, x) = out.optimal().unwrap();
        assert_eq!(x, &[rat(3, 2), rat(5, 2)]);
        assert_eq!(*v, rat(19, 2));
    }

    #[test]
    fn dimension_mismatch() {
        let mut p = LpProblem::new(Sense::Maximize, vec![int(1)]);
        p.constrain(vec![int(1), int(2)], Relation::Le, int(1));
        assert!(matches!(lp_solve(&p), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn degenerate_redundant_rows() {
        // x + y = 1 twice: one artificial stays basic at zero
        let mut p = LpProblem::new(Sense::Maximize, vec![int(1), int(0)]);
        p.constrain(vec![int(1), int(1)], Relation::Eq, int(1));
        p.constrain(vec![int(2), int(2)], Relation::Eq, int(2));
        let (v, x) = lp_solve(&p).unwrap().optimal().map(|(v, x)| (v.clone(), x.to_vec())).unwrap();
        assert_eq!(v, int(1));
        assert!(p.is_feasible_point(&x));
    }
}
