//! Dense two-phase simplex over exact rationals.
//!
//! Bland's rule is used for both entering and leaving variables, so the
//! method terminates on degenerate problems. Problem sizes in this crate are
//! small (tens of rows), which makes a dense tableau adequate.

use num_traits::{One, Signed, Zero};

use crate::scalar::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug)]
struct Row {
    coeffs: Vec<Rational>,
    relation: Relation,
    rhs: Rational,
}

/// `maximize objective·x` subject to linear rows, `x ≥ 0` except for free variables.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    num_vars: usize,
    free: Vec<bool>,
    objective: Vec<Rational>,
    rows: Vec<Row>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible)
    }

    pub fn solution(&self) -> Option<&[Rational]> {
        match self {
            LpOutcome::Optimal { x, .. } => Some(x),
            _ => None,
        }
    }
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            free: vec![false; num_vars],
            objective: vec![Rational::zero(); num_vars],
            rows: Vec::new(),
        }
    }

    pub fn set_free(&mut self, var: usize) -> &mut Self {
        self.free[var] = true;
        self
    }

    pub fn set_all_free(&mut self) -> &mut Self {
        self.free.iter_mut().for_each(|f| *f = true);
        self
    }

    pub fn maximize(&mut self, objective: Vec<Rational>) -> &mut Self {
        assert_eq!(objective.len(), self.num_vars);
        self.objective = objective;
        self
    }

    pub fn constraint(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> &mut Self {
        assert_eq!(coeffs.len(), self.num_vars);
        self.rows.push(Row { coeffs, relation, rhs });
        self
    }

    pub fn solve(&self) -> LpOutcome {
        // Column layout: expanded structural columns, then slacks, then artificials.
        let mut col_of: Vec<(usize, Option<usize>)> = Vec::with_capacity(self.num_vars);
        let mut ncols = 0;
        for &f in &self.free {
            if f {
                col_of.push((ncols, Some(ncols + 1)));
                ncols += 2;
            } else {
                col_of.push((ncols, None));
                ncols += 1;
            }
        }
        let structural = ncols;

        let mut rows: Vec<(Vec<Rational>, Relation, Rational)> = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            let mut coeffs = vec![Rational::zero(); structural];
            for (j, a) in row.coeffs.iter().enumerate() {
                let (p, n) = col_of[j];
                coeffs[p] = a.clone();
                if let Some(n) = n {
                    coeffs[n] = -a.clone();
                }
            }
            let (mut rel, mut rhs) = (row.relation, row.rhs.clone());
            if rhs.is_negative() {
                coeffs.iter_mut().for_each(|c| *c = -c.clone());
                rhs = -rhs;
                rel = match rel {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
            }
            rows.push((coeffs, rel, rhs));
        }

        let num_slack = rows.iter().filter(|r| r.1 != Relation::Eq).count();
        let num_art = rows.iter().filter(|r| r.1 != Relation::Le).count();
        let total = structural + num_slack + num_art;
        let first_art = structural + num_slack;

        let m = rows.len();
        let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(m);
        let mut basis: Vec<usize> = Vec::with_capacity(m);
        let (mut s, mut a) = (structural, first_art);
        for (coeffs, rel, rhs) in rows {
            let mut t = coeffs;
            t.resize(total + 1, Rational::zero());
            t[total] = rhs;
            match rel {
                Relation::Le => {
                    t[s] = Rational::one();
                    basis.push(s);
                    s += 1;
                }
                Relation::Ge => {
                    t[s] = -Rational::one();
                    s += 1;
                    t[a] = Rational::one();
                    basis.push(a);
                    a += 1;
                }
                Relation::Eq => {
                    t[a] = Rational::one();
                    basis.push(a);
                    a += 1;
                }
            }
            tab.push(t);
        }

        let mut tableau = Tableau { tab, basis, total };

        if num_art > 0 {
            let phase1: Vec<Rational> =
                (0..total).map(|j| if j >= first_art { -Rational::one() } else { Rational::zero() }).collect();
            // Phase 1 is bounded above by zero.
            tableau.optimize(&phase1, total);
            if tableau.objective_value(&phase1).is_negative() {
                return LpOutcome::Infeasible;
            }
            tableau.expel_artificials(first_art);
        }

        let mut objective = vec![Rational::zero(); total];
        for (j, c) in self.objective.iter().enumerate() {
            let (p, n) = col_of[j];
            objective[p] = c.clone();
            if let Some(n) = n {
                objective[n] = -c.clone();
            }
        }
        if !tableau.optimize(&objective, first_art) {
            return LpOutcome::Unbounded;
        }

        let values = tableau.values();
        let x: Vec<Rational> = col_of
            .iter()
            .map(|&(p, n)| match n {
                Some(n) => &values[p] - &values[n],
                None => values[p].clone(),
            })
            .collect();
        let value = self.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
        LpOutcome::Optimal { x, value }
    }
}

struct Tableau {
    tab: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    total: usize,
}

impl Tableau {
    fn objective_value(&self, c: &[Rational]) -> Rational {
        self.basis.iter().zip(&self.tab).map(|(&b, row)| &c[b] * &row[self.total]).sum()
    }

    fn values(&self) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.total];
        for (&b, row) in self.basis.iter().zip(&self.tab) {
            v[b] = row[self.total].clone();
        }
        v
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Rational::one() / &self.tab[r][c];
        for x in self.tab[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = self.tab[r].clone();
        for (i, row) in self.tab.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `c` using columns `< allowed`. Returns false if unbounded.
    fn optimize(&mut self, c: &[Rational], allowed: usize) -> bool {
        loop {
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let reduced: Rational =
                    &c[j] - self.basis.iter().zip(&self.tab).map(|(&b, row)| &c[b] * &row[j]).sum::<Rational>();
                reduced.is_positive()
            });
            let Some(j) = entering else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.tab.iter().enumerate() {
                if row[j].is_positive() {
                    let ratio = &row[self.total] / &row[j];
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((r, _)) = leave else {
                return false;
            };
            self.pivot(r, j);
        }
    }

    /// After a feasible phase 1, pivots zero-level artificials out of the basis
    /// and drops rows that turn out to be redundant.
    fn expel_artificials(&mut self, first_art: usize) {
        let mut i = 0;
        while i < self.tab.len() {
            if self.basis[i] >= first_art {
                match (0..first_art).find(|&j| !self.tab[i][j].is_zero()) {
                    Some(j) => {
                        self.pivot(i, j);
                        i += 1;
                    }
                    None => {
                        self.tab.remove(i);
                        self.basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, int_vec, rat};

    #[test]
    fn textbook_maximum() {
        // max 3x + 5y, x ≤ 4, 2y ≤ 12, 3x + 2y ≤ 18 → (2, 6), 36
        let mut lp = LinearProgram::new(2);
        lp.maximize(int_vec(&[3, 5]))
            .constraint(int_vec(&[1, 0]), Relation::Le, int(4))
            .constraint(int_vec(&[0, 2]), Relation::Le, int(12))
            .constraint(int_vec(&[3, 2]), Relation::Le, int(18));
        assert_eq!(lp.solve(), LpOutcome::Optimal { x: int_vec(&[2, 6]), value: int(36) });
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(1);
        lp.constraint(int_vec(&[1]), Relation::Ge, int(2)).constraint(int_vec(&[1]), Relation::Le, int(1));
        assert_eq!(lp.solve(), LpOutcome::Infeasible);

        let mut lp = LinearProgram::new(1);
        lp.maximize(int_vec(&[1])).constraint(int_vec(&[1]), Relation::Ge, int(0));
        assert_eq!(lp.solve(), LpOutcome::Unbounded);
    }

    #[test]
    fn free_variables_and_equalities() {
        // min x subject to x = -3/2 (free) → maximize -x
        let mut lp = LinearProgram::new(1);
        lp.set_free(0).maximize(int_vec(&[-1])).constraint(int_vec(&[2]), Relation::Eq, int(-3));
        assert_eq!(lp.solve(), LpOutcome::Optimal { x: vec![rat(-3, 2)], value: rat(3, 2) });
    }

    #[test]
    fn redundant_equalities_are_dropped() {
        let mut lp = LinearProgram::new(2);
        lp.maximize(int_vec(&[1, 1]))
            .constraint(int_vec(&[1, 1]), Relation::Eq, int(1))
            .constraint(int_vec(&[2, 2]), Relation::Eq, int(2));
        match lp.solve() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, int(1)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn degenerate_problem_terminates() {
        // Classic cycling example (Beale); Bland's rule must terminate.
        let mut lp = LinearProgram::new(4);
        lp.maximize(vec![rat(3, 4), int(-150), rat(1, 50), int(-6)])
            .constraint(vec![rat(1, 4), int(-60), rat(-1, 25), int(9)], Relation::Le, int(0))
            .constraint(vec![rat(1, 2), int(-90), rat(-1, 50), int(3)], Relation::Le, int(0))
            .constraint(int_vec(&[0, 0, 1, 0]), Relation::Le, int(1));
        match lp.solve() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, rat(1, 20)),
            other => panic!("unexpected {other:?}"),
        }
    }
}
