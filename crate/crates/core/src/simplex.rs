//! Exact two-phase simplex over `Q` with Bland's rule.

use num_traits::{One, Signed, Zero};

use crate::lattice::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug)]
struct Constraint {
    coeffs: Vec<Rational>,
    relation: Relation,
    rhs: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Rational, point: Vec<Rational> },
}

/// `maximize c·x` subject to linear constraints; variables are nonnegative
/// unless marked free.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    num_vars: usize,
    free: Vec<bool>,
    constraints: Vec<Constraint>,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            free: vec![false; num_vars],
            constraints: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn set_free(&mut self, var: usize) {
        self.free[var] = true;
    }

    pub fn add(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        assert_eq!(coeffs.len(), self.num_vars, "constraint width");
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    /// Adds `Σ coeff·x_var (rel) rhs` from sparse terms.
    pub fn add_sparse(&mut self, terms: &[(usize, Rational)], relation: Relation, rhs: Rational) {
        let mut coeffs = vec![Rational::zero(); self.num_vars];
        for (v, c) in terms {
            coeffs[*v] += c;
        }
        self.add(coeffs, relation, rhs);
    }

    pub fn feasible_point(&self) -> Option<Vec<Rational>> {
        match self.maximize(&vec![Rational::zero(); self.num_vars]) {
            LpOutcome::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }

    pub fn maximize(&self, objective: &[Rational]) -> LpOutcome {
        assert_eq!(objective.len(), self.num_vars, "objective width");
        // Column layout: one column per nonnegative variable, two per free
        // variable, then slacks, then artificials.
        let mut var_cols: Vec<(usize, Option<usize>)> = Vec::with_capacity(self.num_vars);
        let mut ncols = 0;
        for &f in &self.free {
            if f {
                var_cols.push((ncols, Some(ncols + 1)));
                ncols += 2;
            } else {
                var_cols.push((ncols, None));
                ncols += 1;
            }
        }
        let structural = ncols;

        let m = self.constraints.len();
        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
        let mut relations = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        for c in &self.constraints {
            let mut row = vec![Rational::zero(); structural];
            for (v, coeff) in c.coeffs.iter().enumerate() {
                let (pos, neg) = var_cols[v];
                row[pos] = coeff.clone();
                if let Some(neg) = neg {
                    row[neg] = -coeff.clone();
                }
            }
            let (mut rel, mut b) = (c.relation, c.rhs.clone());
            if b.is_negative() {
                for x in &mut row {
                    *x = -x.clone();
                }
                b = -b;
                rel = match rel {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
            }
            rows.push(row);
            relations.push(rel);
            rhs.push(b);
        }

        let slack_count = relations.iter().filter(|r| **r != Relation::Eq).count();
        let art_count = relations.iter().filter(|r| **r != Relation::Le).count();
        let total = structural + slack_count + art_count;
        let mut tableau: Vec<Vec<Rational>> = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut next_slack = structural;
        let mut next_art = structural + slack_count;
        for i in 0..m {
            let mut row = vec![Rational::zero(); total + 1];
            row[..structural].clone_from_slice(&rows[i]);
            row[total] = rhs[i].clone();
            match relations[i] {
                Relation::Le => {
                    row[next_slack] = Rational::one();
                    basis.push(next_slack);
                    next_slack += 1;
                }
                Relation::Ge => {
                    row[next_slack] = -Rational::one();
                    next_slack += 1;
                    row[next_art] = Rational::one();
                    basis.push(next_art);
                    next_art += 1;
                }
                Relation::Eq => {
                    row[next_art] = Rational::one();
                    basis.push(next_art);
                    next_art += 1;
                }
            }
            tableau.push(row);
        }
        let art_start = structural + slack_count;

        let mut tab = Tableau {
            rows: tableau,
            basis,
            width: total,
        };

        if art_count > 0 {
            let mut cost = vec![Rational::zero(); total];
            for c in cost.iter_mut().skip(art_start) {
                *c = Rational::one();
            }
            let allowed: Vec<bool> = vec![true; total];
            tab.minimize(&cost, &allowed)
                .expect("phase one is bounded below");
            let phase_one: Rational = tab
                .rows
                .iter()
                .zip(&tab.basis)
                .filter(|(_, &b)| b >= art_start)
                .map(|(r, _)| r[total].clone())
                .fold(Rational::zero(), |a, b| a + b);
            if !phase_one.is_zero() {
                return LpOutcome::Infeasible;
            }
            // Drive remaining (zero-valued) artificials out of the basis.
            let mut i = 0;
            while i < tab.rows.len() {
                if tab.basis[i] >= art_start {
                    match (0..art_start).find(|&j| !tab.rows[i][j].is_zero()) {
                        Some(j) => {
                            tab.pivot(i, j);
                            i += 1;
                        }
                        None => {
                            tab.rows.remove(i);
                            tab.basis.remove(i);
                        }
                    }
                } else {
                    i += 1;
                }
            }
        }

        let mut cost = vec![Rational::zero(); total];
        for (v, obj) in objective.iter().enumerate() {
            let (pos, neg) = var_cols[v];
            cost[pos] = -obj.clone();
            if let Some(neg) = neg {
                cost[neg] = obj.clone();
            }
        }
        let allowed: Vec<bool> = (0..total).map(|j| j < art_start).collect();
        if tab.minimize(&cost, &allowed).is_err() {
            return LpOutcome::Unbounded;
        }

        let mut values = vec![Rational::zero(); total];
        for (row, &b) in tab.rows.iter().zip(&tab.basis) {
            values[b] = row[total].clone();
        }
        let point: Vec<Rational> = var_cols
            .iter()
            .map(|&(pos, neg)| match neg {
                Some(neg) => &values[pos] - &values[neg],
                None => values[pos].clone(),
            })
            .collect();
        let value = objective
            .iter()
            .zip(&point)
            .fold(Rational::zero(), |a, (c, x)| a + c * x);
        LpOutcome::Optimal { value, point }
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    width: usize,
}

#[derive(Debug)]
struct Unbounded;

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Minimizes `cost · x` from the current basic feasible solution using
    /// Bland's rule; only columns flagged in `allowed` may enter.
    fn minimize(&mut self, cost: &[Rational], allowed: &[bool]) -> Result<(), Unbounded> {
        let w = self.width;
        loop {
            let mut entering = None;
            for j in 0..w {
                if !allowed[j] || self.basis.contains(&j) {
                    continue;
                }
                let mut reduced = cost[j].clone();
                for (row, &b) in self.rows.iter().zip(&self.basis) {
                    if !row[j].is_zero() && !cost[b].is_zero() {
                        reduced -= &cost[b] * &row[j];
                    }
                }
                if reduced.is_negative() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else {
                return Ok(());
            };
            let mut leaving: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[w] / &row[c];
                match &leaving {
                    Some((li, lr))
                        if *lr < ratio || (*lr == ratio && self.basis[*li] < self.basis[i]) => {}
                    _ => leaving = Some((i, ratio)),
                }
            }
            let Some((r, _)) = leaving else {
                return Err(Unbounded);
            };
            self.pivot(r, c);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::rat;

    fn q(n: i64) -> Rational {
        rat(n, 1)
    }

    #[test]
    fn small_maximization() {
        // max x + y s.t. x + 2y <= 4, 3x + y <= 6
        let mut lp = LinearProgram::new(2);
        lp.add(vec![q(1), q(2)], Relation::Le, q(4));
        lp.add(vec![q(3), q(1)], Relation::Le, q(6));
        match lp.maximize(&[q(1), q(1)]) {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, rat(14, 5));
                assert_eq!(point, vec![rat(8, 5), rat(6, 5)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(1);
        lp.add(vec![q(1)], Relation::Ge, q(2));
        lp.add(vec![q(1)], Relation::Le, q(1));
        assert_eq!(lp.maximize(&[q(1)]), LpOutcome::Infeasible);

        let mut lp = LinearProgram::new(2);
        lp.add(vec![q(1), q(-1)], Relation::Le, q(1));
        assert_eq!(lp.maximize(&[q(1), q(0)]), LpOutcome::Unbounded);
    }

    #[test]
    fn free_variables_and_equalities() {
        // min x (max -x) s.t. x + y = -3, y <= 1, x free
        let mut lp = LinearProgram::new(2);
        lp.set_free(0);
        lp.add(vec![q(1), q(1)], Relation::Eq, q(-3));
        lp.add(vec![q(0), q(1)], Relation::Le, q(1));
        match lp.maximize(&[q(-1), q(0)]) {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, q(4));
                assert_eq!(point, vec![q(-4), q(1)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn redundant_equalities() {
        let mut lp = LinearProgram::new(2);
        lp.add(vec![q(1), q(1)], Relation::Eq, q(2));
        lp.add(vec![q(2), q(2)], Relation::Eq, q(4));
        let p = lp.feasible_point().unwrap();
        assert_eq!(&p[0] + &p[1], q(2));
    }
}
