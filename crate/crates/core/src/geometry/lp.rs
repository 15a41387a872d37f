//! Exact linear programming with a dictionary-form simplex method.
//!
//! The dictionary keeps one row per constraint and one column per nonbasic
//! variable, so a pivot costs `rows × (variables + 1)` rational operations
//! regardless of how many slacks exist. Bland's rule guarantees termination,
//! and infeasible starts are repaired with a single auxiliary variable.

use num_traits::{One, Signed, Zero};

use super::rational::{Point, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    /// `x` attains `value`; when a stop threshold was given this is only the
    /// first basic solution whose value exceeded it.
    Optimal { x: Point, value: Rational },
}

impl LpOutcome {
    pub fn point(self) -> Option<Point> {
        match self {
            LpOutcome::Optimal { x, .. } => Some(x),
            _ => None,
        }
    }
}

/// `maximize c·x` subject to linear rows; variables are `>= 0` unless freed.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    nvars: usize,
    free: Vec<bool>,
    rows: Vec<(Vec<Rational>, Rational)>,
    objective: Vec<Rational>,
}

impl LinearProgram {
    pub fn new(nvars: usize) -> Self {
        LinearProgram {
            nvars,
            free: vec![false; nvars],
            rows: Vec::new(),
            objective: vec![Rational::zero(); nvars],
        }
    }

    pub fn set_free(&mut self, var: usize) {
        self.free[var] = true;
    }

    pub fn set_all_free(&mut self) {
        self.free.iter_mut().for_each(|f| *f = true);
    }

    pub fn add(&mut self, a: Vec<Rational>, rel: Relation, b: Rational) {
        assert_eq!(a.len(), self.nvars, "constraint width");
        match rel {
            Relation::Le => self.rows.push((a, b)),
            Relation::Ge => self.rows.push((a.iter().map(|x| -x).collect(), -b)),
            Relation::Eq => {
                self.rows.push((a.iter().map(|x| -x).collect(), -b.clone()));
                self.rows.push((a, b));
            }
        }
    }

    pub fn maximize(&mut self, c: Vec<Rational>) {
        assert_eq!(c.len(), self.nvars, "objective width");
        self.objective = c;
    }

    pub fn solve(&self) -> LpOutcome {
        Dictionary::build(self).run(self, None)
    }

    /// Stops at the first feasible basis whose objective exceeds `threshold`.
    pub fn solve_until(&self, threshold: &Rational) -> LpOutcome {
        Dictionary::build(self).run(self, Some(threshold))
    }
}

struct Row {
    basic: usize,
    beta: Rational,
    alpha: Vec<Rational>,
    /// Basic variable is unrestricted; never a leaving row.
    free: bool,
}

struct Dictionary {
    rows: Vec<Row>,
    nonbasic: Vec<usize>,
    /// Columns of free variables that appear in no row; they never enter.
    blocked: Vec<bool>,
    z0: Rational,
    c: Vec<Rational>,
    aux: usize,
}

impl Dictionary {
    fn build(lp: &LinearProgram) -> Self {
        let n = lp.nvars;
        let rows = lp
            .rows
            .iter()
            .enumerate()
            .map(|(i, (a, b))| Row {
                basic: n + i,
                beta: b.clone(),
                alpha: a.iter().map(|x| -x).collect(),
                free: false,
            })
            .collect::<Vec<_>>();
        let aux = n + rows.len();
        Dictionary {
            rows,
            nonbasic: (0..n).collect(),
            blocked: vec![false; n],
            z0: Rational::zero(),
            c: vec![Rational::zero(); n],
            aux,
        }
    }

    fn pivot(&mut self, r: usize, k: usize) {
        let a = self.rows[r].alpha[k].clone();
        debug_assert!(!a.is_zero());
        let inv = Rational::one() / &a;
        let leaving = self.rows[r].basic;
        let entering = self.nonbasic[k];
        {
            let row = &mut self.rows[r];
            row.beta = -&row.beta * &inv;
            for (j, x) in row.alpha.iter_mut().enumerate() {
                if j == k {
                    *x = inv.clone();
                } else if !x.is_zero() {
                    *x = -&*x * &inv;
                }
            }
            row.basic = entering;
        }
        self.nonbasic[k] = leaving;
        let (pivot_beta, pivot_alpha) = {
            let row = &self.rows[r];
            (row.beta.clone(), row.alpha.clone())
        };
        let substitute = |beta: &mut Rational, alpha: &mut [Rational]| {
            let f = std::mem::replace(&mut alpha[k], Rational::zero());
            if f.is_zero() {
                return;
            }
            *beta += &f * &pivot_beta;
            for (j, (x, p)) in alpha.iter_mut().zip(&pivot_alpha).enumerate() {
                if j == k {
                    *x = &f * p;
                } else if !p.is_zero() {
                    *x += &f * p;
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                substitute(&mut row.beta, &mut row.alpha);
            }
        }
        substitute(&mut self.z0, &mut self.c);
    }

    /// Bland's rule: lowest-index improving column, then lowest-index
    /// basic variable among the tightest rows.
    fn entering(&self) -> Option<usize> {
        (0..self.nonbasic.len())
            .filter(|&k| !self.blocked[k] && self.c[k].is_positive())
            .min_by_key(|&k| self.nonbasic[k])
    }

    fn leaving(&self, k: usize) -> Option<usize> {
        let mut best: Option<(usize, Rational)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            if row.free || !row.alpha[k].is_negative() {
                continue;
            }
            let ratio = &row.beta / -&row.alpha[k];
            let better = match &best {
                None => true,
                Some((j, r)) => ratio < *r || (ratio == *r && row.basic < self.rows[*j].basic),
            };
            if better {
                best = Some((i, ratio));
            }
        }
        best.map(|(i, _)| i)
    }

    /// Runs Bland iterations; returns false if the objective is unbounded.
    fn optimize(&mut self, threshold: Option<&Rational>) -> bool {
        loop {
            if threshold.is_some_and(|t| self.z0 > *t) {
                return true;
            }
            let Some(k) = self.entering() else {
                return true;
            };
            let Some(r) = self.leaving(k) else {
                return false;
            };
            self.pivot(r, k);
        }
    }

    fn remove_column(&mut self, k: usize) {
        for row in &mut self.rows {
            row.alpha.remove(k);
        }
        self.c.remove(k);
        self.nonbasic.remove(k);
        self.blocked.remove(k);
    }

    fn run(mut self, lp: &LinearProgram, threshold: Option<&Rational>) -> LpOutcome {
        let n = lp.nvars;
        // Move free variables into the basis; their rows never constrain.
        for j in 0..n {
            if !lp.free[j] {
                continue;
            }
            let k = self.nonbasic.iter().position(|&v| v == j).expect("free var is nonbasic");
            match self.rows.iter().position(|r| !r.free && !r.alpha[k].is_zero()) {
                Some(r) => {
                    self.pivot(r, k);
                    self.rows[r].free = true;
                }
                None => self.blocked[k] = true,
            }
        }

        if self.rows.iter().any(|r| !r.free && r.beta.is_negative()) {
            let ka = self.nonbasic.len();
            self.nonbasic.push(self.aux);
            self.blocked.push(false);
            for row in &mut self.rows {
                row.alpha.push(if row.free { Rational::zero() } else { Rational::one() });
            }
            self.z0 = Rational::zero();
            self.c = vec![Rational::zero(); ka + 1];
            self.c[ka] = -Rational::one();
            let start = (0..self.rows.len())
                .filter(|&i| !self.rows[i].free)
                .min_by(|&a, &b| {
                    self.rows[a]
                        .beta
                        .cmp(&self.rows[b].beta)
                        .then(self.rows[a].basic.cmp(&self.rows[b].basic))
                })
                .expect("a row is infeasible");
            self.pivot(start, ka);
            self.optimize(None);
            if self.z0.is_negative() {
                return LpOutcome::Infeasible;
            }
            if let Some(r) = self.rows.iter().position(|row| row.basic == self.aux) {
                match (0..self.nonbasic.len()).find(|&k| !self.blocked[k] && !self.rows[r].alpha[k].is_zero()) {
                    Some(k) => self.pivot(r, k),
                    None => {
                        self.rows.remove(r);
                    }
                }
            }
            if let Some(ka) = self.nonbasic.iter().position(|&v| v == self.aux) {
                self.remove_column(ka);
            }
        }

        self.z0 = Rational::zero();
        self.c = vec![Rational::zero(); self.nonbasic.len()];
        for (j, cj) in lp.objective.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            if let Some(k) = self.nonbasic.iter().position(|&v| v == j) {
                self.c[k] += cj;
            } else if let Some(row) = self.rows.iter().find(|r| r.basic == j) {
                self.z0 += cj * &row.beta;
                for (ck, a) in self.c.iter_mut().zip(&row.alpha) {
                    *ck += cj * a;
                }
            }
        }
        if (0..self.c.len()).any(|k| self.blocked[k] && !self.c[k].is_zero()) {
            return LpOutcome::Unbounded;
        }
        if !self.optimize(threshold) {
            return LpOutcome::Unbounded;
        }
        let mut x = vec![Rational::zero(); n];
        for row in &self.rows {
            if row.basic < n {
                x[row.basic] = row.beta.clone();
            }
        }
        LpOutcome::Optimal { x, value: self.z0 }
    }
}

/// A point satisfying every row `a·x ≤ b` (or `a·x < b` when flagged
/// strict), found by maximising a common margin `δ ≤ 1` on the strict rows.
pub fn find_point<'a, I>(dim: usize, rows: I) -> Option<Point>
where
    I: IntoIterator<Item = (&'a [Rational], &'a Rational, bool)>,
{
    let rows: Vec<_> = rows.into_iter().collect();
    let any_strict = rows.iter().any(|r| r.2);
    let width = dim + usize::from(any_strict);
    let mut lp = LinearProgram::new(width);
    for j in 0..dim {
        lp.set_free(j);
    }
    for (a, b, strict) in &rows {
        debug_assert_eq!(a.len(), dim);
        let mut coeffs = a.to_vec();
        if any_strict {
            coeffs.push(if *strict { Rational::one() } else { Rational::zero() });
        }
        lp.add(coeffs, Relation::Le, (*b).clone());
    }
    if !any_strict {
        return lp.solve().point();
    }
    let mut cap = vec![Rational::zero(); width];
    cap[dim] = Rational::one();
    lp.add(cap.clone(), Relation::Le, Rational::one());
    lp.maximize(cap);
    match lp.solve_until(&Rational::zero()) {
        LpOutcome::Optimal { mut x, value } if value.is_positive() => {
            x.truncate(dim);
            Some(x)
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rational::{frac, int};

    fn row(a: &[i64], b: i64) -> (Vec<Rational>, Rational) {
        (a.iter().map(|&x| int(x)).collect(), int(b))
    }

    fn feasible(d: usize, rows: &[((Vec<Rational>, Rational), bool)]) -> Option<Point> {
        find_point(d, rows.iter().map(|((a, b), s)| (a.as_slice(), b, *s)))
    }

    #[test]
    fn one_dimensional_feasibility() {
        assert!(feasible(1, &[(row(&[1], 1), false), (row(&[-1], -2), false)]).is_none());
        let p = feasible(1, &[(row(&[1], 1), true), (row(&[-1], 0), true)]).unwrap();
        assert!(p[0] > int(0) && p[0] < int(1));
        assert!(feasible(1, &[(row(&[1], 0), true), (row(&[-1], 0), true)]).is_none());
        assert!(feasible(1, &[(row(&[1], 0), false), (row(&[-1], 0), false)]).is_some());
    }

    #[test]
    fn classic_maximisation() {
        // max 3x + 2y, x + y <= 4, x + 3y <= 6, x <= 3, x, y >= 0 -> 11 at (3, 1).
        let mut lp = LinearProgram::new(2);
        lp.add(vec![int(1), int(1)], Relation::Le, int(4));
        lp.add(vec![int(1), int(3)], Relation::Le, int(6));
        lp.add(vec![int(1), int(0)], Relation::Le, int(3));
        lp.maximize(vec![int(3), int(2)]);
        assert_eq!(
            lp.solve(),
            LpOutcome::Optimal { x: vec![int(3), int(1)], value: int(11) }
        );
    }

    #[test]
    fn phase_one_and_equalities() {
        // min x + y with x + 2y >= 3, 2x + y >= 3 -> (1, 1), value -2 as a max.
        let mut lp = LinearProgram::new(2);
        lp.add(vec![int(1), int(2)], Relation::Ge, int(3));
        lp.add(vec![int(2), int(1)], Relation::Ge, int(3));
        lp.maximize(vec![int(-1), int(-1)]);
        assert_eq!(lp.solve(), LpOutcome::Optimal { x: vec![int(1), int(1)], value: int(-2) });

        let mut lp = LinearProgram::new(3);
        lp.add(vec![int(1), int(1), int(1)], Relation::Eq, int(1));
        lp.add(vec![int(1), int(-1), int(0)], Relation::Eq, frac(1, 2));
        lp.maximize(vec![int(0), int(0), int(1)]);
        assert_eq!(
            lp.solve(),
            LpOutcome::Optimal { x: vec![frac(1, 2), int(0), frac(1, 2)], value: frac(1, 2) }
        );
    }

    #[test]
    fn unbounded_and_infeasible() {
        let mut lp = LinearProgram::new(1);
        lp.set_free(0);
        lp.maximize(vec![int(1)]);
        assert_eq!(lp.solve(), LpOutcome::Unbounded);
        let mut lp = LinearProgram::new(2);
        lp.add(vec![int(1), int(1)], Relation::Le, int(-1));
        assert_eq!(lp.solve(), LpOutcome::Infeasible);
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's example cycles under the textbook rule; Bland terminates.
        let mut lp = LinearProgram::new(4);
        lp.add(vec![frac(1, 4), int(-60), frac(-1, 25), int(9)], Relation::Le, int(0));
        lp.add(vec![frac(1, 2), int(-90), frac(-1, 50), int(3)], Relation::Le, int(0));
        lp.add(vec![int(0), int(0), int(1), int(0)], Relation::Le, int(1));
        lp.maximize(vec![frac(3, 4), int(-150), frac(1, 50), int(-6)]);
        match lp.solve() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, frac(1, 20)),
            other => panic!("unexpected {other:?}"),
        }
    }
}
