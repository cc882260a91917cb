//! Exact rational linear programming.
//!
//! Dense two-phase primal simplex with Bland's rule. A [`Solver`] keeps its
//! feasible basis between calls, so a family of objectives over one
//! constraint set is solved by warm re-optimization.

use num_traits::{Signed, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub coeffs: Vec<(usize, Rational)>,
    pub cmp: Cmp,
    pub rhs: Rational,
}

/// Constraints over variables `x_0..x_{n-1}`; each variable is either
/// nonnegative or free.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LinearProgram {
    free: Vec<bool>,
    rows: Vec<Row>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub value: Rational,
    pub x: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal(Solution),
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn optimal(self) -> Option<Solution> {
        match self {
            LpOutcome::Optimal(s) => Some(s),
            _ => None,
        }
    }
}

impl LinearProgram {
    /// `n` nonnegative variables.
    pub fn new(n: usize) -> Self {
        Self { free: vec![false; n], rows: Vec::new() }
    }

    /// `n` free variables.
    pub fn free(n: usize) -> Self {
        Self { free: vec![true; n], rows: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.free.len()
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    /// Adds a variable and returns its index.
    pub fn add_var(&mut self, free: bool) -> usize {
        self.free.push(free);
        self.free.len() - 1
    }

    pub fn set_free(&mut self, j: usize, free: bool) {
        self.free[j] = free;
    }

    pub fn add(&mut self, coeffs: Vec<(usize, Rational)>, cmp: Cmp, rhs: Rational) {
        assert!(coeffs.iter().all(|(j, _)| *j < self.free.len()), "variable out of range");
        self.rows.push(Row { coeffs, cmp, rhs });
    }

    /// Exact feasibility test of a point.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        if x.len() != self.free.len() {
            return false;
        }
        if self.free.iter().zip(x).any(|(f, v)| !f && v.is_negative()) {
            return false;
        }
        self.rows.iter().all(|r| {
            let lhs: Rational = r.coeffs.iter().map(|(j, a)| a * &x[*j]).sum();
            match r.cmp {
                Cmp::Le => lhs <= r.rhs,
                Cmp::Ge => lhs >= r.rhs,
                Cmp::Eq => lhs == r.rhs,
            }
        })
    }

    /// Maximizes `c · x` where `c` is sparse.
    pub fn maximize(&self, c: &[(usize, Rational)]) -> LpOutcome {
        match Solver::new(self) {
            Some(mut s) => s.maximize(c),
            None => LpOutcome::Infeasible,
        }
    }

    /// Minimizes `c · x`; the reported value is the minimum.
    pub fn minimize(&self, c: &[(usize, Rational)]) -> LpOutcome {
        match Solver::new(self) {
            Some(mut s) => s.minimize(c),
            None => LpOutcome::Infeasible,
        }
    }
}

/// A feasible simplex tableau in canonical form.
#[derive(Debug, Clone)]
pub struct Solver {
    /// Row-major constraint coefficients over the column space.
    t: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    /// Basic column of each row.
    basis: Vec<usize>,
    /// Each original variable as `(positive column, negative column)`.
    var_cols: Vec<(usize, Option<usize>)>,
    n_orig: usize,
}

impl Solver {
    /// Phase one. Returns `None` when the program is infeasible.
    pub fn new(lp: &LinearProgram) -> Option<Self> {
        let mut var_cols = Vec::with_capacity(lp.free.len());
        let mut ncols = 0;
        for &f in &lp.free {
            if f {
                var_cols.push((ncols, Some(ncols + 1)));
                ncols += 2;
            } else {
                var_cols.push((ncols, None));
                ncols += 1;
            }
        }
        let n_struct = ncols;
        let n_slack = lp.rows.iter().filter(|r| r.cmp != Cmp::Eq).count();
        let m = lp.rows.len();

        // Rows with slack coefficient +1 after sign normalization use the
        // slack as the initial basic variable; the rest get an artificial.
        let mut dense: Vec<Vec<Rational>> = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        let mut slack_of_row: Vec<Option<(usize, bool)>> = Vec::with_capacity(m);
        let mut next_slack = n_struct;
        for r in &lp.rows {
            let mut row = vec![Rational::zero(); n_struct + n_slack];
            for (j, a) in &r.coeffs {
                let (p, n) = var_cols[*j];
                row[p] += a;
                if let Some(n) = n {
                    row[n] -= a;
                }
            }
            let mut b = r.rhs.clone();
            let mut slack_sign = match r.cmp {
                Cmp::Le => Some(1),
                Cmp::Ge => Some(-1),
                Cmp::Eq => None,
            };
            if b.is_negative() {
                for v in row.iter_mut() {
                    *v = -&*v;
                }
                b = -b;
                slack_sign = slack_sign.map(|s| -s);
            }
            let slack = slack_sign.map(|s| {
                let col = next_slack;
                next_slack += 1;
                row[col] = Rational::from_integer((s as i64).into());
                (col, s > 0)
            });
            slack_of_row.push(slack);
            dense.push(row);
            rhs.push(b);
        }
        let art_rows: Vec<usize> = (0..m).filter(|&i| !matches!(slack_of_row[i], Some((_, true)))).collect();
        let n_art = art_rows.len();
        let total = n_struct + n_slack + n_art;
        let mut basis = vec![0; m];
        for (i, row) in dense.iter_mut().enumerate() {
            row.resize(total, Rational::zero());
            if let Some((col, true)) = slack_of_row[i] {
                basis[i] = col;
            }
        }
        for (k, &i) in art_rows.iter().enumerate() {
            let col = n_struct + n_slack + k;
            dense[i][col] = Rational::from_integer(1.into());
            basis[i] = col;
        }
        let mut s = Solver { t: dense, rhs, basis, var_cols, n_orig: lp.free.len() };

        if n_art > 0 {
            let first_art = n_struct + n_slack;
            let mut c = vec![Rational::zero(); total];
            for v in c.iter_mut().skip(first_art) {
                *v = Rational::from_integer((-1).into());
            }
            let (_, bounded) = s.run(&c, total);
            debug_assert!(bounded, "phase one is bounded");
            if s.basis.iter().zip(&s.rhs).any(|(&b, v)| b >= first_art && !v.is_zero()) {
                return None;
            }
            // Drive zero-level artificials out of the basis or drop their rows.
            let mut i = 0;
            while i < s.t.len() {
                if s.basis[i] >= first_art {
                    match (0..first_art).find(|&j| !s.t[i][j].is_zero()) {
                        Some(j) => {
                            s.pivot(i, j, None);
                            i += 1;
                        }
                        None => {
                            s.t.remove(i);
                            s.rhs.remove(i);
                            s.basis.remove(i);
                        }
                    }
                } else {
                    i += 1;
                }
            }
            for row in s.t.iter_mut() {
                row.truncate(first_art);
            }
        }
        Some(s)
    }

    fn ncols(&self) -> usize {
        self.t.first().map_or(self.var_cols.last().map_or(0, |(p, n)| n.unwrap_or(*p) + 1), Vec::len)
    }

    fn pivot(&mut self, r: usize, c: usize, obj: Option<&mut Vec<Rational>>) {
        let inv = self.t[r][c].recip();
        for v in self.t[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        self.rhs[r] *= &inv;
        let prow = self.t[r].clone();
        let prhs = self.rhs[r].clone();
        let nz: Vec<usize> = (0..prow.len()).filter(|&j| !prow[j].is_zero()).collect();
        for i in 0..self.t.len() {
            if i == r || self.t[i][c].is_zero() {
                continue;
            }
            let f = self.t[i][c].clone();
            for &j in &nz {
                let delta = &f * &prow[j];
                self.t[i][j] -= delta;
            }
            self.rhs[i] -= &f * &prhs;
        }
        if let Some(obj) = obj {
            let f = obj[c].clone();
            if !f.is_zero() {
                for &j in &nz {
                    let delta = &f * &prow[j];
                    obj[j] -= delta;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Reduced costs of the dense objective `c` under the current basis.
    fn reduced(&self, c: &[Rational]) -> Vec<Rational> {
        let mut red = c.to_vec();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &c[b];
            if cb.is_zero() {
                continue;
            }
            for (j, v) in self.t[i].iter().enumerate() {
                if !v.is_zero() {
                    red[j] -= cb * v;
                }
            }
        }
        red
    }

    /// Simplex iterations on columns `< limit`. Returns the objective value
    /// and whether it is bounded.
    fn run(&mut self, c: &[Rational], limit: usize) -> (Rational, bool) {
        let mut red = self.reduced(c);
        loop {
            let Some(enter) = (0..limit).find(|&j| red[j].is_positive()) else {
                break;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.t.len() {
                let a = &self.t[i][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, enter, Some(&mut red)),
                None => return (Rational::zero(), false),
            }
        }
        let value = self.basis.iter().zip(&self.rhs).map(|(&b, v)| &c[b] * v).sum();
        (value, true)
    }

    fn dense_objective(&self, c: &[(usize, Rational)]) -> Vec<Rational> {
        let mut d = vec![Rational::zero(); self.ncols()];
        for (j, a) in c {
            assert!(*j < self.n_orig, "objective variable out of range");
            let (p, n) = self.var_cols[*j];
            d[p] += a;
            if let Some(n) = n {
                d[n] -= a;
            }
        }
        d
    }

    /// Current basic feasible point in the original variables.
    pub fn point(&self) -> Vec<Rational> {
        let mut col_val = vec![Rational::zero(); self.ncols()];
        for (&b, v) in self.basis.iter().zip(&self.rhs) {
            col_val[b] = v.clone();
        }
        self.var_cols
            .iter()
            .map(|&(p, n)| match n {
                Some(n) => &col_val[p] - &col_val[n],
                None => col_val[p].clone(),
            })
            .collect()
    }

    /// Maximizes `c · x`, starting from the current basis.
    pub fn maximize(&mut self, c: &[(usize, Rational)]) -> LpOutcome {
        let dense = self.dense_objective(c);
        let limit = dense.len();
        let (value, bounded) = self.run(&dense, limit);
        if !bounded {
            return LpOutcome::Unbounded;
        }
        LpOutcome::Optimal(Solution { value, x: self.point() })
    }

    pub fn minimize(&mut self, c: &[(usize, Rational)]) -> LpOutcome {
        let neg: Vec<(usize, Rational)> = c.iter().map(|(j, a)| (*j, -a)).collect();
        match self.maximize(&neg) {
            LpOutcome::Optimal(s) => LpOutcome::Optimal(Solution { value: -s.value, x: s.x }),
            other => other,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn obj(c: &[i64]) -> Vec<(usize, Rational)> {
        c.iter().enumerate().map(|(j, &v)| (j, int(v))).collect()
    }

    fn row(c: &[i64]) -> Vec<(usize, Rational)> {
        obj(c)
    }

    #[test]
    fn textbook_max() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18
        let mut lp = LinearProgram::new(2);
        lp.add(row(&[1, 0]), Cmp::Le, int(4));
        lp.add(row(&[0, 2]), Cmp::Le, int(12));
        lp.add(row(&[3, 2]), Cmp::Le, int(18));
        let s = lp.maximize(&obj(&[3, 5])).optimal().unwrap();
        assert_eq!(s.value, int(36));
        assert_eq!(s.x, vec![int(2), int(6)]);
        assert!(lp.is_feasible(&s.x));
    }

    #[test]
    fn equality_and_ge_rows() {
        // min x + y, x + 2y >= 3, x - y = 1/2, x,y >= 0
        let mut lp = LinearProgram::new(2);
        lp.add(row(&[1, 2]), Cmp::Ge, int(3));
        lp.add(vec![(0, int(1)), (1, int(-1))], Cmp::Eq, rat(1, 2));
        let s = lp.minimize(&obj(&[1, 1])).optimal().unwrap();
        assert_eq!(s.x, vec![rat(4, 3), rat(5, 6)]);
        assert_eq!(s.value, rat(13, 6));
    }

    #[test]
    fn free_variables_and_unbounded() {
        let mut lp = LinearProgram::free(1);
        lp.add(row(&[1]), Cmp::Ge, int(-7));
        assert_eq!(lp.minimize(&obj(&[1])).optimal().unwrap().value, int(-7));
        assert_eq!(lp.maximize(&obj(&[1])), LpOutcome::Unbounded);
    }

    #[test]
    fn infeasible_detected() {
        let mut lp = LinearProgram::new(1);
        lp.add(row(&[1]), Cmp::Le, int(1));
        lp.add(row(&[1]), Cmp::Ge, int(2));
        assert_eq!(lp.maximize(&obj(&[1])), LpOutcome::Infeasible);
    }

    #[test]
    fn redundant_equalities() {
        let mut lp = LinearProgram::new(2);
        lp.add(row(&[1, 1]), Cmp::Eq, int(2));
        lp.add(row(&[2, 2]), Cmp::Eq, int(4));
        let s = lp.maximize(&obj(&[1, 0])).optimal().unwrap();
        assert_eq!(s.value, int(2));
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's example cycles under the textbook rule; Bland terminates.
        let mut lp = LinearProgram::new(4);
        lp.add(vec![(0, rat(1, 4)), (1, int(-60)), (2, rat(-1, 25)), (3, int(9))], Cmp::Le, int(0));
        lp.add(vec![(0, rat(1, 2)), (1, int(-90)), (2, rat(-1, 50)), (3, int(3))], Cmp::Le, int(0));
        lp.add(vec![(2, int(1))], Cmp::Le, int(1));
        let c = vec![(0, rat(3, 4)), (1, int(-150)), (2, rat(1, 50)), (3, int(-6))];
        let s = lp.maximize(&c).optimal().unwrap();
        assert_eq!(s.value, rat(1, 20));
    }

    #[test]
    fn warm_start_reuses_basis() {
        let mut lp = LinearProgram::free(2);
        for (a, b) in [(1, 0), (0, 1), (1, 1), (1, -1)] {
            lp.add(row(&[a, b]), Cmp::Le, int(1));
            lp.add(row(&[a, b]), Cmp::Ge, int(-1));
        }
        let mut s = Solver::new(&lp).unwrap();
        let mut values = Vec::new();
        for c in [[1, 0], [0, 1], [1, 1], [-1, 2]] {
            let sol = s.maximize(&obj(&c)).optimal().unwrap();
            assert!(lp.is_feasible(&sol.x));
            assert_eq!(sol.value, lp.maximize(&obj(&c)).optimal().unwrap().value);
            values.push(sol.value);
        }
        assert_eq!(values, vec![int(1), int(1), int(1), int(2)]);
    }
}
