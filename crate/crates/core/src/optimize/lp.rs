//! Exact rational linear programming.
//!
//! Two-phase simplex on a compact dictionary (rows are basic variables,
//! columns nonbasic) with Bland's rule, so it terminates on degenerate
//! programs. Optimal solutions carry a dual vector; infeasible programs carry
//! a Farkas certificate. Both are expressed per original constraint and can
//! be checked with [`LinearProgram::check_dual`] and
//! [`LinearProgram::check_farkas`].

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarSign {
    NonNegative,
    Free,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coefficients: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn lhs(&self, point: &[Rational]) -> Rational {
        self.coefficients.iter().zip(point).map(|(a, x)| a * x).sum()
    }

    pub fn holds(&self, point: &[Rational]) -> bool {
        let lhs = self.lhs(point);
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Eq => lhs == self.rhs,
            Relation::Ge => lhs >= self.rhs,
        }
    }
}

/// Maximize `objective · x` subject to the constraints and sign
/// restrictions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    pub signs: Vec<VarSign>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpSolution {
    Optimal {
        value: Rational,
        point: Vec<Rational>,
        /// One multiplier per constraint; `value = Σ dual_i · rhs_i`.
        dual: Vec<Rational>,
    },
    Unbounded,
    Infeasible {
        /// Multipliers proving no feasible point exists.
        farkas: Vec<Rational>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LpStatus {
    Optimal,
    Unbounded,
    Infeasible,
}

impl LpSolution {
    pub fn status(&self) -> LpStatus {
        match self {
            LpSolution::Optimal { .. } => LpStatus::Optimal,
            LpSolution::Unbounded => LpStatus::Unbounded,
            LpSolution::Infeasible { .. } => LpStatus::Infeasible,
        }
    }

    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpSolution::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn point(&self) -> Option<&[Rational]> {
        match self {
            LpSolution::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }
}

impl LinearProgram {
    pub fn new(objective: Vec<Rational>, signs: Vec<VarSign>) -> Result<Self> {
        if objective.is_empty() {
            return Err(Error::InvalidProgram("at least one variable required".into()));
        }
        if objective.len() != signs.len() {
            return Err(Error::InvalidProgram(format!(
                "{} objective coefficients but {} sign restrictions",
                objective.len(),
                signs.len()
            )));
        }
        Ok(LinearProgram {
            objective,
            constraints: Vec::new(),
            signs,
        })
    }

    pub fn variables(&self) -> usize {
        self.objective.len()
    }

    pub fn push(&mut self, coefficients: Vec<Rational>, relation: Relation, rhs: Rational) -> Result<()> {
        if coefficients.len() != self.variables() {
            return Err(Error::InvalidProgram(format!(
                "constraint has {} coefficients, program has {} variables",
                coefficients.len(),
                self.variables()
            )));
        }
        self.constraints.push(Constraint {
            coefficients,
            relation,
            rhs,
        });
        Ok(())
    }

    pub fn objective_at(&self, point: &[Rational]) -> Rational {
        self.objective.iter().zip(point).map(|(c, x)| c * x).sum()
    }

    pub fn is_feasible(&self, point: &[Rational]) -> bool {
        point.len() == self.variables()
            && self
                .signs
                .iter()
                .zip(point)
                .all(|(s, x)| *s == VarSign::Free || !x.is_negative())
            && self.constraints.iter().all(|c| c.holds(point))
    }

    fn multipliers_sign_ok(&self, y: &[Rational]) -> bool {
        y.len() == self.constraints.len()
            && self.constraints.iter().zip(y).all(|(c, y)| match c.relation {
                Relation::Le => !y.is_negative(),
                Relation::Ge => !y.is_positive(),
                Relation::Eq => true,
            })
    }

    fn combination(&self, y: &[Rational]) -> Vec<Rational> {
        let mut g = vec![Rational::zero(); self.variables()];
        for (c, yi) in self.constraints.iter().zip(y) {
            if yi.is_zero() {
                continue;
            }
            for (gj, a) in g.iter_mut().zip(&c.coefficients) {
                *gj += yi * a;
            }
        }
        g
    }

    /// True iff `y` is dual feasible; then `Σ y_i rhs_i` bounds the optimum
    /// from above.
    pub fn check_dual(&self, y: &[Rational]) -> bool {
        if !self.multipliers_sign_ok(y) {
            return false;
        }
        let g = self.combination(y);
        g.iter()
            .zip(&self.objective)
            .zip(&self.signs)
            .all(|((g, c), s)| match s {
                VarSign::NonNegative => g >= c,
                VarSign::Free => g == c,
            })
    }

    pub fn dual_value(&self, y: &[Rational]) -> Rational {
        self.constraints.iter().zip(y).map(|(c, y)| y * &c.rhs).sum()
    }

    /// True iff `y` proves infeasibility: the combination `Σ y_i a_i` is
    /// nonnegative on sign-restricted variables, zero on free ones, and
    /// `Σ y_i rhs_i < 0`.
    pub fn check_farkas(&self, y: &[Rational]) -> bool {
        if !self.multipliers_sign_ok(y) {
            return false;
        }
        let g = self.combination(y);
        let combination_ok = g.iter().zip(&self.signs).all(|(g, s)| match s {
            VarSign::NonNegative => !g.is_negative(),
            VarSign::Free => g.is_zero(),
        });
        combination_ok && self.dual_value(y).is_negative()
    }

    pub fn solve(&self) -> LpSolution {
        solve_lp(self)
    }
}

/// Standard-form column: original variable and sign (+1 / −1 for a free
/// variable's split halves).
#[derive(Clone, Copy)]
struct Column {
    var: usize,
    negated: bool,
}

/// Standard-form row: original constraint and whether it was negated.
#[derive(Clone, Copy)]
struct Row {
    constraint: usize,
    negated: bool,
}

/// `x_B = b − A x_N`, `z = z0 + c · x_N`.
struct Dictionary {
    a: Vec<Vec<Rational>>,
    b: Vec<Rational>,
    c: Vec<Rational>,
    z: Rational,
    basic: Vec<usize>,
    nonbasic: Vec<usize>,
}

enum Outcome {
    Optimal,
    Unbounded,
}

impl Dictionary {
    fn pivot(&mut self, leave: usize, enter: usize) {
        let inv = self.a[leave][enter].recip();
        let mut prow = std::mem::take(&mut self.a[leave]);
        for (j, v) in prow.iter_mut().enumerate() {
            if j == enter {
                *v = inv.clone();
            } else if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pb = &self.b[leave] * &inv;
        for r in 0..self.a.len() {
            if r == leave {
                continue;
            }
            let f = self.a[r][enter].clone();
            if f.is_zero() {
                continue;
            }
            let row = &mut self.a[r];
            for (j, pv) in prow.iter().enumerate() {
                if j == enter {
                    row[j] = -(&f * &inv);
                } else if !pv.is_zero() {
                    row[j] -= &f * pv;
                }
            }
            self.b[r] -= &f * &pb;
        }
        let f = self.c[enter].clone();
        if !f.is_zero() {
            for (j, pv) in prow.iter().enumerate() {
                if j == enter {
                    self.c[j] = -(&f * &inv);
                } else if !pv.is_zero() {
                    self.c[j] -= &f * pv;
                }
            }
            self.z += &f * &pb;
        }
        self.a[leave] = prow;
        self.b[leave] = pb;
        std::mem::swap(&mut self.basic[leave], &mut self.nonbasic[enter]);
    }

    /// Bland's rule: smallest-index improving column, ratio ties broken by
    /// smallest basic index.
    fn run(&mut self) -> Outcome {
        loop {
            let enter = (0..self.c.len())
                .filter(|&j| self.c[j].is_positive())
                .min_by_key(|&j| self.nonbasic[j]);
            let Some(enter) = enter else {
                return Outcome::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for r in 0..self.a.len() {
                let coef = &self.a[r][enter];
                if !coef.is_positive() {
                    continue;
                }
                let ratio = &self.b[r] / coef;
                let better = match &leave {
                    None => true,
                    Some((l, best)) => {
                        ratio < *best || (ratio == *best && self.basic[r] < self.basic[*l])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, enter),
                None => return Outcome::Unbounded,
            }
        }
    }

    /// Current multiplier of each standard-form row, read from the
    /// objective coefficients of the slack variables.
    fn row_duals(&self, structural: usize, rows: usize) -> Vec<Rational> {
        let mut y = vec![Rational::zero(); rows];
        for (j, &v) in self.nonbasic.iter().enumerate() {
            if v >= structural && v < structural + rows {
                y[v - structural] = -self.c[j].clone();
            }
        }
        y
    }
}

pub fn solve_lp(lp: &LinearProgram) -> LpSolution {
    let mut columns = Vec::new();
    for (var, sign) in lp.signs.iter().enumerate() {
        columns.push(Column { var, negated: false });
        if *sign == VarSign::Free {
            columns.push(Column { var, negated: true });
        }
    }
    let mut rows = Vec::new();
    for (i, c) in lp.constraints.iter().enumerate() {
        if matches!(c.relation, Relation::Le | Relation::Eq) {
            rows.push(Row { constraint: i, negated: false });
        }
        if matches!(c.relation, Relation::Ge | Relation::Eq) {
            rows.push(Row { constraint: i, negated: true });
        }
    }
    let n = columns.len();
    let m = rows.len();
    let signed = |value: &Rational, negate: bool| if negate { -value.clone() } else { value.clone() };

    let mut dict = Dictionary {
        a: rows
            .iter()
            .map(|r| {
                let con = &lp.constraints[r.constraint];
                columns
                    .iter()
                    .map(|col| signed(&con.coefficients[col.var], r.negated != col.negated))
                    .collect()
            })
            .collect(),
        b: rows
            .iter()
            .map(|r| signed(&lp.constraints[r.constraint].rhs, r.negated))
            .collect(),
        c: vec![Rational::zero(); n],
        z: Rational::zero(),
        basic: (n..n + m).collect(),
        nonbasic: (0..n).collect(),
    };

    let fold_rows = |row_y: &[Rational]| -> Vec<Rational> {
        let mut y = vec![Rational::zero(); lp.constraints.len()];
        for (r, yr) in rows.iter().zip(row_y) {
            if r.negated {
                y[r.constraint] -= yr;
            } else {
                y[r.constraint] += yr;
            }
        }
        y
    };

    // Phase 1: one auxiliary variable subtracted from every row.
    if dict.b.iter().any(Signed::is_negative) {
        let aux = n + m;
        for row in &mut dict.a {
            row.push(-Rational::one());
        }
        dict.nonbasic.push(aux);
        dict.c = vec![Rational::zero(); n];
        dict.c.push(-Rational::one());
        let aux_col = n;
        let leave = (0..m)
            .min_by(|&x, &y| dict.b[x].cmp(&dict.b[y]).then(dict.basic[x].cmp(&dict.basic[y])))
            .expect("negative rhs implies a row");
        dict.pivot(leave, aux_col);
        if let Outcome::Unbounded = dict.run() {
            unreachable!("auxiliary objective is bounded by zero");
        }
        if dict.z.is_negative() {
            return LpSolution::Infeasible {
                farkas: fold_rows(&dict.row_duals(n, m)),
            };
        }
        if let Some(r) = dict.basic.iter().position(|&v| v == aux) {
            let enter = (0..dict.nonbasic.len())
                .filter(|&j| !dict.a[r][j].is_zero())
                .min_by_key(|&j| dict.nonbasic[j])
                .expect("auxiliary row has a nonzero entry");
            dict.pivot(r, enter);
        }
        let col = dict
            .nonbasic
            .iter()
            .position(|&v| v == aux)
            .expect("auxiliary variable is nonbasic");
        for row in &mut dict.a {
            row.remove(col);
        }
        dict.nonbasic.remove(col);
    }

    // Phase 2 objective in terms of the current nonbasic variables.
    let cost: Vec<Rational> = columns
        .iter()
        .map(|col| signed(&lp.objective[col.var], col.negated))
        .collect();
    dict.c = vec![Rational::zero(); dict.nonbasic.len()];
    dict.z = Rational::zero();
    for (j, &v) in dict.nonbasic.iter().enumerate() {
        if v < n {
            dict.c[j] += &cost[v];
        }
    }
    for (r, &v) in dict.basic.iter().enumerate() {
        if v < n && !cost[v].is_zero() {
            dict.z += &cost[v] * &dict.b[r];
            for j in 0..dict.c.len() {
                if !dict.a[r][j].is_zero() {
                    let delta = &cost[v] * &dict.a[r][j];
                    dict.c[j] -= delta;
                }
            }
        }
    }
    if let Outcome::Unbounded = dict.run() {
        return LpSolution::Unbounded;
    }

    let mut point = vec![Rational::zero(); lp.variables()];
    for (r, &v) in dict.basic.iter().enumerate() {
        if v < n {
            let col = columns[v];
            if col.negated {
                point[col.var] -= &dict.b[r];
            } else {
                point[col.var] += &dict.b[r];
            }
        }
    }
    LpSolution::Optimal {
        value: dict.z.clone(),
        point,
        dual: fold_rows(&dict.row_duals(n, m)),
    }
}
