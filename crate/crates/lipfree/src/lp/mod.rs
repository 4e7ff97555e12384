//! Exact linear programming over rationals.
//!
//! Problems carry a sense, an objective, rows with `<=`/`=`/`>=` relations,
//! and optional per-variable bounds. `solve` returns one of three verdicts,
//! each carried by evidence: an optimal basic solution, a Farkas certificate
//! of infeasibility, or a feasible point plus an improving ray. All three can
//! be replayed against the problem data with [`verify_certificate`].
//!
//! The solver is a two-phase primal simplex on a dense rational tableau.
//! Pricing is by steepest reduced cost with ties to the lowest column index,
//! switching to Bland's rule after a run of degenerate pivots (and back on
//! strict progress), so pivoting is deterministic and cannot cycle. Where a
//! row's slack column can serve, it is crash-picked as the initial basis and
//! the artificial variable is never created.

mod simplex;

use num_traits::{Signed, Zero};

use crate::rational::Rational;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// A linear program in its natural statement, before any normalization.
#[derive(Clone, Debug)]
pub struct LpProblem {
    pub sense: Sense,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    pub lower: Vec<Option<Rational>>,
    pub upper: Vec<Option<Rational>>,
}

impl LpProblem {
    /// A program over free variables.
    pub fn new(sense: Sense, objective: Vec<Rational>) -> Self {
        let n = objective.len();
        LpProblem {
            sense,
            objective,
            constraints: Vec::new(),
            lower: vec![None; n],
            upper: vec![None; n],
        }
    }

    /// A program whose variables all carry a zero lower bound.
    pub fn nonnegative(sense: Sense, objective: Vec<Rational>) -> Self {
        let mut p = LpProblem::new(sense, objective);
        p.lower = vec![Some(Rational::zero()); p.objective.len()];
        p
    }

    pub fn var_count(&self) -> usize {
        self.objective.len()
    }

    pub fn push(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        self.constraints.push(Constraint { coeffs, relation, rhs });
    }

    fn check(&self) -> Result<(), LpError> {
        let n = self.var_count();
        if self.lower.len() != n || self.upper.len() != n {
            return Err(LpError::MalformedProblem(format!(
                "bounds cover {} and {} variables, objective has {}",
                self.lower.len(),
                self.upper.len(),
                n
            )));
        }
        for (i, c) in self.constraints.iter().enumerate() {
            if c.coeffs.len() != n {
                return Err(LpError::MalformedProblem(format!(
                    "constraint {i} has {} coefficients, expected {n}",
                    c.coeffs.len()
                )));
            }
        }
        Ok(())
    }
}

/// Multipliers proving that no point satisfies all rows and bounds: with the
/// stated signs, the aggregated inequality has left side identically zero and
/// strictly positive right side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FarkasCertificate {
    /// Per row: `>= 0` on `Ge` rows, `<= 0` on `Le` rows, free on `Eq` rows.
    pub row: Vec<Rational>,
    /// Per variable, `>= 0`; zero where the variable has no lower bound.
    pub lower: Vec<Rational>,
    /// Per variable, `<= 0`; zero where the variable has no upper bound.
    pub upper: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { variables: Vec<Rational>, objective_value: Rational },
    Infeasible { certificate: FarkasCertificate },
    Unbounded { point: Vec<Rational>, direction: Vec<Rational> },
}

#[derive(Clone, PartialEq, Eq, thiserror::Error, Debug)]
pub enum LpError {
    #[error("malformed problem: {0}")]
    MalformedProblem(String),
}

pub(crate) enum ColOrigin {
    /// `x[var] = lower + s`.
    Shift { var: usize },
    /// `x[var] = upper - s` (variable with an upper bound only).
    FlipShift { var: usize },
    /// Positive half of a free variable.
    Pos { var: usize },
    /// Negative half of a free variable.
    Neg { var: usize },
    /// Slack or surplus of a row.
    Slack,
}

pub(crate) enum RowOrigin {
    Constraint { index: usize, flipped: bool },
    UpperBound,
}

pub(crate) struct StandardForm {
    pub a: Vec<Vec<Rational>>,
    pub b: Vec<Rational>,
    pub cost: Vec<Rational>,
    pub cols: Vec<ColOrigin>,
    pub rows: Vec<RowOrigin>,
    /// Per row, a column usable as initial basis (coefficient `+1`, cost 0).
    pub slack_basis: Vec<Option<usize>>,
}

enum Converted {
    Ready(StandardForm),
    Infeasible(FarkasCertificate),
}

fn convert(p: &LpProblem) -> Converted {
    let n = p.var_count();
    let m = p.constraints.len();
    let minus_one = -Rational::from_integer(1.into());

    // Bound sanity: an empty interval is already a certificate.
    for j in 0..n {
        if let (Some(l), Some(u)) = (&p.lower[j], &p.upper[j]) {
            if l > u {
                let mut lower = vec![Rational::zero(); n];
                let mut upper = vec![Rational::zero(); n];
                lower[j] = Rational::from_integer(1.into());
                upper[j] = minus_one.clone();
                return Converted::Infeasible(FarkasCertificate {
                    row: vec![Rational::zero(); m],
                    lower,
                    upper,
                });
            }
        }
    }

    // Per-variable substitution making every structural column nonnegative.
    enum Subst {
        Shift(Rational),
        FlipShift(Rational),
        Free,
    }
    let mut subst = Vec::with_capacity(n);
    let mut cols: Vec<ColOrigin> = Vec::new();
    let mut cost: Vec<Rational> = Vec::new();
    let mut col_of_var: Vec<usize> = Vec::with_capacity(n);
    let sign = match p.sense {
        Sense::Minimize => Rational::from_integer(1.into()),
        Sense::Maximize => minus_one.clone(),
    };
    let mut bound_rows: Vec<(usize, Rational)> = Vec::new();
    for j in 0..n {
        let c = &p.objective[j] * &sign;
        col_of_var.push(cols.len());
        match (&p.lower[j], &p.upper[j]) {
            (Some(l), None) => {
                subst.push(Subst::Shift(l.clone()));
                cols.push(ColOrigin::Shift { var: j });
                cost.push(c);
            }
            (Some(l), Some(u)) => {
                subst.push(Subst::Shift(l.clone()));
                bound_rows.push((cols.len(), u - l));
                cols.push(ColOrigin::Shift { var: j });
                cost.push(c);
            }
            (None, Some(u)) => {
                subst.push(Subst::FlipShift(u.clone()));
                cols.push(ColOrigin::FlipShift { var: j });
                cost.push(-c);
            }
            (None, None) => {
                subst.push(Subst::Free);
                cols.push(ColOrigin::Pos { var: j });
                cost.push(c.clone());
                cols.push(ColOrigin::Neg { var: j });
                cost.push(-c);
            }
        }
    }

    let mut a: Vec<Vec<Rational>> = Vec::new();
    let mut b: Vec<Rational> = Vec::new();
    let mut rows: Vec<RowOrigin> = Vec::new();
    let mut slack_basis: Vec<Option<usize>> = Vec::new();

    for (i, con) in p.constraints.iter().enumerate() {
        // Adjust the right side for the substitutions.
        let mut rhs = con.rhs.clone();
        for j in 0..n {
            match &subst[j] {
                Subst::Shift(l) => rhs -= &con.coeffs[j] * l,
                Subst::FlipShift(u) => rhs -= &con.coeffs[j] * u,
                Subst::Free => {}
            }
        }
        if con.coeffs.iter().all(|c| c.is_zero()) {
            // Constant row: either trivially true (drop) or a one-line proof
            // of infeasibility.
            let ok = match con.relation {
                Relation::Le => !rhs.is_negative(),
                Relation::Ge => !rhs.is_positive(),
                Relation::Eq => rhs.is_zero(),
            };
            if ok {
                continue;
            }
            let mut row = vec![Rational::zero(); m];
            row[i] = match con.relation {
                Relation::Le => minus_one.clone(),
                Relation::Ge => Rational::from_integer(1.into()),
                Relation::Eq => {
                    if rhs.is_positive() {
                        Rational::from_integer(1.into())
                    } else {
                        minus_one.clone()
                    }
                }
            };
            return Converted::Infeasible(FarkasCertificate {
                row,
                lower: vec![Rational::zero(); n],
                upper: vec![Rational::zero(); n],
            });
        }

        let mut row = vec![Rational::zero(); cols.len()];
        for j in 0..n {
            let v = &con.coeffs[j];
            if v.is_zero() {
                continue;
            }
            let k = col_of_var[j];
            match &subst[j] {
                Subst::Shift(_) => row[k] = v.clone(),
                Subst::FlipShift(_) => row[k] = -v,
                Subst::Free => {
                    row[k] = v.clone();
                    row[k + 1] = -v;
                }
            }
        }
        let slack_sign = match con.relation {
            Relation::Le => Some(Rational::from_integer(1.into())),
            Relation::Ge => Some(minus_one.clone()),
            Relation::Eq => None,
        };
        // Negating a zero-rhs Ge row turns its surplus into a usable slack.
        let flipped =
            rhs.is_negative() || (rhs.is_zero() && matches!(con.relation, Relation::Ge));
        if flipped {
            for v in row.iter_mut() {
                if !v.is_zero() {
                    *v = -&*v;
                }
            }
            rhs = -rhs;
        }
        let mut basis_col = None;
        if let Some(mut s) = slack_sign {
            if flipped {
                s = -s;
            }
            let col = cols.len();
            if s.is_positive() {
                basis_col = Some(col);
            }
            cols.push(ColOrigin::Slack);
            cost.push(Rational::zero());
            row.push(s);
        }
        a.push(row);
        b.push(rhs);
        rows.push(RowOrigin::Constraint { index: i, flipped });
        slack_basis.push(basis_col);
    }

    for (col, cap) in bound_rows {
        let mut row = vec![Rational::zero(); cols.len()];
        row[col] = Rational::from_integer(1.into());
        let slack_col = cols.len();
        cols.push(ColOrigin::Slack);
        cost.push(Rational::zero());
        row.push(Rational::from_integer(1.into()));
        a.push(row);
        b.push(cap);
        rows.push(RowOrigin::UpperBound);
        slack_basis.push(Some(slack_col));
    }

    // Pad earlier rows to the final column count.
    let width = cols.len();
    for row in a.iter_mut() {
        row.resize(width, Rational::zero());
    }

    Converted::Ready(StandardForm { a, b, cost, cols, rows, slack_basis })
}

/// Value of the variable offsets alone (all standard columns at zero).
fn base_point(p: &LpProblem) -> Vec<Rational> {
    (0..p.var_count())
        .map(|j| match (&p.lower[j], &p.upper[j]) {
            (Some(l), _) => l.clone(),
            (None, Some(u)) => u.clone(),
            (None, None) => Rational::zero(),
        })
        .collect()
}

fn map_point(p: &LpProblem, std: &StandardForm, x_std: &[Rational]) -> Vec<Rational> {
    let mut x = base_point(p);
    for (k, value) in x_std.iter().enumerate() {
        if value.is_zero() {
            continue;
        }
        match std.cols[k] {
            ColOrigin::Shift { var } | ColOrigin::Pos { var } => x[var] += value,
            ColOrigin::FlipShift { var } | ColOrigin::Neg { var } => x[var] -= value,
            ColOrigin::Slack => {}
        }
    }
    x
}

fn map_direction(std: &StandardForm, n: usize, ray_std: &[Rational]) -> Vec<Rational> {
    let mut r = vec![Rational::zero(); n];
    for (k, value) in ray_std.iter().enumerate() {
        if value.is_zero() {
            continue;
        }
        match std.cols[k] {
            ColOrigin::Shift { var } | ColOrigin::Pos { var } => r[var] += value,
            ColOrigin::FlipShift { var } | ColOrigin::Neg { var } => r[var] -= value,
            ColOrigin::Slack => {}
        }
    }
    r
}

fn map_certificate(p: &LpProblem, std: &StandardForm, y_std: &[Rational]) -> FarkasCertificate {
    let n = p.var_count();
    let m = p.constraints.len();
    let mut row = vec![Rational::zero(); m];
    for (r, origin) in std.rows.iter().enumerate() {
        if let RowOrigin::Constraint { index, flipped } = origin {
            row[*index] = if *flipped { -&y_std[r] } else { y_std[r].clone() };
        }
    }
    // Aggregated structural coefficient of each variable; the bound
    // multipliers must cancel it.
    let mut lower = vec![Rational::zero(); n];
    let mut upper = vec![Rational::zero(); n];
    for j in 0..n {
        let mut combined = Rational::zero();
        for (i, con) in p.constraints.iter().enumerate() {
            if !row[i].is_zero() && !con.coeffs[j].is_zero() {
                combined += &row[i] * &con.coeffs[j];
            }
        }
        match (&p.lower[j], &p.upper[j]) {
            (Some(_), None) => lower[j] = -combined,
            (None, Some(_)) => upper[j] = -combined,
            (None, None) => debug_assert!(combined.is_zero()),
            (Some(_), Some(_)) => {}
        }
    }
    // Doubly bounded variables split the cancellation between their bound
    // row's multiplier (upper side) and the lower bound.
    for (r, origin) in std.rows.iter().enumerate() {
        if matches!(origin, RowOrigin::UpperBound) {
            let col = std.a[r]
                .iter()
                .position(|v| !v.is_zero())
                .expect("bound rows have a structural entry");
            if let ColOrigin::Shift { var } = std.cols[col] {
                upper[var] = y_std[r].clone();
            }
        }
    }
    for j in 0..n {
        if let (Some(_), Some(_)) = (&p.lower[j], &p.upper[j]) {
            let mut combined = Rational::zero();
            for (i, con) in p.constraints.iter().enumerate() {
                if !row[i].is_zero() && !con.coeffs[j].is_zero() {
                    combined += &row[i] * &con.coeffs[j];
                }
            }
            lower[j] = -(combined + &upper[j]);
        }
    }
    FarkasCertificate { row, lower, upper }
}

pub fn solve(p: &LpProblem) -> Result<LpOutcome, LpError> {
    p.check()?;
    let std = match convert(p) {
        Converted::Infeasible(certificate) => {
            return Ok(LpOutcome::Infeasible { certificate });
        }
        Converted::Ready(std) => std,
    };
    let outcome = match simplex::solve_standard(&std) {
        simplex::StdOutcome::Optimal { x } => {
            let variables = map_point(p, &std, &x);
            let objective_value = dot(&p.objective, &variables);
            LpOutcome::Optimal { variables, objective_value }
        }
        simplex::StdOutcome::Infeasible { y } => {
            LpOutcome::Infeasible { certificate: map_certificate(p, &std, &y) }
        }
        simplex::StdOutcome::Unbounded { x, ray } => LpOutcome::Unbounded {
            point: map_point(p, &std, &x),
            direction: map_direction(&std, p.var_count(), &ray),
        },
    };
    debug_assert!(verify_certificate(p, &outcome));
    Ok(outcome)
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| {
        if x.is_zero() || y.is_zero() {
            acc
        } else {
            acc + x * y
        }
    })
}

fn point_feasible(p: &LpProblem, x: &[Rational]) -> bool {
    if x.len() != p.var_count() {
        return false;
    }
    for con in &p.constraints {
        let lhs = dot(&con.coeffs, x);
        let ok = match con.relation {
            Relation::Le => lhs <= con.rhs,
            Relation::Eq => lhs == con.rhs,
            Relation::Ge => lhs >= con.rhs,
        };
        if !ok {
            return false;
        }
    }
    for j in 0..p.var_count() {
        if let Some(l) = &p.lower[j] {
            if &x[j] < l {
                return false;
            }
        }
        if let Some(u) = &p.upper[j] {
            if &x[j] > u {
                return false;
            }
        }
    }
    true
}

/// Replays an outcome against the problem data. Exact; no tolerances.
pub fn verify_certificate(p: &LpProblem, outcome: &LpOutcome) -> bool {
    if p.check().is_err() {
        return false;
    }
    let n = p.var_count();
    match outcome {
        LpOutcome::Optimal { variables, objective_value } => {
            point_feasible(p, variables) && dot(&p.objective, variables) == *objective_value
        }
        LpOutcome::Infeasible { certificate } => {
            let FarkasCertificate { row, lower, upper } = certificate;
            if row.len() != p.constraints.len() || lower.len() != n || upper.len() != n {
                return false;
            }
            for (i, con) in p.constraints.iter().enumerate() {
                let ok = match con.relation {
                    Relation::Le => !row[i].is_positive(),
                    Relation::Ge => !row[i].is_negative(),
                    Relation::Eq => true,
                };
                if !ok {
                    return false;
                }
            }
            let mut rhs_total = Rational::zero();
            for (i, con) in p.constraints.iter().enumerate() {
                if !row[i].is_zero() {
                    rhs_total += &row[i] * &con.rhs;
                }
            }
            for j in 0..n {
                match (&p.lower[j], lower[j].is_zero()) {
                    (None, false) => return false,
                    (Some(l), _) => {
                        if lower[j].is_negative() {
                            return false;
                        }
                        rhs_total += &lower[j] * l;
                    }
                    _ => {}
                }
                match (&p.upper[j], upper[j].is_zero()) {
                    (None, false) => return false,
                    (Some(u), _) => {
                        if upper[j].is_positive() {
                            return false;
                        }
                        rhs_total += &upper[j] * u;
                    }
                    _ => {}
                }
            }
            for j in 0..n {
                let mut combined = &lower[j] + &upper[j];
                for (i, con) in p.constraints.iter().enumerate() {
                    if !row[i].is_zero() && !con.coeffs[j].is_zero() {
                        combined += &row[i] * &con.coeffs[j];
                    }
                }
                if !combined.is_zero() {
                    return false;
                }
            }
            rhs_total.is_positive()
        }
        LpOutcome::Unbounded { point, direction } => {
            if direction.len() != n || direction.iter().all(|v| v.is_zero()) {
                return false;
            }
            if !point_feasible(p, point) {
                return false;
            }
            for con in &p.constraints {
                let along = dot(&con.coeffs, direction);
                let ok = match con.relation {
                    Relation::Le => !along.is_positive(),
                    Relation::Eq => along.is_zero(),
                    Relation::Ge => !along.is_negative(),
                };
                if !ok {
                    return false;
                }
            }
            for j in 0..n {
                if p.lower[j].is_some() && direction[j].is_negative() {
                    return false;
                }
                if p.upper[j].is_some() && direction[j].is_positive() {
                    return false;
                }
            }
            let drift = dot(&p.objective, direction);
            match p.sense {
                Sense::Maximize => drift.is_positive(),
                Sense::Minimize => drift.is_negative(),
            }
        }
    }
}

#[cfg(test)]
mod tests;
