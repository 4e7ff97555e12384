//! Two-phase primal simplex on a dense rational tableau.

use num_traits::{One, Signed, Zero};

use super::StandardForm;
use crate::rational::Rational;

pub(crate) enum StdOutcome {
    /// Values of the standard columns (artificials excluded).
    Optimal { x: Vec<Rational> },
    /// Row multipliers `y` with `y . col <= 0` for every structural and
    /// slack column and `y . b > 0`.
    Infeasible { y: Vec<Rational> },
    Unbounded { x: Vec<Rational>, ray: Vec<Rational> },
}

/// Degenerate pivots tolerated before pricing falls back to Bland's rule.
const DEGENERATE_STREAK_LIMIT: u32 = 12;

struct Tableau {
    /// `m x (width + 1)`; the last column is the right side.
    rows: Vec<Vec<Rational>>,
    /// Reduced cost row for the active phase; last entry is minus the
    /// current objective value.
    cost: Vec<Rational>,
    basis: Vec<usize>,
    /// Columns at `art_start..` are artificial.
    art_start: usize,
    /// Artificial columns that have left the basis and may not re-enter.
    banned: Vec<bool>,
    streak: u32,
    bland: bool,
}

impl Tableau {
    fn width(&self) -> usize {
        self.cost.len() - 1
    }

    fn rhs(&self, r: usize) -> &Rational {
        let w = self.rows[r].len() - 1;
        &self.rows[r][w]
    }

    fn pivot(&mut self, r: usize, jc: usize) {
        let pv = self.rows[r][jc].clone();
        debug_assert!(pv.is_positive());
        if !pv.is_one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v /= &pv;
                }
            }
        }
        let pivot_row = self.rows[r].clone();
        for (k, row) in self.rows.iter_mut().enumerate() {
            if k == r {
                continue;
            }
            let f = row[jc].clone();
            if f.is_zero() {
                continue;
            }
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        let f = self.cost[jc].clone();
        if !f.is_zero() {
            for (v, p) in self.cost.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        if self.basis[r] >= self.art_start {
            self.banned[self.basis[r] - self.art_start] = true;
        }
        self.basis[r] = jc;
    }

    fn allowed(&self, j: usize, structural_only: bool) -> bool {
        if j >= self.art_start {
            !structural_only && !self.banned[j - self.art_start]
        } else {
            true
        }
    }

    fn choose_entering(&self, structural_only: bool) -> Option<usize> {
        let w = self.width();
        if self.bland {
            (0..w).find(|&j| self.allowed(j, structural_only) && self.cost[j].is_negative())
        } else {
            let mut best: Option<usize> = None;
            for j in 0..w {
                if !self.allowed(j, structural_only) || !self.cost[j].is_negative() {
                    continue;
                }
                match best {
                    None => best = Some(j),
                    Some(b) => {
                        if self.cost[j] < self.cost[b] {
                            best = Some(j);
                        }
                    }
                }
            }
            best
        }
    }

    /// Smallest-ratio row for column `jc`, ties by lowest basis column
    /// (Bland-compatible, used in both pricing modes).
    fn choose_leaving(&self, jc: usize) -> Option<usize> {
        let mut best: Option<(usize, Rational)> = None;
        for r in 0..self.rows.len() {
            if !self.rows[r][jc].is_positive() {
                continue;
            }
            let theta = self.rhs(r) / &self.rows[r][jc];
            best = match best {
                None => Some((r, theta)),
                Some((br, bt)) => {
                    if theta < bt || (theta == bt && self.basis[r] < self.basis[br]) {
                        Some((r, theta))
                    } else {
                        Some((br, bt))
                    }
                }
            };
        }
        best.map(|(r, _)| r)
    }

    fn note_progress(&mut self, degenerate: bool) {
        if degenerate {
            self.streak += 1;
            if self.streak >= DEGENERATE_STREAK_LIMIT {
                self.bland = true;
            }
        } else {
            self.streak = 0;
            self.bland = false;
        }
    }

    /// Runs the active phase to completion. Returns the entering column if
    /// the objective is unbounded below.
    fn run(&mut self, structural_only: bool) -> Option<usize> {
        loop {
            let Some(jc) = self.choose_entering(structural_only) else {
                return None;
            };
            let Some(r) = self.choose_leaving(jc) else {
                return Some(jc);
            };
            let degenerate = self.rhs(r).is_zero();
            self.pivot(r, jc);
            self.note_progress(degenerate);
        }
    }

    /// Installs a fresh reduced-cost row for the given phase costs, which
    /// may be shorter than the tableau (columns past the end cost zero).
    fn rebuild_cost(&mut self, costs: &[Rational]) {
        let w = self.width();
        let mut cost = costs.to_vec();
        cost.resize(w + 1, Rational::zero());
        for (r, &bc) in self.basis.iter().enumerate() {
            let cb = if bc < costs.len() {
                costs[bc].clone()
            } else {
                Rational::zero()
            };
            if cb.is_zero() {
                continue;
            }
            for (v, t) in cost.iter_mut().zip(&self.rows[r]) {
                if !t.is_zero() {
                    *v -= &cb * t;
                }
            }
        }
        self.cost = cost;
    }
}

pub(crate) fn solve_standard(std: &StandardForm) -> StdOutcome {
    let m = std.a.len();
    let n = std.cost.len();
    debug_assert!(std.b.iter().all(|v| !v.is_negative()));

    // Initial basis: a row's own slack where the sign allows, otherwise a
    // fresh artificial column.
    let mut art_rows: Vec<usize> = Vec::new();
    for (r, cand) in std.slack_basis.iter().enumerate() {
        if cand.is_none() {
            art_rows.push(r);
        }
    }
    let art_start = n;
    let width = n + art_rows.len();
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut basis = vec![0usize; m];
    for r in 0..m {
        let mut row = Vec::with_capacity(width + 1);
        row.extend(std.a[r].iter().cloned());
        row.resize(width, Rational::zero());
        row.push(std.b[r].clone());
        rows.push(row);
    }
    for (k, &r) in art_rows.iter().enumerate() {
        rows[r][art_start + k] = Rational::one();
        basis[r] = art_start + k;
    }
    for (r, cand) in std.slack_basis.iter().enumerate() {
        if let Some(col) = cand {
            basis[r] = *col;
        }
    }
    let initial_basis = basis.clone();

    let mut t = Tableau {
        rows,
        cost: vec![Rational::zero(); width + 1],
        basis,
        art_start,
        banned: vec![false; width - n],
        streak: 0,
        bland: false,
    };

    if !art_rows.is_empty() {
        let mut phase1 = vec![Rational::zero(); width];
        for k in 0..art_rows.len() {
            phase1[art_start + k] = Rational::one();
        }
        t.rebuild_cost(&phase1);
        let unbounded = t.run(false);
        debug_assert!(unbounded.is_none(), "phase one is bounded below by zero");
        let value = -t.cost[width].clone();
        if value.is_positive() {
            // y is read off the reduced costs of the initial basis columns:
            // each is a unit column of its row, so rc = c - y_row.
            let y = (0..m)
                .map(|r| {
                    let k = initial_basis[r];
                    let c = if k >= art_start { Rational::one() } else { Rational::zero() };
                    c - &t.cost[k]
                })
                .collect();
            return StdOutcome::Infeasible { y };
        }
        // Drive leftover artificials out of the basis; rows that cannot
        // pivot are linearly dependent and get dropped.
        let mut r = 0;
        while r < t.rows.len() {
            if t.basis[r] >= art_start {
                debug_assert!(t.rhs(r).is_zero());
                if let Some(jc) = (0..n).find(|&j| !t.rows[r][j].is_zero()) {
                    // Entering on a zero row keeps feasibility regardless of
                    // the entry's sign.
                    let pv = t.rows[r][jc].clone();
                    if pv.is_negative() {
                        for v in t.rows[r].iter_mut() {
                            if !v.is_zero() {
                                *v = -&*v;
                            }
                        }
                    }
                    t.pivot(r, jc);
                    r += 1;
                } else {
                    t.rows.remove(r);
                    t.basis.remove(r);
                }
            } else {
                r += 1;
            }
        }
    }

    t.streak = 0;
    t.bland = false;
    t.rebuild_cost(&std.cost);
    if let Some(jc) = t.run(true) {
        let x = extract(&t, n);
        let mut ray = vec![Rational::zero(); n];
        ray[jc] = Rational::one();
        for (r, &bc) in t.basis.iter().enumerate() {
            if bc < n && !t.rows[r][jc].is_zero() {
                ray[bc] = -&t.rows[r][jc];
            }
        }
        return StdOutcome::Unbounded { x, ray };
    }
    StdOutcome::Optimal { x: extract(&t, n) }
}

fn extract(t: &Tableau, n: usize) -> Vec<Rational> {
    let mut x = vec![Rational::zero(); n];
    for (r, &bc) in t.basis.iter().enumerate() {
        if bc < n {
            x[bc] = t.rhs(r).clone();
        }
    }
    x
}
