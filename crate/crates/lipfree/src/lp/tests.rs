use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::*;
use crate::rational::{int, rat};

fn optimal_value(outcome: &LpOutcome) -> &Rational {
    match outcome {
        LpOutcome::Optimal { objective_value, .. } => objective_value,
        other => panic!("expected optimal, got {other:?}"),
    }
}

#[test]
fn maximize_single_bounded_variable() {
    let mut p = LpProblem::new(Sense::Maximize, vec![int(1)]);
    p.push(vec![int(1)], Relation::Le, int(3));
    let out = solve(&p).unwrap();
    assert_eq!(optimal_value(&out), &int(3));
    assert!(verify_certificate(&p, &out));
}

#[test]
fn contradictory_rows_yield_verified_certificate() {
    let mut p = LpProblem::new(Sense::Minimize, vec![int(0)]);
    p.push(vec![int(1)], Relation::Ge, int(1));
    p.push(vec![int(1)], Relation::Le, int(0));
    let out = solve(&p).unwrap();
    assert!(matches!(out, LpOutcome::Infeasible { .. }));
    assert!(verify_certificate(&p, &out));
}

#[test]
fn crossed_bounds_yield_certificate() {
    let mut p = LpProblem::new(Sense::Minimize, vec![int(1)]);
    p.lower[0] = Some(int(2));
    p.upper[0] = Some(int(1));
    let out = solve(&p).unwrap();
    assert!(matches!(out, LpOutcome::Infeasible { .. }));
    assert!(verify_certificate(&p, &out));
}

#[test]
fn unbounded_direction_is_reported_and_verified() {
    let p = LpProblem::nonnegative(Sense::Maximize, vec![int(1), int(-1)]);
    let out = solve(&p).unwrap();
    match &out {
        LpOutcome::Unbounded { direction, .. } => assert!(direction[0].is_positive()),
        other => panic!("expected unbounded, got {other:?}"),
    }
    assert!(verify_certificate(&p, &out));
}

#[test]
fn equality_system_solved_exactly() {
    // min x subject to x + y = 2, x - y = 0.
    let mut p = LpProblem::nonnegative(Sense::Minimize, vec![int(1), int(0)]);
    p.push(vec![int(1), int(1)], Relation::Eq, int(2));
    p.push(vec![int(1), int(-1)], Relation::Eq, int(0));
    let out = solve(&p).unwrap();
    match &out {
        LpOutcome::Optimal { variables, objective_value } => {
            assert_eq!(variables, &vec![int(1), int(1)]);
            assert_eq!(objective_value, &int(1));
        }
        other => panic!("expected optimal, got {other:?}"),
    }
}

#[test]
fn beale_degenerate_cycle_terminates() {
    // A classic stalling program; without anti-cycling safeguards a naive
    // steepest-descent simplex loops forever on it.
    let mut p = LpProblem::nonnegative(
        Sense::Minimize,
        vec![rat(-3, 4), int(150), rat(-1, 50), int(6)],
    );
    p.push(vec![rat(1, 4), int(-60), rat(-1, 25), int(9)], Relation::Le, int(0));
    p.push(vec![rat(1, 2), int(-90), rat(-1, 50), int(3)], Relation::Le, int(0));
    p.push(vec![int(0), int(0), int(1), int(0)], Relation::Le, int(1));
    let out = solve(&p).unwrap();
    assert_eq!(optimal_value(&out), &rat(-1, 20));
    assert!(verify_certificate(&p, &out));
}

#[test]
fn row_order_does_not_change_the_value() {
    let mut p = LpProblem::nonnegative(Sense::Maximize, vec![int(2), int(3)]);
    p.push(vec![int(1), int(2)], Relation::Le, int(4));
    p.push(vec![int(3), int(1)], Relation::Le, int(5));
    p.push(vec![int(1), int(1)], Relation::Le, int(3));
    let v1 = optimal_value(&solve(&p).unwrap()).clone();
    let mut q = p.clone();
    q.constraints.reverse();
    let v2 = optimal_value(&solve(&q).unwrap()).clone();
    assert_eq!(v1, v2);
}

#[test]
fn tampered_outcomes_fail_verification() {
    let mut p = LpProblem::nonnegative(Sense::Maximize, vec![int(2), int(3)]);
    p.push(vec![int(1), int(2)], Relation::Le, int(4));
    p.push(vec![int(3), int(1)], Relation::Le, int(5));
    let out = solve(&p).unwrap();
    assert!(verify_certificate(&p, &out));
    if let LpOutcome::Optimal { variables, objective_value } = &out {
        let mut vars = variables.clone();
        vars[0] += int(1);
        let fake = LpOutcome::Optimal {
            variables: vars,
            objective_value: objective_value.clone(),
        };
        assert!(!verify_certificate(&p, &fake));
        let fake_value = LpOutcome::Optimal {
            variables: variables.clone(),
            objective_value: objective_value + int(1),
        };
        assert!(!verify_certificate(&p, &fake_value));
    } else {
        panic!("expected optimal");
    }

    let mut q = LpProblem::new(Sense::Minimize, vec![int(0)]);
    q.push(vec![int(1)], Relation::Ge, int(1));
    q.push(vec![int(1)], Relation::Le, int(0));
    if let LpOutcome::Infeasible { certificate } = solve(&q).unwrap() {
        let mut bad = certificate.clone();
        bad.row[0] = -bad.row[0].clone();
        assert!(!verify_certificate(&q, &LpOutcome::Infeasible { certificate: bad }));
    } else {
        panic!("expected infeasible");
    }
}

/// Exact solver for an `n x n` rational system; `None` when singular.
fn gauss(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let pv = a[col][col].clone();
        for v in a[col].iter_mut() {
            *v /= &pv;
        }
        b[col] /= &pv;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in 0..n {
                let t = &f * &a[col][c];
                a[r][c] -= t;
            }
            let t = &f * &b[col];
            b[r] -= t;
        }
    }
    Some(b)
}

fn subsets(pool: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(start: usize, pool: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..pool {
            current.push(i);
            rec(i + 1, pool, k, current, out);
            current.pop();
        }
    }
    rec(0, pool, k, &mut current, &mut out);
    out
}

/// Brute-force oracle for fully boxed problems: enumerate all candidate
/// vertices (every choice of `n` active hyperplanes), keep the best feasible
/// one. Sound because a nonempty bounded polyhedron has an optimal vertex.
fn vertex_oracle(p: &LpProblem) -> Option<Rational> {
    let n = p.var_count();
    // Hyperplanes: rows as equalities, then x_j = l_j, then x_j = u_j.
    let mut planes: Vec<(Vec<Rational>, Rational)> = Vec::new();
    for con in &p.constraints {
        planes.push((con.coeffs.clone(), con.rhs.clone()));
    }
    for j in 0..n {
        let mut e = vec![int(0); n];
        e[j] = int(1);
        planes.push((e.clone(), p.lower[j].clone().unwrap()));
        planes.push((e, p.upper[j].clone().unwrap()));
    }
    let mut best: Option<Rational> = None;
    for subset in subsets(planes.len(), n) {
        let a: Vec<Vec<Rational>> = subset.iter().map(|&i| planes[i].0.clone()).collect();
        let b: Vec<Rational> = subset.iter().map(|&i| planes[i].1.clone()).collect();
        let Some(x) = gauss(a, b) else { continue };
        if !point_feasible(p, &x) {
            continue;
        }
        let value = dot(&p.objective, &x);
        best = Some(match best {
            None => value,
            Some(old) => match p.sense {
                Sense::Maximize => old.max(value),
                Sense::Minimize => old.min(value),
            },
        });
    }
    best
}

fn random_rational(rng: &mut StdRng, span: i64) -> Rational {
    rat(rng.gen_range(-span..=span), rng.gen_range(1..=3))
}

#[test]
fn random_boxed_problems_match_vertex_enumeration() {
    let mut rng = StdRng::seed_from_u64(991);
    for case in 0..160 {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(0..=4);
        let sense = if rng.gen_bool(0.5) { Sense::Maximize } else { Sense::Minimize };
        let objective = (0..n).map(|_| random_rational(&mut rng, 3)).collect();
        let mut p = LpProblem::new(sense, objective);
        for j in 0..n {
            p.lower[j] = Some(int(0));
            p.upper[j] = Some(int(rng.gen_range(1..=3)));
        }
        for _ in 0..m {
            let coeffs = (0..n).map(|_| random_rational(&mut rng, 3)).collect();
            let relation = match rng.gen_range(0..3) {
                0 => Relation::Le,
                1 => Relation::Ge,
                _ => Relation::Eq,
            };
            p.push(coeffs, relation, random_rational(&mut rng, 4));
        }
        let out = solve(&p).unwrap();
        assert!(verify_certificate(&p, &out), "case {case}: certificate rejected");
        match (&out, vertex_oracle(&p)) {
            (LpOutcome::Optimal { objective_value, .. }, Some(best)) => {
                assert_eq!(objective_value, &best, "case {case}: value mismatch");
            }
            (LpOutcome::Infeasible { .. }, None) => {}
            (got, want) => panic!("case {case}: solver said {got:?}, oracle said {want:?}"),
        }
    }
}

#[test]
fn random_infeasible_systems_are_certified() {
    let mut rng = StdRng::seed_from_u64(992);
    for _ in 0..60 {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(0..=3);
        let mut p = LpProblem::nonnegative(Sense::Minimize, vec![int(0); n]);
        for _ in 0..m {
            let coeffs = (0..n).map(|_| random_rational(&mut rng, 3)).collect();
            p.push(coeffs, Relation::Le, random_rational(&mut rng, 4));
        }
        // A contradictory pair on the first variable forces infeasibility.
        let mut e = vec![int(0); n];
        e[0] = int(1);
        p.push(e.clone(), Relation::Ge, int(5));
        p.push(e, Relation::Le, int(4));
        let out = solve(&p).unwrap();
        assert!(matches!(out, LpOutcome::Infeasible { .. }));
        assert!(verify_certificate(&p, &out));
    }
}

#[test]
fn malformed_problems_are_rejected() {
    let mut p = LpProblem::new(Sense::Minimize, vec![int(1), int(2)]);
    p.push(vec![int(1)], Relation::Le, int(1));
    assert!(matches!(solve(&p), Err(LpError::MalformedProblem(_))));
}
