//! Free-space geometry: norms, optimal and minimal-optimal representations,
//! extreme molecules, shadows, and marginals.
//!
//! The norm of a free vector is computed on the Lipschitz side (maximize the
//! pairing over the unit ball of functions vanishing at the base); the mass-
//! minimizing representation is the transport-style primal. Exact strong
//! duality makes the two values equal, and the test suite keeps both forms
//! as mutual oracles.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::deleeuw::{molecule, push_forward, FreeVector, LipFunction, Measure};
use crate::lp::{self, LpOutcome, LpProblem, Relation, Sense};
use crate::order;
use crate::rational::Rational;
use crate::space::{FiniteMetricSpace, PairId};

/// Point-count guard for the brute-force extreme-point oracle.
const ORACLE_LIMIT: usize = 8;

#[derive(Clone, PartialEq, Eq, thiserror::Error, Debug)]
pub enum FreeSpaceError {
    #[error("vertex oracle is limited to {limit} points, space has {size}")]
    SpaceTooLarge { size: usize, limit: usize },
}

/// Everything the library knows about one representation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RepresentationReport {
    pub measure: Measure,
    pub mass: Rational,
    pub free_norm: Rational,
    pub optimal: bool,
    pub minimal: bool,
    pub shadow: BTreeSet<usize>,
    pub marginal_first: BTreeMap<usize, Rational>,
    pub marginal_second: BTreeMap<usize, Rational>,
}

/// The free-space norm with an optimal Lipschitz witness: maximizes the
/// pairing of `m` over functions with best Lipschitz constant at most one
/// vanishing at the base.
pub fn norm_witness(
    space: &FiniteMetricSpace,
    m: &FreeVector,
) -> (Rational, LipFunction) {
    let base = space.base();
    // One free variable per non-base point, in point order.
    let vars: Vec<usize> = (0..space.len()).filter(|&x| x != base).collect();
    let column: BTreeMap<usize, usize> =
        vars.iter().enumerate().map(|(j, &x)| (x, j)).collect();
    let objective: Vec<Rational> = vars.iter().map(|&x| m.coeff(x)).collect();
    let mut problem = LpProblem::new(Sense::Maximize, objective);
    for pair in space.pairs() {
        let mut coeffs = vec![Rational::zero(); vars.len()];
        if pair.from != base {
            coeffs[column[&pair.from]] += Rational::one();
        }
        if pair.to != base {
            coeffs[column[&pair.to]] -= Rational::one();
        }
        problem.push(coeffs, Relation::Le, space.pair_dist(pair).clone());
    }
    match lp::solve(&problem).expect("norm program is well formed") {
        LpOutcome::Optimal { variables, objective_value } => {
            let mut values = vec![Rational::zero(); space.len()];
            for (j, &x) in vars.iter().enumerate() {
                values[x] = variables[j].clone();
            }
            let witness = LipFunction::new(space, values).expect("base entry is zero");
            (objective_value, witness)
        }
        _ => unreachable!("norm program is feasible (f = 0) and box-bounded"),
    }
}

/// The free-space norm of `m`.
pub fn free_norm(space: &FiniteMetricSpace, m: &FreeVector) -> Rational {
    norm_witness(space, m).0
}

/// A nonnegative representation of `m` of least total mass (a vertex of the
/// representation polytope, deterministic across runs).
pub fn optimal_representation(space: &FiniteMetricSpace, m: &FreeVector) -> Measure {
    let pairs: Vec<PairId> = space.pairs().collect();
    let mut problem = LpProblem::nonnegative(
        Sense::Minimize,
        vec![Rational::one(); pairs.len()],
    );
    for x in 0..space.len() {
        if x == space.base() {
            continue;
        }
        let coeffs = pairs.iter().map(|&p| molecule(space, p).coeff(x)).collect();
        problem.push(coeffs, Relation::Eq, m.coeff(x));
    }
    match lp::solve(&problem).expect("representation program is well formed") {
        LpOutcome::Optimal { variables, .. } => {
            let atoms: Vec<(PairId, Rational)> = pairs
                .into_iter()
                .zip(variables)
                .filter(|(_, mass)| !mass.is_zero())
                .collect();
            Measure::from_atoms(space, atoms).expect("masses are nonnegative")
        }
        // Always feasible: each coordinate is a multiple of a base molecule.
        _ => unreachable!("representation program is feasible and bounded below"),
    }
}

/// Mass equals the norm of the pushforward.
pub fn is_optimal(space: &FiniteMetricSpace, measure: &Measure) -> bool {
    measure.total_mass() == free_norm(space, &push_forward(space, measure))
}

/// Shrinks a mass-minimal representation of `m` to a minimal one and
/// reports on it; the result is both optimal and minimal.
pub fn minimal_optimal_representation(
    space: &FiniteMetricSpace,
    m: &FreeVector,
) -> RepresentationReport {
    let optimal = optimal_representation(space, m);
    let minimal = order::minimize_below(space, &optimal);
    report(space, &minimal)
}

/// Full analysis of one measure.
pub fn report(space: &FiniteMetricSpace, measure: &Measure) -> RepresentationReport {
    let mass = measure.total_mass();
    let norm = free_norm(space, &push_forward(space, measure));
    let (marginal_first, marginal_second) = marginals(space, measure);
    RepresentationReport {
        optimal: mass == norm,
        minimal: order::is_minimal(space, measure),
        shadow: shadow(space, measure),
        measure: measure.clone(),
        mass,
        free_norm: norm,
        marginal_first,
        marginal_second,
    }
}

/// Strict-detour test: the molecule of a pair is an extreme point of the
/// unit ball exactly when no third point sits on a geodesic between its
/// endpoints.
pub fn is_extreme_molecule(space: &FiniteMetricSpace, pair: PairId) -> bool {
    let d = space.pair_dist(pair);
    (0..space.len())
        .filter(|&u| u != pair.from && u != pair.to)
        .all(|u| *d < space.dist(pair.from, u) + space.dist(u, pair.to))
}

/// Brute-force vertex enumeration of the unit ball: a molecule is extreme
/// exactly when it is not a convex combination of the other molecules (an LP
/// feasibility test per pair). Guarded to small spaces.
pub fn extreme_points_oracle(
    space: &FiniteMetricSpace,
) -> Result<BTreeSet<PairId>, FreeSpaceError> {
    if space.len() > ORACLE_LIMIT {
        return Err(FreeSpaceError::SpaceTooLarge {
            size: space.len(),
            limit: ORACLE_LIMIT,
        });
    }
    let pairs: Vec<PairId> = space.pairs().collect();
    let mut extreme = BTreeSet::new();
    for &candidate in &pairs {
        let others: Vec<PairId> =
            pairs.iter().copied().filter(|&q| q != candidate).collect();
        let target = molecule(space, candidate);
        let mut problem = LpProblem::nonnegative(
            Sense::Minimize,
            vec![Rational::zero(); others.len()],
        );
        problem.push(
            vec![Rational::one(); others.len()],
            Relation::Eq,
            Rational::one(),
        );
        for x in 0..space.len() {
            if x == space.base() {
                continue;
            }
            let coeffs = others.iter().map(|&q| molecule(space, q).coeff(x)).collect();
            problem.push(coeffs, Relation::Eq, target.coeff(x));
        }
        match lp::solve(&problem).expect("combination program is well formed") {
            LpOutcome::Optimal { .. } => {}
            LpOutcome::Infeasible { .. } => {
                extreme.insert(candidate);
            }
            LpOutcome::Unbounded { .. } => {
                unreachable!("feasible region is a polytope")
            }
        }
    }
    Ok(extreme)
}

/// All points appearing as either coordinate of a supported pair.
pub fn shadow(space: &FiniteMetricSpace, measure: &Measure) -> BTreeSet<usize> {
    let mut points = BTreeSet::new();
    for (pair, _) in measure.atoms() {
        debug_assert!(pair.from < space.len() && pair.to < space.len());
        points.insert(pair.from);
        points.insert(pair.to);
    }
    points
}

/// Coordinate pushforwards: total outgoing and incoming mass per point.
/// Each sums to the measure's total mass; only nonzero entries are stored.
pub fn marginals(
    space: &FiniteMetricSpace,
    measure: &Measure,
) -> (BTreeMap<usize, Rational>, BTreeMap<usize, Rational>) {
    let mut first: BTreeMap<usize, Rational> = BTreeMap::new();
    let mut second: BTreeMap<usize, Rational> = BTreeMap::new();
    for (pair, mass) in measure.atoms() {
        debug_assert!(pair.from < space.len() && pair.to < space.len());
        *first.entry(pair.from).or_insert_with(Rational::zero) += mass;
        *second.entry(pair.to).or_insert_with(Rational::zero) += mass;
    }
    (first, second)
}
