//! The representation order on pair measures and its decision procedures.
//!
//! A measure precedes another when every cone member integrates to a smaller
//! or equal value against it. On finite spaces the cone's polar is generated
//! by the detour vectors (one per ordered triple), so the order is an LP
//! feasibility question: does the difference lie in the cone those vectors
//! generate? Infeasibility yields a Farkas multiplier whose negation is a
//! separating cone member, so every decision carries checkable evidence.
//!
//! Minimality — no strictly smaller measure — is one LP: maximize an
//! interior-point objective over the eliminations that stay within the
//! measure. The interior objective is strictly positive on every nonzero
//! elimination, so the optimum is zero exactly for minimal measures, and the
//! optimizer itself performs a maximal descent (used by [`minimize_below`]).

use num_traits::{One, Signed, Zero};

use crate::cone::{self, ConeFunction};
use crate::deleeuw::Measure;
use crate::lp::{self, LpOutcome, LpProblem, Relation, Sense};
use crate::rational::Rational;
use crate::space::{FiniteMetricSpace, PairId};

#[derive(Clone, PartialEq, Eq, thiserror::Error, Debug)]
pub enum OrderError {
    #[error("triple entries must be three distinct points of the space")]
    BadTriple,
    #[error("elimination steps need a positive size")]
    NonpositiveStep,
    #[error("step would drive the mass at ({from}, {to}) negative")]
    InfeasibleStep { from: usize, to: usize },
}

/// Evidence attached to an order decision.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum OrderWitness {
    /// Coefficients `(generator index, t)` with the difference of the two
    /// measures equal to the combination `sum t * v`.
    GeneratorCombination(Vec<(usize, Rational)>),
    /// A verified cone member integrating strictly larger against the left
    /// measure than against the right one.
    SeparatingG(ConeFunction),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrderDecision {
    pub holds: bool,
    pub witness: OrderWitness,
}

/// Dense coefficient rows of the generator matrix: entry `[pair][generator]`.
fn generator_rows(space: &FiniteMetricSpace) -> Vec<Vec<Rational>> {
    let generators = cone::dual_generators(space);
    let mut rows = vec![vec![Rational::zero(); generators.len()]; space.pair_count()];
    for (j, gen) in generators.iter().enumerate() {
        for (pair, weight) in gen.entries() {
            rows[space.pair_index(pair)][j] += weight;
        }
    }
    rows
}

/// Decides whether a signed pair vector is a nonnegative combination of the
/// detour generators. Returns the combination, or a separating cone member
/// pairing strictly negatively with the vector.
pub fn dual_cone_membership(
    space: &FiniteMetricSpace,
    vector: &[Rational],
) -> Result<Vec<(usize, Rational)>, ConeFunction> {
    assert_eq!(vector.len(), space.pair_count(), "one entry per ordered pair");
    let generator_count = cone::dual_generators(space).len();
    let mut problem = LpProblem::nonnegative(
        Sense::Minimize,
        vec![Rational::one(); generator_count],
    );
    for (row, rhs) in generator_rows(space).into_iter().zip(vector) {
        problem.push(row, Relation::Eq, rhs.clone());
    }
    match lp::solve(&problem).expect("membership program is well formed") {
        LpOutcome::Optimal { variables, .. } => Ok(variables
            .into_iter()
            .enumerate()
            .filter(|(_, t)| !t.is_zero())
            .collect()),
        LpOutcome::Infeasible { certificate } => {
            // The multipliers y satisfy <y, v> <= 0 on every generator and
            // <y, vector> > 0, so -y is a member separating the vector from
            // the cone.
            let g = ConeFunction::from_values(
                space,
                certificate.row.iter().map(|y| -y).collect(),
            )
            .expect("one multiplier per pair row");
            debug_assert!(cone::membership(space, &g));
            debug_assert!(g.pair_dense(vector).is_negative());
            Err(g)
        }
        LpOutcome::Unbounded { .. } => {
            unreachable!("total coefficient mass is bounded below by zero")
        }
    }
}

/// `min{<g, vector> : g in G, -1 <= g <= 1}`, the boxed separation value.
/// Nonnegative exactly when no boxed member separates the vector from the
/// dual cone.
pub fn boxed_pairing_min(space: &FiniteMetricSpace, vector: &[Rational]) -> Rational {
    assert_eq!(vector.len(), space.pair_count(), "one entry per ordered pair");
    // In translated variables p = 1 - g (so p in [0, 2]) every generator row
    // becomes <p, v> <= detour slack, which starts feasible at p = 0, and
    // min <g, vector> = <1, vector> - max <p, vector>.
    let mut problem = LpProblem::nonnegative(Sense::Maximize, vector.to_vec());
    let two = Rational::from_integer(2.into());
    for bound in problem.upper.iter_mut() {
        *bound = Some(two.clone());
    }
    for gen in cone::dual_generators(space) {
        let mut coeffs = vec![Rational::zero(); space.pair_count()];
        gen.scatter(&mut coeffs, &Rational::one());
        problem.push(coeffs, Relation::Le, space.triple_slack(gen.x, gen.u, gen.y));
    }
    let total: Rational = vector.iter().fold(Rational::zero(), |acc, v| acc + v);
    match lp::solve(&problem).expect("boxed program is well formed") {
        LpOutcome::Optimal { objective_value, .. } => total - objective_value,
        _ => unreachable!("boxed program is feasible and bounded"),
    }
}

fn difference_dense(
    space: &FiniteMetricSpace,
    left: &Measure,
    right: &Measure,
) -> Vec<Rational> {
    let mut dense = right.to_dense(space);
    for (pair, mass) in left.atoms() {
        dense[space.pair_index(pair)] -= mass;
    }
    dense
}

/// Decides the representation order with evidence: either the generator
/// combination carrying `left` to `right`, or a separating member.
pub fn precedes(
    space: &FiniteMetricSpace,
    left: &Measure,
    right: &Measure,
) -> OrderDecision {
    match dual_cone_membership(space, &difference_dense(space, left, right)) {
        Ok(combination) => OrderDecision {
            holds: true,
            witness: OrderWitness::GeneratorCombination(combination),
        },
        Err(separator) => OrderDecision {
            holds: false,
            witness: OrderWitness::SeparatingG(separator),
        },
    }
}

/// Decides the order straight from its definition, by minimizing the pairing
/// over the boxed cone. Must always agree with [`precedes`].
pub fn precedes_via_cone(
    space: &FiniteMetricSpace,
    left: &Measure,
    right: &Measure,
) -> bool {
    !boxed_pairing_min(space, &difference_dense(space, left, right)).is_negative()
}

/// Replays the evidence of a decision against the defining conditions.
pub fn verify_order_witness(
    space: &FiniteMetricSpace,
    left: &Measure,
    right: &Measure,
    decision: &OrderDecision,
) -> bool {
    match (&decision.witness, decision.holds) {
        (OrderWitness::GeneratorCombination(combination), true) => {
            let generators = cone::dual_generators(space);
            let mut reconstituted = vec![Rational::zero(); space.pair_count()];
            for (index, t) in combination {
                if t.is_negative() || *index >= generators.len() {
                    return false;
                }
                generators[*index].scatter(&mut reconstituted, t);
            }
            reconstituted == difference_dense(space, left, right)
        }
        (OrderWitness::SeparatingG(g), false) => {
            cone::membership(space, g)
                && g.pair_measure(space, left) > g.pair_measure(space, right)
        }
        _ => false,
    }
}

/// The elimination program shared by the minimality procedures: variables
/// `t >= 0` over generators, rows `(sum t * v) <= bound` per pair.
fn elimination_lp(
    space: &FiniteMetricSpace,
    bound: &[Rational],
    objective: Vec<Rational>,
) -> LpProblem {
    let mut problem = LpProblem::nonnegative(Sense::Maximize, objective);
    for (row, rhs) in generator_rows(space).into_iter().zip(bound) {
        problem.push(row, Relation::Le, rhs.clone());
    }
    problem
}

fn interior_objective(space: &FiniteMetricSpace) -> Vec<Rational> {
    let (c, slack) = cone::interior_point(space).expect("valid spaces have interior");
    let objective: Vec<Rational> =
        cone::dual_generators(space).iter().map(|gen| gen.apply(&c)).collect();
    debug_assert!(objective.iter().all(|v| *v >= slack));
    objective
}

fn solve_elimination(problem: &LpProblem) -> (Vec<Rational>, Rational) {
    match lp::solve(problem).expect("elimination program is well formed") {
        LpOutcome::Optimal { variables, objective_value } => (variables, objective_value),
        // Feasible at t = 0; unboundedness would produce a nonzero measure
        // of nonpositive total mass, which cannot exist.
        _ => unreachable!("elimination program is feasible and bounded"),
    }
}

/// True when no measure strictly precedes `measure`. Decided by one LP: the
/// interior objective is strictly positive on every nonzero elimination, so
/// the measure is minimal exactly when the optimum is zero.
pub fn is_minimal(space: &FiniteMetricSpace, measure: &Measure) -> bool {
    let problem = elimination_lp(
        space,
        &measure.to_dense(space),
        interior_objective(space),
    );
    let (_, value) = solve_elimination(&problem);
    value.is_zero()
}

/// A minimal measure preceding `measure` (equal to it when already minimal):
/// the optimizer of the interior objective over feasible eliminations.
pub fn minimize_below(space: &FiniteMetricSpace, measure: &Measure) -> Measure {
    let dense = measure.to_dense(space);
    let problem = elimination_lp(space, &dense, interior_objective(space));
    let (t, _) = solve_elimination(&problem);
    let mut remaining = dense;
    for (gen, t_j) in cone::dual_generators(space).iter().zip(&t) {
        if !t_j.is_zero() {
            gen.scatter(&mut remaining, &-t_j.clone());
        }
    }
    let atoms: Vec<(PairId, Rational)> = space
        .pairs()
        .zip(remaining)
        .filter(|(_, mass)| !mass.is_zero())
        .collect();
    Measure::from_atoms(space, atoms).expect("eliminations keep masses nonnegative")
}

/// `inf{<g, measure> : g in G, g >= f} - <f, measure>`, computed through the
/// equal-valued elimination program `max{-<f, sum t v> : t >= 0, sum t v <=
/// measure}` (exact strong duality). Nonnegative always; zero for every `f`
/// exactly when the measure is minimal.
pub fn minimality_gap(
    space: &FiniteMetricSpace,
    measure: &Measure,
    f: &ConeFunction,
) -> Rational {
    let objective = cone::dual_generators(space)
        .iter()
        .map(|gen| -gen.apply(f))
        .collect();
    let problem = elimination_lp(space, &measure.to_dense(space), objective);
    let (_, value) = solve_elimination(&problem);
    debug_assert!(!value.is_negative());
    value
}

/// One explicit elimination: trade `t * d` of mass off the legs `(x,u)`,
/// `(u,y)` for `t * d(x,y)` on the chord. The result precedes the input and
/// has the same pushforward.
pub fn eliminate_step(
    space: &FiniteMetricSpace,
    measure: &Measure,
    triple: (usize, usize, usize),
    t: &Rational,
) -> Result<Measure, OrderError> {
    let (x, u, y) = triple;
    let n = space.len();
    if x >= n || u >= n || y >= n || x == u || u == y || x == y {
        return Err(OrderError::BadTriple);
    }
    if !t.is_positive() {
        return Err(OrderError::NonpositiveStep);
    }
    let legs = [
        (PairId::new(x, u), space.dist(x, u).clone()),
        (PairId::new(u, y), space.dist(u, y).clone()),
    ];
    for (pair, d) in &legs {
        if measure.mass_at(*pair) < t * d {
            return Err(OrderError::InfeasibleStep { from: pair.from, to: pair.to });
        }
    }
    let chord = PairId::new(x, y);
    let mut atoms: Vec<(PairId, Rational)> =
        measure.atoms().map(|(pair, mass)| (pair, mass.clone())).collect();
    atoms.push((chord, t * space.pair_dist(chord)));
    let mut merged: std::collections::BTreeMap<PairId, Rational> = Default::default();
    for (pair, mass) in atoms {
        *merged.entry(pair).or_insert_with(Rational::zero) += mass;
    }
    for (pair, d) in &legs {
        *merged.get_mut(pair).expect("leg mass checked above") -= t * d;
    }
    Ok(Measure::from_atoms(space, merged).expect("feasibility was checked"))
}
