//! The admissible function cone on ordered pairs.
//!
//! A function `g` on ordered pairs of distinct points belongs to the cone
//! when `d(x,y) g(x,y) <= d(x,u) g(x,u) + d(u,y) g(u,y)` for every triple of
//! pairwise distinct points. Equivalently, `h(x,y) = d(x,y) g(x,y)` extended
//! by zero on the diagonal satisfies the triangle inequality. The cone
//! contains every De Leeuw transform and all constants, is closed under
//! pointwise maxima, and is invariant under swapping pair coordinates; its
//! members are exactly the pointwise maxima of transforms. Integrating
//! against it induces the representation order implemented in [`crate::order`].
//!
//! Dually, the cone is cut out by one linear functional per ordered triple
//! (the "detour" vectors); those same vectors generate the cone of
//! differences of comparable measures, which is what the order module's LPs
//! manipulate.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};

use crate::deleeuw::{InputError, LipFunction, Measure};
use crate::lp::{self, LpOutcome, LpProblem, Relation, Sense};
use crate::rational::Rational;
use crate::space::{FiniteMetricSpace, PairId};

/// Which pair coordinate a construction reads.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PairSide {
    First,
    Second,
}

#[derive(Clone, PartialEq, Eq, thiserror::Error, Debug)]
pub enum ConeError {
    #[error("function leaves the cone at triple ({x}, {u}, {y})")]
    NotInCone { x: usize, u: usize, y: usize },
    #[error("construction needs nonnegative inputs")]
    NegativeInput,
    #[error("slope cap {given} is below the Lipschitz constant {required}")]
    SlopeTooSmall { required: Rational, given: Rational },
    #[error("function is not a transform: its negation leaves the cone")]
    NotInIntersection,
    #[error("the restriction set must contain the base point")]
    BaseNotInSet,
    #[error("function is negative at ({from}, {to}) inside the restriction set")]
    NegativeOnRestriction { from: usize, to: usize },
    #[error("cone interior is empty; the space invariants are broken")]
    DegenerateCone,
}

/// A rational-valued function on the ordered pairs of a fixed space, stored
/// densely in the canonical pair order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConeFunction {
    values: Vec<Rational>,
}

impl ConeFunction {
    pub fn from_values(
        space: &FiniteMetricSpace,
        values: Vec<Rational>,
    ) -> Result<Self, InputError> {
        if values.len() != space.pair_count() {
            return Err(InputError::LengthMismatch {
                expected: space.pair_count(),
                found: values.len(),
            });
        }
        Ok(ConeFunction { values })
    }

    pub fn constant(space: &FiniteMetricSpace, value: Rational) -> Self {
        ConeFunction { values: vec![value; space.pair_count()] }
    }

    pub fn value(&self, space: &FiniteMetricSpace, pair: PairId) -> &Rational {
        &self.values[space.pair_index(pair)]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn sup_norm(&self) -> Rational {
        self.values
            .iter()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Integral against a pair measure.
    pub fn pair_measure(&self, space: &FiniteMetricSpace, measure: &Measure) -> Rational {
        measure
            .atoms()
            .map(|(pair, mass)| mass * &self.values[space.pair_index(pair)])
            .fold(Rational::zero(), |acc, t| acc + t)
    }

    /// Pairing with a dense signed vector in canonical pair order.
    pub fn pair_dense(&self, weights: &[Rational]) -> Rational {
        debug_assert_eq!(weights.len(), self.values.len());
        self.values
            .iter()
            .zip(weights)
            .filter(|(v, w)| !v.is_zero() && !w.is_zero())
            .map(|(v, w)| v * w)
            .fold(Rational::zero(), |acc, t| acc + t)
    }

    pub fn pointwise_max(&self, other: &ConeFunction) -> ConeFunction {
        assert_eq!(self.values.len(), other.values.len());
        ConeFunction {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.max(b).clone())
                .collect(),
        }
    }

    pub fn pointwise_min(&self, other: &ConeFunction) -> ConeFunction {
        assert_eq!(self.values.len(), other.values.len());
        ConeFunction {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.min(b).clone())
                .collect(),
        }
    }

    pub fn scale(&self, factor: &Rational) -> ConeFunction {
        ConeFunction { values: self.values.iter().map(|v| v * factor).collect() }
    }

    pub fn neg(&self) -> ConeFunction {
        ConeFunction { values: self.values.iter().map(|v| -v).collect() }
    }

    pub fn add(&self, other: &ConeFunction) -> ConeFunction {
        assert_eq!(self.values.len(), other.values.len());
        ConeFunction {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        }
    }

    /// The same function with pair coordinates swapped.
    pub fn reflected(&self, space: &FiniteMetricSpace) -> ConeFunction {
        let values = space
            .pairs()
            .map(|p| self.values[space.pair_index(p.reflected())].clone())
            .collect();
        ConeFunction { values }
    }
}

/// One ordered triple's detour functional: positive weights `d(x,u)`,
/// `d(u,y)` on the legs, weight `-d(x,y)` on the chord. Nonnegativity of all
/// of these is exactly cone membership; conic combinations of them connect
/// comparable measures.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TripleGenerator {
    pub x: usize,
    pub u: usize,
    pub y: usize,
    i_xu: usize,
    i_uy: usize,
    i_xy: usize,
    d_xu: Rational,
    d_uy: Rational,
    d_xy: Rational,
}

impl TripleGenerator {
    fn new(space: &FiniteMetricSpace, x: usize, u: usize, y: usize) -> Self {
        TripleGenerator {
            x,
            u,
            y,
            i_xu: space.pair_index(PairId::new(x, u)),
            i_uy: space.pair_index(PairId::new(u, y)),
            i_xy: space.pair_index(PairId::new(x, y)),
            d_xu: space.dist(x, u).clone(),
            d_uy: space.dist(u, y).clone(),
            d_xy: space.dist(x, y).clone(),
        }
    }

    /// The three nonzero entries as (pair, weight).
    pub fn entries(&self) -> [(PairId, Rational); 3] {
        [
            (PairId::new(self.x, self.u), self.d_xu.clone()),
            (PairId::new(self.u, self.y), self.d_uy.clone()),
            (PairId::new(self.x, self.y), -self.d_xy.clone()),
        ]
    }

    /// Applies the functional to dense pair values.
    pub fn apply_values(&self, values: &[Rational]) -> Rational {
        &(&self.d_xu * &values[self.i_xu] + &self.d_uy * &values[self.i_uy])
            - &(&self.d_xy * &values[self.i_xy])
    }

    pub fn apply(&self, g: &ConeFunction) -> Rational {
        self.apply_values(g.values())
    }

    /// Adds `t` times this vector into a dense pair buffer.
    pub fn scatter(&self, buffer: &mut [Rational], t: &Rational) {
        buffer[self.i_xu] += t * &self.d_xu;
        buffer[self.i_uy] += t * &self.d_uy;
        buffer[self.i_xy] -= t * &self.d_xy;
    }
}

/// Per-space cone geometry, built once and cached on the space.
#[derive(Clone, Debug)]
pub(crate) struct ConeCache {
    pub generators: Vec<TripleGenerator>,
    interior: OnceLock<Option<(ConeFunction, Rational)>>,
}

pub(crate) fn cache(space: &FiniteMetricSpace) -> &ConeCache {
    space.cone_cache.get_or_init(|| ConeCache {
        generators: space
            .triples()
            .map(|(x, u, y)| TripleGenerator::new(space, x, u, y))
            .collect(),
        interior: OnceLock::new(),
    })
}

/// Interior point with its worst-case generator slack; `None` never happens
/// on a valid space (the cone spans the pair space, so it has interior).
pub(crate) fn cached_interior(
    space: &FiniteMetricSpace,
) -> Option<&(ConeFunction, Rational)> {
    cache(space)
        .interior
        .get_or_init(|| compute_interior(space))
        .as_ref()
}

fn compute_interior(space: &FiniteMetricSpace) -> Option<(ConeFunction, Rational)> {
    // Maximize the uniform generator slack s over the box -1 <= g <= 1. In
    // translated variables p = 1 - g the all-ones corner becomes the origin
    // and every row starts feasible: <p, v> + s <= detour slack of v.
    let pair_count = space.pair_count();
    let generators = &cache(space).generators;
    let mut objective = vec![Rational::zero(); pair_count + 1];
    objective[pair_count] = Rational::one();
    let mut p = LpProblem::nonnegative(Sense::Maximize, objective);
    for j in 0..pair_count {
        p.upper[j] = Some(Rational::from_integer(2.into()));
    }
    for gen in generators {
        let mut coeffs = vec![Rational::zero(); pair_count + 1];
        gen.scatter(&mut coeffs[..pair_count], &Rational::one());
        coeffs[pair_count] = Rational::one();
        p.push(coeffs, Relation::Le, space.triple_slack(gen.x, gen.u, gen.y));
    }
    match lp::solve(&p).expect("interior program is well formed") {
        LpOutcome::Optimal { variables, .. } => {
            let slack = variables[pair_count].clone();
            if !slack.is_positive() {
                return None;
            }
            let one = Rational::one();
            let values = variables[..pair_count].iter().map(|p| &one - p).collect();
            let g = ConeFunction { values };
            debug_assert!(generators.iter().all(|gen| gen.apply(&g) >= slack));
            Some((g, slack))
        }
        _ => unreachable!("interior program is feasible and bounded"),
    }
}

/// First triple whose detour functional is negative, if any.
pub fn first_violation(
    space: &FiniteMetricSpace,
    g: &ConeFunction,
) -> Option<(usize, usize, usize)> {
    cache(space)
        .generators
        .iter()
        .find(|gen| gen.apply(g).is_negative())
        .map(|gen| (gen.x, gen.u, gen.y))
}

/// Cone membership.
pub fn membership(space: &FiniteMetricSpace, g: &ConeFunction) -> bool {
    first_violation(space, g).is_none()
}

fn require_member(space: &FiniteMetricSpace, g: &ConeFunction) -> Result<(), ConeError> {
    match first_violation(space, g) {
        Some((x, u, y)) => Err(ConeError::NotInCone { x, u, y }),
        None => Ok(()),
    }
}

/// `min{g, b/d}` for a nonnegative member `g` and a nonnegative cap `b`;
/// stays in the cone.
pub fn clamp(
    space: &FiniteMetricSpace,
    g: &ConeFunction,
    b: &Rational,
) -> Result<ConeFunction, ConeError> {
    if b.is_negative() || g.values().iter().any(|v| v.is_negative()) {
        return Err(ConeError::NegativeInput);
    }
    require_member(space, g)?;
    let values = space
        .pairs()
        .zip(g.values())
        .map(|(pair, v)| v.min(&(b / space.pair_dist(pair))).clone())
        .collect();
    Ok(ConeFunction { values })
}

/// `min{a, f(.)/d}` reading `f` at the chosen coordinate; `f` nonnegative on
/// points (no base condition), `a` at least its Lipschitz constant.
pub fn distance_function(
    space: &FiniteMetricSpace,
    f: &[Rational],
    a: &Rational,
    side: PairSide,
) -> Result<ConeFunction, ConeError> {
    assert_eq!(f.len(), space.len(), "one value per point");
    if f.iter().any(|v| v.is_negative()) {
        return Err(ConeError::NegativeInput);
    }
    let required = space
        .pairs()
        .map(|p| (&f[p.from] - &f[p.to]) / space.pair_dist(p))
        .max()
        .expect("spaces have pairs")
        .max(Rational::zero());
    if *a < required {
        return Err(ConeError::SlopeTooSmall { required, given: a.clone() });
    }
    let values = space
        .pairs()
        .map(|p| {
            let at = match side {
                PairSide::First => &f[p.from],
                PairSide::Second => &f[p.to],
            };
            a.min(&(at / space.pair_dist(p))).clone()
        })
        .collect();
    Ok(ConeFunction { values })
}

fn associated_h(space: &FiniteMetricSpace, g: &ConeFunction) -> Vec<Vec<Rational>> {
    let n = space.len();
    let mut h = vec![vec![Rational::zero(); n]; n];
    for pair in space.pairs() {
        h[pair.from][pair.to] = space.pair_dist(pair) * g.value(space, pair);
    }
    h
}

/// Writes a member as the pointwise maximum of transforms: one function per
/// point, each of whose transforms minorizes `g`, with equality attained at
/// every pair by the function of its second coordinate.
pub fn decompose(
    space: &FiniteMetricSpace,
    g: &ConeFunction,
) -> Result<Vec<LipFunction>, ConeError> {
    require_member(space, g)?;
    let h = associated_h(space, g);
    let base = space.base();
    Ok((0..space.len())
        .map(|u| {
            let values = (0..space.len()).map(|x| &h[x][u] - &h[base][u]).collect();
            LipFunction::new(space, values).expect("vanishes at base by construction")
        })
        .collect())
}

/// Inverts the transform on the cone's intersection with its negation.
pub fn phi_recover(
    space: &FiniteMetricSpace,
    g: &ConeFunction,
) -> Result<LipFunction, ConeError> {
    if !membership(space, g) || !membership(space, &g.neg()) {
        return Err(ConeError::NotInIntersection);
    }
    let h = associated_h(space, g);
    let base = space.base();
    let values = (0..space.len()).map(|x| h[x][base].clone()).collect();
    Ok(LipFunction::new(space, values).expect("h vanishes on the diagonal"))
}

/// A member with strictly positive slack at every generator, together with
/// that slack, inside the box `-1 <= g <= 1`.
pub fn interior_point(
    space: &FiniteMetricSpace,
) -> Result<(ConeFunction, Rational), ConeError> {
    cached_interior(space).cloned().ok_or(ConeError::DegenerateCone)
}

/// For a member `g` nonnegative on pairs inside `points` (a set containing
/// the base), the largest function vanishing on `points` whose transform
/// minorizes `g`: `f(x) = min over a in points of h(x, a)`.
pub fn support_minorant(
    space: &FiniteMetricSpace,
    g: &ConeFunction,
    points: &BTreeSet<usize>,
) -> Result<LipFunction, ConeError> {
    if !points.contains(&space.base()) {
        return Err(ConeError::BaseNotInSet);
    }
    require_member(space, g)?;
    for &x in points {
        for &y in points {
            if x != y && g.value(space, PairId::new(x, y)).is_negative() {
                return Err(ConeError::NegativeOnRestriction { from: x, to: y });
            }
        }
    }
    let h = associated_h(space, g);
    let values = (0..space.len())
        .map(|x| {
            points
                .iter()
                .map(|&a| h[x][a].clone())
                .min()
                .expect("the set is nonempty")
        })
        .collect();
    LipFunction::new(space, values).map_err(|_| ConeError::BaseNotInSet)
}

/// The detour functionals, one per ordered triple in canonical order. They
/// cut out the cone and generate its polar.
pub fn dual_generators(space: &FiniteMetricSpace) -> &[TripleGenerator] {
    &cache(space).generators
}
