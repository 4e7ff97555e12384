//! The De Leeuw transform and its carriers.
//!
//! `LipFunction` is a real function on the points vanishing at the base.
//! `FreeVector` is an element of the free space over the points (coordinates
//! over non-base points). `Measure` is a finitely supported nonnegative
//! measure on ordered pairs of distinct points; pushing it forward through
//! elementary molecules yields the free vector it represents.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::cone::ConeFunction;
use crate::rational::Rational;
use crate::space::{FiniteMetricSpace, PairId};

#[derive(Clone, PartialEq, Eq, thiserror::Error, Debug)]
pub enum InputError {
    #[error("function must take value 0 at the base point")]
    NonzeroAtBase,
    #[error("expected {expected} values, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("free vector has a coefficient at the base point")]
    CoefficientAtBase,
    #[error("measure atom with negative mass")]
    NegativeMass,
    #[error("point index {0} out of range")]
    PointOutOfRange(usize),
    #[error("pair joins a point to itself")]
    DegeneratePair,
}

/// A function on the points with value 0 at the base point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LipFunction {
    values: Vec<Rational>,
}

impl LipFunction {
    pub fn new(space: &FiniteMetricSpace, values: Vec<Rational>) -> Result<Self, InputError> {
        if values.len() != space.len() {
            return Err(InputError::LengthMismatch { expected: space.len(), found: values.len() });
        }
        if !values[space.base()].is_zero() {
            return Err(InputError::NonzeroAtBase);
        }
        Ok(LipFunction { values })
    }

    pub fn zero(space: &FiniteMetricSpace) -> Self {
        LipFunction { values: vec![Rational::zero(); space.len()] }
    }

    pub fn value(&self, point: usize) -> &Rational {
        &self.values[point]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Dual pairing with a free vector: sum of coefficient times value.
    pub fn pair(&self, vector: &FreeVector) -> Rational {
        vector
            .coeffs
            .iter()
            .map(|(point, coeff)| coeff * &self.values[*point])
            .fold(Rational::zero(), |acc, term| acc + term)
    }
}

/// Best Lipschitz constant of `f`: the largest difference quotient over
/// ordered pairs. Zero exactly for the zero function.
pub fn lip_norm(space: &FiniteMetricSpace, f: &LipFunction) -> Rational {
    space
        .pairs()
        .map(|p| (f.value(p.from) - f.value(p.to)) / space.pair_dist(p))
        .max()
        .expect("spaces have at least one pair")
        .max(Rational::zero())
}

/// An element of the free space: finitely many exact coordinates over the
/// non-base points. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FreeVector {
    coeffs: BTreeMap<usize, Rational>,
}

impl FreeVector {
    pub fn zero() -> Self {
        FreeVector::default()
    }

    pub fn from_coeffs<I>(space: &FiniteMetricSpace, coeffs: I) -> Result<Self, InputError>
    where
        I: IntoIterator<Item = (usize, Rational)>,
    {
        let mut map: BTreeMap<usize, Rational> = BTreeMap::new();
        for (point, coeff) in coeffs {
            if point >= space.len() {
                return Err(InputError::PointOutOfRange(point));
            }
            if point == space.base() {
                if coeff.is_zero() {
                    continue;
                }
                return Err(InputError::CoefficientAtBase);
            }
            let entry = map.entry(point).or_insert_with(Rational::zero);
            *entry += coeff;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(FreeVector { coeffs: map })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, point: usize) -> Rational {
        self.coeffs.get(&point).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().map(|(p, c)| (*p, c))
    }

    /// Points (never the base) carrying a nonzero coefficient.
    pub fn support(&self) -> BTreeSet<usize> {
        self.coeffs.keys().copied().collect()
    }

    pub fn add(&self, other: &FreeVector) -> FreeVector {
        let mut coeffs = self.coeffs.clone();
        for (point, coeff) in &other.coeffs {
            let entry = coeffs.entry(*point).or_insert_with(Rational::zero);
            *entry += coeff;
        }
        coeffs.retain(|_, c| !c.is_zero());
        FreeVector { coeffs }
    }

    pub fn scale(&self, factor: &Rational) -> FreeVector {
        if factor.is_zero() {
            return FreeVector::zero();
        }
        FreeVector { coeffs: self.coeffs.iter().map(|(p, c)| (*p, c * factor)).collect() }
    }

    pub fn sub(&self, other: &FreeVector) -> FreeVector {
        self.add(&other.scale(&-Rational::from_integer(1.into())))
    }
}

/// The elementary molecule of a pair: `(delta(from) - delta(to)) / d`,
/// written in coordinates with base entries dropped. Always of norm one.
pub fn molecule(space: &FiniteMetricSpace, pair: PairId) -> FreeVector {
    let d = space.pair_dist(pair);
    let inv = Rational::from_integer(1.into()) / d;
    let mut coeffs = Vec::new();
    if pair.from != space.base() {
        coeffs.push((pair.from, inv.clone()));
    }
    if pair.to != space.base() {
        coeffs.push((pair.to, -inv));
    }
    FreeVector::from_coeffs(space, coeffs).expect("molecule coefficients are well formed")
}

/// A finitely supported nonnegative measure on ordered pairs of distinct
/// points. Only strictly positive masses are stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Measure {
    atoms: BTreeMap<PairId, Rational>,
}

impl Measure {
    pub fn zero() -> Self {
        Measure::default()
    }

    /// Accumulates atoms; zero masses are dropped, negative masses rejected.
    pub fn from_atoms<I>(space: &FiniteMetricSpace, atoms: I) -> Result<Self, InputError>
    where
        I: IntoIterator<Item = (PairId, Rational)>,
    {
        let mut map: BTreeMap<PairId, Rational> = BTreeMap::new();
        for (pair, mass) in atoms {
            if pair.from >= space.len() || pair.to >= space.len() {
                return Err(InputError::PointOutOfRange(pair.from.max(pair.to)));
            }
            if pair.from == pair.to {
                return Err(InputError::DegeneratePair);
            }
            if mass < Rational::zero() {
                return Err(InputError::NegativeMass);
            }
            let entry = map.entry(pair).or_insert_with(Rational::zero);
            *entry += mass;
        }
        map.retain(|_, m| !m.is_zero());
        Ok(Measure { atoms: map })
    }

    /// The unit point mass at one pair.
    pub fn dirac(space: &FiniteMetricSpace, pair: PairId) -> Self {
        Measure::from_atoms(space, [(pair, Rational::from_integer(1.into()))])
            .expect("a dirac atom is well formed")
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn mass_at(&self, pair: PairId) -> Rational {
        self.atoms.get(&pair).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn atoms(&self) -> impl Iterator<Item = (PairId, &Rational)> {
        self.atoms.iter().map(|(p, m)| (*p, m))
    }

    pub fn support(&self) -> BTreeSet<PairId> {
        self.atoms.keys().copied().collect()
    }

    pub fn total_mass(&self) -> Rational {
        self.atoms.values().fold(Rational::zero(), |acc, m| acc + m)
    }

    pub fn scale(&self, factor: &Rational) -> Measure {
        assert!(*factor >= Rational::zero(), "measures scale by nonnegative factors");
        if factor.is_zero() {
            return Measure::zero();
        }
        Measure { atoms: self.atoms.iter().map(|(p, m)| (*p, m * factor)).collect() }
    }

    pub fn add(&self, other: &Measure) -> Measure {
        let mut atoms = self.atoms.clone();
        for (pair, mass) in &other.atoms {
            let entry = atoms.entry(*pair).or_insert_with(Rational::zero);
            *entry += mass;
        }
        Measure { atoms }
    }

    /// Restriction to a set of pairs.
    pub fn restrict(&self, keep: &BTreeSet<PairId>) -> Measure {
        Measure {
            atoms: self
                .atoms
                .iter()
                .filter(|(p, _)| keep.contains(p))
                .map(|(p, m)| (*p, m.clone()))
                .collect(),
        }
    }

    /// Dense mass vector in the canonical pair order.
    pub fn to_dense(&self, space: &FiniteMetricSpace) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); space.pair_count()];
        for (pair, mass) in &self.atoms {
            out[space.pair_index(*pair)] = mass.clone();
        }
        out
    }
}

/// The De Leeuw transform: `(f(x) - f(y)) / d(x,y)` on every ordered pair.
pub fn de_leeuw(space: &FiniteMetricSpace, f: &LipFunction) -> ConeFunction {
    let values = space
        .pairs()
        .map(|p| (f.value(p.from) - f.value(p.to)) / space.pair_dist(p))
        .collect();
    ConeFunction::from_values(space, values).expect("one value per pair")
}

/// Pushforward of a pair measure: the weighted sum of molecules it
/// represents.
pub fn push_forward(space: &FiniteMetricSpace, measure: &Measure) -> FreeVector {
    let mut out = FreeVector::zero();
    for (pair, mass) in measure.atoms() {
        out = out.add(&molecule(space, pair).scale(mass));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rational::{int, rat};
    use crate::sample;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn lip_function_must_vanish_at_base() {
        let space = fixtures::interval_three();
        let err = LipFunction::new(&space, vec![int(1), int(0), int(0)]).unwrap_err();
        assert_eq!(err, InputError::NonzeroAtBase);
    }

    #[test]
    fn lip_norm_of_identity_on_interval() {
        // f(x) = x on points 0, 1/2, 1 has best Lipschitz constant 1.
        let space = fixtures::interval_three();
        let f = LipFunction::new(&space, vec![int(0), rat(1, 2), int(1)]).unwrap();
        assert_eq!(lip_norm(&space, &f), int(1));
        assert_eq!(lip_norm(&space, &LipFunction::zero(&space)), int(0));
    }

    #[test]
    fn lip_norm_matches_pair_enumeration() {
        let space = fixtures::short_edge_four();
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..25 {
            let f = sample::random_lip(&mut rng, &space);
            let brute = space
                .pairs()
                .map(|p| {
                    let q = (f.value(p.from) - f.value(p.to)) / space.pair_dist(p);
                    q.max(Rational::zero())
                })
                .max()
                .unwrap();
            assert_eq!(lip_norm(&space, &f), brute);
        }
    }

    #[test]
    fn molecule_coefficients() {
        let space = fixtures::interval_three();
        let one = space.index_of("1").unwrap();
        let h = space.index_of("h").unwrap();
        // Molecule of (1, h): +2 at "1", -2 at "h".
        let m = molecule(&space, PairId::new(one, h));
        assert_eq!(m.coeff(one), int(2));
        assert_eq!(m.coeff(h), int(-2));
        // Pairs touching the base drop that entry.
        let m = molecule(&space, PairId::new(one, space.base()));
        assert_eq!(m.coeff(one), int(1));
        assert_eq!(m.support().len(), 1);
    }

    #[test]
    fn molecule_pairing_is_difference_quotient() {
        let space = fixtures::short_edge_four();
        let mut rng = StdRng::seed_from_u64(12);
        for _ in 0..20 {
            let f = sample::random_lip(&mut rng, &space);
            for pair in space.pairs() {
                let lhs = f.pair(&molecule(&space, pair));
                let rhs = (f.value(pair.from) - f.value(pair.to)) / space.pair_dist(pair);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn transform_sup_norm_equals_lip_norm() {
        let space = fixtures::short_edge_four();
        let mut rng = StdRng::seed_from_u64(13);
        for _ in 0..20 {
            let f = sample::random_lip(&mut rng, &space);
            assert_eq!(de_leeuw(&space, &f).sup_norm(), lip_norm(&space, &f));
        }
    }

    #[test]
    fn pushforward_is_adjoint_to_transform() {
        // <f, pushforward(mu)> = <transform(f), mu> exactly.
        let space = fixtures::short_edge_four();
        let mut rng = StdRng::seed_from_u64(14);
        for _ in 0..20 {
            let f = sample::random_lip(&mut rng, &space);
            let mu = sample::random_measure(&mut rng, &space);
            let lhs = f.pair(&push_forward(&space, &mu));
            let rhs = de_leeuw(&space, &f).pair_measure(&space, &mu);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn measure_drops_zeros_rejects_negatives() {
        let space = fixtures::interval_three();
        let p = PairId::new(1, 2);
        let mu = Measure::from_atoms(&space, [(p, int(0))]).unwrap();
        assert!(mu.is_zero());
        let err = Measure::from_atoms(&space, [(p, int(-1))]).unwrap_err();
        assert_eq!(err, InputError::NegativeMass);
        let mu = Measure::from_atoms(&space, [(p, int(1)), (p, rat(1, 2))]).unwrap();
        assert_eq!(mu.mass_at(p), rat(3, 2));
    }

    #[test]
    fn support_of_pushforward_within_pair_points() {
        let space = fixtures::short_edge_four();
        let mut rng = StdRng::seed_from_u64(15);
        for _ in 0..20 {
            let mu = sample::random_measure(&mut rng, &space);
            let m = push_forward(&space, &mu);
            for point in m.support() {
                assert!(mu
                    .atoms()
                    .any(|(pair, _)| pair.from == point || pair.to == point));
            }
        }
    }
}
