//! Seeded random inputs for property tests: metric spaces via shortest-path
//! closure, Lipschitz functions, measures, cone members, and signed pair
//! vectors. Everything is driven by a caller-owned RNG so failures replay
//! from a seed.

use num_traits::Zero;
use rand::Rng;

use crate::cone::{self, ConeFunction};
use crate::deleeuw::{de_leeuw, FreeVector, LipFunction, Measure};
use crate::rational::{rat, Rational};
use crate::space::{FiniteMetricSpace, PairId};

/// A random space with 3 to 6 points.
pub fn random_space(rng: &mut impl Rng) -> FiniteMetricSpace {
    let n = rng.gen_range(3..=6);
    random_space_sized(rng, n)
}

/// A random `n`-point space: symmetric rational weights pushed through a
/// shortest-path closure, which also plants metrically aligned triples.
pub fn random_space_sized(rng: &mut impl Rng, n: usize) -> FiniteMetricSpace {
    assert!(n >= 3, "spaces need at least three points");
    let mut d = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let w = rat(rng.gen_range(2..=9), rng.gen_range(2..=3));
            d[i][j] = w.clone();
            d[j][i] = w;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let via = &d[i][k] + &d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    let points = (0..n).map(|i| format!("p{i}")).collect();
    FiniteMetricSpace::new(points, "p0", d).expect("closed table is a metric")
}

pub fn random_pair(rng: &mut impl Rng, space: &FiniteMetricSpace) -> PairId {
    loop {
        let from = rng.gen_range(0..space.len());
        let to = rng.gen_range(0..space.len());
        if from != to {
            return PairId::new(from, to);
        }
    }
}

pub fn random_lip(rng: &mut impl Rng, space: &FiniteMetricSpace) -> LipFunction {
    let values = (0..space.len())
        .map(|x| {
            if x == space.base() {
                Rational::zero()
            } else {
                rat(rng.gen_range(-6..=6), rng.gen_range(1..=3))
            }
        })
        .collect();
    LipFunction::new(space, values).expect("vanishes at base by construction")
}

pub fn random_free_vector(rng: &mut impl Rng, space: &FiniteMetricSpace) -> FreeVector {
    let mut coeffs = Vec::new();
    for x in 0..space.len() {
        if x != space.base() && rng.gen_bool(0.7) {
            coeffs.push((x, rat(rng.gen_range(-6..=6), rng.gen_range(1..=3))));
        }
    }
    FreeVector::from_coeffs(space, coeffs).expect("base point never touched")
}

pub fn random_measure(rng: &mut impl Rng, space: &FiniteMetricSpace) -> Measure {
    let atoms: Vec<(PairId, Rational)> = (0..rng.gen_range(1..=4))
        .map(|_| (random_pair(rng, space), rat(rng.gen_range(1..=6), rng.gen_range(1..=2))))
        .collect();
    Measure::from_atoms(space, atoms).expect("masses are positive")
}

/// A cone member: the pointwise maximum of a few transforms, sometimes
/// shifted up by a nonnegative constant (both operations preserve
/// membership).
pub fn random_cone_member(rng: &mut impl Rng, space: &FiniteMetricSpace) -> ConeFunction {
    let mut g = de_leeuw(space, &random_lip(rng, space));
    for _ in 0..rng.gen_range(0..=2) {
        g = g.pointwise_max(&de_leeuw(space, &random_lip(rng, space)));
    }
    if rng.gen_bool(0.3) {
        g = g.add(&ConeFunction::constant(space, rat(rng.gen_range(0..=4), 2)));
    }
    g
}

/// A nonnegative cone member, sometimes clamped by `min{., b/d}`.
pub fn random_nonneg_cone_member(
    rng: &mut impl Rng,
    space: &FiniteMetricSpace,
) -> ConeFunction {
    let g = random_cone_member(rng, space)
        .pointwise_max(&ConeFunction::constant(space, Rational::zero()));
    if rng.gen_bool(0.3) {
        let b = rat(rng.gen_range(0..=6), rng.gen_range(1..=2));
        cone::clamp(space, &g, &b).expect("nonnegative member clamps cleanly")
    } else {
        g
    }
}

/// Splits one atom of `measure` through a random middle point: mass `t*d(p,q)`
/// at a chord `(p,q)` is traded for `t*d(p,u)` and `t*d(u,q)` on the legs.
/// The result strictly follows `measure` in the representation order (it adds
/// one detour generator) and has the same pushforward. `None` when the
/// measure is zero.
pub fn random_split(
    rng: &mut impl Rng,
    space: &FiniteMetricSpace,
    measure: &Measure,
) -> Option<Measure> {
    let support: Vec<PairId> = measure.support().into_iter().collect();
    if support.is_empty() {
        return None;
    }
    let chord = support[rng.gen_range(0..support.len())];
    let middles: Vec<usize> =
        (0..space.len()).filter(|&u| u != chord.from && u != chord.to).collect();
    let u = middles[rng.gen_range(0..middles.len())];
    let t = measure.mass_at(chord)
        / (space.pair_dist(chord) * rat(rng.gen_range(1..=3), 1));
    let atoms = vec![
        (chord, -(&t * space.pair_dist(chord))),
        (PairId::new(chord.from, u), &t * space.dist(chord.from, u)),
        (PairId::new(u, chord.to), &t * space.dist(u, chord.to)),
    ];
    let mut all: Vec<(PairId, Rational)> =
        measure.atoms().map(|(p, m)| (p, m.clone())).collect();
    // Fold the trade into the atom list; the chord entry stays nonnegative
    // because t*d is at most the available mass.
    for (pair, delta) in atoms {
        all.push((pair, delta));
    }
    let merged: std::collections::BTreeMap<PairId, Rational> =
        all.into_iter().fold(Default::default(), |mut acc, (p, m)| {
            *acc.entry(p).or_insert_with(Rational::zero) += m;
            acc
        });
    Some(
        Measure::from_atoms(space, merged)
            .expect("split keeps every mass nonnegative"),
    )
}

/// A dense signed vector on the pair set.
pub fn random_signed_vector(rng: &mut impl Rng, space: &FiniteMetricSpace) -> Vec<Rational> {
    (0..space.pair_count())
        .map(|_| rat(rng.gen_range(-4..=4), rng.gen_range(1..=3)))
        .collect()
}

/// A dense vector inside the dual cone: a positive combination of a few
/// detour generators.
pub fn random_dual_cone_element(
    rng: &mut impl Rng,
    space: &FiniteMetricSpace,
) -> Vec<Rational> {
    let generators = cone::dual_generators(space);
    let mut buffer = vec![Rational::zero(); space.pair_count()];
    for _ in 0..rng.gen_range(1..=3) {
        let gen = &generators[rng.gen_range(0..generators.len())];
        gen.scatter(&mut buffer, &rat(rng.gen_range(1..=4), rng.gen_range(1..=2)));
    }
    buffer
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn generated_members_really_are_members() {
        let mut rng = StdRng::seed_from_u64(31);
        for _ in 0..30 {
            let space = random_space(&mut rng);
            let g = random_cone_member(&mut rng, &space);
            assert!(cone::membership(&space, &g));
            let g = random_nonneg_cone_member(&mut rng, &space);
            assert!(cone::membership(&space, &g));
            assert!(!g.values().iter().any(|v| v < &Rational::zero()));
        }
    }

    #[test]
    fn closure_plants_aligned_triples_sometimes() {
        use num_traits::One;
        let mut rng = StdRng::seed_from_u64(32);
        let mut aligned = 0;
        for _ in 0..40 {
            if random_space(&mut rng).gamma_modulus() == Rational::one() {
                aligned += 1;
            }
        }
        assert!(aligned > 0, "expected some space with an aligned triple");
    }
}
