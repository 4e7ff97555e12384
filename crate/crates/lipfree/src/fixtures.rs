//! Small named spaces and measures with exactly known constants, shared by
//! unit tests, the acceptance suite, and the CLI demos.

use crate::deleeuw::Measure;
use crate::rational::{int, rat};
use crate::space::{FiniteMetricSpace, PairId};

fn pair(space: &FiniteMetricSpace, from: &str, to: &str) -> PairId {
    PairId::new(
        space.index_of(from).expect("fixture point"),
        space.index_of(to).expect("fixture point"),
    )
}

/// Three collinear points `0`, `h`, `1` at distances `d(0,h) = d(h,1) = 1/2`
/// and `d(0,1) = 1`. The midpoint makes the long pair metrically aligned, so
/// `gamma_modulus = 1` and the long molecule is not extreme.
pub fn interval_three() -> FiniteMetricSpace {
    FiniteMetricSpace::new(
        vec!["0".into(), "h".into(), "1".into()],
        "0",
        vec![
            vec![int(0), rat(1, 2), int(1)],
            vec![rat(1, 2), int(0), rat(1, 2)],
            vec![int(1), rat(1, 2), int(0)],
        ],
    )
    .expect("fixture table is a metric")
}

/// The two-step representation `1/2 (delta(1,h) + delta(h,0))` on
/// [`interval_three`]. Same pushforward and mass as `delta(1,0)`, but it
/// strictly follows the dirac in the representation order.
pub fn interval_split() -> Measure {
    let space = interval_three();
    Measure::from_atoms(&space, vec![
        (pair(&space, "1", "h"), rat(1, 2)),
        (pair(&space, "h", "0"), rat(1, 2)),
    ])
    .expect("positive masses")
}

/// Four points `0`, `a`, `b`, `c` with `d(a,b) = 1/2` and every other
/// distance 1. Here `gamma_modulus = 3/2`, so optimal representations are
/// automatically minimal.
pub fn short_edge_four() -> FiniteMetricSpace {
    FiniteMetricSpace::new(
        vec!["0".into(), "a".into(), "b".into(), "c".into()],
        "0",
        vec![
            vec![int(0), int(1), int(1), int(1)],
            vec![int(1), int(0), rat(1, 2), int(1)],
            vec![int(1), rat(1, 2), int(0), int(1)],
            vec![int(1), int(1), int(1), int(0)],
        ],
    )
    .expect("fixture table is a metric")
}

/// `delta(0,a) + delta(b,c)` on [`short_edge_four`]: a minimal but not
/// optimal representation — its mass is 2 while its pushforward has norm 3/2.
pub fn short_edge_minimal_nonoptimal() -> Measure {
    let space = short_edge_four();
    Measure::from_atoms(&space, vec![
        (pair(&space, "0", "a"), int(1)),
        (pair(&space, "b", "c"), int(1)),
    ])
    .expect("positive masses")
}

/// `1/2 delta(b,a) + delta(0,c)` on [`short_edge_four`]: an optimal (mass
/// 3/2) representation of the same pushforward as
/// [`short_edge_minimal_nonoptimal`].
pub fn short_edge_optimal() -> Measure {
    let space = short_edge_four();
    Measure::from_atoms(&space, vec![
        (pair(&space, "b", "a"), rat(1, 2)),
        (pair(&space, "0", "c"), int(1)),
    ])
    .expect("positive masses")
}

/// Four points `0`, `1`, `2`, `3` with all distances 1 (a discrete space);
/// `gamma_modulus = 2`.
pub fn discrete_four() -> FiniteMetricSpace {
    let n = 4;
    let table = (0..n)
        .map(|i| (0..n).map(|j| if i == j { int(0) } else { int(1) }).collect())
        .collect();
    FiniteMetricSpace::new(
        vec!["0".into(), "1".into(), "2".into(), "3".into()],
        "0",
        table,
    )
    .expect("fixture table is a metric")
}

/// `delta(0,2) + delta(1,3)` on [`discrete_four`]: one of two distinct
/// minimal optimal representations of the same element.
pub fn discrete_matching_one() -> Measure {
    let space = discrete_four();
    Measure::from_atoms(&space, vec![
        (pair(&space, "0", "2"), int(1)),
        (pair(&space, "1", "3"), int(1)),
    ])
    .expect("positive masses")
}

/// `delta(0,3) + delta(1,2)` on [`discrete_four`]: the other minimal optimal
/// representation matched with [`discrete_matching_one`].
pub fn discrete_matching_two() -> Measure {
    let space = discrete_four();
    Measure::from_atoms(&space, vec![
        (pair(&space, "0", "3"), int(1)),
        (pair(&space, "1", "2"), int(1)),
    ])
    .expect("positive masses")
}
