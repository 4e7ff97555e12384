//! Finite pointed metric spaces and the ordered pairs they induce.
//!
//! A space is a list of named points with a distinguished base point and an
//! exact distance table, validated on construction. Ordered pairs of
//! distinct points are the index set for everything downstream (De Leeuw
//! measures, cone functions); their enumeration order is fixed here.

use std::fmt;
use std::sync::OnceLock;

use crate::cone::ConeCache;
use crate::rational::Rational;
use num_traits::Zero;

/// Ordered pair of distinct point indices.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PairId {
    pub from: usize,
    pub to: usize,
}

impl PairId {
    pub fn new(from: usize, to: usize) -> Self {
        assert!(from != to, "pair must join distinct points");
        PairId { from, to }
    }

    /// The same pair with its coordinates swapped.
    pub fn reflected(self) -> Self {
        PairId { from: self.to, to: self.from }
    }
}

#[derive(Clone, PartialEq, Eq, thiserror::Error, Debug)]
pub enum MetricError {
    #[error("a metric space here needs at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("base point `{0}` is not in the point list")]
    UnknownBasePoint(String),
    #[error("duplicate point id `{0}`")]
    DuplicatePoint(String),
    #[error("distance table must be {expected}x{expected}, found row of length {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("nonzero distance from `{0}` to itself")]
    NonzeroDiagonal(String),
    #[error("distance table is not symmetric at (`{0}`, `{1}`)")]
    NotSymmetric(String, String),
    #[error("distance between distinct points `{0}` and `{1}` must be positive")]
    NegativeOrZeroOffDiagonal(String, String),
    #[error("triangle inequality fails: d({x},{y}) > d({x},{u}) + d({u},{y})")]
    TriangleViolation { x: String, u: String, y: String },
}

/// A validated finite pointed metric space.
pub struct FiniteMetricSpace {
    points: Vec<String>,
    base: usize,
    dist: Vec<Vec<Rational>>,
    pub(crate) cone_cache: OnceLock<ConeCache>,
}

impl Clone for FiniteMetricSpace {
    fn clone(&self) -> Self {
        FiniteMetricSpace {
            points: self.points.clone(),
            base: self.base,
            dist: self.dist.clone(),
            cone_cache: OnceLock::new(),
        }
    }
}

impl PartialEq for FiniteMetricSpace {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points && self.base == other.base && self.dist == other.dist
    }
}
impl Eq for FiniteMetricSpace {}

impl fmt::Debug for FiniteMetricSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteMetricSpace")
            .field("points", &self.points)
            .field("base", &self.points[self.base])
            .finish()
    }
}

impl FiniteMetricSpace {
    /// Validates and builds a space. `table[i][j]` is the distance from
    /// point `i` to point `j` in the order given by `points`.
    pub fn new(
        points: Vec<String>,
        base: &str,
        table: Vec<Vec<Rational>>,
    ) -> Result<Self, MetricError> {
        let n = points.len();
        if n < 3 {
            return Err(MetricError::TooFewPoints(n));
        }
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(MetricError::DuplicatePoint(p.clone()));
            }
        }
        let base = points
            .iter()
            .position(|p| p == base)
            .ok_or_else(|| MetricError::UnknownBasePoint(base.to_owned()))?;
        if table.len() != n {
            return Err(MetricError::DimensionMismatch { expected: n, found: table.len() });
        }
        for row in &table {
            if row.len() != n {
                return Err(MetricError::DimensionMismatch { expected: n, found: row.len() });
            }
        }
        for i in 0..n {
            if !table[i][i].is_zero() {
                return Err(MetricError::NonzeroDiagonal(points[i].clone()));
            }
            for j in 0..n {
                if table[i][j] != table[j][i] {
                    return Err(MetricError::NotSymmetric(points[i].clone(), points[j].clone()));
                }
                if i != j && table[i][j] <= Rational::zero() {
                    return Err(MetricError::NegativeOrZeroOffDiagonal(
                        points[i].clone(),
                        points[j].clone(),
                    ));
                }
            }
        }
        for x in 0..n {
            for u in 0..n {
                for y in 0..n {
                    if x == u || u == y || x == y {
                        continue;
                    }
                    if table[x][y] > &table[x][u] + &table[u][y] {
                        return Err(MetricError::TriangleViolation {
                            x: points[x].clone(),
                            u: points[u].clone(),
                            y: points[y].clone(),
                        });
                    }
                }
            }
        }
        Ok(FiniteMetricSpace { points, base, dist: table, cone_cache: OnceLock::new() })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn point_name(&self, index: usize) -> &str {
        &self.points[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.points.iter().position(|p| p == name)
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn dist(&self, i: usize, j: usize) -> &Rational {
        &self.dist[i][j]
    }

    pub fn pair_dist(&self, pair: PairId) -> &Rational {
        &self.dist[pair.from][pair.to]
    }

    /// Number of ordered pairs of distinct points, `n(n-1)`.
    pub fn pair_count(&self) -> usize {
        let n = self.points.len();
        n * (n - 1)
    }

    /// Ordered pairs of distinct points in canonical (row-major) order.
    pub fn pairs(&self) -> impl Iterator<Item = PairId> + '_ {
        let n = self.points.len();
        (0..n).flat_map(move |i| (0..n).filter(move |&j| j != i).map(move |j| PairId::new(i, j)))
    }

    /// Position of `pair` in the canonical enumeration.
    pub fn pair_index(&self, pair: PairId) -> usize {
        let n = self.points.len();
        debug_assert!(pair.from < n && pair.to < n && pair.from != pair.to);
        pair.from * (n - 1) + pair.to - usize::from(pair.to > pair.from)
    }

    /// Inverse of [`pair_index`](Self::pair_index).
    pub fn pair_at(&self, index: usize) -> PairId {
        let n = self.points.len();
        let from = index / (n - 1);
        let rem = index % (n - 1);
        let to = if rem >= from { rem + 1 } else { rem };
        PairId::new(from, to)
    }

    /// Ordered triples of pairwise distinct points, canonical order. This
    /// enumeration fixes the indexing of the cone's dual generators.
    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let n = self.points.len();
        (0..n).flat_map(move |x| {
            (0..n).filter(move |&u| u != x).flat_map(move |u| {
                (0..n)
                    .filter(move |&y| y != x && y != u)
                    .map(move |y| (x, u, y))
            })
        })
    }

    /// Detour slack `d(x,u) + d(u,y) - d(x,y)` of a triple; nonnegative on a
    /// valid space, zero exactly when `u` sits on a geodesic from `x` to `y`.
    pub fn triple_slack(&self, x: usize, u: usize, y: usize) -> Rational {
        &(&self.dist[x][u] + &self.dist[u][y]) - &self.dist[x][y]
    }

    /// Uniform concavity modulus: the least detour ratio
    /// `(d(x,u) + d(u,y)) / d(x,y)` over distinct triples. Always `>= 1`;
    /// `> 1` means no point lies between two others.
    pub fn gamma_modulus(&self) -> Rational {
        self.triples()
            .map(|(x, u, y)| (&self.dist[x][u] + &self.dist[u][y]) / &self.dist[x][y])
            .min()
            .expect("a space has at least three points, hence a triple")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rational::{int, rat};

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn rejects_too_few_points() {
        let err = FiniteMetricSpace::new(
            names(&["0", "1"]),
            "0",
            vec![vec![int(0), int(1)], vec![int(1), int(0)]],
        )
        .unwrap_err();
        assert_eq!(err, MetricError::TooFewPoints(2));
    }

    #[test]
    fn rejects_unknown_base() {
        let err = FiniteMetricSpace::new(
            names(&["a", "b", "c"]),
            "z",
            vec![
                vec![int(0), int(1), int(1)],
                vec![int(1), int(0), int(1)],
                vec![int(1), int(1), int(0)],
            ],
        )
        .unwrap_err();
        assert_eq!(err, MetricError::UnknownBasePoint("z".to_owned()));
    }

    #[test]
    fn rejects_asymmetry_zero_distance_and_bad_diagonal() {
        let mut table = vec![
            vec![int(0), int(1), int(1)],
            vec![int(1), int(0), int(1)],
            vec![int(1), int(1), int(0)],
        ];
        table[0][1] = int(2);
        let err =
            FiniteMetricSpace::new(names(&["a", "b", "c"]), "a", table.clone()).unwrap_err();
        assert!(matches!(err, MetricError::NotSymmetric(..)));

        table[0][1] = int(0);
        table[1][0] = int(0);
        let err =
            FiniteMetricSpace::new(names(&["a", "b", "c"]), "a", table.clone()).unwrap_err();
        assert!(matches!(err, MetricError::NegativeOrZeroOffDiagonal(..)));

        table[0][1] = int(1);
        table[1][0] = int(1);
        table[2][2] = int(3);
        let err = FiniteMetricSpace::new(names(&["a", "b", "c"]), "a", table).unwrap_err();
        assert_eq!(err, MetricError::NonzeroDiagonal("c".to_owned()));
    }

    #[test]
    fn rejects_triangle_violation() {
        let err = FiniteMetricSpace::new(
            names(&["a", "b", "c"]),
            "a",
            vec![
                vec![int(0), int(1), int(5)],
                vec![int(1), int(0), int(1)],
                vec![int(5), int(1), int(0)],
            ],
        )
        .unwrap_err();
        assert!(matches!(err, MetricError::TriangleViolation { .. }));
    }

    #[test]
    fn pair_indexing_round_trips() {
        let space = fixtures::short_edge_four();
        for (k, pair) in space.pairs().enumerate() {
            assert_eq!(space.pair_index(pair), k);
            assert_eq!(space.pair_at(k), pair);
        }
        assert_eq!(space.pairs().count(), space.pair_count());
    }

    #[test]
    fn triple_count_matches_formula() {
        let space = fixtures::short_edge_four();
        let n = space.len();
        assert_eq!(space.triples().count(), n * (n - 1) * (n - 2));
    }

    #[test]
    fn gamma_of_fixtures() {
        assert_eq!(fixtures::interval_three().gamma_modulus(), int(1));
        assert_eq!(fixtures::short_edge_four().gamma_modulus(), rat(3, 2));
        assert_eq!(fixtures::discrete_four().gamma_modulus(), int(2));
    }

    #[test]
    fn gamma_matches_exhaustive_search() {
        let space = fixtures::short_edge_four();
        let mut best: Option<Rational> = None;
        let n = space.len();
        for x in 0..n {
            for u in 0..n {
                for y in 0..n {
                    if x == u || u == y || x == y {
                        continue;
                    }
                    let ratio = &(space.dist(x, u) + space.dist(u, y)) / space.dist(x, y);
                    if best.as_ref().map_or(true, |b| ratio < *b) {
                        best = Some(ratio);
                    }
                }
            }
        }
        assert_eq!(space.gamma_modulus(), best.unwrap());
    }
}
