//! JSON documents for spaces, measures, and element specs.
//!
//! Rationals travel as canonical strings (`"3"`, `"-1/2"`). A space document
//! gives its distances either as a full matrix in point order or as a sparse
//! symmetric list; the emitted canonical form is always the full matrix.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use lipfree::deleeuw::{molecule, FreeVector, Measure};
use lipfree::rational::{format_rational, parse_rational, Rational};
use lipfree::space::{FiniteMetricSpace, MetricError, PairId};

use crate::commands::CliError;

#[derive(Serialize, Deserialize)]
pub struct SpaceDocument {
    pub points: Vec<String>,
    pub base: String,
    pub distances: DistanceTable,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
pub enum DistanceTable {
    Matrix(Vec<Vec<String>>),
    Sparse(Vec<SparseDistance>),
}

#[derive(Serialize, Deserialize)]
pub struct SparseDistance {
    pub from: String,
    pub to: String,
    pub distance: String,
}

/// How a space document failed to produce a space: a malformed document is
/// the caller's data problem; a metric-axiom violation is a mathematical
/// answer (`check-metric` reports it and exits 1).
pub enum SpaceBuildError {
    Document(String),
    Metric(MetricError),
}

/// True for the constructor errors that mean "these numbers are not a
/// metric", as opposed to a structurally broken document.
pub fn axiom_failure(err: &MetricError) -> bool {
    matches!(
        err,
        MetricError::NonzeroDiagonal(_)
            | MetricError::NotSymmetric(..)
            | MetricError::NegativeOrZeroOffDiagonal(..)
            | MetricError::TriangleViolation { .. }
    )
}

pub fn load_space_document(path: &Path) -> Result<SpaceDocument, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|source| CliError::Io { path: path.to_owned(), source })?;
    serde_json::from_str(&text).map_err(|err| {
        CliError::Data(format!("{}: not a space document: {err}", path.display()))
    })
}

pub fn build_space(doc: &SpaceDocument) -> Result<FiniteMetricSpace, SpaceBuildError> {
    let table = match &doc.distances {
        DistanceTable::Matrix(rows) => matrix_table(rows)?,
        DistanceTable::Sparse(entries) => sparse_table(&doc.points, entries)?,
    };
    FiniteMetricSpace::new(doc.points.clone(), &doc.base, table)
        .map_err(SpaceBuildError::Metric)
}

fn matrix_table(rows: &[Vec<String>]) -> Result<Vec<Vec<Rational>>, SpaceBuildError> {
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, text)| {
                    parse_rational(text).map_err(|err| {
                        SpaceBuildError::Document(format!("distances[{i}][{j}]: {err}"))
                    })
                })
                .collect()
        })
        .collect()
}

fn sparse_table(
    points: &[String],
    entries: &[SparseDistance],
) -> Result<Vec<Vec<Rational>>, SpaceBuildError> {
    let bad = |msg: String| SpaceBuildError::Document(msg);
    let n = points.len();
    let index = |name: &str| {
        points
            .iter()
            .position(|p| p == name)
            .ok_or_else(|| bad(format!("distance entry names unknown point `{name}`")))
    };
    let mut table = vec![vec![None; n]; n];
    for entry in entries {
        let (i, j) = (index(&entry.from)?, index(&entry.to)?);
        if i == j {
            return Err(bad(format!(
                "distance entry from `{}` to itself (diagonal entries are implied)",
                entry.from
            )));
        }
        let value = parse_rational(&entry.distance).map_err(|err| {
            bad(format!("distance (`{}`, `{}`): {err}", entry.from, entry.to))
        })?;
        for (a, b) in [(i, j), (j, i)] {
            match &table[a][b] {
                Some(prev) if *prev != value => {
                    return Err(bad(format!(
                        "conflicting distances for (`{}`, `{}`)",
                        entry.from, entry.to
                    )));
                }
                _ => table[a][b] = Some(value.clone()),
            }
        }
    }
    let zero = Rational::from_integer(0.into());
    table
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            row.into_iter()
                .enumerate()
                .map(|(j, cell)| {
                    if i == j {
                        Ok(zero.clone())
                    } else {
                        cell.ok_or_else(|| {
                            bad(format!(
                                "no distance given for (`{}`, `{}`)",
                                points[i], points[j]
                            ))
                        })
                    }
                })
                .collect()
        })
        .collect()
}

/// Loads and validates a space for the commands where any failure is simply
/// bad input data.
pub fn read_space(path: &Path) -> Result<FiniteMetricSpace, CliError> {
    let doc = load_space_document(path)?;
    build_space(&doc).map_err(|err| match err {
        SpaceBuildError::Document(msg) => {
            CliError::Data(format!("{}: {msg}", path.display()))
        }
        SpaceBuildError::Metric(err) => {
            CliError::Data(format!("{}: {err}", path.display()))
        }
    })
}

/// Canonical document for a space: full matrix, canonical rational strings.
pub fn space_document(space: &FiniteMetricSpace) -> SpaceDocument {
    let rows = (0..space.len())
        .map(|i| {
            (0..space.len())
                .map(|j| format_rational(space.dist(i, j)))
                .collect()
        })
        .collect();
    SpaceDocument {
        points: space.points().to_vec(),
        base: space.point_name(space.base()).to_owned(),
        distances: DistanceTable::Matrix(rows),
    }
}

#[derive(Serialize, Deserialize)]
pub struct MeasureAtom {
    pub from: String,
    pub to: String,
    pub mass: String,
}

/// Reads a measure document (a JSON array of atoms) against a space.
/// Duplicate atoms accumulate; every single entry must carry positive mass.
pub fn read_measure(path: &Path, space: &FiniteMetricSpace) -> Result<Measure, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|source| CliError::Io { path: path.to_owned(), source })?;
    let atoms: Vec<MeasureAtom> = serde_json::from_str(&text).map_err(|err| {
        CliError::Data(format!("{}: not a measure document: {err}", path.display()))
    })?;
    let bad = |msg: String| CliError::Data(format!("{}: {msg}", path.display()));
    let mut parsed = Vec::with_capacity(atoms.len());
    for atom in &atoms {
        let from = space
            .index_of(&atom.from)
            .ok_or_else(|| bad(format!("unknown point `{}`", atom.from)))?;
        let to = space
            .index_of(&atom.to)
            .ok_or_else(|| bad(format!("unknown point `{}`", atom.to)))?;
        if from == to {
            return Err(bad(format!("atom from `{}` to itself", atom.from)));
        }
        let mass = parse_rational(&atom.mass)
            .map_err(|err| bad(format!("mass of ({}, {}): {err}", atom.from, atom.to)))?;
        if mass <= Rational::from_integer(0.into()) {
            return Err(bad(format!(
                "mass of ({}, {}) must be positive",
                atom.from, atom.to
            )));
        }
        parsed.push((PairId::new(from, to), mass));
    }
    Measure::from_atoms(space, parsed)
        .map_err(|err| bad(format!("invalid measure: {err}")))
}

/// Serializes a measure as the document form, atoms in canonical pair order.
pub fn measure_json(space: &FiniteMetricSpace, measure: &Measure) -> serde_json::Value {
    let atoms: Vec<serde_json::Value> = measure
        .atoms()
        .map(|(pair, mass)| {
            serde_json::json!({
                "from": space.point_name(pair.from),
                "to": space.point_name(pair.to),
                "mass": format_rational(mass),
            })
        })
        .collect();
    serde_json::Value::Array(atoms)
}

/// Resolves a `--vector` spec: inline JSON object mapping point names to
/// coefficient strings, `@FILE` containing the same object, or `mol:FROM,TO`
/// for a single molecule.
pub fn parse_vector_spec(
    space: &FiniteMetricSpace,
    spec: &str,
) -> Result<FreeVector, CliError> {
    if let Some(rest) = spec.strip_prefix("mol:") {
        let (from, to) = rest.split_once(',').ok_or_else(|| {
            CliError::Usage("mol: spec needs two point names, as in mol:FROM,TO".into())
        })?;
        let resolve = |name: &str| {
            space
                .index_of(name.trim())
                .ok_or_else(|| CliError::Data(format!("unknown point `{}`", name.trim())))
        };
        let (from, to) = (resolve(from)?, resolve(to)?);
        if from == to {
            return Err(CliError::Data("a molecule joins two distinct points".into()));
        }
        Ok(molecule(space, PairId::new(from, to)))
    } else if let Some(path) = spec.strip_prefix('@') {
        let path = Path::new(path);
        let text = fs::read_to_string(path)
            .map_err(|source| CliError::Io { path: path.to_owned(), source })?;
        vector_from_json(space, &text)
    } else if spec.trim_start().starts_with('{') {
        vector_from_json(space, spec)
    } else {
        Err(CliError::Usage(
            "--vector must be an inline JSON object, @FILE, or mol:FROM,TO".into(),
        ))
    }
}

fn vector_from_json(
    space: &FiniteMetricSpace,
    text: &str,
) -> Result<FreeVector, CliError> {
    let raw: BTreeMap<String, String> = serde_json::from_str(text)
        .map_err(|err| CliError::Data(format!("not a point-to-coefficient object: {err}")))?;
    let mut coeffs = Vec::with_capacity(raw.len());
    for (name, value) in &raw {
        let point = space
            .index_of(name)
            .ok_or_else(|| CliError::Data(format!("unknown point `{name}`")))?;
        let coeff = parse_rational(value)
            .map_err(|err| CliError::Data(format!("coefficient of `{name}`: {err}")))?;
        coeffs.push((point, coeff));
    }
    FreeVector::from_coeffs(space, coeffs)
        .map_err(|err| CliError::Data(format!("invalid element: {err}")))
}
