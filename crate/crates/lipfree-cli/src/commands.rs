//! Subcommand implementations: each returns a JSON report for stdout, a
//! short human summary for stderr, and the process exit code.

use std::fmt;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};

use lipfree::cone;
use lipfree::deleeuw::push_forward;
use lipfree::freespace::{self, RepresentationReport};
use lipfree::order::{self, OrderWitness};
use lipfree::rational::{decimal_string, format_rational, Rational};
use lipfree::space::FiniteMetricSpace;

use crate::docs::{self, SpaceBuildError};
use crate::{demo, Cli, Command};

#[derive(Debug)]
pub enum CliError {
    /// Unreadable file (exit 66).
    Io { path: PathBuf, source: std::io::Error },
    /// Malformed or mathematically meaningless input (exit 2).
    Data(String),
    /// Argument shapes outside the documented grammar (exit 64).
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 66,
            CliError::Data(_) => 2,
            CliError::Usage(_) => 64,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Data(msg) | CliError::Usage(msg) => f.write_str(msg),
        }
    }
}

/// Exact-number formatting: always the canonical rational string, plus a
/// rounded decimal companion when `--decimal K` was given.
pub struct NumberStyle {
    pub decimal: Option<usize>,
}

impl NumberStyle {
    /// Adds `key` (and `key_decimal` when enabled) to a JSON object.
    pub fn insert(&self, map: &mut Map<String, Value>, key: &str, value: &Rational) {
        map.insert(key.to_owned(), Value::String(format_rational(value)));
        if let Some(places) = self.decimal {
            map.insert(
                format!("{key}_decimal"),
                Value::String(decimal_string(value, places)),
            );
        }
    }

    /// Human form: `3/2` or `3/2 (~1.50)`.
    pub fn show(&self, value: &Rational) -> String {
        match self.decimal {
            Some(places) => {
                format!("{} (~{})", format_rational(value), decimal_string(value, places))
            }
            None => format_rational(value),
        }
    }
}

pub struct Report {
    pub json: Value,
    pub human: String,
    pub code: i32,
}

pub fn run(cli: Cli) -> i32 {
    let style = NumberStyle { decimal: cli.decimal };
    match dispatch(cli.command, &style) {
        Ok(mut report) => {
            if let (Some(places), Value::Object(map)) = (style.decimal, &mut report.json)
            {
                map.insert("decimal_places".to_owned(), json!(places));
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&report.json).expect("report serializes")
            );
            eprintln!("{}", report.human);
            report.code
        }
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

fn dispatch(command: Command, style: &NumberStyle) -> Result<Report, CliError> {
    match command {
        Command::CheckMetric { space } => check_metric(&space),
        Command::FreeNorm { space, vector } => free_norm(&space, &vector, style),
        Command::Represent { space, vector, minimal } => {
            represent(&space, &vector, minimal, style)
        }
        Command::IsMinimal { space, measure } => is_minimal(&space, &measure),
        Command::IsOptimal { space, measure } => is_optimal(&space, &measure, style),
        Command::Precedes { space, left, right } => precedes(&space, &left, &right),
        Command::Extreme { space } => extreme(&space),
        Command::Gamma { space } => gamma(&space, style),
        Command::Demo { name } => demo::run(name, style),
    }
}

fn check_metric(path: &Path) -> Result<Report, CliError> {
    let doc = docs::load_space_document(path)?;
    match docs::build_space(&doc) {
        Ok(space) => Ok(Report {
            json: json!({
                "command": "check-metric",
                "valid": true,
                "points": space.len(),
                "base": space.point_name(space.base()),
                "canonical": serde_json::to_value(docs::space_document(&space))
                    .expect("document serializes"),
            }),
            human: format!("valid metric on {} points", space.len()),
            code: 0,
        }),
        Err(SpaceBuildError::Metric(err)) if docs::axiom_failure(&err) => Ok(Report {
            json: json!({
                "command": "check-metric",
                "valid": false,
                "violation": err.to_string(),
            }),
            human: format!("not a metric: {err}"),
            code: 1,
        }),
        Err(SpaceBuildError::Metric(err)) => {
            Err(CliError::Data(format!("{}: {err}", path.display())))
        }
        Err(SpaceBuildError::Document(msg)) => {
            Err(CliError::Data(format!("{}: {msg}", path.display())))
        }
    }
}

fn free_norm(path: &Path, spec: &str, style: &NumberStyle) -> Result<Report, CliError> {
    let space = docs::read_space(path)?;
    let vector = docs::parse_vector_spec(&space, spec)?;
    let (norm, witness) = freespace::norm_witness(&space, &vector);
    let witness_values: Map<String, Value> = (0..space.len())
        .map(|x| {
            (
                space.point_name(x).to_owned(),
                Value::String(format_rational(witness.value(x))),
            )
        })
        .collect();
    let mut map = Map::new();
    map.insert("command".to_owned(), json!("free-norm"));
    style.insert(&mut map, "norm", &norm);
    map.insert("witness".to_owned(), Value::Object(witness_values));
    Ok(Report {
        human: format!("free norm: {}", style.show(&norm)),
        json: Value::Object(map),
        code: 0,
    })
}

/// Shared JSON shape for a representation report.
fn representation_json(
    space: &FiniteMetricSpace,
    report: &RepresentationReport,
    style: &NumberStyle,
) -> Map<String, Value> {
    let names = |points: &std::collections::BTreeSet<usize>| -> Vec<Value> {
        points
            .iter()
            .map(|&x| Value::String(space.point_name(x).to_owned()))
            .collect()
    };
    let marginal = |values: &std::collections::BTreeMap<usize, Rational>| -> Value {
        Value::Object(
            values
                .iter()
                .map(|(&x, mass)| {
                    (
                        space.point_name(x).to_owned(),
                        Value::String(format_rational(mass)),
                    )
                })
                .collect(),
        )
    };
    let mut map = Map::new();
    map.insert(
        "measure".to_owned(),
        docs::measure_json(space, &report.measure),
    );
    style.insert(&mut map, "mass", &report.mass);
    style.insert(&mut map, "free_norm", &report.free_norm);
    map.insert("optimal".to_owned(), json!(report.optimal));
    map.insert("minimal".to_owned(), json!(report.minimal));
    map.insert("shadow".to_owned(), Value::Array(names(&report.shadow)));
    map.insert("marginal_first".to_owned(), marginal(&report.marginal_first));
    map.insert("marginal_second".to_owned(), marginal(&report.marginal_second));
    map
}

fn represent(
    path: &Path,
    spec: &str,
    minimal: bool,
    style: &NumberStyle,
) -> Result<Report, CliError> {
    let space = docs::read_space(path)?;
    let vector = docs::parse_vector_spec(&space, spec)?;
    let report = if minimal {
        freespace::minimal_optimal_representation(&space, &vector)
    } else {
        freespace::report(&space, &freespace::optimal_representation(&space, &vector))
    };
    let mut map = representation_json(&space, &report, style);
    map.insert("command".to_owned(), json!("represent"));
    map.insert("descended".to_owned(), json!(minimal));
    Ok(Report {
        human: format!(
            "mass {} on {} atoms; optimal: {}; minimal: {}",
            style.show(&report.mass),
            report.measure.support().len(),
            report.optimal,
            report.minimal
        ),
        json: Value::Object(map),
        code: 0,
    })
}

fn is_minimal(path: &Path, measure_path: &Path) -> Result<Report, CliError> {
    let space = docs::read_space(path)?;
    let measure = docs::read_measure(measure_path, &space)?;
    let minimal = order::is_minimal(&space, &measure);
    Ok(Report {
        json: json!({ "command": "is-minimal", "minimal": minimal }),
        human: format!("minimal: {minimal}"),
        code: i32::from(!minimal),
    })
}

fn is_optimal(
    path: &Path,
    measure_path: &Path,
    style: &NumberStyle,
) -> Result<Report, CliError> {
    let space = docs::read_space(path)?;
    let measure = docs::read_measure(measure_path, &space)?;
    let mass = measure.total_mass();
    let norm = freespace::free_norm(&space, &push_forward(&space, &measure));
    let optimal = mass == norm;
    let mut map = Map::new();
    map.insert("command".to_owned(), json!("is-optimal"));
    map.insert("optimal".to_owned(), json!(optimal));
    style.insert(&mut map, "mass", &mass);
    style.insert(&mut map, "free_norm", &norm);
    Ok(Report {
        human: format!(
            "optimal: {optimal} (mass {}, norm {})",
            style.show(&mass),
            style.show(&norm)
        ),
        json: Value::Object(map),
        code: i32::from(!optimal),
    })
}

fn precedes(path: &Path, left: &Path, right: &Path) -> Result<Report, CliError> {
    let space = docs::read_space(path)?;
    let left = docs::read_measure(left, &space)?;
    let right = docs::read_measure(right, &space)?;
    let decision = order::precedes(&space, &left, &right);
    let name = |x: usize| space.point_name(x).to_owned();
    let (witness, human) = match &decision.witness {
        OrderWitness::GeneratorCombination(steps) => {
            let generators = cone::dual_generators(&space);
            let steps_json: Vec<Value> = steps
                .iter()
                .map(|(index, t)| {
                    let gen = &generators[*index];
                    json!({
                        "x": name(gen.x),
                        "u": name(gen.u),
                        "y": name(gen.y),
                        "coefficient": format_rational(t),
                    })
                })
                .collect();
            (
                json!({ "type": "generator-combination", "steps": steps_json }),
                format!(
                    "precedes: true (difference is a combination of {} detour generators)",
                    steps.len()
                ),
            )
        }
        OrderWitness::SeparatingG(g) => {
            let values: Vec<Value> = space
                .pairs()
                .map(|pair| {
                    json!({
                        "from": name(pair.from),
                        "to": name(pair.to),
                        "value": format_rational(g.value(&space, pair)),
                    })
                })
                .collect();
            (
                json!({ "type": "separating-function", "values": values }),
                "precedes: false (a separating cone member is attached)".to_owned(),
            )
        }
    };
    Ok(Report {
        json: json!({
            "command": "precedes",
            "precedes": decision.holds,
            "witness": witness,
        }),
        human,
        code: i32::from(!decision.holds),
    })
}

fn extreme(path: &Path) -> Result<Report, CliError> {
    let space = docs::read_space(path)?;
    let mut extreme = Vec::new();
    let mut not_extreme = Vec::new();
    for pair in space.pairs() {
        let entry = json!({
            "from": space.point_name(pair.from),
            "to": space.point_name(pair.to),
        });
        if freespace::is_extreme_molecule(&space, pair) {
            extreme.push(entry);
        } else {
            not_extreme.push(entry);
        }
    }
    Ok(Report {
        human: format!(
            "{} of {} molecules are extreme",
            extreme.len(),
            space.pair_count()
        ),
        json: json!({
            "command": "extreme",
            "extreme": extreme,
            "not_extreme": not_extreme,
        }),
        code: 0,
    })
}

fn gamma(path: &Path, style: &NumberStyle) -> Result<Report, CliError> {
    let space = docs::read_space(path)?;
    let gamma = space.gamma_modulus();
    let mut map = Map::new();
    map.insert("command".to_owned(), json!("gamma"));
    style.insert(&mut map, "gamma", &gamma);
    Ok(Report {
        human: format!("gamma: {}", style.show(&gamma)),
        json: Value::Object(map),
        code: 0,
    })
}
