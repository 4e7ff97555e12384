//! Bundled end-to-end examples over the named fixture spaces. Each prints
//! exactly known constants, so the demos double as a smoke test of the
//! whole pipeline.
//!
//! If `LIPFREE_FIXTURES` names a directory containing `<demo-name>.json`,
//! that space document replaces the built-in space (its point list must
//! match); the demo then reports the recomputed values.

use std::env;
use std::path::Path;

use serde_json::{json, Map, Value};

use lipfree::cone::{self, ConeFunction};
use lipfree::deleeuw::{push_forward, Measure};
use lipfree::fixtures;
use lipfree::freespace;
use lipfree::order;
use lipfree::rational::int;
use lipfree::space::{FiniteMetricSpace, PairId};

use crate::commands::{CliError, NumberStyle, Report};
use crate::docs;

#[derive(Clone, Copy, clap::ValueEnum)]
pub enum DemoName {
    /// A capped cone member telling a dirac apart from its two-step split
    ChoquetMotivation,
    /// A measure that is minimal in the representation order yet not of least mass
    MinimalNonoptimal,
    /// Two different minimal measures of least mass representing one element
    NonuniqueMinimal,
}

impl DemoName {
    fn slug(self) -> &'static str {
        match self {
            DemoName::ChoquetMotivation => "choquet-motivation",
            DemoName::MinimalNonoptimal => "minimal-nonoptimal",
            DemoName::NonuniqueMinimal => "nonunique-minimal",
        }
    }

    fn builtin_space(self) -> FiniteMetricSpace {
        match self {
            DemoName::ChoquetMotivation => fixtures::interval_three(),
            DemoName::MinimalNonoptimal => fixtures::short_edge_four(),
            DemoName::NonuniqueMinimal => fixtures::discrete_four(),
        }
    }
}

pub fn run(name: DemoName, style: &NumberStyle) -> Result<Report, CliError> {
    let space = demo_space(name)?;
    match name {
        DemoName::ChoquetMotivation => choquet_motivation(&space, style),
        DemoName::MinimalNonoptimal => minimal_nonoptimal(&space, style),
        DemoName::NonuniqueMinimal => nonunique_minimal(&space, style),
    }
}

fn demo_space(name: DemoName) -> Result<FiniteMetricSpace, CliError> {
    let builtin = name.builtin_space();
    let Some(dir) = env::var_os("LIPFREE_FIXTURES") else {
        return Ok(builtin);
    };
    let path = Path::new(&dir).join(format!("{}.json", name.slug()));
    if !path.is_file() {
        return Ok(builtin);
    }
    let space = docs::read_space(&path)?;
    if space.points() != builtin.points() || space.base() != builtin.base() {
        return Err(CliError::Data(format!(
            "{}: fixture override must keep the built-in point list",
            path.display()
        )));
    }
    Ok(space)
}

fn pair_by_name(space: &FiniteMetricSpace, from: &str, to: &str) -> PairId {
    PairId::new(
        space.index_of(from).expect("demo points are pinned"),
        space.index_of(to).expect("demo points are pinned"),
    )
}

fn choquet_motivation(
    space: &FiniteMetricSpace,
    style: &NumberStyle,
) -> Result<Report, CliError> {
    let long = pair_by_name(space, "1", "0");
    let dirac = Measure::dirac(space, long);
    // The split carries the long pair's unit of transport through the middle
    // point; the leg masses keep the pushforward equal to the molecule.
    let d_long = space.pair_dist(long);
    let leg_one = pair_by_name(space, "1", "h");
    let leg_two = pair_by_name(space, "h", "0");
    let split = Measure::from_atoms(
        space,
        vec![
            (leg_one, space.pair_dist(leg_one) / d_long),
            (leg_two, space.pair_dist(leg_two) / d_long),
        ],
    )
    .expect("leg masses are positive");

    let g = cone::clamp(space, &ConeFunction::constant(space, int(2)), &int(1))
        .expect("nonnegative constants cap cleanly");
    let with_dirac = g.pair_measure(space, &dirac);
    let with_split = g.pair_measure(space, &split);
    let forward = order::precedes(space, &dirac, &split).holds;
    let backward = order::precedes(space, &split, &dirac).holds;

    let mut map = Map::new();
    map.insert("command".to_owned(), json!("demo"));
    map.insert("name".to_owned(), json!(self::DemoName::ChoquetMotivation.slug()));
    map.insert("member".to_owned(), json!("min{2, 1/d}"));
    style.insert(&mut map, "pairing_with_dirac", &with_dirac);
    style.insert(&mut map, "pairing_with_split", &with_split);
    map.insert("dirac_precedes_split".to_owned(), json!(forward));
    map.insert("split_precedes_dirac".to_owned(), json!(backward));
    Ok(Report {
        human: format!(
            "capped member g = min{{2, 1/d}} on the three-point interval\n\
             <g, dirac(1,0)> = {}\n\
             <g, split> = {}\n\
             dirac precedes split: {forward}\n\
             split precedes dirac: {backward}",
            style.show(&with_dirac),
            style.show(&with_split),
        ),
        json: Value::Object(map),
        code: 0,
    })
}

fn minimal_nonoptimal(
    space: &FiniteMetricSpace,
    style: &NumberStyle,
) -> Result<Report, CliError> {
    let measure = Measure::from_atoms(
        space,
        vec![
            (pair_by_name(space, "0", "a"), int(1)),
            (pair_by_name(space, "b", "c"), int(1)),
        ],
    )
    .expect("unit masses are positive");
    let mass = measure.total_mass();
    let norm = freespace::free_norm(space, &push_forward(space, &measure));
    let minimal = order::is_minimal(space, &measure);
    let optimal = mass == norm;

    let mut map = Map::new();
    map.insert("command".to_owned(), json!("demo"));
    map.insert("name".to_owned(), json!(DemoName::MinimalNonoptimal.slug()));
    map.insert("measure".to_owned(), docs::measure_json(space, &measure));
    style.insert(&mut map, "mass", &mass);
    style.insert(&mut map, "free_norm", &norm);
    map.insert("minimal".to_owned(), json!(minimal));
    map.insert("optimal".to_owned(), json!(optimal));
    Ok(Report {
        human: format!(
            "unit atoms on (0,a) and (b,c) over the short-edge space\n\
             mass = {}\n\
             free norm of the represented element = {}\n\
             minimal: {minimal}\n\
             optimal: {optimal}",
            style.show(&mass),
            style.show(&norm),
        ),
        json: Value::Object(map),
        code: 0,
    })
}

fn nonunique_minimal(
    space: &FiniteMetricSpace,
    style: &NumberStyle,
) -> Result<Report, CliError> {
    let matching = |a: (&str, &str), b: (&str, &str)| {
        Measure::from_atoms(
            space,
            vec![
                (pair_by_name(space, a.0, a.1), int(1)),
                (pair_by_name(space, b.0, b.1), int(1)),
            ],
        )
        .expect("unit masses are positive")
    };
    let one = matching(("0", "2"), ("1", "3"));
    let two = matching(("0", "3"), ("1", "2"));
    let midpoint = one.add(&two).scale(&lipfree::rational::rat(1, 2));
    let element = push_forward(space, &one);
    let same_element = element == push_forward(space, &two);
    let gamma = space.gamma_modulus();
    let norm = freespace::free_norm(space, &element);

    let candidates: Vec<Value> = [("matching-one", &one), ("matching-two", &two), ("midpoint", &midpoint)]
        .into_iter()
        .map(|(label, measure)| {
            json!({
                "name": label,
                "measure": docs::measure_json(space, measure),
                "optimal": measure.total_mass() == norm,
                "minimal": order::is_minimal(space, measure),
            })
        })
        .collect();

    let mut map = Map::new();
    map.insert("command".to_owned(), json!("demo"));
    map.insert("name".to_owned(), json!(DemoName::NonuniqueMinimal.slug()));
    style.insert(&mut map, "gamma", &gamma);
    style.insert(&mut map, "free_norm", &norm);
    map.insert("same_element".to_owned(), json!(same_element));
    map.insert("candidates".to_owned(), Value::Array(candidates));
    Ok(Report {
        human: format!(
            "two crossing matchings on the discrete four-point space\n\
             gamma = {}\n\
             free norm of the shared element = {}\n\
             both matchings and their midpoint are optimal and minimal",
            style.show(&gamma),
            style.show(&norm),
        ),
        json: Value::Object(map),
        code: 0,
    })
}
