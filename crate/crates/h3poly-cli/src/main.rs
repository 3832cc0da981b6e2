//! `h3poly` command-line front end.
//!
//! Every command prints one JSON report on stdout:
//! `{tool, version, command, options, verdict, conditions, metrics?, output?}`.
//! Constructed objects go to `--out` when given, otherwise into `output`.
//!
//! Exit status: 0 when the check passes or the construction succeeds, 1 when
//! a check fails, 2 on usage or input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Map, Value};

use h3poly::andreev::check_andreev;
use h3poly::combinatorics::{poincare_dual, stellate, stellation_inscribable_necessary, steinitz_verdict, AbstractPolyhedron, SteinitzVerdict};
use h3poly::hpolyhedron::{build_from_halfspaces, ConvexPolyhedronH3, EdgeLength, HalfSpace};
use h3poly::io::{self, ConeMetricJson, HalfSpaceJson, PolyhedronJson};
use h3poly::pogorelov::{are_congruent, counterexample_pair};
use h3poly::polar::{check_admissible, check_ideally_admissible, default_depth, gauss_image, t_expansion};
use h3poly::report::{Condition, Report, Verdict};

#[derive(Parser)]
#[command(name = "h3poly", version, about = "Convex polyhedra in hyperbolic 3-space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the combinatorial structure of a polyhedron file.
    Validate(PolyIn),
    /// Poincaré dual of a polyhedron.
    Dual(PolyOut),
    /// Steinitz test on the 1-skeleton.
    Steinitz(PolyIn),
    /// Cone every face to a new vertex.
    Stellate(PolyOut),
    /// Vertex/face count test for inscribability of the stellation.
    InscribableStellation(PolyIn),
    /// Intersect half-spaces and report vertices and metric tables.
    BuildH3(HalfSpacesOut),
    /// Gauss image of a half-space polyhedron as a cone metric.
    GaussImage(HalfSpacesOut),
    /// Admissibility of a cone metric, with a bounded closed-geodesic search.
    CheckAdmissible(CheckAdmissibleArgs),
    /// Hemisphere-cell admissibility of a cone metric.
    CheckIdeal(ConeIn),
    /// Fan each hemisphere cell into stretched triangles.
    TExpand(TExpandArgs),
    /// Andreev conditions for a dihedral-angle assignment.
    CheckAndreev(AndreevArgs),
    /// Two hyperbolic prisms with equal edge lengths and different angles.
    PogorelovPair(PairArgs),
    /// Congruence of two half-space polyhedra, reflections included.
    Congruent(CongruentArgs),
}

#[derive(Args, Serialize)]
struct PolyIn {
    polyhedron: PathBuf,
}

#[derive(Args, Serialize)]
struct PolyOut {
    polyhedron: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct HalfSpacesOut {
    halfspaces: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct ConeIn {
    metric: PathBuf,
}

#[derive(Args, Serialize)]
struct CheckAdmissibleArgs {
    metric: PathBuf,
    /// Maximum cells crossed per geodesic; defaults to three times the cell count.
    #[arg(long)]
    depth: Option<usize>,
}

#[derive(Args, Serialize)]
struct TExpandArgs {
    metric: PathBuf,
    #[arg(long)]
    t: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct AndreevArgs {
    polyhedron: PathBuf,
    angles: PathBuf,
}

#[derive(Args, Serialize)]
struct PairArgs {
    #[arg(long, default_value_t = 0.1)]
    a: f64,
    #[arg(long, default_value_t = 0.1)]
    b: f64,
    #[arg(long, default_value_t = 0.1)]
    c: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    u: f64,
    #[arg(long, default_value_t = 0.05, allow_negative_numbers = true)]
    v: f64,
    /// Directory for `first.json` and `second.json` half-space files.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct CongruentArgs {
    first: PathBuf,
    second: PathBuf,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

/// A report plus the constructed object, if any.
struct Outcome {
    report: Report,
    output: Option<Value>,
}

impl Outcome {
    fn check(report: Report) -> Self {
        Self { report, output: None }
    }

    fn built(conditions: Vec<Condition>, metrics: Option<Value>, output: Value) -> Self {
        let mut report = Report::from_conditions(conditions);
        report.metrics = metrics;
        Self { report, output: Some(output) }
    }
}

type CliResult<T> = Result<T, String>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn with_path<T>(path: &Path, r: h3poly::Result<T>) -> CliResult<T> {
    r.map_err(|e| format!("{}: {e}", path.display()))
}

fn load_polyhedron(path: &Path) -> CliResult<AbstractPolyhedron> {
    with_path(path, io::parse_polyhedron(&read(path)?))
}

fn load_halfspaces(path: &Path) -> CliResult<Vec<HalfSpace>> {
    with_path(path, io::parse_halfspaces(&read(path)?))
}

fn load_polyhedron_h3(path: &Path) -> CliResult<ConvexPolyhedronH3> {
    with_path(path, build_from_halfspaces(&load_halfspaces(path)?))
}

fn load_metric(path: &Path) -> CliResult<h3poly::polar::ConeMetricSurface> {
    with_path(path, io::parse_cone_metric(&read(path)?))
}

fn poly_json(p: &AbstractPolyhedron) -> Value {
    json!(PolyhedronJson::from(p))
}

fn counts(p: &AbstractPolyhedron) -> Value {
    json!({"vertices": p.num_vertices(), "edges": p.num_edges(), "faces": p.num_faces()})
}

fn halfspaces_json(hs: &[HalfSpace]) -> Value {
    json!(hs.iter().map(HalfSpaceJson::from).collect::<Vec<_>>())
}

fn h3_metrics(p: &ConvexPolyhedronH3) -> Value {
    let combo = p.combinatorics();
    let lengths: Vec<Value> = (0..combo.num_edges())
        .map(|e| match p.edge_length(e) {
            EdgeLength::Finite(l) => json!(l),
            EdgeLength::Infinite => json!("infinite"),
            EdgeLength::Undefined => Value::Null,
        })
        .collect();
    let dihedral: Vec<Value> = (0..combo.num_edges()).map(|e| p.dihedral_angle(e).map_or(Value::Null, |a| json!(a))).collect();
    json!({
        "counts": counts(combo),
        "vertex_classes": p.vertex_classes(),
        "klein_vertices": p.klein_vertices().iter().map(|v| [v.x, v.y, v.z]).collect::<Vec<_>>(),
        "edge_lengths": lengths,
        "dihedral_angles": dihedral,
        "redundant_halfspaces": p.redundant_halfspaces(),
        "compact": p.is_compact(),
        "ideal": p.is_ideal(),
    })
}

fn run(cmd: &Command) -> CliResult<Outcome> {
    Ok(match cmd {
        Command::Validate(a) => Outcome::check(load_polyhedron(&a.polyhedron)?.validate()),
        Command::Dual(a) => {
            let p = load_polyhedron(&a.polyhedron)?;
            let d = with_path(&a.polyhedron, poincare_dual(&p))?;
            Outcome::built(vec![Condition::pass("dual")], Some(json!({"input": counts(&p), "dual": counts(&d)})), poly_json(&d))
        }
        Command::Steinitz(a) => {
            let p = load_polyhedron(&a.polyhedron)?;
            let g = with_path(&a.polyhedron, p.skeleton())?;
            let cond = match steinitz_verdict(&g) {
                SteinitzVerdict::Polyhedral => Condition::pass("steinitz"),
                SteinitzVerdict::NotThreeConnected { separating_set } => Condition::fail(
                    "steinitz",
                    json!({"reason": "not 3-connected", "separating_vertices": separating_set.iter().map(|&v| p.vertex_id(v)).collect::<Vec<_>>()}),
                ),
                SteinitzVerdict::NonPlanar => Condition::fail("steinitz", json!({"reason": "not planar"})),
            };
            Outcome::check(Report::from_conditions(vec![cond]))
        }
        Command::Stellate(a) => {
            let p = load_polyhedron(&a.polyhedron)?;
            let s = with_path(&a.polyhedron, stellate(&p))?;
            Outcome::built(vec![Condition::pass("stellate")], Some(json!({"input": counts(&p), "stellation": counts(&s)})), poly_json(&s))
        }
        Command::InscribableStellation(a) => {
            let p = load_polyhedron(&a.polyhedron)?;
            let (ok, reason) = stellation_inscribable_necessary(&p);
            Outcome::check(Report::from_conditions(vec![Condition::with("vertex-face-count", ok, Some(json!(reason)))]))
        }
        Command::BuildH3(a) => {
            let p = load_polyhedron_h3(&a.halfspaces)?;
            let valid = p.combinatorics().validate();
            Outcome::built(valid.conditions, Some(h3_metrics(&p)), poly_json(p.combinatorics()))
        }
        Command::GaussImage(a) => {
            let p = load_polyhedron_h3(&a.halfspaces)?;
            let g = with_path(&a.halfspaces, gauss_image(&p))?;
            let q = &g.surface;
            let metrics = json!({
                "cells": q.num_cells(),
                "vertices": q.num_vertices(),
                "cone_angles": q.cone_angles(),
                "face_vertex": g.face_vertex,
            });
            Outcome::built(vec![Condition::pass("gauss-image")], Some(metrics), json!(ConeMetricJson::from(q)))
        }
        Command::CheckAdmissible(a) => {
            let q = load_metric(&a.metric)?;
            let depth = a.depth.unwrap_or_else(|| default_depth(&q));
            let mut report = check_admissible(&q, depth).to_report();
            report.metrics = Some(json!({"depth": depth, "cone_angles": q.cone_angles()}));
            Outcome::check(report)
        }
        Command::CheckIdeal(a) => Outcome::check(check_ideally_admissible(&load_metric(&a.metric)?)),
        Command::TExpand(a) => {
            let q = load_metric(&a.metric)?;
            let e = with_path(&a.metric, t_expansion(&q, a.t))?;
            let metrics = json!({"cells": e.num_cells(), "cone_angles": e.cone_angles()});
            Outcome::built(vec![Condition::pass("t-expansion")], Some(metrics), json!(ConeMetricJson::from(&e)))
        }
        Command::CheckAndreev(a) => {
            let p = load_polyhedron(&a.polyhedron)?;
            let angles = with_path(&a.angles, io::parse_angles(&read(&a.angles)?))?;
            Outcome::check(with_path(&a.polyhedron, check_andreev(&p, &angles))?)
        }
        Command::PogorelovPair(a) => pogorelov_pair(a)?,
        Command::Congruent(a) => {
            let p = load_polyhedron_h3(&a.first)?;
            let q = load_polyhedron_h3(&a.second)?;
            let same = are_congruent(&p, &q, a.tol);
            Outcome::check(Report::from_conditions(vec![Condition::with("congruent", same, None)]))
        }
    })
}

fn pogorelov_pair(a: &PairArgs) -> CliResult<Outcome> {
    let pair = counterexample_pair(a.a, a.b, a.c, a.u, a.v).map_err(|e| e.to_string())?;
    let missing = || "edge length undefined".to_string();
    let (l1, l2) = (pair.first.edge_lengths().ok_or_else(missing)?, pair.second.edge_lengths().ok_or_else(missing)?);
    let (d1, d2) = (
        pair.first.dihedral_angles().map_err(|e| e.to_string())?,
        pair.second.dihedral_angles().map_err(|e| e.to_string())?,
    );
    let matched = pair.matched_edges();
    let rows: Vec<Value> = matched
        .iter()
        .map(|&(e, g)| {
            let [s, t] = pair.first.combinatorics().edge(e);
            json!({
                "prism_vertices": [pair.first_labels[s], pair.first_labels[t]],
                "length": [l1[e], l2[g]],
                "dihedral": [d1[e], d2[g]],
            })
        })
        .collect();
    let length_gap = matched.iter().map(|&(e, g)| (l1[e] - l2[g]).abs()).fold(0.0, f64::max);
    let angle_gap = matched.iter().map(|&(e, g)| (d1[e] - d2[g]).abs()).fold(0.0, f64::max);
    let congruent = are_congruent(&pair.first, &pair.second, 1e-9);
    let conditions = vec![
        Condition::pass("convex"),
        Condition::with("equal-edge-lengths", length_gap <= 1e-10, Some(json!({"max_difference": length_gap}))),
        Condition::with("non-congruent", !congruent, Some(json!({"max_dihedral_difference": angle_gap}))),
    ];
    let first = halfspaces_json(pair.first.halfspaces());
    let second = halfspaces_json(pair.second.halfspaces());
    if let Some(dir) = &a.out_dir {
        fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
        write_json(&dir.join("first.json"), &first)?;
        write_json(&dir.join("second.json"), &second)?;
    }
    let mut report = Report::from_conditions(conditions);
    report.metrics = Some(json!({"edges": rows}));
    let output = a.out_dir.is_none().then(|| json!({"first": first, "second": second}));
    Ok(Outcome { report, output })
}

fn write_json(path: &Path, v: &Value) -> CliResult<()> {
    let text = serde_json::to_string_pretty(v).expect("JSON values serialize");
    fs::write(path, text + "\n").map_err(|e| format!("{}: {e}", path.display()))
}

fn name_and_options(cmd: &Command) -> (&'static str, Value) {
    fn o<T: Serialize>(t: &T) -> Value {
        serde_json::to_value(t).expect("options serialize")
    }
    match cmd {
        Command::Validate(a) => ("validate", o(a)),
        Command::Dual(a) => ("dual", o(a)),
        Command::Steinitz(a) => ("steinitz", o(a)),
        Command::Stellate(a) => ("stellate", o(a)),
        Command::InscribableStellation(a) => ("inscribable-stellation", o(a)),
        Command::BuildH3(a) => ("build-h3", o(a)),
        Command::GaussImage(a) => ("gauss-image", o(a)),
        Command::CheckAdmissible(a) => ("check-admissible", o(a)),
        Command::CheckIdeal(a) => ("check-ideal", o(a)),
        Command::TExpand(a) => ("t-expand", o(a)),
        Command::CheckAndreev(a) => ("check-andreev", o(a)),
        Command::PogorelovPair(a) => ("pogorelov-pair", o(a)),
        Command::Congruent(a) => ("congruent", o(a)),
    }
}

fn out_path(cmd: &Command) -> Option<&Path> {
    match cmd {
        Command::Dual(a) | Command::Stellate(a) => a.out.as_deref(),
        Command::BuildH3(a) | Command::GaussImage(a) => a.out.as_deref(),
        Command::TExpand(a) => a.out.as_deref(),
        _ => None,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, options) = name_and_options(&cli.command);
    let outcome = match run(&cli.command) {
        Ok(o) => o,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let mut output = outcome.output;
    if let (Some(path), Some(v)) = (out_path(&cli.command), &output) {
        if let Err(msg) = write_json(path, v) {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        output = None;
    }

    let mut top = Map::new();
    top.insert("tool".into(), json!("h3poly"));
    top.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    top.insert("command".into(), json!(name));
    top.insert("options".into(), options);
    if let Value::Object(r) = json!(outcome.report) {
        top.extend(r);
    }
    if let Some(v) = output {
        top.insert("output".into(), v);
    }
    println!("{}", serde_json::to_string_pretty(&Value::Object(top)).expect("JSON values serialize"));
    match outcome.report.verdict {
        Verdict::Pass | Verdict::Accept => ExitCode::SUCCESS,
        Verdict::Fail | Verdict::Reject | Verdict::Inconclusive => ExitCode::from(1),
    }
}
