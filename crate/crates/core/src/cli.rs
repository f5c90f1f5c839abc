//! Command-line front end. Every verb maps to one library operation or one
//! verification suite; output is canonical JSON (sorted keys) unless another
//! format is requested.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::grassmannian::{
    component_of, orbit_dim, sv_intersection_dim2, tv_intersection_dim2, ComponentLabel, OrbitLabel, Parity,
};
use crate::isogeny::{
    adjoint_datum, center_of_dual, derived_datum, dual_isogeny_kernel, dual_label, weyl_schur_character,
    weyl_schur_duality_holds, ModuleKind,
};
use crate::lattice::LatticeVector;
use crate::multiplicities::{
    freudenthal_table, is_weight, kostant_multiplicity, weight_diagram, weyl_dimension, KostantEngine,
    MultiplicityTable,
};
use crate::root_datum::{iota_order_check, DatumSpec, RootDatum};
use crate::smith::FiniteAbelianGroup;
use crate::tensor::{
    associativity_batch, contract_batch, random_labels, semismall_batch, tensor_decompose, TensorTable,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_SUITE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "satake", version, about = "Root data, affine Grassmannian combinatorics and dual-group characters")]
pub struct Command {
    #[command(subcommand)]
    pub verb: Verb,
    #[command(flatten)]
    pub datum: DatumArgs,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct DatumArgs {
    /// Named type such as A2-sc, B3-ad or GL3.
    #[arg(long = "type", global = true, value_name = "TYPE")]
    pub cartan_type: Option<String>,
    /// JSON file holding a datum specification.
    #[arg(long, global = true, value_name = "FILE", conflicts_with = "cartan_type")]
    pub custom_spec: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Semismall,
    Tensor,
    Associativity,
    Oracle,
    Iota,
    Duality,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Weyl,
    Schur,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Emit the Langlands dual datum as a custom specification.
    Dual,
    /// Closure order on G(O)-orbits as nodes and cover edges.
    Poset {
        #[arg(long, alias = "bound", default_value_t = 8)]
        height_bound: i64,
    },
    /// Orbit dimension, component and semi-infinite intersection dimensions.
    Dims {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        nu: Option<String>,
    },
    /// Weight multiplicities of L(λ), or a single entry with --nu.
    Mult {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        nu: Option<String>,
    },
    /// Decomposition of L(λ) ⊗ L(μ).
    Tensor {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// Adjoint and derived data and the dual isogeny kernel.
    Isogeny,
    /// Weight ranks of the Weyl or Schur module of highest weight λ.
    Weylmod {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, value_enum, default_value_t = KindArg::Weyl)]
        kind: KindArg,
    },
    /// Fundamental group and the center of the dual group.
    Pi1,
    /// Run a verification suite.
    Check {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, alias = "height-bound", default_value_t = 8)]
        bound: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample size for the random suites.
        #[arg(long, default_value_t = 25)]
        count: usize,
    },
}

/// A datum together with the basis used for coweights on the command line:
/// Dynkin labels (fundamental coweights) for named semisimple types, the
/// stored basis otherwise.
struct Frame {
    datum: RootDatum,
    dynkin: bool,
}

impl Frame {
    fn load(args: &DatumArgs) -> Result<Frame> {
        let spec = match (&args.cartan_type, &args.custom_spec) {
            (Some(t), _) => DatumSpec::from_type_str(t)?,
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::InvalidSpec(format!("cannot read {}: {e}", path.display())))?;
                DatumSpec::from_json(&text)?
            }
            (None, None) => return Err(Error::InvalidSpec("one of --type or --custom-spec is required".into())),
        };
        let datum = spec.build()?;
        Ok(Frame { dynkin: spec.uses_fundamental_coweights() && datum.is_semisimple(), datum })
    }

    fn basis(&self) -> &'static str {
        if self.dynkin {
            "fundamental_coweights"
        } else {
            "stored"
        }
    }

    fn parse(&self, s: &str) -> Result<LatticeVector> {
        let coords = if s.trim().is_empty() {
            Vec::new()
        } else {
            s.split(',')
                .map(|c| {
                    c.trim().parse::<i64>().map_err(|_| Error::InvalidSpec(format!("bad coordinate {c:?} in {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        if coords.len() != self.datum.rank() {
            return Err(Error::RankMismatch {
                vector: LatticeVector::new(coords.clone()),
                found: coords.len(),
                expected: self.datum.rank(),
            });
        }
        if self.dynkin {
            self.datum.from_simple_pairings(&coords)
        } else {
            Ok(LatticeVector::new(coords))
        }
    }

    fn label(&self, s: &str) -> Result<OrbitLabel> {
        OrbitLabel::new(&self.datum, self.parse(s)?)
    }

    fn show(&self, v: &LatticeVector) -> Vec<i64> {
        if self.dynkin {
            self.datum.simple_pairings(v)
        } else {
            v.coords().to_vec()
        }
    }

    fn value(&self, v: &LatticeVector) -> Value {
        json!(self.show(v))
    }

    /// Display order: descending height, then displayed coordinates.
    fn sorted<'a, T>(&self, it: impl IntoIterator<Item = (&'a LatticeVector, T)>) -> Vec<(&'a LatticeVector, T)> {
        let mut v: Vec<_> = it.into_iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            self.datum.height2(b).cmp(&self.datum.height2(a)).then_with(|| self.show(a).cmp(&self.show(b)))
        });
        v
    }
}

fn group_value(g: &FiniteAbelianGroup) -> Value {
    json!({
        "free_rank": g.free_rank,
        "invariant_factors": g.invariant_factors,
        "name": g.to_string(),
    })
}

fn component_value(c: &ComponentLabel) -> Value {
    json!({ "free": c.free, "moduli": c.moduli, "torsion": c.torsion })
}

fn parity_str(p: Parity) -> &'static str {
    match p {
        Parity::Even => "even",
        Parity::Odd => "odd",
    }
}

/// Output of a verb: the JSON value plus an optional flat table used by the
/// CSV and text projections.
struct Output {
    value: Value,
    table: Option<(Vec<String>, Vec<Vec<String>>)>,
    suite_failed: bool,
}

impl Output {
    fn plain(value: Value) -> Self {
        Output { value, table: None, suite_failed: false }
    }
}

fn coord_header(frame: &Frame, prefix: &str) -> Vec<String> {
    (0..frame.datum.rank()).map(|i| format!("{prefix}{i}")).collect()
}

fn table_rows(frame: &Frame, t: &MultiplicityTable) -> Vec<Vec<String>> {
    frame
        .sorted(t.entries.iter())
        .into_iter()
        .map(|(v, m)| frame.show(v).iter().map(i64::to_string).chain([m.to_string()]).collect())
        .collect()
}

fn mult_table_value(frame: &Frame, t: &MultiplicityTable) -> Result<Value> {
    let entries: Vec<Value> = frame
        .sorted(t.entries.iter())
        .into_iter()
        .map(|(v, m)| json!({ "multiplicity": m, "weight": frame.value(v) }))
        .collect();
    Ok(json!({
        "basis": frame.basis(),
        "dimension": t.total()?,
        "entries": entries,
        "highest_weight": frame.value(t.highest_weight.coweight()),
    }))
}

fn tensor_value(frame: &Frame, t: &TensorTable) -> Result<Value> {
    let entries: Vec<Value> = frame
        .sorted(t.entries.iter())
        .into_iter()
        .map(|(v, n)| json!({ "eta": frame.value(v), "multiplicity": n }))
        .collect();
    Ok(json!({
        "basis": frame.basis(),
        "dimension": t.dimension(&frame.datum)?,
        "entries": entries,
        "lambda": frame.value(t.factors.0.coweight()),
        "mu": frame.value(t.factors.1.coweight()),
    }))
}

fn spec_value(d: &RootDatum) -> Value {
    serde_json::from_str(&d.to_spec().to_json()).expect("spec serializes to JSON")
}

fn dual(frame: &Frame) -> Result<Output> {
    Ok(Output::plain(spec_value(&frame.datum.dual())))
}

fn poset(frame: &Frame, height_bound: i64) -> Result<Output> {
    let d = &frame.datum;
    let nodes = d.dominant_coweights(height_bound)?;
    let mut edges = Vec::new();
    for lam in &nodes {
        for mu in &nodes {
            if !d.dominance_lt(mu, lam) {
                continue;
            }
            let covered = nodes.iter().any(|nu| d.dominance_lt(mu, nu) && d.dominance_lt(nu, lam));
            if !covered {
                edges.push((mu, lam));
            }
        }
    }
    let mut rows = Vec::new();
    let edge_values: Vec<Value> = edges
        .iter()
        .map(|(lo, hi)| {
            rows.push(frame.show(lo).iter().chain(&frame.show(hi)).map(i64::to_string).collect());
            json!({ "from": frame.value(lo), "to": frame.value(hi) })
        })
        .collect();
    let node_values: Vec<Value> = nodes
        .iter()
        .map(|v| {
            Ok(json!({
                "component": component_value(&component_of(d, v)?),
                "coweight": frame.value(v),
                "dim": d.height2(v),
            }))
        })
        .collect::<Result<_>>()?;
    let mut header = coord_header(frame, "from");
    header.extend(coord_header(frame, "to"));
    Ok(Output {
        value: json!({
            "basis": frame.basis(),
            "edges": edge_values,
            "height_bound": height_bound,
            "nodes": node_values,
        }),
        table: Some((header, rows)),
        suite_failed: false,
    })
}

fn dims(frame: &Frame, lambda: &str, nu: Option<&str>) -> Result<Output> {
    let d = &frame.datum;
    let lambda = frame.label(lambda)?;
    let component = component_of(d, lambda.coweight())?;
    let parity = crate::grassmannian::component_parity(d, &component)?;
    let intersection = |nu: &LatticeVector| -> Result<Value> {
        Ok(json!({
            "nu": frame.value(nu),
            "s_dim": sv_intersection_dim2(d, &lambda, nu)?,
            "t_dim": tv_intersection_dim2(d, &lambda, nu)?,
        }))
    };
    let mut value = json!({
        "basis": frame.basis(),
        "component": component_value(&component),
        "lambda": frame.value(lambda.coweight()),
        "orbit_dim": orbit_dim(d, &lambda),
        "parity": parity_str(parity),
    });
    let mut rows = Vec::new();
    match nu {
        Some(nu) => {
            value["intersection"] = intersection(&frame.parse(nu)?)?;
        }
        None => {
            let weights = weight_diagram(d, &lambda)?;
            let mut list = Vec::new();
            for (nu, ()) in frame.sorted(weights.iter().map(|v| (v, ()))) {
                let s = sv_intersection_dim2(d, &lambda, nu)?.expect("weight of L(λ)");
                let t = tv_intersection_dim2(d, &lambda, nu)?.expect("weight of L(λ)");
                rows.push(frame.show(nu).iter().map(i64::to_string).chain([s.to_string(), t.to_string()]).collect());
                list.push(intersection(nu)?);
            }
            value["intersections"] = Value::Array(list);
        }
    }
    let mut header = coord_header(frame, "nu");
    header.extend(["s_dim".to_string(), "t_dim".to_string()]);
    let table = nu.is_none().then_some((header, rows));
    Ok(Output { value, table, suite_failed: false })
}

fn mult(frame: &Frame, lambda: &str, nu: Option<&str>) -> Result<Output> {
    let d = &frame.datum;
    let lambda = frame.label(lambda)?;
    if let Some(nu) = nu {
        let nu = frame.parse(nu)?;
        let m = kostant_multiplicity(d, &lambda, &nu)?;
        let mut header = coord_header(frame, "nu");
        header.push("multiplicity".into());
        let row = frame.show(&nu).iter().map(i64::to_string).chain([m.to_string()]).collect();
        return Ok(Output {
            value: json!({ "basis": frame.basis(), "multiplicity": m }),
            table: Some((header, vec![row])),
            suite_failed: false,
        });
    }
    let t = KostantEngine::shared(d).table(d, &lambda)?;
    let mut header = coord_header(frame, "nu");
    header.push("multiplicity".into());
    Ok(Output {
        value: mult_table_value(frame, &t)?,
        table: Some((header, table_rows(frame, &t))),
        suite_failed: false,
    })
}

fn tensor(frame: &Frame, lambda: &str, mu: &str) -> Result<Output> {
    let d = &frame.datum;
    let t = tensor_decompose(d, &frame.label(lambda)?, &frame.label(mu)?)?;
    let rows = frame
        .sorted(t.entries.iter())
        .into_iter()
        .map(|(v, n)| frame.show(v).iter().map(i64::to_string).chain([n.to_string()]).collect())
        .collect();
    let mut header = coord_header(frame, "eta");
    header.push("multiplicity".into());
    Ok(Output { value: tensor_value(frame, &t)?, table: Some((header, rows)), suite_failed: false })
}

fn isogeny(frame: &Frame) -> Result<Output> {
    let d = &frame.datum;
    let derived = derived_datum(d)?;
    let adjoint = adjoint_datum(d)?;
    let report = dual_isogeny_kernel(&derived)?;
    Ok(Output::plain(json!({
        "adjoint": spec_value(&adjoint),
        "central_torus_rank": d.central_torus_rank(),
        "derived": spec_value(&derived),
        "kernel": group_value(&report.kernel),
        "kernel_direction": report.direction,
        "pi1": group_value(&d.pi1()),
        "pi1_adjoint": group_value(&adjoint.pi1()),
        "pi1_derived": group_value(&derived.pi1()),
    })))
}

fn weylmod(frame: &Frame, lambda: &str, kind: KindArg) -> Result<Output> {
    let d = &frame.datum;
    let lambda = frame.label(lambda)?;
    let kind = match kind {
        KindArg::Weyl => ModuleKind::Weyl,
        KindArg::Schur => ModuleKind::Schur,
    };
    let c = weyl_schur_character(d, &lambda, kind)?;
    let value = json!({
        "basis": frame.basis(),
        "dual_label": frame.value(dual_label(d, &lambda).coweight()),
        "duality_holds": weyl_schur_duality_holds(d, &lambda)?,
        "kind": c.kind,
        "label": frame.value(c.label.coweight()),
        "table": mult_table_value(frame, &c.table)?,
    });
    let mut header = coord_header(frame, "nu");
    header.push("rank".into());
    Ok(Output { value, table: Some((header, table_rows(frame, &c.table))), suite_failed: false })
}

fn pi1(frame: &Frame) -> Result<Output> {
    Ok(Output::plain(json!({
        "center_of_dual": group_value(&center_of_dual(&frame.datum)),
        "pi1": group_value(&frame.datum.pi1()),
    })))
}

fn check(frame: &Frame, suite: Suite, bound: i64, seed: u64, count: usize) -> Result<Output> {
    let d = &frame.datum;
    let (name, checked, failures): (&str, usize, Vec<Value>) = match suite {
        Suite::Semismall => {
            let s = semismall_batch(d, bound)?;
            let f = s.failures.iter().map(|r| serde_json::to_value(r).expect("serializable")).collect();
            ("semismall", s.triples, f)
        }
        Suite::Tensor => {
            let pairs = random_labels::<2>(d, bound, count, seed)?;
            let reports = contract_batch(d, &pairs)?;
            let f = reports.iter().filter(|r| !r.passed()).map(|r| serde_json::to_value(r).expect("serializable"));
            ("tensor", reports.len(), f.collect())
        }
        Suite::Associativity => {
            let triples = random_labels::<3>(d, bound, count, seed)?;
            let reports = associativity_batch(d, &triples)?;
            let f = triples
                .iter()
                .zip(&reports)
                .filter(|(_, r)| !r.passed())
                .map(|(t, _)| json!({ "triple": t.iter().map(|l| frame.value(l.coweight())).collect::<Vec<_>>() }))
                .collect();
            ("associativity", reports.len(), f)
        }
        Suite::Oracle => {
            let mut failures = Vec::new();
            let labels = d.dominant_coweights(bound)?;
            for l in &labels {
                let lambda = OrbitLabel::new(d, l.clone())?;
                let k = KostantEngine::shared(d).table(d, &lambda)?;
                let f = freudenthal_table(d, &lambda)?;
                let support_ok = k.entries.keys().all(|nu| is_weight(d, &lambda, nu))
                    && weight_diagram(d, &lambda)?.len() == k.entries.len();
                if k != f || k.total()? != weyl_dimension(d, &lambda)? || !support_ok {
                    failures.push(json!({ "lambda": frame.value(l) }));
                }
            }
            ("oracle", labels.len(), failures)
        }
        Suite::Iota => {
            let form = d.invariant_form();
            let mut points = BTreeSet::new();
            for l in d.dominant_coweights(bound)? {
                points.extend(weight_diagram(d, &OrbitLabel::new(d, l)?)?);
            }
            let mut failures = Vec::new();
            // only pairs in one component can be comparable
            let classes: Vec<(&LatticeVector, ComponentLabel)> =
                points.iter().map(|v| Ok((v, component_of(d, v)?))).collect::<Result<_>>()?;
            let mut checked = 0;
            for (a, ca) in &classes {
                for (b, _) in classes.iter().filter(|(_, cb)| cb == ca) {
                    checked += 1;
                    if !iota_order_check(d, &form, a, b) {
                        failures.push(json!({ "eta": frame.value(b), "nu": frame.value(a) }));
                    }
                }
            }
            ("iota", checked, failures)
        }
        Suite::Duality => {
            let labels = d.dominant_coweights(bound)?;
            let mut failures = Vec::new();
            for l in &labels {
                let lambda = OrbitLabel::new(d, l.clone())?;
                let w = weyl_schur_character(d, &lambda, ModuleKind::Weyl)?;
                let s = weyl_schur_character(d, &lambda, ModuleKind::Schur)?;
                if w.table != s.table || !weyl_schur_duality_holds(d, &lambda)? {
                    failures.push(json!({ "lambda": frame.value(l) }));
                }
            }
            ("duality", labels.len(), failures)
        }
    };
    let passed = failures.is_empty();
    Ok(Output {
        value: json!({
            "basis": frame.basis(),
            "bound": bound,
            "checked": checked,
            "failures": failures,
            "passed": passed,
            "seed": seed,
            "suite": name,
        }),
        table: None,
        suite_failed: !passed,
    })
}

fn render(out: &Output, format: Format) -> Result<String> {
    match (format, &out.table) {
        (Format::Json, _) => Ok(format!("{}\n", serde_json::to_string_pretty(&out.value).expect("serializable"))),
        (Format::Csv, Some((header, rows))) => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in std::iter::once(header).chain(rows) {
                w.write_record(r).expect("writing to memory");
            }
            Ok(String::from_utf8(w.into_inner().expect("writing to memory")).expect("UTF-8 cells"))
        }
        (Format::Csv, None) => Err(Error::InvalidSpec("this command has no tabular output; use --format json".into())),
        (Format::Text, Some((header, rows))) => {
            let widths: Vec<usize> = (0..header.len())
                .map(|i| rows.iter().map(|r| r[i].len()).chain([header[i].len()]).max().unwrap_or(0))
                .collect();
            let line = |cells: &[String]| {
                cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ")
            };
            let mut s = line(header);
            s.push('\n');
            for r in rows {
                s.push_str(&line(r));
                s.push('\n');
            }
            Ok(s)
        }
        (Format::Text, None) => Ok(text_lines(&out.value, "")),
    }
}

fn text_lines(v: &Value, prefix: &str) -> String {
    match v {
        Value::Object(map) => {
            let mut s = String::new();
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                match x {
                    Value::Object(_) => s.push_str(&text_lines(x, &key)),
                    _ => s.push_str(&format!("{key}: {x}\n")),
                }
            }
            s
        }
        _ => format!("{prefix}: {v}\n"),
    }
}

fn error_json(kind: &str, message: &str) -> String {
    let v = json!({ "error": { "kind": kind, "message": message } });
    format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
}

/// Executes a parsed command, returning the exit status and the text for
/// stdout.
pub fn run(c: &Command) -> (i32, String) {
    let result = Frame::load(&c.datum).and_then(|frame| {
        let out = match &c.verb {
            Verb::Dual => dual(&frame),
            Verb::Poset { height_bound } => poset(&frame, *height_bound),
            Verb::Dims { lambda, nu } => dims(&frame, lambda, nu.as_deref()),
            Verb::Mult { lambda, nu } => mult(&frame, lambda, nu.as_deref()),
            Verb::Tensor { lambda, mu } => tensor(&frame, lambda, mu),
            Verb::Isogeny => isogeny(&frame),
            Verb::Weylmod { lambda, kind } => weylmod(&frame, lambda, *kind),
            Verb::Pi1 => pi1(&frame),
            Verb::Check { suite, bound, seed, count } => check(&frame, *suite, *bound, *seed, *count),
        }?;
        Ok((out.suite_failed, render(&out, c.format)?))
    });
    match result {
        Ok((false, text)) => (EXIT_OK, text),
        Ok((true, text)) => (EXIT_SUITE, text),
        Err(e) => (EXIT_DOMAIN, error_json(e.kind(), &e.to_string())),
    }
}

/// Parses arguments and runs. Help and version requests exit 0; any other
/// parse failure is reported as a domain error.
pub fn run_args<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Command::try_parse_from(args) {
        Ok(c) => run(&c),
        Err(e) => match e.kind() {
            clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => (EXIT_OK, e.to_string()),
            _ => (EXIT_DOMAIN, error_json("usage", e.to_string().trim())),
        },
    }
}
