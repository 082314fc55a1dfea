mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use scaffolds::cat0::validate_cat0;
use scaffolds::io::{pluecker_to_json, tmatrix_to_json, GraphFile};
use scaffolds::matroids::{
    facets_of_mv, grassmann_necklace, is_matroid, is_positroid, linear_space_member, loops, matroid_of_min,
    subdivision_cells,
};
use scaffolds::nc::{nc_decompose, nc_to_ssyt, tymoczko_web};
use scaffolds::pluecker::{canonical_form, check_positive, check_tropical, format_expansion, support};
use scaffolds::reconstruct::{reconstruct, roundtrip_all, verify_ray_tables};
use scaffolds::render::{graph_to_dot, graph_to_svg, web_to_dot, web_to_svg};
use scaffolds::web::{Web, WebFile};
use scaffolds::{LabeledGraph, Triple, Q};

use input::{Input, Source};

/// How a command ends when it does not succeed.
#[derive(Debug)]
pub enum Failure {
    /// Bad command line or unusable input kind.
    Usage(String),
    /// Malformed input file.
    Parse(String),
    /// The input was read but a check failed.
    Invalid(String),
}

impl From<scaffolds::Error> for Failure {
    fn from(e: scaffolds::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 1,
            Failure::Usage(_) | Failure::Parse(_) => 2,
        }
    }
}

#[derive(Parser)]
#[command(name = "scaffolds", version, about = "Scaffolds, webs and noncrossing tableaux for tropical Gr(3, n)")]
struct Cli {
    /// Machine-readable JSON on stdout
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(clap::Args, Clone)]
struct Pictures {
    /// Write an SVG picture here
    #[arg(long, value_name = "PATH")]
    render: Option<PathBuf>,
    /// Write a Graphviz DOT file here
    #[arg(long, value_name = "PATH")]
    dot: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a graph (CAT(0) conditions, labeling flags) or a web (non-elliptic, normal, ...)
    Validate {
        #[command(flatten)]
        src: Source,
    },
    /// Tropical Pluecker vector of a scaffold, or one Fermat-Le sum with --triple
    Plucker {
        #[command(flatten)]
        src: Source,
        #[arg(long, value_name = "a,b,c")]
        triple: Option<String>,
        /// Use the integral modified vector
        #[arg(long)]
        modified: bool,
    },
    /// Planar-basis expansion modulo lineality
    Expand {
        #[command(flatten)]
        src: Source,
    },
    /// The 2 x (n-3) matrix Psi
    Psi {
        #[command(flatten)]
        src: Source,
    },
    /// Unique cyclic-less noncrossing tableau of a t-matrix or a positive vector
    Decompose {
        #[command(flatten)]
        src: Source,
    },
    /// Normal model of a positive tropical Pluecker vector
    Reconstruct {
        /// Pluecker vector file
        #[arg(long, value_name = "FILE", conflicts_with = "expansion")]
        pi: Option<PathBuf>,
        /// Planar-basis expansion such as "-h146 + h246"
        #[arg(long)]
        expansion: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        /// Write the model graph as JSON here
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        #[command(flatten)]
        pictures: Pictures,
    },
    /// Matroid M_v of a vertex, all cells of a scaffold, or the minimizing matroid of a vector
    Matroid {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        vertex: Option<usize>,
    },
    /// Lift of every vertex into Z^n modulo the all-ones vector
    Membrane {
        #[command(flatten)]
        src: Source,
    },
    /// Rebuild and check the tabulated rays for n = 7 or 8
    VerifyRays {
        #[arg(long)]
        n: usize,
    },
    /// Exhaustive tableau round trips
    Roundtrip {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        weight: usize,
    },
    /// Draw a graph, web, tableau (as its web) or vector (as its normal model)
    Render {
        #[command(flatten)]
        src: Source,
        #[command(flatten)]
        pictures: Pictures,
        /// Overlay the strands of a web
        #[arg(long)]
        strands: bool,
    },
}

/// Output of a command: JSON plus a human-readable rendering.
struct Report {
    json: Value,
    text: String,
    ok: bool,
}

impl Report {
    fn new(json: Value, text: impl Into<String>) -> Self {
        Report { json, text: text.into(), ok: true }
    }

    fn failing(mut self, ok: bool) -> Self {
        self.ok = ok;
        self
    }
}

fn q_str(x: &Q) -> String {
    scaffolds::subsets::q_to_string(x)
}

fn parse_triple(s: &str) -> Result<Triple, Failure> {
    Triple::parse(s).map_err(|e| Failure::Usage(format!("--triple: {e}")))
}

fn write_file(path: &PathBuf, body: &str) -> Result<(), Failure> {
    std::fs::write(path, body).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn expansion_json(u: &std::collections::BTreeMap<Triple, Q>) -> Value {
    support(u).iter().map(|(t, v)| (t.to_string(), Value::String(q_str(v)))).collect::<serde_json::Map<_, _>>().into()
}

fn validate(input: &Input) -> Result<Report, Failure> {
    match input {
        Input::Graph(g, _) => {
            let rep = validate_cat0(g.map());
            let cat0 = rep.is_valid();
            let mut j = json!({ "kind": "graph", "cat0": cat0, "violations": rep.violations });
            let mut text = format!("cat0: {cat0}\n");
            for v in &rep.violations {
                text.push_str(&format!("  violation: {}\n", serde_json::to_string(v).unwrap_or_default()));
            }
            if cat0 {
                let c = g.classify()?;
                let s = g.scaffold_check()?;
                text.push_str(&format!(
                    "simple: {}\nccw_labeled: {}\nnormal: {}\ncyclic_less: {}\nscaffold: weak {} strong {}\n",
                    c.simple, c.ccw_labeled, c.normal, c.cyclic_less, s.weak, s.strong
                ));
                let obj = j.as_object_mut().expect("object");
                for (k, v) in [("simple", c.simple), ("ccw_labeled", c.ccw_labeled), ("normal", c.normal), ("cyclic_less", c.cyclic_less)] {
                    obj.insert(k.into(), v.into());
                }
                obj.insert("classification".into(), serde_json::to_value(&c).expect("serializable"));
                obj.insert("scaffold".into(), serde_json::to_value(&s).expect("serializable"));
            }
            Ok(Report::new(j, text).failing(cat0))
        }
        Input::Web(w) => {
            let f = w.flags()?;
            let text = format!(
                "non_elliptic: {}\nstandard: {}\nblack_boundary: {}\nnormal: {}\ncyclic_less: {}\n",
                f.non_elliptic, f.standard, f.black_boundary, f.normal, f.cyclic_less
            );
            let mut j = serde_json::to_value(&f).expect("serializable");
            j.as_object_mut().expect("object").insert("kind".into(), "web".into());
            Ok(Report::new(j, text).failing(f.non_elliptic))
        }
        Input::Pluecker(p) => {
            let tropical = check_tropical(p)?;
            let positive = check_positive(p)?;
            let j = json!({ "kind": "pluecker", "tropical": tropical, "positive": positive });
            Ok(Report::new(j, format!("tropical: {tropical}\npositive: {positive}\n")).failing(tropical))
        }
        Input::Tableau(t) => {
            let j = json!({ "kind": "tableau", "noncrossing": true, "cyclic_less": t.is_cyclic_less(), "standard": t.is_standard() });
            Ok(Report::new(j, format!("noncrossing: true\ncyclic_less: {}\n", t.is_cyclic_less())))
        }
        Input::Matrix(m) => {
            let nonneg = m.is_nonnegative();
            Ok(Report::new(json!({ "kind": "t-matrix", "nonnegative": nonneg }), format!("nonnegative: {nonneg}\n")).failing(nonneg))
        }
    }
}

fn plucker(input: &Input, triple: Option<&str>, modified: bool) -> Result<Report, Failure> {
    if let Some(t) = triple {
        let Input::Graph(g, _) = input else {
            return Err(Failure::Usage("--triple needs a graph".into()));
        };
        let t = parse_triple(t)?;
        t.check_within(g.n())?;
        let (sum, minimizers) = g.fermat_le(&t.get());
        let minimizers: Vec<String> = minimizers.into_iter().map(|v| input.vertex_name(v)).collect();
        let pi = g.pluecker().at(t);
        let j = json!({ "triple": t.get(), "sum": sum, "minimizers": minimizers, "pi": q_str(&pi) });
        return Ok(Report::new(j, format!("sum: {sum}\nminimizers: {minimizers:?}\npi_{t}: {}\n", q_str(&pi))));
    }
    let pi = match (input, modified) {
        (Input::Graph(g, _), true) => g.modified_pluecker()?,
        (_, true) => input.graph()?.modified_pluecker()?,
        _ => input.pluecker()?,
    };
    let mut text = String::new();
    for (s, v) in pi.iter() {
        text.push_str(&format!("{:?}\t{}\n", s, q_str(&v)));
    }
    Ok(Report::new(pluecker_to_json(&pi), text))
}

fn expand(input: &Input) -> Result<Report, Failure> {
    let u = match input {
        Input::Web(w) => w.pb_expansion()?.into_iter().map(|(t, c)| (t, Q::from_integer(c))).collect(),
        _ => canonical_form(&input.pluecker()?),
    };
    let s = format_expansion(&u);
    Ok(Report::new(json!({ "expansion": s, "terms": expansion_json(&u) }), format!("{s}\n")))
}

fn matrix_text(m: &scaffolds::TMatrix) -> String {
    m.rows.iter().map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>().join(" ") + "\n").collect()
}

fn decompose(input: &Input) -> Result<Report, Failure> {
    let m = input.psi()?;
    let t = nc_decompose(&m)?;
    let ssyt = nc_to_ssyt(&t);
    let j = json!({ "n": t.n(), "tableau": t.to_string(), "triples": t.triples().iter().map(Triple::get).collect::<Vec<_>>(), "ssyt": ssyt });
    Ok(Report::new(j, format!("{t}\n")))
}

fn emit_graph_pictures(g: &LabeledGraph, pics: &Pictures) -> Result<(), Failure> {
    if let Some(p) = &pics.render {
        write_file(p, &graph_to_svg(g))?;
    }
    if let Some(p) = &pics.dot {
        write_file(p, &graph_to_dot(g))?;
    }
    Ok(())
}

fn emit_web_pictures(w: &Web, pics: &Pictures, strands: bool) -> Result<(), Failure> {
    if let Some(p) = &pics.render {
        write_file(p, &web_to_svg(w, strands)?)?;
    }
    if let Some(p) = &pics.dot {
        write_file(p, &web_to_dot(w))?;
    }
    Ok(())
}

fn graph_json(g: &LabeledGraph) -> Value {
    serde_json::to_value(GraphFile::from_graph(g)).expect("serializable")
}

fn run_reconstruct(input: &Input, out: Option<&PathBuf>, pics: &Pictures) -> Result<Report, Failure> {
    let pi = input.pluecker()?;
    let r = reconstruct(&pi)?;
    let g = &r.graph;
    emit_graph_pictures(g, pics)?;
    let gj = graph_json(g);
    if let Some(p) = out {
        write_file(p, &serde_json::to_string_pretty(&gj).expect("serializable"))?;
    }
    let expansion = format_expansion(&canonical_form(&pi));
    let j = json!({
        "expansion": expansion,
        "tableau": r.tableau.to_string(),
        "web": WebFile::from_web(&r.web),
        "graph": gj,
    });
    let text = format!(
        "expansion: {expansion}\ntableau: {}\nmodel: {} vertices, {} edges\n",
        r.tableau,
        g.num_vertices(),
        g.map().num_edges()
    );
    Ok(Report::new(j, text))
}

fn bases_json(b: &std::collections::BTreeSet<Vec<usize>>) -> Vec<Vec<usize>> {
    b.iter().cloned().collect()
}

fn matroid(input: &Input, vertex: Option<usize>) -> Result<Report, Failure> {
    let (bases, n, facets) = match (input, vertex) {
        (Input::Pluecker(p), None) => (matroid_of_min(p), p.n(), None),
        (_, Some(v)) => {
            let g = input.graph()?;
            if v >= g.num_vertices() {
                return Err(Failure::Usage(format!("vertex {v} out of range")));
            }
            let rep = facets_of_mv(&g, v)?;
            (g.matroid_mv(v), g.n(), Some(rep))
        }
        (_, None) => {
            let g = input.graph()?;
            let cells = subdivision_cells(&g);
            let mut text = String::new();
            for c in &cells {
                text.push_str(&format!("vertices {:?}: {} bases, connected {}\n", c.vertices, c.bases.len(), c.connected));
            }
            return Ok(Report::new(json!({ "cells": cells }), text));
        }
    };
    let is_m = is_matroid(&bases)?;
    let necklace = if is_m && !bases.is_empty() { grassmann_necklace(&bases, n)? } else { Vec::new() };
    let positroid = is_m && !bases.is_empty() && is_positroid(&bases, n)?;
    let lps = loops(&bases, n);
    let mut j = json!({
        "bases": bases_json(&bases),
        "necklace": necklace,
        "matroid": is_m,
        "positroid": positroid,
        "loops": lps,
    });
    let mut text = format!("{} bases, matroid {is_m}, positroid {positroid}, loops {lps:?}\nnecklace: {necklace:?}\n", bases.len());
    if let Some(rep) = facets {
        for f in &rep.facets {
            text.push_str(&format!("  {f}\n"));
        }
        let obj = j.as_object_mut().expect("object");
        obj.insert("connected".into(), rep.connected.into());
        obj.insert("facets".into(), serde_json::to_value(&rep.facets).expect("serializable"));
    }
    Ok(Report::new(j, text))
}

fn membrane(input: &Input) -> Result<Report, Failure> {
    let g = input.graph()?;
    let bar = g.modified_pluecker()?;
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut all_in = true;
    for v in 0..g.num_vertices() {
        let mu = g.mu(v)?;
        let neg: Vec<Q> = mu.iter().map(|&x| Q::from_integer(-x)).collect();
        let member = linear_space_member(&bar, &neg)?;
        all_in &= member;
        text.push_str(&format!("{}\t{mu:?}\t{member}\n", input.vertex_name(v)));
        rows.push(json!({ "vertex": v, "name": input.vertex_name(v), "mu": mu, "in_linear_space": member }));
    }
    Ok(Report::new(json!({ "vertices": rows, "all_in_linear_space": all_in }), text))
}

fn verify_rays(n: usize) -> Result<Report, Failure> {
    if !(n == 7 || n == 8) {
        return Err(Failure::Usage("verify-rays supports --n 7 and --n 8".into()));
    }
    let rep = verify_ray_tables(n)?;
    let mut text = format!("n = {n}\n");
    for (w, c) in &rep.counts {
        text.push_str(&format!("  weight {w}: {c} rays\n"));
    }
    for f in &rep.failures {
        text.push_str(&format!("  FAIL {f}\n"));
    }
    let ok = rep.ok();
    Ok(Report::new(serde_json::to_value(&rep).expect("serializable"), text).failing(ok))
}

fn roundtrip(n: usize, weight: usize) -> Result<Report, Failure> {
    let rep = roundtrip_all(n, weight);
    let mut text = format!("n = {n}, weight <= {weight}: {} tableaux\n", rep.counts.iter().sum::<usize>());
    for f in rep.failures.iter().take(20) {
        text.push_str(&format!("  FAIL {f}\n"));
    }
    let ok = rep.ok();
    Ok(Report::new(serde_json::to_value(&rep).expect("serializable"), text).failing(ok))
}

fn render(input: &Input, pics: &Pictures, strands: bool) -> Result<Report, Failure> {
    if pics.render.is_none() && pics.dot.is_none() {
        return Err(Failure::Usage("render needs --render PATH or --dot PATH".into()));
    }
    match input {
        Input::Web(w) => emit_web_pictures(w, pics, strands)?,
        Input::Tableau(t) => emit_web_pictures(&tymoczko_web(t)?, pics, strands)?,
        _ => emit_graph_pictures(&input.graph()?, pics)?,
    }
    Ok(Report::new(json!({ "rendered": input.kind() }), format!("rendered {}\n", input.kind())))
}

fn dispatch(cmd: &Cmd) -> Result<Report, Failure> {
    match cmd {
        Cmd::Validate { src } => validate(&src.load()?),
        Cmd::Plucker { src, triple, modified } => plucker(&src.load()?, triple.as_deref(), *modified),
        Cmd::Expand { src } => expand(&src.load()?),
        Cmd::Psi { src } => {
            let m = src.load()?.psi()?;
            Ok(Report::new(tmatrix_to_json(&m), matrix_text(&m)))
        }
        Cmd::Decompose { src } => decompose(&src.load()?),
        Cmd::Reconstruct { pi, expansion, n, out, pictures } => {
            let src = Source { file: pi.clone(), tableau: None, expansion: expansion.clone(), n: *n };
            let input = src.load()?;
            if !matches!(input, Input::Pluecker(_)) {
                return Err(Failure::Usage(format!("reconstruct expects a Pluecker vector, got a {}", input.kind())));
            }
            run_reconstruct(&input, out.as_ref(), pictures)
        }
        Cmd::Matroid { src, vertex } => matroid(&src.load()?, *vertex),
        Cmd::Membrane { src } => membrane(&src.load()?),
        Cmd::VerifyRays { n } => verify_rays(*n),
        Cmd::Roundtrip { n, weight } => roundtrip(*n, *weight),
        Cmd::Render { src, pictures, strands } => render(&src.load()?, pictures, *strands),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli.cmd) {
        Ok(rep) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&rep.json).expect("serializable"));
            } else {
                print!("{}", rep.text);
            }
            ExitCode::from(if rep.ok { 0 } else { 1 })
        }
        Err(f) => {
            let msg = match &f {
                Failure::Usage(m) => format!("usage error: {m}"),
                Failure::Parse(m) => format!("parse error: {m}"),
                Failure::Invalid(m) => format!("error: {m}"),
            };
            if cli.json {
                println!("{}", json!({ "error": msg }));
            }
            eprintln!("{msg}");
            ExitCode::from(f.code())
        }
    }
}
