//! Loading inputs. The kind of a JSON file is read off its keys.

use std::path::{Path, PathBuf};

use scaffolds::io::{parse_pluecker, parse_tmatrix, GraphFile};
use scaffolds::nc::{t_sum, tymoczko_web, NcTableau};
use scaffolds::pluecker::{parse_expansion, psi_project};
use scaffolds::web::{parse_web, Web};
use scaffolds::{LabeledGraph, PlueckerVector, TMatrix, Triple};

use crate::Failure;

#[derive(serde::Deserialize)]
struct TableauFile {
    n: usize,
    triples: Vec<[usize; 3]>,
}

pub enum Input {
    /// A scaffold with the vertex names given in its file, if any.
    Graph(LabeledGraph, Vec<String>),
    Web(Web),
    Pluecker(PlueckerVector),
    Matrix(TMatrix),
    Tableau(NcTableau),
}

/// Where an input comes from: a JSON file, or inline text with `--n`.
#[derive(clap::Args, Debug, Clone)]
pub struct Source {
    /// JSON file holding a graph, web, Pluecker vector, t-matrix or tableau
    pub file: Option<PathBuf>,
    /// Noncrossing tableau as comma-separated triples, e.g. 146,237,589
    #[arg(long, conflicts_with = "file")]
    pub tableau: Option<String>,
    /// Planar-basis expansion such as "-h146 + h246"
    #[arg(long, conflicts_with_all = ["file", "tableau"])]
    pub expansion: Option<String>,
    /// Ground set size for inline inputs
    #[arg(long)]
    pub n: Option<usize>,
}

fn parse_failure(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure::Parse(format!("{}: {e}", path.display()))
}

pub fn load_file(path: &Path) -> Result<Input, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| parse_failure(path, e))?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| parse_failure(path, e))?;
    let Some(obj) = value.as_object() else {
        return Err(parse_failure(path, "expected a JSON object at line 1 column 1"));
    };
    let has = |k: &str| obj.contains_key(k);
    let input = if has("boundary") {
        parse_web(&text).map(Input::Web)
    } else if has("rows") {
        parse_tmatrix(&text).map(Input::Matrix)
    } else if has("triples") {
        serde_json::from_str::<TableauFile>(&text)
            .map_err(|e| scaffolds::Error::Parse(e.to_string()))
            .and_then(|f| {
                let triples = f.triples.iter().map(|&[a, b, c]| Triple::new(a, b, c)).collect::<Result<Vec<_>, _>>()?;
                NcTableau::new(f.n, triples)
            })
            .map(Input::Tableau)
    } else if has("entries") || has("h") || has("e") {
        parse_pluecker(&text).map(Input::Pluecker)
    } else if has("edges") {
        serde_json::from_str::<GraphFile>(&text)
            .map_err(|e| scaffolds::Error::Parse(e.to_string()))
            .and_then(|f| Ok(Input::Graph(f.build()?, f.names)))
    } else {
        return Err(parse_failure(path, "cannot tell the input kind from its keys"));
    };
    input.map_err(|e| parse_failure(path, e))
}

impl Source {
    pub fn load(&self) -> Result<Input, Failure> {
        let need_n = || self.n.ok_or_else(|| Failure::Usage("inline inputs need --n".into()));
        if let Some(path) = &self.file {
            return load_file(path);
        }
        if let Some(t) = &self.tableau {
            return NcTableau::parse(need_n()?, t).map(Input::Tableau).map_err(|e| Failure::Parse(format!("--tableau: {e}")));
        }
        if let Some(x) = &self.expansion {
            let terms = parse_expansion(x).map_err(|e| Failure::Parse(format!("--expansion: {e}")))?;
            return PlueckerVector::from_h_terms(need_n()?, &terms)
                .map(Input::Pluecker)
                .map_err(|e| Failure::Parse(format!("--expansion: {e}")));
        }
        Err(Failure::Usage("no input given: pass a file, --tableau or --expansion".into()))
    }
}

impl Input {
    /// Name of vertex `v` for display.
    pub fn vertex_name(&self, v: usize) -> String {
        match self {
            Input::Graph(_, names) if v < names.len() => names[v].clone(),
            _ => v.to_string(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Input::Graph(..) => "graph",
            Input::Web(_) => "web",
            Input::Pluecker(_) => "pluecker",
            Input::Matrix(_) => "t-matrix",
            Input::Tableau(_) => "tableau",
        }
    }

    /// The tropical Pluecker vector the input stands for, when it has one.
    pub fn pluecker(&self) -> Result<PlueckerVector, Failure> {
        Ok(match self {
            Input::Graph(g, _) => g.pluecker(),
            Input::Web(w) => w.dual_graph()?.pluecker(),
            Input::Pluecker(p) => p.clone(),
            Input::Tableau(t) => tymoczko_web(t)?.dual_graph()?.pluecker(),
            Input::Matrix(_) => return Err(Failure::Usage("a t-matrix does not determine a Pluecker vector".into())),
        })
    }

    pub fn psi(&self) -> Result<TMatrix, Failure> {
        match self {
            Input::Matrix(m) => Ok(m.clone()),
            Input::Tableau(t) => Ok(t_sum(t)),
            _ => Ok(psi_project(&self.pluecker()?)?),
        }
    }

    pub fn graph(&self) -> Result<LabeledGraph, Failure> {
        match self {
            Input::Graph(g, _) => Ok(g.clone()),
            Input::Web(w) => Ok(w.dual_graph()?),
            Input::Tableau(t) => Ok(tymoczko_web(t)?.dual_graph()?),
            Input::Pluecker(p) => Ok(scaffolds::reconstruct::normal_model(p)?),
            Input::Matrix(_) => Err(Failure::Usage("a t-matrix does not determine a graph".into())),
        }
    }
}
