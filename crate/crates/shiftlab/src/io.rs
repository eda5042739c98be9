//! File formats: graphs, shift descriptions, block distributions.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use shiftlab_core::bfree::{BSet, GeneratorStream};
use shiftlab_core::measures::BlockDistribution;
use shiftlab_core::sgap::SGapSet;
use shiftlab_core::sofic::{Edge, LabeledGraph, SftSpec};
use shiftlab_core::{Alphabet, PeriodicPoint, ShiftSpec};

use crate::error::CliError;

/// `{"alphabet": "01", "vertices": 2, "edges": [[0, 1, "1"], ...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub alphabet: String,
    pub vertices: usize,
    pub edges: Vec<(usize, usize, String)>,
}

impl GraphFile {
    pub fn from_graph(g: &LabeledGraph) -> Self {
        let a = g.alphabet();
        GraphFile {
            alphabet: a.symbols().iter().collect(),
            vertices: g.vertex_count(),
            edges: g
                .edges()
                .iter()
                .map(|e| (e.src, e.dst, a.render(&[e.label])))
                .collect(),
        }
    }

    pub fn to_graph(&self) -> Result<LabeledGraph, CliError> {
        let alphabet = Alphabet::new(self.alphabet.chars())?;
        let mut edges = Vec::with_capacity(self.edges.len());
        for (src, dst, label) in &self.edges {
            let mut chars = label.chars();
            let (Some(c), None) = (chars.next(), chars.next()) else {
                return Err(CliError::Validation(format!(
                    "edge label {label:?} is not a single symbol"
                )));
            };
            edges.push(Edge {
                src: *src,
                dst: *dst,
                label: alphabet.index_of(c)?,
            });
        }
        Ok(LabeledGraph::new(alphabet, self.vertices, edges)?)
    }
}

pub fn graph_to_json(g: &LabeledGraph) -> String {
    serde_json::to_string_pretty(&GraphFile::from_graph(g)).expect("graph serializes")
}

pub fn graph_from_json(text: &str) -> Result<LabeledGraph, CliError> {
    let file: GraphFile =
        serde_json::from_str(text).map_err(|e| CliError::Validation(format!("graph file: {e}")))?;
    file.to_graph()
}

pub fn read_graph(path: &Path) -> Result<LabeledGraph, CliError> {
    graph_from_json(&read(path)?)
}

/// On-disk shift description, tagged by `kind`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SpecFile {
    Sft {
        alphabet: String,
        forbidden: Vec<String>,
    },
    /// inline graph or a path relative to the spec file
    Graph {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        graph: Option<GraphFile>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        file: Option<PathBuf>,
    },
    /// explicit generators, or a stream id cut at `up_to`
    Bfree {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generators: Option<Vec<u64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        stream: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        up_to: Option<u64>,
    },
    Sgap {
        gaps: Vec<u64>,
    },
    HereditaryOrbit {
        point: String,
    },
}

impl SpecFile {
    pub fn from_spec(spec: &ShiftSpec) -> Self {
        match spec {
            ShiftSpec::Sft(s) => SpecFile::Sft {
                alphabet: s.alphabet().symbols().iter().collect(),
                forbidden: s.forbidden().map(|w| s.alphabet().render(w)).collect(),
            },
            ShiftSpec::Graph(g) => SpecFile::Graph {
                graph: Some(GraphFile::from_graph(g)),
                file: None,
            },
            ShiftSpec::BFree(b) => SpecFile::Bfree {
                generators: Some(b.generators().to_vec()),
                stream: None,
                up_to: None,
            },
            ShiftSpec::SGap(s) => SpecFile::Sgap {
                gaps: s.gaps().to_vec(),
            },
            ShiftSpec::HereditaryOrbit(x) => SpecFile::HereditaryOrbit {
                point: x.render(&Alphabet::binary()),
            },
        }
    }

    /// Resolves file references against `base`.
    pub fn to_spec(&self, base: &Path) -> Result<ShiftSpec, CliError> {
        Ok(match self {
            SpecFile::Sft {
                alphabet,
                forbidden,
            } => {
                let a = Alphabet::new(alphabet.chars())?;
                let words = forbidden
                    .iter()
                    .map(|w| a.parse_word(w))
                    .collect::<Result<Vec<_>, _>>()?;
                ShiftSpec::Sft(SftSpec::new(a, words)?)
            }
            SpecFile::Graph {
                graph: Some(g),
                file: None,
            } => ShiftSpec::Graph(g.to_graph()?),
            SpecFile::Graph {
                graph: None,
                file: Some(f),
            } => ShiftSpec::Graph(read_graph(&base.join(f))?),
            SpecFile::Graph { .. } => {
                return Err(CliError::Validation(
                    "graph spec needs exactly one of `graph` and `file`".into(),
                ))
            }
            SpecFile::Bfree {
                generators: Some(g),
                stream: None,
                up_to: None,
            } => ShiftSpec::BFree(BSet::new(g.clone())?),
            SpecFile::Bfree {
                generators: None,
                stream: Some(id),
                up_to: Some(n),
            } => ShiftSpec::BFree(BSet::new(parse_stream(id)?.up_to(*n)?)?),
            SpecFile::Bfree { .. } => {
                return Err(CliError::Validation(
                    "bfree spec needs either `generators` or both `stream` and `up_to`".into(),
                ))
            }
            SpecFile::Sgap { gaps } => ShiftSpec::SGap(SGapSet::new(gaps.clone())?),
            SpecFile::HereditaryOrbit { point } => {
                let x = PeriodicPoint::parse(&Alphabet::binary(), point)?;
                if !x.is_purely_periodic() {
                    return Err(shiftlab_core::Error::NonemptyPreperiod.into());
                }
                ShiftSpec::HereditaryOrbit(x)
            }
        })
    }
}

pub fn spec_from_json(text: &str, base: &Path) -> Result<ShiftSpec, CliError> {
    let file: SpecFile =
        serde_json::from_str(text).map_err(|e| CliError::Validation(format!("spec file: {e}")))?;
    file.to_spec(base)
}

pub fn spec_to_json(spec: &ShiftSpec) -> String {
    serde_json::to_string_pretty(&SpecFile::from_spec(spec)).expect("spec serializes")
}

pub fn read_spec(path: &Path) -> Result<ShiftSpec, CliError> {
    let base = path.parent().unwrap_or(Path::new("."));
    spec_from_json(&read(path)?, base)
}

/// Generator stream ids: `squares-of-primes`, `progression:START:STEP`, a
/// comma-separated list, or several of these joined by `+`.
pub fn parse_stream(id: &str) -> Result<GeneratorStream, CliError> {
    let parts: Vec<&str> = id.split('+').map(str::trim).collect();
    if parts.len() > 1 {
        return Ok(GeneratorStream::Union(
            parts
                .iter()
                .map(|p| parse_stream(p))
                .collect::<Result<_, _>>()?,
        ));
    }
    let id = parts[0];
    if id == "squares-of-primes" {
        return Ok(GeneratorStream::SquaresOfPrimes);
    }
    if let Some(rest) = id.strip_prefix("progression:") {
        let (a, d) = rest.split_once(':').ok_or_else(|| {
            CliError::Validation(format!("expected progression:START:STEP, got {id:?}"))
        })?;
        return Ok(GeneratorStream::Progression {
            start: parse_u64(a)?,
            step: parse_u64(d)?,
        });
    }
    Ok(GeneratorStream::Explicit(parse_list(id)?))
}

pub fn parse_list(text: &str) -> Result<Vec<u64>, CliError> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(parse_u64)
        .collect()
}

/// Accepts plain integers and exact decimal exponents such as `1e6`.
pub fn parse_u64(text: &str) -> Result<u64, CliError> {
    let t = text.trim();
    if let Ok(v) = t.parse::<u64>() {
        return Ok(v);
    }
    if let Some((m, e)) = t.split_once(['e', 'E']) {
        if let (Ok(m), Ok(e)) = (m.parse::<u64>(), e.parse::<u32>()) {
            if let Some(v) = 10u64.checked_pow(e).and_then(|p| p.checked_mul(m)) {
                return Ok(v);
            }
        }
    }
    Err(CliError::Validation(format!(
        "expected a nonnegative integer, got {t:?}"
    )))
}

/// `a..b` (inclusive) or a comma-separated list.
pub fn parse_range(text: &str) -> Result<Vec<usize>, CliError> {
    if let Some((a, b)) = text.split_once("..") {
        let (a, b) = (
            parse_u64(a)? as usize,
            parse_u64(b.trim_start_matches('='))? as usize,
        );
        if a > b {
            return Err(CliError::Validation(format!("empty range {text:?}")));
        }
        return Ok((a..=b).collect());
    }
    Ok(parse_list(text)?.into_iter().map(|v| v as usize).collect())
}

/// JSON object from words (sorted) to probabilities.
pub fn blocks_to_json(d: &BlockDistribution, alphabet: &Alphabet) -> serde_json::Value {
    let map: BTreeMap<String, f64> = d
        .probs()
        .iter()
        .map(|(w, &p)| (alphabet.render(w), p))
        .collect();
    serde_json::to_value(map).expect("map serializes")
}

pub fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}
