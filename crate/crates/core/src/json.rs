//! Wire formats for complexes, families, chain maps, and constrained
//! bundles.
//!
//! Output is canonical: vertex lists ascend, each simplex's vertices
//! ascend, and simplex lists sort lexicographically, so identical
//! objects serialize byte-identically. Input is liberal about ordering
//! but strict about shape — unknown fields and malformed keys are
//! rejected so that typos surface as input errors rather than silently
//! changed meaning.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::chain_map::SimplicialChainMap;
use crate::complex::SimplicialComplex;
use crate::construction::{ConstrainedChainMap, ConstraintMap};
use crate::error::{Error, Result};
use crate::helly::SetFamily;
use crate::homology::Chain;
use crate::simplex::Simplex;

/// `{"vertices":[...], "maximal_simplices":[[...], ...]}`.
///
/// `vertices` may be omitted on input, in which case the vertex set is
/// the union of the listed simplices; when present it must cover them,
/// and extra entries become isolated vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexWire {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<usize>>,
    pub maximal_simplices: Vec<Vec<usize>>,
}

impl ComplexWire {
    pub fn from_complex(k: &SimplicialComplex) -> Self {
        ComplexWire {
            vertices: Some(k.vertex_set().iter().copied().collect()),
            maximal_simplices: k
                .maximal_simplices()
                .iter()
                .map(|s| s.vertices().to_vec())
                .collect(),
        }
    }

    pub fn into_complex(self) -> Result<SimplicialComplex> {
        let mut simplices = Vec::new();
        for vs in &self.maximal_simplices {
            if vs.is_empty() {
                return Err(Error::Input(
                    "maximal_simplices must not contain the empty list".into(),
                ));
            }
            simplices.push(Simplex::new(vs.iter().copied())?);
        }
        if let Some(vertices) = &self.vertices {
            let listed: std::collections::BTreeSet<usize> = vertices.iter().copied().collect();
            if listed.len() != vertices.len() {
                return Err(Error::Input("vertices list has duplicates".into()));
            }
            for s in &simplices {
                if let Some(&v) = s.vertices().iter().find(|v| !listed.contains(v)) {
                    return Err(Error::Input(format!(
                        "simplex {s} uses vertex {v} missing from the vertices list"
                    )));
                }
            }
            for &v in &listed {
                simplices.push(Simplex::new([v])?);
            }
        }
        Ok(SimplicialComplex::from_simplices(simplices))
    }
}

/// `{"ambient": <complex>, "members": [<complex>, ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyWire {
    pub ambient: ComplexWire,
    pub members: Vec<ComplexWire>,
}

impl FamilyWire {
    pub fn from_family(f: &SetFamily) -> Self {
        FamilyWire {
            ambient: ComplexWire::from_complex(f.ambient()),
            members: f.members().iter().map(ComplexWire::from_complex).collect(),
        }
    }

    pub fn into_family(self) -> Result<SetFamily> {
        let ambient = self.ambient.into_complex()?;
        let members = self
            .members
            .into_iter()
            .map(ComplexWire::into_complex)
            .collect::<Result<Vec<_>>>()?;
        SetFamily::new(ambient, members)
    }
}

/// `{"source": <complex>, "target": <complex>, "assignment": {"0,1": [[3,4],[5,6]], ...}}`
/// — each source simplex, keyed by its comma-joined vertices, maps to
/// the list of target simplices carrying its image chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainMapWire {
    pub source: ComplexWire,
    pub target: ComplexWire,
    pub assignment: BTreeMap<String, Vec<Vec<usize>>>,
}

fn simplex_key(s: &Simplex) -> String {
    s.vertices()
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_simplex_key(key: &str) -> Result<Simplex> {
    let vs = key
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| Error::Input(format!("malformed simplex key \"{key}\"")))
        })
        .collect::<Result<Vec<usize>>>()?;
    Simplex::new(vs)
}

impl ChainMapWire {
    pub fn from_chain_map(m: &SimplicialChainMap) -> Result<Self> {
        let mut assignment = BTreeMap::new();
        for s in m.source().all_simplices() {
            if s.is_empty() {
                continue;
            }
            let image = m.image_of(s)?;
            let cells: Vec<Vec<usize>> = image
                .support()
                .iter()
                .map(|t| t.vertices().to_vec())
                .collect();
            assignment.insert(simplex_key(s), cells);
        }
        Ok(ChainMapWire {
            source: ComplexWire::from_complex(m.source()),
            target: ComplexWire::from_complex(m.target()),
            assignment,
        })
    }

    pub fn into_chain_map(self) -> Result<SimplicialChainMap> {
        let source = self.source.into_complex()?;
        let target = self.target.into_complex()?;
        let mut assignment = BTreeMap::new();
        for (key, cells) in self.assignment {
            let s = parse_simplex_key(&key)?;
            let chain = Chain::new(
                s.dim(),
                cells
                    .iter()
                    .map(|vs| Simplex::new(vs.iter().copied()))
                    .collect::<Result<Vec<_>>>()?,
            )?;
            assignment.insert(s, chain);
        }
        SimplicialChainMap::new(source, target, assignment)
    }
}

/// `{"complex": ..., "family": ..., "gamma": <chain map>, "phi": {"0,1": [0,2], ...}}`
/// — a constrained chain map with its constraint table keyed like the
/// chain-map assignment; values are member indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleWire {
    pub complex: ComplexWire,
    pub family: FamilyWire,
    pub gamma: ChainMapWire,
    pub phi: BTreeMap<String, Vec<usize>>,
}

impl BundleWire {
    pub fn from_bundle(b: &ConstrainedChainMap) -> Result<Self> {
        let mut phi = BTreeMap::new();
        for s in b.phi().simplices() {
            if s.is_empty() {
                continue;
            }
            let indices = b
                .phi()
                .get(s)
                .expect("iterating the table's own keys")
                .iter()
                .copied()
                .collect();
            phi.insert(simplex_key(s), indices);
        }
        Ok(BundleWire {
            complex: ComplexWire::from_complex(b.complex()),
            family: FamilyWire::from_family(b.family()),
            gamma: ChainMapWire::from_chain_map(b.gamma())?,
            phi,
        })
    }

    pub fn into_bundle(self) -> Result<ConstrainedChainMap> {
        let complex = self.complex.into_complex()?;
        let family = self.family.into_family()?;
        let gamma = self.gamma.into_chain_map()?;
        let mut phi = BTreeMap::new();
        for (key, indices) in self.phi {
            phi.insert(parse_simplex_key(&key)?, indices.into_iter().collect());
        }
        ConstrainedChainMap::new(complex, family, gamma, ConstraintMap::new(phi)?)
    }
}

/// Parse a complex from JSON text.
pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    let wire: ComplexWire =
        serde_json::from_str(text).map_err(|e| Error::Input(format!("complex JSON: {e}")))?;
    wire.into_complex()
}

/// Parse a family from JSON text.
pub fn parse_family(text: &str) -> Result<SetFamily> {
    let wire: FamilyWire =
        serde_json::from_str(text).map_err(|e| Error::Input(format!("family JSON: {e}")))?;
    wire.into_family()
}

/// Parse a constrained bundle from JSON text.
pub fn parse_bundle(text: &str) -> Result<ConstrainedChainMap> {
    let wire: BundleWire =
        serde_json::from_str(text).map_err(|e| Error::Input(format!("bundle JSON: {e}")))?;
    wire.into_bundle()
}
