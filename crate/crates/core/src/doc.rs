//! JSON documents for complexes, modules, maps, and crossed modules.
//!
//! Scalars travel as strings in the same grammar the fields parse, so
//! documents stay exact over both coefficient fields. Maps may carry
//! their endpoints inline or point at sibling files.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::chain::ChainComplex;
use crate::crossed::CrossedModule;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::simplicial::{SimplicialMap, SimplicialModule};

/// A dense matrix with entries listed row by row.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<String>,
}

impl MatrixDoc {
    pub fn from_matrix(m: &Matrix) -> MatrixDoc {
        let entries = (0..m.rows())
            .flat_map(|r| (0..m.cols()).map(move |c| m.get(r, c).to_string()))
            .collect();
        MatrixDoc {
            rows: m.rows(),
            cols: m.cols(),
            entries,
        }
    }

    pub fn to_matrix(&self, field: Field) -> Result<Matrix> {
        if self.entries.len() != self.rows * self.cols {
            return Err(Error::Document(format!(
                "a {}x{} matrix needs {} entries, found {}",
                self.rows,
                self.cols,
                self.rows * self.cols,
                self.entries.len()
            )));
        }
        let mut m = Matrix::zeros(field, self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, field.parse_scalar(&self.entries[r * self.cols + c])?);
            }
        }
        Ok(m)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ChainDoc {
    pub field: String,
    pub max_degree: usize,
    pub dims: Vec<usize>,
    pub differentials: Vec<MatrixDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl ChainDoc {
    pub fn from_complex(c: &ChainComplex, name: Option<&str>) -> ChainDoc {
        ChainDoc {
            field: c.field().descriptor(),
            max_degree: c.max_degree(),
            dims: c.dims().to_vec(),
            differentials: (1..=c.max_degree())
                .map(|n| MatrixDoc::from_matrix(c.differential(n).expect("interior degree")))
                .collect(),
            name: name.map(str::to_string),
        }
    }

    pub fn to_complex(&self) -> Result<ChainComplex> {
        let field = Field::parse_descriptor(&self.field)?;
        if self.dims.len() != self.max_degree + 1 {
            return Err(Error::Document(format!(
                "maxDegree {} disagrees with {} listed dimensions",
                self.max_degree,
                self.dims.len()
            )));
        }
        let differentials = self
            .differentials
            .iter()
            .map(|d| d.to_matrix(field))
            .collect::<Result<Vec<_>>>()?;
        ChainComplex::new(field, self.dims.clone(), differentials)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SimplicialDoc {
    pub field: String,
    pub max_degree: usize,
    pub dims: Vec<usize>,
    pub faces: Vec<Vec<MatrixDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degeneracies: Option<Vec<Vec<MatrixDoc>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl SimplicialDoc {
    pub fn from_module(x: &SimplicialModule, name: Option<&str>) -> SimplicialDoc {
        let top = x.max_degree();
        let faces = (1..=top)
            .map(|n| (0..=n).map(|i| MatrixDoc::from_matrix(x.face(n, i))).collect())
            .collect();
        let degeneracies = x.is_full().then(|| {
            (0..top)
                .map(|n| {
                    (0..=n)
                        .map(|i| MatrixDoc::from_matrix(x.degeneracy(n, i).expect("full module")))
                        .collect()
                })
                .collect()
        });
        SimplicialDoc {
            field: x.field().descriptor(),
            max_degree: top,
            dims: x.dims().to_vec(),
            faces,
            degeneracies,
            name: name.map(str::to_string),
        }
    }

    pub fn to_module(&self) -> Result<SimplicialModule> {
        let field = Field::parse_descriptor(&self.field)?;
        if self.dims.len() != self.max_degree + 1 {
            return Err(Error::Document(format!(
                "maxDegree {} disagrees with {} listed dimensions",
                self.max_degree,
                self.dims.len()
            )));
        }
        let faces = self
            .faces
            .iter()
            .map(|level| level.iter().map(|m| m.to_matrix(field)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        let degeneracies = self
            .degeneracies
            .as_ref()
            .map(|levels| {
                levels
                    .iter()
                    .map(|level| level.iter().map(|m| m.to_matrix(field)).collect())
                    .collect::<Result<Vec<Vec<_>>>>()
            })
            .transpose()?;
        SimplicialModule::new(field, self.dims.clone(), faces, degeneracies)
    }
}

/// A module either written out in place or held in a sibling file.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModuleRef {
    File { file: String },
    Inline(Box<SimplicialDoc>),
}

impl ModuleRef {
    pub fn resolve(&self, base: &Path) -> Result<SimplicialModule> {
        match self {
            ModuleRef::Inline(doc) => doc.to_module(),
            ModuleRef::File { file } => match read_document(&base.join(file))? {
                Document::Simplicial(doc) | Document::Semisimplicial(doc) => doc.to_module(),
                other => Err(Error::Document(format!(
                    "{file} holds a {} document, not a module",
                    other.kind()
                ))),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MapDoc {
    pub source: ModuleRef,
    pub target: ModuleRef,
    pub components: Vec<MatrixDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl MapDoc {
    pub fn from_map(f: &SimplicialMap, name: Option<&str>) -> MapDoc {
        MapDoc {
            source: ModuleRef::Inline(Box::new(SimplicialDoc::from_module(f.source(), None))),
            target: ModuleRef::Inline(Box::new(SimplicialDoc::from_module(f.target(), None))),
            components: (0..=f.source().max_degree())
                .map(|n| MatrixDoc::from_matrix(f.component(n)))
                .collect(),
            name: name.map(str::to_string),
        }
    }

    pub fn to_map(&self, base: &Path) -> Result<SimplicialMap> {
        let source = self.source.resolve(base)?;
        let target = self.target.resolve(base)?;
        let field = source.field();
        let components = self
            .components
            .iter()
            .map(|m| m.to_matrix(field))
            .collect::<Result<Vec<_>>>()?;
        SimplicialMap::new(source, target, components)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CrossedDoc {
    pub group: String,
    pub field: String,
    pub max_degree: usize,
    pub dims: Vec<usize>,
    pub faces: Vec<Vec<MatrixDoc>>,
    pub degeneracies: Vec<Vec<MatrixDoc>>,
    pub actions: Vec<Vec<MatrixDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl CrossedDoc {
    pub fn from_crossed(x: &CrossedModule, name: Option<&str>) -> CrossedDoc {
        let base = SimplicialDoc::from_module(x.base(), None);
        CrossedDoc {
            group: x.family_name().to_string(),
            field: base.field,
            max_degree: base.max_degree,
            dims: base.dims,
            faces: base.faces,
            degeneracies: base.degeneracies.expect("crossed modules are full"),
            actions: (0..=x.base().max_degree())
                .map(|n| {
                    x.generator_actions(n)
                        .iter()
                        .map(MatrixDoc::from_matrix)
                        .collect()
                })
                .collect(),
            name: name.map(str::to_string),
        }
    }

    pub fn to_crossed(&self) -> Result<CrossedModule> {
        let base = SimplicialDoc {
            field: self.field.clone(),
            max_degree: self.max_degree,
            dims: self.dims.clone(),
            faces: self.faces.clone(),
            degeneracies: Some(self.degeneracies.clone()),
            name: None,
        }
        .to_module()?;
        let field = base.field();
        let actions = self
            .actions
            .iter()
            .map(|level| level.iter().map(|m| m.to_matrix(field)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        CrossedModule::new(base, &self.group, actions)
    }
}

/// Any document the tools exchange, tagged by its `type` field.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Document {
    Chain(ChainDoc),
    Simplicial(SimplicialDoc),
    Semisimplicial(SimplicialDoc),
    Map(MapDoc),
    Crossed(CrossedDoc),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Chain(_) => "chain",
            Document::Simplicial(_) => "simplicial",
            Document::Semisimplicial(_) => "semisimplicial",
            Document::Map(_) => "map",
            Document::Crossed(_) => "crossed",
        }
    }

    pub fn from_module(x: &SimplicialModule, name: Option<&str>) -> Document {
        let doc = SimplicialDoc::from_module(x, name);
        if x.is_full() {
            Document::Simplicial(doc)
        } else {
            Document::Semisimplicial(doc)
        }
    }

    pub fn to_string_pretty(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("documents serialize");
        text.push('\n');
        text
    }
}

pub fn parse_document(text: &str) -> Result<Document> {
    let doc: Document =
        serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
    if let Document::Semisimplicial(inner) = &doc {
        if inner.degeneracies.is_some() {
            return Err(Error::Document(
                "a semisimplicial document must not list degeneracies".into(),
            ));
        }
    }
    if let Document::Simplicial(inner) = &doc {
        if inner.degeneracies.is_none() {
            return Err(Error::Document(
                "a simplicial document must list degeneracies".into(),
            ));
        }
    }
    Ok(doc)
}

pub fn read_document(path: &Path) -> Result<Document> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Document(format!("{}: {e}", path.display())))?;
    parse_document(&text)
}

pub fn write_document(path: &Path, doc: &Document) -> Result<()> {
    fs::write(path, doc.to_string_pretty())
        .map_err(|e| Error::Document(format!("{}: {e}", path.display())))
}
