use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quiver::{ArrowId, Quiver, VertexId};

use super::complex::PairsCategoryData;

/// What an arrow of the diagram stands for. `degree` is the source degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArrowKind {
    Map { map: usize, degree: usize },
    Boundary { triple: usize, degree: usize },
}

/// Quiver with a vertex `(pair, i)` for each pair and each `0 <= i <= dmax`,
/// an arrow per map and degree, and an arrow `(X,Y,i) -> (Y,Z,i-1)` per triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoriDiagram {
    quiver: Arc<Quiver>,
    dmax: usize,
    num_pairs: usize,
    kinds: Vec<ArrowKind>,
}

pub fn vertex_name(pair: usize, degree: usize) -> String {
    format!("p{pair}_d{degree}")
}

pub fn build_nori_diagram(data: &PairsCategoryData, dmax: usize) -> Result<NoriDiagram> {
    let np = data.pairs().len();
    if np == 0 {
        return Err(Error::InvalidPairsData("no pairs".into()));
    }
    let vertices: Vec<String> = (0..np).flat_map(|p| (0..=dmax).map(move |d| vertex_name(p, d))).collect();
    let mut arrows = Vec::new();
    let mut kinds = Vec::new();
    for (mi, m) in data.maps().iter().enumerate() {
        for d in 0..=dmax {
            arrows.push((format!("m{mi}_d{d}"), vertex_name(m.source, d), vertex_name(m.target, d)));
            kinds.push(ArrowKind::Map { map: mi, degree: d });
        }
    }
    for (ti, t) in data.triples().iter().enumerate() {
        for d in 1..=dmax {
            arrows.push((format!("b{ti}_d{d}"), vertex_name(t.outer, d), vertex_name(t.inner, d - 1)));
            kinds.push(ArrowKind::Boundary { triple: ti, degree: d });
        }
    }
    let arrows: Vec<(&str, &str, &str)> = arrows.iter().map(|(a, s, t)| (a.as_str(), s.as_str(), t.as_str())).collect();
    let quiver = Quiver::new(&vertices.iter().map(String::as_str).collect::<Vec<_>>(), &arrows)?;
    Ok(NoriDiagram {
        quiver: Arc::new(quiver),
        dmax,
        num_pairs: np,
        kinds,
    })
}

impl NoriDiagram {
    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn dmax(&self) -> usize {
        self.dmax
    }

    pub fn num_pairs(&self) -> usize {
        self.num_pairs
    }

    pub fn vertex(&self, pair: usize, degree: usize) -> VertexId {
        assert!(pair < self.num_pairs && degree <= self.dmax, "vertex outside the diagram");
        VertexId(pair * (self.dmax + 1) + degree)
    }

    /// `(pair, degree)` of a vertex.
    pub fn vertex_label(&self, v: VertexId) -> (usize, usize) {
        (v.0 / (self.dmax + 1), v.0 % (self.dmax + 1))
    }

    pub fn arrow_kind(&self, a: ArrowId) -> ArrowKind {
        self.kinds[a.0]
    }

    pub fn arrow_kinds(&self) -> &[ArrowKind] {
        &self.kinds
    }

    pub fn find_arrow(&self, kind: ArrowKind) -> Option<ArrowId> {
        self.kinds.iter().position(|k| *k == kind).map(ArrowId)
    }
}
