use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::{Ambient, ConcreteMatrix, GroupHom, QuotientCoords, Scalar, ScalarRing, SubobjectData};
use crate::repr::Representation;

use super::complex::{PairsCategoryData, Simplex, SimplicialMap, SimplicialPair};
use super::diagram::{ArrowKind, NoriDiagram};

fn index_of(basis: &[Simplex]) -> HashMap<&Simplex, usize> {
    basis.iter().enumerate().map(|(i, f)| (f, i)).collect()
}

/// Relative boundary `C_k(X,Y) -> C_{k-1}(X,Y)` (rows: `(k-1)`-faces).
pub fn boundary_matrix(pair: &SimplicialPair, k: usize, ring: ScalarRing) -> ConcreteMatrix {
    let cols = pair.relative_faces(k);
    if k == 0 {
        return ConcreteMatrix::zeros(ring, 0, cols.len());
    }
    let rows = pair.relative_faces(k - 1);
    let idx = index_of(&rows);
    let mut m = ConcreteMatrix::zeros(ring, rows.len(), cols.len());
    for (c, f) in cols.iter().enumerate() {
        for j in 0..f.len() {
            let mut face = f.clone();
            face.remove(j);
            if let Some(&r) = idx.get(&face) {
                let s = if j % 2 == 0 { 1 } else { -1 };
                m.set(r, c, ring.add(m.get(r, c), &ring.from_i64(s)));
            }
        }
    }
    m
}

/// `H_k(X, Y)` as canonical coordinates on relative cycles modulo boundaries.
pub fn relative_homology(pair: &SimplicialPair, k: usize, ring: ScalarRing) -> Result<QuotientCoords> {
    let n = pair.relative_faces(k).len();
    let here = Ambient::free(ring, n);
    let below = Ambient::free(ring, if k == 0 { 0 } else { pair.relative_faces(k - 1).len() });
    let cycles = GroupHom::new(here.clone(), below, boundary_matrix(pair, k, ring))?.kernel();
    let above = Ambient::free(ring, pair.relative_faces(k + 1).len());
    let boundaries = GroupHom::new(above, here, boundary_matrix(pair, k + 1, ring))?.image();
    cycles.quotient_coords(&boundaries)
}

/// Sign of the permutation sorting `v`, or `None` when `v` repeats a vertex.
fn sort_sign(v: &[u32]) -> Option<(Simplex, i64)> {
    let mut s = v.to_vec();
    let mut sign = 1;
    for i in 0..s.len() {
        for j in 0..s.len() - 1 - i {
            if s[j] > s[j + 1] {
                s.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if s.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((s, sign))
}

/// Induced map on relative `k`-chains.
pub fn chain_map(f: &SimplicialMap, source: &SimplicialPair, target: &SimplicialPair, k: usize, ring: ScalarRing) -> ConcreteMatrix {
    let cols = source.relative_faces(k);
    let rows = target.relative_faces(k);
    let idx = index_of(&rows);
    let mut m = ConcreteMatrix::zeros(ring, rows.len(), cols.len());
    for (c, face) in cols.iter().enumerate() {
        if let Some((img, sign)) = sort_sign(&f.apply(face)) {
            if let Some(&r) = idx.get(&img) {
                m.set(r, c, ring.from_i64(sign));
            }
        }
    }
    m
}

/// Matrix of a chain-level map in homology coordinates.
fn induced(src: &QuotientCoords, tgt: &QuotientCoords, chains: impl Fn(&[Scalar]) -> Result<Vec<Scalar>>) -> Result<ConcreteMatrix> {
    let ring = src.ring();
    let cols: Vec<Vec<Scalar>> = (0..src.len()).map(|j| tgt.coords_of(&chains(&src.lift(j))?)).collect::<Result<_>>()?;
    Ok(ConcreteMatrix::from_fn(ring, tgt.len(), src.len(), |i, j| cols[j][i].clone()))
}

/// Connecting map on chains: lift a relative cycle of `(X,Y)` to `X`, take its
/// boundary (a chain on `Y`) and project to `(Y,Z)`.
fn connecting_chains(outer: &SimplicialPair, inner: &SimplicialPair, k: usize, ring: ScalarRing, c: &[Scalar]) -> Vec<Scalar> {
    let rows = inner.relative_faces(k - 1);
    let idx = index_of(&rows);
    let mut out = vec![Scalar::from_integer(0.into()); rows.len()];
    for (f, x) in outer.relative_faces(k).iter().zip(c) {
        if x == &Scalar::from_integer(0.into()) {
            continue;
        }
        for j in 0..f.len() {
            let mut face = f.clone();
            face.remove(j);
            if let Some(&r) = idx.get(&face) {
                let s = if j % 2 == 0 { x.clone() } else { ring.neg(x) };
                out[r] = ring.add(&out[r], &s);
            }
        }
    }
    out
}

/// Representation of the diagram by relative simplicial homology.
pub fn homology_representation(data: &PairsCategoryData, diagram: &NoriDiagram, ring: ScalarRing) -> Result<Representation> {
    if diagram.num_pairs() != data.pairs().len() {
        return Err(Error::InvalidPairsData("diagram was built from other data".into()));
    }
    let q = diagram.quiver();
    let mut coords = Vec::with_capacity(q.num_vertices());
    for v in q.vertex_ids() {
        let (p, d) = diagram.vertex_label(v);
        coords.push(relative_homology(&data.pairs()[p], d, ring)?);
    }
    let mut arrows = Vec::with_capacity(q.num_arrows());
    for a in q.arrow_ids() {
        let ar = q.arrow(a);
        let (src, tgt) = (&coords[ar.src.0], &coords[ar.tgt.0]);
        let m = match diagram.arrow_kind(a) {
            ArrowKind::Map { map, degree } => {
                let f = &data.maps()[map];
                let cm = chain_map(f, &data.pairs()[f.source], &data.pairs()[f.target], degree, ring);
                induced(src, tgt, |c| cm.mul_vec(c))?
            }
            ArrowKind::Boundary { triple, degree } => {
                let t = &data.triples()[triple];
                let (o, i) = (&data.pairs()[t.outer], &data.pairs()[t.inner]);
                induced(src, tgt, |c| Ok(connecting_chains(o, i, degree, ring, c)))?
            }
        };
        arrows.push(m);
    }
    let fibers = coords.iter().map(QuotientCoords::as_group).collect();
    Representation::new(q.clone(), ring, fibers, arrows)
}

/// Exactness of `H_i(Y,Z) -> H_i(X,Z) -> H_i(X,Y) -> H_{i-1}(Y,Z) -> ..` at
/// every slot inside the degree window, read off the arrow matrices of `rep`.
pub fn check_les_exactness(rep: &Representation, diagram: &NoriDiagram, data: &PairsCategoryData, triple: usize) -> Result<bool> {
    let t = data
        .triples()
        .get(triple)
        .ok_or_else(|| Error::MissingLesData(format!("no triple {triple}")))?;
    let total = data
        .total_pair(triple)
        .ok_or_else(|| Error::MissingLesData(format!("pair (X, Z) of triple `{}`", t.name)))?;
    let iota = data
        .find_inclusion(t.inner, total)
        .ok_or_else(|| Error::MissingLesData(format!("inclusion (Y, Z) -> (X, Z) of triple `{}`", t.name)))?;
    let pi = data
        .find_inclusion(total, t.outer)
        .ok_or_else(|| Error::MissingLesData(format!("inclusion (X, Z) -> (X, Y) of triple `{}`", t.name)))?;
    let arrow = |kind| {
        diagram
            .find_arrow(kind)
            .ok_or_else(|| Error::MissingLesData(format!("arrow {kind:?}")))
    };
    let hom = |a| {
        let ar = diagram.quiver().arrow(a);
        GroupHom::new(rep.ambient(&[ar.src]), rep.ambient(&[ar.tgt]), rep.arrow_matrix(a).clone())
    };
    // maps of the sequence from the top degree down
    let mut seq = Vec::new();
    for d in (0..=diagram.dmax()).rev() {
        seq.push(hom(arrow(ArrowKind::Map { map: iota, degree: d })?)?);
        seq.push(hom(arrow(ArrowKind::Map { map: pi, degree: d })?)?);
        if d > 0 {
            seq.push(hom(arrow(ArrowKind::Boundary { triple, degree: d })?)?);
        }
    }
    let same = |a: &SubobjectData, b: &SubobjectData| -> Result<bool> { Ok(a.contains(b)? && b.contains(a)?) };
    for w in seq.windows(2) {
        if !same(&w[0].image(), &w[1].kernel())? {
            return Ok(false);
        }
    }
    // H_0(X,Y) -> 0
    let last = seq.last().expect("nonempty sequence");
    same(&last.image(), &SubobjectData::whole(last.target()))
}
