//! Finitely presented modules over the path algebra of an acyclic quiver.
//!
//! A module is given by generator sorts and a relation matrix `H` (one row per
//! relation, one column per generator). Its underlying k-data is a
//! representation whose fiber at `v` is spanned by pairs (generator, path to
//! `v`) modulo the images of the relations along all paths.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{Ambient, ConcreteMatrix, GroupHom, QuotientCoords, QuotientInvariants, Scalar, ScalarRing, SubobjectData};
use crate::pp::PpFormula;
use crate::quiver::{AlgebraElement, Path, Quiver, TypedMatrix, VertexId};
use crate::repr::Representation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpModule {
    quiver: Arc<Quiver>,
    gens: Vec<VertexId>,
    relations: TypedMatrix,
}

impl FpModule {
    pub fn new(quiver: Arc<Quiver>, relations: TypedMatrix) -> Result<Self> {
        let n = quiver.num_vertices();
        if relations.row_types().iter().chain(relations.col_types()).any(|v| v.0 >= n) {
            return Err(Error::TypeMismatch("relation matrix typed over another quiver".into()));
        }
        Ok(Self {
            gens: relations.col_types().to_vec(),
            quiver,
            relations,
        })
    }

    /// Free module on the given generator sorts.
    pub fn free(quiver: Arc<Quiver>, ring: ScalarRing, gens: Vec<VertexId>) -> Self {
        let relations = TypedMatrix::zeros(ring, Vec::new(), gens.clone());
        Self {
            quiver,
            gens,
            relations,
        }
    }

    /// The representable projective at `v`.
    pub fn representable(quiver: Arc<Quiver>, ring: ScalarRing, v: VertexId) -> Self {
        Self::free(quiver, ring, vec![v])
    }

    pub fn zero(quiver: Arc<Quiver>, ring: ScalarRing) -> Self {
        Self::free(quiver, ring, Vec::new())
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn ring(&self) -> ScalarRing {
        self.relations.ring()
    }

    pub fn gens(&self) -> &[VertexId] {
        &self.gens
    }

    pub fn relations(&self) -> &TypedMatrix {
        &self.relations
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.quiver != other.quiver {
            return Err(Error::TypeMismatch("modules over different quivers".into()));
        }
        Self::new(self.quiver.clone(), self.relations.block_diag(&other.relations)?)
    }

    /// Module whose k-data is `t`: one generator per fiber coordinate, one
    /// relation per (arrow, source coordinate) and per fiber relation.
    pub fn from_representation(t: &Representation) -> Result<Self> {
        let q = t.quiver().clone();
        let ring = t.ring();
        let mut gens = Vec::new();
        let mut offset = Vec::new();
        for v in q.vertex_ids() {
            offset.push(gens.len());
            gens.extend(std::iter::repeat(v).take(t.fiber(v).gens()));
        }
        let mut rows: Vec<(VertexId, Vec<AlgebraElement>)> = Vec::new();
        let blank = |sort: VertexId| -> Vec<AlgebraElement> {
            gens.iter().map(|&g| AlgebraElement::zero(ring, g, sort)).collect()
        };
        for (i, ar) in q.arrows().iter().enumerate() {
            let m = t.arrow_matrix(crate::quiver::ArrowId(i));
            for j in 0..m.cols() {
                let mut row = blank(ar.tgt);
                row[offset[ar.src.0] + j] = AlgebraElement::arrow(ring, &q, crate::quiver::ArrowId(i));
                for k in 0..m.rows() {
                    let c = ring.neg(m.get(k, j));
                    let idx = offset[ar.tgt.0] + k;
                    row[idx] = row[idx].add(&AlgebraElement::scalar(ring, ar.tgt, c))?;
                }
                rows.push((ar.tgt, row));
            }
        }
        for v in q.vertex_ids() {
            let rel = t.fiber(v).relations();
            for r in 0..rel.rows() {
                let mut row = blank(v);
                for (k, c) in rel.row(r).iter().enumerate() {
                    row[offset[v.0] + k] = AlgebraElement::scalar(ring, v, c.clone());
                }
                rows.push((v, row));
            }
        }
        let (sorts, rows): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
        Self::new(q, TypedMatrix::from_rows(ring, sorts, gens, rows)?)
    }

    pub fn k_data(&self) -> Result<KData> {
        KData::new(self)
    }
}

/// Underlying k-linear data of a module: a reduced representation plus the
/// bookkeeping to move between elements and fiber coordinates.
#[derive(Clone, Debug)]
pub struct KData {
    rep: Representation,
    ngens: usize,
    raw: Vec<Vec<(usize, Path)>>,
    coords: Vec<QuotientCoords>,
}

impl KData {
    fn new(module: &FpModule) -> Result<Self> {
        let q = module.quiver.clone();
        q.require_acyclic()?;
        let ring = module.ring();
        let gens = &module.gens;
        let mut raw: Vec<Vec<(usize, Path)>> = vec![Vec::new(); q.num_vertices()];
        for (k, &g) in gens.iter().enumerate() {
            for p in q.paths_from(g)? {
                raw[p.tgt().0].push((k, p));
            }
        }
        for r in raw.iter_mut() {
            r.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        }
        let index: Vec<HashMap<(usize, Path), usize>> = raw
            .iter()
            .map(|r| r.iter().cloned().enumerate().map(|(i, kp)| (kp, i)).collect())
            .collect();

        let mut coords = Vec::with_capacity(q.num_vertices());
        for v in q.vertex_ids() {
            let amb = Ambient::free(ring, raw[v.0].len());
            let mut rel_vectors = Vec::new();
            for j in 0..module.relations.rows() {
                let s = module.relations.row_types()[j];
                for p in q.path_basis(s, v)? {
                    let pe = AlgebraElement::path(ring, p);
                    let row = module
                        .relations
                        .row(j)
                        .iter()
                        .map(|e| pe.mul(e))
                        .collect::<Result<Vec<_>>>()?;
                    rel_vectors.push(raw_vector(ring, &index[v.0], raw[v.0].len(), &row));
                }
            }
            let sub = SubobjectData::new(&amb, rel_vectors)?;
            coords.push(SubobjectData::whole(&amb).quotient_coords(&sub)?);
        }

        let fibers = coords.iter().map(QuotientCoords::as_group).collect();
        let mut arrows = Vec::with_capacity(q.num_arrows());
        for (ai, ar) in q.arrows().iter().enumerate() {
            let (cs, ct) = (&coords[ar.src.0], &coords[ar.tgt.0]);
            let nt = raw[ar.tgt.0].len();
            let mut cols = Vec::with_capacity(cs.len());
            for j in 0..cs.len() {
                let x = cs.lift(j);
                let mut y = vec![Scalar::zero(); nt];
                for (i, c) in x.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let (k, p) = &raw[ar.src.0][i];
                    let pa = p.then_arrow(&q, crate::quiver::ArrowId(ai))?;
                    let t = index[ar.tgt.0][&(*k, pa)];
                    y[t] = ring.add(&y[t], c);
                }
                cols.push(ct.coords_of(&y)?);
            }
            arrows.push(ConcreteMatrix::from_fn(ring, ct.len(), cs.len(), |i, j| cols[j][i].clone()));
        }
        let rep = Representation::new(q, ring, fibers, arrows)?;
        Ok(Self {
            rep,
            ngens: gens.len(),
            raw,
            coords,
        })
    }

    pub fn representation(&self) -> &Representation {
        &self.rep
    }

    /// Invariants of the fiber at each vertex.
    pub fn fiber_invariants(&self) -> Vec<QuotientInvariants> {
        self.coords.iter().map(QuotientCoords::invariants).collect()
    }

    /// Fiber dimensions (free ranks; the dimension vector over a field).
    pub fn dim_vector(&self) -> Vec<usize> {
        self.fiber_invariants().iter().map(|i| i.free_rank).collect()
    }

    /// Coordinates of the element `sum_k row[k] * gen_k` of sort `v`.
    pub fn element_coords(&self, v: VertexId, row: &[AlgebraElement]) -> Result<Vec<Scalar>> {
        if row.len() != self.ngens {
            return Err(Error::ShapeMismatch(format!(
                "element with {} coefficients for {} generators",
                row.len(),
                self.ngens
            )));
        }
        let raw = &self.raw[v.0];
        let mut x = vec![Scalar::zero(); raw.len()];
        for e in row {
            if e.tgt() != v {
                return Err(Error::TypeMismatch("coefficient does not end at the element sort".into()));
            }
        }
        for (i, (k, p)) in raw.iter().enumerate() {
            x[i] = row[*k].coefficient(p);
        }
        self.coords[v.0].coords_of(&x)
    }

    /// An element (coefficients per generator) with the given coordinates.
    pub fn element_from_coords(&self, v: VertexId, c: &[Scalar], gen_sorts: &[VertexId]) -> Vec<AlgebraElement> {
        let ring = self.rep.ring();
        let cv = &self.coords[v.0];
        let raw = &self.raw[v.0];
        let mut x = vec![Scalar::zero(); raw.len()];
        for (j, cj) in c.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            for (xi, l) in x.iter_mut().zip(cv.lift(j)) {
                *xi = ring.add(xi, &ring.mul(cj, &l));
            }
        }
        let mut row: Vec<AlgebraElement> = gen_sorts.iter().map(|&g| AlgebraElement::zero(ring, g, v)).collect();
        for (i, (k, p)) in raw.iter().enumerate() {
            if !x[i].is_zero() {
                row[*k] = row[*k]
                    .add(&AlgebraElement::term(ring, p.clone(), x[i].clone()))
                    .expect("same endpoints");
            }
        }
        row
    }
}

fn raw_vector(
    ring: ScalarRing,
    index: &HashMap<(usize, Path), usize>,
    n: usize,
    row: &[AlgebraElement],
) -> Vec<Scalar> {
    let mut x = vec![Scalar::zero(); n];
    for (k, e) in row.iter().enumerate() {
        for (p, c) in e.terms() {
            let i = index[&(k, p.clone())];
            x[i] = ring.add(&x[i], c);
        }
    }
    x
}

/// Module homomorphism given on generators: row `i` is the image of the
/// `i`-th source generator in terms of the target generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMorphism {
    source: FpModule,
    target: FpModule,
    matrix: TypedMatrix,
}

impl FpMorphism {
    /// Certifies that relations of the source map to zero in the target.
    pub fn new(source: FpModule, target: FpModule, matrix: TypedMatrix) -> Result<Self> {
        if source.quiver != target.quiver {
            return Err(Error::InvalidMorphism("modules over different quivers".into()));
        }
        if matrix.row_types() != source.gens() || matrix.col_types() != target.gens() {
            return Err(Error::InvalidMorphism("matrix is not typed by the generator sorts".into()));
        }
        let kd = target.k_data()?;
        let images = source.relations.mul(&matrix)?;
        for j in 0..images.rows() {
            let c = kd.element_coords(images.row_types()[j], images.row(j))?;
            if c.iter().any(|x| !x.is_zero()) {
                return Err(Error::InvalidMorphism(format!(
                    "relation {j} of the source is not sent to zero"
                )));
            }
        }
        Ok(Self {
            source,
            target,
            matrix,
        })
    }

    pub(crate) fn new_unchecked(source: FpModule, target: FpModule, matrix: TypedMatrix) -> Self {
        Self {
            source,
            target,
            matrix,
        }
    }

    pub fn identity(module: &FpModule) -> Self {
        let m = TypedMatrix::identity(module.ring(), module.gens.clone());
        Self::new_unchecked(module.clone(), module.clone(), m)
    }

    pub fn zero(source: &FpModule, target: &FpModule) -> Self {
        let m = TypedMatrix::zeros(source.ring(), source.gens.clone(), target.gens.clone());
        Self::new_unchecked(source.clone(), target.clone(), m)
    }

    pub fn source(&self) -> &FpModule {
        &self.source
    }

    pub fn target(&self) -> &FpModule {
        &self.target
    }

    pub fn matrix(&self) -> &TypedMatrix {
        &self.matrix
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &FpMorphism) -> Result<FpMorphism> {
        if self.target != next.source {
            return Err(Error::InvalidMorphism("composing morphisms that do not meet".into()));
        }
        Ok(Self::new_unchecked(
            self.source.clone(),
            next.target.clone(),
            self.matrix.mul(&next.matrix)?,
        ))
    }

    pub fn add(&self, other: &FpMorphism) -> Result<FpMorphism> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::InvalidMorphism("adding morphisms with different endpoints".into()));
        }
        Ok(Self::new_unchecked(
            self.source.clone(),
            self.target.clone(),
            self.matrix.add(&other.matrix)?,
        ))
    }

    pub fn scale(&self, c: &Scalar) -> FpMorphism {
        let ring = self.matrix.ring();
        let rows = (0..self.matrix.rows()).map(|j| self.matrix.row(j).iter().map(|e| e.scale(c)).collect()).collect();
        let m = TypedMatrix::from_rows(ring, self.matrix.row_types().to_vec(), self.matrix.col_types().to_vec(), rows)
            .expect("scaling keeps types");
        Self::new_unchecked(self.source.clone(), self.target.clone(), m)
    }
}

/// Solutions of the relations of `n` in the k-data of `target`, as a subgroup
/// of the product of target fibers at the generator sorts of `n`.
fn hom_solutions(n: &FpModule, kd: &KData) -> Result<SubobjectData> {
    let rep = kd.representation();
    let src = rep.ambient(n.gens());
    let tgt = rep.ambient(n.relations.row_types());
    let h = rep.evaluate_typed_matrix(&n.relations)?;
    Ok(GroupHom::new(src, tgt, h)?.kernel())
}

/// Generators of `Hom(n, target)` (a basis over a field).
pub fn hom_basis(n: &FpModule, target: &FpModule) -> Result<Vec<FpMorphism>> {
    if n.quiver != target.quiver {
        return Err(Error::InvalidMorphism("modules over different quivers".into()));
    }
    let kd = target.k_data()?;
    let sol = hom_solutions(n, &kd)?;
    let coords = sol.quotient_coords(&SubobjectData::zero(sol.ambient()))?;
    let rep = kd.representation();
    let ring = n.ring();
    let mut out = Vec::with_capacity(coords.len());
    for j in 0..coords.len() {
        let x = coords.lift(j);
        let mut rows = Vec::with_capacity(n.gens.len());
        let mut off = 0;
        for &g in &n.gens {
            let d = rep.fiber(g).gens();
            rows.push(kd.element_from_coords(g, &x[off..off + d], target.gens()));
            off += d;
        }
        let m = TypedMatrix::from_rows(ring, n.gens.clone(), target.gens.clone(), rows)?;
        out.push(FpMorphism::new_unchecked(n.clone(), target.clone(), m));
    }
    Ok(out)
}

/// Invariants of `Hom(n, target)` as a group.
pub fn hom_invariants(n: &FpModule, target: &FpModule) -> Result<QuotientInvariants> {
    let kd = target.k_data()?;
    Ok(hom_solutions(n, &kd)?.invariants())
}

/// A tuple of elements of a module: row `i` gives element `i` in terms of the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementTuple {
    pub module: FpModule,
    pub coords: TypedMatrix,
}

impl ElementTuple {
    pub fn sorts(&self) -> &[VertexId] {
        self.coords.row_types()
    }

    /// Image under a homomorphism out of `self.module`.
    pub fn map(&self, h: &FpMorphism) -> Result<ElementTuple> {
        if h.source != self.module {
            return Err(Error::InvalidMorphism("tuple lives in another module".into()));
        }
        Ok(ElementTuple {
            module: h.target.clone(),
            coords: self.coords.mul(&h.matrix)?,
        })
    }
}

/// Free realization of a formula: generators for context and bound variables,
/// relations the equations, and the tuple of context generators.
pub fn free_realization(phi: &PpFormula) -> Result<(FpModule, ElementTuple)> {
    phi.quiver().require_acyclic()?;
    let rel = phi.a().hstack(phi.b())?;
    let module = FpModule::new(phi.quiver().clone(), rel)?;
    let ring = phi.ring();
    let ctx = phi.context_sorts();
    let coords = TypedMatrix::identity(ring, ctx.clone())
        .hstack(&TypedMatrix::zeros(ring, ctx, phi.bound_sorts()))?;
    let tuple = ElementTuple {
        module: module.clone(),
        coords,
    };
    Ok((module, tuple))
}

/// Whether the tuple lies in the solution set of `psi` in its module.
pub fn element_satisfies(tuple: &ElementTuple, psi: &PpFormula) -> Result<bool> {
    if tuple.sorts() != psi.context_sorts().as_slice() {
        return Err(Error::ContextMismatch("tuple sorts differ from the formula context".into()));
    }
    let kd = tuple.module.k_data()?;
    let mut x = Vec::new();
    for (i, &s) in tuple.sorts().iter().enumerate() {
        x.extend(kd.element_coords(s, tuple.coords.row(i))?);
    }
    Ok(psi.evaluate(kd.representation())?.contains_vector(&x))
}
