//! Seeded generators of small random instances for tests and benchmarks.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::Result;
use crate::fpmod::{FpModule, FpMorphism};
use crate::freyd::{AbMorphism, AbObject};
use crate::linalg::{ConcreteMatrix, Scalar, ScalarRing};
use crate::pp::{PpFormula, PpPair, Var};
use crate::quiver::{AlgebraElement, Quiver, TypedMatrix, VertexId};
use crate::repr::Representation;

/// Small scalar: `{0, 1}` over `F_2`, `-2..=2` otherwise.
pub fn scalar<R: Rng>(rng: &mut R, ring: ScalarRing) -> Scalar {
    match ring {
        ScalarRing::PrimeField(p) => ring.from_i64(rng.gen_range(0..p.min(5) as i64)),
        _ => ring.from_i64(rng.gen_range(-2..=2)),
    }
}

fn nonzero_scalar<R: Rng>(rng: &mut R, ring: ScalarRing) -> Scalar {
    loop {
        let c = scalar(rng, ring);
        if !c.eq(&ring.from_i64(0)) {
            return c;
        }
    }
}

pub fn matrix<R: Rng>(rng: &mut R, ring: ScalarRing, rows: usize, cols: usize) -> ConcreteMatrix {
    ConcreteMatrix::from_fn(ring, rows, cols, |_, _| scalar(rng, ring))
}

/// Representation with free fibers of dimension at most `max_dim`.
pub fn representation<R: Rng>(rng: &mut R, quiver: &Arc<Quiver>, ring: ScalarRing, max_dim: usize) -> Representation {
    let dims: Vec<usize> = (0..quiver.num_vertices()).map(|_| rng.gen_range(0..=max_dim)).collect();
    let arrows = quiver
        .arrows()
        .iter()
        .map(|a| matrix(rng, ring, dims[a.tgt.0], dims[a.src.0]))
        .collect();
    Representation::from_dims(quiver.clone(), ring, &dims, arrows).expect("shapes match")
}

/// Random combination of the paths `s -> t` (zero with probability `1 - density`).
pub fn element<R: Rng>(rng: &mut R, quiver: &Quiver, ring: ScalarRing, s: VertexId, t: VertexId, density: f64) -> AlgebraElement {
    let mut e = AlgebraElement::zero(ring, s, t);
    if !rng.gen_bool(density) {
        return e;
    }
    let paths = quiver.path_basis(s, t).expect("acyclic quiver");
    for p in paths {
        if rng.gen_bool(0.6) {
            let term = AlgebraElement::term(ring, p, nonzero_scalar(rng, ring));
            e = e.add(&term).expect("same endpoints");
        }
    }
    e
}

pub fn typed_matrix<R: Rng>(
    rng: &mut R,
    quiver: &Quiver,
    ring: ScalarRing,
    row_types: &[VertexId],
    col_types: &[VertexId],
    density: f64,
) -> TypedMatrix {
    let mut m = TypedMatrix::zeros(ring, row_types.to_vec(), col_types.to_vec());
    for (j, &r) in row_types.iter().enumerate() {
        for (i, &c) in col_types.iter().enumerate() {
            m.set(j, i, element(rng, quiver, ring, c, r, density)).expect("typed entry");
        }
    }
    m
}

pub fn sorts<R: Rng>(rng: &mut R, quiver: &Quiver, min: usize, max: usize) -> Vec<VertexId> {
    let n = rng.gen_range(min..=max);
    let all: Vec<VertexId> = quiver.vertex_ids().collect();
    (0..n).map(|_| *all.choose(rng).expect("nonempty quiver")).collect()
}

/// Formula on the given context sorts with up to `max_bound` bound variables and up to `max_eqs` equations.
pub fn formula<R: Rng>(
    rng: &mut R,
    quiver: &Arc<Quiver>,
    ring: ScalarRing,
    context: &[VertexId],
    max_bound: usize,
    max_eqs: usize,
) -> PpFormula {
    let ctx: Vec<Var> = context.iter().enumerate().map(|(i, &s)| Var::new(format!("x{i}"), s)).collect();
    let bound_sorts = sorts(rng, quiver, 0, max_bound);
    let bound: Vec<Var> = bound_sorts.iter().enumerate().map(|(i, &s)| Var::new(format!("y{i}"), s)).collect();
    let rows = sorts(rng, quiver, 1, max_eqs.max(1));
    let a = typed_matrix(rng, quiver, ring, &rows, context, 0.6);
    let b = typed_matrix(rng, quiver, ring, &rows, &bound_sorts, 0.6);
    PpFormula::new(quiver.clone(), ctx, bound, a, b).expect("well-typed random formula")
}

pub fn pair<R: Rng>(rng: &mut R, quiver: &Arc<Quiver>, ring: ScalarRing, context: &[VertexId]) -> PpPair {
    let top = formula(rng, quiver, ring, context, 1, 2);
    let bottom = formula(rng, quiver, ring, context, 2, 2);
    PpPair::new(top, bottom).expect("same context")
}

/// Module with `1..=max_gens` generators and up to `max_rels` relations.
pub fn fp_module<R: Rng>(rng: &mut R, quiver: &Arc<Quiver>, ring: ScalarRing, max_gens: usize, max_rels: usize) -> FpModule {
    let gens = sorts(rng, quiver, 1, max_gens);
    let rels = sorts(rng, quiver, 0, max_rels);
    let h = typed_matrix(rng, quiver, ring, &rels, &gens, 0.7);
    FpModule::new(quiver.clone(), h).expect("typed relations")
}

/// Object presented by a random `g: P -> N`. To make `g` well defined, the
/// images of the relations of `P` are added to the relations of `N`.
pub fn presented_object<R: Rng>(rng: &mut R, quiver: &Arc<Quiver>, ring: ScalarRing) -> Result<AbObject> {
    let p = fp_module(rng, quiver, ring, 2, 1);
    let n0 = fp_module(rng, quiver, ring, 2, 1);
    let g = typed_matrix(rng, quiver, ring, p.gens(), n0.gens(), 0.7);
    let forced = p.relations().mul(&g)?;
    let n = FpModule::new(quiver.clone(), n0.relations().vstack(&forced)?)?;
    AbObject::from_presentation(FpMorphism::new(p, n, g)?)
}

/// A random map of presented objects `source -> target` induced by `f: P' -> P`.
///
/// The target is presented by `g': P' -> N'` with `P'` free; the source by
/// `P -> N` where `N` is the pushout of `P <- P' -> N'`, so that `f` descends.
pub fn presented_morphism<R: Rng>(rng: &mut R, quiver: &Arc<Quiver>, ring: ScalarRing) -> Result<AbMorphism> {
    let p2 = FpModule::free(quiver.clone(), ring, sorts(rng, quiver, 1, 2));
    let n2 = fp_module(rng, quiver, ring, 2, 1);
    let g2 = FpMorphism::new(p2.clone(), n2.clone(), typed_matrix(rng, quiver, ring, p2.gens(), n2.gens(), 0.7))?;
    let p = fp_module(rng, quiver, ring, 2, 1);
    let f = FpMorphism::new(p2.clone(), p.clone(), typed_matrix(rng, quiver, ring, p2.gens(), p.gens(), 0.7))?;

    let mut gens = p.gens().to_vec();
    gens.extend_from_slice(n2.gens());
    let rel_p = p.relations().hstack(&TypedMatrix::zeros(ring, p.relations().row_types().to_vec(), n2.gens().to_vec()))?;
    let rel_n2 = TypedMatrix::zeros(ring, n2.relations().row_types().to_vec(), p.gens().to_vec()).hstack(n2.relations())?;
    let glue = f.matrix().hstack(&g2.matrix().neg())?;
    let n = FpModule::new(quiver.clone(), rel_p.vstack(&rel_n2)?.vstack(&glue)?)?;
    let incl = TypedMatrix::identity(ring, p.gens().to_vec())
        .hstack(&TypedMatrix::zeros(ring, p.gens().to_vec(), n2.gens().to_vec()))?;
    debug_assert_eq!(incl.col_types(), &gens[..]);
    let g = FpMorphism::new(p, n, incl)?;

    let source = AbObject::from_presentation(g)?;
    let target = AbObject::from_presentation(g2)?;
    AbMorphism::from_presentations(&source, &target, &f)
}
