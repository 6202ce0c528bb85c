//! Concrete representations of a quiver and evaluation of path-algebra data.
//!
//! Every fiber is a presented group `k^n / rowspan(R)`; over a field `R` is
//! usually empty. Arrow matrices act on generator coordinates (`n_t x n_s`).

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{Ambient, ConcreteMatrix, GroupHom, PresentedGroup, QuotientCoords, Scalar, ScalarRing, SubobjectData};
use crate::quiver::{AlgebraElement, ArrowId, Path, Quiver, TypedMatrix, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    quiver: Arc<Quiver>,
    ring: ScalarRing,
    fibers: Vec<PresentedGroup>,
    arrows: Vec<ConcreteMatrix>,
}

impl Representation {
    pub fn new(
        quiver: Arc<Quiver>,
        ring: ScalarRing,
        fibers: Vec<PresentedGroup>,
        arrows: Vec<ConcreteMatrix>,
    ) -> Result<Self> {
        if fibers.len() != quiver.num_vertices() {
            return Err(Error::InvalidRepresentation(format!(
                "{} fibers for {} vertices",
                fibers.len(),
                quiver.num_vertices()
            )));
        }
        if arrows.len() != quiver.num_arrows() {
            return Err(Error::InvalidRepresentation(format!(
                "{} matrices for {} arrows",
                arrows.len(),
                quiver.num_arrows()
            )));
        }
        if let Some(f) = fibers.iter().find(|f| f.ring() != ring) {
            return Err(Error::RingMismatch(ring.to_string(), f.ring().to_string()));
        }
        for (i, m) in arrows.iter().enumerate() {
            let ar = quiver.arrow(ArrowId(i));
            let (s, t) = (&fibers[ar.src.0], &fibers[ar.tgt.0]);
            if m.shape() != (t.gens(), s.gens()) {
                return Err(Error::InvalidRepresentation(format!(
                    "matrix of arrow `{}` is {}x{}, expected {}x{}",
                    ar.name,
                    m.rows(),
                    m.cols(),
                    t.gens(),
                    s.gens()
                )));
            }
            GroupHom::new(Ambient::single(s.clone()), Ambient::single(t.clone()), m.clone()).map_err(|e| match e {
                Error::InvalidRepresentation(_) => Error::InvalidRepresentation(format!(
                    "matrix of arrow `{}` does not respect the fiber presentations",
                    ar.name
                )),
                other => other,
            })?;
        }
        Ok(Self {
            quiver,
            ring,
            fibers,
            arrows,
        })
    }

    /// Representation with free fibers of the given dimensions.
    pub fn from_dims(quiver: Arc<Quiver>, ring: ScalarRing, dims: &[usize], arrows: Vec<ConcreteMatrix>) -> Result<Self> {
        let fibers = dims.iter().map(|&n| PresentedGroup::free(ring, n)).collect();
        Self::new(quiver, ring, fibers, arrows)
    }

    pub fn zero(quiver: Arc<Quiver>, ring: ScalarRing) -> Self {
        let n = quiver.num_vertices();
        let m = quiver.num_arrows();
        Self {
            quiver,
            ring,
            fibers: vec![PresentedGroup::free(ring, 0); n],
            arrows: vec![ConcreteMatrix::zeros(ring, 0, 0); m],
        }
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn ring(&self) -> ScalarRing {
        self.ring
    }

    pub fn fiber(&self, v: VertexId) -> &PresentedGroup {
        &self.fibers[v.0]
    }

    pub fn fibers(&self) -> &[PresentedGroup] {
        &self.fibers
    }

    pub fn arrow_matrix(&self, a: ArrowId) -> &ConcreteMatrix {
        &self.arrows[a.0]
    }

    pub fn arrow_matrices(&self) -> &[ConcreteMatrix] {
        &self.arrows
    }

    /// Number of generators of each fiber.
    pub fn gen_counts(&self) -> Vec<usize> {
        self.fibers.iter().map(|f| f.gens()).collect()
    }

    /// Product of the fibers at the given sorts.
    pub fn ambient(&self, sorts: &[VertexId]) -> Ambient {
        Ambient::new(self.ring, sorts.iter().map(|v| self.fibers[v.0].clone()).collect())
            .expect("fibers share the ring")
    }

    fn check_ring(&self, ring: ScalarRing) -> Result<()> {
        if ring != self.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), ring.to_string()));
        }
        Ok(())
    }

    pub fn evaluate_path(&self, p: &Path) -> ConcreteMatrix {
        let mut m = ConcreteMatrix::identity(self.ring, self.fibers[p.src().0].gens());
        for a in p.arrows() {
            m = self.arrows[a.0].mul(&m).expect("composable path");
        }
        m
    }

    pub fn evaluate_element(&self, x: &AlgebraElement) -> Result<ConcreteMatrix> {
        self.check_ring(x.ring())?;
        let n = self.quiver.num_vertices();
        if x.src().0 >= n || x.tgt().0 >= n {
            return Err(Error::TypeMismatch("element typed over another quiver".into()));
        }
        let mut out = ConcreteMatrix::zeros(self.ring, self.fibers[x.tgt().0].gens(), self.fibers[x.src().0].gens());
        for (p, c) in x.terms() {
            if p.arrows().iter().any(|a| a.0 >= self.arrows.len()) {
                return Err(Error::TypeMismatch("path uses an unknown arrow".into()));
            }
            out = out.add(&self.evaluate_path(p).scale(c))?;
        }
        Ok(out)
    }

    /// Block matrix of entry evaluations; blocks follow the type lists.
    pub fn evaluate_typed_matrix(&self, g: &TypedMatrix) -> Result<ConcreteMatrix> {
        self.check_ring(g.ring())?;
        let row_sizes: Vec<usize> = g.row_types().iter().map(|v| self.fibers[v.0].gens()).collect();
        let col_sizes: Vec<usize> = g.col_types().iter().map(|v| self.fibers[v.0].gens()).collect();
        let mut out = ConcreteMatrix::zeros(self.ring, row_sizes.iter().sum(), col_sizes.iter().sum());
        let mut r0 = 0;
        for (j, rs) in row_sizes.iter().enumerate() {
            let mut c0 = 0;
            for (i, cs) in col_sizes.iter().enumerate() {
                let e = g.get(j, i);
                if !e.is_zero() {
                    out.paste(r0, c0, &self.evaluate_element(e)?);
                }
                c0 += cs;
            }
            r0 += rs;
        }
        Ok(out)
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.quiver != other.quiver {
            return Err(Error::InvalidRepresentation("direct sum over different quivers".into()));
        }
        self.check_ring(other.ring)?;
        let fibers = self
            .fibers
            .iter()
            .zip(&other.fibers)
            .map(|(a, b)| {
                let rel = ConcreteMatrix::block_diag(self.ring, &[a.relations(), b.relations()]);
                PresentedGroup::new(self.ring, a.gens() + b.gens(), rel)
            })
            .collect::<Result<Vec<_>>>()?;
        let arrows = self
            .arrows
            .iter()
            .zip(&other.arrows)
            .map(|(a, b)| ConcreteMatrix::block_diag(self.ring, &[a, b]))
            .collect();
        Self::new(self.quiver.clone(), self.ring, fibers, arrows)
    }

    /// Isomorphic representation with fibers in reduced form (unit invariant
    /// factors removed), together with the coordinate change per vertex.
    pub fn minimized(&self) -> (Self, Vec<QuotientCoords>) {
        let coords: Vec<QuotientCoords> = self
            .fibers
            .iter()
            .map(|f| {
                let amb = Ambient::single(f.clone());
                SubobjectData::whole(&amb)
                    .quotient_coords(&SubobjectData::zero(&amb))
                    .expect("relations lie in the whole group")
            })
            .collect();
        let fibers: Vec<PresentedGroup> = coords.iter().map(QuotientCoords::as_group).collect();
        let arrows = self
            .quiver
            .arrows()
            .iter()
            .zip(&self.arrows)
            .map(|(ar, m)| {
                let (cs, ct) = (&coords[ar.src.0], &coords[ar.tgt.0]);
                let cols: Vec<Vec<Scalar>> = (0..cs.len())
                    .map(|j| {
                        let img = m.mul_vec(&cs.lift(j)).expect("shape checked");
                        ct.coords_of(&img).expect("image lies in the fiber")
                    })
                    .collect();
                ConcreteMatrix::from_fn(self.ring, ct.len(), cs.len(), |i, j| cols[j][i].clone())
            })
            .collect();
        let rep = Self {
            quiver: self.quiver.clone(),
            ring: self.ring,
            fibers,
            arrows,
        };
        (rep, coords)
    }

    /// Whether the family `maps` (one matrix per vertex, `self -> other`) commutes with all arrows.
    pub fn is_morphism_to(&self, other: &Self, maps: &[ConcreteMatrix]) -> Result<bool> {
        if maps.len() != self.fibers.len() || self.quiver != other.quiver {
            return Err(Error::ShapeMismatch("one matrix per vertex expected".into()));
        }
        for (v, m) in maps.iter().enumerate() {
            GroupHom::new(
                Ambient::single(self.fibers[v].clone()),
                Ambient::single(other.fibers[v].clone()),
                m.clone(),
            )?;
        }
        for (i, ar) in self.quiver.arrows().iter().enumerate() {
            let lhs = other.arrows[i].mul(&maps[ar.src.0])?;
            let rhs = maps[ar.tgt.0].mul(&self.arrows[i])?;
            let diff = lhs.sub(&rhs)?;
            let zero = SubobjectData::zero(&Ambient::single(other.fibers[ar.tgt.0].clone()));
            if !(0..diff.cols()).all(|j| zero.contains_vector(&diff.column(j))) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True when every fiber is the zero group.
    pub fn is_zero(&self) -> bool {
        self.fibers.iter().all(|f| f.invariants().is_trivial())
    }

    /// Identity intertwiner, one matrix per vertex.
    pub fn identity_maps(&self) -> Vec<ConcreteMatrix> {
        self.fibers
            .iter()
            .map(|f| ConcreteMatrix::identity(self.ring, f.gens()))
            .collect()
    }
}
