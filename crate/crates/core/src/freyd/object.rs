use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fpmod::{FpModule, FpMorphism};
use crate::linalg::{GroupHom, QuotientCoords, QuotientInvariants, ScalarRing};
use crate::pp::{fresh_name, PpFormula, PpPair, Var};
use crate::quiver::{Quiver, TypedMatrix, VertexId};
use crate::repr::Representation;

/// How to compute the value of an object at a representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// Quotient of the two solution sets.
    Pp,
    /// Cokernel of `Hom(N, T) -> Hom(P, T)` from the stored presentation.
    Presentation,
}

/// An object of the free abelian category: a pp-pair, optionally remembering
/// the module map `g: P -> N` it was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbObject {
    pair: PpPair,
    presentation: Option<FpMorphism>,
}

/// Context variables `x0, x1, ..` of the given sorts.
pub(crate) fn numbered(prefix: &str, sorts: &[VertexId]) -> Vec<Var> {
    sorts
        .iter()
        .enumerate()
        .map(|(i, &s)| Var::new(format!("{prefix}{i}"), s))
        .collect()
}

/// Concatenation of two contexts, renaming clashes in the second.
pub(crate) fn joint_context(first: &[Var], second: &[Var]) -> Vec<Var> {
    let mut taken: HashSet<String> = first.iter().map(|v| v.name.clone()).collect();
    let mut out = first.to_vec();
    for v in second {
        let n = fresh_name(&v.name, &taken);
        taken.insert(n.clone());
        out.push(Var::new(n, v.sort));
    }
    out
}

impl AbObject {
    pub fn new(pair: PpPair) -> Self {
        Self {
            pair,
            presentation: None,
        }
    }

    /// Object presented by `g: P -> N`: top is `H_P x = 0`, bottom is
    /// `EX y . H_N y = 0 & x = C y`.
    pub fn from_presentation(g: FpMorphism) -> Result<Self> {
        let p = g.source();
        let n = g.target();
        let q = p.quiver().clone();
        q.require_acyclic()?;
        let ring = p.ring();
        let context = numbered("x", p.gens());
        let bound = numbered("y", n.gens());
        let top = PpFormula::equations(q.clone(), context.clone(), p.relations().clone())?;
        let hn = n.relations();
        let a = TypedMatrix::zeros(ring, hn.row_types().to_vec(), p.gens().to_vec())
            .vstack(&TypedMatrix::identity(ring, p.gens().to_vec()))?;
        let b = hn.vstack(&g.matrix().neg())?;
        let bottom = PpFormula::new(q, context, bound, a, b)?;
        Ok(Self {
            pair: PpPair::new(top, bottom)?,
            presentation: Some(g),
        })
    }

    /// The universal object at a vertex: `(x = x) / (x = 0)`, presented by `P_v -> 0`.
    pub fn delta(quiver: Arc<Quiver>, ring: ScalarRing, v: VertexId) -> Result<Self> {
        let p = FpModule::representable(quiver.clone(), ring, v);
        let zero = FpModule::zero(quiver, ring);
        Self::from_presentation(FpMorphism::zero(&p, &zero))
    }

    pub fn pair(&self) -> &PpPair {
        &self.pair
    }

    pub fn top(&self) -> &PpFormula {
        self.pair.top()
    }

    pub fn bottom(&self) -> &PpFormula {
        self.pair.bottom()
    }

    pub fn presentation(&self) -> Option<&FpMorphism> {
        self.presentation.as_ref()
    }

    pub fn context(&self) -> &[Var] {
        self.pair.top().context()
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        self.pair.top().quiver()
    }

    pub fn ring(&self) -> ScalarRing {
        self.pair.top().ring()
    }

    /// Canonical coordinates on the value at `t` along a route.
    pub fn coords(&self, t: &Representation, route: Route) -> Result<QuotientCoords> {
        match route {
            Route::Pp => self.pair.quotient_coords(t),
            Route::Presentation => {
                let g = self.presentation.as_ref().ok_or(Error::MissingPresentation)?;
                g.source().quiver().require_acyclic()?;
                let (p, n) = (g.source(), g.target());
                let hp = GroupHom::new(
                    t.ambient(p.gens()),
                    t.ambient(p.relations().row_types()),
                    t.evaluate_typed_matrix(p.relations())?,
                )?;
                let hn = GroupHom::new(
                    t.ambient(n.gens()),
                    t.ambient(n.relations().row_types()),
                    t.evaluate_typed_matrix(n.relations())?,
                )?;
                let c = GroupHom::new(t.ambient(n.gens()), t.ambient(p.gens()), t.evaluate_typed_matrix(g.matrix())?)?;
                let top = hp.kernel();
                let bottom = c.image_of(&hn.kernel())?;
                top.quotient_coords(&bottom)
            }
        }
    }

    pub fn evaluate(&self, t: &Representation, route: Route) -> Result<QuotientInvariants> {
        Ok(self.coords(t, route)?.invariants())
    }

    /// The object is zero on `t`.
    pub fn vanishes_on(&self, t: &Representation) -> Result<bool> {
        self.pair.is_closed(t)
    }

    /// The object is zero in the free abelian category.
    pub fn is_zero(&self) -> Result<bool> {
        self.pair.is_zero_all()
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let ctx = joint_context(self.context(), other.context());
        let n = self.context().len();
        let left: Vec<usize> = (0..n).collect();
        let right: Vec<usize> = (n..ctx.len()).collect();
        let lift2 = |f: &PpFormula, g: &PpFormula| -> Result<PpFormula> {
            f.lift(&ctx, &left)?.conjoin(&g.lift(&ctx, &right)?)
        };
        let pair = PpPair::new(lift2(self.top(), other.top())?, lift2(self.bottom(), other.bottom())?)?;
        let presentation = match (&self.presentation, &other.presentation) {
            (Some(g), Some(h)) => {
                let p = g.source().direct_sum(h.source())?;
                let n = g.target().direct_sum(h.target())?;
                Some(FpMorphism::new(p, n, g.matrix().block_diag(h.matrix())?)?)
            }
            _ => None,
        };
        Ok(Self { pair, presentation })
    }
}
