use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fpmod::FpMorphism;
use crate::linalg::{ConcreteMatrix, LinearSolver, Scalar};
use crate::pp::{PpFormula, PpPair, Var};
use crate::quiver::{AlgebraElement, Quiver, TypedMatrix, VertexId};
use crate::repr::Representation;

use super::object::{joint_context, AbObject, Route};

/// Where the functionality sequents of a morphism are required to hold.
#[derive(Clone, Debug)]
pub enum Mode {
    /// In every module (morphisms of the free abelian category).
    AllModules,
    /// In one representation (morphisms of its Serre quotient).
    On(Arc<Representation>),
}

impl PartialEq for Mode {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Mode::AllModules, Mode::AllModules) => true,
            (Mode::On(a), Mode::On(b)) => Arc::ptr_eq(a, b) || a == b,
            _ => false,
        }
    }
}

impl Eq for Mode {}

impl Mode {
    fn implies(&self, f: &PpFormula, g: &PpFormula) -> Result<bool> {
        match self {
            Mode::AllModules => f.implies_all(g),
            Mode::On(t) => f.implies_on(g, t),
        }
    }
}

/// A pp-defined map: `theta` on the context `source ++ target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbMorphism {
    source: AbObject,
    target: AbObject,
    theta: PpFormula,
    mode: Mode,
    presentation: Option<FpMorphism>,
}

/// Outcome of each functionality sequent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MorphismCheck {
    pub within_pairs: bool,
    pub total: bool,
    pub respects_bottom: bool,
    pub zero_to_bottom: bool,
}

impl MorphismCheck {
    pub fn holds(&self) -> bool {
        self.within_pairs && self.total && self.respects_bottom && self.zero_to_bottom
    }
}

fn range(a: usize, b: usize) -> Vec<usize> {
    (a..b).collect()
}

/// Whether `theta` defines a morphism `source -> target` in `mode`.
pub fn check_morphism(theta: &PpFormula, source: &AbObject, target: &AbObject, mode: &Mode) -> Result<bool> {
    Ok(check_sequents(theta, source, target, mode)?.holds())
}

/// The four functionality sequents, individually.
pub fn check_sequents(theta: &PpFormula, source: &AbObject, target: &AbObject, mode: &Mode) -> Result<MorphismCheck> {
    let ns = source.context().len();
    let nt = target.context().len();
    let mut sorts = source.top().context_sorts();
    sorts.extend(target.top().context_sorts());
    if theta.context_sorts() != sorts {
        return Err(Error::ContextMismatch("theta must live on the source context followed by the target context".into()));
    }
    if let Mode::AllModules = mode {
        theta.quiver().require_acyclic()?;
    }
    let joint = theta.context();
    let src = range(0, ns);
    let tgt = range(ns, ns + nt);
    let both = source.top().lift(joint, &src)?.conjoin(&target.top().lift(joint, &tgt)?)?;
    let within_pairs = mode.implies(theta, &both)?;
    let total = mode.implies(source.top(), &theta.project(&src)?)?;
    let lhs = source.bottom().lift(joint, &src)?.conjoin(theta)?;
    let respects_bottom = mode.implies(&lhs, &target.bottom().lift(joint, &tgt)?)?;
    let zero_to_bottom = mode.implies(&theta.restrict_zero(&tgt)?, target.bottom())?;
    Ok(MorphismCheck {
        within_pairs,
        total,
        respects_bottom,
        zero_to_bottom,
    })
}

impl AbMorphism {
    /// Validated construction; fails unless all four sequents hold in `mode`.
    pub fn new(source: AbObject, target: AbObject, theta: PpFormula, mode: Mode) -> Result<Self> {
        let check = check_sequents(&theta, &source, &target, &mode)?;
        if !check.holds() {
            return Err(Error::InvalidMorphism(format!("functionality sequents fail: {check:?}")));
        }
        Ok(Self::new_unchecked(source, target, theta, mode))
    }

    pub(crate) fn new_unchecked(source: AbObject, target: AbObject, theta: PpFormula, mode: Mode) -> Self {
        let joint = joint_context(source.context(), target.context());
        let names: Vec<String> = joint.iter().map(|v| v.name.clone()).collect();
        let theta = theta.with_context_names(&names).expect("context sizes agree");
        Self {
            source,
            target,
            theta,
            mode,
            presentation: None,
        }
    }

    pub fn source(&self) -> &AbObject {
        &self.source
    }

    pub fn target(&self) -> &AbObject {
        &self.target
    }

    pub fn theta(&self) -> &PpFormula {
        &self.theta
    }

    pub fn mode(&self) -> &Mode {
        &self.mode
    }

    /// The module map `P' -> P` this morphism was induced from, if any.
    pub fn presentation(&self) -> Option<&FpMorphism> {
        self.presentation.as_ref()
    }

    pub fn with_mode(&self, mode: Mode) -> Result<Self> {
        Self::new(self.source.clone(), self.target.clone(), self.theta.clone(), mode)
    }

    fn ns(&self) -> usize {
        self.source.context().len()
    }

    fn nt(&self) -> usize {
        self.target.context().len()
    }

    /// Map between presented objects induced by `f: P' -> P`, where the source
    /// is presented by `g: P -> N` and the target by `g': P' -> N'`.
    pub fn from_presentations(source: &AbObject, target: &AbObject, f: &FpMorphism) -> Result<Self> {
        let g = source.presentation().ok_or(Error::MissingPresentation)?;
        let g2 = target.presentation().ok_or(Error::MissingPresentation)?;
        if f.target() != g.source() || f.source() != g2.source() {
            return Err(Error::EndpointMismatch("f must run from the target's P to the source's P".into()));
        }
        let ring = source.ring();
        let p2 = g2.source().gens().to_vec();
        // x' = F x : rows [-F | I]
        let a = f.matrix().neg().hstack(&TypedMatrix::identity(ring, p2))?;
        let joint = joint_context(source.context(), target.context());
        let graph = PpFormula::equations(source.quiver().clone(), joint.clone(), a)?;
        let ns = source.context().len();
        let theta = source.top().lift(&joint, &range(0, ns))?.conjoin(&graph)?;
        let mut m = Self::new(source.clone(), target.clone(), theta, Mode::AllModules)?;
        m.presentation = Some(f.clone());
        Ok(m)
    }

    /// The universal representation on an arrow: `theta = (alpha x = x')`.
    pub fn delta(quiver: Arc<Quiver>, ring: crate::linalg::ScalarRing, arrow: crate::quiver::ArrowId) -> Result<Self> {
        let ar = quiver.arrow(arrow).clone();
        let src = AbObject::delta(quiver.clone(), ring, ar.src)?;
        let tgt = AbObject::delta(quiver.clone(), ring, ar.tgt)?;
        let f = TypedMatrix::from_rows(
            ring,
            vec![ar.tgt],
            vec![ar.src],
            vec![vec![AlgebraElement::arrow(ring, &quiver, arrow)]],
        )?;
        let f = FpMorphism::new(
            tgt.presentation().expect("delta is presented").source().clone(),
            src.presentation().expect("delta is presented").source().clone(),
            f,
        )?;
        Self::from_presentations(&src, &tgt, &f)
    }

    pub fn identity(obj: &AbObject, mode: Mode) -> Result<Self> {
        let joint = joint_context(obj.context(), obj.context());
        let n = obj.context().len();
        let theta = obj.top().lift(&joint, &range(0, n))?.conjoin(&diagonal_formula(obj, &joint)?)?;
        Ok(Self::new_unchecked(obj.clone(), obj.clone(), theta, mode))
    }

    pub fn zero(source: &AbObject, target: &AbObject, mode: Mode) -> Result<Self> {
        let joint = joint_context(source.context(), target.context());
        let ns = source.context().len();
        let tgt = PpFormula::zero(source.quiver().clone(), source.ring(), target.context().to_vec())?;
        let theta = source
            .top()
            .lift(&joint, &range(0, ns))?
            .conjoin(&tgt.lift(&joint, &range(ns, joint.len()))?)?;
        Ok(Self::new_unchecked(source.clone(), target.clone(), theta, mode))
    }

    fn check_composable(&self, next: &Self) -> Result<()> {
        if self.target.pair() != next.source.pair() {
            return Err(Error::EndpointMismatch("target of the first map is not the source of the second".into()));
        }
        if self.mode != next.mode {
            return Err(Error::EndpointMismatch("maps live in different categories".into()));
        }
        Ok(())
    }

    /// `next ∘ self`: `EX y . theta_self(x, y) & theta_next(y, z)`.
    pub fn then(&self, next: &Self) -> Result<Self> {
        self.check_composable(next)?;
        let xy = joint_context(self.source.context(), self.target.context());
        let xyz = joint_context(&xy, next.target.context());
        let (nx, ny) = (self.ns(), self.nt());
        let nz = next.nt();
        let f = self.theta.lift(&xyz, &range(0, nx + ny))?;
        let mut pos = range(nx, nx + ny);
        pos.extend(range(nx + ny, nx + ny + nz));
        let g = next.theta.lift(&xyz, &pos)?;
        let mut keep = range(0, nx);
        keep.extend(range(nx + ny, nx + ny + nz));
        let theta = f.conjoin(&g)?.project(&keep)?;
        let mut out = Self::new_unchecked(self.source.clone(), next.target.clone(), theta, self.mode.clone());
        if let (Some(a), Some(b)) = (&self.presentation, &next.presentation) {
            out.presentation = Some(b.then(a)?);
        }
        Ok(out)
    }

    fn check_parallel(&self, other: &Self) -> Result<()> {
        if self.source.pair() != other.source.pair() || self.target.pair() != other.target.pair() {
            return Err(Error::EndpointMismatch("maps have different endpoints".into()));
        }
        if self.mode != other.mode {
            return Err(Error::EndpointMismatch("maps live in different categories".into()));
        }
        Ok(())
    }

    /// Pointwise sum: `EX u, v . theta(x, u) & theta'(x, v) & x' = u + v`.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_parallel(other)?;
        let (ns, nt) = (self.ns(), self.nt());
        let xx = joint_context(self.source.context(), self.target.context());
        let xxu = joint_context(&xx, self.target.context());
        let ctx = joint_context(&xxu, self.target.context());
        let u = range(ns + nt, ns + 2 * nt);
        let v = range(ns + 2 * nt, ns + 3 * nt);
        let mut pf = range(0, ns);
        pf.extend(u.iter().copied());
        let mut pg = range(0, ns);
        pg.extend(v.iter().copied());
        let f = self.theta.lift(&ctx, &pf)?;
        let g = other.theta.lift(&ctx, &pg)?;
        let sum = linear_relation(self, &ctx, &[(ns, 1), (ns + nt, -1), (ns + 2 * nt, -1)], nt)?;
        let theta = f.conjoin(&g)?.conjoin(&sum)?.project(&range(0, ns + nt))?;
        Ok(Self::new_unchecked(self.source.clone(), self.target.clone(), theta, self.mode.clone()))
    }

    pub fn neg(&self) -> Result<Self> {
        let (ns, nt) = (self.ns(), self.nt());
        let xx = joint_context(self.source.context(), self.target.context());
        let ctx = joint_context(&xx, self.target.context());
        let mut pf = range(0, ns);
        pf.extend(range(ns + nt, ns + 2 * nt));
        let f = self.theta.lift(&ctx, &pf)?;
        let rel = linear_relation(self, &ctx, &[(ns, 1), (ns + nt, 1)], nt)?;
        let theta = f.conjoin(&rel)?.project(&range(0, ns + nt))?;
        Ok(Self::new_unchecked(self.source.clone(), self.target.clone(), theta, self.mode.clone()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg()?)
    }

    /// Kernel object `phi_k / psi_src` with `phi_k(x) = phi_src(x) & EX x' . theta & psi_tgt(x')`,
    /// and its inclusion.
    pub fn kernel(&self) -> Result<(AbObject, AbMorphism)> {
        let (ns, nt) = (self.ns(), self.nt());
        let joint = self.theta.context().to_vec();
        let cond = self
            .theta
            .conjoin(&self.target.bottom().lift(&joint, &range(ns, ns + nt))?)?
            .project(&range(0, ns))?;
        let names: Vec<String> = self.source.context().iter().map(|v| v.name.clone()).collect();
        let phi_k = self.source.top().conjoin(&cond.with_context_names(&names)?)?;
        let k = AbObject::new(PpPair::new(phi_k, self.source.bottom().clone())?);
        let inc = Self::inclusion(&k, &self.source, self.mode.clone())?;
        Ok((k, inc))
    }

    /// Cokernel object `phi_tgt / (psi_tgt + im theta)` and its projection.
    pub fn cokernel(&self) -> Result<(AbObject, AbMorphism)> {
        let (ns, nt) = (self.ns(), self.nt());
        let names: Vec<String> = self.target.context().iter().map(|v| v.name.clone()).collect();
        let image = self.theta.project(&range(ns, ns + nt))?.with_context_names(&names)?;
        let bottom = self.target.bottom().sum(&image)?;
        let c = AbObject::new(PpPair::new(self.target.top().clone(), bottom)?);
        let proj = Self::inclusion(&self.target, &c, self.mode.clone())?;
        Ok((c, proj))
    }

    /// The map `x |-> x` between two pairs on the same context (a valid
    /// morphism when `top(a) <= top(b)` and `bottom(a) <= bottom(b)`).
    pub fn inclusion(a: &AbObject, b: &AbObject, mode: Mode) -> Result<Self> {
        if a.top().context_sorts() != b.top().context_sorts() {
            return Err(Error::ContextMismatch("inclusion between different contexts".into()));
        }
        let joint = joint_context(a.context(), b.context());
        let n = a.context().len();
        let theta = a.top().lift(&joint, &range(0, n))?.conjoin(&diagonal_formula(a, &joint)?)?;
        Ok(Self::new_unchecked(a.clone(), b.clone(), theta, mode))
    }

    /// Matrix of the value at `t`, in the canonical coordinates of both ends.
    pub fn evaluate(&self, t: &Representation, route: Route) -> Result<ConcreteMatrix> {
        let sc = self.source.coords(t, route)?;
        let tc = self.target.coords(t, route)?;
        let ring = t.ring();
        let cols: Vec<Vec<Scalar>> = match route {
            Route::Pp => {
                let sol = self.theta.evaluate(t)?;
                let g = sol.generators();
                let nx: usize = sc.larger().ambient().dim();
                let gx = g.col_range(0, nx).transpose();
                let solver = LinearSolver::new(&gx);
                let gy = g.col_range(nx, g.cols()).transpose();
                (0..sc.len())
                    .map(|j| {
                        let c = solver
                            .solve(&sc.lift(j))
                            .ok_or_else(|| Error::InvalidMorphism("theta is not total at this representation".into()))?;
                        tc.coords_of(&gy.mul_vec(&c)?)
                    })
                    .collect::<Result<_>>()?
            }
            Route::Presentation => {
                let f = self.presentation.as_ref().ok_or(Error::MissingPresentation)?;
                let m = t.evaluate_typed_matrix(f.matrix())?;
                (0..sc.len())
                    .map(|j| tc.coords_of(&m.mul_vec(&sc.lift(j))?))
                    .collect::<Result<_>>()?
            }
        };
        Ok(ConcreteMatrix::from_fn(ring, tc.len(), sc.len(), |i, j| cols[j][i].clone()))
    }

    /// Whether the two maps agree after evaluation at `t`.
    pub fn equal_in_quotient(&self, other: &Self, t: &Representation) -> Result<bool> {
        if self.source.pair() != other.source.pair() || self.target.pair() != other.target.pair() {
            return Err(Error::EndpointMismatch("maps have different endpoints".into()));
        }
        Ok(self.evaluate(t, Route::Pp)? == other.evaluate(t, Route::Pp)?)
    }

    /// Isomorphism in the free abelian category: kernel and cokernel vanish in every module.
    pub fn is_iso_all(&self) -> Result<bool> {
        Ok(self.kernel()?.0.is_zero()? && self.cokernel()?.0.is_zero()?)
    }

    /// Isomorphism after evaluation at `t`.
    pub fn is_iso_on(&self, t: &Representation) -> Result<bool> {
        Ok(self.kernel()?.0.vanishes_on(t)? && self.cokernel()?.0.vanishes_on(t)?)
    }
}

/// `x_i - x'_i = 0` for the doubled context of `obj`.
fn diagonal_formula(obj: &AbObject, joint: &[Var]) -> Result<PpFormula> {
    let n = obj.context().len();
    let ring = obj.ring();
    let sorts: Vec<VertexId> = obj.top().context_sorts();
    let id = TypedMatrix::identity(ring, sorts);
    let a = id.hstack(&id.neg())?;
    debug_assert_eq!(joint.len(), 2 * n);
    PpFormula::equations(obj.quiver().clone(), joint.to_vec(), a)
}

/// `sum_k sign_k * x[start_k + i] = 0` for each `i < len`, on `ctx`.
fn linear_relation(m: &AbMorphism, ctx: &[Var], blocks: &[(usize, i64)], len: usize) -> Result<PpFormula> {
    let ring = m.source.ring();
    let sorts: Vec<VertexId> = ctx.iter().map(|v| v.sort).collect();
    let row_types: Vec<VertexId> = sorts[blocks[0].0..blocks[0].0 + len].to_vec();
    let mut a = TypedMatrix::zeros(ring, row_types, sorts.clone());
    for i in 0..len {
        for &(start, sign) in blocks {
            let e = AlgebraElement::scalar(ring, sorts[start + i], ring.from_i64(sign));
            a.set(i, start + i, e)?;
        }
    }
    PpFormula::equations(m.source.quiver().clone(), ctx.to_vec(), a)
}
