use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::ScalarRing;
use crate::pp::{PpFormula, PpPair};
use crate::quiver::{AlgebraElement, Quiver, TypedMatrix};
use crate::repr::Representation;

use super::object::{joint_context, AbObject};

/// Answer of a Serre-kernel membership query.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Membership {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Membership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Membership::Yes => "yes",
            Membership::No => "no",
            Membership::Unknown => "unknown",
        })
    }
}

/// A Serre subcategory of the free abelian category, given either as the
/// kernel of evaluation at a representation or as the closure of finitely
/// many generating objects.
#[derive(Clone, Debug)]
pub enum SerreKernelOracle {
    Model(Arc<Representation>),
    Axioms { generators: Vec<PpPair>, budget: usize },
}

impl SerreKernelOracle {
    pub fn model(t: Representation) -> Self {
        SerreKernelOracle::Model(Arc::new(t))
    }

    pub fn axioms(generators: Vec<PpPair>, budget: usize) -> Self {
        SerreKernelOracle::Axioms { generators, budget }
    }

    /// Membership of `obj`. Model mode is exact; axiom mode answers `Yes` or `Unknown`.
    pub fn in_kernel(&self, obj: &AbObject) -> Result<Membership> {
        match self {
            SerreKernelOracle::Model(t) => {
                if t.ring() != obj.ring() {
                    return Err(Error::RingMismatch(obj.ring().to_string(), t.ring().to_string()));
                }
                Ok(if obj.vanishes_on(t)? { Membership::Yes } else { Membership::No })
            }
            SerreKernelOracle::Axioms { generators, budget } => {
                if *budget == 0 {
                    return Err(Error::InvalidArgument("axiom search needs a positive budget".into()));
                }
                for g in generators {
                    if g.top().ring() != obj.ring() {
                        return Err(Error::RingMismatch(obj.ring().to_string(), g.top().ring().to_string()));
                    }
                    if g.top().quiver() != obj.quiver() {
                        return Err(Error::TypeMismatch("generator over another quiver".into()));
                    }
                }
                obj.quiver().require_acyclic()?;
                Saturation::new(obj, generators, *budget).run()
            }
        }
    }
}

/// Greedy growth of `cur` from the bottom of the queried pair towards its top.
///
/// Each step finds a term matrix `t` and a generator `phi_i / psi_i` with
/// `t(psi_i & t^-1 phi) <= cur`; the image `t(phi_i & t^-1 phi)` is then a
/// quotient of a subobject of the generator, so enlarging `cur` by it keeps
/// `cur / psi` inside the Serre closure.
struct Saturation<'a> {
    quiver: Arc<Quiver>,
    ring: ScalarRing,
    phi: PpFormula,
    cur: PpFormula,
    generators: &'a [PpPair],
    budget: usize,
}

impl<'a> Saturation<'a> {
    fn new(obj: &AbObject, generators: &'a [PpPair], budget: usize) -> Self {
        Self {
            quiver: obj.quiver().clone(),
            ring: obj.ring(),
            phi: obj.top().clone(),
            cur: obj.bottom().clone(),
            generators,
            budget,
        }
    }

    fn done(&self) -> Result<bool> {
        self.phi.implies_all(&self.cur)
    }

    fn run(mut self) -> Result<Membership> {
        if self.done()? {
            return Ok(Membership::Yes);
        }
        loop {
            let mut progress = false;
            for gi in 0..self.generators.len() {
                let g = self.generators[gi].clone();
                let atoms = self.atoms(&g)?;
                let positions: Vec<usize> = (0..atoms.len()).filter(|&p| !atoms[p].is_empty()).collect();
                for depth in 1..=positions.len() {
                    let mut choice = Vec::new();
                    match self.combinations(&g, &atoms, &positions, depth, 0, &mut choice)? {
                        Step::Finished => return Ok(Membership::Yes),
                        Step::OutOfBudget => return Ok(Membership::Unknown),
                        Step::Progress => progress = true,
                        Step::Nothing => {}
                    }
                }
            }
            if !progress {
                return Ok(Membership::Unknown);
            }
        }
    }

    /// Nonzero entry candidates `±path` for each matrix slot (row-major over context x generator).
    fn atoms(&self, g: &PpPair) -> Result<Vec<Vec<AlgebraElement>>> {
        let rows = self.phi.context_sorts();
        let cols = g.top().context_sorts();
        let signs: Vec<i64> = if self.ring.from_i64(-1) == self.ring.from_i64(1) { vec![1] } else { vec![1, -1] };
        let mut out = Vec::new();
        for &s in &rows {
            for &r in &cols {
                let mut slot = Vec::new();
                for p in self.quiver.path_basis(r, s)? {
                    for &c in &signs {
                        slot.push(AlgebraElement::term(self.ring, p.clone(), self.ring.from_i64(c)));
                    }
                }
                out.push(slot);
            }
        }
        Ok(out)
    }

    /// Enumerate matrices with nonzeros exactly at `depth` of the `positions`.
    fn combinations(
        &mut self,
        g: &PpPair,
        atoms: &[Vec<AlgebraElement>],
        positions: &[usize],
        depth: usize,
        start: usize,
        choice: &mut Vec<usize>,
    ) -> Result<Step> {
        if choice.len() == depth {
            let mut entries = Vec::new();
            return self.fill(g, atoms, choice, &mut entries);
        }
        let mut best = Step::Nothing;
        for k in start..positions.len() {
            choice.push(positions[k]);
            let s = self.combinations(g, atoms, positions, depth, k + 1, choice)?;
            choice.pop();
            match s {
                Step::Finished | Step::OutOfBudget => return Ok(s),
                Step::Progress => best = Step::Progress,
                Step::Nothing => {}
            }
        }
        Ok(best)
    }

    fn fill(
        &mut self,
        g: &PpPair,
        atoms: &[Vec<AlgebraElement>],
        slots: &[usize],
        entries: &mut Vec<AlgebraElement>,
    ) -> Result<Step> {
        if entries.len() == slots.len() {
            if self.budget == 0 {
                return Ok(Step::OutOfBudget);
            }
            self.budget -= 1;
            let rows = self.phi.context_sorts();
            let cols = g.top().context_sorts();
            let mut t = TypedMatrix::zeros(self.ring, rows, cols.clone());
            for (&slot, e) in slots.iter().zip(entries.iter()) {
                t.set(slot / cols.len(), slot % cols.len(), e.clone())?;
            }
            return self.try_step(g, &t);
        }
        let mut best = Step::Nothing;
        let slot = slots[entries.len()];
        for e in &atoms[slot] {
            entries.push(e.clone());
            let s = self.fill(g, atoms, slots, entries)?;
            entries.pop();
            match s {
                Step::Finished | Step::OutOfBudget => return Ok(s),
                Step::Progress => best = Step::Progress,
                Step::Nothing => {}
            }
        }
        Ok(best)
    }

    fn try_step(&mut self, g: &PpPair, t: &TypedMatrix) -> Result<Step> {
        let n = self.phi.context().len();
        let m = g.top().context().len();
        let ctx = joint_context(self.phi.context(), g.top().context());
        let x: Vec<usize> = (0..n).collect();
        let u: Vec<usize> = (n..n + m).collect();
        // x - t u = 0
        let a = TypedMatrix::identity(self.ring, self.phi.context_sorts()).hstack(&t.neg())?;
        let graph = PpFormula::equations(self.quiver.clone(), ctx.clone(), a)?;
        let pre = self.phi.lift(&ctx, &x)?.conjoin(&graph)?.project(&u)?;
        let image = |chi: &PpFormula| -> Result<PpFormula> {
            let names: Vec<String> = g.top().context().iter().map(|v| v.name.clone()).collect();
            let chi = chi.conjoin(&pre.with_context_names(&names)?)?;
            chi.lift(&ctx, &u)?.conjoin(&graph)?.project(&x)?.eliminate_units()
        };
        let small = image(g.bottom())?;
        if !small.implies_all(&self.cur)? {
            return Ok(Step::Nothing);
        }
        let big = image(g.top())?;
        if big.implies_all(&self.cur)? {
            return Ok(Step::Nothing);
        }
        let names: Vec<String> = self.cur.context().iter().map(|v| v.name.clone()).collect();
        self.cur = self.cur.sum(&big.with_context_names(&names)?)?.eliminate_units()?;
        if self.done()? {
            Ok(Step::Finished)
        } else {
            Ok(Step::Progress)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Step {
    Nothing,
    Progress,
    Finished,
    OutOfBudget,
}
