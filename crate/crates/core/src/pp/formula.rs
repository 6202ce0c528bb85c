use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::fpmod::{element_satisfies, free_realization};
use crate::linalg::{GroupHom, Scalar, ScalarRing, SubobjectData};
use crate::quiver::{is_identifier, AlgebraElement, Quiver, TypedMatrix, VertexId};
use crate::repr::Representation;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Var {
    pub name: String,
    pub sort: VertexId,
}

impl Var {
    pub fn new(name: impl Into<String>, sort: VertexId) -> Self {
        Self {
            name: name.into(),
            sort,
        }
    }
}

pub fn fresh_name(base: &str, taken: &HashSet<String>) -> String {
    if !taken.contains(base) {
        return base.to_string();
    }
    (1..)
        .map(|i| format!("{base}_{i}"))
        .find(|n| !taken.contains(n))
        .expect("unbounded supply of names")
}

/// `EX y . A x + B y = 0` with one row per equation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PpFormula {
    quiver: Arc<Quiver>,
    context: Vec<Var>,
    bound: Vec<Var>,
    a: TypedMatrix,
    b: TypedMatrix,
}

impl PpFormula {
    pub fn new(quiver: Arc<Quiver>, context: Vec<Var>, bound: Vec<Var>, a: TypedMatrix, b: TypedMatrix) -> Result<Self> {
        if context.is_empty() {
            return Err(Error::ContextMismatch("empty context".into()));
        }
        let ctx_sorts: Vec<VertexId> = context.iter().map(|v| v.sort).collect();
        let bound_sorts: Vec<VertexId> = bound.iter().map(|v| v.sort).collect();
        if a.col_types() != ctx_sorts.as_slice() || b.col_types() != bound_sorts.as_slice() {
            return Err(Error::TypeMismatch("equation blocks do not match the variable sorts".into()));
        }
        if a.row_types() != b.row_types() {
            return Err(Error::TypeMismatch("equation blocks disagree on equation sorts".into()));
        }
        if a.ring() != b.ring() {
            return Err(Error::RingMismatch(a.ring().to_string(), b.ring().to_string()));
        }
        let n = quiver.num_vertices();
        if a.row_types().iter().chain(&ctx_sorts).chain(&bound_sorts).any(|v| v.0 >= n) {
            return Err(Error::TypeMismatch("formula typed over another quiver".into()));
        }
        let mut seen = HashSet::new();
        for v in context.iter().chain(&bound) {
            if !is_identifier(&v.name) || v.name.chars().all(|c| c.is_ascii_digit()) || v.name == "EX" {
                return Err(Error::ContextMismatch(format!("bad variable name `{}`", v.name)));
            }
            if !seen.insert(v.name.clone()) {
                return Err(Error::ContextMismatch(format!("variable `{}` declared twice", v.name)));
            }
        }
        let keep: Vec<usize> = (0..a.rows())
            .filter(|&j| a.row(j).iter().chain(b.row(j)).any(|e| !e.is_zero()))
            .collect();
        let (a, b) = if keep.len() == a.rows() {
            (a, b)
        } else {
            (a.select_rows(&keep), b.select_rows(&keep))
        };
        Ok(Self {
            quiver,
            context,
            bound,
            a,
            b,
        })
    }

    /// The formula `x = x` on a context: no equations.
    pub fn top(quiver: Arc<Quiver>, ring: ScalarRing, context: Vec<Var>) -> Result<Self> {
        let sorts: Vec<VertexId> = context.iter().map(|v| v.sort).collect();
        let a = TypedMatrix::zeros(ring, Vec::new(), sorts);
        let b = TypedMatrix::zeros(ring, Vec::new(), Vec::new());
        Self::new(quiver, context, Vec::new(), a, b)
    }

    /// Every context variable is zero.
    pub fn zero(quiver: Arc<Quiver>, ring: ScalarRing, context: Vec<Var>) -> Result<Self> {
        let sorts: Vec<VertexId> = context.iter().map(|v| v.sort).collect();
        let a = TypedMatrix::identity(ring, sorts.clone());
        let b = TypedMatrix::zeros(ring, sorts, Vec::new());
        Self::new(quiver, context, Vec::new(), a, b)
    }

    /// Quantifier-free system `A x = 0`.
    pub fn equations(quiver: Arc<Quiver>, context: Vec<Var>, a: TypedMatrix) -> Result<Self> {
        let b = TypedMatrix::zeros(a.ring(), a.row_types().to_vec(), Vec::new());
        Self::new(quiver, context, Vec::new(), a, b)
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn ring(&self) -> ScalarRing {
        self.a.ring()
    }

    pub fn context(&self) -> &[Var] {
        &self.context
    }

    pub fn bound(&self) -> &[Var] {
        &self.bound
    }

    pub fn context_sorts(&self) -> Vec<VertexId> {
        self.context.iter().map(|v| v.sort).collect()
    }

    pub fn bound_sorts(&self) -> Vec<VertexId> {
        self.bound.iter().map(|v| v.sort).collect()
    }

    pub fn a(&self) -> &TypedMatrix {
        &self.a
    }

    pub fn b(&self) -> &TypedMatrix {
        &self.b
    }

    pub fn num_equations(&self) -> usize {
        self.a.rows()
    }

    fn taken_names(&self) -> HashSet<String> {
        self.context.iter().chain(&self.bound).map(|v| v.name.clone()).collect()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.quiver != other.quiver {
            return Err(Error::ContextMismatch("formulas over different quivers".into()));
        }
        if self.ring() != other.ring() {
            return Err(Error::RingMismatch(self.ring().to_string(), other.ring().to_string()));
        }
        if self.context_sorts() != other.context_sorts() {
            return Err(Error::ContextMismatch("contexts have different sorts".into()));
        }
        Ok(())
    }

    /// Same formula with the context variables renamed; clashing bound variables are renamed too.
    pub fn with_context_names(&self, names: &[String]) -> Result<Self> {
        if names.len() != self.context.len() {
            return Err(Error::ContextMismatch("wrong number of names".into()));
        }
        let context: Vec<Var> = self
            .context
            .iter()
            .zip(names)
            .map(|(v, n)| Var::new(n.clone(), v.sort))
            .collect();
        let mut taken: HashSet<String> = context.iter().map(|v| v.name.clone()).collect();
        let bound = self
            .bound
            .iter()
            .map(|v| {
                let n = fresh_name(&v.name, &taken);
                taken.insert(n.clone());
                Var::new(n, v.sort)
            })
            .collect();
        Self::new(self.quiver.clone(), context, bound, self.a.clone(), self.b.clone())
    }

    /// Bound variables of `other` renamed away from the names used here.
    fn fresh_bound_for(&self, other: &Self) -> Vec<Var> {
        let mut taken = self.taken_names();
        other
            .bound
            .iter()
            .map(|v| {
                let n = fresh_name(&v.name, &taken);
                taken.insert(n.clone());
                Var::new(n, v.sort)
            })
            .collect()
    }

    /// Conjunction; the context (and its names) of `self` is kept.
    pub fn conjoin(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut bound = self.bound.clone();
        bound.extend(self.fresh_bound_for(other));
        let a = self.a.vstack(&other.a)?;
        let b = self.b.block_diag(&other.b)?;
        Self::new(self.quiver.clone(), self.context.clone(), bound, a, b)
    }

    /// Existentially quantify every context variable not in `keep` (kept in the given order).
    pub fn project(&self, keep: &[usize]) -> Result<Self> {
        if keep.iter().any(|&i| i >= self.context.len()) {
            return Err(Error::ContextMismatch("projection index out of range".into()));
        }
        let dropped: Vec<usize> = (0..self.context.len()).filter(|i| !keep.contains(i)).collect();
        let context = keep.iter().map(|&i| self.context[i].clone()).collect();
        let mut bound: Vec<Var> = dropped.iter().map(|&i| self.context[i].clone()).collect();
        bound.extend(self.bound.iter().cloned());
        let a = self.a.select_cols(keep);
        let b = self.a.select_cols(&dropped).hstack(&self.b)?;
        Self::new(self.quiver.clone(), context, bound, a, b)
    }

    /// Substitute zero for every context variable not in `keep`.
    pub fn restrict_zero(&self, keep: &[usize]) -> Result<Self> {
        if keep.iter().any(|&i| i >= self.context.len()) {
            return Err(Error::ContextMismatch("index out of range".into()));
        }
        let context = keep.iter().map(|&i| self.context[i].clone()).collect();
        Self::new(self.quiver.clone(), context, self.bound.clone(), self.a.select_cols(keep), self.b.clone())
    }

    /// Re-express over a larger context: variable `i` becomes `context[positions[i]]`.
    /// Repeated positions identify variables.
    pub fn lift(&self, context: &[Var], positions: &[usize]) -> Result<Self> {
        if positions.len() != self.context.len() {
            return Err(Error::ContextMismatch("one position per variable expected".into()));
        }
        for (v, &p) in self.context.iter().zip(positions) {
            if context.get(p).map(|w| w.sort) != Some(v.sort) {
                return Err(Error::ContextMismatch(format!("variable `{}` placed at a slot of another sort", v.name)));
            }
        }
        let ring = self.ring();
        let sorts: Vec<VertexId> = context.iter().map(|v| v.sort).collect();
        let mut a = TypedMatrix::zeros(ring, self.a.row_types().to_vec(), sorts);
        for j in 0..self.a.rows() {
            for (i, &p) in positions.iter().enumerate() {
                let e = a.get(j, p).add(self.a.get(j, i))?;
                a.set(j, p, e)?;
            }
        }
        let mut taken: HashSet<String> = context.iter().map(|v| v.name.clone()).collect();
        let bound = self
            .bound
            .iter()
            .map(|v| {
                let n = fresh_name(&v.name, &taken);
                taken.insert(n.clone());
                Var::new(n, v.sort)
            })
            .collect();
        Self::new(self.quiver.clone(), context.to_vec(), bound, a, self.b.clone())
    }

    /// `{u + v : self(u), other(v)}`.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let ring = self.ring();
        let ctx_sorts = self.context_sorts();
        let mut taken = self.taken_names();
        let mut fresh = |base: &str| {
            let n = fresh_name(base, &taken);
            taken.insert(n.clone());
            n
        };
        let u: Vec<Var> = self.context.iter().map(|v| Var::new(fresh(&format!("{}_s", v.name)), v.sort)).collect();
        let y: Vec<Var> = self.bound.iter().map(|v| Var::new(fresh(&v.name), v.sort)).collect();
        let y2: Vec<Var> = other.bound.iter().map(|v| Var::new(fresh(&v.name), v.sort)).collect();
        let mut bound = u;
        bound.extend(y);
        bound.extend(y2);

        let zeros = |rows: &[VertexId], cols: Vec<VertexId>| TypedMatrix::zeros(ring, rows.to_vec(), cols);
        // self(u, y): [0 | A, B, 0]
        let r1 = self.a.row_types();
        let a1 = zeros(r1, ctx_sorts.clone());
        let b1 = self.a.hstack(&self.b)?.hstack(&zeros(r1, other.bound_sorts()))?;
        // other(x - u, y'): [A' | -A', 0, B']
        let r2 = other.a.row_types();
        let a2 = other.a.clone();
        let b2 = other
            .a
            .neg()
            .hstack(&zeros(r2, self.bound_sorts()))?
            .hstack(&other.b)?;
        Self::new(self.quiver.clone(), self.context.clone(), bound, a1.vstack(&a2)?, b1.vstack(&b2)?)
    }

    /// Solution set in the product of the fibers at the context sorts.
    pub fn evaluate(&self, t: &Representation) -> Result<SubobjectData> {
        if **t.quiver() != *self.quiver {
            return Err(Error::TypeMismatch("representation of another quiver".into()));
        }
        if t.ring() != self.ring() {
            return Err(Error::RingMismatch(self.ring().to_string(), t.ring().to_string()));
        }
        let mut sorts = self.context_sorts();
        sorts.extend(self.bound_sorts());
        let joint = t.ambient(&sorts);
        let eqs = t.ambient(self.a.row_types());
        let m = t.evaluate_typed_matrix(&self.a.hstack(&self.b)?)?;
        let sol = GroupHom::new(joint, eqs, m)?.kernel();
        sol.project(0..self.context.len())
    }

    /// Whether the sequent `self -> other` holds in every module.
    pub fn implies_all(&self, other: &Self) -> Result<bool> {
        self.check_compatible(other)?;
        if self == other {
            return Ok(true);
        }
        let (_, tuple) = free_realization(self)?;
        element_satisfies(&tuple, other)
    }

    /// Whether the sequent `self -> other` holds in `t`.
    pub fn implies_on(&self, other: &Self, t: &Representation) -> Result<bool> {
        self.check_compatible(other)?;
        other.evaluate(t)?.contains(&self.evaluate(t)?)
    }

    pub fn equivalent_all(&self, other: &Self) -> Result<bool> {
        Ok(self.implies_all(other)? && other.implies_all(self)?)
    }

    /// Eliminate bound variables that occur with a unit scalar coefficient.
    pub fn eliminate_units(&self) -> Result<Self> {
        let ring = self.ring();
        let mut f = self.clone();
        'outer: loop {
            for r in 0..f.b.rows() {
                for j in 0..f.b.cols() {
                    let e = f.b.get(r, j);
                    let unit = match e.terms().collect::<Vec<_>>().as_slice() {
                        [(p, c)] if p.is_trivial() && ring.is_unit(c) => ring.inv(c).expect("unit"),
                        _ => continue,
                    };
                    f = f.pivot_out(r, j, &unit)?;
                    continue 'outer;
                }
            }
            return Ok(f);
        }
    }

    // Solve equation `r` for bound variable `j` (coefficient `c * e`, `unit = c^-1`) and substitute.
    fn pivot_out(&self, r: usize, j: usize, unit: &Scalar) -> Result<Self> {
        let ab = self.a.hstack(&self.b)?;
        let nctx = self.context.len();
        let col = nctx + j;
        let mut rows = Vec::new();
        let mut row_types = Vec::new();
        for k in 0..ab.rows() {
            if k == r {
                continue;
            }
            let factor = ab.get(k, col).scale(unit);
            let mut row = ab.row(k).to_vec();
            if !factor.is_zero() {
                for (i, e) in row.iter_mut().enumerate() {
                    *e = e.sub(&factor.mul(ab.get(r, i))?)?;
                }
            }
            rows.push(row);
            row_types.push(ab.row_types()[k]);
        }
        let all_types = ab.col_types().to_vec();
        let m = TypedMatrix::from_rows(self.ring(), row_types, all_types, rows)?;
        let ctx_idx: Vec<usize> = (0..nctx).collect();
        let bound_idx: Vec<usize> = (0..self.bound.len()).filter(|&i| i != j).map(|i| nctx + i).collect();
        let mut bound = self.bound.clone();
        bound.remove(j);
        Self::new(self.quiver.clone(), self.context.clone(), bound, m.select_cols(&ctx_idx), m.select_cols(&bound_idx))
    }

    fn write_vars(&self, f: &mut fmt::Formatter<'_>, vars: &[Var]) -> fmt::Result {
        let parts: Vec<String> = vars
            .iter()
            .map(|v| format!("{}:{}", v.name, self.quiver.vertex_name(v.sort)))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

fn format_term(q: &Quiver, first: bool, c: &Scalar, path: &crate::quiver::Path, var: &str) -> String {
    let negative = c.is_negative();
    let mag = c.abs();
    let mut s = String::new();
    if first {
        if negative {
            s.push('-');
        }
    } else {
        s.push_str(if negative { " - " } else { " + " });
    }
    if !mag.is_one() {
        s.push_str(&format!("{mag}*"));
    }
    for a in path.arrows().iter().rev() {
        s.push_str(&q.arrow(*a).name);
        s.push('*');
    }
    s.push_str(var);
    s
}

impl fmt::Display for PpFormula {
    /// Prints in the formula language accepted by [`super::parse_formula`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_vars(f, &self.context)?;
        write!(f, " | ")?;
        if !self.bound.is_empty() {
            write!(f, "EX ")?;
            self.write_vars(f, &self.bound)?;
            write!(f, " . ")?;
        }
        if self.a.rows() == 0 {
            let x = &self.context[0].name;
            return write!(f, "{x} = {x}");
        }
        let vars: Vec<&Var> = self.context.iter().chain(&self.bound).collect();
        let eqs: Vec<String> = (0..self.a.rows())
            .map(|j| {
                let entries: Vec<&AlgebraElement> = self.a.row(j).iter().chain(self.b.row(j)).collect();
                let mut s = String::new();
                for (e, v) in entries.iter().zip(&vars) {
                    for (p, c) in e.terms() {
                        s.push_str(&format_term(&self.quiver, s.is_empty(), c, p, &v.name));
                    }
                }
                s.push_str(" = 0");
                s
            })
            .collect();
        write!(f, "{}", eqs.join(" & "))
    }
}
