use std::fmt;

use super::formula::PpFormula;
use crate::error::{Error, Result};
use crate::linalg::{QuotientCoords, QuotientInvariants};
use crate::repr::Representation;

/// `top / bottom` with `bottom` implying `top`.
///
/// The constructor conjoins `top` onto `bottom` unless `bottom` already ends
/// with a copy of `top`'s equations, so construction is idempotent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PpPair {
    top: PpFormula,
    bottom: PpFormula,
}

impl PpPair {
    pub fn new(top: PpFormula, bottom: PpFormula) -> Result<Self> {
        if top.context_sorts() != bottom.context_sorts() || top.quiver() != bottom.quiver() {
            return Err(Error::ContextMismatch("top and bottom have different contexts".into()));
        }
        if top.ring() != bottom.ring() {
            return Err(Error::RingMismatch(top.ring().to_string(), bottom.ring().to_string()));
        }
        let names: Vec<String> = top.context().iter().map(|v| v.name.clone()).collect();
        let bottom = bottom.with_context_names(&names)?;
        let bottom = if ends_with(&bottom, &top) {
            bottom
        } else {
            bottom.conjoin(&top)?
        };
        Ok(Self { top, bottom })
    }

    pub fn top(&self) -> &PpFormula {
        &self.top
    }

    pub fn bottom(&self) -> &PpFormula {
        &self.bottom
    }

    pub fn quotient_coords(&self, t: &Representation) -> Result<QuotientCoords> {
        self.top.evaluate(t)?.quotient_coords(&self.bottom.evaluate(t)?)
    }

    /// Invariants of `top(T) / bottom(T)`.
    pub fn value(&self, t: &Representation) -> Result<QuotientInvariants> {
        Ok(self.quotient_coords(t)?.invariants())
    }

    /// The sequent `top -> bottom` holds in `t`.
    pub fn is_closed(&self, t: &Representation) -> Result<bool> {
        Ok(self.value(t)?.is_trivial())
    }

    /// The sequent `top -> bottom` holds in every module.
    pub fn is_zero_all(&self) -> Result<bool> {
        self.top.implies_all(&self.bottom)
    }
}

impl fmt::Display for PpPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.top, self.bottom)
    }
}

/// `f` is `g' & top` where the last equations and bound variables are a copy of `top`.
fn ends_with(f: &PpFormula, top: &PpFormula) -> bool {
    let (k, m) = (top.num_equations(), top.bound().len());
    let (n_eq, n_b) = (f.num_equations(), f.bound().len());
    if n_eq < k || n_b < m {
        return false;
    }
    if f.bound_sorts()[n_b - m..] != top.bound_sorts()[..] {
        return false;
    }
    for j in 0..n_eq {
        let in_tail = j >= n_eq - k;
        let brow = f.b().row(j);
        for (i, e) in brow.iter().enumerate() {
            let tail_col = i >= n_b - m;
            if in_tail && tail_col {
                if e != top.b().get(j - (n_eq - k), i - (n_b - m)) {
                    return false;
                }
            } else if in_tail != tail_col && !e.is_zero() {
                return false;
            }
        }
        if in_tail {
            let tj = j - (n_eq - k);
            if f.a().row_types()[j] != top.a().row_types()[tj] || f.a().row(j) != top.a().row(tj) {
                return false;
            }
        }
    }
    true
}
