use crate::error::{Error, Result};
use crate::linalg::QuotientInvariants;
use crate::pp::PpPair;
use crate::repr::Representation;

use super::object::{AbObject, Route};

/// Verdict of a bounded comparison of regular theories. Agreement only
/// speaks for the probe set that was used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TheoryVerdict {
    Agree { probes: usize },
    Disagree { index: usize, witness: PpPair, closed_on_first: bool },
}

impl TheoryVerdict {
    pub fn agrees(&self) -> bool {
        matches!(self, TheoryVerdict::Agree { .. })
    }
}

fn check_same_category(t: &Representation, t2: &Representation) -> Result<()> {
    if t.quiver() != t2.quiver() {
        return Err(Error::TypeMismatch("representations of different quivers".into()));
    }
    if t.ring() != t2.ring() {
        return Err(Error::RingMismatch(t.ring().to_string(), t2.ring().to_string()));
    }
    Ok(())
}

/// Compare which probe pairs close on `t` and on `t2`; the first difference is the witness.
pub fn same_regular_theory_bounded(t: &Representation, t2: &Representation, probes: &[PpPair]) -> Result<TheoryVerdict> {
    check_same_category(t, t2)?;
    for (index, p) in probes.iter().enumerate() {
        let a = p.is_closed(t)?;
        let b = p.is_closed(t2)?;
        if a != b {
            return Ok(TheoryVerdict::Disagree {
                index,
                witness: p.clone(),
                closed_on_first: a,
            });
        }
    }
    Ok(TheoryVerdict::Agree { probes: probes.len() })
}

/// Value at `t2` of an object of the quotient attached to `t`.
pub fn induced_functor_eval(t: &Representation, t2: &Representation, obj: &AbObject) -> Result<QuotientInvariants> {
    check_same_category(t, t2)?;
    obj.evaluate(t2, Route::Pp)
}
