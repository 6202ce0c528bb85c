//! Positive-primitive formulas, pp-pairs, evaluation and implication.

mod formula;
mod pair;
mod parse;

pub use formula::{fresh_name, PpFormula, Var};
pub use pair::PpPair;
pub use parse::parse_formula;

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::linalg::{ConcreteMatrix, QuotientInvariants, ScalarRing};
    use crate::quiver::samples::a2;
    use crate::quiver::Quiver;
    use crate::repr::Representation;

    fn a2_rep(x: i64) -> Representation {
        let q = ScalarRing::Rationals;
        Representation::from_dims(Arc::new(a2()), q, &[1, 1], vec![ConcreteMatrix::from_i64(q, &[vec![x]])]).unwrap()
    }

    fn f(q: &Arc<Quiver>, s: &str) -> PpFormula {
        parse_formula(q, ScalarRing::Rationals, s).unwrap()
    }

    #[test]
    fn evaluation_of_divisibility() {
        let t = a2_rep(1);
        let q = t.quiver().clone();
        let phi = f(&q, "x2:2 | EX x1:1 . a*x1 = x2");
        assert_eq!(phi.evaluate(&t).unwrap().invariants(), QuotientInvariants::free(1));
        assert_eq!(phi.evaluate(&a2_rep(0)).unwrap().invariants(), QuotientInvariants::trivial());
    }

    #[test]
    fn closedness() {
        let q = Arc::new(a2());
        let top = f(&q, "x2:2 | x2 = x2");
        let bottom = f(&q, "x2:2 | EX x1:1 . a*x1 = x2");
        let p = PpPair::new(top.clone(), bottom).unwrap();
        assert!(p.is_closed(&a2_rep(1)).unwrap());
        assert!(!p.is_closed(&a2_rep(0)).unwrap());
        assert!(PpPair::new(top.clone(), top).unwrap().is_closed(&a2_rep(0)).unwrap());
    }

    #[test]
    fn implication_over_all_modules() {
        let q = Arc::new(a2());
        let top = f(&q, "x2:2 | x2 = x2");
        let div = f(&q, "x2:2 | EX x1:1 . a*x1 = x2");
        let zero = f(&q, "x2:2 | x2 = 0");
        assert!(!top.implies_all(&div).unwrap());
        assert!(div.implies_all(&top).unwrap());
        assert!(zero.implies_all(&div).unwrap());
        assert!(div.implies_all(&div.conjoin(&top).unwrap()).unwrap());
    }

    #[test]
    fn pair_normalization_is_idempotent() {
        let q = Arc::new(a2());
        let top = f(&q, "x:2 | EX y:1 . a*y = x");
        let bottom = f(&q, "x:2 | x = 0");
        let p = PpPair::new(top.clone(), bottom).unwrap();
        let again = PpPair::new(top, p.bottom().clone()).unwrap();
        assert_eq!(p, again);
        let reparsed = PpPair::new(
            f(&q, &p.top().to_string()),
            f(&q, &p.bottom().to_string()),
        )
        .unwrap();
        assert_eq!(reparsed, p);
    }

    #[test]
    fn sum_with_top_is_top() {
        let q = Arc::new(a2());
        let t = a2_rep(1).direct_sum(&a2_rep(0)).unwrap();
        let zero = f(&q, "x:1 | x = 0");
        let top = f(&q, "x:1 | x = x");
        let s = zero.sum(&top).unwrap();
        assert_eq!(s.evaluate(&t).unwrap(), top.evaluate(&t).unwrap());
    }

    #[test]
    fn integer_torsion_value() {
        let z = ScalarRing::Integers;
        let q = Arc::new(a2());
        let t = Representation::from_dims(q.clone(), z, &[1, 1], vec![ConcreteMatrix::from_i64(z, &[vec![1]])]).unwrap();
        let top = parse_formula(&q, z, "x:1 | x = x").unwrap();
        let even = parse_formula(&q, z, "x:1 | EX y:1 . 2*y = x").unwrap();
        let v = PpPair::new(top, even).unwrap().value(&t).unwrap();
        assert_eq!(v.free_rank, 0);
        assert_eq!(v.torsion, vec![2.into()]);
    }
}
