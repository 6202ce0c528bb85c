use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{ArrowId, Quiver, VertexId};
use crate::error::{Error, Result};
use crate::linalg::{Scalar, ScalarRing};

/// A path; `arrows` is in application order (first arrow applied first).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    src: VertexId,
    tgt: VertexId,
    arrows: Vec<ArrowId>,
}

impl Path {
    pub fn trivial(v: VertexId) -> Self {
        Self {
            src: v,
            tgt: v,
            arrows: Vec::new(),
        }
    }

    pub fn arrow(q: &Quiver, a: ArrowId) -> Self {
        let ar = q.arrow(a);
        Self {
            src: ar.src,
            tgt: ar.tgt,
            arrows: vec![a],
        }
    }

    /// Build from arrows in application order, checking composability.
    pub fn from_arrows(q: &Quiver, src: VertexId, arrows: &[ArrowId]) -> Result<Self> {
        let mut p = Path::trivial(src);
        for &a in arrows {
            p = p.then_arrow(q, a)?;
        }
        Ok(p)
    }

    pub fn src(&self) -> VertexId {
        self.src
    }

    pub fn tgt(&self) -> VertexId {
        self.tgt
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn then_arrow(&self, q: &Quiver, a: ArrowId) -> Result<Self> {
        let ar = q.arrow(a);
        if ar.src != self.tgt {
            return Err(Error::TypeMismatch(format!(
                "arrow `{}` does not start at `{}`",
                ar.name,
                q.vertex_name(self.tgt)
            )));
        }
        let mut arrows = self.arrows.clone();
        arrows.push(a);
        Ok(Self {
            src: self.src,
            tgt: ar.tgt,
            arrows,
        })
    }

    /// `self` followed by `next`, when composable.
    pub fn then(&self, next: &Path) -> Option<Path> {
        if self.tgt != next.src {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&next.arrows);
        Some(Path {
            src: self.src,
            tgt: next.tgt,
            arrows,
        })
    }

    /// Written as `b*a` for "a then b"; trivial paths print as `e_v`.
    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            return format!("e_{}", q.vertex_name(self.src));
        }
        self.arrows
            .iter()
            .rev()
            .map(|a| q.arrow(*a).name.as_str())
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.src.cmp(&other.src))
            .then_with(|| self.tgt.cmp(&other.tgt))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Element of the path algebra with fixed endpoints: a finite combination of
/// parallel paths. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    ring: ScalarRing,
    src: VertexId,
    tgt: VertexId,
    terms: BTreeMap<Path, Scalar>,
}

impl AlgebraElement {
    pub fn zero(ring: ScalarRing, src: VertexId, tgt: VertexId) -> Self {
        Self {
            ring,
            src,
            tgt,
            terms: BTreeMap::new(),
        }
    }

    /// The local identity `e_v`.
    pub fn identity(ring: ScalarRing, v: VertexId) -> Self {
        Self::path(ring, Path::trivial(v))
    }

    pub fn path(ring: ScalarRing, p: Path) -> Self {
        Self::term(ring, p, Scalar::one())
    }

    pub fn term(ring: ScalarRing, p: Path, c: Scalar) -> Self {
        let mut e = Self::zero(ring, p.src, p.tgt);
        let c = ring.normalize(&c).unwrap_or_else(|_| Scalar::zero());
        if !c.is_zero() {
            e.terms.insert(p, c);
        }
        e
    }

    pub fn arrow(ring: ScalarRing, q: &Quiver, a: ArrowId) -> Self {
        Self::path(ring, Path::arrow(q, a))
    }

    /// `c * e_v`.
    pub fn scalar(ring: ScalarRing, v: VertexId, c: Scalar) -> Self {
        Self::term(ring, Path::trivial(v), c)
    }

    pub fn ring(&self) -> ScalarRing {
        self.ring
    }

    pub fn src(&self) -> VertexId {
        self.src
    }

    pub fn tgt(&self) -> VertexId {
        self.tgt
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, p: &Path) -> Scalar {
        self.terms.get(p).cloned().unwrap_or_else(Scalar::zero)
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        Ok(())
    }

    fn add_term(&mut self, p: Path, c: &Scalar) {
        let ring = self.ring;
        let entry = self.terms.entry(p).or_insert_with(Scalar::zero);
        *entry = ring.add(entry, c);
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        if (self.src, self.tgt) != (other.src, other.tgt) {
            return Err(Error::TypeMismatch("adding elements with different endpoints".into()));
        }
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.ring.from_i64(-1))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.ring, self.src, self.tgt);
        for (p, x) in &self.terms {
            let y = self.ring.mul(x, c);
            if !y.is_zero() {
                out.terms.insert(p.clone(), y);
            }
        }
        out
    }

    /// `self * first`: apply `first`, then `self`. Zero when the endpoints do
    /// not meet; the result is typed `first.src -> self.tgt`.
    pub fn mul(&self, first: &Self) -> Result<Self> {
        self.check_ring(first)?;
        let mut out = Self::zero(self.ring, first.src, self.tgt);
        if first.tgt != self.src {
            return Ok(out);
        }
        for (p, a) in &first.terms {
            for (q, b) in &self.terms {
                let pq = p.then(q).expect("endpoints checked");
                let c = self.ring.mul(a, b);
                out.add_term(pq, &c);
            }
        }
        Ok(out)
    }

    /// Terms as `(coefficient, path)` text, e.g. `2*b*a`.
    pub fn display(&self, q: &Quiver) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(p, c)| {
                let ps = p.display(q);
                if c.is_one() {
                    ps
                } else {
                    format!("{c}*{ps}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;
    use crate::quiver::samples::{a2, square};

    #[test]
    fn local_identity_and_zero_product() {
        let q = a2();
        let r = ScalarRing::Rationals;
        let a = AlgebraElement::arrow(r, &q, ArrowId(0));
        let e2 = AlgebraElement::identity(r, VertexId(1));
        assert_eq!(e2.mul(&a).unwrap(), a);
        assert!(a.mul(&a).unwrap().is_zero());
    }

    #[test]
    fn bilinearity() {
        let q = square();
        let r = ScalarRing::Rationals;
        let a = AlgebraElement::arrow(r, &q, ArrowId(0));
        let b = AlgebraElement::arrow(r, &q, ArrowId(1));
        // (b + 2b) * a = 3 ba
        let lhs = b.add(&b.scale(&int(2))).unwrap().mul(&a).unwrap();
        assert_eq!(lhs, b.mul(&a).unwrap().scale(&int(3)));
        assert_eq!(lhs.display(&q), "3*b*a");
    }

    #[test]
    fn ring_mismatch() {
        let q = a2();
        let a = AlgebraElement::arrow(ScalarRing::Rationals, &q, ArrowId(0));
        let b = AlgebraElement::arrow(ScalarRing::Integers, &q, ArrowId(0));
        assert!(a.mul(&b).is_err());
    }
}
