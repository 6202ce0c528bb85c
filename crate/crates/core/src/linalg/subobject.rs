//! Subgroups and subspaces of finitely presented groups.
//!
//! An ambient is a finite direct sum of presented groups `k^n / rowspan(R)`.
//! A subobject is stored by the canonical generators (echelon form) of its
//! preimage in `k^n`, which always contains the relation lattice. Equality of
//! subobjects is therefore equality of canonical forms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::ConcreteMatrix;
use super::scalar::{Scalar, ScalarRing};
use super::smith::smith_normal_form;
use super::solve::{echelon_form, kernel_basis};
use crate::error::{Error, Result};

/// `k^gens / rowspan(relations)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PresentedGroup {
    ring: ScalarRing,
    gens: usize,
    relations: ConcreteMatrix,
}

impl PresentedGroup {
    pub fn free(ring: ScalarRing, gens: usize) -> Self {
        Self {
            ring,
            gens,
            relations: ConcreteMatrix::zeros(ring, 0, gens),
        }
    }

    pub fn new(ring: ScalarRing, gens: usize, relations: ConcreteMatrix) -> Result<Self> {
        if relations.ring() != ring {
            return Err(Error::RingMismatch(ring.to_string(), relations.ring().to_string()));
        }
        if relations.cols() != gens {
            return Err(Error::ShapeMismatch(format!(
                "presentation with {} columns for {gens} generators",
                relations.cols()
            )));
        }
        Ok(Self {
            ring,
            gens,
            relations,
        })
    }

    pub fn ring(&self) -> ScalarRing {
        self.ring
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn relations(&self) -> &ConcreteMatrix {
        &self.relations
    }

    pub fn is_free(&self) -> bool {
        self.relations.is_zero()
    }

    pub fn invariants(&self) -> QuotientInvariants {
        let amb = Ambient::single(self.clone());
        SubobjectData::whole(&amb)
            .quotient(&SubobjectData::zero(&amb))
            .expect("relations lie in the whole group")
    }
}

/// Finite direct sum of presented groups; coordinates are concatenated.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ambient {
    ring: ScalarRing,
    blocks: Vec<PresentedGroup>,
}

impl Ambient {
    pub fn new(ring: ScalarRing, blocks: Vec<PresentedGroup>) -> Result<Self> {
        if let Some(b) = blocks.iter().find(|b| b.ring != ring) {
            return Err(Error::RingMismatch(ring.to_string(), b.ring.to_string()));
        }
        Ok(Self { ring, blocks })
    }

    pub fn single(group: PresentedGroup) -> Self {
        Self {
            ring: group.ring,
            blocks: vec![group],
        }
    }

    pub fn free(ring: ScalarRing, n: usize) -> Self {
        Self::single(PresentedGroup::free(ring, n))
    }

    pub fn ring(&self) -> ScalarRing {
        self.ring
    }

    pub fn blocks(&self) -> &[PresentedGroup] {
        &self.blocks
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.gens).sum()
    }

    /// Start offset of every block in the concatenated coordinates.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.blocks
            .iter()
            .map(|b| {
                let o = acc;
                acc += b.gens;
                o
            })
            .collect()
    }

    pub fn relation_rows(&self) -> Vec<Vec<Scalar>> {
        let n = self.dim();
        let mut rows = Vec::new();
        for (b, off) in self.blocks.iter().zip(self.offsets()) {
            for i in 0..b.relations.rows() {
                let mut r = vec![Scalar::zero(); n];
                r[off..off + b.gens].clone_from_slice(b.relations.row(i));
                rows.push(r);
            }
        }
        rows
    }

    /// Relation matrix of the whole sum (block diagonal).
    pub fn relation_matrix(&self) -> ConcreteMatrix {
        let rows = self.relation_rows();
        ConcreteMatrix::from_rows(self.ring, self.dim(), rows).expect("well-formed relations")
    }

    pub fn concat(&self, other: &Ambient) -> Result<Ambient> {
        let mut blocks = self.blocks.clone();
        blocks.extend(other.blocks.iter().cloned());
        Ambient::new(self.ring, blocks)
    }

    /// Sub-ambient on a contiguous range of blocks.
    pub fn slice(&self, blocks: std::ops::Range<usize>) -> Ambient {
        Ambient {
            ring: self.ring,
            blocks: self.blocks[blocks].to_vec(),
        }
    }

    /// Reduce a vector to its canonical representative modulo the relations.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let zero = SubobjectData::zero(self);
        zero.reduce(v).0
    }
}

/// Invariants of a finitely generated quotient: free rank and invariant factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QuotientInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl QuotientInvariants {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        Self {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Invariants of a direct sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut amb = Vec::new();
        for t in self.torsion.iter().chain(&other.torsion) {
            amb.push(t.clone());
        }
        let ring = ScalarRing::Integers;
        let n = amb.len();
        let m = ConcreteMatrix::from_fn(ring, n, n, |i, j| {
            if i == j {
                Scalar::from_integer(amb[i].clone())
            } else {
                Scalar::zero()
            }
        });
        let torsion = smith_normal_form(&m)
            .invariant_factors()
            .into_iter()
            .map(|d| d.to_integer())
            .filter(|d| !d.is_one())
            .collect();
        Self {
            free_rank: self.free_rank + other.free_rank,
            torsion,
        }
    }
}

impl fmt::Display for QuotientInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("R^{}", self.free_rank));
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// A subgroup (subspace) of an [`Ambient`], stored by canonical generators of its preimage.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubobjectData {
    ambient: Ambient,
    generators: ConcreteMatrix,
}

impl SubobjectData {
    /// Subobject generated by `rows` (the ambient relations are added).
    pub fn new(ambient: &Ambient, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = ambient.dim();
        let ring = ambient.ring;
        let mut all = Vec::with_capacity(rows.len());
        for r in rows {
            if r.len() != n {
                return Err(Error::ShapeMismatch(format!(
                    "generator of length {} in ambient of dimension {n}",
                    r.len()
                )));
            }
            if let Some(x) = r.iter().find(|x| !ring.contains(x)) {
                return Err(Error::RingMismatch(ring.to_string(), format!("scalar {x}")));
            }
            all.push(r);
        }
        all.extend(ambient.relation_rows());
        let canon = echelon_form(ring, n, all);
        Ok(Self {
            ambient: ambient.clone(),
            generators: ConcreteMatrix::from_rows(ring, n, canon)?,
        })
    }

    pub fn zero(ambient: &Ambient) -> Self {
        Self::new(ambient, Vec::new()).expect("relations are well-formed")
    }

    pub fn whole(ambient: &Ambient) -> Self {
        let n = ambient.dim();
        let rows = ConcreteMatrix::identity(ambient.ring, n).row_vecs();
        Self::new(ambient, rows).expect("identity rows are well-formed")
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn ring(&self) -> ScalarRing {
        self.ambient.ring
    }

    /// Canonical generator rows (relations included).
    pub fn generators(&self) -> &ConcreteMatrix {
        &self.generators
    }

    pub fn generator_rows(&self) -> Vec<Vec<Scalar>> {
        self.generators.row_vecs()
    }

    /// Greedy reduction against the echelon generators: returns the remainder
    /// and the coefficients used. The vector is a member iff the remainder is zero.
    fn reduce(&self, v: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
        let ring = self.ring();
        let mut rem = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.generators.rows());
        for i in 0..self.generators.rows() {
            let row = self.generators.row(i);
            let c = row.iter().position(|x| !x.is_zero()).expect("nonzero echelon row");
            let (q, _) = ring.div_rem(&rem[c], &row[c]);
            if !q.is_zero() {
                for (r, g) in rem.iter_mut().zip(row) {
                    *r = ring.sub(r, &ring.mul(&q, g));
                }
            }
            coeffs.push(q);
        }
        (rem, coeffs)
    }

    /// Coefficients expressing `v` in the canonical generators, if `v` is a member.
    pub fn coefficients(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let (rem, coeffs) = self.reduce(v);
        rem.iter().all(Zero::is_zero).then_some(coeffs)
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        v.len() == self.ambient.dim() && self.coefficients(v).is_some()
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }

    pub fn contains(&self, other: &Self) -> Result<bool> {
        self.check_ambient(other)?;
        Ok((0..other.generators.rows()).all(|i| self.contains_vector(other.generators.row(i))))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut rows = self.generator_rows();
        rows.extend(other.generator_rows());
        Self::new(&self.ambient, rows)
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let ring = self.ring();
        let n = self.ambient.dim();
        let (r1, r2) = (self.generators.rows(), other.generators.rows());
        // (a, b) with a*G1 = b*G2 ; columns of [G1; -G2]^T.
        let stacked = self
            .generators
            .vstack(&other.generators.scale(&ring.from_i64(-1)))?
            .transpose();
        let rows = kernel_basis(&stacked)
            .into_iter()
            .map(|ab| {
                let mut v = vec![Scalar::zero(); n];
                for (i, a) in ab.iter().take(r1).enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (x, g) in v.iter_mut().zip(self.generators.row(i)) {
                        *x = ring.add(x, &ring.mul(a, g));
                    }
                }
                v
            })
            .collect();
        debug_assert_eq!(stacked.cols(), r1 + r2);
        Self::new(&self.ambient, rows)
    }

    /// Invariants of `self / smaller`.
    pub fn quotient(&self, smaller: &Self) -> Result<QuotientInvariants> {
        Ok(self.quotient_coords(smaller)?.invariants())
    }

    pub fn quotient_coords(&self, smaller: &Self) -> Result<QuotientCoords> {
        QuotientCoords::new(self, smaller)
    }

    /// The subobject viewed as a group in its own right.
    pub fn invariants(&self) -> QuotientInvariants {
        self.quotient(&Self::zero(&self.ambient))
            .expect("relations are contained in every subobject")
    }

    /// Image under the coordinate projection onto blocks `range`.
    pub fn project(&self, range: std::ops::Range<usize>) -> Result<Self> {
        let offs = self.ambient.offsets();
        let start = offs.get(range.start).copied().unwrap_or(self.ambient.dim());
        let end = offs.get(range.end).copied().unwrap_or(self.ambient.dim());
        let target = self.ambient.slice(range);
        let rows = self.generator_rows().into_iter().map(|r| r[start..end].to_vec()).collect();
        Self::new(&target, rows)
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let ambient = self.ambient.concat(&other.ambient)?;
        let (n1, n2) = (self.ambient.dim(), other.ambient.dim());
        let mut rows: Vec<Vec<Scalar>> = self
            .generator_rows()
            .into_iter()
            .map(|mut r| {
                r.extend(std::iter::repeat(Scalar::zero()).take(n2));
                r
            })
            .collect();
        for r in other.generator_rows() {
            let mut v = vec![Scalar::zero(); n1];
            v.extend(r);
            rows.push(v);
        }
        Self::new(&ambient, rows)
    }
}

/// Canonical coordinates on a quotient `larger / smaller`.
///
/// Coordinates come from a Smith decomposition of the relation matrix of
/// `smaller` written in the canonical basis of `larger`; generators whose
/// invariant factor is a unit are dropped. Over `Z` each kept coordinate has
/// an order (`0` for free coordinates) and values are reduced modulo it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientCoords {
    larger: SubobjectData,
    v: ConcreteMatrix,
    v_inv: ConcreteMatrix,
    kept: Vec<usize>,
    orders: Vec<BigInt>,
}

impl QuotientCoords {
    pub fn new(larger: &SubobjectData, smaller: &SubobjectData) -> Result<Self> {
        larger.check_ambient(smaller)?;
        let ring = larger.ring();
        let r = larger.generators.rows();
        let mut coeff_rows = Vec::with_capacity(smaller.generators.rows());
        for i in 0..smaller.generators.rows() {
            let c = larger
                .coefficients(smaller.generators.row(i))
                .ok_or(Error::NotContained)?;
            coeff_rows.push(c);
        }
        let c = ConcreteMatrix::from_rows(ring, r, coeff_rows)?;
        let s = smith_normal_form(&c);
        let mut kept = Vec::new();
        let mut orders = Vec::new();
        for i in 0..r {
            if i >= s.rank {
                kept.push(i);
                orders.push(BigInt::zero());
            } else {
                let d = s.d.get(i, i);
                if !ring.is_unit(d) {
                    kept.push(i);
                    orders.push(ring.order_of(d));
                }
            }
        }
        Ok(Self {
            larger: larger.clone(),
            v: s.v,
            v_inv: s.v_inv,
            kept,
            orders,
        })
    }

    pub fn ring(&self) -> ScalarRing {
        self.larger.ring()
    }

    /// Number of coordinates (generators of the quotient).
    pub fn len(&self) -> usize {
        self.kept.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kept.is_empty()
    }

    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    pub fn invariants(&self) -> QuotientInvariants {
        let mut torsion: Vec<BigInt> = self.orders.iter().filter(|o| !o.is_zero()).cloned().collect();
        torsion.sort();
        QuotientInvariants {
            free_rank: self.orders.iter().filter(|o| o.is_zero()).count(),
            torsion,
        }
    }

    /// Presented group isomorphic to the quotient (diagonal relations).
    pub fn as_group(&self) -> PresentedGroup {
        let ring = self.ring();
        let n = self.len();
        let rows: Vec<Vec<Scalar>> = self
            .orders
            .iter()
            .enumerate()
            .filter(|(_, o)| !o.is_zero())
            .map(|(i, o)| {
                let mut r = vec![Scalar::zero(); n];
                r[i] = Scalar::from_integer(o.clone());
                r
            })
            .collect();
        let rel = ConcreteMatrix::from_rows(ring, n, rows).expect("diagonal relations");
        PresentedGroup::new(ring, n, rel).expect("consistent shape")
    }

    /// Canonical residues modulo the coordinate orders.
    pub fn reduce(&self, coords: &[Scalar]) -> Vec<Scalar> {
        coords
            .iter()
            .zip(&self.orders)
            .map(|(c, o)| {
                if o.is_zero() {
                    c.clone()
                } else {
                    Scalar::from_integer(c.to_integer().mod_floor(o))
                }
            })
            .collect()
    }

    /// Coordinates of an element of `larger` (an ambient vector).
    pub fn coords_of(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        let a = self.larger.coefficients(x).ok_or(Error::NotContained)?;
        let ring = self.ring();
        let y: Vec<Scalar> = self
            .kept
            .iter()
            .map(|&j| {
                a.iter()
                    .enumerate()
                    .fold(Scalar::zero(), |acc, (i, ai)| ring.add(&acc, &ring.mul(ai, self.v.get(i, j))))
            })
            .collect();
        Ok(self.reduce(&y))
    }

    /// Ambient representative of the `j`-th quotient generator.
    pub fn lift(&self, j: usize) -> Vec<Scalar> {
        let ring = self.ring();
        let row = self.v_inv.row(self.kept[j]);
        let n = self.larger.ambient.dim();
        let mut x = vec![Scalar::zero(); n];
        for (i, a) in row.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (xk, g) in x.iter_mut().zip(self.larger.generators.row(i)) {
                *xk = ring.add(xk, &ring.mul(a, g));
            }
        }
        x
    }

    pub fn larger(&self) -> &SubobjectData {
        &self.larger
    }
}

/// A homomorphism between ambients given on generators (columns are images).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: Ambient,
    target: Ambient,
    matrix: ConcreteMatrix,
}

impl GroupHom {
    /// Checks shapes and that source relations map into target relations.
    pub fn new(source: Ambient, target: Ambient, matrix: ConcreteMatrix) -> Result<Self> {
        if matrix.shape() != (target.dim(), source.dim()) {
            return Err(Error::ShapeMismatch(format!(
                "matrix {}x{} between ambients of dimension {} -> {}",
                matrix.rows(),
                matrix.cols(),
                source.dim(),
                target.dim()
            )));
        }
        if matrix.ring() != source.ring || source.ring != target.ring {
            return Err(Error::RingMismatch(source.ring.to_string(), target.ring.to_string()));
        }
        let zero = SubobjectData::zero(&target);
        for rel in source.relation_rows() {
            let img = matrix.mul_vec(&rel)?;
            if !zero.contains_vector(&img) {
                return Err(Error::InvalidRepresentation(
                    "matrix does not descend to the presented quotient".into(),
                ));
            }
        }
        Ok(Self {
            source,
            target,
            matrix,
        })
    }

    pub fn source(&self) -> &Ambient {
        &self.source
    }

    pub fn target(&self) -> &Ambient {
        &self.target
    }

    pub fn matrix(&self) -> &ConcreteMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        self.matrix.mul_vec(x)
    }

    pub fn image_of(&self, sub: &SubobjectData) -> Result<SubobjectData> {
        if sub.ambient != self.source {
            return Err(Error::AmbientMismatch);
        }
        let rows = sub
            .generator_rows()
            .iter()
            .map(|g| self.matrix.mul_vec(g))
            .collect::<Result<Vec<_>>>()?;
        SubobjectData::new(&self.target, rows)
    }

    pub fn image(&self) -> SubobjectData {
        self.image_of(&SubobjectData::whole(&self.source))
            .expect("ambient matches")
    }

    /// `{x : Mx in sub}`.
    pub fn preimage(&self, sub: &SubobjectData) -> Result<SubobjectData> {
        if sub.ambient != self.target {
            return Err(Error::AmbientMismatch);
        }
        let ring = self.matrix.ring();
        let g = sub.generators().transpose().scale(&ring.from_i64(-1));
        let k = self.matrix.hstack(&g)?;
        let ns = self.source.dim();
        let rows = kernel_basis(&k).into_iter().map(|v| v[..ns].to_vec()).collect();
        SubobjectData::new(&self.source, rows)
    }

    pub fn kernel(&self) -> SubobjectData {
        self.preimage(&SubobjectData::zero(&self.target))
            .expect("ambient matches")
    }

    pub fn compose(&self, first: &GroupHom) -> Result<GroupHom> {
        if first.target != self.source {
            return Err(Error::AmbientMismatch);
        }
        Ok(GroupHom {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&first.matrix)?,
        })
    }

    pub fn is_injective(&self) -> bool {
        self.kernel() == SubobjectData::zero(&self.source)
    }

    pub fn is_surjective(&self) -> bool {
        self.image() == SubobjectData::whole(&self.target)
    }

    /// True when the map is zero on the presented groups.
    pub fn is_zero(&self) -> bool {
        self.image() == SubobjectData::zero(&self.target)
    }
}
