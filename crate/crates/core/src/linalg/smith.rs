//! Smith normal form over the three coefficient rings.
//!
//! Over a field the diagonal is `1, .., 1, 0, ..`; over `Z` it carries the
//! invariant factors `d_1 | d_2 | ..`, all positive.

use num_traits::Zero;

use super::matrix::ConcreteMatrix;
use super::scalar::{Scalar, ScalarRing};

/// `U * A * V = D` with `U`, `V` invertible over the ring.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: ConcreteMatrix,
    pub u_inv: ConcreteMatrix,
    pub d: ConcreteMatrix,
    pub v: ConcreteMatrix,
    pub v_inv: ConcreteMatrix,
    pub rank: usize,
}

impl SmithForm {
    pub fn ring(&self) -> ScalarRing {
        self.d.ring()
    }

    pub fn diagonal(&self) -> Vec<Scalar> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// Nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<Scalar> {
        self.diagonal().into_iter().take(self.rank).collect()
    }
}

struct Reducer {
    ring: ScalarRing,
    d: ConcreteMatrix,
    u: ConcreteMatrix,
    u_inv: ConcreteMatrix,
    v: ConcreteMatrix,
    v_inv: ConcreteMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    /// `row[dst] += c * row[src]`
    fn add_row(&mut self, dst: usize, src: usize, c: &Scalar) {
        self.d.add_row_multiple(dst, src, c);
        self.u.add_row_multiple(dst, src, c);
        self.u_inv.add_col_multiple(src, dst, &self.ring.neg(c));
    }

    /// `col[dst] += c * col[src]`
    fn add_col(&mut self, dst: usize, src: usize, c: &Scalar) {
        self.d.add_col_multiple(dst, src, c);
        self.v.add_col_multiple(dst, src, c);
        self.v_inv.add_row_multiple(src, dst, &self.ring.neg(c));
    }

    fn scale_row(&mut self, i: usize, unit: &Scalar) {
        let inv = self.ring.inv(unit).expect("unit");
        self.d.scale_row(i, unit);
        self.u.scale_row(i, unit);
        self.u_inv.scale_col(i, &inv);
    }

    /// Minimal-norm nonzero entry in the lower-right block, smallest row then column on ties.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(Scalar, usize, usize)> = None;
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                let x = self.d.get(i, j);
                if x.is_zero() {
                    continue;
                }
                let n = self.ring.norm(x);
                if best.as_ref().map_or(true, |(b, _, _)| n < *b) {
                    best = Some((n, i, j));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    fn run(&mut self) -> usize {
        let (m, n) = self.d.shape();
        let mut t = 0;
        while t < m.min(n) {
            let Some((pi, pj)) = self.pivot(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            let p = self.d.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..m {
                let x = self.d.get(i, t).clone();
                if x.is_zero() {
                    continue;
                }
                let (q, r) = self.ring.div_rem(&x, &p);
                self.add_row(i, t, &self.ring.neg(&q));
                if !r.is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let x = self.d.get(t, j).clone();
                if x.is_zero() {
                    continue;
                }
                let (q, r) = self.ring.div_rem(&x, &p);
                self.add_col(j, t, &self.ring.neg(&q));
                if !r.is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility of the remaining block by the pivot.
            let offender = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !self.ring.divides(&p, self.d.get(i, j)))
            });
            if let Some(i) = offender {
                self.add_row(t, i, &self.ring.one());
                continue;
            }
            let unit = self.ring.unit_normalizer(&p);
            self.scale_row(t, &unit);
            t += 1;
        }
        t
    }
}

pub fn smith_normal_form(a: &ConcreteMatrix) -> SmithForm {
    let ring = a.ring();
    let (m, n) = a.shape();
    let mut r = Reducer {
        ring,
        d: a.clone(),
        u: ConcreteMatrix::identity(ring, m),
        u_inv: ConcreteMatrix::identity(ring, m),
        v: ConcreteMatrix::identity(ring, n),
        v_inv: ConcreteMatrix::identity(ring, n),
    };
    let rank = r.run();
    SmithForm {
        u: r.u,
        u_inv: r.u_inv,
        d: r.d,
        v: r.v,
        v_inv: r.v_inv,
        rank,
    }
}
