//! Linear systems, kernels and canonical row forms.

use num_traits::Zero;

use super::matrix::ConcreteMatrix;
use super::scalar::{Scalar, ScalarRing};
use super::smith::{smith_normal_form, SmithForm};
use crate::error::{Error, Result};

/// Answer of [`solve`]: one solution plus generators of the kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Vec<Scalar>,
    pub kernel: Vec<Vec<Scalar>>,
}

/// Reusable solver for `A x = b` backed by one Smith decomposition of `A`.
#[derive(Clone, Debug)]
pub struct LinearSolver {
    smith: SmithForm,
    rows: usize,
    cols: usize,
}

impl LinearSolver {
    pub fn new(a: &ConcreteMatrix) -> Self {
        Self {
            smith: smith_normal_form(a),
            rows: a.rows(),
            cols: a.cols(),
        }
    }

    pub fn ring(&self) -> ScalarRing {
        self.smith.ring()
    }

    pub fn rank(&self) -> usize {
        self.smith.rank
    }

    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let ring = self.ring();
        let c = self.smith.u.mul_vec(b).expect("shape checked");
        let mut z = vec![Scalar::zero(); self.cols];
        for (i, ci) in c.iter().enumerate() {
            if i < self.smith.rank {
                z[i] = ring.exact_div(ci, self.smith.d.get(i, i))?;
            } else if !ci.is_zero() {
                return None;
            }
        }
        Some(self.smith.v.mul_vec(&z).expect("shape checked"))
    }

    /// Basis of the kernel (a lattice basis over `Z`).
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        (self.smith.rank..self.cols).map(|j| self.smith.v.column(j)).collect()
    }
}

pub fn solve(a: &ConcreteMatrix, b: &[Scalar]) -> Result<Option<Solution>> {
    if b.len() != a.rows() {
        return Err(Error::ShapeMismatch(format!(
            "right-hand side of length {} for {} equations",
            b.len(),
            a.rows()
        )));
    }
    let ring = a.ring();
    for x in b {
        if !ring.contains(x) {
            return Err(Error::RingMismatch(ring.to_string(), format!("scalar {x}")));
        }
    }
    let solver = LinearSolver::new(a);
    Ok(solver.solve(b).map(|particular| Solution {
        particular,
        kernel: solver.kernel(),
    }))
}

pub fn kernel_basis(a: &ConcreteMatrix) -> Vec<Vec<Scalar>> {
    LinearSolver::new(a).kernel()
}

pub fn rank(a: &ConcreteMatrix) -> usize {
    smith_normal_form(a).rank
}

/// Canonical generators of the row span: reduced row echelon form over a field,
/// Hermite normal form over `Z`. Zero rows are dropped.
pub fn echelon_form(ring: ScalarRing, cols: usize, rows: Vec<Vec<Scalar>>) -> Vec<Vec<Scalar>> {
    let mut m = rows;
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        loop {
            let mut best: Option<(Scalar, usize)> = None;
            for (i, row) in m.iter().enumerate().skip(r) {
                if row[c].is_zero() {
                    continue;
                }
                let n = ring.norm(&row[c]);
                if best.as_ref().map_or(true, |(b, _)| n < *b) {
                    best = Some((n, i));
                }
            }
            let Some((_, p)) = best else { break };
            m.swap(r, p);
            let mut done = true;
            for i in r + 1..m.len() {
                if m[i][c].is_zero() {
                    continue;
                }
                let (q, rem) = ring.div_rem(&m[i][c], &m[r][c]);
                let pivot_row = m[r].clone();
                sub_row_multiple(ring, &mut m[i], &pivot_row, &q);
                if !rem.is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < m.len() && !m[r][c].is_zero() {
            let unit = ring.unit_normalizer(&m[r][c]);
            for x in m[r].iter_mut() {
                *x = ring.mul(x, &unit);
            }
            let pivot_row = m[r].clone();
            for k in 0..r {
                if m[k][c].is_zero() {
                    continue;
                }
                let (q, _) = ring.div_rem(&m[k][c], &pivot_row[c]);
                sub_row_multiple(ring, &mut m[k], &pivot_row, &q);
            }
            r += 1;
        }
    }
    m.truncate(r);
    m.retain(|row| row.iter().any(|x| !x.is_zero()));
    m
}

fn sub_row_multiple(ring: ScalarRing, dst: &mut [Scalar], src: &[Scalar], q: &Scalar) {
    if q.is_zero() {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d = ring.sub(d, &ring.mul(q, s));
        }
    }
}
