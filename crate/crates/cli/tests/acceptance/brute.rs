//! Implication over all modules vs exhaustive search over small F2 representations.

use std::collections::BTreeSet;
use std::sync::Arc;

use freyd_core::linalg::{ConcreteMatrix, ScalarRing};
use freyd_core::pp::PpFormula;
use freyd_core::quiver::{AlgebraElement, Path, Quiver, VertexId};
use freyd_core::random;
use freyd_core::repr::Representation;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{ensure, Outcome};

const F2: ScalarRing = ScalarRing::PrimeField(2);
const MAX_DIM: usize = 2;
const PAIRS_PER_QUIVER: usize = 54;

/// Acyclic quivers with at most 3 vertices and 3 arrows, one per isomorphism class.
fn small_quivers() -> Vec<Quiver> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for n in 1..=3usize {
        let edges: Vec<(usize, usize)> = (0..n).flat_map(|s| (0..n).filter(move |&t| t != s).map(move |t| (s, t))).collect();
        // multisets of edges of size <= 3, as nondecreasing index sequences
        let mut multisets: Vec<Vec<usize>> = vec![vec![]];
        for len in 1..=3 {
            let mut cur: Vec<Vec<usize>> = vec![vec![]];
            for _ in 0..len {
                cur = cur
                    .into_iter()
                    .flat_map(|m| {
                        let start = m.last().copied().unwrap_or(0);
                        (start..edges.len()).map(move |e| {
                            let mut m2 = m.clone();
                            m2.push(e);
                            m2
                        })
                    })
                    .collect();
            }
            multisets.extend(cur);
        }
        for m in multisets {
            let arrows: Vec<(usize, usize)> = m.iter().map(|&e| edges[e]).collect();
            let canon = permutations(n)
                .iter()
                .map(|p| {
                    let mut a: Vec<(usize, usize)> = arrows.iter().map(|&(s, t)| (p[s], p[t])).collect();
                    a.sort();
                    a
                })
                .min()
                .unwrap();
            if !seen.insert((n, canon)) {
                continue;
            }
            let names: Vec<String> = (1..=n).map(|v| v.to_string()).collect();
            let arrow_specs: Vec<(String, String, String)> = arrows
                .iter()
                .enumerate()
                .map(|(i, &(s, t))| (format!("a{i}"), names[s].clone(), names[t].clone()))
                .collect();
            let q = Quiver::new(&names, &arrow_specs).expect("valid quiver");
            if q.is_acyclic() {
                out.push(q);
            }
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// F2 matrix stored as column bitmasks.
type Bits = Vec<u32>;

fn apply(m: &Bits, v: u32) -> u32 {
    m.iter().enumerate().filter(|(i, _)| v >> i & 1 == 1).fold(0, |acc, (_, c)| acc ^ c)
}

struct SmallRep {
    dims: Vec<usize>,
    arrows: Vec<Bits>,
}

impl SmallRep {
    fn path(&self, p: &Path) -> Bits {
        let mut cols: Bits = (0..self.dims[p.src().0]).map(|j| 1 << j).collect();
        for a in p.arrows() {
            cols = cols.iter().map(|&c| apply(&self.arrows[a.0], c)).collect();
        }
        cols
    }

    fn element(&self, x: &AlgebraElement) -> Bits {
        let mut out = vec![0u32; self.dims[x.src().0]];
        for (p, c) in x.terms() {
            if *c != F2.zero() {
                for (o, m) in out.iter_mut().zip(self.path(p)) {
                    *o ^= m;
                }
            }
        }
        out
    }

    fn to_representation(&self, q: &Arc<Quiver>) -> Representation {
        let mats = q
            .arrows()
            .iter()
            .zip(&self.arrows)
            .map(|(a, cols)| {
                ConcreteMatrix::from_fn(F2, self.dims[a.tgt.0], self.dims[a.src.0], |r, c| F2.from_i64(i64::from(cols[c] >> r & 1)))
            })
            .collect();
        Representation::from_dims(q.clone(), F2, &self.dims, mats).expect("consistent shapes")
    }

    /// Solution set of `phi` as a bitmask over context assignments.
    fn solutions(&self, phi: &PpFormula) -> u64 {
        let d = |v: &VertexId| self.dims[v.0];
        let rows = phi.a().row_types();
        let mut offsets = Vec::new();
        let mut total = 0;
        for r in rows {
            offsets.push(total);
            total += d(r);
        }
        assert!(total <= 32, "equation space too large for the bit evaluator");
        // column of equation-space values for each coordinate of each variable
        let columns = |m: &freyd_core::quiver::TypedMatrix, sorts: &[VertexId]| -> Vec<u32> {
            let mut cols = Vec::new();
            for (i, s) in sorts.iter().enumerate() {
                let blocks: Vec<Bits> = (0..rows.len()).map(|j| self.element(m.get(j, i))).collect();
                for k in 0..d(s) {
                    cols.push(blocks.iter().zip(&offsets).fold(0, |acc, (b, &off)| acc | (b[k] << off)));
                }
            }
            cols
        };
        let a_cols = columns(phi.a(), &phi.context_sorts());
        let b_cols = columns(phi.b(), &phi.bound_sorts());
        // echelon basis of the image of B keyed by leading bit
        let mut basis: Vec<u32> = Vec::new();
        let reduce = |basis: &[u32], mut v: u32| {
            for &b in basis {
                v = v.min(v ^ b);
            }
            v
        };
        for c in b_cols {
            let r = reduce(&basis, c);
            if r != 0 {
                basis.push(r);
                basis.sort_unstable_by(|x, y| y.cmp(x));
            }
        }
        assert!(a_cols.len() <= 6, "context too large for the bit evaluator");
        let mut mask = 0u64;
        for x in 0u32..(1 << a_cols.len()) {
            if reduce(&basis, apply(&a_cols, x)) == 0 {
                mask |= 1 << x;
            }
        }
        mask
    }
}

/// Every representation with fiber dimensions at most [`MAX_DIM`].
fn all_reps(q: &Quiver) -> Vec<SmallRep> {
    let n = q.num_vertices();
    let mut out = Vec::new();
    let mut dims = vec![0usize; n];
    loop {
        let sizes: Vec<usize> = q.arrows().iter().map(|a| dims[a.tgt.0] * dims[a.src.0]).collect();
        let total: usize = sizes.iter().sum();
        for code in 0u64..(1 << total) {
            let mut shift = 0;
            let arrows = q
                .arrows()
                .iter()
                .zip(&sizes)
                .map(|(a, &s)| {
                    let bits = (code >> shift) & ((1 << s) - 1);
                    shift += s;
                    let rows = dims[a.tgt.0];
                    (0..dims[a.src.0]).map(|c| ((bits >> (c * rows)) & ((1 << rows) - 1)) as u32).collect()
                })
                .collect();
            out.push(SmallRep { dims: dims.clone(), arrows });
        }
        let Some(i) = dims.iter().position(|&x| x < MAX_DIM) else {
            break;
        };
        dims[i] += 1;
        for x in &mut dims[..i] {
            *x = 0;
        }
    }
    out
}

/// Brute-force truth: no small representation has a solution of `phi` outside `psi`.
fn brute_implies(reps: &[SmallRep], phi: &PpFormula, psi: &PpFormula) -> bool {
    reps.iter().all(|t| t.solutions(phi) & !t.solutions(psi) == 0)
}

pub fn implication_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let quivers = small_quivers();
    let (mut pairs, mut implied, mut constructed, mut reps_total, mut cross_checks) = (0, 0, 0, 0, 0);
    for q in quivers.iter().cloned().map(Arc::new) {
        let reps = all_reps(&q);
        reps_total += reps.len();
        for i in 0..PAIRS_PER_QUIVER {
            let ctx = random::sorts(&mut rng, &q, 1, 2);
            let phi = random::formula(&mut rng, &q, F2, &ctx, 2, 2);
            let chi = random::formula(&mut rng, &q, F2, &ctx, 2, 2);
            // a third of the pairs are implications by construction
            let (a, b) = match i % 3 {
                0 => (phi.conjoin(&chi)?, phi),
                1 => (chi.clone(), phi.sum(&chi)?),
                _ => (phi, chi),
            };
            let engine = a.implies_all(&b)?;
            let truth = brute_implies(&reps, &a, &b);
            ensure!(engine == truth, "quiver {q}: engine says {engine}, brute force {truth} for\n  {a}\n  {b}");
            if i % 3 != 2 {
                ensure!(engine, "constructed implication rejected: {a} -> {b}");
                constructed += 1;
            }
            implied += usize::from(engine);
            pairs += 1;

            // the bit evaluator itself against the engine, on a few representations
            for t in reps.iter().step_by(reps.len() / 3 + 1) {
                let sol = a.evaluate(&t.to_representation(&q))?;
                let mask = t.solutions(&a);
                ensure!(mask.count_ones() == 1u32 << sol.generators().rows(), "bit evaluator disagrees with the engine on {a}");
                cross_checks += 1;
            }
        }
    }
    Ok(format!(
        "{} quivers, {reps_total} representations, {pairs} pairs ({implied} implications, {constructed} by construction), 100% agreement; {cross_checks} evaluator cross-checks",
        quivers.len()
    ))
}
