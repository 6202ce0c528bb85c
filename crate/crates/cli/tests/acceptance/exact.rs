//! Smith form contract with a determinantal-divisor oracle; exhaustive F2 solving.

use freyd_core::linalg::scalar::as_i64;
use freyd_core::linalg::{smith_normal_form, solve, ConcreteMatrix, ScalarRing};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{ensure, Outcome};

const Z: ScalarRing = ScalarRing::Integers;
const F2: ScalarRing = ScalarRing::PrimeField(2);

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Fraction-free (Bareiss) determinant.
fn det(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    let mut sign = 1;
    let mut prev = 1;
    for k in 0..n {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&r| m[r][k] != 0) else {
                return 0;
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * m[n - 1][n - 1]
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// `d_1 * .. * d_k` as the gcd of the `k x k` minors.
fn determinantal_divisors(a: &[Vec<i64>], rows: usize, cols: usize) -> Vec<i128> {
    (1..=rows.min(cols))
        .map(|k| {
            let mut g = 0;
            for rs in subsets(rows, k) {
                for cs in subsets(cols, k) {
                    let minor = rs.iter().map(|&r| cs.iter().map(|&c| i128::from(a[r][c])).collect()).collect();
                    g = gcd(g, det(minor));
                }
            }
            g
        })
        .collect()
}

fn to_i64(m: &ConcreteMatrix) -> Option<Vec<Vec<i64>>> {
    m.row_vecs().iter().map(|r| r.iter().map(as_i64).collect()).collect()
}

fn smith_contract(count: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut singular = 0;
    for n in 0..count {
        let (rows, cols) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let mut a: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        if n % 4 == 0 {
            // force low rank: product through a thin middle dimension
            let k = rng.gen_range(1..=rows.min(cols));
            let l: Vec<Vec<i64>> = (0..rows).map(|_| (0..k).map(|_| rng.gen_range(-3..=3)).collect()).collect();
            let r: Vec<Vec<i64>> = (0..k).map(|_| (0..cols).map(|_| rng.gen_range(-3..=3)).collect()).collect();
            a = (0..rows).map(|i| (0..cols).map(|j| (0..k).map(|t| l[i][t] * r[t][j]).sum()).collect()).collect();
        }
        let m = ConcreteMatrix::from_i64(Z, &a);
        let s = smith_normal_form(&m);
        ensure!(s.u.mul(&m)?.mul(&s.v)? == s.d, "U A V != D for {a:?}");
        for (x, xi, dim) in [(&s.u, &s.u_inv, rows), (&s.v, &s.v_inv, cols)] {
            let integral = |m: &ConcreteMatrix| m.row_vecs().iter().flatten().all(|e| e.is_integer());
            ensure!(integral(x) && integral(xi), "non-integral transform for {a:?}");
            let id = ConcreteMatrix::identity(Z, dim);
            ensure!(x.mul(xi)? == id && xi.mul(x)? == id, "transform not unimodular for {a:?}");
        }
        let d = to_i64(&s.d).expect("integral");
        let diag: Vec<i64> = (0..rows.min(cols)).map(|i| d[i][i]).collect();
        for (i, row) in d.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                ensure!(i == j || x == 0, "D not diagonal for {a:?}");
            }
        }
        ensure!(diag.iter().all(|&x| x >= 0), "negative diagonal for {a:?}");
        let rank = diag.iter().filter(|&&x| x != 0).count();
        ensure!(rank == s.rank && diag[..rank].iter().all(|&x| x != 0), "zeros not trailing for {a:?}");
        ensure!(diag.windows(2).take(rank.saturating_sub(1)).all(|w| w[1] % w[0] == 0), "divisibility fails: {diag:?}");
        let dd = determinantal_divisors(&a, rows, cols);
        let mut prod = 1i128;
        for (k, &g) in dd.iter().enumerate() {
            prod *= i128::from(diag[k]);
            ensure!(prod == g, "d_1..d_{} = {prod} but minors gcd {g} for {a:?}", k + 1);
        }
        singular += usize::from(rank < rows.min(cols));
    }
    Ok(format!("{count} integer matrices up to 6x6 ({singular} rank-deficient), U A V = D, unimodular, divisibility, minors oracle"))
}

fn bits_to_vec(x: u32, n: usize) -> Vec<freyd_core::linalg::Scalar> {
    (0..n).map(|i| F2.from_i64(i64::from(x >> i & 1))).collect()
}

fn vec_to_bits(v: &[freyd_core::linalg::Scalar]) -> u32 {
    v.iter().enumerate().filter(|(_, x)| **x != F2.zero()).fold(0, |acc, (i, _)| acc | 1 << i)
}

fn f2_solve_exhaustive() -> Outcome {
    let mut cases = 0;
    for rows in 0..=3usize {
        for cols in 0..=3usize {
            for code in 0u32..(1 << (rows * cols)) {
                let a = ConcreteMatrix::from_fn(F2, rows, cols, |r, c| F2.from_i64(i64::from(code >> (r * cols + c) & 1)));
                let image = |x: u32| {
                    (0..rows).fold(0u32, |acc, r| {
                        let bit = (0..cols).filter(|&c| x >> c & 1 == 1 && code >> (r * cols + c) & 1 == 1).count() % 2;
                        acc | (bit as u32) << r
                    })
                };
                for b in 0u32..(1 << rows) {
                    let sols: Vec<u32> = (0u32..(1 << cols)).filter(|&x| image(x) == b).collect();
                    let got = solve(&a, &bits_to_vec(b, rows))?;
                    match got {
                        None => ensure!(sols.is_empty(), "missed a solution of A x = b (A code {code}, {rows}x{cols}, b {b})"),
                        Some(s) => {
                            let p = vec_to_bits(&s.particular);
                            ensure!(sols.contains(&p), "wrong particular solution");
                            // span of the kernel generators: exactly the homogeneous solutions
                            let mut span = vec![0u32];
                            for k in &s.kernel {
                                let k = vec_to_bits(k);
                                ensure!(image(k) == 0, "kernel vector not in the kernel");
                                let more: Vec<u32> = span.iter().map(|x| x ^ k).collect();
                                span.extend(more);
                                span.sort_unstable();
                                span.dedup();
                            }
                            let mut all: Vec<u32> = span.iter().map(|k| k ^ p).collect();
                            all.sort_unstable();
                            ensure!(all == sols, "solution set incomplete for A code {code}, b {b}");
                        }
                    }
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} F2 systems up to 3x3 solved completely"))
}

pub fn linalg_contract() -> Outcome {
    let a = smith_contract(1000)?;
    let b = f2_solve_exhaustive()?;
    Ok(format!("{a}; {b}"))
}
