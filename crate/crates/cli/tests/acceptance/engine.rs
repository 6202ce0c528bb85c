use std::sync::Arc;

use freyd_core::freyd::{AbMorphism, AbObject, Membership, Route, SerreKernelOracle};
use freyd_core::linalg::{Ambient, ConcreteMatrix, GroupHom, ScalarRing};
use freyd_core::pp::PpPair;
use freyd_core::quiver::samples::{a2, a3, kronecker, square};
use freyd_core::quiver::Quiver;
use freyd_core::random;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{ensure, Outcome};

const Q: ScalarRing = ScalarRing::Rationals;
const F2: ScalarRing = ScalarRing::PrimeField(2);
const Z: ScalarRing = ScalarRing::Integers;

fn quivers() -> Vec<Arc<Quiver>> {
    vec![Arc::new(a2()), Arc::new(a3()), Arc::new(square())]
}

/// Rank by plain Gaussian elimination over a field.
fn naive_rank(m: &ConcreteMatrix) -> usize {
    let ring = m.ring();
    let mut rows = m.row_vecs();
    let zero = ring.zero();
    let mut rank = 0;
    for c in 0..m.cols() {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] != zero) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = ring.inv(&rows[rank][c]).expect("field");
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != zero {
                let f = ring.mul(&rows[r][c], &inv);
                for j in 0..m.cols() {
                    let s = ring.mul(&f, &rows[rank][j]);
                    rows[r][j] = ring.sub(&rows[r][j], &s);
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn route_agreement() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut objects, mut morphisms, mut nonzero) = (0, 0, 0);
    for q in quivers() {
        for ring in [Q, F2] {
            for _ in 0..17 {
                let obj = random::presented_object(&mut rng, &q, ring)?;
                let t = random::representation(&mut rng, &q, ring, 3);
                let (a, b) = (obj.coords(&t, Route::Pp)?, obj.coords(&t, Route::Presentation)?);
                ensure!(a == b, "object {objects}: routes differ: {} vs {}", a.invariants(), b.invariants());
                objects += 1;

                let f = random::presented_morphism(&mut rng, &q, ring)?;
                let t = random::representation(&mut rng, &q, ring, 3);
                for o in [f.source(), f.target()] {
                    ensure!(o.evaluate(&t, Route::Pp)? == o.evaluate(&t, Route::Presentation)?, "morphism {morphisms}: endpoint values differ");
                }
                let (m, n) = (f.evaluate(&t, Route::Pp)?, f.evaluate(&t, Route::Presentation)?);
                ensure!(m == n, "morphism {morphisms}: induced maps differ:\n{m}\nvs\n{n}");
                nonzero += usize::from(!m.is_zero());
                morphisms += 1;
            }
        }
    }
    ensure!(objects >= 100 && morphisms >= 100, "too few instances");
    Ok(format!("{objects} objects, {morphisms} morphisms ({nonzero} with nonzero induced map), exact equality"))
}

fn group_hom(src: &AbObject, tgt: &AbObject, m: ConcreteMatrix, t: &freyd_core::repr::Representation) -> Result<GroupHom, freyd_core::Error> {
    let a = Ambient::single(src.coords(t, Route::Pp)?.as_group());
    let b = Ambient::single(tgt.coords(t, Route::Pp)?.as_group());
    GroupHom::new(a, b, m)
}

pub fn exactness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut kernels, mut cokernels, mut nontrivial) = (0, 0, 0);
    for q in quivers() {
        for ring in [Q, F2, Z] {
            for _ in 0..12 {
                let f = random::presented_morphism(&mut rng, &q, ring)?;
                let t = random::representation(&mut rng, &q, ring, 3);
                let (k, inc) = f.kernel()?;
                let (c, proj) = f.cokernel()?;
                let m_f = f.evaluate(&t, Route::Pp)?;
                let m_inc = inc.evaluate(&t, Route::Pp)?;
                let m_proj = proj.evaluate(&t, Route::Pp)?;
                if ring.is_field() {
                    // dimensions and ranks
                    let dim = |o: &AbObject| o.coords(&t, Route::Pp).map(|c| c.len());
                    let (nk, ns, nt, nc) = (dim(&k)?, dim(f.source())?, dim(f.target())?, dim(&c)?);
                    let rf = naive_rank(&m_f);
                    ensure!(naive_rank(&m_inc) == nk, "kernel map not injective");
                    ensure!(m_f.mul(&m_inc)?.is_zero(), "f . inc != 0");
                    ensure!(nk == ns - rf, "not exact at the source: dim ker {nk}, {ns} - rank {rf}");
                    ensure!(naive_rank(&m_proj) == nc, "cokernel map not surjective");
                    ensure!(m_proj.mul(&m_f)?.is_zero(), "proj . f != 0");
                    ensure!(nt - nc == rf, "not exact at the target");
                    nontrivial += usize::from(nk > 0 || nc > 0);
                } else {
                    // subgroup bookkeeping with torsion
                    let gf = group_hom(f.source(), f.target(), m_f, &t)?;
                    let gi = group_hom(&k, f.source(), m_inc, &t)?;
                    let gp = group_hom(f.target(), &c, m_proj, &t)?;
                    let same = |a: &freyd_core::linalg::SubobjectData, b: &freyd_core::linalg::SubobjectData| -> Result<bool, freyd_core::Error> {
                        Ok(a.contains(b)? && b.contains(a)?)
                    };
                    ensure!(gi.is_injective(), "kernel map not injective over Z");
                    ensure!(same(&gi.image(), &gf.kernel())?, "image(inc) != ker(f) over Z");
                    ensure!(gp.is_surjective(), "cokernel map not surjective over Z");
                    ensure!(same(&gf.image(), &gp.kernel())?, "image(f) != ker(proj) over Z");
                    nontrivial += usize::from(!gi.image().invariants().is_trivial() || !gp.image().invariants().is_trivial());
                }
                kernels += 1;
                cokernels += 1;
            }
        }
    }
    ensure!(kernels >= 100, "too few instances");
    Ok(format!("{kernels} kernel and {cokernels} cokernel sequences exact over Q, F2, Z ({nontrivial} with nonzero kernel or cokernel value)"))
}

pub fn delta_is_t() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let qs = [Arc::new(a2()), Arc::new(a3()), Arc::new(square()), Arc::new(kronecker())];
    let rings = [Q, F2, Z];
    let (mut fibers, mut arrows) = (0, 0);
    for i in 0..20 {
        let q = &qs[i % qs.len()];
        let ring = rings[i % rings.len()];
        let t = random::representation(&mut rng, q, ring, 3);
        for v in q.vertex_ids() {
            let d = AbObject::delta(q.clone(), ring, v)?;
            for route in [Route::Pp, Route::Presentation] {
                let c = d.coords(&t, route)?;
                ensure!(c.invariants() == t.fiber(v).invariants() && c.len() == t.fiber(v).gens(), "Delta({}) differs from the fiber", q.vertex_name(v));
            }
            fibers += 1;
        }
        for a in q.arrow_ids() {
            let d = AbMorphism::delta(q.clone(), ring, a)?;
            for route in [Route::Pp, Route::Presentation] {
                ensure!(&d.evaluate(&t, route)? == t.arrow_matrix(a), "Delta({}) differs from the arrow matrix", q.arrow(a).name);
            }
            arrows += 1;
        }
    }
    Ok(format!("20 representations: {fibers} vertex objects, {arrows} arrow morphisms, both routes exact"))
}

/// Subobject `(phi & chi + psi) / psi` and quotient `phi / (psi + phi & chi)` of `phi / psi`.
fn sub_and_quotient(p: &PpPair, chi: &freyd_core::pp::PpFormula) -> Result<(AbObject, AbObject), freyd_core::Error> {
    let (phi, psi) = (p.top(), p.bottom());
    let mid = phi.conjoin(chi)?.sum(psi)?;
    Ok((AbObject::new(PpPair::new(mid.clone(), psi.clone())?), AbObject::new(PpPair::new(phi.clone(), mid)?)))
}

pub fn serre_closure() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let qs = quivers();
    let (mut members, mut extensions, mut nonzero, mut checks) = (0, 0, 0, 0);
    let mut attempts = 0;
    while members < 50 {
        attempts += 1;
        ensure!(attempts < 20_000, "only {members} members found");
        let q = qs.choose(&mut rng).unwrap().clone();
        let ring = *[Q, F2].choose(&mut rng).unwrap();
        let t = random::representation(&mut rng, &q, ring, 2);
        let oracle = SerreKernelOracle::model(t.clone());
        let ctx = random::sorts(&mut rng, &q, 1, 2);
        let x = AbObject::new(random::pair(&mut rng, &q, ring, &ctx));
        if oracle.in_kernel(&x)? != Membership::Yes {
            continue;
        }
        // a second member on the same model for the direct sum
        let y = loop {
            let ctx2 = random::sorts(&mut rng, &q, 1, 2);
            let y = AbObject::new(random::pair(&mut rng, &q, ring, &ctx2));
            if oracle.in_kernel(&y)? == Membership::Yes {
                break y;
            }
        };
        members += 1;
        nonzero += usize::from(!x.is_zero()?);
        for _ in 0..2 {
            let chi = random::formula(&mut rng, &q, ring, &ctx, 1, 2);
            let (s, quo) = sub_and_quotient(x.pair(), &chi)?;
            ensure!(oracle.in_kernel(&s)? == Membership::Yes, "subobject of a member rejected: {}", s.pair());
            ensure!(oracle.in_kernel(&quo)? == Membership::Yes, "quotient of a member rejected: {}", quo.pair());
            checks += 2;
        }
        ensure!(oracle.in_kernel(&x.direct_sum(&y)?)? == Membership::Yes, "direct sum of members rejected");
        checks += 1;

        // extension: E with sub A and quotient B; A, B members forces E member
        for _ in 0..20 {
            let e = random::pair(&mut rng, &q, ring, &ctx);
            let chi = random::formula(&mut rng, &q, ring, &ctx, 1, 2);
            let (a, b) = sub_and_quotient(&e, &chi)?;
            if oracle.in_kernel(&a)? == Membership::Yes && oracle.in_kernel(&b)? == Membership::Yes {
                ensure!(oracle.in_kernel(&AbObject::new(e.clone()))? == Membership::Yes, "extension of members rejected: {e}");
                extensions += 1;
                checks += 1;
                break;
            }
        }
    }
    Ok(format!(
        "{members} members ({nonzero} nonzero over all modules), {checks} closure checks incl. {extensions} extensions, all members"
    ))
}

pub fn closed_direct_sums() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let qs = quivers();
    let (mut found, mut attempts, mut not_zero) = (0, 0, 0);
    while found < 50 {
        attempts += 1;
        ensure!(attempts < 20_000, "only {found} instances found");
        let q = qs.choose(&mut rng).unwrap().clone();
        let ring = *[Q, F2].choose(&mut rng).unwrap();
        let t = random::representation(&mut rng, &q, ring, 2);
        let t2 = random::representation(&mut rng, &q, ring, 2);
        let ctx = random::sorts(&mut rng, &q, 1, 2);
        let p = random::pair(&mut rng, &q, ring, &ctx);
        if !(p.is_closed(&t)? && p.is_closed(&t2)?) {
            continue;
        }
        ensure!(p.is_closed(&t.direct_sum(&t2)?)?, "closed on T and T' but not on the sum: {p}");
        not_zero += usize::from(!p.is_zero_all()?);
        found += 1;
    }
    Ok(format!("{found} instances ({not_zero} pairs not zero in every module) closed on T + T'"))
}
