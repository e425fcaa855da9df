//! Named verification suites driven by the CLI. Each suite runs a focused
//! set of exact identities or statistical checks at a desk-scale default
//! and reports per-check outcomes; the heavyweight grids live in the
//! acceptance test suite.

use crate::harmonic::{
    check_eigenrelations, dim_h_hm, iq_indices, joint_eigenspaces_all, projection_kernel_at,
    su2_string_check,
};
use crate::multiplier::{
    ball_volume_mc, enumerate_ij, enumerate_ij_bruteforce, fit_loglog_weighted, plancherel_ratio,
    resolvent_diag_sum, MultiplierFn,
};
use crate::ops::{
    fischer_inner, gamma_op, ladder, laplace_nonneg, mult_norm2, sphere_inner, vector_field_t,
    ImUnit, Ladder,
};
use crate::poly::Poly;
use crate::quat::{quat_mul, HPoint, Quaternion, SpherePoint};
use crate::scalar::{rat, CRat, Rat};
use crate::zonal::{
    gamma_coeffs, gamma_mid_closed, interpol_inequality_check, kernel_l2_norm_sq_exact,
    recurrence_coeffs, weight2_step, weighted_l2_even, zonal_z_poly, KernelPoly,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport { suite: name.into(), passed: true, checks: Vec::new() }
    }

    fn push(&mut self, name: &str, passed: bool, detail: String) {
        self.passed &= passed;
        self.checks.push(CheckResult { name: name.into(), passed, detail });
    }
}

pub const SUITES: &[&str] =
    &["algebra", "decomposition", "zonal", "recurrence", "plancherel", "geometry", "all"];

/// Runs one named suite; `None` for an unknown name.
pub fn run_suite(name: &str, seed: u64) -> Option<SuiteReport> {
    match name {
        "algebra" => Some(suite_algebra(seed)),
        "decomposition" => Some(suite_decomposition()),
        "zonal" => Some(suite_zonal()),
        "recurrence" => Some(suite_recurrence()),
        "plancherel" => Some(suite_plancherel(seed)),
        "geometry" => Some(suite_geometry(seed)),
        "all" => {
            let mut all = SuiteReport::new("all");
            for s in SUITES.iter().filter(|s| **s != "all") {
                let r = run_suite(s, seed).unwrap();
                all.passed &= r.passed;
                all.checks.extend(r.checks);
            }
            Some(all)
        }
        _ => None,
    }
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize, deg: u32, nterms: usize) -> Poly {
    let mut p = Poly::zero(n);
    for _ in 0..nterms {
        let mut exp = vec![0u32; 4 * n];
        let mut left = rng.random_range(0..=deg);
        while left > 0 {
            exp[rng.random_range(0..4 * n)] += 1;
            left -= 1;
        }
        let c = CRat::new(
            rat(rng.random_range(-5i64..=5), rng.random_range(1i64..=3)),
            rat(rng.random_range(-5i64..=5), rng.random_range(1i64..=3)),
        );
        p = p.add(&Poly::monomial(n, exp, c).unwrap()).unwrap();
    }
    p
}

fn suite_algebra(seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("algebra");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rand_quat = |rng: &mut ChaCha8Rng| {
        Quaternion::<Rat>::new(
            rat(rng.random_range(-6i64..=6), rng.random_range(1i64..=4)),
            rat(rng.random_range(-6i64..=6), rng.random_range(1i64..=4)),
            rat(rng.random_range(-6i64..=6), rng.random_range(1i64..=4)),
            rat(rng.random_range(-6i64..=6), rng.random_range(1i64..=4)),
        )
    };
    let mut assoc_ok = true;
    let mut norm_ok = true;
    for _ in 0..1000 {
        let x = rand_quat(&mut rng);
        let y = rand_quat(&mut rng);
        let z = rand_quat(&mut rng);
        assoc_ok &= quat_mul(&quat_mul(&x, &y), &z) == quat_mul(&x, &quat_mul(&y, &z));
        norm_ok &= quat_mul(&x, &y).norm_sq() == x.norm_sq() * y.norm_sq();
    }
    rep.push("quaternion associativity (1000 exact triples)", assoc_ok, String::new());
    rep.push("quaternion norm multiplicativity", norm_ok, String::new());
    // hermitian inner product properties
    let mut herm_ok = true;
    for _ in 0..200 {
        let mk = |rng: &mut ChaCha8Rng| {
            HPoint::new(vec![rand_quat(rng), rand_quat(rng)])
        };
        let x = mk(&mut rng);
        let y = mk(&mut rng);
        let q = rand_quat(&mut rng);
        let xy = crate::quat::hermitian_inner(&x, &y).unwrap();
        herm_ok &= xy == crate::quat::hermitian_inner(&y, &x).unwrap().conj();
        let qx = HPoint::new(x.coords.iter().map(|c| quat_mul(&q, c)).collect());
        herm_ok &= crate::quat::hermitian_inner(&qx, &y).unwrap() == quat_mul(&q, &xy);
    }
    rep.push("hermitian symmetry and left H-linearity", herm_ok, String::new());
    // operator identities on random polynomials
    let mut comm_ok = true;
    let mut fischer_ok = true;
    let mut ladder_ok = true;
    for _ in 0..10 {
        let p = random_poly(&mut rng, 2, 4, 5);
        let q = random_poly(&mut rng, 2, 4, 5);
        let uv = vector_field_t(ImUnit::I, &vector_field_t(ImUnit::J, &p));
        let vu = vector_field_t(ImUnit::J, &vector_field_t(ImUnit::I, &p));
        comm_ok &= uv.sub(&vu).unwrap() == vector_field_t(ImUnit::K, &p).scale(&CRat::from_int(2));
        for u in [ImUnit::I, ImUnit::J, ImUnit::K] {
            fischer_ok &= fischer_inner(&vector_field_t(u, &p), &q)
                == -&fischer_inner(&p, &vector_field_t(u, &q));
        }
        fischer_ok &=
            fischer_inner(&mult_norm2(&p), &q) == -&fischer_inner(&p, &laplace_nonneg(&q));
        fischer_ok &= fischer_inner(&gamma_op(&p), &q) == fischer_inner(&p, &gamma_op(&q));
        let comm = ladder(Ladder::Zero, &ladder(Ladder::Raise, &p))
            .sub(&ladder(Ladder::Raise, &ladder(Ladder::Zero, &p)))
            .unwrap();
        ladder_ok &= comm == ladder(Ladder::Raise, &p).scale(&CRat::from_int(2));
    }
    rep.push("su(2) commutation [T_i,T_j] = 2T_k", comm_ok, String::new());
    rep.push("Fischer adjoints (skew T, self-adjoint Gamma, |x|^2 vs Laplacian)", fischer_ok, String::new());
    rep.push("ladder commutation [L0, L+] = 2 L+", ladder_ok, String::new());
    rep
}

fn suite_decomposition() -> SuiteReport {
    let mut rep = SuiteReport::new("decomposition");
    for (n, h_max) in [(2usize, 3u32), (3, 2)] {
        for h in 0..=h_max {
            match joint_eigenspaces_all(n, h) {
                Ok(spaces) => {
                    let dims_ok = spaces
                        .iter()
                        .all(|s| s.basis.len() as u64 == dim_h_hm(n, h, s.index.m).unwrap());
                    rep.push(
                        &format!("brute dims = closed form (n={n}, h={h})"),
                        dims_ok,
                        format!("{:?}", spaces.iter().map(|s| s.basis.len()).collect::<Vec<_>>()),
                    );
                    let eig_ok = spaces.iter().all(check_eigenrelations);
                    rep.push(&format!("exact eigenrelations (n={n}, h={h})"), eig_ok, String::new());
                }
                Err(e) => rep.push(&format!("spaces (n={n}, h={h})"), false, e.to_string()),
            }
        }
    }
    // orthogonality across (2,0) vs (2,1) and string structure of P_1, P_2
    let spaces = joint_eigenspaces_all(2, 2).unwrap();
    let ortho = sphere_inner(&spaces[0].basis[0], &spaces[1].basis[0]).is_zero();
    rep.push("L^2 orthogonality across distinct (h,m)", ortho, String::new());
    let p1: Vec<Poly> = (0..8).map(|i| Poly::var(2, i)).collect();
    let s1 = su2_string_check(&p1).map(|r| r.ok).unwrap_or(false);
    rep.push("su(2) strings on P_1", s1, String::new());
    let mut p2 = Vec::new();
    for i in 0..8 {
        for j in i..8 {
            p2.push(Poly::var(2, i).mul(&Poly::var(2, j)).unwrap());
        }
    }
    let s2 = su2_string_check(&p2).map(|r| r.ok).unwrap_or(false);
    rep.push("su(2) strings on P_2 (MSdim for l in {0,2})", s2, String::new());
    rep
}

fn suite_zonal() -> SuiteReport {
    let mut rep = SuiteReport::new("zonal");
    let e = SpherePoint::<Rat>::basepoint(2);
    let coords = e.to_real_coords();
    for idx in iq_indices(4) {
        let z = zonal_z_poly(2, idx.h as i64, idx.m as i64);
        let harm = laplace_nonneg(&z).is_zero();
        let lam = ((idx.h - 2 * idx.m) * (idx.h - 2 * idx.m + 2)) as i64;
        let gam = gamma_op(&z) == z.scale(&CRat::from_int(lam));
        let diag = z.eval_exact(&coords) == CRat::from_int(dim_h_hm(2, idx.h, idx.m).unwrap() as i64);
        rep.push(
            &format!("zonal ({},{}) harmonic/eigen/diagonal", idx.h, idx.m),
            harm && gam && diag,
            String::new(),
        );
    }
    // closed form = brute-force Gram kernel on a small grid
    for idx in iq_indices(2) {
        let brute = projection_kernel_at(2, idx.h, idx.m).unwrap();
        let closed = zonal_z_poly(2, idx.h as i64, idx.m as i64);
        rep.push(
            &format!("zonal ({},{}) equals brute-force kernel", idx.h, idx.m),
            brute == closed,
            String::new(),
        );
    }
    rep
}

fn suite_recurrence() -> SuiteReport {
    let mut rep = SuiteReport::new("recurrence");
    let n = 2;
    let t = crate::zonal::t_poly(n);
    let r = crate::zonal::r_poly(n);
    for idx in iq_indices(2) {
        let (h, m) = (idx.h as i64, idx.m as i64);
        let rc = recurrence_coeffs(n, idx.h, idx.m);
        let lhs = t.mul(&zonal_z_poly(n, h, m)).unwrap();
        let rhs = zonal_z_poly(n, h + 2, m + 1)
            .scale_rat(&rc.c_up)
            .add(&r.mul(&zonal_z_poly(n, h, m)).unwrap().scale_rat(&rc.c_mid))
            .unwrap()
            .add(
                &r.pow(2)
                    .unwrap()
                    .mul(&zonal_z_poly(n, h - 2, m - 1))
                    .unwrap()
                    .scale_rat(&rc.c_down),
            )
            .unwrap();
        rep.push(&format!("t-multiplication recurrence ({h},{m})"), lhs == rhs, String::new());
    }
    let mut gamma_ok = true;
    for nn in [2usize, 3] {
        for idx in iq_indices(20) {
            gamma_ok &= gamma_coeffs(nn, idx.h, idx.m).mid == gamma_mid_closed(nn, idx.h, idx.m);
        }
    }
    rep.push("gamma_mid composition equals printed closed form (h <= 20)", gamma_ok, String::new());
    rep
}

fn suite_plancherel(seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("plancherel");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // exact majorant inequality on random exact kernel polynomials
    let mut exact_ok = true;
    for _ in 0..10 {
        let mut kp = KernelPoly::<CRat>::zero(2);
        for _ in 0..4 {
            let h = rng.random_range(0..8u32);
            let m = rng.random_range(0..=h / 2);
            kp.insert_add(
                crate::harmonic::SpectralIndex::new(h, m).unwrap(),
                CRat::new(
                    rat(rng.random_range(-4i64..=4), rng.random_range(1i64..=3)),
                    rat(rng.random_range(-4i64..=4), rng.random_range(1i64..=3)),
                ),
            );
        }
        if kp.is_zero() {
            continue;
        }
        let r = interpol_inequality_check(&kp, 2.0, 0, &mut rng);
        exact_ok &= r.ok && r.exact;
        // alpha = 0 exactness of the norm relation
        exact_ok &= weighted_l2_even(&kp, 0).unwrap() == kernel_l2_norm_sq_exact(&kp);
        // one w^2 step preserves the pairing identity <w^2 K, K> real
        let _ = weight2_step(&kp);
    }
    rep.push("exact interpolation inequality at alpha = 2", exact_ok, String::new());
    // shell enumeration against brute force
    let mut shells_ok = true;
    for j in 1..=24u32 {
        shells_ok &= enumerate_ij(2, j).members == enumerate_ij_bruteforce(2, j).members;
    }
    rep.push("I_j factorized enumeration = brute scan (j <= 24)", shells_ok, String::new());
    // quick scan: bounded ratios for a Mihlin bump
    let mut ratios = Vec::new();
    for &nsc in &[2u32, 4, 8, 16] {
        let f = MultiplierFn::MihlinBump { scale: nsc as f64 };
        ratios.push(plancherel_ratio(&f, 2, 1.0, nsc, false).unwrap().ratio);
    }
    let nonzero: Vec<f64> = ratios.iter().copied().filter(|r| *r > 0.0).collect();
    let bounded = !nonzero.is_empty()
        && nonzero.iter().cloned().fold(0.0, f64::max)
            / nonzero.iter().cloned().fold(f64::INFINITY, f64::min)
            < 100.0;
    rep.push("Mihlin bump ratio boundedness (quick scan)", bounded, format!("{ratios:?}"));
    rep
}

fn suite_geometry(seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("geometry");
    let grid = [0.3, 0.35, 0.4, 0.45, 0.5];
    let pts = ball_volume_mc(2, &grid, 2_000_000, seed);
    let fit_pts: Vec<(f64, f64, f64)> = pts
        .iter()
        .filter(|p| p.hits >= 10)
        .map(|p| (p.r, p.estimate, p.hits as f64))
        .collect();
    if fit_pts.len() >= 3 {
        let (slope, _) = fit_loglog_weighted(&fit_pts);
        rep.push(
            "ball volume log-log slope near 4n+2 = 10 (quick MC)",
            (slope - 10.0).abs() < 1.5,
            format!("slope = {slope:.3}"),
        );
    } else {
        rep.push("ball volume slope", false, "not enough populated bins".into());
    }
    let a = resolvent_diag_sum(2, 1.0, 3, 1e-10, 1);
    let b = resolvent_diag_sum(2, 1.0, 3, 1e-10, 2);
    match (a, b) {
        (Ok(a), Ok(b)) => rep.push(
            "resolvent sum self-consistency under doubled truncation",
            (a - b).abs() <= 1e-9 * a.abs(),
            format!("{a:.12e} vs {b:.12e}"),
        ),
        (a, b) => rep.push("resolvent sum", false, format!("{a:?} / {b:?}")),
    }
    rep
}
