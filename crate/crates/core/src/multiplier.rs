//! Spectral multipliers of the sub-Laplacian: kernel coefficients
//! F(sqrt(lambda_L)), the discretized N-cell norm, eigenvalue-shell
//! enumeration, the weighted Plancherel ratio scan, the resolvent diagonal
//! sum, and the Monte Carlo geometry estimates for quasi-distance balls.

use crate::harmonic::{lambda_l_raw, SpectralIndex};
use crate::poly::C64;
use crate::quat::{quasi_dist, sample_sphere, weight_w, SpherePoint};
use crate::special::Poly1;
use crate::zonal::{
    kernel_l2_norm_sq_f64, m_alpha_norm_sq_f64, weighted_l2_even_f64, KernelPoly, KernelPolyF64,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MultiplierError {
    #[error("multiplier does not vanish beyond sqrt(cutoff) (support bound {support:?}, cutoff sqrt {cutoff}); pass acknowledge_truncation to proceed")]
    UnacknowledgedTruncation { support: Option<f64>, cutoff: f64 },
    #[error("alpha = {0} out of range (need 0 <= alpha < 3, or divergence-study mode)")]
    AlphaOutOfRange(f64),
    #[error("tail certificate failed: {0}")]
    TailCertificateFailed(String),
}

/// Spectral multiplier profiles F : [0, infinity) -> R. The functional
/// calculus applies them on the sqrt scale: a_{h,m} = F(sqrt(lambda_L)).
#[derive(Debug, Clone, Serialize)]
pub enum MultiplierFn {
    /// Indicator of [lo, hi).
    BandIndicator { lo: f64, hi: f64 },
    /// (1 - t lam)_+^delta; delta = 0 degenerates to an indicator.
    BochnerRiesz { delta: f64, t: f64 },
    /// exp(-t lam^2), i.e. the heat semigroup exp(-t lambda_L).
    Heat { t: f64 },
    /// Smooth dyadic bump eta(lam/scale), eta supported in [1/2, 1].
    MihlinBump { scale: f64 },
    /// Piecewise-linear interpolation of (grid, values); zero outside.
    Tabulated { grid: Vec<f64>, values: Vec<f64> },
}

fn bump_eta(u: f64) -> f64 {
    if u <= 0.5 || u >= 1.0 {
        0.0
    } else {
        (-1.0 / (4.0 * (u - 0.5) * (1.0 - u))).exp()
    }
}

impl MultiplierFn {
    pub fn eval(&self, lam: f64) -> f64 {
        match self {
            MultiplierFn::BandIndicator { lo, hi } => {
                if lam >= *lo && lam < *hi {
                    1.0
                } else {
                    0.0
                }
            }
            MultiplierFn::BochnerRiesz { delta, t } => {
                let base = 1.0 - t * lam;
                if base > 0.0 {
                    base.powf(*delta)
                } else {
                    0.0
                }
            }
            MultiplierFn::Heat { t } => (-t * lam * lam).exp(),
            MultiplierFn::MihlinBump { scale } => bump_eta(lam / scale),
            MultiplierFn::Tabulated { grid, values } => {
                if grid.is_empty() || lam < grid[0] || lam > *grid.last().unwrap() {
                    return 0.0;
                }
                match grid.binary_search_by(|g| g.partial_cmp(&lam).unwrap()) {
                    Ok(i) => values[i],
                    Err(i) => {
                        let (x0, x1) = (grid[i - 1], grid[i]);
                        let (y0, y1) = (values[i - 1], values[i]);
                        y0 + (y1 - y0) * (lam - x0) / (x1 - x0)
                    }
                }
            }
        }
    }

    /// Least upper bound of the support, None when unbounded.
    pub fn support_upper(&self) -> Option<f64> {
        match self {
            MultiplierFn::BandIndicator { hi, .. } => Some(*hi),
            MultiplierFn::BochnerRiesz { t, .. } => Some(1.0 / t),
            MultiplierFn::Heat { .. } => None,
            MultiplierFn::MihlinBump { scale } => Some(*scale),
            MultiplierFn::Tabulated { grid, .. } => Some(grid.last().copied().unwrap_or(0.0)),
        }
    }

    /// F(N .): the profile rescaled so that support [0, N) maps to [0, 1).
    pub fn rescaled(&self, factor: f64) -> MultiplierFn {
        match self {
            MultiplierFn::BandIndicator { lo, hi } => {
                MultiplierFn::BandIndicator { lo: lo / factor, hi: hi / factor }
            }
            MultiplierFn::BochnerRiesz { delta, t } => {
                MultiplierFn::BochnerRiesz { delta: *delta, t: t * factor }
            }
            MultiplierFn::Heat { t } => MultiplierFn::Heat { t: t * factor * factor },
            MultiplierFn::MihlinBump { scale } => MultiplierFn::MihlinBump { scale: scale / factor },
            MultiplierFn::Tabulated { grid, values } => MultiplierFn::Tabulated {
                grid: grid.iter().map(|g| g / factor).collect(),
                values: values.clone(),
            },
        }
    }

    /// sup over [a, b] of |F|, exact for the piecewise-monotone shipped
    /// variants (sup attained at interval ends, a breakpoint or the peak).
    pub fn sup_abs_on(&self, a: f64, b: f64) -> f64 {
        match self {
            MultiplierFn::BandIndicator { lo, hi } => {
                if a < *hi && b >= *lo {
                    1.0
                } else {
                    0.0
                }
            }
            MultiplierFn::BochnerRiesz { .. } | MultiplierFn::Heat { .. } => self.eval(a).abs(),
            MultiplierFn::MihlinBump { scale } => {
                let peak = 0.75 * scale;
                if b <= peak {
                    self.eval(b)
                } else if a >= peak {
                    self.eval(a)
                } else {
                    self.eval(peak)
                }
            }
            MultiplierFn::Tabulated { grid, .. } => {
                let mut best = self.eval(a).abs().max(self.eval(b).abs());
                for (i, g) in grid.iter().enumerate() {
                    if *g > a && *g < b {
                        best = best.max(self.eval(grid[i]).abs());
                    }
                }
                best
            }
        }
    }

    /// True when per-cell suprema are exact rather than grid-refined upper
    /// bounds. Piecewise-linear tabulated profiles attain their cell sup at
    /// a breakpoint or cell edge, but are flagged per contract.
    pub fn sup_is_exact(&self) -> bool {
        !matches!(self, MultiplierFn::Tabulated { .. })
    }
}

/// The discretized norm ||F||_{N,2}^2 = (1/N) sum_k sup over
/// [(k-1)/N, k/N] of |F|^2, for F supported in [0, 1].
#[derive(Debug, Clone, Copy, Serialize)]
pub struct NormN2 {
    pub n_cells: u32,
    pub value: f64,
    /// false when the per-cell sup is only a certified upper bound
    pub exact: bool,
}

pub fn norm_n2(f: &MultiplierFn, n_cells: u32) -> NormN2 {
    let n = n_cells as f64;
    let mut acc = 0.0;
    for k in 1..=n_cells {
        let s = f.sup_abs_on((k - 1) as f64 / n, k as f64 / n);
        acc += s * s;
    }
    NormN2 { n_cells, value: (acc / n).sqrt(), exact: f.sup_is_exact() }
}

/// Coefficients F(sqrt(lambda_L)) over all (h, m) with lambda_L <= cutoff.
pub fn multiplier_kernel(
    f: &MultiplierFn,
    n: usize,
    lambda_cutoff: u64,
    acknowledge_truncation: bool,
) -> Result<KernelPolyF64, MultiplierError> {
    let sqrt_cutoff = (lambda_cutoff as f64).sqrt();
    if !acknowledge_truncation {
        match f.support_upper() {
            Some(upper) if upper <= sqrt_cutoff + 1e-12 => {}
            support => {
                return Err(MultiplierError::UnacknowledgedTruncation { support, cutoff: sqrt_cutoff })
            }
        }
    }
    let nn = n as u64;
    let mut kp = KernelPoly::zero(n);
    let h_max = if nn > 1 { lambda_cutoff / (4 * (nn - 1)) } else { u64::MAX };
    for h in 0..=h_max {
        for m in 0..=h / 2 {
            let lam = lambda_l_raw(nn, h, m);
            if lam > lambda_cutoff {
                break; // lambda_L increases in m on this range
            }
            let v = f.eval((lam as f64).sqrt());
            if v != 0.0 {
                kp.insert_add(
                    SpectralIndex::new(h as u32, m as u32).expect("enumeration stays in I_Q"),
                    C64::new(v, 0.0),
                );
            }
        }
    }
    Ok(kp)
}

/// The eigenvalue shell I_j = {(h,m) : (j-1)^2 <= lambda_L < j^2}.
#[derive(Debug, Clone)]
pub struct EigCount {
    pub j: u32,
    pub members: Vec<SpectralIndex>,
}

/// Shell enumeration through the factorization lambda_L/4 = ab - n(n-1)
/// with a = h-m+n, b = m+n-1, avoiding a scan of all of I_Q.
pub fn enumerate_ij(n: usize, j: u32) -> EigCount {
    assert!(j >= 1);
    let nn = n as i64;
    let j = j as i64;
    // 4ab in [lo, hi)
    let lo = (j - 1) * (j - 1) + 4 * nn * (nn - 1);
    let hi = j * j + 4 * nn * (nn - 1);
    let mut members = Vec::new();
    let mut b = nn - 1;
    loop {
        // smallest admissible a is b+1; once 4 b (b+1) >= hi no product fits
        if 4 * b * (b + 1) >= hi {
            break;
        }
        let a_min = std::cmp::max(b + 1, (lo + 4 * b - 1) / (4 * b));
        let mut a = a_min;
        while 4 * a * b < hi {
            if 4 * a * b >= lo {
                let h = a + b - 2 * nn + 1;
                let m = b - nn + 1;
                debug_assert!(h >= 0 && m >= 0 && 2 * m <= h);
                members.push(SpectralIndex { h: h as u32, m: m as u32 });
            }
            a += 1;
        }
        b += 1;
    }
    members.sort();
    EigCount { j: j as u32, members }
}

/// Independent oracle: scan h up to the coarse bound j^2/(4(n-1)).
pub fn enumerate_ij_bruteforce(n: usize, j: u32) -> EigCount {
    let nn = n as u64;
    let j64 = j as u64;
    let h_max = j64 * j64 / (4 * (nn - 1)) + 1;
    let mut members = Vec::new();
    for h in 0..=h_max {
        for m in 0..=h / 2 {
            let lam = lambda_l_raw(nn, h, m);
            if lam >= (j64 - 1) * (j64 - 1) && lam < j64 * j64 {
                members.push(SpectralIndex { h: h as u32, m: m as u32 });
            }
        }
    }
    members.sort();
    EigCount { j, members }
}

/// The weighted shell sum of the counting argument:
/// sum over I_j of (m+1)^{2n-3+alpha/2} (h+1)^{2n-alpha/2} (h-2m+1)^2.
pub fn ij_weighted_sum(n: usize, j: u32, alpha: f64) -> f64 {
    let tn = 2.0 * n as f64;
    enumerate_ij(n, j)
        .members
        .iter()
        .map(|idx| {
            let m1 = (idx.m + 1) as f64;
            let h1 = (idx.h + 1) as f64;
            let gap = (idx.h - 2 * idx.m + 1) as f64;
            m1.powf(tn - 3.0 + alpha / 2.0) * h1.powf(tn - alpha / 2.0) * gap * gap
        })
        .sum()
}

/// One point of the weighted Plancherel scan.
#[derive(Debug, Clone, Serialize)]
pub struct PlancherelPoint {
    pub n_scale: u32,
    pub alpha: f64,
    pub numerator: f64,
    pub denominator: f64,
    pub ratio: f64,
    /// "exact" for alpha in {0, 2}, "majorant" for fractional alpha
    pub route: &'static str,
}

/// sup_y int |K_{F(sqrt L)}(x,y)|^2 w(x,y)^alpha dsigma(x) divided by
/// N^{4n+2-alpha} ||F(N .)||_{N,2}^2. The supremum over y is trivial by
/// invariance. alpha in {0, 2} uses the exact recurrence route; fractional
/// alpha goes through the diagonal majorant ||M^{alpha/2} K||_2^2, the
/// bound the counting argument actually consumes. alpha >= 3 is permitted
/// only in divergence-study mode.
pub fn plancherel_ratio(
    f: &MultiplierFn,
    n: usize,
    alpha: f64,
    n_scale: u32,
    divergence_study: bool,
) -> Result<PlancherelPoint, MultiplierError> {
    if !(0.0..3.0).contains(&alpha) && !divergence_study {
        return Err(MultiplierError::AlphaOutOfRange(alpha));
    }
    let cutoff = (n_scale as u64) * (n_scale as u64);
    let kp = multiplier_kernel(f, n, cutoff, false)?;
    let (numerator, route) = if alpha == 0.0 {
        (kernel_l2_norm_sq_f64(&kp), "exact")
    } else if alpha == 2.0 {
        (weighted_l2_even_f64(&kp, 2).expect("even"), "exact")
    } else {
        (m_alpha_norm_sq_f64(&kp, alpha / 2.0), "majorant")
    };
    let rescaled = f.rescaled(n_scale as f64);
    let nrm = norm_n2(&rescaled, n_scale);
    let denominator = (n_scale as f64).powf(4.0 * n as f64 + 2.0 - alpha) * nrm.value * nrm.value;
    Ok(PlancherelPoint {
        n_scale,
        alpha,
        numerator,
        denominator,
        ratio: numerator / denominator,
        route,
    })
}

/// dim H_{h,m} as an exact polynomial in h for fixed m (degree 2n), used by
/// the Euler-Maclaurin resolvent tail.
fn dim_poly_in_h(n: usize, m: u64) -> Poly1 {
    use crate::scalar::{factorial, rat_int, Rat};
    use num::BigInt;
    let nn = n as i64;
    let m = m as i64;
    let lin = |a0: i64, a1: i64| Poly1::from_coeffs(vec![rat_int(a0), rat_int(a1)]); // a0 + a1 h
    // (h - 2m + 1)^2 (h + 2n - 1) * prod_{i=0}^{2n-4} (h - m + 2n - 2 - i)
    let mut p = lin(1 - 2 * m, 1);
    p = p.mul(&lin(1 - 2 * m, 1));
    p = p.mul(&lin(2 * nn - 1, 1));
    for i in 0..=(2 * nn - 4) {
        p = p.mul(&lin(-m + 2 * nn - 2 - i, 1));
    }
    // constant: C(m+2n-3, 2n-3) / ((2n-2)(2n-1) (2n-3)!)
    let binm = crate::scalar::binomial((m + 2 * nn - 3) as u64, (2 * nn - 3) as u64);
    let den = BigInt::from((2 * nn - 2) * (2 * nn - 1)) * factorial((2 * nn - 3) as u64);
    p.scale(&Rat::new(binm, den))
}

/// Diagonal resolvent sum sum_{(h,m)} dim (1 + r^2 lambda_L)^{-2 ell},
/// with the tail of each fixed-m series evaluated by Euler-Maclaurin
/// against the explicit rational function of h. The remainder estimate
/// must certify eps relative accuracy or the run aborts.
pub fn resolvent_diag_sum(
    n: usize,
    r: f64,
    ell: u32,
    eps: f64,
    head_boost: u32,
) -> Result<f64, MultiplierError> {
    #[allow(clippy::int_plus_one)] // mirrors the stated condition ell >= n+1
    {
        assert!(ell as usize >= n + 1, "need ell >= n+1 for convergence");
    }
    let nn = n as u64;
    let r2 = r * r;
    let p2l = 2 * ell as i32;
    let mut total = 0.0;
    let mut m = 0u64;
    let mut small_streak = 0;
    loop {
        let dim_poly = dim_poly_in_h(n, m);
        let coeffs: Vec<f64> = dim_poly.coeffs().iter().map(|c| num::ToPrimitive::to_f64(c).unwrap()).collect();
        // 1 + r^2 lambda_m(h) = c + e h
        let c = 1.0 - 4.0 * r2 * (m as f64) * (m as f64 - 1.0);
        let e = 4.0 * r2 * (m as f64 + nn as f64 - 1.0);
        let f_at = |h: f64| -> f64 {
            let mut pv = 0.0;
            for ck in coeffs.iter().rev() {
                pv = pv * h + ck;
            }
            pv * (c + e * h).powi(-p2l)
        };
        // head: large enough that the EM remainder certifies eps
        let mut head_end = (2 * m).max(64) * head_boost as u64;
        let deg = coeffs.len() - 1;
        let sm = loop {
            let mut head = 0.0;
            let mut h = 2 * m;
            while h <= head_end {
                head += f_at(h as f64);
                h += 1;
            }
            let a = (head_end + 1) as f64;
            // expand P around -c/e: P(h) = sum Q_k (c + e h)^k
            let x0 = -c / e;
            let mut q = vec![0.0f64; deg + 1];
            // Taylor coefficients of P at x0, then divide by e^k to convert
            // (h - x0)^k into ((c + e h)/e)^k
            let mut dp = coeffs.clone();
            let mut kfact = 1.0;
            for (k, qk) in q.iter_mut().enumerate() {
                let mut pv = 0.0;
                for ck in dp.iter().rev() {
                    pv = pv * x0 + ck;
                }
                *qk = pv / (kfact * e.powi(k as i32));
                // differentiate dp
                for i in 1..dp.len() {
                    dp[i - 1] = dp[i] * i as f64;
                }
                if !dp.is_empty() {
                    let l = dp.len();
                    dp[l - 1] = 0.0;
                }
                kfact *= (k + 1) as f64;
            }
            let u = c + e * a;
            let dseries = |s: i32| -> f64 {
                // f^{(s)}(a) from the power representation
                let mut acc = 0.0;
                for (k, qk) in q.iter().enumerate() {
                    let p = k as i32 - p2l;
                    let mut fall = 1.0;
                    for i in 0..s {
                        fall *= (p - i) as f64;
                    }
                    acc += qk * fall * e.powi(s) * u.powi(p - s);
                }
                acc
            };
            let integral = {
                let mut acc = 0.0;
                for (k, qk) in q.iter().enumerate() {
                    let p = k as i32 - p2l;
                    debug_assert!(p < -1);
                    acc += qk * u.powi(p + 1) / (e * f64::from(-p - 1));
                }
                acc
            };
            let tail = integral + f_at(a) / 2.0 - dseries(1) / 12.0 + dseries(3) / 720.0;
            let rem = dseries(5).abs() / 30240.0;
            let sm = head + tail;
            let scale = (total + sm).abs().max(f64::MIN_POSITIVE);
            if rem <= eps * scale {
                break sm;
            }
            if head_end > 100_000_000 {
                return Err(MultiplierError::TailCertificateFailed(format!(
                    "Euler-Maclaurin remainder {rem:e} above target at m={m}, head_end={head_end}"
                )));
            }
            head_end *= 2;
        };
        total += sm;
        if sm.abs() <= eps * total.abs() {
            small_streak += 1;
            if small_streak >= 3 {
                break;
            }
        } else {
            small_streak = 0;
        }
        if m > 10_000_000 {
            return Err(MultiplierError::TailCertificateFailed(
                "m loop failed to converge".into(),
            ));
        }
        m += 1;
    }
    Ok(total)
}

/// One point of the quasi-distance ball-volume estimate.
#[derive(Debug, Clone, Serialize)]
pub struct BallVolPoint {
    pub r: f64,
    pub estimate: f64,
    pub stderr: f64,
    pub hits: u64,
}

const MC_BATCHES: u64 = 64;

/// Monte Carlo sigma(B_rho(e, r)) for every r in the grid simultaneously:
/// the fraction of uniform samples with quasi_dist(e, y) < r. Batched with
/// per-batch seeds so the result is deterministic for a fixed seed
/// independently of the worker count.
pub fn ball_volume_mc(n: usize, r_grid: &[f64], samples: u64, seed: u64) -> Vec<BallVolPoint> {
    let e = SpherePoint::<f64>::basepoint(n);
    let per_batch = samples / MC_BATCHES;
    let counts: Vec<Vec<u64>> = (0..MC_BATCHES)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (0x9e3779b97f4a7c15u64.wrapping_mul(b + 1)));
            let mut hits = vec![0u64; r_grid.len()];
            for _ in 0..per_batch {
                let y = sample_sphere(&mut rng, n);
                let rho = quasi_dist(&e, &y).expect("same dimension");
                for (i, &r) in r_grid.iter().enumerate() {
                    if rho < r {
                        hits[i] += 1;
                    }
                }
            }
            hits
        })
        .collect();
    let total = per_batch * MC_BATCHES;
    r_grid
        .iter()
        .enumerate()
        .map(|(i, &r)| {
            let hits: u64 = counts.iter().map(|c| c[i]).sum();
            let p = hits as f64 / total as f64;
            BallVolPoint {
                r,
                estimate: p,
                stderr: (p * (1.0 - p) / total as f64).sqrt(),
                hits,
            }
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct WeightIntPoint {
    pub r: f64,
    pub alpha: f64,
    pub estimate: f64,
    pub stderr: f64,
    /// min(r^{4n+2-alpha}, 1)
    pub reference: f64,
    pub ratio: f64,
}

/// Monte Carlo int over the rho-ball B(e,r) of w(e,y)^{-alpha} dsigma(y),
/// reported against the reference min(r^{4n+2-alpha}, 1).
pub fn weight_integral_mc(
    n: usize,
    r_grid: &[f64],
    alpha: f64,
    samples: u64,
    seed: u64,
) -> Vec<WeightIntPoint> {
    assert!((0.0..3.0).contains(&alpha), "need 0 <= alpha < 3 for integrability");
    let e = SpherePoint::<f64>::basepoint(n);
    let per_batch = samples / MC_BATCHES;
    let sums: Vec<Vec<(f64, f64)>> = (0..MC_BATCHES)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (0xd1342543de82ef95u64.wrapping_mul(b + 1)));
            let mut acc = vec![(0.0f64, 0.0f64); r_grid.len()];
            for _ in 0..per_batch {
                let y = sample_sphere(&mut rng, n);
                let rho = quasi_dist(&e, &y).expect("same dimension");
                let w = weight_w(&e, &y).expect("same dimension").max(1e-300);
                let v = w.powf(-alpha);
                for (i, &r) in r_grid.iter().enumerate() {
                    if rho < r {
                        acc[i].0 += v;
                        acc[i].1 += v * v;
                    }
                }
            }
            acc
        })
        .collect();
    let total = (per_batch * MC_BATCHES) as f64;
    r_grid
        .iter()
        .enumerate()
        .map(|(i, &r)| {
            let sum: f64 = sums.iter().map(|s| s[i].0).sum();
            let sumsq: f64 = sums.iter().map(|s| s[i].1).sum();
            let mean = sum / total;
            let var = (sumsq / total - mean * mean).max(0.0);
            let stderr = (var / total).sqrt();
            let reference = r.powf(4.0 * n as f64 + 2.0 - alpha).min(1.0);
            WeightIntPoint { r, alpha, estimate: mean, stderr, reference, ratio: mean / reference }
        })
        .collect()
}

/// Weighted least-squares slope of log(y) against log(x); weights are
/// typically Poisson hit counts. Returns (slope, stderr-ish scale).
pub fn fit_loglog_weighted(points: &[(f64, f64, f64)]) -> (f64, f64) {
    let mut sw = 0.0;
    let mut sx = 0.0;
    let mut sy = 0.0;
    for &(x, y, w) in points {
        sw += w;
        sx += w * x.ln();
        sy += w * y.ln();
    }
    let xb = sx / sw;
    let yb = sy / sw;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for &(x, y, w) in points {
        let dx = x.ln() - xb;
        sxx += w * dx * dx;
        sxy += w * dx * (y.ln() - yb);
    }
    (sxy / sxx, sxx.sqrt().recip())
}
