//! Quaternion algebra, points of H^n and of the unit sphere S^{4n-1}.
//!
//! H^n is a left H-module; scalars multiply on the left. The fixed real
//! coordinate order is (a_1, b_1, c_1, d_1, ..., a_n, b_n, c_n, d_n), and
//! every other module relies on this single convention.

use crate::scalar::{Rat, Scalar};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum QuatError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("input is not a unit vector (|<x,x>| - 1 = {0:e})")]
    NotUnit(f64),
}

/// Quaternion a + b i + c j + d k over an exact or floating scalar domain.
#[derive(Debug, Clone, PartialEq)]
pub struct Quaternion<S: Scalar> {
    pub a: S,
    pub b: S,
    pub c: S,
    pub d: S,
}

impl<S: Scalar> Quaternion<S> {
    pub fn new(a: S, b: S, c: S, d: S) -> Self {
        Quaternion { a, b, c, d }
    }

    pub fn zero() -> Self {
        Quaternion::new(S::s_zero(), S::s_zero(), S::s_zero(), S::s_zero())
    }

    pub fn one() -> Self {
        Quaternion::new(S::s_one(), S::s_zero(), S::s_zero(), S::s_zero())
    }

    pub fn unit_i() -> Self {
        Quaternion::new(S::s_zero(), S::s_one(), S::s_zero(), S::s_zero())
    }

    pub fn unit_j() -> Self {
        Quaternion::new(S::s_zero(), S::s_zero(), S::s_one(), S::s_zero())
    }

    pub fn unit_k() -> Self {
        Quaternion::new(S::s_zero(), S::s_zero(), S::s_zero(), S::s_one())
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        Quaternion::new(S::s_from_i64(a), S::s_from_i64(b), S::s_from_i64(c), S::s_from_i64(d))
    }

    pub fn re(&self) -> S {
        self.a.clone()
    }

    pub fn conj(&self) -> Self {
        Quaternion::new(self.a.clone(), self.b.s_neg(), self.c.s_neg(), self.d.s_neg())
    }

    /// |x|^2 = x conj(x), a scalar.
    pub fn norm_sq(&self) -> S {
        let aa = self.a.s_mul(&self.a);
        let bb = self.b.s_mul(&self.b);
        let cc = self.c.s_mul(&self.c);
        let dd = self.d.s_mul(&self.d);
        aa.s_add(&bb).s_add(&cc).s_add(&dd)
    }

    pub fn add(&self, o: &Self) -> Self {
        Quaternion::new(
            self.a.s_add(&o.a),
            self.b.s_add(&o.b),
            self.c.s_add(&o.c),
            self.d.s_add(&o.d),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        Quaternion::new(
            self.a.s_sub(&o.a),
            self.b.s_sub(&o.b),
            self.c.s_sub(&o.c),
            self.d.s_sub(&o.d),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.a.s_is_zero() && self.b.s_is_zero() && self.c.s_is_zero() && self.d.s_is_zero()
    }
}

/// Quaternion product from i^2 = j^2 = k^2 = ijk = -1 (so ij = k, jk = i,
/// ki = j and the reversed products pick up a sign).
pub fn quat_mul<S: Scalar>(p: &Quaternion<S>, q: &Quaternion<S>) -> Quaternion<S> {
    let (a1, b1, c1, d1) = (&p.a, &p.b, &p.c, &p.d);
    let (a2, b2, c2, d2) = (&q.a, &q.b, &q.c, &q.d);
    let a = a1
        .s_mul(a2)
        .s_sub(&b1.s_mul(b2))
        .s_sub(&c1.s_mul(c2))
        .s_sub(&d1.s_mul(d2));
    let b = a1
        .s_mul(b2)
        .s_add(&b1.s_mul(a2))
        .s_add(&c1.s_mul(d2))
        .s_sub(&d1.s_mul(c2));
    let c = a1
        .s_mul(c2)
        .s_sub(&b1.s_mul(d2))
        .s_add(&c1.s_mul(a2))
        .s_add(&d1.s_mul(b2));
    let d = a1
        .s_mul(d2)
        .s_add(&b1.s_mul(c2))
        .s_sub(&c1.s_mul(b2))
        .s_add(&d1.s_mul(a2));
    Quaternion::new(a, b, c, d)
}

/// Point of H^n.
#[derive(Debug, Clone, PartialEq)]
pub struct HPoint<S: Scalar> {
    pub coords: Vec<Quaternion<S>>,
}

impl<S: Scalar> HPoint<S> {
    pub fn new(coords: Vec<Quaternion<S>>) -> Self {
        HPoint { coords }
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    /// First standard basis vector e = (1, 0, ..., 0).
    pub fn basepoint(n: usize) -> Self {
        let mut coords = vec![Quaternion::zero(); n];
        coords[0] = Quaternion::one();
        HPoint { coords }
    }

    /// Flatten to the fixed real coordinate order.
    pub fn to_real_coords(&self) -> Vec<S> {
        let mut out = Vec::with_capacity(4 * self.coords.len());
        for q in &self.coords {
            out.push(q.a.clone());
            out.push(q.b.clone());
            out.push(q.c.clone());
            out.push(q.d.clone());
        }
        out
    }

    pub fn from_real_coords(coords: &[S]) -> Self {
        assert!(coords.len() % 4 == 0, "real coordinate count must be 4n");
        let qs = coords
            .chunks(4)
            .map(|c| Quaternion::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()))
            .collect();
        HPoint { coords: qs }
    }
}

/// <x,y> = sum_l x_l conj(y_l); Re of the result is the R^{4n} dot product.
pub fn hermitian_inner<S: Scalar>(
    x: &HPoint<S>,
    y: &HPoint<S>,
) -> Result<Quaternion<S>, QuatError> {
    if x.n() != y.n() {
        return Err(QuatError::DimensionMismatch(x.n(), y.n()));
    }
    let mut acc = Quaternion::zero();
    for (xl, yl) in x.coords.iter().zip(&y.coords) {
        acc = acc.add(&quat_mul(xl, &yl.conj()));
    }
    Ok(acc)
}

/// Point on the unit sphere of H^n. In the exact domain the unit condition
/// is checked exactly; in the float domain to 1e-12.
#[derive(Debug, Clone, PartialEq)]
pub struct SpherePoint<S: Scalar> {
    point: HPoint<S>,
}

pub const UNIT_TOL: f64 = 1e-12;

impl<S: Scalar> SpherePoint<S> {
    pub fn new(point: HPoint<S>) -> Result<Self, QuatError> {
        let mut nsq = S::s_zero();
        for q in &point.coords {
            nsq = nsq.s_add(&q.norm_sq());
        }
        let dev = nsq.s_to_f64() - 1.0;
        if dev.abs() > UNIT_TOL {
            return Err(QuatError::NotUnit(dev));
        }
        Ok(SpherePoint { point })
    }

    pub fn basepoint(n: usize) -> Self {
        SpherePoint { point: HPoint::basepoint(n) }
    }

    pub fn point(&self) -> &HPoint<S> {
        &self.point
    }

    pub fn n(&self) -> usize {
        self.point.n()
    }

    pub fn to_real_coords(&self) -> Vec<S> {
        self.point.to_real_coords()
    }
}

impl SpherePoint<Rat> {
    /// Exact domain: the unit condition must hold exactly.
    pub fn new_exact(point: HPoint<Rat>) -> Result<Self, QuatError> {
        let mut nsq = Rat::s_zero();
        for q in &point.coords {
            nsq = nsq.s_add(&q.norm_sq());
        }
        if nsq != Rat::s_one() {
            return Err(QuatError::NotUnit(nsq.s_to_f64() - 1.0));
        }
        Ok(SpherePoint { point })
    }
}

/// 1 - |<x,y>|^2, the squared weight, in the scalar domain of the inputs.
/// Exact inputs give the exact radicand, which is what makes the symmetry
/// w(x,y) = w(y,x) hold exactly rather than to rounding.
pub fn weight_sq<S: Scalar>(x: &SpherePoint<S>, y: &SpherePoint<S>) -> Result<S, QuatError> {
    let inner = hermitian_inner(x.point(), y.point())?;
    Ok(S::s_one().s_sub(&inner.norm_sq()))
}

/// w(x,y) = sqrt(1 - |<x,y>|^2), in [0,1]; zero iff |<x,y>| = 1.
pub fn weight_w<S: Scalar>(x: &SpherePoint<S>, y: &SpherePoint<S>) -> Result<f64, QuatError> {
    let wsq = weight_sq(x, y)?.s_to_f64();
    if wsq < -1e-10 {
        return Err(QuatError::NotUnit(wsq));
    }
    Ok(wsq.max(0.0).sqrt())
}

/// Quasi-distance rho(x,y) = |1 - <x,y>|^{1/2}, the two-sided equivalent of
/// the sub-Riemannian distance on the sphere.
pub fn quasi_dist<S: Scalar>(x: &SpherePoint<S>, y: &SpherePoint<S>) -> Result<f64, QuatError> {
    let inner = hermitian_inner(x.point(), y.point())?;
    let one_minus = Quaternion::one().sub(&inner);
    Ok(one_minus.norm_sq().s_to_f64().max(0.0).powf(0.25))
}

/// rho(x,y)^4 = |1 - <x,y>|^2, exact in the scalar domain.
pub fn quasi_dist_pow4<S: Scalar>(x: &SpherePoint<S>, y: &SpherePoint<S>) -> Result<S, QuatError> {
    let inner = hermitian_inner(x.point(), y.point())?;
    Ok(Quaternion::one().sub(&inner).norm_sq())
}

/// Uniform sample w.r.t. the rotation-invariant probability measure:
/// a 4n-dimensional standard Gaussian draw, normalized.
pub fn sample_sphere<R: Rng + ?Sized>(rng: &mut R, n: usize) -> SpherePoint<f64> {
    assert!(n >= 2, "quaternionic dimension must be at least 2");
    loop {
        let mut coords = vec![0.0f64; 4 * n];
        let mut nsq = 0.0;
        for c in coords.iter_mut() {
            let g: f64 = StandardNormal.sample(rng);
            *c = g;
            nsq += g * g;
        }
        if nsq < 1e-30 {
            continue;
        }
        let inv = nsq.sqrt().recip();
        for c in coords.iter_mut() {
            *c *= inv;
        }
        return SpherePoint { point: HPoint::from_real_coords(&coords) };
    }
}

/// Convenience: seeded sampler for reproducible runs.
pub fn sample_sphere_seeded(seed: u64, n: usize) -> SpherePoint<f64> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    sample_sphere(&mut rng, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type QR = Quaternion<Rat>;

    fn rand_quat(rng: &mut ChaCha8Rng) -> QR {
        let mut pick = || rat(rng.random_range(-6i64..=6), rng.random_range(1i64..=4));
        QR::new(pick(), pick(), pick(), pick())
    }

    #[test]
    fn multiplication_table() {
        let i = QR::unit_i();
        let j = QR::unit_j();
        let k = QR::unit_k();
        assert_eq!(quat_mul(&i, &j), k);
        assert_eq!(quat_mul(&j, &k), i);
        assert_eq!(quat_mul(&k, &i), j);
        assert_eq!(quat_mul(&j, &i), QR::new(rat_int(0), rat_int(0), rat_int(0), rat_int(-1)));
        assert_eq!(quat_mul(&i, &i), QR::from_ints(-1, 0, 0, 0));
        // x * 1 = x
        let x = QR::from_ints(3, -2, 5, 7);
        assert_eq!(quat_mul(&x, &QR::one()), x);
        // (i+j)(i-j) = -2k
        let p = i.add(&j);
        let q = i.sub(&j);
        assert_eq!(quat_mul(&p, &q), QR::from_ints(0, 0, 0, -2));
    }

    #[test]
    fn associative_and_norm_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let x = rand_quat(&mut rng);
            let y = rand_quat(&mut rng);
            let z = rand_quat(&mut rng);
            assert_eq!(quat_mul(&quat_mul(&x, &y), &z), quat_mul(&x, &quat_mul(&y, &z)));
            let pr = quat_mul(&x, &y);
            assert_eq!(pr.norm_sq(), x.norm_sq() * y.norm_sq());
            // conj(conj(x)) = x and x conj(x) purely real
            assert_eq!(x.conj().conj(), x);
            let xc = quat_mul(&x, &x.conj());
            assert!(xc.b.s_is_zero() && xc.c.s_is_zero() && xc.d.s_is_zero());
        }
    }

    #[test]
    fn hermitian_inner_examples() {
        let e = HPoint::<Rat>::basepoint(2);
        assert_eq!(hermitian_inner(&e, &e).unwrap(), QR::one());
        // x = (i,0), y = (j,0): <x,y> = i conj(j) = -ij = -k
        let x = HPoint::new(vec![QR::unit_i(), QR::zero()]);
        let y = HPoint::new(vec![QR::unit_j(), QR::zero()]);
        assert_eq!(hermitian_inner(&x, &y).unwrap(), QR::from_ints(0, 0, 0, -1));
        // hermitian symmetry and left-linearity on random points
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let mk = |rng: &mut ChaCha8Rng| {
                HPoint::new(vec![rand_quat(rng), rand_quat(rng), rand_quat(rng)])
            };
            let x = mk(&mut rng);
            let y = mk(&mut rng);
            let z = mk(&mut rng);
            let q = rand_quat(&mut rng);
            let xy = hermitian_inner(&x, &y).unwrap();
            let yx = hermitian_inner(&y, &x).unwrap();
            assert_eq!(xy, yx.conj());
            // additivity in the first slot
            let xz = HPoint::new(
                x.coords.iter().zip(&z.coords).map(|(a, b)| a.add(b)).collect(),
            );
            let lhs = hermitian_inner(&xz, &y).unwrap();
            assert_eq!(lhs, xy.add(&hermitian_inner(&z, &y).unwrap()));
            // <qx, y> = q <x,y>
            let qx = HPoint::new(x.coords.iter().map(|c| quat_mul(&q, c)).collect());
            assert_eq!(hermitian_inner(&qx, &y).unwrap(), quat_mul(&q, &xy));
        }
        let short = HPoint::new(vec![QR::one()]);
        assert!(matches!(
            hermitian_inner(&e, &short),
            Err(QuatError::DimensionMismatch(2, 1))
        ));
    }

    #[test]
    fn weight_and_quasi_dist() {
        let e = SpherePoint::<Rat>::basepoint(2);
        assert_eq!(weight_w(&e, &e).unwrap(), 0.0);
        // orthogonal point: second coordinate 1
        let y = SpherePoint::new_exact(HPoint::new(vec![QR::zero(), QR::one()])).unwrap();
        assert_eq!(weight_w(&e, &y).unwrap(), 1.0);
        assert_eq!(weight_sq(&e, &y).unwrap(), rat_int(1));
        // x = e, y = (3/5, 4/5): |<x,y>|^2 = 9/25
        let half = SpherePoint::new_exact(HPoint::new(vec![
            QR::new(rat(3, 5), rat_int(0), rat_int(0), rat_int(0)),
            QR::new(rat(4, 5), rat_int(0), rat_int(0), rat_int(0)),
        ]))
        .unwrap();
        assert_eq!(weight_sq(&e, &half).unwrap(), rat(16, 25));
        // quasi-distance: x = y gives 0; <x,y> = -1 gives sqrt(2)
        assert_eq!(quasi_dist(&e, &e).unwrap(), 0.0);
        let minus = SpherePoint::new_exact(HPoint::new(vec![QR::from_ints(-1, 0, 0, 0), QR::zero()]))
            .unwrap();
        assert!((quasi_dist(&e, &minus).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        // <x,y> = k: |1-k|^{1/2} = 2^{1/4}
        let yk = SpherePoint::new_exact(HPoint::new(vec![QR::unit_k().conj(), QR::zero()])).unwrap();
        // <e, conj(k) e1> = conj(conj(k)) = ... compute directly instead:
        let d = quasi_dist(&yk, &e).unwrap();
        assert!((d - 2f64.powf(0.25)).abs() < 1e-15);
        // symmetry of the weight, exactly, in the exact domain
        assert_eq!(weight_sq(&e, &half).unwrap(), weight_sq(&half, &e).unwrap());
    }

    #[test]
    fn sphere_sampling_statistics() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let n = 2;
        let samples = 100_000;
        let mut sum_re = 0.0;
        let mut sum_abs1 = 0.0;
        for _ in 0..samples {
            let x = sample_sphere(&mut rng, n);
            let coords = x.to_real_coords();
            let nsq: f64 = coords.iter().map(|c| c * c).sum();
            assert!((nsq.sqrt() - 1.0).abs() <= UNIT_TOL);
            sum_re += coords[0];
            sum_abs1 += coords[0] * coords[0]
                + coords[1] * coords[1]
                + coords[2] * coords[2]
                + coords[3] * coords[3];
        }
        let mean_re = sum_re / samples as f64;
        let mean_abs1 = sum_abs1 / samples as f64;
        // Re<x,e> has mean 0 by symmetry; |x_1|^2 has mean 1/n by exchangeability.
        assert!(mean_re.abs() < 3e-2, "mean_re = {mean_re}");
        assert!((mean_abs1 - 1.0 / n as f64).abs() < 5e-3, "mean_abs1 = {mean_abs1}");
    }
}
