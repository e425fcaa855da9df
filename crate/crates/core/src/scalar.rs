//! Exact scalar domains.
//!
//! All identity-level verification runs over arbitrary-precision rationals;
//! Monte Carlo and scaling scans run over `f64`. `CRat` is the complex
//! rational coefficient field used by the polynomial engine.

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

pub type Rat = BigRational;
pub type Int = BigInt;

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

/// Rational n/d.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn factorial(n: u64) -> Int {
    let mut acc = Int::one();
    for k in 2..=n {
        acc *= Int::from(k);
    }
    acc
}

/// (n-1)!! for odd n-1; by convention (-1)!! = 1.
pub fn double_factorial(n: i64) -> Int {
    if n <= 0 {
        return Int::one();
    }
    let mut acc = Int::one();
    let mut k = n;
    while k > 1 {
        acc *= Int::from(k);
        k -= 2;
    }
    acc
}

pub fn binomial(n: u64, k: u64) -> Int {
    if k > n {
        return Int::zero();
    }
    let k = k.min(n - k);
    let mut acc = Int::one();
    for i in 0..k {
        acc = acc * Int::from(n - i) / Int::from(i + 1);
    }
    acc
}

pub fn binomial_u64(n: u64, k: u64) -> u64 {
    binomial(n, k).to_u64().expect("binomial exceeds u64")
}

/// Certified rational square-root enclosure: returns (lo, hi) with
/// lo <= sqrt(x) <= hi and hi - lo <= eps * hi. Used where an exact
/// comparison must be made against an irrational bound.
pub fn sqrt_bounds(x: &Rat, eps: &Rat) -> (Rat, Rat) {
    assert!(!x.is_negative(), "sqrt of negative rational");
    if x.is_zero() {
        return (Rat::zero(), Rat::zero());
    }
    // Newton iteration from an f64 seed converges from above.
    let seed = x.to_f64().unwrap_or(1.0).sqrt().max(f64::MIN_POSITIVE);
    let mut hi = Rat::from_float(seed).unwrap_or_else(Rat::one);
    if &hi * &hi < *x {
        // force an upper starting point
        hi = (&hi + x / &hi) / rat_int(2);
        if &hi * &hi < *x {
            hi = x.clone() + Rat::one();
        }
    }
    let two = rat_int(2);
    loop {
        let lo = x / &hi; // hi >= sqrt(x)  =>  x/hi <= sqrt(x)
        let gap = &hi - &lo;
        if gap <= eps * &hi {
            return (lo, hi);
        }
        hi = (&hi + &lo) / &two;
    }
}

/// Complex number with exact rational real and imaginary parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CRat {
    pub re: Rat,
    pub im: Rat,
}

impl CRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        CRat { re, im }
    }

    pub fn zero() -> Self {
        CRat { re: Rat::zero(), im: Rat::zero() }
    }

    pub fn one() -> Self {
        CRat { re: Rat::one(), im: Rat::zero() }
    }

    pub fn i() -> Self {
        CRat { re: Rat::zero(), im: Rat::one() }
    }

    pub fn from_int(n: i64) -> Self {
        CRat { re: rat_int(n), im: Rat::zero() }
    }

    pub fn from_rat(r: Rat) -> Self {
        CRat { re: r, im: Rat::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        CRat { re: self.re.clone(), im: -self.im.clone() }
    }

    /// |z|^2, exact.
    pub fn norm_sq(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Self {
        let n = self.norm_sq();
        assert!(!n.is_zero(), "division by zero CRat");
        CRat { re: &self.re / &n, im: -(&self.im / &n) }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        CRat { re: &self.re * r, im: &self.im * r }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }
}

impl fmt::Debug for CRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "({} + {}i)", self.re, self.im)
        }
    }
}

impl fmt::Display for CRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Add for &CRat {
    type Output = CRat;
    fn add(self, rhs: &CRat) -> CRat {
        CRat { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &CRat {
    type Output = CRat;
    fn sub(self, rhs: &CRat) -> CRat {
        CRat { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &CRat {
    type Output = CRat;
    fn mul(self, rhs: &CRat) -> CRat {
        CRat {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div for &CRat {
    type Output = CRat;
    // z / w computed as z * conj(w) / |w|^2
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &CRat) -> CRat {
        self * &rhs.inv()
    }
}

impl Neg for &CRat {
    type Output = CRat;
    fn neg(self) -> CRat {
        CRat { re: -self.re.clone(), im: -self.im.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CRat {
            type Output = CRat;
            fn $m(self, rhs: CRat) -> CRat {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for CRat {
    type Output = CRat;
    fn neg(self) -> CRat {
        CRat { re: -self.re, im: -self.im }
    }
}

impl AddAssign<&CRat> for CRat {
    fn add_assign(&mut self, rhs: &CRat) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&CRat> for CRat {
    fn sub_assign(&mut self, rhs: &CRat) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

/// Greatest common divisor of the four integer components of a complex
/// rational written over a common denominator; used to keep elimination
/// pivots small.
pub fn crat_content(z: &CRat) -> Int {
    let mut g = Int::zero();
    for part in [&z.re, &z.im] {
        g = num::Integer::gcd(&g, part.numer());
    }
    g
}

/// Scalar domain abstraction: the quaternion layer supports both the exact
/// rational domain and double precision behind this interface.
pub trait Scalar: Clone + PartialEq + fmt::Debug {
    fn s_zero() -> Self;
    fn s_one() -> Self;
    fn s_add(&self, o: &Self) -> Self;
    fn s_sub(&self, o: &Self) -> Self;
    fn s_mul(&self, o: &Self) -> Self;
    fn s_neg(&self) -> Self;
    fn s_from_i64(n: i64) -> Self;
    fn s_to_f64(&self) -> f64;
    fn s_is_zero(&self) -> bool;
}

impl Scalar for f64 {
    fn s_zero() -> Self {
        0.0
    }
    fn s_one() -> Self {
        1.0
    }
    fn s_add(&self, o: &Self) -> Self {
        self + o
    }
    fn s_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn s_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn s_neg(&self) -> Self {
        -self
    }
    fn s_from_i64(n: i64) -> Self {
        n as f64
    }
    fn s_to_f64(&self) -> f64 {
        *self
    }
    fn s_is_zero(&self) -> bool {
        *self == 0.0
    }
}

impl Scalar for Rat {
    fn s_zero() -> Self {
        Rat::zero()
    }
    fn s_one() -> Self {
        Rat::one()
    }
    fn s_add(&self, o: &Self) -> Self {
        self + o
    }
    fn s_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn s_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn s_neg(&self) -> Self {
        -self.clone()
    }
    fn s_from_i64(n: i64) -> Self {
        rat_int(n)
    }
    fn s_to_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
    fn s_is_zero(&self) -> bool {
        self.is_zero()
    }
}

/// Canonical "p/q" rendering used by the JSON interchange format.
pub fn rat_to_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parse the canonical "p/q" form (a bare integer is also accepted).
pub fn rat_from_string(s: &str) -> Option<Rat> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: Int = num.parse().ok()?;
    let d: Int = den.parse().ok()?;
    if d.is_zero() || d.sign() == Sign::Minus {
        return None;
    }
    Some(Rat::new(n, d))
}
