//! Chebyshev polynomials of the second kind and shifted Jacobi polynomials
//! with exact rational coefficients, built from their explicit coefficient
//! sums rather than generic recurrences so that no normalization convention
//! can drift. The three-term identity for multiplication by t is the
//! independent cross-check.

use crate::scalar::{binomial, factorial, Rat};
use num::{BigInt, One, Zero};

/// Univariate polynomial with exact rational coefficients, dense in t,
/// trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly1 {
    coeffs: Vec<Rat>,
}

impl Poly1 {
    pub fn zero() -> Self {
        Poly1 { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly1 { coeffs }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of t^k (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn eval(&self, t: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c.to_f64();
        }
        acc
    }

    pub fn add(&self, o: &Poly1) -> Poly1 {
        let len = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..len).map(|k| self.coeff(k) + o.coeff(k)).collect();
        Poly1::from_coeffs(coeffs)
    }

    pub fn scale(&self, r: &Rat) -> Poly1 {
        Poly1::from_coeffs(self.coeffs.iter().map(|c| c * r).collect())
    }

    pub fn mul(&self, o: &Poly1) -> Poly1 {
        if self.is_zero() || o.is_zero() {
            return Poly1::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly1::from_coeffs(coeffs)
    }

    /// Multiplication by t (degree shift).
    pub fn shift_up(&self) -> Poly1 {
        if self.is_zero() {
            return Poly1::zero();
        }
        let mut coeffs = vec![Rat::zero()];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly1::from_coeffs(coeffs)
    }
}

trait ToF64 {
    fn to_f64(&self) -> f64;
}
impl ToF64 for Rat {
    fn to_f64(&self) -> f64 {
        num::ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// Chebyshev polynomial of the second kind:
/// U_q(t) = sum_{j=0}^{floor(q/2)} (-1)^j C(q-j, j) (2t)^{q-2j}.
pub fn chebyshev_u(q: u32) -> Poly1 {
    let mut coeffs = vec![Rat::zero(); q as usize + 1];
    for j in 0..=(q / 2) {
        let pow = (q - 2 * j) as usize;
        let mut c = binomial((q - j) as u64, j as u64) * BigInt::from(2u32).pow(pow as u32);
        if j % 2 == 1 {
            c = -c;
        }
        coeffs[pow] = Rat::from_integer(c);
    }
    Poly1::from_coeffs(coeffs)
}

/// Shifted Jacobi polynomial G^{(alpha,beta)}_m(t) = P^{(alpha,beta)}_m(2t-1):
/// prefactor (beta+m)!/(m! (alpha+beta+m)!) times
/// sum_l (-1)^l C(m,l) (alpha+beta+2m-l)!/(beta+m-l)! t^{m-l}.
pub fn jacobi_g(m: u32, alpha: u32, beta: u32) -> Poly1 {
    let m64 = m as u64;
    let a64 = alpha as u64;
    let b64 = beta as u64;
    let pref = Rat::new(factorial(b64 + m64), factorial(m64) * factorial(a64 + b64 + m64));
    let mut coeffs = vec![Rat::zero(); m as usize + 1];
    for l in 0..=m64 {
        let mut num = binomial(m64, l) * factorial(a64 + b64 + 2 * m64 - l);
        if l % 2 == 1 {
            num = -num;
        }
        let den = factorial(b64 + m64 - l);
        coeffs[(m64 - l) as usize] = &pref * Rat::new(num, den);
    }
    Poly1::from_coeffs(coeffs)
}

/// G_{-1} is the zero polynomial; used at the recurrence edge.
pub fn jacobi_g_signed(m: i64, alpha: u32, beta: u32) -> Poly1 {
    if m < 0 {
        Poly1::zero()
    } else {
        jacobi_g(m as u32, alpha, beta)
    }
}

/// Coefficients (r_up, r_mid, r_down) of the identity
/// t G_m = r_up G_{m+1} + r_mid G_m + r_down G_{m-1}.
pub fn jacobi_three_term(m: u32, alpha: u32, beta: u32) -> (Rat, Rat, Rat) {
    let m = m as i64;
    let a = alpha as i64;
    let b = beta as i64;
    let ri = |v: i64| Rat::from_integer(BigInt::from(v));
    let r_up = ri((m + 1) * (m + a + b + 1)) / ri((2 * m + a + b + 2) * (2 * m + a + b + 1));
    // (alpha-beta)(alpha+beta) vanishes identically when alpha = beta, in
    // which case the printed fraction is 0 even at the 0/0 edge m = 0,
    // alpha = beta = 0.
    let num = (a - b) * (a + b);
    let frac = if num == 0 {
        Rat::zero()
    } else {
        ri(num) / ri((2 * m + a + b + 2) * (2 * m + a + b))
    };
    let r_mid = (Rat::one() - frac) / ri(2);
    // r_down multiplies G_{m-1}, the zero polynomial when m = 0.
    let r_down = if m == 0 {
        Rat::zero()
    } else {
        ri((m + a) * (m + b)) / ri((2 * m + a + b + 1) * (2 * m + a + b))
    };
    (r_up, r_mid, r_down)
}
