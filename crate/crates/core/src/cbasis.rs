//! Complex indeterminates compatible with the complex structure induced by
//! left multiplication by the imaginary unit i.
//!
//! With the fixed real coordinate order (a_l, b_l, c_l, d_l) per quaternion
//! slot, the C-linear functionals are z_{2l} = a_l + i b_l and
//! z_{2l+1} = c_l + i d_l (0-based). A `CPoly` stores coefficients w.r.t.
//! the monomials z^alpha conj(z)^beta with exponent layout
//! [alpha_0..alpha_{2n-1} | beta_0..beta_{2n-1}].
//!
//! Bidegree components are direct summands here, which is what makes the
//! eigenspace computations block-diagonal and cheap: the vector fields act
//! with small closed-form stencils on these monomials, validated against
//! the real-coordinate operators by exact round-trip tests.

use crate::ops;
use crate::poly::{Exp, Poly, TermMap};
use crate::scalar::{binomial, CRat, Rat};
use num::{BigInt, One, Zero};

/// Polynomial written in the complex indeterminates z, conj(z).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CPoly {
    n: usize,
    terms: TermMap,
}

impl CPoly {
    pub fn zero(n: usize) -> Self {
        CPoly { n, terms: TermMap::new() }
    }

    pub fn monomial(n: usize, exp: Exp, coeff: CRat) -> Self {
        assert_eq!(exp.len(), 4 * n);
        let mut t = TermMap::new();
        t.insert_add(exp, coeff);
        CPoly { n, terms: t }
    }

    pub fn from_term_map(n: usize, terms: TermMap) -> Self {
        CPoly { n, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &TermMap {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn add(&self, o: &CPoly) -> CPoly {
        assert_eq!(self.n, o.n);
        let mut t = self.terms.clone();
        t.add_assign(&o.terms);
        CPoly { n: self.n, terms: t }
    }

    pub fn sub(&self, o: &CPoly) -> CPoly {
        assert_eq!(self.n, o.n);
        let mut t = self.terms.clone();
        t.sub_assign(&o.terms);
        CPoly { n: self.n, terms: t }
    }

    pub fn scale(&self, c: &CRat) -> CPoly {
        CPoly { n: self.n, terms: self.terms.scale(c) }
    }

    /// Bidegree (|alpha|, |beta|) when every term agrees.
    pub fn bidegree(&self) -> Option<(u32, u32)> {
        let mut bd = None;
        for (e, _) in self.terms.iter() {
            let nv = 2 * self.n;
            let p: u32 = e[..nv].iter().sum();
            let q: u32 = e[nv..].iter().sum();
            match bd {
                None => bd = Some((p, q)),
                Some(prev) if prev != (p, q) => return None,
                _ => {}
            }
        }
        bd
    }
}

/// Real-coordinate polynomial -> complex-basis coefficients.
pub fn to_cbasis(p: &Poly) -> CPoly {
    let n = p.n();
    let nv = 2 * n;
    let half = CRat::from_rat(Rat::new(BigInt::one(), BigInt::from(2)));
    let minus_half_i = CRat::new(Rat::zero(), Rat::new(BigInt::from(-1), BigInt::from(2)));
    let mut out = TermMap::new();
    for (exp, coeff) in p.terms().iter() {
        // expand each real coordinate power binomially
        let mut partial: Vec<(Exp, CRat)> = vec![(vec![0u32; 4 * n], coeff.clone())];
        for (i, &e) in exp.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let zi = i / 2; // complex variable index
            let odd = i % 2 == 1; // imaginary component of the pair
            let mut next: Vec<(Exp, CRat)> = Vec::with_capacity(partial.len() * (e as usize + 1));
            for (pe, pc) in &partial {
                for a in 0..=e {
                    let b = e - a;
                    // (z + conj z)/2 or -(i/2)(z - conj z)
                    let mut factor = if odd {
                        let mut f = minus_half_i.clone();
                        let mut acc = CRat::one();
                        for _ in 0..e {
                            acc = &acc * &f;
                        }
                        f = acc;
                        if b % 2 == 1 {
                            f = -&f;
                        }
                        f
                    } else {
                        let mut acc = CRat::one();
                        for _ in 0..e {
                            acc = &acc * &half;
                        }
                        acc
                    };
                    factor = factor.scale(&Rat::from_integer(binomial(e as u64, a as u64)));
                    let mut ne = pe.clone();
                    ne[zi] += a;
                    ne[nv + zi] += b;
                    next.push((ne, pc * &factor));
                }
            }
            partial = next;
        }
        for (e, c) in partial {
            out.insert_add(e, c);
        }
    }
    CPoly { n, terms: out }
}

/// Complex-basis coefficients -> real-coordinate polynomial.
pub fn from_cbasis(cp: &CPoly) -> Poly {
    let n = cp.n;
    let nv = 2 * n;
    let mut out = TermMap::new();
    for (exp, coeff) in cp.terms.iter() {
        let mut partial: Vec<(Exp, CRat)> = vec![(vec![0u32; 4 * n], coeff.clone())];
        for zi in 0..nv {
            for (conjugated, e) in [(false, exp[zi]), (true, exp[nv + zi])] {
                if e == 0 {
                    continue;
                }
                let re_idx = 2 * zi;
                let im_idx = 2 * zi + 1;
                let mut next: Vec<(Exp, CRat)> = Vec::with_capacity(partial.len() * (e as usize + 1));
                for (pe, pc) in &partial {
                    for a in 0..=e {
                        let b = e - a;
                        // (xi_re + i xi_im)^e or the conjugate
                        let mut factor = CRat::from_rat(Rat::from_integer(binomial(e as u64, a as u64)));
                        let i_pow = b % 4;
                        let mut iv = match i_pow {
                            0 => CRat::one(),
                            1 => CRat::i(),
                            2 => CRat::from_int(-1),
                            _ => -&CRat::i(),
                        };
                        if conjugated {
                            iv = iv.conj();
                        }
                        factor = &factor * &iv;
                        let mut ne = pe.clone();
                        ne[re_idx] += a;
                        ne[im_idx] += b;
                        next.push((ne, pc * &factor));
                    }
                }
                partial = next;
            }
        }
        for (e, c) in partial {
            out.insert_add(e, c);
        }
    }
    Poly::from_term_map(n, out)
}

/// d/dz_i (i < 2n) or d/d conj(z)_{i-2n} (i >= 2n).
pub fn deriv_c(cp: &CPoly, i: usize) -> CPoly {
    let mut t = TermMap::new();
    for (exp, c) in cp.terms.iter() {
        let e = exp[i];
        if e == 0 {
            continue;
        }
        let mut ne = exp.clone();
        ne[i] = e - 1;
        t.insert_add(ne, c.scale(&Rat::from_integer(BigInt::from(e))));
    }
    CPoly { n: cp.n, terms: t }
}

/// Raw Laplacian in complex coordinates: 4 sum_j d2/(dz_j d conj z_j).
pub fn laplace_raw_c(cp: &CPoly) -> CPoly {
    let nv = 2 * cp.n;
    let mut t = TermMap::new();
    for (exp, c) in cp.terms.iter() {
        for j in 0..nv {
            let a = exp[j];
            let b = exp[nv + j];
            if a == 0 || b == 0 {
                continue;
            }
            let mut ne = exp.clone();
            ne[j] = a - 1;
            ne[nv + j] = b - 1;
            let f = Rat::from_integer(BigInt::from(4u32) * BigInt::from(a) * BigInt::from(b));
            t.insert_add(ne, c.scale(&f));
        }
    }
    CPoly { n: cp.n, terms: t }
}

/// Multiplication by |x|^2 = sum_j z_j conj(z_j).
pub fn mult_norm2_c(cp: &CPoly) -> CPoly {
    let nv = 2 * cp.n;
    let mut t = TermMap::new();
    for (exp, c) in cp.terms.iter() {
        for j in 0..nv {
            let mut ne = exp.clone();
            ne[j] += 1;
            ne[nv + j] += 1;
            t.insert_add(ne, c.clone());
        }
    }
    CPoly { n: cp.n, terms: t }
}

/// The ladder operator i T_i, diagonal here: z^a conj(z)^b -> (|a|-|b|) ...
pub fn ladder_zero_c(cp: &CPoly) -> CPoly {
    let nv = 2 * cp.n;
    let mut t = TermMap::new();
    for (exp, c) in cp.terms.iter() {
        let p: i64 = exp[..nv].iter().map(|&e| e as i64).sum();
        let q: i64 = exp[nv..].iter().map(|&e| e as i64).sum();
        if p == q {
            continue;
        }
        t.insert_add(exp.clone(), c.scale(&Rat::from_integer(BigInt::from(p - q))));
    }
    CPoly { n: cp.n, terms: t }
}

/// i T_j - T_k = 2i sum_l (z_{2l+1} d/d conj(z_{2l}) - z_{2l} d/d conj(z_{2l+1})):
/// maps bidegree (p,q) into (p+1, q-1).
pub fn ladder_raise_c(cp: &CPoly) -> CPoly {
    let nv = 2 * cp.n;
    let two_i = CRat::new(Rat::zero(), Rat::from_integer(BigInt::from(2)));
    let mut t = TermMap::new();
    for (exp, c) in cp.terms.iter() {
        for l in 0..cp.n {
            let w = 2 * l;
            let v = 2 * l + 1;
            // z_v d/d conj(z_w)
            let bw = exp[nv + w];
            if bw > 0 {
                let mut ne = exp.clone();
                ne[nv + w] = bw - 1;
                ne[v] += 1;
                let f = &two_i * &c.scale(&Rat::from_integer(BigInt::from(bw)));
                t.insert_add(ne, f);
            }
            // - z_w d/d conj(z_v)
            let bv = exp[nv + v];
            if bv > 0 {
                let mut ne = exp.clone();
                ne[nv + v] = bv - 1;
                ne[w] += 1;
                let f = &two_i * &c.scale(&Rat::from_integer(BigInt::from(bv)));
                t.insert_add(ne, -&f);
            }
        }
    }
    CPoly { n: cp.n, terms: t }
}

/// i T_j + T_k = 2i sum_l (conj(z_{2l+1}) d/dz_{2l} - conj(z_{2l}) d/dz_{2l+1}):
/// maps bidegree (p,q) into (p-1, q+1).
pub fn ladder_lower_c(cp: &CPoly) -> CPoly {
    let nv = 2 * cp.n;
    let two_i = CRat::new(Rat::zero(), Rat::from_integer(BigInt::from(2)));
    let mut t = TermMap::new();
    for (exp, c) in cp.terms.iter() {
        for l in 0..cp.n {
            let w = 2 * l;
            let v = 2 * l + 1;
            let aw = exp[w];
            if aw > 0 {
                let mut ne = exp.clone();
                ne[w] = aw - 1;
                ne[nv + v] += 1;
                let f = &two_i * &c.scale(&Rat::from_integer(BigInt::from(aw)));
                t.insert_add(ne, f);
            }
            let av = exp[v];
            if av > 0 {
                let mut ne = exp.clone();
                ne[v] = av - 1;
                ne[nv + w] += 1;
                let f = &two_i * &c.scale(&Rat::from_integer(BigInt::from(av)));
                t.insert_add(ne, -&f);
            }
        }
    }
    CPoly { n: cp.n, terms: t }
}

/// Gamma in complex coordinates, via Gamma = (iT_i)^2 + (L+ L- + L- L+)/2.
pub fn gamma_c(cp: &CPoly) -> CPoly {
    let d0 = ladder_zero_c(&ladder_zero_c(cp));
    let pm = ladder_raise_c(&ladder_lower_c(cp));
    let mp = ladder_lower_c(&ladder_raise_c(cp));
    let half = CRat::from_rat(Rat::new(BigInt::one(), BigInt::from(2)));
    d0.add(&pm.add(&mp).scale(&half))
}

/// Normal form modulo the ideal (|x|^2): eliminates every occurrence of
/// z_{2n-1} conj(z_{2n-1}) using z_{2n-1} conj(z_{2n-1}) = |x|^2 - rest.
/// Harmonic polynomials are uniquely determined by their normal form, which
/// is what turns normal-form coefficients into coordinates.
pub fn nf_mod_norm2_c(cp: &CPoly) -> CPoly {
    let n = cp.n;
    let nv = 2 * n;
    let last = nv - 1;
    let mut work: Vec<(Exp, CRat)> = cp.terms.iter().map(|(e, c)| (e.clone(), c.clone())).collect();
    let mut out = TermMap::new();
    while let Some((exp, coeff)) = work.pop() {
        let k = exp[last].min(exp[nv + last]);
        if k == 0 {
            out.insert_add(exp, coeff);
            continue;
        }
        // substitute one factor z_last conj(z_last) -> -sum_{j<last} z_j conj(z_j)
        for j in 0..last {
            let mut ne = exp.clone();
            ne[last] -= 1;
            ne[nv + last] -= 1;
            ne[j] += 1;
            ne[nv + j] += 1;
            work.push((ne, -&coeff));
        }
    }
    CPoly { n, terms: out }
}

/// Real-coordinate normal form modulo (|x|^2): eliminates the square of the
/// last real coordinate.
pub fn nf_mod_norm2(p: &Poly) -> Poly {
    let dim = p.dim();
    let last = dim - 1;
    let mut work: Vec<(Exp, CRat)> = p.terms().iter().map(|(e, c)| (e.clone(), c.clone())).collect();
    let mut out = TermMap::new();
    while let Some((exp, coeff)) = work.pop() {
        if exp[last] < 2 {
            out.insert_add(exp, coeff);
            continue;
        }
        for j in 0..last {
            let mut ne = exp.clone();
            ne[last] -= 2;
            ne[j] += 2;
            work.push((ne, -&coeff));
        }
    }
    Poly::from_term_map(p.n(), out)
}

/// All exponent vectors of the given total degree in `nvars` variables,
/// lexicographic order.
pub fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, pos: usize, left: u32) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(cur.clone());
            cur[pos] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e;
            rec(out, cur, pos + 1, left - e);
            cur[pos] = 0;
        }
    }
    if nvars == 0 {
        if deg == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(&mut out, &mut cur, 0, deg);
    out
}

/// Coefficients c_0..c_{floor(h/2)} of the projection onto harmonics along
/// |x|^2-multiples: proj = sum_k c_k |x|^{2k} Delta_raw^k on degree-h
/// polynomials in d real variables. Determined by the triangular system
/// that makes the projection vanish on |x|^{2j} q for harmonic q.
pub fn harmonic_proj_coeffs(d: u32, h: u32) -> Vec<Rat> {
    let kmax = (h / 2) as usize;
    let mut c = vec![Rat::zero(); kmax + 1];
    c[0] = Rat::one();
    for j in 1..=kmax {
        // beta_{j,k} = prod_{i=0}^{k-1} 2(j-i) (2(h-j-i) + d - 2)
        let mut beta = vec![Rat::one(); j + 1];
        for k in 1..=j {
            let i = (k - 1) as i64;
            let f = 2 * (j as i64 - i) * (2 * (h as i64 - j as i64 - i) + d as i64 - 2);
            beta[k] = &beta[k - 1] * Rat::from_integer(BigInt::from(f));
        }
        let mut acc = Rat::zero();
        for k in 0..j {
            acc += &c[k] * &beta[k];
        }
        c[j] = -acc / &beta[j];
    }
    c
}

/// Harmonic component of a homogeneous real-coordinate polynomial.
pub fn harmonic_project(p: &Poly) -> Poly {
    let Some(h) = p.homogeneous_degree() else {
        panic!("harmonic projection requires a homogeneous input");
    };
    let d = 4 * p.n() as u32;
    let coeffs = harmonic_proj_coeffs(d, h);
    let mut acc = Poly::zero(p.n());
    let mut delta_k = p.clone(); // Delta_raw^k p
    for (k, ck) in coeffs.iter().enumerate() {
        if k > 0 {
            delta_k = ops::laplace_nonneg(&delta_k).neg();
        }
        let mut term = delta_k.clone();
        for _ in 0..k {
            term = ops::mult_norm2(&term);
        }
        acc = acc.add(&term.scale_rat(ck)).unwrap();
    }
    acc
}

/// Harmonic component in the complex basis.
pub fn harmonic_project_c(cp: &CPoly, h: u32) -> CPoly {
    let d = 4 * cp.n() as u32;
    let coeffs = harmonic_proj_coeffs(d, h);
    let mut acc = CPoly::zero(cp.n());
    let mut delta_k = cp.clone();
    for (k, ck) in coeffs.iter().enumerate() {
        if k > 0 {
            delta_k = laplace_raw_c(&delta_k);
        }
        let mut term = delta_k.clone();
        for _ in 0..k {
            term = mult_norm2_c(&term);
        }
        acc = acc.add(&term.scale(&CRat::from_rat(ck.clone())));
    }
    acc
}
