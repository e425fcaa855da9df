//! Differential and multiplication operators on polynomials, the Fischer
//! inner product, and exact integration over the sphere.
//!
//! Sign convention: the ambient Laplacian is taken nonnegative,
//! `laplace_nonneg` = -sum of second partials, so that the spherical
//! Laplacian has the positive eigenvalues h(h+4n-2) on degree-h harmonics.

use crate::poly::{Exp, Poly, TermMap};
use crate::scalar::{factorial, double_factorial, CRat, Rat};
use num::{BigInt, One, Zero};
use std::collections::HashMap;

/// x -> |x|^2 as a polynomial.
pub fn norm_sq_poly(n: usize) -> Poly {
    let mut t = TermMap::new();
    for i in 0..4 * n {
        let mut exp = vec![0u32; 4 * n];
        exp[i] = 2;
        t.insert_add(exp, CRat::one());
    }
    Poly::from_term_map(n, t)
}

/// Partial derivative along coordinate i.
pub fn deriv(p: &Poly, i: usize) -> Poly {
    let mut t = TermMap::new();
    for (exp, c) in p.terms().iter() {
        let e = exp[i];
        if e == 0 {
            continue;
        }
        let mut ne = exp.clone();
        ne[i] = e - 1;
        t.insert_add(ne, c.scale(&Rat::from_integer(BigInt::from(e))));
    }
    Poly::from_term_map(p.n(), t)
}

/// Euler (degree) operator: maps a monomial of total degree h to h times
/// itself.
pub fn euler_theta(p: &Poly) -> Poly {
    let mut t = TermMap::new();
    for (exp, c) in p.terms().iter() {
        let deg: u32 = exp.iter().sum();
        if deg == 0 {
            continue;
        }
        t.insert_add(exp.clone(), c.scale(&Rat::from_integer(BigInt::from(deg))));
    }
    Poly::from_term_map(p.n(), t)
}

fn laplace_raw(p: &Poly) -> Poly {
    let mut t = TermMap::new();
    for (exp, c) in p.terms().iter() {
        for i in 0..exp.len() {
            let e = exp[i];
            if e < 2 {
                continue;
            }
            let mut ne = exp.clone();
            ne[i] = e - 2;
            let f = Rat::from_integer(BigInt::from(e) * BigInt::from(e - 1));
            t.insert_add(ne, c.scale(&f));
        }
    }
    Poly::from_term_map(p.n(), t)
}

/// Nonnegative Laplacian: -sum_i d^2/dxi_i^2.
pub fn laplace_nonneg(p: &Poly) -> Poly {
    laplace_raw(p).neg()
}

/// Multiplication by |x|^2; raises homogeneous degree by 2.
pub fn mult_norm2(p: &Poly) -> Poly {
    let mut t = TermMap::new();
    for (exp, c) in p.terms().iter() {
        for i in 0..exp.len() {
            let mut ne = exp.clone();
            ne[i] += 2;
            t.insert_add(ne, c.clone());
        }
    }
    Poly::from_term_map(p.n(), t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImUnit {
    I,
    J,
    K,
}

/// Per-quaternion-block action of the tangent field x -> -u x on the real
/// coordinates (a,b,c,d): entries (derivative slot, variable slot, sign)
/// meaning sign * xi_{var} * d/d xi_{deriv}. Derived from left
/// multiplication by -i, -j, -k; guarded by the commutation tests below.
const T_TABLE_I: [(usize, usize, i8); 4] = [(0, 1, 1), (1, 0, -1), (2, 3, 1), (3, 2, -1)];
const T_TABLE_J: [(usize, usize, i8); 4] = [(0, 2, 1), (1, 3, -1), (2, 0, -1), (3, 1, 1)];
const T_TABLE_K: [(usize, usize, i8); 4] = [(0, 3, 1), (1, 2, 1), (2, 1, -1), (3, 0, -1)];

/// Derivation of p along the linear vector field x -> -u x (tangent to
/// every sphere centred at the origin).
pub fn vector_field_t(u: ImUnit, p: &Poly) -> Poly {
    let table = match u {
        ImUnit::I => &T_TABLE_I,
        ImUnit::J => &T_TABLE_J,
        ImUnit::K => &T_TABLE_K,
    };
    let n = p.n();
    let mut t = TermMap::new();
    for (exp, c) in p.terms().iter() {
        for block in 0..n {
            let base = 4 * block;
            for &(dslot, vslot, sign) in table {
                let di = base + dslot;
                let e = exp[di];
                if e == 0 {
                    continue;
                }
                let mut ne = exp.clone();
                ne[di] = e - 1;
                ne[base + vslot] += 1;
                let f = Rat::from_integer(BigInt::from(i64::from(sign) * i64::from(e)));
                t.insert_add(ne, c.scale(&f));
            }
        }
    }
    Poly::from_term_map(n, t)
}

/// Gamma = -(T_i^2 + T_j^2 + T_k^2).
pub fn gamma_op(p: &Poly) -> Poly {
    let mut acc = Poly::zero(p.n());
    for u in [ImUnit::I, ImUnit::J, ImUnit::K] {
        let tp = vector_field_t(u, p);
        acc = acc.add(&vector_field_t(u, &tp)).unwrap();
    }
    acc.neg()
}

/// Spherical Laplacian |.|^2 Delta + Theta^2 + (4n-2) Theta, with the
/// nonnegative Delta; equals h(h+4n-2) on degree-h harmonics.
pub fn sphere_laplacian(p: &Poly) -> Poly {
    let n = p.n();
    let part1 = mult_norm2(&laplace_nonneg(p));
    let th = euler_theta(p);
    let part2 = euler_theta(&th);
    let part3 = th.scale(&CRat::from_int(4 * n as i64 - 2));
    part1.add(&part2).unwrap().add(&part3).unwrap()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ladder {
    /// i T_i; diagonal on bidegrees with eigenvalue p - q.
    Zero,
    /// i T_j - T_k; raises the bidegree weight by 2.
    Raise,
    /// i T_j + T_k; lowers the bidegree weight by 2.
    Lower,
}

pub fn ladder(op: Ladder, p: &Poly) -> Poly {
    let i = CRat::i();
    match op {
        Ladder::Zero => vector_field_t(ImUnit::I, p).scale(&i),
        Ladder::Raise => vector_field_t(ImUnit::J, p)
            .scale(&i)
            .sub(&vector_field_t(ImUnit::K, p))
            .unwrap(),
        Ladder::Lower => vector_field_t(ImUnit::J, p)
            .scale(&i)
            .add(&vector_field_t(ImUnit::K, p))
            .unwrap(),
    }
}

/// Fischer inner product B(p,q) = p(d) conj(q) (0), computed by the
/// diagonal formula sum_alpha alpha! c_alpha conj(d_alpha).
pub fn fischer_inner(p: &Poly, q: &Poly) -> CRat {
    let mut acc = CRat::zero();
    // iterate over the smaller term set
    let (small, big, swap) = if p.nterms() <= q.nterms() { (p, q, false) } else { (q, p, true) };
    for (exp, c_small) in small.terms().iter() {
        if let Some(c_big) = big.terms().get(exp) {
            let mut fac = BigInt::one();
            for &e in exp.iter() {
                fac *= factorial(e as u64);
            }
            let w = Rat::from_integer(fac);
            let (cp, cq) = if swap { (c_big, c_small) } else { (c_small, c_big) };
            acc += &(cp * &cq.conj()).scale(&w);
        }
    }
    acc
}

/// Moment of a single monomial against the rotation-invariant probability
/// measure on S^{d-1}: zero unless every exponent is even, else
/// prod_i (gamma_i - 1)!! / (d (d+2) ... (d + |gamma| - 2)).
fn monomial_moment(exp: &[u32], d: u64) -> Rat {
    let mut total: u64 = 0;
    for &e in exp {
        if e % 2 == 1 {
            return Rat::zero();
        }
        total += e as u64;
    }
    let mut num = BigInt::one();
    for &e in exp {
        num *= double_factorial(e as i64 - 1);
    }
    let mut den = BigInt::one();
    let mut k = 0;
    while k < total {
        den *= BigInt::from(d + k);
        k += 2;
    }
    Rat::new(num, den)
}

/// Exact integral of p over the sphere w.r.t. the probability measure.
pub fn sphere_integral_exact(p: &Poly) -> CRat {
    let d = 4 * p.n() as u64;
    let mut acc = CRat::zero();
    for (exp, c) in p.terms().iter() {
        let m = monomial_moment(exp, d);
        if !m.is_zero() {
            acc += &c.scale(&m);
        }
    }
    acc
}

fn parity_key(exp: &[u32]) -> u32 {
    let mut key = 0u32;
    for (i, &e) in exp.iter().enumerate() {
        if e % 2 == 1 {
            key |= 1 << i;
        }
    }
    key
}

/// Exact L^2(S) pairing int p conj(q) dsigma without materializing the
/// product polynomial: only exponent pairs of equal parity pattern
/// contribute a nonzero moment.
pub fn sphere_inner(p: &Poly, q: &Poly) -> CRat {
    assert_eq!(p.n(), q.n(), "ambient dimension mismatch");
    let d = 4 * p.n() as u64;
    let mut q_classes: HashMap<u32, Vec<(&Exp, &CRat)>> = HashMap::new();
    for (exp, c) in q.terms().iter() {
        q_classes.entry(parity_key(exp)).or_default().push((exp, c));
    }
    let mut moment_cache: HashMap<Exp, Rat> = HashMap::new();
    let mut acc = CRat::zero();
    for (pe, pc) in p.terms().iter() {
        let Some(mates) = q_classes.get(&parity_key(pe)) else { continue };
        for (qe, qc) in mates {
            let sum: Exp = pe.iter().zip(qe.iter()).map(|(a, b)| a + b).collect();
            let m = moment_cache
                .entry(sum)
                .or_insert_with_key(|k| monomial_moment(k, d))
                .clone();
            if !m.is_zero() {
                acc += &(pc * &qc.conj()).scale(&m);
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn xi(i: usize) -> Poly {
        Poly::var(2, i)
    }

    /// Random polynomial with small rational coefficients, degree <= deg.
    fn random_poly(rng: &mut ChaCha8Rng, n: usize, deg: u32, nterms: usize) -> Poly {
        let mut p = Poly::zero(n);
        for _ in 0..nterms {
            let mut exp = vec![0u32; 4 * n];
            let mut left = rng.random_range(0..=deg);
            while left > 0 {
                let i = rng.random_range(0..4 * n);
                exp[i] += 1;
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

    #[test]
    fn euler_on_monomials_and_products() {
        assert!(euler_theta(&Poly::one(2)).is_zero());
        let m = xi(0).pow(2).unwrap().mul(&xi(1)).unwrap();
        assert_eq!(euler_theta(&m), m.scale(&CRat::from_int(3)));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let p = random_poly(&mut rng, 2, 3, 4);
            let q = random_poly(&mut rng, 2, 3, 4);
            let pq = p.mul(&q).unwrap();
            let lhs = euler_theta(&pq);
            let rhs = euler_theta(&p).mul(&q).unwrap().add(&p.mul(&euler_theta(&q)).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn laplacian_values() {
        // nonnegative convention: Delta xi^2 = -2
        assert_eq!(laplace_nonneg(&xi(0).pow(2).unwrap()), Poly::constant(2, CRat::from_int(-2)));
        let harm = xi(0).pow(2).unwrap().sub(&xi(1).pow(2).unwrap()).unwrap();
        assert!(laplace_nonneg(&harm).is_zero());
        // |x|^2 integrates 4n second derivatives of 2 each
        assert_eq!(
            laplace_nonneg(&norm_sq_poly(2)),
            Poly::constant(2, CRat::from_int(-16))
        );
    }

    #[test]
    fn t_fields_kill_invariants() {
        let r2 = norm_sq_poly(2);
        for u in [ImUnit::I, ImUnit::J, ImUnit::K] {
            assert!(vector_field_t(u, &r2).is_zero());
            assert!(vector_field_t(u, &Poly::one(2)).is_zero());
        }
        // t = |<x,e>|^2 is killed as well
        let t: Poly = (0..4).fold(Poly::zero(2), |acc, i| acc.add(&xi(i).pow(2).unwrap()).unwrap());
        for u in [ImUnit::I, ImUnit::J, ImUnit::K] {
            assert!(vector_field_t(u, &t).is_zero(), "T_{u:?} should kill |<x,e>|^2");
        }
    }

    #[test]
    fn su2_commutation_relations() {
        // exact operator identity on the full monomial basis up to degree 6
        let pairs = [
            (ImUnit::I, ImUnit::J, ImUnit::K),
            (ImUnit::J, ImUnit::K, ImUnit::I),
            (ImUnit::K, ImUnit::I, ImUnit::J),
        ];
        for deg in 0..=6u32 {
            for exp in crate::cbasis::monomials_of_degree(8, deg) {
                let p = Poly::monomial(2, exp, CRat::one()).unwrap();
                for (u, v, w) in pairs {
                    let uv = vector_field_t(u, &vector_field_t(v, &p));
                    let vu = vector_field_t(v, &vector_field_t(u, &p));
                    let lhs = uv.sub(&vu).unwrap();
                    let rhs = vector_field_t(w, &p).scale(&CRat::from_int(2));
                    assert_eq!(lhs, rhs, "[T_{u:?},T_{v:?}] = 2T_{w:?} failed on {p:?}");
                }
            }
        }
    }

    #[test]
    fn sphere_pairing_positive_definite() {
        // int p conj(p) > 0 for nonzero homogeneous p (whose restriction to
        // the sphere cannot vanish identically)
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..20 {
            let deg = rng.random_range(0..=5u32);
            let mut p = Poly::zero(2);
            for _ in 0..4 {
                let mut exp = vec![0u32; 8];
                let mut left = deg;
                while left > 0 {
                    exp[rng.random_range(0..8)] += 1;
                    left -= 1;
                }
                let c = CRat::new(
                    rat(rng.random_range(-5i64..=5), rng.random_range(1i64..=3)),
                    rat(rng.random_range(-5i64..=5), rng.random_range(1i64..=3)),
                );
                p = p.add(&Poly::monomial(2, exp, c).unwrap()).unwrap();
            }
            let v = sphere_inner(&p, &p);
            assert!(v.is_real());
            use num::Signed;
            if p.is_zero() {
                assert!(v.re.is_zero());
            } else {
                assert!(v.re.is_positive(), "positivity failed for {p:?}");
            }
        }
    }

    #[test]
    fn gamma_on_zonal_generators() {
        assert!(gamma_op(&Poly::one(2)).is_zero());
        let s = xi(0);
        let t: Poly = (0..4).fold(Poly::zero(2), |acc, i| acc.add(&xi(i).pow(2).unwrap()).unwrap());
        // Gamma s^j = j(j+2) s^j - j(j-1) s^{j-2} t
        for j in 1u32..=5 {
            let sj = s.pow(j).unwrap();
            let lhs = gamma_op(&sj);
            let jj = j as i64;
            let mut rhs = sj.scale(&CRat::from_int(jj * (jj + 2)));
            if j >= 2 {
                let lower = s.pow(j - 2).unwrap().mul(&t).unwrap();
                rhs = rhs.sub(&lower.scale(&CRat::from_int(jj * (jj - 1)))).unwrap();
            }
            assert_eq!(lhs, rhs);
        }
        // Gamma |<x,e>|^{2k} = 0
        for k in 1u32..=3 {
            assert!(gamma_op(&t.pow(k).unwrap()).is_zero());
        }
    }

    #[test]
    fn spherical_laplacian_eigenvalues() {
        assert!(sphere_laplacian(&Poly::one(2)).is_zero());
        // h = 1: eigenvalue 4n-1 = 7
        assert_eq!(sphere_laplacian(&xi(0)), xi(0).scale(&CRat::from_int(7)));
        // harmonic quadratic: eigenvalue 2(2+4n-2) = 16 = 8n
        let q = xi(0).mul(&xi(1)).unwrap();
        assert_eq!(sphere_laplacian(&q), q.scale(&CRat::from_int(16)));
        // degree raise check for |.|^2
        let p = xi(2).pow(3).unwrap();
        assert_eq!(mult_norm2(&p).homogeneous_degree(), Some(5));
        assert_eq!(mult_norm2(&mult_norm2(&Poly::one(2))), norm_sq_poly(2).pow(2).unwrap());
    }

    #[test]
    fn ladder_bidegree_eigenvalues() {
        // z_1 = xi_1 + i xi_2 has bidegree (1,0): ladder-zero eigenvalue 1
        let z1 = xi(0).add(&xi(1).scale(&CRat::i())).unwrap();
        assert_eq!(ladder(Ladder::Zero, &z1), z1);
        // conj(z_1) has bidegree (0,1): eigenvalue -1
        let z1bar = xi(0).sub(&xi(1).scale(&CRat::i())).unwrap();
        assert_eq!(ladder(Ladder::Zero, &z1bar), z1bar.neg());
        // z_1^2 conj(z_2): bidegree (2,1), eigenvalue 1
        let z2bar = xi(2).sub(&xi(3).scale(&CRat::i())).unwrap();
        let m = z1.pow(2).unwrap().mul(&z2bar).unwrap();
        assert_eq!(ladder(Ladder::Zero, &m), m);
        for op in [Ladder::Raise, Ladder::Lower] {
            assert!(ladder(op, &Poly::one(2)).is_zero());
        }
        // [d0, d+] = 2 d+ on random polynomials
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let p = random_poly(&mut rng, 2, 4, 5);
            let lhs = ladder(Ladder::Zero, &ladder(Ladder::Raise, &p))
                .sub(&ladder(Ladder::Raise, &ladder(Ladder::Zero, &p)))
                .unwrap();
            assert_eq!(lhs, ladder(Ladder::Raise, &p).scale(&CRat::from_int(2)));
        }
    }

    #[test]
    fn fischer_diagonal_and_adjoints() {
        let m = xi(0).pow(2).unwrap().mul(&xi(1)).unwrap();
        assert_eq!(fischer_inner(&m, &m), CRat::from_int(2)); // alpha! = 2! 1!
        assert_eq!(fischer_inner(&xi(0), &xi(1)), CRat::zero());
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..10 {
            let p = random_poly(&mut rng, 2, 3, 5);
            let q = random_poly(&mut rng, 2, 5, 5);
            // |.|^2 is adjoint to the raw Laplacian: B(|.|^2 p, q) = -B(p, laplace_nonneg q)
            let lhs = fischer_inner(&mult_norm2(&p), &q);
            let rhs = -&fischer_inner(&p, &laplace_nonneg(&q));
            assert_eq!(lhs, rhs);
            // T_u skew-adjoint, Theta and Gamma self-adjoint
            for u in [ImUnit::I, ImUnit::J, ImUnit::K] {
                let l = fischer_inner(&vector_field_t(u, &p), &q);
                let r = -&fischer_inner(&p, &vector_field_t(u, &q));
                assert_eq!(l, r);
            }
            assert_eq!(fischer_inner(&euler_theta(&p), &q), fischer_inner(&p, &euler_theta(&q)));
            assert_eq!(fischer_inner(&gamma_op(&p), &q), fischer_inner(&p, &gamma_op(&q)));
        }
    }

    #[test]
    fn operators_commute_with_degree_and_norm2() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..8 {
            let p = random_poly(&mut rng, 2, 4, 6);
            // Gamma commutes with |.|^2 multiplication
            assert_eq!(gamma_op(&mult_norm2(&p)), mult_norm2(&gamma_op(&p)));
            // T_u, Gamma, |.|^2 Delta preserve homogeneity: check commutation with Theta
            for u in [ImUnit::I, ImUnit::J, ImUnit::K] {
                assert_eq!(
                    vector_field_t(u, &euler_theta(&p)),
                    euler_theta(&vector_field_t(u, &p))
                );
            }
            assert_eq!(gamma_op(&euler_theta(&p)), euler_theta(&gamma_op(&p)));
            let md = mult_norm2(&laplace_nonneg(&p));
            assert_eq!(mult_norm2(&laplace_nonneg(&euler_theta(&p))), euler_theta(&md));
        }
    }

    #[test]
    fn sphere_moments() {
        assert_eq!(sphere_integral_exact(&Poly::one(2)), CRat::one());
        assert_eq!(sphere_integral_exact(&xi(0).pow(2).unwrap()), CRat::from_rat(rat(1, 8)));
        assert_eq!(sphere_integral_exact(&xi(0).pow(4).unwrap()), CRat::from_rat(rat(3, 80)));
        assert_eq!(sphere_integral_exact(&xi(0)), CRat::zero());
        // int |x|^2 = 1 on the sphere
        assert_eq!(sphere_integral_exact(&norm_sq_poly(2)), CRat::one());
        // mixed even moment: xi1^2 xi2^2 -> 1/(d(d+2)) = 1/80
        let m = xi(0).pow(2).unwrap().mul(&xi(1).pow(2).unwrap()).unwrap();
        assert_eq!(sphere_integral_exact(&m), CRat::from_rat(rat(1, 80)));
    }

    #[test]
    fn norm_poly_evaluates_to_one_on_sphere() {
        use crate::quat::sample_sphere;
        let r2 = norm_sq_poly(2);
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for _ in 0..50 {
            let x = sample_sphere(&mut rng, 2);
            let v = r2.eval_float(&x.to_real_coords());
            assert!((v.re - 1.0).abs() <= 1e-12 && v.im == 0.0);
        }
    }

    #[test]
    fn sphere_inner_agrees_with_product_integral() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10 {
            let p = random_poly(&mut rng, 2, 3, 6);
            let q = random_poly(&mut rng, 2, 3, 6);
            let direct = sphere_integral_exact(&p.mul(&q.conj()).unwrap());
            assert_eq!(sphere_inner(&p, &q), direct);
        }
    }

    #[test]
    fn monte_carlo_oracle_for_fourth_moment() {
        // int xi_1^4 = 3/80 for n = 2; cross-check the closed form by MC.
        use crate::quat::sample_sphere;
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let samples = 2_000_000usize;
        let mut sum = 0.0;
        let mut sumsq = 0.0;
        for _ in 0..samples {
            let x = sample_sphere(&mut rng, 2);
            let v = x.to_real_coords()[0].powi(4);
            sum += v;
            sumsq += v * v;
        }
        let mean = sum / samples as f64;
        let var = (sumsq / samples as f64 - mean * mean).max(0.0);
        let stderr = (var / samples as f64).sqrt();
        assert!((mean - 3.0 / 80.0).abs() < 5.0 * stderr, "mean {mean} vs 3/80, stderr {stderr}");
    }
}
