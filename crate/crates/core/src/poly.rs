//! Sparse multivariate polynomials on R^{4n} over exact complex rationals.
//!
//! Terms are keyed by exponent vectors in a BTreeMap, so iteration (and
//! hence serialization) is lexicographic and deterministic. Zero
//! coefficients are never stored; equality is map equality.

use crate::scalar::{rat_from_string, rat_to_string, CRat, Rat};
use num::Complex;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::OnceLock;
use thiserror::Error;

pub type Exp = Vec<u32>;
pub type C64 = Complex<f64>;

#[derive(Debug, Error, PartialEq)]
pub enum PolyError {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("term budget exceeded: estimated {estimate} terms, budget {budget} (set QS_BUDGET_TERMS to raise)")]
    BudgetExceeded { estimate: usize, budget: usize },
    #[error("exponent vector has length {0}, expected {1}")]
    BadExponentLength(usize, usize),
    #[error("malformed polynomial JSON: {0}")]
    BadJson(String),
}

static TERM_BUDGET: OnceLock<usize> = OnceLock::new();

/// Monomial-count guardrail, default 10^6, overridable via QS_BUDGET_TERMS.
pub fn term_budget() -> usize {
    *TERM_BUDGET.get_or_init(|| {
        std::env::var("QS_BUDGET_TERMS")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(1_000_000)
    })
}

/// Shared sparse term storage, also used by the complex-indeterminate basis.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TermMap {
    terms: BTreeMap<Exp, CRat>,
}

impl TermMap {
    pub fn new() -> Self {
        TermMap { terms: BTreeMap::new() }
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Exp, &CRat)> {
        self.terms.iter()
    }

    pub fn get(&self, exp: &[u32]) -> Option<&CRat> {
        self.terms.get(exp)
    }

    pub fn insert_add(&mut self, exp: Exp, coeff: CRat) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &TermMap) {
        for (e, c) in other.iter() {
            self.insert_add(e.clone(), c.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &TermMap) {
        for (e, c) in other.iter() {
            self.insert_add(e.clone(), -c);
        }
    }

    pub fn scale(&self, c: &CRat) -> TermMap {
        if c.is_zero() {
            return TermMap::new();
        }
        TermMap { terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn neg(&self) -> TermMap {
        TermMap { terms: self.terms.iter().map(|(e, v)| (e.clone(), -v)).collect() }
    }

    pub fn mul(&self, other: &TermMap) -> Result<TermMap, PolyError> {
        let estimate = self.nterms().saturating_mul(other.nterms());
        let budget = term_budget();
        if estimate > budget {
            return Err(PolyError::BudgetExceeded { estimate, budget });
        }
        let mut out = TermMap::new();
        for (e1, c1) in self.iter() {
            for (e2, c2) in other.iter() {
                let exp: Exp = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert_add(exp, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn conj(&self) -> TermMap {
        TermMap { terms: self.terms.iter().map(|(e, v)| (e.clone(), v.conj())).collect() }
    }

    /// Total degree of each stored monomial must agree for Some(h).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut deg = None;
        for (e, _) in self.iter() {
            let d: u32 = e.iter().sum();
            match deg {
                None => deg = Some(d),
                Some(prev) if prev != d => return None,
                _ => {}
            }
        }
        deg
    }

    pub fn max_degree(&self) -> u32 {
        self.iter().map(|(e, _)| e.iter().sum()).max().unwrap_or(0)
    }
}

/// Polynomial in the 4n real coordinates of H^n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    n: usize,
    terms: TermMap,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Poly { n, terms: TermMap::new() }
    }

    pub fn constant(n: usize, c: CRat) -> Self {
        let mut t = TermMap::new();
        t.insert_add(vec![0; 4 * n], c);
        Poly { n, terms: t }
    }

    pub fn one(n: usize) -> Self {
        Poly::constant(n, CRat::one())
    }

    /// The coordinate monomial xi_i (0-based index into the 4n coordinates).
    pub fn var(n: usize, i: usize) -> Self {
        assert!(i < 4 * n);
        let mut exp = vec![0u32; 4 * n];
        exp[i] = 1;
        Poly::monomial(n, exp, CRat::one()).unwrap()
    }

    pub fn monomial(n: usize, exp: Exp, coeff: CRat) -> Result<Self, PolyError> {
        if exp.len() != 4 * n {
            return Err(PolyError::BadExponentLength(exp.len(), 4 * n));
        }
        let mut t = TermMap::new();
        t.insert_add(exp, coeff);
        Ok(Poly { n, terms: t })
    }

    pub fn from_term_map(n: usize, terms: TermMap) -> Self {
        Poly { n, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        4 * self.n
    }

    pub fn terms(&self) -> &TermMap {
        &self.terms
    }

    pub fn nterms(&self) -> usize {
        self.terms.nterms()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn coeff(&self, exp: &[u32]) -> CRat {
        self.terms.get(exp).cloned().unwrap_or_else(CRat::zero)
    }

    fn check_dim(&self, other: &Poly) -> Result<(), PolyError> {
        if self.n != other.n {
            return Err(PolyError::DimensionMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_dim(other)?;
        let mut t = self.terms.clone();
        t.add_assign(&other.terms);
        Ok(Poly { n: self.n, terms: t })
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_dim(other)?;
        let mut t = self.terms.clone();
        t.sub_assign(&other.terms);
        Ok(Poly { n: self.n, terms: t })
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_dim(other)?;
        Ok(Poly { n: self.n, terms: self.terms.mul(&other.terms)? })
    }

    pub fn scale(&self, c: &CRat) -> Poly {
        Poly { n: self.n, terms: self.terms.scale(c) }
    }

    pub fn scale_rat(&self, r: &Rat) -> Poly {
        self.scale(&CRat::from_rat(r.clone()))
    }

    pub fn neg(&self) -> Poly {
        Poly { n: self.n, terms: self.terms.neg() }
    }

    /// Coefficient-wise conjugate; equals x -> conj(p(x)) on real points.
    pub fn conj(&self) -> Poly {
        Poly { n: self.n, terms: self.terms.conj() }
    }

    pub fn pow(&self, k: u32) -> Result<Poly, PolyError> {
        let mut acc = Poly::one(self.n);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn homogeneous_degree(&self) -> Option<u32> {
        self.terms.homogeneous_degree()
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.max_degree()
    }

    /// Double-precision evaluation at a real point given in the fixed
    /// coordinate order.
    pub fn eval_float(&self, coords: &[f64]) -> C64 {
        assert_eq!(coords.len(), 4 * self.n, "coordinate count mismatch");
        let mut acc = C64::new(0.0, 0.0);
        for (exp, c) in self.terms.iter() {
            let mut m = 1.0f64;
            for (x, &e) in coords.iter().zip(exp.iter()) {
                if e > 0 {
                    m *= x.powi(e as i32);
                }
            }
            let (re, im) = c.to_f64_pair();
            acc += C64::new(re * m, im * m);
        }
        acc
    }

    /// Exact evaluation at a rational point.
    pub fn eval_exact(&self, coords: &[Rat]) -> CRat {
        assert_eq!(coords.len(), 4 * self.n, "coordinate count mismatch");
        let mut acc = CRat::zero();
        for (exp, c) in self.terms.iter() {
            let mut m = Rat::from_integer(1.into());
            for (x, &e) in coords.iter().zip(exp.iter()) {
                for _ in 0..e {
                    m *= x;
                }
            }
            acc += &c.scale(&m);
        }
        acc
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("poly serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Poly, PolyError> {
        serde_json::from_str(s).map_err(|e| PolyError::BadJson(e.to_string()))
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Vec<u32>,
    re: String,
    im: String,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    n: usize,
    terms: Vec<TermJson>,
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        // BTreeMap iteration is lexicographic in the exponent vector, which
        // is the canonical order required of the interchange format.
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| TermJson {
                exp: e.clone(),
                re: rat_to_string(&c.re),
                im: rat_to_string(&c.im),
            })
            .collect();
        PolyJson { n: self.n, terms }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = PolyJson::deserialize(de)?;
        let mut terms = TermMap::new();
        for t in raw.terms {
            if t.exp.len() != 4 * raw.n {
                return Err(D::Error::custom(format!(
                    "exponent length {} != 4n = {}",
                    t.exp.len(),
                    4 * raw.n
                )));
            }
            let re = rat_from_string(&t.re)
                .ok_or_else(|| D::Error::custom(format!("bad rational {:?}", t.re)))?;
            let im = rat_from_string(&t.im)
                .ok_or_else(|| D::Error::custom(format!("bad rational {:?}", t.im)))?;
            terms.insert_add(t.exp, CRat::new(re, im));
        }
        Ok(Poly { n: raw.n, terms })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};
    use proptest::prelude::*;

    fn xi(i: usize) -> Poly {
        Poly::var(2, i)
    }

    #[test]
    fn ring_basics() {
        let p = xi(0).add(&xi(1)).unwrap();
        // p + 0 = p
        assert_eq!(p.add(&Poly::zero(2)).unwrap(), p);
        // xi1 * xi2 is the (1,1,0,...) monomial
        let m = xi(0).mul(&xi(1)).unwrap();
        let mut exp = vec![0u32; 8];
        exp[0] = 1;
        exp[1] = 1;
        assert_eq!(m, Poly::monomial(2, exp, CRat::one()).unwrap());
        // (xi1+xi2)^2 = xi1^2 + 2 xi1 xi2 + xi2^2
        let sq = p.mul(&p).unwrap();
        let expect = xi(0)
            .mul(&xi(0))
            .unwrap()
            .add(&m.scale(&CRat::from_int(2)))
            .unwrap()
            .add(&xi(1).mul(&xi(1)).unwrap())
            .unwrap();
        assert_eq!(sq, expect);
        assert_eq!(sq.homogeneous_degree(), Some(2));
        // mixed degrees are not homogeneous
        assert_eq!(p.add(&Poly::one(2)).unwrap().homogeneous_degree(), None);
    }

    #[test]
    fn dimension_mismatch_is_detected() {
        let p = Poly::var(2, 0);
        let q = Poly::var(3, 0);
        assert!(matches!(p.add(&q), Err(PolyError::DimensionMismatch(2, 3))));
    }

    #[test]
    fn cancellation_keeps_canonical_form() {
        let p = xi(0).sub(&xi(0)).unwrap();
        assert!(p.is_zero());
        assert_eq!(p.nterms(), 0);
    }

    #[test]
    fn eval_matches_exact() {
        let p = xi(0)
            .mul(&xi(3))
            .unwrap()
            .scale(&CRat::new(rat(1, 2), rat(2, 3)))
            .add(&Poly::one(2))
            .unwrap();
        let coords: Vec<f64> = (0..8).map(|i| 0.1 * (i as f64 + 1.0)).collect();
        let v = p.eval_float(&coords);
        let expect_re = 1.0 + 0.5 * 0.1 * 0.4;
        let expect_im = (2.0 / 3.0) * 0.1 * 0.4;
        assert!((v.re - expect_re).abs() < 1e-15);
        assert!((v.im - expect_im).abs() < 1e-15);
        let exact = p.eval_exact(&(1..=8).map(|i| rat(i, 10)).collect::<Vec<_>>());
        assert_eq!(exact.re, rat(1, 1) + rat(1, 2) * rat(1, 10) * rat(4, 10));
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let p = xi(0)
            .mul(&xi(0))
            .unwrap()
            .scale(&CRat::new(rat(-7, 3), rat_int(0)))
            .add(&xi(5).scale(&CRat::new(rat_int(0), rat(22, 7))))
            .unwrap();
        let s = p.to_json();
        let q = Poly::from_json(&s).unwrap();
        assert_eq!(p, q);
        assert_eq!(s, q.to_json());
    }

    proptest! {
        #[test]
        fn serde_roundtrip_random(coeffs in proptest::collection::vec((0usize..8, -9i64..9, 1i64..5, -9i64..9), 1..12)) {
            let mut p = Poly::zero(2);
            for (i, a, b, c) in coeffs {
                let term = Poly::var(2, i).scale(&CRat::new(rat(a, b), rat(c, b)));
                p = p.add(&term).unwrap();
            }
            let q = Poly::from_json(&p.to_json()).unwrap();
            prop_assert_eq!(p.clone(), q);
        }

        #[test]
        fn mul_is_commutative_and_degree_adds(ai in -5i64..5, bi in -5i64..5, e1 in 0u32..4, e2 in 0u32..4) {
            let p = Poly::var(2, 0).pow(e1).unwrap().scale(&CRat::from_int(ai));
            let q = Poly::var(2, 3).pow(e2).unwrap().scale(&CRat::from_int(bi));
            let pq = p.mul(&q).unwrap();
            prop_assert_eq!(pq.clone(), q.mul(&p).unwrap());
            if !pq.is_zero() {
                prop_assert_eq!(pq.homogeneous_degree(), Some(e1 + e2));
            }
        }
    }
}
