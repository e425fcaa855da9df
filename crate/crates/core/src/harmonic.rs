//! The joint spectral decomposition of the spherical Laplacian and Gamma,
//! by brute force: closed-form dimensions and eigenvalues, exact bases of
//! the harmonic spaces H_h and the joint eigenspaces H_{h,m}, the su(2)
//! string structure, and Gram-matrix projection kernels used as oracles for
//! the closed zonal forms.
//!
//! Strategy for the eigenspaces: Gamma commutes with the diagonalizable
//! operator i T_i whose eigenspaces inside P_h are the bidegree components
//! w.r.t. the complex structure i. The kernel of (Gamma - lambda) on H_h is
//! therefore computed block by block on the harmonic bidegree components,
//! where the matrices are small and integer. Coordinates on a harmonic
//! bidegree component come for free from reduction modulo |x|^2: a harmonic
//! polynomial equals the harmonic projection of its normal form, so
//! normal-form coefficients on the admissible monomials are coordinates.

use crate::cbasis::{
    from_cbasis, gamma_c, harmonic_project, harmonic_project_c, monomials_of_degree,
    nf_mod_norm2_c, CPoly,
};
use crate::linalg::{nullspace_crat, nullspace_int, solve_crat, SpanBasis};
use crate::ops::{gamma_op, ladder, sphere_inner, sphere_laplacian, vector_field_t, ImUnit, Ladder};
use crate::poly::{term_budget, Exp, Poly, PolyError, TermMap};
use crate::quat::SpherePoint;
use crate::scalar::{binomial, CRat, Rat};
use num::{BigInt, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarmonicError {
    #[error("index (h={h}, m={m}) outside I_Q (needs 2m <= h)")]
    IndexOutsideIQ { h: u32, m: u32 },
    #[error("desk-scale budget exceeded: {0} monomials (budget {1})")]
    Budget(usize, usize),
    #[error("dimension mismatch: expected {expected}, brute force found {got} (implementation bug)")]
    DimensionMismatch { expected: u64, got: u64 },
    #[error("singular Gram matrix (impossible for a true basis)")]
    SingularGram,
    #[error("space is not invariant under the tangent fields")]
    InvarianceViolation,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Index (h, m) of the joint eigenspace, with 2m <= h.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SpectralIndex {
    pub h: u32,
    pub m: u32,
}

impl SpectralIndex {
    pub fn new(h: u32, m: u32) -> Result<Self, HarmonicError> {
        if 2 * m > h {
            return Err(HarmonicError::IndexOutsideIQ { h, m });
        }
        Ok(SpectralIndex { h, m })
    }

    pub fn in_iq(h: u32, m: u32) -> bool {
        2 * m <= h
    }
}

/// All of I_Q with h <= h_max, ordered by (h, m).
pub fn iq_indices(h_max: u32) -> Vec<SpectralIndex> {
    let mut out = Vec::new();
    for h in 0..=h_max {
        for m in 0..=h / 2 {
            out.push(SpectralIndex { h, m });
        }
    }
    out
}

/// dim P_h = C(h + 4n - 1, 4n - 1).
pub fn dim_p_h(n: usize, h: u32) -> u64 {
    binomial(h as u64 + 4 * n as u64 - 1, 4 * n as u64 - 1)
        .to_u64()
        .expect("dim P_h exceeds u64")
}

/// dim H_h = dim P_h - dim P_{h-2}, zero for negative h.
pub fn dim_h_h(n: usize, h: i64) -> u64 {
    if h < 0 {
        return 0;
    }
    let h = h as u32;
    let lower = if h >= 2 { dim_p_h(n, h - 2) } else { 0 };
    dim_p_h(n, h) - lower
}

/// Closed-form dimension of the joint eigenspace:
/// (h-2m+1)^2 (h+2n-1) / ((2n-2)(2n-1)) C(h-m+2n-2, 2n-3) C(m+2n-3, 2n-3).
pub fn dim_h_hm(n: usize, h: u32, m: u32) -> Result<u64, HarmonicError> {
    if !SpectralIndex::in_iq(h, m) {
        return Err(HarmonicError::IndexOutsideIQ { h, m });
    }
    let n = n as u64;
    let h = h as u64;
    let m = m as u64;
    let num = BigInt::from((h - 2 * m + 1) * (h - 2 * m + 1))
        * BigInt::from(h + 2 * n - 1)
        * binomial(h - m + 2 * n - 2, 2 * n - 3)
        * binomial(m + 2 * n - 3, 2 * n - 3);
    let den = BigInt::from((2 * n - 2) * (2 * n - 1));
    let (q, r) = num::Integer::div_rem(&num, &den);
    assert!(r.is_zero(), "dimension formula must be integral");
    Ok(q.to_u64().expect("dimension exceeds u64"))
}

/// The three eigenvalues and the dimension attached to (h, m).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenData {
    pub lambda_delta: u64,
    pub lambda_gamma: u64,
    pub lambda_l: u64,
    pub dim: u64,
}

/// lambda_Delta = h(h+4n-2), lambda_Gamma = (h-2m)(h-2m+2),
/// lambda_L = 4m(h-m+1) + 4(n-1)h.
pub fn eigenvalues(n: usize, h: u32, m: u32) -> Result<EigenData, HarmonicError> {
    let dim = dim_h_hm(n, h, m)?;
    let nn = n as u64;
    let hh = h as u64;
    let mm = m as u64;
    let lambda_delta = hh * (hh + 4 * nn - 2);
    let lambda_gamma = (hh - 2 * mm) * (hh - 2 * mm + 2);
    let lambda_l = 4 * mm * (hh - mm + 1) + 4 * (nn - 1) * hh;
    debug_assert_eq!(lambda_l, lambda_delta - lambda_gamma);
    Ok(EigenData { lambda_delta, lambda_gamma, lambda_l, dim })
}

/// lambda_L without the I_Q check, for hot enumeration loops.
pub fn lambda_l_raw(n: u64, h: u64, m: u64) -> u64 {
    4 * m * (h - m + 1) + 4 * (n - 1) * h
}

fn budget_check(n: usize, h: u32) -> Result<(), HarmonicError> {
    let size = dim_p_h(n, h) as usize;
    let budget = term_budget();
    if size > budget {
        return Err(HarmonicError::Budget(size, budget));
    }
    Ok(())
}

/// Exact basis of H_h: harmonic projections of the degree-h monomials with
/// last-coordinate exponent <= 1 (a basis of P_h modulo |x|^2 P_{h-2}).
pub fn harmonic_space(n: usize, h: u32) -> Result<Vec<Poly>, HarmonicError> {
    budget_check(n, h)?;
    let dim = 4 * n;
    let monos: Vec<Exp> = monomials_of_degree(dim, h)
        .into_iter()
        .filter(|e| e[dim - 1] <= 1)
        .collect();
    let expected = dim_h_h(n, h as i64);
    if monos.len() as u64 != expected {
        return Err(HarmonicError::DimensionMismatch { expected, got: monos.len() as u64 });
    }
    let basis: Vec<Poly> = monos
        .into_par_iter()
        .map(|e| harmonic_project(&Poly::monomial(n, e, CRat::one()).unwrap()))
        .collect();
    Ok(basis)
}

/// Monomial basis of the bidegree space P^{p,q} (complex structure i),
/// returned in real coordinates. Every element is an eigenvector of the
/// ladder operator i T_i with eigenvalue p - q.
pub fn bidegree_space(n: usize, p: u32, q: u32) -> Result<Vec<Poly>, HarmonicError> {
    budget_check(n, p + q)?;
    let nv = 2 * n;
    let mut out = Vec::new();
    for alpha in monomials_of_degree(nv, p) {
        for beta in monomials_of_degree(nv, q) {
            let mut exp = alpha.clone();
            exp.extend_from_slice(&beta);
            out.push(from_cbasis(&CPoly::monomial(n, exp, CRat::one())));
        }
    }
    let expected = binomial(p as u64 + 2 * n as u64 - 1, 2 * n as u64 - 1)
        * binomial(q as u64 + 2 * n as u64 - 1, 2 * n as u64 - 1);
    if BigInt::from(out.len()) != expected {
        return Err(HarmonicError::DimensionMismatch {
            expected: expected.to_u64().unwrap_or(u64::MAX),
            got: out.len() as u64,
        });
    }
    Ok(out)
}

/// Basis of a joint eigenspace, all elements homogeneous harmonic of
/// degree h and Gamma-eigenvectors of eigenvalue (h-2m)(h-2m+2).
#[derive(Debug, Clone, Serialize)]
pub struct HarmonicSpaceBasis {
    pub n: usize,
    pub index: SpectralIndex,
    pub basis: Vec<Poly>,
}

/// Complex monomials of bidegree (p,q) not divisible by z_last conj(z_last):
/// a basis of H^{p,q} after harmonic projection.
fn admissible_cmonomials(n: usize, p: u32, q: u32) -> Vec<Exp> {
    let nv = 2 * n;
    let mut out = Vec::new();
    for alpha in monomials_of_degree(nv, p) {
        for beta in monomials_of_degree(nv, q) {
            if alpha[nv - 1] >= 1 && beta[nv - 1] >= 1 {
                continue;
            }
            let mut exp = alpha.clone();
            exp.extend_from_slice(&beta);
            out.push(exp);
        }
    }
    out
}

/// Integer matrix of Gamma on the harmonic bidegree block H^{p,q} in the
/// projected-normal-form coordinates.
fn gamma_block_matrix(n: usize, monos: &[Exp]) -> Vec<Vec<BigInt>> {
    let index: HashMap<&Exp, usize> = monos.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let dim = monos.len();
    let cols: Vec<Vec<(usize, BigInt)>> = monos
        .par_iter()
        .map(|e| {
            let g = gamma_c(&CPoly::monomial(n, e.clone(), CRat::one()));
            let gnf = nf_mod_norm2_c(&g);
            let mut col = Vec::new();
            for (me, c) in gnf.terms().iter() {
                let row = *index.get(me).expect("normal form stays on admissible monomials");
                assert!(c.is_real(), "Gamma block must be real");
                assert!(num::One::is_one(c.re.denom()), "Gamma block must be integer");
                col.push((row, c.re.numer().clone()));
            }
            col
        })
        .collect();
    let mut mat = vec![vec![BigInt::zero(); dim]; dim];
    for (j, col) in cols.into_iter().enumerate() {
        for (i, v) in col {
            mat[i][j] = v;
        }
    }
    mat
}

/// All joint eigenspaces of H_h at once (the Gamma block matrices are
/// shared across the different eigenvalues).
pub fn joint_eigenspaces_all(n: usize, h: u32) -> Result<Vec<HarmonicSpaceBasis>, HarmonicError> {
    budget_check(n, h)?;
    let mut per_m: Vec<Vec<Poly>> = vec![Vec::new(); (h / 2 + 1) as usize];
    for q in 0..=h {
        let p = h - q;
        let monos = admissible_cmonomials(n, p, q);
        if monos.is_empty() {
            continue;
        }
        let gamma = gamma_block_matrix(n, &monos);
        let mmax = p.min(q);
        let block_results: Vec<(u32, Vec<Poly>)> = (0..=mmax)
            .into_par_iter()
            .map(|m| {
                let lam = BigInt::from(((h - 2 * m) * (h - 2 * m + 2)) as i64);
                let mut mat = gamma.clone();
                for i in 0..monos.len() {
                    mat[i][i] -= &lam;
                }
                let kernel = nullspace_int(mat, monos.len());
                let vecs: Vec<Poly> = kernel
                    .into_iter()
                    .map(|v| {
                        let mut acc = TermMap::new();
                        for (j, coeff) in v.into_iter().enumerate() {
                            if !coeff.is_zero() {
                                acc.insert_add(
                                    monos[j].clone(),
                                    CRat::from_rat(Rat::from_integer(coeff)),
                                );
                            }
                        }
                        let cp = CPoly::from_term_map(n, acc);
                        from_cbasis(&harmonic_project_c(&cp, h))
                    })
                    .collect();
                (m, vecs)
            })
            .collect();
        let mut block_total = 0usize;
        for (m, vecs) in block_results {
            block_total += vecs.len();
            per_m[m as usize].extend(vecs);
        }
        // the Gamma eigenvalues (h-2m)(h-2m+2), m <= min(p,q), exhaust the block
        let expected_block = dim_ch_pq(n, p, q);
        if block_total as u64 != expected_block {
            return Err(HarmonicError::DimensionMismatch {
                expected: expected_block,
                got: block_total as u64,
            });
        }
    }
    let mut out = Vec::new();
    for (m, basis) in per_m.into_iter().enumerate() {
        let m = m as u32;
        let expected = dim_h_hm(n, h, m)?;
        if basis.len() as u64 != expected {
            return Err(HarmonicError::DimensionMismatch { expected, got: basis.len() as u64 });
        }
        out.push(HarmonicSpaceBasis { n, index: SpectralIndex { h, m }, basis });
    }
    Ok(out)
}

/// dim of the harmonic bidegree component H^{p,q}:
/// (p+q+2n-1)/(2n-1) C(p+2n-2, 2n-2) C(q+2n-2, 2n-2).
pub fn dim_ch_pq(n: usize, p: u32, q: u32) -> u64 {
    let n = n as u64;
    let num = BigInt::from(p as u64 + q as u64 + 2 * n - 1)
        * binomial(p as u64 + 2 * n - 2, 2 * n - 2)
        * binomial(q as u64 + 2 * n - 2, 2 * n - 2);
    let (d, r) = num::Integer::div_rem(&num, &BigInt::from(2 * n - 1));
    assert!(r.is_zero());
    d.to_u64().expect("dim exceeds u64")
}

/// Exact kernel of (Gamma - lambda) on H_h for one index.
pub fn joint_eigenspace(n: usize, h: u32, m: u32) -> Result<HarmonicSpaceBasis, HarmonicError> {
    if !SpectralIndex::in_iq(h, m) {
        return Err(HarmonicError::IndexOutsideIQ { h, m });
    }
    let all = joint_eigenspaces_all(n, h)?;
    Ok(all.into_iter().find(|s| s.index.m == m).expect("index enumerated"))
}

/// Per-string report of the su(2) structure check.
#[derive(Debug, Clone, Serialize)]
pub struct StringReport {
    pub ell: u32,
    pub gamma_eigenvalue: u64,
    pub dim_gamma: usize,
    /// (ladder-zero eigenvalue, dimension) pairs along the string
    pub weight_dims: Vec<(i64, usize)>,
    pub ladders_bijective: bool,
    pub msdim_ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Su2Report {
    pub dim: usize,
    pub strings: Vec<StringReport>,
    pub ok: bool,
}

/// Verifies the string structure of a {T_i, T_j, T_k}-invariant space:
/// within each Gamma-eigenspace the raising/lowering operators are
/// bijections between consecutive weight spaces, and the dimension count
/// dim E_Gamma(l(l+2)) = (l+1)(dim E_0(l) - dim E_0(l+2)) holds.
pub fn su2_string_check(space: &[Poly]) -> Result<Su2Report, HarmonicError> {
    assert!(!space.is_empty(), "empty space");
    let n = space[0].n();
    let mut span = SpanBasis::new();
    for p in space {
        span.insert(p.terms());
    }
    // invariance (checked precondition)
    for p in space {
        for u in [ImUnit::I, ImUnit::J, ImUnit::K] {
            if !span.contains(vector_field_t(u, p).terms()) {
                return Err(HarmonicError::InvarianceViolation);
            }
        }
    }
    let rows: Vec<TermMap> = span.reduced_rows().into_iter().cloned().collect();
    let dim = rows.len();
    let op_matrix = |op: &dyn Fn(&Poly) -> Poly| -> Vec<Vec<CRat>> {
        let mut mat = vec![vec![CRat::zero(); dim]; dim];
        for (j, r) in rows.iter().enumerate() {
            let img = op(&Poly::from_term_map(n, r.clone()));
            let coords = span
                .coords_in_rows(img.terms())
                .expect("image stays in the invariant span");
            for (i, c) in coords.into_iter().enumerate() {
                mat[i][j] = c;
            }
        }
        mat
    };
    let gamma_mat = op_matrix(&gamma_op);
    let zero_mat = op_matrix(&|p| ladder(Ladder::Zero, p));

    let sub_eigenspace = |mat: &[Vec<CRat>], lambda: &CRat| -> Vec<Vec<CRat>> {
        let shifted: Vec<Vec<CRat>> = mat
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = row.clone();
                r[i] = &r[i] - lambda;
                r
            })
            .collect();
        nullspace_crat(shifted, dim)
    };
    let joint_kernel = |l1: (&[Vec<CRat>], &CRat), l2: (&[Vec<CRat>], &CRat)| -> Vec<Vec<CRat>> {
        let mut stacked: Vec<Vec<CRat>> = Vec::with_capacity(2 * dim);
        for (mat, lambda) in [l1, l2] {
            for (i, row) in mat.iter().enumerate() {
                let mut r = row.clone();
                r[i] = &r[i] - lambda;
                stacked.push(r);
            }
        }
        nullspace_crat(stacked, dim)
    };
    let materialize = |coords: &[CRat]| -> Poly {
        let mut acc = TermMap::new();
        for (c, r) in coords.iter().zip(&rows) {
            if !c.is_zero() {
                acc.add_assign(&r.scale(c));
            }
        }
        Poly::from_term_map(n, acc)
    };

    let max_deg = space.iter().map(|p| p.max_degree()).max().unwrap_or(0);
    let mut strings = Vec::new();
    let mut ok = true;
    let mut total = 0usize;
    for ell in 0..=max_deg {
        let lam = CRat::from_int((ell as i64) * (ell as i64 + 2));
        let e_gamma = sub_eigenspace(&gamma_mat, &lam);
        if e_gamma.is_empty() && ell > 0 {
            continue;
        }
        let dim_gamma = e_gamma.len();
        total += dim_gamma;
        // MSdim count
        let dim_w = |mu: i64| sub_eigenspace(&zero_mat, &CRat::from_int(mu)).len();
        let msdim_ok =
            dim_gamma == (ell as usize + 1) * (dim_w(ell as i64) - dim_w(ell as i64 + 2));
        // weight spaces inside the Gamma eigenspace, and ladder bijectivity
        let mut weight_dims = Vec::new();
        let mut ladders_bijective = true;
        let mut prev: Option<Vec<Poly>> = None;
        let mut mu = -(ell as i64);
        while mu <= ell as i64 {
            let w = joint_kernel((&gamma_mat, &lam), (&zero_mat, &CRat::from_int(mu)));
            let w_polys: Vec<Poly> = w.iter().map(|c| materialize(c)).collect();
            weight_dims.push((mu, w.len()));
            if let Some(prev_polys) = &prev {
                // raising maps the previous weight space onto this one
                let mut img_span = SpanBasis::new();
                let mut all_land = true;
                for p in prev_polys {
                    let img = ladder(Ladder::Raise, p);
                    // image must be a Gamma-eigenvector of the same eigenvalue
                    // with ladder-zero eigenvalue mu
                    let g_ok = gamma_op(&img) == img.scale(&lam);
                    let z_ok = ladder(Ladder::Zero, &img) == img.scale(&CRat::from_int(mu));
                    if !(g_ok && z_ok) {
                        all_land = false;
                    }
                    img_span.insert(img.terms());
                }
                let inj = img_span.rank() == prev_polys.len();
                let onto = img_span.rank() == w_polys.len();
                if !(all_land && inj && onto) {
                    ladders_bijective = false;
                }
                // lowering goes back down with full rank as well
                let mut low_span = SpanBasis::new();
                for p in &w_polys {
                    low_span.insert(ladder(Ladder::Lower, p).terms());
                }
                if low_span.rank() != prev_polys.len() {
                    ladders_bijective = false;
                }
            }
            prev = Some(w_polys);
            mu += 2;
        }
        if dim_gamma > 0 || ell == 0 {
            ok &= msdim_ok && ladders_bijective;
            strings.push(StringReport {
                ell,
                gamma_eigenvalue: (ell as u64) * (ell as u64 + 2),
                dim_gamma,
                weight_dims,
                ladders_bijective,
                msdim_ok,
            });
        }
    }
    ok &= total == dim;
    Ok(Su2Report { dim, strings, ok })
}

/// Integral kernel of the orthogonal projection onto the span of `space`,
/// evaluated against the base point e: K(., e) as an exact polynomial.
/// Computed from an arbitrary exact basis psi and its Gram matrix G under
/// the L^2(S) pairing, so no orthonormalization (and no square root) is
/// ever needed: K(x,e) = sum_{a,b} (conj G)^{-1}_{ab} psi_a(x) conj(psi_b(e)).
pub fn projection_kernel_bruteforce(
    space: &HarmonicSpaceBasis,
    e: &SpherePoint<Rat>,
) -> Result<Poly, HarmonicError> {
    let basis = &space.basis;
    let dim = basis.len();
    assert!(dim > 0, "empty basis");
    let n = space.n;
    // Gram matrix, hermitian: compute the upper triangle in parallel
    let entries: Vec<((usize, usize), CRat)> = (0..dim)
        .flat_map(|a| (a..dim).map(move |b| (a, b)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(a, b)| ((a, b), sphere_inner(&basis[a], &basis[b])))
        .collect();
    let mut gram = vec![vec![CRat::zero(); dim]; dim];
    for ((a, b), v) in entries {
        gram[b][a] = v.conj();
        gram[a][b] = v;
    }
    // right-hand side: conj(psi_b(e))
    let coords: Vec<Rat> = e.to_real_coords();
    let rhs: Vec<CRat> = basis.iter().map(|p| p.eval_exact(&coords).conj()).collect();
    // solve conj(G) w = v
    let conj_g: Vec<Vec<CRat>> = gram
        .iter()
        .map(|row| row.iter().map(|z| z.conj()).collect())
        .collect();
    let w = solve_crat(&conj_g, &rhs).ok_or(HarmonicError::SingularGram)?;
    let mut acc = Poly::zero(n);
    for (wa, psi) in w.iter().zip(basis) {
        if !wa.is_zero() {
            acc = acc.add(&psi.scale(wa))?;
        }
    }
    Ok(acc)
}

/// K(., e) for the joint eigenspace (h, m) at the standard base point.
pub fn projection_kernel_at(n: usize, h: u32, m: u32) -> Result<Poly, HarmonicError> {
    let space = joint_eigenspace(n, h, m)?;
    projection_kernel_bruteforce(&space, &SpherePoint::basepoint(n))
}

/// Exact verification that every basis element satisfies both eigenvalue
/// relations of its index.
pub fn check_eigenrelations(space: &HarmonicSpaceBasis) -> bool {
    let Ok(eig) = eigenvalues(space.n, space.index.h, space.index.m) else {
        return false;
    };
    space.basis.par_iter().all(|p| {
        sphere_laplacian(p) == p.scale(&CRat::from_int(eig.lambda_delta as i64))
            && gamma_op(p) == p.scale(&CRat::from_int(eig.lambda_gamma as i64))
    })
}

/// One row of the (h, m, dim, eigenvalues) table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DimRow {
    pub n: usize,
    pub h: u32,
    pub m: u32,
    pub dim: u64,
    pub lambda_delta: u64,
    pub lambda_gamma: u64,
    pub lambda_l: u64,
}

pub fn dims_table(n: usize, h_max: u32) -> Vec<DimRow> {
    iq_indices(h_max)
        .into_iter()
        .map(|idx| {
            let e = eigenvalues(n, idx.h, idx.m).expect("index from enumeration");
            DimRow {
                n,
                h: idx.h,
                m: idx.m,
                dim: e.dim,
                lambda_delta: e.lambda_delta,
                lambda_gamma: e.lambda_gamma,
                lambda_l: e.lambda_l,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::laplace_nonneg;
    use crate::scalar::rat;

    #[test]
    fn dimension_formulas() {
        assert_eq!(dim_p_h(2, 0), 1);
        assert_eq!(dim_p_h(2, 1), 8);
        assert_eq!(dim_p_h(2, 2), 36);
        assert_eq!(dim_h_h(2, 0), 1);
        assert_eq!(dim_h_h(2, 1), 8);
        assert_eq!(dim_h_h(2, 2), 35);
        assert_eq!(dim_h_hm(2, 0, 0).unwrap(), 1);
        assert_eq!(dim_h_hm(2, 1, 0).unwrap(), 8);
        // dims over m sum to dim H_h
        for h in 0..=8u32 {
            let total: u64 = (0..=h / 2).map(|m| dim_h_hm(2, h, m).unwrap()).sum();
            assert_eq!(total, dim_h_h(2, h as i64), "h = {h}");
            let total3: u64 = (0..=h / 2).map(|m| dim_h_hm(3, h, m).unwrap()).sum();
            assert_eq!(total3, dim_h_h(3, h as i64), "n=3, h = {h}");
        }
        assert!(dim_h_hm(2, 1, 1).is_err());
    }

    #[test]
    fn eigenvalue_formulas() {
        let e = eigenvalues(2, 0, 0).unwrap();
        assert_eq!((e.lambda_delta, e.lambda_gamma, e.lambda_l), (0, 0, 0));
        let e = eigenvalues(2, 1, 0).unwrap();
        assert_eq!((e.lambda_delta, e.lambda_gamma, e.lambda_l), (7, 3, 4));
        let e = eigenvalues(2, 2, 1).unwrap();
        assert_eq!((e.lambda_delta, e.lambda_gamma, e.lambda_l), (16, 0, 16));
        // lambda_L = lambda_Delta - lambda_Gamma and the factorized form
        for h in 0..=12u32 {
            for m in 0..=h / 2 {
                for n in 2..=3usize {
                    let e = eigenvalues(n, h, m).unwrap();
                    assert_eq!(e.lambda_l, e.lambda_delta - e.lambda_gamma);
                    let (nn, hh, mm) = (n as i64, h as i64, m as i64);
                    let factored = (hh - mm + nn) * (mm + nn - 1) - nn * (nn - 1);
                    assert_eq!(e.lambda_l as i64, 4 * factored);
                }
            }
        }
    }

    #[test]
    fn harmonic_space_small() {
        let h0 = harmonic_space(2, 0).unwrap();
        assert_eq!(h0.len(), 1);
        assert_eq!(h0[0], Poly::one(2));
        let h1 = harmonic_space(2, 1).unwrap();
        assert_eq!(h1.len(), 8);
        for (i, p) in h1.iter().enumerate() {
            // linear forms are harmonic and the projection leaves them alone
            assert_eq!(p.nterms(), 1, "basis element {i} is a single monomial");
            assert!(laplace_nonneg(p).is_zero());
        }
        let h2 = harmonic_space(2, 2).unwrap();
        assert_eq!(h2.len(), 35);
        for p in &h2 {
            assert!(laplace_nonneg(p).is_zero());
            assert_eq!(p.homogeneous_degree(), Some(2));
        }
        // xi1 xi2 and xi1^2 - xi2^2 lie in the span
        let mut span = SpanBasis::new();
        for p in &h2 {
            span.insert(p.terms());
        }
        let m12 = Poly::var(2, 0).mul(&Poly::var(2, 1)).unwrap();
        let msq = Poly::var(2, 0)
            .pow(2)
            .unwrap()
            .sub(&Poly::var(2, 1).pow(2).unwrap())
            .unwrap();
        assert!(span.contains(m12.terms()));
        assert!(span.contains(msq.terms()));
    }

    #[test]
    fn bidegree_space_small() {
        let b00 = bidegree_space(2, 0, 0).unwrap();
        assert_eq!(b00.len(), 1);
        let b10 = bidegree_space(2, 1, 0).unwrap();
        assert_eq!(b10.len(), 4);
        for p in &b10 {
            assert_eq!(ladder(Ladder::Zero, p), p.clone());
        }
        let b21 = bidegree_space(2, 2, 1).unwrap();
        assert_eq!(b21.len(), 10 * 4);
        for p in &b21 {
            assert_eq!(ladder(Ladder::Zero, p), p.clone(), "eigenvalue p-q = 1");
        }
    }

    #[test]
    fn joint_eigenspaces_h2() {
        let spaces = joint_eigenspaces_all(2, 2).unwrap();
        assert_eq!(spaces.len(), 2);
        let d: Vec<u64> = spaces.iter().map(|s| s.basis.len() as u64).collect();
        assert_eq!(d, vec![dim_h_hm(2, 2, 0).unwrap(), dim_h_hm(2, 2, 1).unwrap()]);
        for s in &spaces {
            assert!(check_eigenrelations(s), "eigenrelations at m={}", s.index.m);
        }
        // mutual L^2 orthogonality across distinct indices
        let p = &spaces[0].basis[0];
        for q in &spaces[1].basis {
            assert!(sphere_inner(p, q).is_zero());
        }
    }

    #[test]
    fn su2_strings_on_p1_and_span1() {
        // span{1}: single trivial string
        let r = su2_string_check(&[Poly::one(2)]).unwrap();
        assert!(r.ok);
        assert_eq!(r.dim, 1);
        assert_eq!(r.strings.len(), 1);
        assert_eq!(r.strings[0].ell, 0);
        // P_1: Gamma eigenvalue 3, string length 2, 4 strings
        let p1: Vec<Poly> = (0..8).map(|i| Poly::var(2, i)).collect();
        let r = su2_string_check(&p1).unwrap();
        assert!(r.ok, "strings: {:?}", r.strings);
        let s = r.strings.iter().find(|s| s.ell == 1).unwrap();
        assert_eq!(s.dim_gamma, 8);
        assert_eq!(s.gamma_eigenvalue, 3);
        assert_eq!(s.weight_dims, vec![(-1, 4), (1, 4)]);
    }

    #[test]
    fn projection_kernel_h10() {
        // (2,1,0): K(., e) = 8 Re<x,e> and K(e,e) = 8
        let k = projection_kernel_at(2, 1, 0).unwrap();
        assert_eq!(k, Poly::var(2, 0).scale(&CRat::from_int(8)));
        let e = SpherePoint::<Rat>::basepoint(2);
        assert_eq!(k.eval_exact(&e.to_real_coords()), CRat::from_int(8));
        // (n,0,0): constant 1
        let k0 = projection_kernel_at(2, 0, 0).unwrap();
        assert_eq!(k0, Poly::one(2));
    }

    #[test]
    fn basis_json_export() {
        let space = joint_eigenspace(2, 2, 1).unwrap();
        let json = serde_json::to_string(&space).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["n"], 2);
        assert_eq!(v["index"]["h"], 2);
        assert_eq!(v["basis"].as_array().unwrap().len(), 5);
        // each element round-trips through the canonical polynomial format
        for b in v["basis"].as_array().unwrap() {
            let p = Poly::from_json(&b.to_string()).unwrap();
            assert_eq!(p.homogeneous_degree(), Some(2));
        }
    }

    #[test]
    fn projection_kernel_basis_independent() {
        let space = joint_eigenspace(2, 2, 1).unwrap();
        let e = SpherePoint::<Rat>::basepoint(2);
        let k1 = projection_kernel_bruteforce(&space, &e).unwrap();
        // re-mix the basis by an invertible exact transformation
        let d = space.basis.len();
        let mut mixed = Vec::new();
        for i in 0..d {
            let mut p = space.basis[i].scale(&CRat::from_rat(rat(2, 3)));
            p = p.add(&space.basis[(i + 1) % d].scale(&CRat::new(rat(1, 2), rat(1, 5)))).unwrap();
            mixed.push(p);
        }
        let mixed_space = HarmonicSpaceBasis { n: 2, index: space.index, basis: mixed };
        let k2 = projection_kernel_bruteforce(&mixed_space, &e).unwrap();
        assert_eq!(k1, k2, "kernel must not depend on the basis choice");
    }
}
