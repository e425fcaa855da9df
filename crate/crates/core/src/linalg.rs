//! Exact dense linear algebra for the brute-force oracles: integer null
//! spaces via fraction-free elimination, complex-rational RREF for the small
//! eigenspace and string computations, and a linear solver for Gram systems.

use crate::poly::TermMap;
use crate::scalar::{CRat, Rat};
use num::{BigInt, Integer, One, Signed, Zero};

/// Right null space of an integer matrix (rows x cols), returned as
/// primitive integer vectors (content 1, deterministic order by free
/// column). Forward elimination is fraction-free with cross-multiplication
/// and per-row content stripping; back-substitution runs over rationals.
pub fn nullspace_int(mut mat: Vec<Vec<BigInt>>, cols: usize) -> Vec<Vec<BigInt>> {
    let rows = mat.len();
    for row in &mat {
        debug_assert_eq!(row.len(), cols);
    }
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // pick the nonzero pivot of least magnitude to limit growth
        let mut best: Option<(usize, &BigInt)> = None;
        for (i, row) in mat.iter().enumerate().skip(r) {
            if !row[c].is_zero() {
                match &best {
                    Some((_, b)) if row[c].abs() >= b.abs() => {}
                    _ => best = Some((i, &row[c])),
                }
            }
        }
        let Some((pi, _)) = best else { continue };
        mat.swap(r, pi);
        let pivot = mat[r][c].clone();
        let (pivot_row, rest) = mat[r..].split_first_mut().unwrap();
        for row in rest {
            if row[c].is_zero() {
                continue;
            }
            let g = pivot.gcd(&row[c]);
            let pm = &row[c] / &g;
            let rm = &pivot / &g;
            for j in c..cols {
                let v = &row[j] * &rm - &pivot_row[j] * &pm;
                row[j] = v;
            }
            strip_content(row);
        }
        pivot_cols.push(c);
        r += 1;
    }
    let rank = pivot_cols.len();
    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();

    let mut basis = Vec::with_capacity(free_cols.len());
    for &fc in &free_cols {
        // back-substitute with x_fc = 1, other free vars 0
        let mut x = vec![Rat::zero(); cols];
        x[fc] = Rat::one();
        for i in (0..rank).rev() {
            let pc = pivot_cols[i];
            let mut acc = Rat::zero();
            for j in pc + 1..cols {
                if !mat[i][j].is_zero() && !x[j].is_zero() {
                    acc += Rat::from_integer(mat[i][j].clone()) * &x[j];
                }
            }
            x[pc] = -acc / Rat::from_integer(mat[i][pc].clone());
        }
        // clear denominators, strip content
        let mut lcm = BigInt::one();
        for v in &x {
            lcm = lcm.lcm(v.denom());
        }
        let mut vec_int: Vec<BigInt> = x.iter().map(|v| v.numer() * (&lcm / v.denom())).collect();
        strip_content(&mut vec_int);
        basis.push(vec_int);
    }
    basis
}

fn strip_content(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for v in row.iter() {
        if !v.is_zero() {
            g = g.gcd(v);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for v in row.iter_mut() {
        *v = &*v / &g;
    }
}

pub fn rank_int(mat: Vec<Vec<BigInt>>, cols: usize) -> usize {
    let nullity = nullspace_int(mat, cols).len();
    cols - nullity
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref_crat(mat: &mut [Vec<CRat>]) -> Vec<usize> {
    let rows = mat.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = mat[0].len();
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pi) = (r..rows).find(|&i| !mat[i][c].is_zero()) else { continue };
        mat.swap(r, pi);
        let inv = mat[r][c].inv();
        for j in c..cols {
            let v = &mat[r][j] * &inv;
            mat[r][j] = v;
        }
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for j in c..cols {
                    let delta = &mat[r][j] * &f;
                    let v = &mat[i][j] - &delta;
                    mat[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Right null space basis of a complex-rational matrix.
pub fn nullspace_crat(mut mat: Vec<Vec<CRat>>, cols: usize) -> Vec<Vec<CRat>> {
    let pivots = rref_crat(&mut mat);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &fc in &free {
        let mut x = vec![CRat::zero(); cols];
        x[fc] = CRat::one();
        for (i, &pc) in pivots.iter().enumerate() {
            // rref: row i reads x_pc + sum_{j free} m[i][j] x_j = 0
            x[pc] = -&mat[i][fc];
        }
        basis.push(x);
    }
    basis
}

/// Solve the square system A x = b by Gaussian elimination; None when A is
/// singular.
pub fn solve_crat(a: &[Vec<CRat>], b: &[CRat]) -> Option<Vec<CRat>> {
    let n = a.len();
    assert_eq!(b.len(), n);
    let mut m: Vec<Vec<CRat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), n);
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for c in 0..n {
        let pi = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, pi);
        let inv = m[c][c].inv();
        for j in c..=n {
            let v = &m[c][j] * &inv;
            m[c][j] = v;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=n {
                    let delta = &m[c][j] * &f;
                    let v = &m[i][j] - &delta;
                    m[i][j] = v;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Incrementally reduced spanning set of sparse vectors (polynomial term
/// maps), tracking how each reduced row combines the inserted vectors.
/// Supports membership tests and coordinates w.r.t. the insertion order.
pub struct SpanBasis {
    /// (reduced vector, pivot exponent, combination over inserted vectors)
    rows: Vec<(TermMap, Vec<u32>, Vec<CRat>)>,
    inserted: usize,
}

impl Default for SpanBasis {
    fn default() -> Self {
        Self::new()
    }
}

impl SpanBasis {
    pub fn new() -> Self {
        SpanBasis { rows: Vec::new(), inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn leading(v: &TermMap) -> Option<(Vec<u32>, CRat)> {
        v.iter().next().map(|(e, c)| (e.clone(), c.clone()))
    }

    fn reduce(&self, v: &TermMap, combo: &mut [CRat]) -> TermMap {
        let mut cur = v.clone();
        loop {
            let Some((lead, coeff)) = Self::leading(&cur) else { return cur };
            let Some((row, _, row_combo)) = self.rows.iter().find(|(_, p, _)| *p == lead) else {
                return cur;
            };
            // cur -= coeff * row (row is normalized to leading coefficient 1)
            let scaled = row.scale(&coeff);
            cur.sub_assign(&scaled);
            for (dst, src) in combo.iter_mut().zip(row_combo) {
                let delta = &coeff * src;
                *dst = &*dst - &delta;
            }
        }
    }

    /// Insert a vector; returns true when it enlarged the span.
    pub fn insert(&mut self, v: &TermMap) -> bool {
        self.inserted += 1;
        let mut combo = vec![CRat::zero(); self.inserted];
        combo[self.inserted - 1] = CRat::one();
        for (_, _, rc) in self.rows.iter_mut() {
            rc.push(CRat::zero());
        }
        let red = self.reduce(v, &mut combo);
        match Self::leading(&red) {
            None => false,
            Some((lead, coeff)) => {
                let inv = coeff.inv();
                let norm = red.scale(&inv);
                let combo: Vec<CRat> = combo.iter().map(|c| c * &inv).collect();
                self.rows.push((norm, lead, combo));
                true
            }
        }
    }

    /// True when v lies in the current span.
    pub fn contains(&self, v: &TermMap) -> bool {
        let mut combo = vec![CRat::zero(); self.inserted];
        self.reduce(v, &mut combo).is_zero()
    }

    /// Coordinates of v as a combination of the *inserted* vectors, when v
    /// lies in the span. The combination uses only vectors that enlarged
    /// the span during insertion.
    pub fn express(&self, v: &TermMap) -> Option<Vec<CRat>> {
        let mut combo = vec![CRat::zero(); self.inserted];
        let red = self.reduce(v, &mut combo);
        if !red.is_zero() {
            return None;
        }
        Some(combo.iter().map(|c| -c).collect())
    }

    /// The reduced (leading-coefficient-one, independent) rows themselves.
    pub fn reduced_rows(&self) -> Vec<&TermMap> {
        self.rows.iter().map(|(r, _, _)| r).collect()
    }

    /// Coordinates of v w.r.t. the reduced rows: v = sum c_i row_i.
    pub fn coords_in_rows(&self, v: &TermMap) -> Option<Vec<CRat>> {
        let mut coords = vec![CRat::zero(); self.rows.len()];
        let mut cur = v.clone();
        loop {
            let Some((lead, coeff)) = Self::leading(&cur) else { break };
            let Some(idx) = self.rows.iter().position(|(_, p, _)| *p == lead) else {
                return None;
            };
            let scaled = self.rows[idx].0.scale(&coeff);
            cur.sub_assign(&scaled);
            coords[idx] = &coords[idx] + &coeff;
        }
        Some(coords)
    }
}
