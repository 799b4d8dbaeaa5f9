//! Exact integer linear algebra: Smith normal form, solving, and homology
//! presentations of finitely generated abelian groups.
//!
//! Matrices are stored sparsely (no zero entries); the reduction itself runs
//! on a dense copy, which is fine at the sizes Khovanov complexes of small
//! diagrams produce. Pivots take the nonzero entry of least absolute value,
//! tie-broken by (row, col), to keep coefficients from exploding.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = IntMat::zero(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        assert!(r < self.rows && c < self.cols);
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &BigInt)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMat::zero(self.rows, other.cols);
        for (&(i, k), a) in &self.entries {
            for j in 0..other.cols {
                let b = other.get(k, j);
                if !b.is_zero() {
                    let cur = out.get(i, j) + a * b;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![BigInt::zero(); self.rows];
        for (&(i, j), a) in &self.entries {
            out[i] += a * &v[j];
        }
        out
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.entries.is_empty()
    }

    fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (&(i, j), v) in &self.entries {
            d[i][j] = v.clone();
        }
        d
    }

    fn from_dense(d: &[Vec<BigInt>]) -> IntMat {
        let rows = d.len();
        let cols = d.first().map_or(0, |r| r.len());
        let mut m = IntMat::zero(rows, cols);
        for (i, row) in d.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    m.set(i, j, v.clone());
                }
            }
        }
        m
    }

    /// Dump in the `rows cols` / `r c value` triplet format.
    pub fn dump(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for (&(i, j), v) in &self.entries {
            s.push_str(&format!("{i} {j} {v}\n"));
        }
        s
    }

    /// Fraction-free Gaussian elimination rank (Bareiss). Independent of the
    /// Smith reduction path; used as a cross-check and as the fast path when
    /// only ranks are needed.
    pub fn rank(&self) -> usize {
        let mut a = self.to_dense();
        let rows = self.rows;
        let cols = self.cols;
        let mut rank = 0;
        let mut prev = BigInt::one();
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            for r in rank + 1..rows {
                for j in (c + 1..cols).rev() {
                    let t = &a[r][j] * &a[rank][c] - &a[r][c] * &a[rank][j];
                    a[r][j] = &t / &prev;
                }
                a[r][c] = BigInt::zero();
            }
            prev = a[rank][c].clone();
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    /// Exact determinant by fraction-free elimination; square matrices only.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.to_dense();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = &t / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }
}

impl fmt::Display for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A Smith decomposition `A = U S V` with unimodular `U`, `V`, diagonal `S`,
/// and each diagonal entry dividing the next. The row/column operation
/// accumulators `L = U^-1` and `R = V^-1` are kept as well: `L A R = S`.
#[derive(Debug, Clone)]
pub struct Smith {
    pub s: IntMat,
    /// Nonzero invariant factors, in divisibility order.
    pub diag: Vec<BigInt>,
    pub u: IntMat,
    pub v: IntMat,
    pub l: IntMat,
    pub r: IntMat,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }
}

struct Reduction {
    rows: usize,
    cols: usize,
    a: Vec<Vec<BigInt>>,
    // L A R = current a; U = L^-1, V = R^-1 maintained alongside
    l: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    r: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
}

impl Reduction {
    fn new(m: &IntMat) -> Self {
        let id = |n: usize| -> Vec<Vec<BigInt>> {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                        .collect()
                })
                .collect()
        };
        Reduction {
            rows: m.rows,
            cols: m.cols,
            a: m.to_dense(),
            l: id(m.rows),
            u: id(m.rows),
            r: id(m.cols),
            v: id(m.cols),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        self.l.swap(i, j);
        // U gets columns swapped
        for row in self.u.iter_mut() {
            row.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        for row in self.r.iter_mut() {
            row.swap(i, j);
        }
        self.v.swap(i, j);
    }

    /// row i += k * row j
    fn add_row(&mut self, i: usize, j: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let t = &self.a[i][c] + k * &self.a[j][c];
            self.a[i][c] = t;
        }
        for c in 0..self.rows {
            let t = &self.l[i][c] + k * &self.l[j][c];
            self.l[i][c] = t;
        }
        // U: col j -= k * col i
        for r in 0..self.rows {
            let t = &self.u[r][j] - k * &self.u[r][i];
            self.u[r][j] = t;
        }
    }

    /// col i += k * col j
    fn add_col(&mut self, i: usize, j: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for row in self.a.iter_mut() {
            let t = &row[i] + k * &row[j];
            row[i] = t;
        }
        for row in self.r.iter_mut() {
            let t = &row[i] + k * &row[j];
            row[i] = t;
        }
        // V: row j -= k * row i
        for c in 0..self.cols {
            let t = &self.v[j][c] - k * &self.v[i][c];
            self.v[j][c] = t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            self.a[i][c] = -std::mem::take(&mut self.a[i][c]);
        }
        for c in 0..self.rows {
            self.l[i][c] = -std::mem::take(&mut self.l[i][c]);
        }
        for r in 0..self.rows {
            self.u[r][i] = -std::mem::take(&mut self.u[r][i]);
        }
    }
}

/// Smith normal form with all four transform matrices.
pub fn smith_normal_form(m: &IntMat) -> Smith {
    let rows = m.rows;
    let cols = m.cols;
    let mut red = Reduction::new(m);
    let mut n = 0usize;
    while n < rows && n < cols {
        // pivot: nonzero entry of least |value| in the remaining block
        let mut pivot: Option<(usize, usize)> = None;
        for i in n..rows {
            for j in n..cols {
                if red.a[i][j].is_zero() {
                    continue;
                }
                let better = match pivot {
                    None => true,
                    Some((pi, pj)) => {
                        let cur = red.a[pi][pj].abs();
                        let cand = red.a[i][j].abs();
                        cand < cur || (cand == cur && (i, j) < (pi, pj))
                    }
                };
                if better {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        red.swap_rows(n, pi);
        red.swap_cols(n, pj);
        if red.a[n][n].is_negative() {
            red.negate_row(n);
        }
        // clear row n and column n; reduced entries can revive the other side
        loop {
            let mut clean = true;
            for j in n + 1..cols {
                if red.a[n][j].is_zero() {
                    continue;
                }
                let q = div_round(&red.a[n][j], &red.a[n][n]);
                red.add_col(j, n, &(-q));
                if !red.a[n][j].is_zero() {
                    // remainder smaller than pivot: swap it in
                    red.swap_cols(n, j);
                    if red.a[n][n].is_negative() {
                        red.negate_row(n);
                    }
                    clean = false;
                }
            }
            for i in n + 1..rows {
                if red.a[i][n].is_zero() {
                    continue;
                }
                let q = div_round(&red.a[i][n], &red.a[n][n]);
                red.add_row(i, n, &(-q));
                if !red.a[i][n].is_zero() {
                    red.swap_rows(n, i);
                    if red.a[n][n].is_negative() {
                        red.negate_row(n);
                    }
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        // divisibility: pivot must divide the rest of the block
        let mut offender = None;
        'scan: for i in n + 1..rows {
            for j in n + 1..cols {
                if !(&red.a[i][j] % &red.a[n][n]).is_zero() {
                    offender = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = offender {
            red.add_row(n, i, &BigInt::one());
            continue; // redo this pivot position
        }
        n += 1;
    }
    let diag: Vec<BigInt> = (0..n).map(|i| red.a[i][i].clone()).collect();
    Smith {
        s: IntMat::from_dense(&red.a),
        diag,
        u: IntMat::from_dense(&red.u),
        v: IntMat::from_dense(&red.v),
        l: IntMat::from_dense(&red.l),
        r: IntMat::from_dense(&red.r),
    }
}

/// Round-to-nearest quotient, which keeps remainders at most half the pivot.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut q, r) = num_integer::Integer::div_rem(a, b);
    let two_r: BigInt = &r * 2;
    if two_r.abs() > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

/// Does `A x = b` have an integer solution? Returns one solution if so.
pub fn in_image(a: &IntMat, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != a.rows {
        return Err(Error::DimensionMismatch(format!(
            "vector length {} vs {} rows",
            b.len(),
            a.rows
        )));
    }
    let sm = smith_normal_form(a);
    solve_with(&sm, b)
}

/// Solve using a precomputed decomposition.
pub fn solve_with(sm: &Smith, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    let c = sm.l.mul_vec(b);
    let rank = sm.diag.len();
    let mut y = vec![BigInt::zero(); sm.r.rows];
    for (i, ci) in c.iter().enumerate() {
        if i < rank {
            let (q, r) = num_integer::Integer::div_rem(ci, &sm.diag[i]);
            if !r.is_zero() {
                return Ok(None);
            }
            y[i] = q;
        } else if !ci.is_zero() {
            return Ok(None);
        }
    }
    Ok(Some(sm.r.mul_vec(&y)))
}

/// A finitely generated abelian group presented as cyclic summands, with a
/// generating vector (in the ambient chain basis) for each summand and a
/// basis of the boundary submodule.
#[derive(Debug, Clone)]
pub struct HomologyPresentation {
    /// 0 means a free summand; m >= 2 a Z/m summand. Order-1 summands are
    /// dropped.
    pub summands: Vec<BigInt>,
    pub generators: Vec<Vec<BigInt>>,
    pub boundary_basis: Vec<Vec<BigInt>>,
    /// Kernel basis of the outgoing differential (columns span ker d_out).
    pub kernel_basis: Vec<Vec<BigInt>>,
    /// Relation coordinates: summand i is killed by diag[i] (when nonzero).
    pub torsion_rank: usize,
    pub free_rank: usize,
}

impl HomologyPresentation {
    pub fn total_rank(&self) -> usize {
        self.summands.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.summands.is_empty()
    }

    /// Express a kernel vector in the presentation's summand coordinates,
    /// modulo boundaries. Returns one coefficient per summand.
    pub fn coordinates(&self, z: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        // Solve [generators | boundary_basis] x = z over Z.
        let dim = z.len();
        let k = self.generators.len();
        let m = self.boundary_basis.len();
        let mut a = IntMat::zero(dim, k + m);
        for (j, g) in self.generators.iter().enumerate() {
            for (i, v) in g.iter().enumerate() {
                if !v.is_zero() {
                    a.set(i, j, v.clone());
                }
            }
        }
        for (j, b) in self.boundary_basis.iter().enumerate() {
            for (i, v) in b.iter().enumerate() {
                if !v.is_zero() {
                    a.set(i, k + j, v.clone());
                }
            }
        }
        match in_image(&a, z)? {
            None => Ok(None),
            Some(x) => {
                let mut coords: Vec<BigInt> = x[..k].to_vec();
                for (i, c) in coords.iter_mut().enumerate() {
                    if !self.summands[i].is_zero() {
                        *c = num_integer::Integer::mod_floor(c, &self.summands[i]);
                    }
                }
                Ok(Some(coords))
            }
        }
    }
}

/// Homology ker(d_out)/im(d_in) with explicit generators.
///
/// `d_in` maps grading (h-1) to h, `d_out` maps h to (h+1); both are matrices
/// over the canonical generator bases, so `d_out.cols == d_in.rows` is the
/// dimension of the middle chain group.
pub fn homology_with_generators(d_in: &IntMat, d_out: &IntMat) -> Result<HomologyPresentation> {
    if d_in.rows != d_out.cols {
        return Err(Error::DimensionMismatch(format!(
            "middle dimension: d_in has {} rows, d_out {} cols",
            d_in.rows, d_out.cols
        )));
    }
    if !d_out.mul(d_in).is_zero_matrix() {
        return Err(Error::NotAComplex);
    }
    let dim = d_in.rows;
    let sm_out = smith_normal_form(d_out);
    let rank_out = sm_out.rank();
    let ker_dim = dim - rank_out;
    // kernel basis: trailing columns of R (L A R = S)
    let kernel: Vec<Vec<BigInt>> = (rank_out..dim).map(|j| sm_out.r.column(j)).collect();

    // boundary columns in kernel coordinates: y = (R^-1 v) restricted
    let mut rel = IntMat::zero(ker_dim, d_in.cols);
    for j in 0..d_in.cols {
        let v = d_in.column(j);
        let y = sm_out.v.mul_vec(&v); // V = R^-1
        for i in 0..rank_out {
            if !y[i].is_zero() {
                return Err(Error::NotAComplex);
            }
        }
        for i in 0..ker_dim {
            if !y[rank_out + i].is_zero() {
                rel.set(i, j, y[rank_out + i].clone());
            }
        }
    }
    let sm_rel = smith_normal_form(&rel);
    // new kernel basis f_i = U_rel e_i (columns of U = L^-1); summand i has
    // order diag[i] (or 0 beyond the rank)
    let rank_rel = sm_rel.rank();
    let mut summands = Vec::new();
    let mut generators = Vec::new();
    let mut boundary_basis = Vec::new();
    for i in 0..ker_dim {
        let order = if i < rank_rel {
            sm_rel.diag[i].clone()
        } else {
            BigInt::zero()
        };
        // chain-level vector: kernel * (column i of U_rel)
        let coeffs = sm_rel.u.column(i);
        let mut vec_chain = vec![BigInt::zero(); dim];
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (r, kv) in kernel[k].iter().enumerate() {
                vec_chain[r] += c * kv;
            }
        }
        if i < rank_rel {
            let mut b = vec_chain.clone();
            for v in b.iter_mut() {
                *v *= &order;
            }
            boundary_basis.push(b);
        }
        if order.is_one() {
            continue;
        }
        summands.push(order);
        generators.push(vec_chain);
    }
    let torsion_rank = summands.iter().filter(|s| !s.is_zero()).count();
    let free_rank = summands.len() - torsion_rank;
    Ok(HomologyPresentation {
        summands,
        generators,
        boundary_basis,
        kernel_basis: kernel,
        torsion_rank,
        free_rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snf_zero_matrix() {
        let m = IntMat::from_rows(vec![vec![0]]);
        let sm = smith_normal_form(&m);
        assert!(sm.diag.is_empty());
        assert_eq!(sm.u.get(0, 0), BigInt::one());
        assert_eq!(sm.v.get(0, 0), BigInt::one());
    }

    #[test]
    fn snf_hand_example() {
        let m = IntMat::from_rows(vec![vec![1, 2], vec![3, 4]]);
        let sm = smith_normal_form(&m);
        assert_eq!(sm.diag, vec![BigInt::one(), BigInt::from(2)]);
        // A = U S V exactly
        assert_eq!(sm.u.mul(&sm.s).mul(&sm.v), m);
        assert_eq!(sm.u.det().abs(), BigInt::one());
        assert_eq!(sm.v.det().abs(), BigInt::one());
    }

    #[test]
    fn snf_already_diagonal() {
        let m = IntMat::from_rows(vec![vec![2, 0], vec![0, 2]]);
        let sm = smith_normal_form(&m);
        assert_eq!(sm.diag, vec![BigInt::from(2), BigInt::from(2)]);
    }

    #[test]
    fn snf_divisibility_chain() {
        let m = IntMat::from_rows(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let sm = smith_normal_form(&m);
        assert_eq!(
            sm.diag,
            vec![BigInt::from(2), BigInt::from(2), BigInt::from(156)]
        );
        assert_eq!(sm.u.mul(&sm.s).mul(&sm.v), m);
    }

    #[test]
    fn in_image_parity() {
        let a = IntMat::from_rows(vec![vec![2]]);
        assert!(in_image(&a, &[BigInt::one()]).unwrap().is_none());
        let x = in_image(&a, &[BigInt::from(4)]).unwrap().unwrap();
        assert_eq!(x, vec![BigInt::from(2)]);
    }

    #[test]
    fn in_image_matches_brute_force() {
        let a = IntMat::from_rows(vec![vec![1, 2], vec![3, 4]]);
        let b = [BigInt::one(), BigInt::one()];
        // brute force |x_i| <= 10
        let mut brute = None;
        'outer: for x0 in -10i64..=10 {
            for x1 in -10i64..=10 {
                if x0 + 2 * x1 == 1 && 3 * x0 + 4 * x1 == 1 {
                    brute = Some((x0, x1));
                    break 'outer;
                }
            }
        }
        let got = in_image(&a, &b).unwrap();
        assert_eq!(brute.is_some(), got.is_some());
        if let Some(x) = got {
            assert_eq!(a.mul_vec(&x), b.to_vec());
        }
    }

    #[test]
    fn homology_zero_differentials() {
        let d_in = IntMat::zero(1, 0);
        let d_out = IntMat::zero(0, 1);
        let h = homology_with_generators(&d_in, &d_out).unwrap();
        assert_eq!(h.summands, vec![BigInt::zero()]);
        assert_eq!(h.generators.len(), 1);
    }

    #[test]
    fn homology_z_mod_2() {
        // 0 -> Z -(2)-> Z -> 0 at the right node: ker = Z, im = 2Z
        let d_in = IntMat::from_rows(vec![vec![2]]);
        let d_out = IntMat::zero(0, 1);
        let h = homology_with_generators(&d_in, &d_out).unwrap();
        assert_eq!(h.summands, vec![BigInt::from(2)]);
    }

    #[test]
    fn homology_not_a_complex() {
        let d_in = IntMat::from_rows(vec![vec![1]]);
        let d_out = IntMat::from_rows(vec![vec![1]]);
        assert!(matches!(
            homology_with_generators(&d_in, &d_out),
            Err(Error::NotAComplex)
        ));
    }

    #[test]
    fn rank_and_det() {
        let m = IntMat::from_rows(vec![vec![1, 2], vec![3, 4]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.det(), BigInt::from(-2));
        let m = IntMat::from_rows(vec![vec![1, 2], vec![2, 4]]);
        assert_eq!(m.rank(), 1);
    }
}
