//! Exact integer linear algebra.
//!
//! Everything here works over arbitrary-precision integers: Hermite and
//! Smith normal forms with their unimodular transforms, fraction-free
//! determinants, integer kernels and integer/rational solving. Gram
//! matrices, basis matrices and transition matrices in the rest of the
//! crate are all [`IntMatrix`] values.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; an empty row list gives a 0x`cols` matrix.
    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Result<Self> {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix with {} columns",
                    row.len(),
                    cols
                )));
            }
            data.extend(row);
        }
        Ok(IntMatrix { rows: r, cols, data })
    }

    /// Convenience constructor for small literal matrices. Panics on ragged input.
    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data: Vec<BigInt> = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged matrix literal");
                r.iter().map(|&x| BigInt::from(x))
            })
            .collect();
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, x) in entries.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [BigInt] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Entries as `i64`, if they all fit.
    pub fn to_i64(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_i64()).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn try_mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    /// Block-diagonal matrix `diag(self, other)`.
    pub fn block_diag(&self, other: &IntMatrix) -> Self {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &IntMatrix) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack column mismatch".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(IntMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let data = idx.iter().flat_map(|&i| self.row(i).iter().cloned()).collect();
        IntMatrix {
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] -= k * row[src]
    fn sub_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j] * k;
            self.data[dst * self.cols + j] -= s;
        }
    }

    /// col[dst] -= k * col[src]
    fn sub_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src] * k;
            self.data[i * self.cols + dst] -= s;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.row_mut(i) {
            *x = -&*x;
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.try_mul(rhs).expect("matrix dimension mismatch")
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}x{}{}", self.rows, self.cols, self)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", x)?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

/// `x^T g y` for integer vectors.
pub fn bilinear(g: &IntMatrix, x: &[BigInt], y: &[BigInt]) -> BigInt {
    dot(x, &g.mul_vec(y))
}

/// `x^T g y` for rational vectors.
pub fn bilinear_rat(g: &IntMatrix, x: &[BigRational], y: &[BigRational]) -> BigRational {
    let mut acc = BigRational::zero();
    for i in 0..g.rows() {
        if x[i].is_zero() {
            continue;
        }
        let mut row = BigRational::zero();
        for j in 0..g.cols() {
            if !g[(i, j)].is_zero() && !y[j].is_zero() {
                row += &y[j] * BigRational::from_integer(g[(i, j)].clone());
            }
        }
        acc += &x[i] * row;
    }
    acc
}

/// Smith normal form `u * m * v = d`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    /// Nonzero diagonal entries, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

fn smallest_nonzero(m: &IntMatrix, from: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in from..m.rows() {
        for j in from..m.cols() {
            let x = &m[(i, j)];
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if m[(bi, bj)].abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Smith normal form with unimodular transforms.
///
/// The pivot is always the entry of smallest nonzero absolute value in the
/// remaining block, first in row-major order on ties, so the transforms are
/// reproducible.
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let (r, c) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    for t in 0..r.min(c) {
        loop {
            let Some((pi, pj)) = smallest_nonzero(&d, t) else {
                return Snf { u, d, v };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            let p = d[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..r {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = d[(i, t)].div_floor(&p);
                d.sub_row_multiple(i, t, &q);
                u.sub_row_multiple(i, t, &q);
                if !d[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..c {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = d[(t, j)].div_floor(&p);
                d.sub_col_multiple(j, t, &q);
                v.sub_col_multiple(j, t, &q);
                if !d[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // pivot must divide the rest of the block
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !d[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    // row[t] += row[i]
                    let minus_one = -BigInt::one();
                    d.sub_row_multiple(t, i, &minus_one);
                    u.sub_row_multiple(t, i, &minus_one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    Snf { u, d, v }
}

/// Row-style Hermite normal form `t * m = h`.
///
/// `h` is upper echelon with positive pivots and entries above each pivot
/// reduced into `[0, pivot)`. The first `rank` rows of `h` are nonzero.
#[derive(Clone, Debug)]
pub struct Hnf {
    pub h: IntMatrix,
    pub t: IntMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

pub fn hermite_normal_form(m: &IntMatrix) -> Hnf {
    let (r, c) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut t = IntMatrix::identity(r);
    let mut row = 0;
    let mut pivots = Vec::new();
    for col in 0..c {
        if row == r {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in row..r {
                if h[(i, col)].is_zero() {
                    continue;
                }
                if best.is_none_or(|b| h[(i, col)].abs() < h[(b, col)].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            h.swap_rows(row, b);
            t.swap_rows(row, b);
            let p = h[(row, col)].clone();
            let mut done = true;
            for i in row + 1..r {
                if h[(i, col)].is_zero() {
                    continue;
                }
                let q = h[(i, col)].div_floor(&p);
                h.sub_row_multiple(i, row, &q);
                t.sub_row_multiple(i, row, &q);
                if !h[(i, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(row, col)].is_zero() {
            continue;
        }
        if h[(row, col)].is_negative() {
            h.negate_row(row);
            t.negate_row(row);
        }
        let p = h[(row, col)].clone();
        for i in 0..row {
            let q = h[(i, col)].div_floor(&p);
            h.sub_row_multiple(i, row, &q);
            t.sub_row_multiple(i, row, &q);
        }
        pivots.push(col);
        row += 1;
    }
    Hnf {
        h,
        t,
        rank: row,
        pivots,
    }
}

/// HNF basis of the row lattice of `m` (zero rows dropped).
pub fn row_lattice_basis(m: &IntMatrix) -> IntMatrix {
    let hnf = hermite_normal_form(m);
    let idx: Vec<usize> = (0..hnf.rank).collect();
    hnf.h.select_rows(&idx)
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                return Ok(BigInt::zero());
            };
            a.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let val = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                a[(i, j)] = val / &prev;
            }
        }
        prev = a[(k, k)].clone();
    }
    Ok(sign * &a[(n - 1, n - 1)])
}

pub fn rank(m: &IntMatrix) -> usize {
    hermite_normal_form(m).rank
}

/// Basis (as rows) of the integer kernel `{x : m x = 0}`, in HNF.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let hnf = hermite_normal_form(&m.transpose());
    let idx: Vec<usize> = (hnf.rank..m.cols()).collect();
    let raw = hnf.t.select_rows(&idx);
    if raw.rows() == 0 {
        return raw;
    }
    row_lattice_basis(&raw)
}

/// Integer solution of `m x = rhs`.
pub fn solve(m: &IntMatrix, rhs: &[BigInt]) -> Result<Vec<BigInt>> {
    if rhs.len() != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for {} rows",
            rhs.len(),
            m.rows()
        )));
    }
    let snf = smith_normal_form(m);
    let b = snf.u.mul_vec(rhs);
    let factors = snf.invariant_factors();
    let mut y = vec![BigInt::zero(); m.cols()];
    for (i, bi) in b.iter().enumerate() {
        match factors.get(i) {
            Some(di) => {
                let (q, rem) = bi.div_rem(di);
                if !rem.is_zero() {
                    return Err(Error::NoSolution);
                }
                y[i] = q;
            }
            None if !bi.is_zero() => return Err(Error::NoSolution),
            None => {}
        }
    }
    Ok(snf.v.mul_vec(&y))
}

/// Kernel basis of `m` together with a particular solution of `m x = rhs`
/// when a right-hand side is supplied.
pub fn kernel_and_solve(m: &IntMatrix, rhs: Option<&[BigInt]>) -> Result<(IntMatrix, Option<Vec<BigInt>>)> {
    let kernel = integer_kernel(m);
    let sol = rhs.map(|b| solve(m, b)).transpose()?;
    Ok((kernel, sol))
}

/// Dense rational matrix used for inverses and change-of-basis data.
pub type RatRows = Vec<Vec<BigRational>>;

pub fn to_rational(m: &IntMatrix) -> RatRows {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect()
}

/// Inverse over the rationals.
pub fn inverse_rational(m: &IntMatrix) -> Result<RatRows> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut a = to_rational(m);
    let mut inv: RatRows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !a[i][k].is_zero()).ok_or(Error::Singular)?;
        a.swap(k, p);
        inv.swap(k, p);
        let piv = a[k][k].clone();
        for j in 0..n {
            a[k][j] = &a[k][j] / &piv;
            inv[k][j] = &inv[k][j] / &piv;
        }
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].clone();
            for j in 0..n {
                let s = &f * &a[k][j];
                a[i][j] -= s;
                let s = &f * &inv[k][j];
                inv[i][j] -= s;
            }
        }
    }
    Ok(inv)
}

/// Inverse of an integer matrix with determinant ±1.
pub fn unimodular_inverse(m: &IntMatrix) -> Result<IntMatrix> {
    let inv = inverse_rational(m)?;
    let n = m.rows();
    let mut out = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if !inv[i][j].is_integer() {
                return Err(Error::NoSolution);
            }
            out[(i, j)] = inv[i][j].to_integer();
        }
    }
    Ok(out)
}

/// Rational row vector times integer matrix.
pub fn rat_vec_mul(v: &[BigRational], m: &IntMatrix) -> Vec<BigRational> {
    (0..m.cols())
        .map(|j| {
            v.iter()
                .enumerate()
                .filter(|(i, x)| !x.is_zero() && !m[(*i, j)].is_zero())
                .map(|(i, x)| x * BigRational::from_integer(m[(i, j)].clone()))
                .sum()
        })
        .collect()
}

/// Least common multiple of the denominators.
pub fn common_denominator(v: &[BigRational]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn check_snf(m: &IntMatrix) {
        let s = smith_normal_form(m);
        assert_eq!(&(&s.u * m) * &s.v, s.d, "u m v != d for {m}");
        assert_eq!(determinant(&s.u).unwrap().abs(), bi(1));
        assert_eq!(determinant(&s.v).unwrap().abs(), bi(1));
        assert!(s.d.is_diagonal());
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]), "divisibility chain broken: {:?}", f);
        }
        for x in &f {
            assert!(x.is_positive());
        }
    }

    #[test]
    fn snf_identity() {
        let s = smith_normal_form(&IntMatrix::identity(3));
        assert_eq!(s.u, IntMatrix::identity(3));
        assert_eq!(s.d, IntMatrix::identity(3));
        assert_eq!(s.v, IntMatrix::identity(3));
    }

    #[test]
    fn snf_negative_diagonal() {
        let m = IntMatrix::from_i64(&[vec![-2, 0], vec![0, -2]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.d, IntMatrix::from_i64(&[vec![2, 0], vec![0, 2]]));
        check_snf(&m);
    }

    #[test]
    fn snf_needs_divisibility_repair() {
        let m = IntMatrix::from_i64(&[vec![2, 0], vec![1, 2]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.invariant_factors(), vec![bi(1), bi(4)]);
        check_snf(&m);
        // diag(2,3) is not in normal form yet
        let m = IntMatrix::from_i64(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(smith_normal_form(&m).invariant_factors(), vec![bi(1), bi(6)]);
    }

    #[test]
    fn snf_rectangular_and_zero() {
        check_snf(&IntMatrix::from_i64(&[vec![0, 4, 6], vec![2, 2, 2]]));
        let z = IntMatrix::zeros(2, 3);
        assert_eq!(smith_normal_form(&z).rank(), 0);
        check_snf(&IntMatrix::zeros(0, 3));
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(&IntMatrix::identity(4)).unwrap(), bi(1));
        let u = IntMatrix::from_i64(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(determinant(&u).unwrap(), bi(-1));
        let mut diag = vec![bi(-2); 9];
        diag.push(bi(2));
        assert_eq!(determinant(&IntMatrix::diagonal(&diag)).unwrap(), bi(-1024));
        assert_eq!(
            determinant(&IntMatrix::zeros(2, 3)),
            Err(Error::NonSquare { rows: 2, cols: 3 })
        );
        assert_eq!(determinant(&IntMatrix::zeros(0, 0)).unwrap(), bi(1));
    }

    #[test]
    fn kernel_and_solve_examples() {
        let m = IntMatrix::from_i64(&[vec![2, 0], vec![0, 2]]);
        let (_, x) = kernel_and_solve(&m, Some(&[bi(2), bi(4)])).unwrap();
        assert_eq!(x.unwrap(), vec![bi(1), bi(2)]);

        let m = IntMatrix::from_i64(&[vec![1, 1]]);
        let k = integer_kernel(&m);
        assert_eq!(k.rows(), 1);
        assert!(k.row(0) == [bi(1), bi(-1)] || k.row(0) == [bi(-1), bi(1)]);

        let m = IntMatrix::from_i64(&[vec![2]]);
        assert_eq!(solve(&m, &[bi(1)]), Err(Error::NoSolution));
    }

    #[test]
    fn hnf_shape() {
        let m = IntMatrix::from_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let h = hermite_normal_form(&m);
        assert_eq!(&h.t * &m, h.h);
        assert_eq!(h.rank, 3);
        assert_eq!(determinant(&h.t).unwrap().abs(), bi(1));
        for (r, &p) in h.pivots.iter().enumerate() {
            assert!(h.h[(r, p)].is_positive());
            for i in 0..r {
                assert!(h.h[(i, p)] >= bi(0) && h.h[(i, p)] < h.h[(r, p)]);
            }
        }
    }

    #[test]
    fn inverses() {
        let m = IntMatrix::from_i64(&[vec![2, 1], vec![1, 1]]);
        let inv = unimodular_inverse(&m).unwrap();
        assert_eq!(&m * &inv, IntMatrix::identity(2));
        let m = IntMatrix::from_i64(&[vec![2, 0], vec![0, 1]]);
        assert!(unimodular_inverse(&m).is_err());
        assert_eq!(
            inverse_rational(&IntMatrix::from_i64(&[vec![1, 1], vec![1, 1]])),
            Err(Error::Singular)
        );
    }

    fn small_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-10i64..=10, r * c)
                .prop_map(move |v| IntMatrix::new(r, c, v.into_iter().map(BigInt::from).collect()).unwrap())
        })
    }

    fn small_square() -> impl Strategy<Value = IntMatrix> {
        (1usize..=6).prop_flat_map(|n| {
            proptest::collection::vec(-10i64..=10, n * n)
                .prop_map(move |v| IntMatrix::new(n, n, v.into_iter().map(BigInt::from).collect()).unwrap())
        })
    }

    proptest! {
        #[test]
        fn snf_is_a_valid_decomposition(m in small_matrix()) {
            check_snf(&m);
        }

        #[test]
        fn det_matches_snf_product(m in small_square()) {
            let d = determinant(&m).unwrap();
            let s = smith_normal_form(&m);
            let prod: BigInt = if s.rank() == m.rows() {
                s.invariant_factors().iter().product()
            } else {
                BigInt::zero()
            };
            prop_assert_eq!(d.abs(), prod);
        }

        #[test]
        fn kernel_is_exact(m in small_matrix()) {
            let k = integer_kernel(&m);
            for i in 0..k.rows() {
                prop_assert!(m.mul_vec(k.row(i)).iter().all(Zero::is_zero));
            }
            prop_assert_eq!(k.rows() + rank(&m), m.cols());
        }

        #[test]
        fn solve_round_trips(m in small_matrix(), seed in proptest::collection::vec(-5i64..=5, 6)) {
            let x: Vec<BigInt> = seed.iter().take(m.cols()).map(|&v| BigInt::from(v)).collect();
            prop_assume!(x.len() == m.cols());
            let b = m.mul_vec(&x);
            let y = solve(&m, &b).unwrap();
            prop_assert_eq!(m.mul_vec(&y), b);
        }
    }
}
