//! Dense matrices over the rationals, with the block-partition utilities,
//! Jordan blocks, adjoint-shift powers and rank/nullspace certificates that
//! the representation machinery is built on.
//!
//! Storage is row-major; all arithmetic is exact. Matrices at this scale
//! (dimension a few dozen) need no sparse format, but products and row
//! operations skip zero entries, which matters because almost every matrix
//! here is a sparse block strip.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A dense `rows x cols` matrix of exact rationals, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Builds a matrix from integer row literals: `mat![[0, 1], [0, 0]]`.
#[macro_export]
macro_rules! mat {
    ($([$($x:expr),* $(,)?]),* $(,)?) => {
        $crate::matrix::Matrix::from_int_rows(&[ $( vec![ $($x as i64),* ] ),* ])
    };
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::DimensionMismatch("matrix must be non-empty".into()));
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_int(x)).collect())
                .collect(),
        )
        .expect("integer row literals must form a rectangular matrix")
    }

    /// The matrix unit with a single 1 at `(i, j)` (0-based).
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        m[(i, j)] = Rational::one();
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

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    /// Row-major copy of all entries, used to view a matrix as a flat vector.
    pub fn flatten(&self) -> Vec<Rational> {
        self.data.clone()
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn trace(&self) -> Rational {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * c)
    }

    /// Exact matrix product, skipping zero entries on both sides.
    pub fn matmul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let cur = &out[(i, j)] + &(a * b);
                    out[(i, j)] = cur;
                }
            }
        }
        out
    }

    /// `[self, rhs] = self*rhs - rhs*self`.
    pub fn commutator(&self, rhs: &Matrix) -> Matrix {
        self.matmul(rhs) - rhs.matmul(self)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let mut out = vec![Rational::zero(); self.rows];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() || v[k].is_zero() {
                    continue;
                }
                out[i] += a * &v[k];
            }
        }
        out
    }

    /// Copy of the `h x w` submatrix with top-left corner `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> Matrix {
        assert!(r0 + h <= self.rows && c0 + w <= self.cols, "block out of range");
        Matrix::from_fn(h, w, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols, "block out of range");
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
    }

    /// Kronecker product with the left factor major, i.e. entry
    /// `((i1*b.rows + i2), (j1*b.cols + j2)) = a[i1,j1] * b[i2,j2]`.
    pub fn kron(&self, b: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * b.rows, self.cols * b.cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = &self[(i1, j1)];
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..b.rows {
                    for j2 in 0..b.cols {
                        if b[(i2, j2)].is_zero() {
                            continue;
                        }
                        out[(i1 * b.rows + i2, j1 * b.cols + j2)] = a * &b[(i2, j2)];
                    }
                }
            }
        }
        out
    }

    pub fn direct_sum(blocks: &[Matrix]) -> Matrix {
        assert!(!blocks.is_empty(), "direct sum of no blocks");
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, c: &Rational) {
        for j in 0..self.cols {
            if !self[(r, j)].is_zero() {
                let v = &self[(r, j)] * c;
                self[(r, j)] = v;
            }
        }
    }

    /// `row[dst] -= f * row[src]`.
    fn row_sub_scaled(&mut self, dst: usize, src: usize, f: &Rational) {
        for j in 0..self.cols {
            if self[(src, j)].is_zero() {
                continue;
            }
            let v = &self[(dst, j)] - &(f * &self[(src, j)]);
            self[(dst, j)] = v;
        }
    }

    /// Reduced row-echelon form with the deterministic first-nonzero pivot rule.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r >= m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&row| !m[(row, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            m.scale_row(r, &inv);
            for row in 0..m.rows {
                if row != r && !m[(row, c)].is_zero() {
                    let f = m[(row, c)].clone();
                    m.row_sub_scaled(row, r, &f);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { mat: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Canonical basis of `{ v : self * v = 0 }`, one vector per free column,
    /// with the free coordinate set to 1.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let Rref { mat, pivots } = self.rref();
        let mut pivot_of_col = vec![None; self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            pivot_of_col[c] = Some(row);
        }
        let mut basis = Vec::new();
        for fc in 0..self.cols {
            if pivot_of_col[fc].is_some() {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[fc] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&mat[(row, fc)];
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        aug.set_block(0, 0, self);
        aug.set_block(0, n, &Matrix::identity(n));
        let red = aug.rref();
        if red.pivots.len() < n || red.pivots[n - 1] >= n {
            return None;
        }
        Some(red.mat.block(0, n, n, n))
    }

    /// Monic characteristic polynomial coefficients, `c[k]` the coefficient of
    /// `t^k`, computed by the Faddeev-LeVerrier recursion.
    pub fn char_poly(&self) -> Vec<Rational> {
        assert!(self.is_square(), "characteristic polynomial of a non-square matrix");
        let n = self.rows;
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        let mut m = Matrix::identity(n);
        for k in 1..=n {
            if k > 1 {
                // m = self * m_prev + c_{n-k+1} * I
                let prev_c = coeffs[n - k + 1].clone();
                for i in 0..n {
                    let v = &m[(i, i)] + &prev_c;
                    m[(i, i)] = v;
                }
            }
            let am = self.matmul(&m);
            let c = -(am.trace() / Rational::from_int(k as i64));
            coeffs[n - k] = c;
            m = am;
        }
        coeffs
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "matrix sum shape mismatch");
        Matrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &rhs[(i, j)])
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "matrix difference shape mismatch");
        Matrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &rhs[(i, j)])
    }
}

impl Add for Matrix {
    type Output = Matrix;
    fn add(self, rhs: Matrix) -> Matrix {
        &self + &rhs
    }
}

impl Sub for Matrix {
    type Output = Matrix;
    fn sub(self, rhs: Matrix) -> Matrix {
        &self - &rhs
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| -&self[(i, j)])
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.matmul(rhs)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<Rational>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<Rational>>::deserialize(deserializer)?;
        Matrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

/// Result of row reduction: the reduced matrix and its pivot columns.
pub struct Rref {
    pub mat: Matrix,
    pub pivots: Vec<usize>,
}

/// A partition `(d_1, ..., d_l)` of the rows or columns of a matrix into
/// consecutive blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockPartition {
    sizes: Vec<usize>,
}

impl BlockPartition {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() || sizes.iter().any(|&s| s == 0) {
            return Err(Error::ParamViolation(
                "block partition sizes must be positive".into(),
            ));
        }
        Ok(BlockPartition { sizes })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn total(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn size(&self, i: usize) -> usize {
        self.sizes[i]
    }

    pub fn offset(&self, i: usize) -> usize {
        self.sizes[..i].iter().sum()
    }
}

/// Copy of the `(i, j)` block of `m` under row/column partitions (0-based
/// block indices).
pub fn block_view(
    m: &Matrix,
    part_rows: &BlockPartition,
    part_cols: &BlockPartition,
    i: usize,
    j: usize,
) -> Result<Matrix> {
    if i >= part_rows.len() || j >= part_cols.len() {
        return Err(Error::BlockIndexOutOfRange(format!(
            "block ({i}, {j}) of a {}x{} block matrix",
            part_rows.len(),
            part_cols.len()
        )));
    }
    if m.rows() != part_rows.total() || m.cols() != part_cols.total() {
        return Err(Error::DimensionMismatch(format!(
            "matrix is {}x{} but partitions cover {}x{}",
            m.rows(),
            m.cols(),
            part_rows.total(),
            part_cols.total()
        )));
    }
    Ok(m.block(part_rows.offset(i), part_cols.offset(j), part_rows.size(i), part_cols.size(j)))
}

/// True if every block of `m` off the `shift`-th block superdiagonal is zero.
pub fn is_i_diagonal(m: &Matrix, part: &BlockPartition, shift: usize) -> Result<bool> {
    if m.rows() != part.total() || m.cols() != part.total() {
        return Err(Error::DimensionMismatch(format!(
            "matrix is {}x{} but the partition covers {}",
            m.rows(),
            m.cols(),
            part.total()
        )));
    }
    for bi in 0..part.len() {
        for bj in 0..part.len() {
            if bj == bi + shift {
                continue;
            }
            let (r0, c0) = (part.offset(bi), part.offset(bj));
            for i in 0..part.size(bi) {
                for j in 0..part.size(bj) {
                    if !m[(r0 + i, c0 + j)].is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// Eigenvalue on the diagonal, 1s on the first superdiagonal.
    Upper,
    /// Eigenvalue on the diagonal, 1s on the first subdiagonal.
    Lower,
}

/// The `p x p` Jordan block with the given eigenvalue and orientation.
pub fn jordan_block(p: usize, eigenvalue: &Rational, orientation: Orientation) -> Matrix {
    assert!(p >= 1, "Jordan block size must be positive");
    let mut m = Matrix::zeros(p, p);
    for i in 0..p {
        m[(i, i)] = eigenvalue.clone();
    }
    for i in 0..p.saturating_sub(1) {
        match orientation {
            Orientation::Upper => m[(i, i + 1)] = Rational::one(),
            Orientation::Lower => m[(i + 1, i)] = Rational::one(),
        }
    }
    m
}

/// `(ad A - lambda)^k` applied to `X`, i.e. `k` iterations of
/// `X -> AX - XA - lambda X`.
pub fn ad_shift_power(a: &Matrix, lambda: &Rational, k: usize, x: &Matrix) -> Result<Matrix> {
    if !a.is_square() || !x.is_square() || a.rows() != x.rows() {
        return Err(Error::DimensionMismatch(format!(
            "ad-shift power needs equal square matrices, got {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            x.rows(),
            x.cols()
        )));
    }
    let mut y = x.clone();
    for _ in 0..k {
        y = &a.commutator(&y) - &y.scale(lambda);
    }
    Ok(y)
}

/// Rank certificate for a family of equally-shaped matrices, viewed as flat
/// vectors. When dependent, `relation` is a nonzero coefficient vector of a
/// vanishing combination, scaled so its first nonzero coordinate is 1.
#[derive(Clone, Debug)]
pub struct IndependenceCertificate {
    pub independent: bool,
    pub rank: usize,
    pub relation: Option<Vec<Rational>>,
}

pub fn independence_certificate(mats: &[Matrix]) -> Result<IndependenceCertificate> {
    if mats.is_empty() {
        return Ok(IndependenceCertificate {
            independent: true,
            rank: 0,
            relation: None,
        });
    }
    let (r, c) = (mats[0].rows(), mats[0].cols());
    if mats.iter().any(|m| m.rows() != r || m.cols() != c) {
        return Err(Error::DimensionMismatch(
            "independence certificate needs equally shaped matrices".into(),
        ));
    }
    // Columns are the flattened matrices; a kernel vector is a vanishing
    // linear combination.
    let stacked = Matrix::from_fn(r * c, mats.len(), |i, j| mats[j].entries()[i].clone());
    let kernel = stacked.nullspace();
    if kernel.is_empty() {
        Ok(IndependenceCertificate {
            independent: true,
            rank: mats.len(),
            relation: None,
        })
    } else {
        let rank = mats.len() - kernel.len();
        let mut rel = kernel.into_iter().next().unwrap();
        let lead = rel
            .iter()
            .find(|x| !x.is_zero())
            .cloned()
            .expect("kernel basis vector is nonzero");
        let inv = lead.recip();
        for x in rel.iter_mut() {
            *x = &*x * &inv;
        }
        Ok(IndependenceCertificate {
            independent: false,
            rank,
            relation: Some(rel),
        })
    }
}

/// Rational roots (with multiplicity) of a monic polynomial given by its
/// coefficients, `coeffs[k]` multiplying `t^k`. Errors when the polynomial
/// does not split into rational linear factors.
pub fn rational_roots(coeffs: &[Rational]) -> Result<Vec<(Rational, usize)>> {
    assert!(!coeffs.is_empty());
    let deg = coeffs.len() - 1;
    if deg == 0 {
        return Ok(Vec::new());
    }

    // Work on a shrinking monic rational polynomial.
    let mut poly: Vec<Rational> = coeffs.to_vec();
    let mut roots: Vec<(Rational, usize)> = Vec::new();

    // Powers of t first.
    let mut zero_mult = 0;
    while poly.len() > 1 && poly[0].is_zero() {
        poly.remove(0);
        zero_mult += 1;
    }
    if zero_mult > 0 {
        roots.push((Rational::zero(), zero_mult));
    }
    if poly.len() == 1 {
        return Ok(roots);
    }

    // Integer model for the rational-root candidates.
    let mut denom_lcm = BigInt::from(1);
    for c in &poly {
        denom_lcm = num_integer::lcm(denom_lcm, c.denom().clone());
    }
    let int_coeffs: Vec<BigInt> = poly
        .iter()
        .map(|c| (c * &Rational::from_bigint(denom_lcm.clone())).numer().clone())
        .collect();
    let lead = int_coeffs.last().unwrap().abs();
    let constant = int_coeffs[0].abs();

    let mut candidates: Vec<Rational> = Vec::new();
    for p in divisors(&constant) {
        for q in divisors(&lead) {
            let r = Rational::from_parts(p.clone(), q.clone());
            if !candidates.contains(&r) {
                candidates.push(r.clone());
                candidates.push(-r);
            }
        }
    }

    for cand in candidates {
        let mut mult = 0;
        while poly.len() > 1 && eval_poly(&poly, &cand).is_zero() {
            poly = deflate(&poly, &cand);
            mult += 1;
        }
        if mult > 0 {
            roots.push((cand, mult));
        }
        if poly.len() == 1 {
            break;
        }
    }

    if poly.len() > 1 {
        return Err(Error::IrrationalSpectrum);
    }
    Ok(roots)
}

fn eval_poly(poly: &[Rational], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for c in poly.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

/// Divide a polynomial with root `r` by `(t - r)`; coefficients ascending.
fn deflate(poly: &[Rational], r: &Rational) -> Vec<Rational> {
    let n = poly.len() - 1;
    let mut out = vec![Rational::zero(); n];
    let mut carry = Rational::zero();
    for k in (0..n).rev() {
        carry = &poly[k + 1] + &(&carry * r);
        out[k] = carry.clone();
    }
    out
}

/// All positive divisors of `|n|` (1 for `n = 0` is not meaningful; callers
/// strip zero constant terms first).
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if let Some(small) = n.to_u64() {
        let mut out = Vec::new();
        let mut d = 1u64;
        while d.saturating_mul(d) <= small {
            if small % d == 0 {
                out.push(BigInt::from(d));
                if d != small / d {
                    out.push(BigInt::from(small / d));
                }
            }
            d += 1;
        }
        out
    } else {
        // Values this large never appear at desk scale, but stay exact anyway.
        let mut out = Vec::new();
        let mut d = BigInt::from(1);
        while &d * &d <= n {
            if (&n % &d).is_zero() {
                out.push(d.clone());
                let other = &n / &d;
                if other != d {
                    out.push(other);
                }
            }
            d += 1;
        }
        out
    }
}

/// A row-reduced spanning set for a subspace of `F^dim`, grown incrementally.
/// Rows are kept fully reduced with unit pivots, so the basis is canonical.
#[derive(Clone, Debug)]
pub struct SpanBasis {
    dim: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl SpanBasis {
    pub fn new(dim: usize) -> Self {
        SpanBasis {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the current rows (eliminating pivot coordinates).
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.dim);
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for j in 0..self.dim {
                if !row[j].is_zero() {
                    let nv = &v[j] - &(&f * &row[j]);
                    v[j] = nv;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Rational::is_zero)
    }

    /// Insert a vector; returns true when it enlarged the span.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        // Back-eliminate the new pivot from existing rows.
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for j in 0..self.dim {
                if !v[j].is_zero() {
                    let nv = &row[j] - &(&f * &v[j]);
                    row[j] = nv;
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    /// Basis rows in canonical order (sorted by pivot column).
    pub fn sorted_rows(&self) -> Vec<Vec<Rational>> {
        let mut idx: Vec<usize> = (0..self.rows.len()).collect();
        idx.sort_by_key(|&i| self.pivots[i]);
        idx.into_iter().map(|i| self.rows[i].clone()).collect()
    }

    pub fn sorted_pivots(&self) -> Vec<usize> {
        let mut p = self.pivots.clone();
        p.sort_unstable();
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn jordan_blocks() {
        assert_eq!(jordan_block(1, &Rational::from_int(5), Orientation::Upper), mat![[5]]);
        assert_eq!(
            jordan_block(2, &Rational::zero(), Orientation::Upper),
            mat![[0, 1], [0, 0]]
        );
        assert_eq!(
            jordan_block(3, &Rational::from_int(-1), Orientation::Lower),
            mat![[-1, 0, 0], [1, -1, 0], [0, 1, -1]]
        );
    }

    #[test]
    fn ad_shift_power_zeroth_is_identity() {
        let a = mat![[1, 2], [3, 4]];
        let x = mat![[0, 1], [1, 0]];
        assert_eq!(ad_shift_power(&a, &Rational::one(), 0, &x).unwrap(), x);
    }

    #[test]
    fn ad_shift_power_annihilates_zero() {
        let a = mat![[1, 2], [3, 4]];
        let z = Matrix::zeros(2, 2);
        assert_eq!(ad_shift_power(&a, &Rational::new(7, 3), 5, &z).unwrap(), z);
    }

    #[test]
    fn ad_shift_power_worked_4x4() {
        // A = J^2(0) + J^1(-1) + J^1(-2), lambda = 1, applied once to
        // e_{2,3} + e_{3,4} (1-based) gives e_{1,3}.
        let a = Matrix::direct_sum(&[
            jordan_block(2, &Rational::zero(), Orientation::Upper),
            jordan_block(1, &Rational::from_int(-1), Orientation::Upper),
            jordan_block(1, &Rational::from_int(-2), Orientation::Upper),
        ]);
        let x = &Matrix::unit(4, 4, 1, 2) + &Matrix::unit(4, 4, 2, 3);
        let got = ad_shift_power(&a, &Rational::one(), 1, &x).unwrap();
        assert_eq!(got, Matrix::unit(4, 4, 0, 2));
    }

    #[test]
    fn ad_shift_dimension_mismatch() {
        let a = mat![[1, 0], [0, 1]];
        let x = mat![[1]];
        assert!(ad_shift_power(&a, &Rational::zero(), 1, &x).is_err());
    }

    #[test]
    fn block_views_and_diagonality() {
        let id = Matrix::identity(2);
        let part = BlockPartition::new(vec![1, 1]).unwrap();
        assert!(is_i_diagonal(&id, &part, 0).unwrap());
        assert!(!is_i_diagonal(&id, &part, 1).unwrap());

        // Single entry (1,3) (1-based) under partition (2,1,1) sits in block (1,2).
        let e13 = Matrix::unit(4, 4, 0, 2);
        let part = BlockPartition::new(vec![2, 1, 1]).unwrap();
        assert_eq!(block_view(&e13, &part, &part, 0, 1).unwrap(), mat![[1], [0]]);
        assert!(block_view(&e13, &part, &part, 0, 2).unwrap().is_zero());
        assert!(is_i_diagonal(&e13, &part, 1).unwrap());
        assert!(!is_i_diagonal(&e13, &part, 2).unwrap());

        // Single entry (1,4) sits in block (1,3), shift 2.
        let e14 = Matrix::unit(4, 4, 0, 3);
        assert!(is_i_diagonal(&e14, &part, 2).unwrap());

        assert!(block_view(&e13, &part, &part, 3, 0).is_err());
    }

    #[test]
    fn independence_basic() {
        let e11 = Matrix::unit(2, 2, 0, 0);
        let e12 = Matrix::unit(2, 2, 0, 1);
        let cert = independence_certificate(&[e11.clone(), e12]).unwrap();
        assert!(cert.independent);
        assert_eq!(cert.rank, 2);

        let x = mat![[1, 2], [0, -1]];
        let cert = independence_certificate(&[x.clone(), x.scale(&Rational::from_int(2))]).unwrap();
        assert!(!cert.independent);
        assert_eq!(cert.rank, 1);
        // Canonical scaling: first nonzero coordinate is 1.
        assert_eq!(
            cert.relation.unwrap(),
            vec![Rational::one(), Rational::new(-1, 2)]
        );

        let empty: &[Matrix] = &[];
        let cert = independence_certificate(empty).unwrap();
        assert!(cert.independent);
        assert_eq!(cert.rank, 0);
    }

    #[test]
    fn nullspace_vectors_annihilate() {
        let m = mat![[1, 2, 3], [2, 4, 6], [0, 1, 1]];
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        for v in &ns {
            assert!(m.apply(v).iter().all(Rational::is_zero));
        }
        assert_eq!(m.rank() + ns.len(), 3);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = mat![[1, 2], [3, 5]];
        let inv = m.inverse().unwrap();
        assert_eq!(m.matmul(&inv), Matrix::identity(2));
        assert!(mat![[1, 2], [2, 4]].inverse().is_none());
    }

    #[test]
    fn char_poly_and_roots() {
        let m = mat![[1, 0, 0], [0, 2, 1], [0, 0, 2]];
        let cp = m.char_poly();
        // (t-1)(t-2)^2 = t^3 - 5t^2 + 8t - 4
        assert_eq!(
            cp,
            vec![
                Rational::from_int(-4),
                Rational::from_int(8),
                Rational::from_int(-5),
                Rational::one()
            ]
        );
        let mut roots = rational_roots(&cp).unwrap();
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        assert_eq!(roots, vec![(Rational::one(), 1), (Rational::from_int(2), 2)]);

        // Rotation by 90 degrees has no rational eigenvalues.
        let rot = mat![[0, -1], [1, 0]];
        assert!(matches!(rational_roots(&rot.char_poly()), Err(Error::IrrationalSpectrum)));
    }

    #[test]
    fn kron_and_direct_sum() {
        let a = mat![[0, 1], [0, 0]];
        let id3 = Matrix::identity(3);
        let k = a.kron(&id3);
        assert_eq!(k.rows(), 6);
        assert_eq!(k[(0, 3)], Rational::one());
        assert_eq!(k[(2, 5)], Rational::one());
        assert_eq!(k.rank(), 3);

        let s = Matrix::direct_sum(&[mat![[1]], mat![[2, 0], [0, 3]]]);
        assert_eq!(s, mat![[1, 0, 0], [0, 2, 0], [0, 0, 3]]);
    }

    #[test]
    fn span_basis_is_canonical() {
        let mut s = SpanBasis::new(3);
        assert!(s.insert(&[Rational::from_int(0), Rational::from_int(2), Rational::from_int(2)]));
        assert!(s.insert(&[Rational::from_int(1), Rational::from_int(1), Rational::from_int(0)]));
        assert!(!s.insert(&[Rational::from_int(1), Rational::from_int(3), Rational::from_int(2)]));
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[Rational::from_int(2), Rational::from_int(0), Rational::from_int(-2)]));
        let rows = s.sorted_rows();
        assert_eq!(rows[0][0], Rational::one());
        assert_eq!(rows[1][1], Rational::one());
    }

    /// Plain forward-elimination rank, written independently of `rref`.
    fn naive_rank(vectors: Vec<Vec<Rational>>) -> usize {
        let mut rows = vectors;
        let width = match rows.first() {
            Some(r) => r.len(),
            None => return 0,
        };
        let mut rank = 0;
        for col in 0..width {
            let Some(pos) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, pos);
            let pivot = rows[rank][col].clone();
            for r in rank + 1..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                let f = &rows[r][col] / &pivot;
                for c in col..width {
                    let v = &rows[r][c] - &(&f * &rows[rank][c]);
                    rows[r][c] = v;
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn independence_matches_naive_gaussian_oracle(
            count in 1usize..8,
            rows in 1usize..5,
            cols in 1usize..5,
            entries in proptest::collection::vec(-4i64..=4, 0..200),
        ) {
            let need = count * rows * cols;
            prop_assume!(entries.len() >= need);
            let mats: Vec<Matrix> = (0..count)
                .map(|m| Matrix::from_fn(rows, cols, |i, j| {
                    Rational::from_int(entries[m * rows * cols + i * cols + j])
                }))
                .collect();
            let cert = independence_certificate(&mats).unwrap();
            let oracle = naive_rank(mats.iter().map(|m| m.flatten()).collect());
            prop_assert_eq!(cert.rank, oracle);
            prop_assert_eq!(cert.independent, oracle == mats.len());
            if let Some(rel) = cert.relation {
                // The relation really is a vanishing combination.
                let mut acc = Matrix::zeros(rows, cols);
                for (c, m) in rel.iter().zip(&mats) {
                    acc = &acc + &m.scale(c);
                }
                prop_assert!(acc.is_zero());
            }
        }

        #[test]
        fn ad_shift_power_composes(
            k in 0usize..4,
            a_entries in proptest::collection::vec(-3i64..=3, 9),
            x_entries in proptest::collection::vec(-3i64..=3, 9),
            lam_num in -3i64..=3,
        ) {
            let a = Matrix::from_fn(3, 3, |i, j| Rational::from_int(a_entries[i * 3 + j]));
            let x = Matrix::from_fn(3, 3, |i, j| Rational::from_int(x_entries[i * 3 + j]));
            let lam = Rational::new(lam_num, 2);
            let lhs = ad_shift_power(&a, &lam, k + 1, &x).unwrap();
            let inner = ad_shift_power(&a, &lam, k, &x).unwrap();
            let rhs = ad_shift_power(&a, &lam, 1, &inner).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
