//! Construction of the explicit representations: the three-block family
//! `R_{a,b,c,M,N,alpha}`, normalization, duals, the two-block and diagonal
//! variants, and the `sl(2) (x) F[t]/(t^3)` tensor construction.
//!
//! Every builder returns a `Representation` that has passed the exhaustive
//! bracket check `R([y, z]) = [R(y), R(z)]` over all basis pairs; nothing is
//! taken on faith from the construction.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lie::{build_g, build_g_variants, extend_from_v, AlgebraSpec, GAlgebra, GElement};
use crate::matrix::{
    ad_shift_power, block_view, is_i_diagonal, jordan_block, BlockPartition, Matrix, Orientation,
};
use crate::rational::Rational;

/// Parameters of the three-block representation: block sizes `(a, b, c)`
/// subject to `a + b = n + 1, c <= a` or `b + c = n + 1, a <= c`, the
/// superdiagonal blocks `M` (`a x b`) and `N` (`b x c`) with nonzero
/// bottom-left corners, and the spectral offset `alpha`.
#[derive(Clone, Debug, PartialEq)]
pub struct RepParams {
    pub n: usize,
    pub lambda: Rational,
    pub alpha: Rational,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub m_mat: Matrix,
    pub n_mat: Matrix,
}

impl RepParams {
    pub fn new(
        n: usize,
        lambda: Rational,
        alpha: Rational,
        (a, b, c): (usize, usize, usize),
        m_mat: Matrix,
        n_mat: Matrix,
    ) -> Result<Self> {
        let p = RepParams {
            n,
            lambda,
            alpha,
            a,
            b,
            c,
            m_mat,
            n_mat,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let (n, a, b, c) = (self.n, self.a, self.b, self.c);
        if n < 1 || a < 1 || b < 1 || c < 1 {
            return Err(Error::ParamViolation("sizes must be positive".into()));
        }
        let cond = (a + b == n + 1 && c <= a) || (c + b == n + 1 && a <= c);
        if !cond {
            return Err(Error::ParamViolation(format!(
                "(a,b,c)=({a},{b},{c}) fails a+b=n+1, c<=a or c+b=n+1, a<=c for n={n}"
            )));
        }
        if self.m_mat.rows() != a || self.m_mat.cols() != b {
            return Err(Error::ParamViolation(format!(
                "M must be {a}x{b}, got {}x{}",
                self.m_mat.rows(),
                self.m_mat.cols()
            )));
        }
        if self.n_mat.rows() != b || self.n_mat.cols() != c {
            return Err(Error::ParamViolation(format!(
                "N must be {b}x{c}, got {}x{}",
                self.n_mat.rows(),
                self.n_mat.cols()
            )));
        }
        if self.m_mat[(a - 1, 0)].is_zero() {
            return Err(Error::ParamViolation("corner entry M[a,1] must be nonzero".into()));
        }
        if self.n_mat[(b - 1, 0)].is_zero() {
            return Err(Error::ParamViolation("corner entry N[b,1] must be nonzero".into()));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.a + self.b + self.c
    }

    pub fn partition(&self) -> BlockPartition {
        BlockPartition::new(vec![self.a, self.b, self.c]).expect("positive sizes")
    }

    /// Normalized means: last row of `M` and of `N` equal the first canonical
    /// vector, and the first column of `M` equals the last canonical vector.
    pub fn is_normalized(&self) -> bool {
        let (a, b) = (self.a, self.b);
        let m = &self.m_mat;
        let nn = &self.n_mat;
        let last_row_e1 =
            |mat: &Matrix| -> bool {
                let r = mat.rows() - 1;
                (0..mat.cols()).all(|j| {
                    if j == 0 {
                        mat[(r, j)].is_one()
                    } else {
                        mat[(r, j)].is_zero()
                    }
                })
            };
        let first_col_last = (0..a).all(|i| {
            if i == a - 1 {
                m[(i, 0)].is_one()
            } else {
                m[(i, 0)].is_zero()
            }
        });
        let _ = b;
        last_row_e1(m) && last_row_e1(nn) && first_col_last
    }

    /// Extreme type: `n` odd, `a = c = 1`, and every even-indexed entry of the
    /// (normalized) column `N` vanishes. Normalizes first when needed.
    pub fn is_extreme(&self) -> bool {
        if self.n % 2 == 0 || self.a != 1 || self.c != 1 {
            return false;
        }
        let p = if self.is_normalized() {
            self.clone()
        } else {
            self.normalized().expect("legal params normalize").0
        };
        // 1-based even rows i of N, i.e. 0-based odd rows.
        (0..p.b).filter(|r| r % 2 == 1).all(|r| p.n_mat[(r, 0)].is_zero())
    }

    /// Canonical normalization: block-Toeplitz conjugation data `(T1, T2, T3)`
    /// and the resulting normalized `(M', N')`. `T1` has unit constant term;
    /// the corner entries `M[a,1]`, `N[b,1]` are the pivots that make the
    /// triangular solve feasible.
    pub fn normalized(&self) -> Result<(RepParams, [Matrix; 3])> {
        self.validate()?;
        let (a, b, c) = (self.a, self.b, self.c);
        let m = &self.m_mat;
        let nn = &self.n_mat;
        let corner_m = m[(a - 1, 0)].clone();

        // T1 from the first-column condition on M.
        let mut t = vec![Rational::zero(); a];
        t[0] = Rational::one();
        for r in (0..a.saturating_sub(1)).rev() {
            let mut acc = Rational::zero();
            for s in r..a - 1 {
                acc += &t[s - r] * &m[(s, 0)];
            }
            t[a - 1 - r] = -(acc / corner_m.clone());
        }
        let t1 = upper_toeplitz(&t);

        // T2 from the last-row condition on M, T3 from the last-row of N.
        let s: Vec<Rational> = (0..b).map(|j| m[(a - 1, j)].clone()).collect();
        let t2 = upper_toeplitz(&s);
        let u: Vec<Rational> = (0..c).map(|j| &s[0] * &nn[(b - 1, j)]).collect();
        let t3 = upper_toeplitz(&u);

        let t2_inv = t2.inverse().ok_or_else(|| {
            Error::NotNormalizable("degenerate Toeplitz block for M".into())
        })?;
        let t3_inv = t3.inverse().ok_or_else(|| {
            Error::NotNormalizable("degenerate Toeplitz block for N".into())
        })?;

        let m_new = t1.matmul(m).matmul(&t2_inv);
        let n_new = t2.matmul(nn).matmul(&t3_inv);
        let out = RepParams {
            n: self.n,
            lambda: self.lambda.clone(),
            alpha: self.alpha.clone(),
            a,
            b,
            c,
            m_mat: m_new,
            n_mat: n_new,
        };
        if !out.is_normalized() {
            return Err(Error::NotNormalizable(
                "triangular solve did not reach the canonical corners".into(),
            ));
        }
        Ok((out, [t1, t2, t3]))
    }
}

/// Upper-triangular Toeplitz matrix determined by its first row.
fn upper_toeplitz(first_row: &[Rational]) -> Matrix {
    let n = first_row.len();
    Matrix::from_fn(n, n, |i, j| {
        if j >= i {
            first_row[j - i].clone()
        } else {
            Rational::zero()
        }
    })
}

/// A standardness claim: `R(x)` is the block Jordan sum for `(sizes, alpha)`,
/// `V`-images are 1-diagonal and `R(v_0)` has nonzero bottom-left block
/// corners.
#[derive(Clone, Debug, PartialEq)]
pub struct StandardInfo {
    pub ell: usize,
    pub sizes: BlockPartition,
    pub alpha: Rational,
}

/// A basis-indexed matrix representation of `g`, carrying its verification
/// certificate and any known structural data. Immutable after construction.
#[derive(Clone, Debug)]
pub struct Representation {
    pub algebra: Arc<GAlgebra>,
    pub dim: usize,
    pub images: Vec<Matrix>,
    pub params: Option<RepParams>,
    pub standard: Option<StandardInfo>,
    pub verified: bool,
}

impl Representation {
    pub fn image(&self, idx: usize) -> &Matrix {
        &self.images[idx]
    }

    pub fn image_of_x(&self) -> &Matrix {
        &self.images[self.algebra.x_index()]
    }

    pub fn image_of_v(&self, k: usize) -> &Matrix {
        &self.images[self.algebra.v_index(k)]
    }

    pub fn image_of_element(&self, e: &GElement) -> Matrix {
        assert_eq!(e.coords.len(), self.algebra.dim());
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (i, c) in e.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out = &out + &self.images[i].scale(c);
        }
        out
    }

    /// Stable textual fingerprint of the images, used to key seeded samplers.
    pub fn fingerprint(&self) -> String {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for img in &self.images {
            for e in img.entries() {
                for b in e.to_string().bytes() {
                    h = (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3);
                }
                h = (h ^ 0x2c).wrapping_mul(0x0100_0000_01b3);
            }
        }
        format!("rep:{}:{:016x}", self.dim, h)
    }
}

/// First basis pair `(i, j)` where `R([y_i, y_j]) != [R(y_i), R(y_j)]`, if any.
pub fn representation_defect(alg: &GAlgebra, images: &[Matrix]) -> Option<(usize, usize)> {
    assert_eq!(images.len(), alg.dim(), "one image per basis element");
    let d = images[0].rows();
    for i in 0..alg.dim() {
        for j in i + 1..alg.dim() {
            let lhs = images[i].commutator(&images[j]);
            let mut rhs = Matrix::zeros(d, d);
            for (k, c) in alg.bracket_basis(i, j) {
                rhs = &rhs + &images[k].scale(&c);
            }
            if lhs != rhs {
                return Some((i, j));
            }
        }
    }
    None
}

/// Exhaustive exact check of the representation property on all basis pairs.
pub fn verify_representation(alg: &GAlgebra, images: &[Matrix]) -> Result<()> {
    match representation_defect(alg, images) {
        None => Ok(()),
        Some((i, j)) => Err(Error::RepresentationCheckFailed {
            left: alg.label_string(i),
            right: alg.label_string(j),
        }),
    }
}

/// Build `R_{a,b,c,M,N,alpha}` on a freshly constructed algebra.
pub fn build_r(params: RepParams) -> Result<Representation> {
    let alg = build_g(params.n, params.lambda.clone())?;
    build_r_with(alg, params)
}

/// Build `R_{a,b,c,M,N,alpha}` on an existing algebra (must match `n`, `lambda`).
pub fn build_r_with(alg: Arc<GAlgebra>, params: RepParams) -> Result<Representation> {
    params.validate()?;
    if alg.dim_v() != params.n || alg.lambda() != &params.lambda {
        return Err(Error::ParamViolation(
            "algebra does not match the parameters".into(),
        ));
    }
    let (a, b, c) = (params.a, params.b, params.c);
    let d = params.dim();
    let alpha = &params.alpha;
    let lambda = &params.lambda;

    let x_img = Matrix::direct_sum(&[
        jordan_block(a, alpha, Orientation::Upper),
        jordan_block(b, &(alpha - lambda), Orientation::Upper),
        jordan_block(c, &(alpha - &(Rational::from_int(2) * lambda.clone())), Orientation::Upper),
    ]);

    let mut seed = Matrix::zeros(d, d);
    seed.set_block(0, a, &params.m_mat);
    seed.set_block(a, a + b, &params.n_mat);

    let mut v_images = Vec::with_capacity(params.n);
    let mut cur = seed;
    for _ in 0..params.n {
        v_images.push(cur.clone());
        cur = ad_shift_power(&x_img, lambda, 1, &cur)?;
    }

    let wedges = extend_from_v(&alg, &v_images)?;

    let mut images = Vec::with_capacity(alg.dim());
    images.push(x_img);
    images.extend(v_images);
    images.extend(wedges);

    verify_representation(&alg, &images)?;

    let standard = StandardInfo {
        ell: 3,
        sizes: params.partition(),
        alpha: params.alpha.clone(),
    };
    Ok(Representation {
        algebra: alg,
        dim: d,
        images,
        params: Some(params),
        standard: Some(standard),
        verified: true,
    })
}

/// Check a standardness claim structurally against the images.
pub fn check_standard(rep: &Representation, claim: &StandardInfo) -> Result<()> {
    let alg = &rep.algebra;
    let n = alg.dim_v();
    let lambda = alg.lambda();
    let part = &claim.sizes;
    if claim.ell != part.len() || claim.ell <= 2 {
        return Err(Error::NotStandard("need ell > 2 matching the partition".into()));
    }
    if part.total() != rep.dim {
        return Err(Error::NotStandard("partition does not cover the dimension".into()));
    }
    for i in 0..part.len() - 1 {
        if part.size(i) + part.size(i + 1) > n + 1 {
            return Err(Error::NotStandard(format!(
                "d_{} + d_{} exceeds n + 1",
                i + 1,
                i + 2
            )));
        }
    }
    // R(x) is the exact block Jordan sum.
    let blocks: Vec<Matrix> = (0..part.len())
        .map(|i| {
            let eig = &claim.alpha - &(Rational::from_int(i as i64) * lambda.clone());
            jordan_block(part.size(i), &eig, Orientation::Upper)
        })
        .collect();
    if rep.image_of_x() != &Matrix::direct_sum(&blocks) {
        return Err(Error::NotStandard("R(x) is not the claimed block Jordan sum".into()));
    }
    // V-images 1-diagonal, wedge images 2-diagonal.
    for k in alg.v_indices() {
        if !is_i_diagonal(&rep.images[k], part, 1)? {
            return Err(Error::NotStandard(format!(
                "image of {} is not 1-diagonal",
                alg.label_string(k)
            )));
        }
    }
    for k in alg.wedge_indices() {
        if !is_i_diagonal(&rep.images[k], part, 2)? {
            return Err(Error::NotStandard(format!(
                "image of {} is not 2-diagonal",
                alg.label_string(k)
            )));
        }
    }
    // Nonzero bottom-left corner in every superdiagonal block of R(v_0).
    let v0 = rep.image_of_v(0);
    for i in 0..part.len() - 1 {
        let blk = block_view(v0, part, part, i, i + 1)?;
        if blk[(blk.rows() - 1, 0)].is_zero() {
            return Err(Error::NotStandard(format!(
                "block ({}, {}) of R(v_0) has zero bottom-left corner",
                i + 1,
                i + 2
            )));
        }
    }
    Ok(())
}

/// Conjugate every image by `t`. Structural claims are dropped; the
/// verification certificate is inherited (conjugation preserves brackets).
pub fn conjugate(rep: &Representation, t: &Matrix) -> Result<Representation> {
    let t_inv = t
        .inverse()
        .ok_or_else(|| Error::InvalidInput("conjugator must be invertible".into()))?;
    let images: Vec<Matrix> = rep.images.iter().map(|m| t.matmul(m).matmul(&t_inv)).collect();
    Ok(Representation {
        algebra: rep.algebra.clone(),
        dim: rep.dim,
        images,
        params: None,
        standard: None,
        verified: rep.verified,
    })
}

/// Conjugate a three-block representation by `T1 + T2 + T3` (upper-triangular
/// Toeplitz blocks commuting with `R(x)`); the result keeps its standard
/// shape, with the superdiagonal data re-extracted.
pub fn conjugate_by_commuting_blocks(
    rep: &Representation,
    blocks: &[Matrix; 3],
) -> Result<Representation> {
    let info = rep
        .standard
        .clone()
        .ok_or_else(|| Error::NotStandard("no standard structure recorded".into()))?;
    if info.ell != 3 {
        return Err(Error::NotStandard("expected a three-block representation".into()));
    }
    for (i, b) in blocks.iter().enumerate() {
        if b.rows() != info.sizes.size(i) || !b.is_square() {
            return Err(Error::DimensionMismatch("conjugator block size mismatch".into()));
        }
        // Upper Toeplitz with nonzero constant term commutes with the Jordan
        // structure of R(x).
        let row0: Vec<Rational> = (0..b.cols()).map(|j| b[(0, j)].clone()).collect();
        if *b != upper_toeplitz(&row0) || row0[0].is_zero() {
            return Err(Error::InvalidInput(
                "conjugator blocks must be invertible upper-triangular Toeplitz".into(),
            ));
        }
    }
    let t = Matrix::direct_sum(blocks);
    let mut out = conjugate(rep, &t)?;
    out.standard = Some(info.clone());
    check_standard(&out, &info)?;
    out.params = Some(extract_params(&out, &info)?);
    Ok(out)
}

/// Read `(M, N)` off the superdiagonal of `R(v_0)` of a three-block standard
/// representation.
fn extract_params(rep: &Representation, info: &StandardInfo) -> Result<RepParams> {
    let part = &info.sizes;
    let v0 = rep.image_of_v(0);
    RepParams::new(
        rep.algebra.dim_v(),
        rep.algebra.lambda().clone(),
        info.alpha.clone(),
        (part.size(0), part.size(1), part.size(2)),
        block_view(v0, part, part, 0, 1)?,
        block_view(v0, part, part, 1, 2)?,
    )
}

/// Canonical normalization of a three-block representation: returns the
/// normalized representation and the block-diagonal conjugator `T` (with
/// `T[0,0] = 1`) realizing it.
pub fn normalize(rep: &Representation) -> Result<(Representation, Matrix)> {
    let info = rep
        .standard
        .clone()
        .ok_or_else(|| Error::NotStandard("no standard structure recorded".into()))?;
    if info.ell != 3 {
        return Err(Error::NotStandard("normalization expects three blocks".into()));
    }
    check_standard(rep, &info)?;
    let params = extract_params(rep, &info)?;
    let (new_params, blocks) = params.normalized()?;
    let t = Matrix::direct_sum(&blocks);
    let normalized = build_r_with(rep.algebra.clone(), new_params)?;
    // The conjugation and the rebuild agree entry for entry.
    let conjed = conjugate(rep, &t)?;
    if conjed.images != normalized.images {
        return Err(Error::NotNormalizable(
            "conjugated images disagree with the rebuilt normalized form".into(),
        ));
    }
    Ok((normalized, t))
}

/// Dual of a standard representation, re-expressed in standard form: the
/// partition reverses and `alpha` becomes `(ell - 1) lambda - alpha`.
/// Realized as `y -> Q (-R(y)^T) Q^{-1}` for the signed anti-diagonal `Q`.
pub fn dualize(rep: &Representation) -> Result<Representation> {
    let info = rep
        .standard
        .clone()
        .ok_or_else(|| Error::NotStandard("no standard structure recorded".into()))?;
    check_standard(rep, &info)?;

    let d = rep.dim;
    let mut q = Matrix::zeros(d, d);
    for i in 0..d {
        let sign = if i % 2 == 0 { Rational::one() } else { -Rational::one() };
        q[(i, d - 1 - i)] = sign;
    }
    let q_inv = q.inverse().expect("signed anti-diagonal is invertible");

    let images: Vec<Matrix> = rep
        .images
        .iter()
        .map(|m| q.matmul(&-&m.transpose()).matmul(&q_inv))
        .collect();

    let ell = info.ell;
    let rev_sizes: Vec<usize> = info.sizes.sizes().iter().rev().copied().collect();
    let lambda = rep.algebra.lambda();
    let alpha_dual = &(Rational::from_int(ell as i64 - 1) * lambda.clone()) - &info.alpha;
    let new_info = StandardInfo {
        ell,
        sizes: BlockPartition::new(rev_sizes)?,
        alpha: alpha_dual,
    };

    verify_representation(&rep.algebra, &images)?;
    let mut out = Representation {
        algebra: rep.algebra.clone(),
        dim: d,
        images,
        params: None,
        standard: Some(new_info.clone()),
        verified: true,
    };
    check_standard(&out, &new_info)?;
    if ell == 3 {
        out.params = Some(extract_params(&out, &new_info)?);
    }
    Ok(out)
}

/// Specification of the variant-algebra representations.
#[derive(Clone, Debug)]
pub enum SFamilySpec {
    /// Two Jordan blocks `J_n(lambda)`, `J_m(mu)` with `a+b = n+1`,
    /// `b+c = m+1`; `v`-chain seeded by `M` in block (1,2), `w`-chain by `N`
    /// in block (2,3).
    TwoBlocks {
        n: usize,
        m: usize,
        lambda: Rational,
        mu: Rational,
        alpha: Rational,
        abc: (usize, usize, usize),
        m_mat: Matrix,
        n_mat: Matrix,
    },
    /// The 3-dimensional case `n = m = 1` with unit corners.
    SAlpha {
        lambda: Rational,
        mu: Rational,
        alpha: Rational,
    },
    /// Diagonal action with exponents `1 = i_1 < ... < i_n`; needs
    /// `beta != gamma` so the wedge space survives.
    DiagonalT {
        exponents: Vec<u64>,
        lambda: Rational,
        alpha: Rational,
        beta: Rational,
        gamma: Rational,
    },
}

/// Build the variant representations of the two-block and diagonal algebras.
pub fn build_s_family(spec: &SFamilySpec) -> Result<Representation> {
    match spec {
        SFamilySpec::SAlpha { lambda, mu, alpha } => build_s_family(&SFamilySpec::TwoBlocks {
            n: 1,
            m: 1,
            lambda: lambda.clone(),
            mu: mu.clone(),
            alpha: alpha.clone(),
            abc: (1, 1, 1),
            m_mat: Matrix::identity(1),
            n_mat: Matrix::identity(1),
        }),
        SFamilySpec::TwoBlocks {
            n,
            m,
            lambda,
            mu,
            alpha,
            abc: (a, b, c),
            m_mat,
            n_mat,
        } => {
            let (n, m, a, b, c) = (*n, *m, *a, *b, *c);
            if a + b != n + 1 || b + c != m + 1 {
                return Err(Error::ParamViolation(
                    "need a + b = n + 1 and b + c = m + 1".into(),
                ));
            }
            if m_mat.rows() != a || m_mat.cols() != b || n_mat.rows() != b || n_mat.cols() != c {
                return Err(Error::ParamViolation("block shapes must be a x b and b x c".into()));
            }
            if m_mat[(a - 1, 0)].is_zero() || n_mat[(b - 1, 0)].is_zero() {
                return Err(Error::ParamViolation("corner entries must be nonzero".into()));
            }
            let alg = build_g_variants(&AlgebraSpec::TwoBlocks {
                n,
                m,
                lambda: lambda.clone(),
                mu: mu.clone(),
            })?;
            let d = a + b + c;
            let x_img = Matrix::direct_sum(&[
                jordan_block(a, alpha, Orientation::Upper),
                jordan_block(b, &(alpha - lambda), Orientation::Upper),
                jordan_block(c, &(&(alpha - lambda) - mu), Orientation::Upper),
            ]);

            let mut v_seed = Matrix::zeros(d, d);
            v_seed.set_block(0, a, m_mat);
            let mut w_seed = Matrix::zeros(d, d);
            w_seed.set_block(a, a + b, n_mat);

            let mut v_images = Vec::with_capacity(n + m);
            let mut cur = v_seed;
            for _ in 0..n {
                v_images.push(cur.clone());
                cur = ad_shift_power(&x_img, lambda, 1, &cur)?;
            }
            let mut cur = w_seed;
            for _ in 0..m {
                v_images.push(cur.clone());
                cur = ad_shift_power(&x_img, mu, 1, &cur)?;
            }

            let wedges = extend_from_v(&alg, &v_images)?;
            let mut images = Vec::with_capacity(alg.dim());
            images.push(x_img);
            images.extend(v_images);
            images.extend(wedges);
            verify_representation(&alg, &images)?;
            Ok(Representation {
                algebra: alg,
                dim: d,
                images,
                params: None,
                standard: None,
                verified: true,
            })
        }
        SFamilySpec::DiagonalT {
            exponents,
            lambda,
            alpha,
            beta,
            gamma,
        } => {
            if beta == gamma {
                return Err(Error::ExtremeDegeneracy);
            }
            if exponents.len() < 2 {
                return Err(Error::ParamViolation("need at least two exponents".into()));
            }
            let alg = build_g_variants(&AlgebraSpec::Diagonal {
                exponents: exponents.clone(),
                lambda: lambda.clone(),
            })?;
            let nv = exponents.len();
            let p = exponents[nv - 1] as usize + 2;
            let x_img = Matrix::from_fn(p, p, |i, j| {
                if i == j {
                    alpha - &(Rational::from_int(i as i64) * lambda.clone())
                } else {
                    Rational::zero()
                }
            });
            let shift = jordan_block(p, &Rational::zero(), Orientation::Upper);
            let mut v_images = Vec::with_capacity(nv);
            for (k, &e) in exponents.iter().enumerate() {
                if k + 1 < nv {
                    let mut pw = Matrix::identity(p);
                    for _ in 0..e {
                        pw = pw.matmul(&shift);
                    }
                    v_images.push(pw);
                } else {
                    let img = &Matrix::unit(p, p, 0, p - 2).scale(beta)
                        + &Matrix::unit(p, p, 1, p - 1).scale(gamma);
                    v_images.push(img);
                }
            }
            let wedges = extend_from_v(&alg, &v_images)?;
            let mut images = Vec::with_capacity(alg.dim());
            images.push(x_img);
            images.extend(v_images);
            images.extend(wedges);
            verify_representation(&alg, &images)?;
            Ok(Representation {
                algebra: alg,
                dim: p,
                images,
                params: None,
                standard: None,
                verified: true,
            })
        }
    }
}

/// The 6-dimensional module obtained by restricting the tensor product of the
/// 2-dimensional irreducible `sl(2)`-module with the regular module of
/// `F[t]/(t^3)` to the subalgebra generated by `E (x) 1` and `F (x) t`, which
/// is the `n = 3`, `lambda = 0` algebra. Basis order: weight basis tensor
/// monomial basis `(1, t, t^2)`.
pub fn build_sl2_tensor() -> Result<Representation> {
    let e = mat![[0, 1], [0, 0]];
    let h = mat![[1, 0], [0, -1]];
    let f = mat![[0, 0], [1, 0]];
    // Multiplication by t on (1, t, t^2).
    let t_mul = mat![[0, 0, 0], [1, 0, 0], [0, 1, 0]];
    let id3 = Matrix::identity(3);

    let alg = build_g(3, Rational::zero())?;
    // x = E(x)1; the chain v_k = (ad x)^k (F(x)t) is F(x)t, H(x)t, -2E(x)t.
    let x_img = e.kron(&id3);
    let v_images = vec![
        f.kron(&t_mul),
        h.kron(&t_mul),
        e.kron(&t_mul).scale(&Rational::from_int(-2)),
    ];
    let wedges = extend_from_v(&alg, &v_images)?;
    let mut images = Vec::with_capacity(alg.dim());
    images.push(x_img);
    images.extend(v_images);
    images.extend(wedges);
    verify_representation(&alg, &images)?;
    Ok(Representation {
        algebra: alg,
        dim: 6,
        images,
        params: None,
        standard: None,
        verified: true,
    })
}
