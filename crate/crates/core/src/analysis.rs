//! Module-theoretic analysis of a representation: the annihilator-chain
//! length filtration, the socle series (which decides uniseriality), kernel
//! and faithfulness flags, intertwiner search, and the nilpotency degree of
//! the shifted `x`-action on the wedge space.
//!
//! The length filtration iterates "annihilated by `[g, g]`" on quotients; the
//! socle series iterates "sum of all joint eigenspaces inside that joint
//! kernel". Both are computed from spans, never assumed from block shapes,
//! and the two chains are kept separate throughout: one measures length, the
//! other decides uniseriality.

use crate::error::{Error, Result};
use crate::lie::{AlgebraKind, GAlgebra, GElement};
use crate::matrix::{rational_roots, Matrix, SpanBasis};
use crate::rational::{binomial, Rational};
use crate::rep::{Representation, StandardInfo};
use crate::sampler::Sampler;

/// The chain `0 < U_1 < ... < U_l = U` of joint annihilators of `[g, g]`,
/// each stage a row-reduced basis matrix.
#[derive(Clone, Debug)]
pub struct Filtration {
    pub stages: Vec<Matrix>,
    pub layer_dims: Vec<usize>,
    pub length: usize,
}

/// Everything the analysis decides about one representation.
#[derive(Clone, Debug)]
pub struct AnalysisReport {
    pub length: usize,
    pub uniserial: bool,
    pub socle_layer_dims: Vec<usize>,
    pub kernel_basis: Vec<GElement>,
    pub kernel_dim: usize,
    pub faithful: bool,
    pub relatively_faithful: bool,
    /// `ker R` meets every wedge, i.e. the whole wedge space dies.
    pub wedge_space_in_kernel: bool,
    /// For standard single-block representations: whether `ker R cap V = 0`
    /// agrees with the block-size predicate `d_i + d_{i+1} = n + 1 for some i`.
    pub funk_consistent: Option<bool>,
}

/// Row-reduced subspace of an ambient coordinate space.
#[derive(Clone, Debug)]
struct Subspace {
    ambient: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    fn from_span<'a>(ambient: usize, vecs: impl IntoIterator<Item = &'a [Rational]>) -> Self {
        let mut span = SpanBasis::new(ambient);
        for v in vecs {
            span.insert(v);
        }
        Subspace {
            ambient,
            rows: span.sorted_rows(),
            pivots: span.sorted_pivots(),
        }
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }

    fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Rational::is_zero)
    }

    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for j in 0..self.ambient {
                if !row[j].is_zero() {
                    let nv = &v[j] - &(&f * &row[j]);
                    v[j] = nv;
                }
            }
        }
        v
    }

    /// Coordinates of `v` in the row basis; `None` when `v` is outside.
    fn coords_of(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    fn basis_matrix(&self) -> Matrix {
        Matrix::from_fn(self.rows.len(), self.ambient, |i, j| self.rows[i][j].clone())
    }

    /// Projection onto quotient coordinates (the non-pivot positions) and the
    /// section embedding them back, so a quotient operator is `C * m * L`.
    fn quotient_maps(&self) -> (Matrix, Matrix) {
        let free: Vec<usize> = (0..self.ambient).filter(|j| !self.pivots.contains(j)).collect();
        assert!(!free.is_empty(), "quotient of the full space");
        let mut c = Matrix::zeros(free.len(), self.ambient);
        for (fi, &f) in free.iter().enumerate() {
            c[(fi, f)] = Rational::one();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if !row[f].is_zero() {
                    c[(fi, p)] = -&row[f];
                }
            }
        }
        let mut l = Matrix::zeros(self.ambient, free.len());
        for (fi, &f) in free.iter().enumerate() {
            l[(f, fi)] = Rational::one();
        }
        (c, l)
    }
}

/// Joint kernel of a family of operators on `F^dim`; the full space when the
/// family is empty or all zero.
fn joint_kernel(dim: usize, mats: &[Matrix]) -> Subspace {
    let nonzero: Vec<&Matrix> = mats.iter().filter(|m| !m.is_zero()).collect();
    if nonzero.is_empty() {
        let id = Matrix::identity(dim);
        return Subspace::from_span(dim, (0..dim).map(|i| id.row(i)));
    }
    let total: usize = nonzero.iter().map(|m| m.rows()).sum();
    let mut stacked = Matrix::zeros(total, dim);
    let mut off = 0;
    for m in nonzero {
        stacked.set_block(off, 0, m);
        off += m.rows();
    }
    let ns = stacked.nullspace();
    Subspace::from_span(dim, ns.iter().map(|v| v.as_slice()))
}

fn derived_images(rep: &Representation, images: &[Matrix]) -> Vec<Matrix> {
    let der = rep.algebra.derived_ideal();
    der.first
        .iter()
        .map(|e| {
            let d = images[0].rows();
            let mut out = Matrix::zeros(d, d);
            for (i, c) in e.coords.iter().enumerate() {
                if !c.is_zero() {
                    out = &out + &images[i].scale(c);
                }
            }
            out
        })
        .collect()
}

/// The annihilator-chain filtration: `U_{i+1}/U_i` is the subspace of
/// `U/U_i` killed by every image of `[g, g]` (computed by span, not formula).
pub fn length_filtration(rep: &Representation) -> Result<Filtration> {
    let d = rep.dim;
    let der_imgs = derived_images(rep, &rep.images);
    let mut stages: Vec<Matrix> = Vec::new();
    let mut layer_dims = Vec::new();
    let mut current = Subspace::zero(d);

    while current.dim() < d {
        let next = if current.dim() == 0 {
            joint_kernel(d, &der_imgs)
        } else {
            let (c, _l) = current.quotient_maps();
            let projected: Vec<Matrix> = der_imgs.iter().map(|m| c.matmul(m)).collect();
            joint_kernel(d, &projected)
        };
        assert!(
            next.dim() > current.dim(),
            "annihilator chain stalled; nilpotency of the derived action failed"
        );
        layer_dims.push(next.dim() - current.dim());
        stages.push(next.basis_matrix());
        current = next;
    }

    Ok(Filtration {
        length: stages.len(),
        stages,
        layer_dims,
    })
}

/// Socle layer dimensions: at each step, the sum of all joint eigenspaces of
/// the commuting action on the joint kernel of the derived images; the module
/// is uniserial exactly when every layer is one-dimensional.
pub fn socle_layers(rep: &Representation) -> Result<Vec<usize>> {
    let mut images = rep.images.clone();
    let mut qdim = rep.dim;
    let mut layers = Vec::new();

    while qdim > 0 {
        let der_imgs = derived_images(rep, &images);
        let u1 = joint_kernel(qdim, &der_imgs);
        assert!(u1.dim() > 0, "empty joint annihilator in a nonzero module");

        // Refine u1 into joint eigenspaces of every basis image. The images
        // commute on u1, so each refinement stays invariant for the rest.
        let mut parts = vec![u1];
        for img in &images {
            let mut refined = Vec::new();
            for part in parts {
                if part.dim() == 1 {
                    refined.push(part);
                    continue;
                }
                let t = restrict_to(img, &part);
                if t.is_zero() {
                    refined.push(part);
                    continue;
                }
                let roots = rational_roots(&t.char_poly())?;
                for (mu, _) in roots {
                    let shifted = &t - &Matrix::identity(t.rows()).scale(&mu);
                    let eig = shifted.nullspace();
                    if eig.is_empty() {
                        continue;
                    }
                    let lifted: Vec<Vec<Rational>> = eig
                        .iter()
                        .map(|coords| lift_combination(&part, coords))
                        .collect();
                    refined.push(Subspace::from_span(qdim, lifted.iter().map(|v| v.as_slice())));
                }
            }
            parts = refined;
        }

        let all_rows: Vec<Vec<Rational>> = parts
            .iter()
            .flat_map(|p| p.rows.iter().cloned())
            .collect();
        let socle = Subspace::from_span(qdim, all_rows.iter().map(|v| v.as_slice()));
        assert!(socle.dim() > 0, "socle of a nonzero module is nonzero");
        layers.push(socle.dim());

        if socle.dim() == qdim {
            break;
        }
        let (c, l) = socle.quotient_maps();
        images = images.iter().map(|m| c.matmul(m).matmul(&l)).collect();
        qdim -= socle.dim();
    }

    Ok(layers)
}

/// Matrix of `img` restricted to an invariant subspace, in its row basis.
fn restrict_to(img: &Matrix, s: &Subspace) -> Matrix {
    let k = s.dim();
    let mut t = Matrix::zeros(k, k);
    for (j, row) in s.rows.iter().enumerate() {
        let w = img.apply(row);
        let coords = s
            .coords_of(&w)
            .expect("subspace not invariant under a commuting restriction");
        for i in 0..k {
            t[(i, j)] = coords[i].clone();
        }
    }
    t
}

fn lift_combination(s: &Subspace, coords: &[Rational]) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); s.ambient];
    for (c, row) in coords.iter().zip(&s.rows) {
        if c.is_zero() {
            continue;
        }
        for j in 0..s.ambient {
            if !row[j].is_zero() {
                v[j] += c * &row[j];
            }
        }
    }
    v
}

/// True when every socle layer is one-dimensional.
pub fn is_uniserial(rep: &Representation) -> Result<bool> {
    Ok(socle_layers(rep)?.iter().all(|&d| d == 1))
}

/// Kernel of `y -> R(y)` together with all faithfulness flags, plus the
/// length/socle data; the block-size predicate for `ker cap V` is
/// cross-checked on standard single-block representations.
pub fn kernel_and_flags(rep: &Representation) -> Result<AnalysisReport> {
    let alg = &rep.algebra;
    let d = rep.dim;
    let dimg = alg.dim();

    let full = Matrix::from_fn(d * d, dimg, |i, j| rep.images[j].entries()[i].clone());
    let kernel_basis: Vec<GElement> = full
        .nullspace()
        .into_iter()
        .map(|coords| GElement { coords })
        .collect();
    let faithful = kernel_basis.is_empty();

    let ker_sub_dim = |indices: Vec<usize>| -> usize {
        let cols = indices.len();
        let m = Matrix::from_fn(d * d, cols, |i, j| rep.images[indices[j]].entries()[i].clone());
        m.nullspace().len()
    };
    let ker_v_dim = ker_sub_dim(alg.v_indices().collect());
    let (ker_w_dim, wedge_count) = if alg.wedge_count() > 0 {
        (ker_sub_dim(alg.wedge_indices().collect()), alg.wedge_count())
    } else {
        (0, 0)
    };
    let wedge_space_in_kernel = wedge_count > 0 && ker_w_dim == wedge_count;
    let relatively_faithful = ker_v_dim == 0 && wedge_count > 0 && ker_w_dim < wedge_count;

    let funk_consistent = match (&rep.standard, alg.kind()) {
        (Some(StandardInfo { sizes, .. }), AlgebraKind::SingleBlock { n }) => {
            let pred = sizes
                .sizes()
                .windows(2)
                .any(|w| w[0] + w[1] == n + 1);
            Some(pred == (ker_v_dim == 0))
        }
        _ => None,
    };

    let filtration = length_filtration(rep)?;
    let socle = socle_layers(rep)?;
    let uniserial = socle.iter().all(|&x| x == 1);

    Ok(AnalysisReport {
        length: filtration.length,
        uniserial,
        socle_layer_dims: socle,
        kernel_dim: kernel_basis.len(),
        kernel_basis,
        faithful,
        relatively_faithful,
        wedge_space_in_kernel,
        funk_consistent,
    })
}

/// Outcome of the intertwiner search. `solution_space_dim` is the dimension
/// of `{T : T R_A(y) = R_B(y) T}`; zero certifies non-isomorphism, a found
/// invertible element certifies isomorphism, and neither is a sampled
/// negative.
#[derive(Clone, Debug)]
pub struct IsomorphismOutcome {
    pub intertwiner: Option<Matrix>,
    pub solution_space_dim: usize,
    pub certified_negative: bool,
}

/// Solve `T R_A(y) = R_B(y) T` over a generating set of the algebra, then
/// look for an invertible element of the solution space by deterministic
/// seeded sampling (32 attempts, coefficients in [-10, 10]).
pub fn isomorphism_search(
    rep_a: &Representation,
    rep_b: &Representation,
    seed: u64,
) -> Result<IsomorphismOutcome> {
    if rep_a.dim != rep_b.dim {
        return Err(Error::DimensionMismatch(
            "intertwiner search needs equal dimensions".into(),
        ));
    }
    if rep_a.algebra.dim() != rep_b.algebra.dim() {
        return Err(Error::DimensionMismatch(
            "representations of different algebras".into(),
        ));
    }
    let d = rep_a.dim;
    let gens = rep_a.algebra.generators();

    // Row for each generator y and position (i, j):
    // sum_k B[i,k] T[k,j] - T[i,k] A[k,j] = 0, T flattened row-major.
    let mut constraints = Matrix::zeros(gens.len() * d * d, d * d);
    for (g, &y) in gens.iter().enumerate() {
        let a = &rep_a.images[y];
        let b = &rep_b.images[y];
        for i in 0..d {
            for j in 0..d {
                let row = g * d * d + i * d + j;
                for k in 0..d {
                    if !b[(i, k)].is_zero() {
                        let cur = &constraints[(row, k * d + j)] + &b[(i, k)];
                        constraints[(row, k * d + j)] = cur;
                    }
                    if !a[(k, j)].is_zero() {
                        let cur = &constraints[(row, i * d + k)] - &a[(k, j)];
                        constraints[(row, i * d + k)] = cur;
                    }
                }
            }
        }
    }

    let solutions = constraints.nullspace();
    let dim_sol = solutions.len();
    if dim_sol == 0 {
        return Ok(IsomorphismOutcome {
            intertwiner: None,
            solution_space_dim: 0,
            certified_negative: true,
        });
    }

    let as_matrix = |v: &[Rational]| Matrix::from_fn(d, d, |i, j| v[i * d + j].clone());
    let finish = |t: Matrix| -> IsomorphismOutcome {
        debug_assert!(
            (0..rep_a.algebra.dim())
                .all(|y| t.matmul(&rep_a.images[y]) == rep_b.images[y].matmul(&t)),
            "generator constraints must propagate to the whole algebra"
        );
        IsomorphismOutcome {
            intertwiner: Some(t),
            solution_space_dim: dim_sol,
            certified_negative: false,
        }
    };

    // Basis vectors first (catches scalar intertwiners immediately).
    for v in &solutions {
        let t = as_matrix(v);
        if t.rank() == d {
            return Ok(finish(t));
        }
    }

    let fingerprint = format!("iso:{}|{}", rep_a.fingerprint(), rep_b.fingerprint());
    let mut sampler = Sampler::new(seed, &fingerprint);
    for _ in 0..32 {
        let mut v = vec![Rational::zero(); d * d];
        for sol in &solutions {
            let c = Rational::from_int(sampler.int_in(-10, 10));
            if c.is_zero() {
                continue;
            }
            for (dst, src) in v.iter_mut().zip(sol) {
                *dst += &c * src;
            }
        }
        let t = as_matrix(&v);
        if t.rank() == d {
            return Ok(finish(t));
        }
    }

    Ok(IsomorphismOutcome {
        intertwiner: None,
        solution_space_dim: dim_sol,
        certified_negative: false,
    })
}

/// Degree and witness of the nilpotent shifted action on the wedge space.
#[derive(Clone, Debug)]
pub struct WedgeNilpotency {
    /// Smallest `m` with `(ad x - 2 lambda)^m = 0` on the wedge space.
    pub degree: usize,
    /// `(ad x - 2 lambda)^(degree - 1) (v_0 ^ v_1)`, a nonzero witness.
    pub witness: GElement,
    /// The binomial-sum prediction for the witness, computed independently.
    pub predicted_witness: GElement,
}

/// Iterate `ad x - 2 lambda` on the wedge space of a single-block algebra
/// until it vanishes; also evaluates the shifted-chain binomial expansion of
/// the witness as an independent route.
pub fn lambda2_nilpotency_degree(alg: &GAlgebra) -> Result<WedgeNilpotency> {
    let AlgebraKind::SingleBlock { n } = alg.kind() else {
        return Err(Error::ParamViolation("wedge nilpotency needs the single-block algebra".into()));
    };
    let n = *n;
    if n < 2 {
        return Err(Error::ParamViolation("need n >= 2 for a nonzero wedge space".into()));
    }
    let dim = alg.dim();
    let lambda = alg.lambda();
    let two_lambda = Rational::from_int(2) * lambda.clone();
    let x = GElement::basis(dim, alg.x_index());

    let ad = alg.ad_x_on_wedges();
    let shifted = &ad - &Matrix::identity(ad.rows()).scale(&two_lambda);
    let mut p = Matrix::identity(ad.rows());
    let mut degree = 0;
    while !p.is_zero() {
        p = shifted.matmul(&p);
        degree += 1;
        assert!(degree <= 2 * n, "nilpotency iteration exceeded the dimension bound");
    }

    // Witness along v_0 ^ v_1 by iterated bracket.
    let (w01, _) = alg.wedge_index(0, 1).expect("wedge exists for n >= 2");
    let mut witness = GElement::basis(dim, w01);
    for _ in 0..degree - 1 {
        witness = alg
            .bracket(&x, &witness)
            .add(&witness.scale(&-two_lambda.clone()));
    }

    // Independent route: the shifted chain expansion
    // sum_{i+j=m} C(m, i) v_i ^ v_{1+j} at m = degree - 1.
    let m = degree - 1;
    let mut predicted = GElement::zero(dim);
    for i in 0..=m {
        let j = m - i;
        if i > n - 1 || 1 + j > n - 1 {
            continue;
        }
        if let Some((idx, sign)) = alg.wedge_index(i, 1 + j) {
            predicted.coords[idx] += &binomial(m as u64, i as u64) * &sign;
        }
    }

    Ok(WedgeNilpotency {
        degree,
        witness,
        predicted_witness: predicted,
    })
}

/// Bring a verified length-3 representation whose `x`-image is nilpotent with
/// square zero (each filtration layer carrying a single Jordan 2-block) to
/// the standard three-block shape. Returns the normalized parameters and the
/// change-of-basis matrix whose columns are the adapted basis.
///
/// This covers the tensor construction; anything outside that shape fails
/// with `NotStandard` rather than guessing.
pub fn standardize_nilpotent(rep: &Representation) -> Result<(crate::rep::RepParams, Matrix)> {
    use crate::rep::{build_r_with, check_standard, RepParams};

    let a = rep.image_of_x();
    if !a.matmul(a).is_zero() {
        return Err(Error::NotStandard("x-image must square to zero".into()));
    }
    if !rep.algebra.lambda().is_zero() {
        return Err(Error::NotStandard("expected the lambda = 0 algebra".into()));
    }
    let filt = length_filtration(rep)?;
    if filt.length != 3 || filt.layer_dims.iter().any(|&l| l != 2) {
        return Err(Error::NotStandard(
            "expected three filtration layers of dimension 2".into(),
        ));
    }
    let d = rep.dim;
    let u1 = Subspace::from_span(d, (0..filt.stages[0].rows()).map(|i| filt.stages[0].row(i)));
    let u2 = Subspace::from_span(d, (0..filt.stages[1].rows()).map(|i| filt.stages[1].row(i)));

    // Candidate vectors: standard basis vectors, then sums of two, then a few
    // seeded combinations.
    let candidates = |within: Option<&Subspace>| -> Vec<Vec<Rational>> {
        let mut out = Vec::new();
        match within {
            None => {
                let id = Matrix::identity(d);
                for i in 0..d {
                    out.push(id.row(i).to_vec());
                }
                for i in 0..d {
                    for j in i + 1..d {
                        let mut v = id.row(i).to_vec();
                        v[j] = Rational::one();
                        out.push(v);
                    }
                }
            }
            Some(s) => {
                for row in &s.rows {
                    out.push(row.clone());
                }
                for i in 0..s.rows.len() {
                    for j in i + 1..s.rows.len() {
                        let v: Vec<Rational> = s.rows[i]
                            .iter()
                            .zip(&s.rows[j])
                            .map(|(a, b)| a + b)
                            .collect();
                        out.push(v);
                    }
                }
            }
        }
        out
    };

    // Top layer: y6 outside U_2 with A y6 outside U_2.
    let y6 = candidates(None)
        .into_iter()
        .find(|v| !u2.contains(v) && !u2.contains(&a.apply(v)))
        .ok_or_else(|| Error::NotStandard("no chain head above the second stage".into()))?;
    let y5 = a.apply(&y6);

    // Middle layer: y4 in U_2 with A y4 outside U_1.
    let y4 = candidates(Some(&u2))
        .into_iter()
        .find(|v| !u1.contains(&a.apply(v)))
        .ok_or_else(|| Error::NotStandard("no chain head in the middle stage".into()))?;
    let y3 = a.apply(&y4);

    // Bottom layer: y2 in U_1 with A y2 nonzero.
    let y2 = candidates(Some(&u1))
        .into_iter()
        .find(|v| a.apply(v).iter().any(|x| !x.is_zero()))
        .ok_or_else(|| Error::NotStandard("x acts as zero on the bottom stage".into()))?;
    let y1 = a.apply(&y2);

    let cols = [y1, y2, y3, y4, y5, y6];
    let c = Matrix::from_fn(d, d, |i, j| cols[j][i].clone());
    let c_inv = c
        .inverse()
        .ok_or_else(|| Error::NotStandard("adapted vectors are dependent".into()))?;

    let adapted = Representation {
        algebra: rep.algebra.clone(),
        dim: d,
        images: rep.images.iter().map(|m| c_inv.matmul(m).matmul(&c)).collect(),
        params: None,
        standard: None,
        verified: rep.verified,
    };
    let info = StandardInfo {
        ell: 3,
        sizes: crate::matrix::BlockPartition::new(vec![2, 2, 2])?,
        alpha: Rational::zero(),
    };
    let mut adapted = adapted;
    adapted.standard = Some(info.clone());
    check_standard(&adapted, &info)?;

    let part = &info.sizes;
    let v0 = adapted.image_of_v(0);
    let params = RepParams::new(
        rep.algebra.dim_v(),
        Rational::zero(),
        Rational::zero(),
        (2, 2, 2),
        crate::matrix::block_view(v0, part, part, 0, 1)?,
        crate::matrix::block_view(v0, part, part, 1, 2)?,
    )?;
    let (normalized, _) = params.normalized()?;
    // Rebuild to make sure the recovered parameters really are legal.
    build_r_with(rep.algebra.clone(), normalized.clone())?;
    Ok((normalized, c))
}
