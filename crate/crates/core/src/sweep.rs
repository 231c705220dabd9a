//! Desk-scale verification harness: parameter enumeration, the faithfulness
//! sweep, normal-form roundtrips, the four-block length-bound scan, and the
//! tensor-module crosscheck.
//!
//! Sweeps never prove anything about the infinite family; reports carry an
//! explicit supporting-evidence label. A mismatch anywhere is report content
//! (a counterexample), not an error.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::analysis::{isomorphism_search, kernel_and_flags, standardize_nilpotent};
use crate::error::{Error, Result};
use crate::lie::{build_g, GAlgebra};
use crate::matrix::Matrix;
use crate::phi::{reduccion_scan, sample_reduccion_x};
use crate::rational::Rational;
use crate::rep::{
    build_r, build_r_with, build_sl2_tensor, conjugate_by_commuting_blocks, normalize, RepParams,
    Representation,
};
use crate::sampler::Sampler;

pub const EVIDENCE_NOTE: &str =
    "supporting evidence at desk scale; finite sampling, not a proof over the infinite family";

/// All triples `(a, b, c)` of positive integers with `a + b = n + 1, c <= a`
/// or `c + b = n + 1, a <= c`, sorted lexicographically without duplicates.
pub fn enumerate_triples(n: usize) -> Result<Vec<(usize, usize, usize)>> {
    if n < 2 {
        return Err(Error::ParamViolation("triple enumeration needs n >= 2".into()));
    }
    let mut out = Vec::new();
    for a in 1..=n {
        let b = n + 1 - a;
        for c in 1..=a {
            out.push((a, b, c));
        }
    }
    for c in 1..=n {
        let b = n + 1 - c;
        for a in 1..=c {
            out.push((a, b, c));
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// The faithful block-size triples for a given `n`.
pub fn faithful_triples(n: usize) -> [(usize, usize, usize); 4] {
    [
        (n, 1, n),
        (n - 1, 2, n - 1),
        (n, 1, n - 1),
        (n - 1, 1, n),
    ]
}

pub fn expected_faithful(n: usize, abc: (usize, usize, usize)) -> bool {
    faithful_triples(n).contains(&abc)
}

/// Grid configuration shared by the sweeps.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub alpha_set: Vec<Rational>,
    pub lambda_set: Vec<Rational>,
    pub seed: u64,
    pub samples_per_cell: usize,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_min < 2 || self.n_min > self.n_max {
            return Err(Error::InvalidInput("need 2 <= n_min <= n_max".into()));
        }
        if self.alpha_set.is_empty() || self.lambda_set.is_empty() || self.samples_per_cell == 0 {
            return Err(Error::InvalidInput(
                "alpha set, lambda set and sample count must be nonempty".into(),
            ));
        }
        Ok(())
    }

    /// Classification-level sweeps assert facts that hold only for
    /// `lambda != 0`; zero is rejected there.
    pub fn validate_nonzero_lambda(&self) -> Result<()> {
        self.validate()?;
        if self.lambda_set.iter().any(Rational::is_zero) {
            return Err(Error::InvalidInput(
                "lambda = 0 is outside the scope of the classification sweeps".into(),
            ));
        }
        Ok(())
    }
}

/// Everything measured for one grid cell.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CellFlags {
    pub verified: bool,
    pub uniserial: bool,
    pub length: usize,
    pub faithful: bool,
    pub relatively_faithful: bool,
    pub funk_consistent: Option<bool>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepCell {
    pub n: usize,
    pub abc: [usize; 3],
    pub alpha: Rational,
    pub lambda: Rational,
    pub sample: usize,
    pub flags: CellFlags,
    pub expected_faithful: bool,
    /// Faithfulness flag agrees with the block-size characterization.
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepReport {
    pub schema: String,
    pub title: String,
    pub evidence_note: String,
    pub seed: u64,
    pub cells: Vec<SweepCell>,
    pub pass: bool,
    pub counterexamples: Vec<SweepCell>,
}

/// Seeded `(M, N)` with the mandatory nonzero corners, entries in `[-5, 5]`.
fn sample_mn(sampler: &mut Sampler, a: usize, b: usize, c: usize) -> (Matrix, Matrix) {
    let mut m = Matrix::from_fn(a, b, |_, _| Rational::from_int(sampler.int_in(-5, 5)));
    m[(a - 1, 0)] = Rational::from_int(sampler.nonzero_int(5));
    let mut n = Matrix::from_fn(b, c, |_, _| Rational::from_int(sampler.int_in(-5, 5)));
    n[(b - 1, 0)] = Rational::from_int(sampler.nonzero_int(5));
    (m, n)
}

/// Seeded normalized `(M, N)`: canonical corners, free entries in `[-5, 5]`.
fn sample_normalized_mn(sampler: &mut Sampler, a: usize, b: usize, c: usize) -> (Matrix, Matrix) {
    let mut m = Matrix::zeros(a, b);
    for i in 0..a - 1 {
        for j in 1..b {
            m[(i, j)] = Rational::from_int(sampler.int_in(-5, 5));
        }
    }
    m[(a - 1, 0)] = Rational::one();
    let mut n = Matrix::zeros(b, c);
    for i in 0..b - 1 {
        for j in 0..c {
            n[(i, j)] = Rational::from_int(sampler.int_in(-5, 5));
        }
    }
    n[(b - 1, 0)] = Rational::one();
    (m, n)
}

fn cell_fingerprint(n: usize, abc: (usize, usize, usize), alpha: &Rational, lambda: &Rational, sample: usize) -> String {
    format!(
        "cell:n={n};abc={},{},{};alpha={alpha};lambda={lambda};s={sample}",
        abc.0, abc.1, abc.2
    )
}

/// Build and analyze every representation in the grid, comparing the
/// faithfulness flag against the block-size characterization.
pub fn faithful_sweep(cfg: &SweepConfig) -> Result<SweepReport> {
    cfg.validate()?;
    let mut cells = Vec::new();
    for n in cfg.n_min..=cfg.n_max {
        let triples = enumerate_triples(n)?;
        for lambda in &cfg.lambda_set {
            let alg = build_g(n, lambda.clone())?;
            for &abc in &triples {
                for alpha in &cfg.alpha_set {
                    for sample in 0..cfg.samples_per_cell {
                        let fp = cell_fingerprint(n, abc, alpha, lambda, sample);
                        let mut sampler = Sampler::new(cfg.seed, &fp);
                        let (m, nn) = sample_mn(&mut sampler, abc.0, abc.1, abc.2);
                        let params = RepParams::new(
                            n,
                            lambda.clone(),
                            alpha.clone(),
                            abc,
                            m,
                            nn,
                        )?;
                        cells.push(grid_cell(alg.clone(), params, sample)?);
                    }
                }
            }
        }
    }
    let counterexamples: Vec<SweepCell> = cells.iter().filter(|c| !c.pass).cloned().collect();
    Ok(SweepReport {
        schema: "v1".into(),
        title: "faithfulness characterization sweep".into(),
        evidence_note: EVIDENCE_NOTE.into(),
        seed: cfg.seed,
        pass: counterexamples.is_empty(),
        cells,
        counterexamples,
    })
}

fn grid_cell(alg: Arc<GAlgebra>, params: RepParams, sample: usize) -> Result<SweepCell> {
    let n = params.n;
    let abc = (params.a, params.b, params.c);
    let alpha = params.alpha.clone();
    let lambda = params.lambda.clone();
    let rep = build_r_with(alg, params)?;
    let report = kernel_and_flags(&rep)?;
    let expected = expected_faithful(n, abc);
    let flags = CellFlags {
        verified: rep.verified,
        uniserial: report.uniserial,
        length: report.length,
        faithful: report.faithful,
        relatively_faithful: report.relatively_faithful,
        funk_consistent: report.funk_consistent,
    };
    let pass = flags.faithful == expected;
    Ok(SweepCell {
        n,
        abc: [abc.0, abc.1, abc.2],
        alpha,
        lambda,
        sample,
        flags,
        expected_faithful: expected,
        pass,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RoundtripTrial {
    pub n: usize,
    pub abc: [usize; 3],
    pub alpha: Rational,
    pub lambda: Rational,
    pub sample: usize,
    pub recovered: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NonIsoPair {
    pub n: usize,
    pub abc: [usize; 3],
    pub alpha: Rational,
    pub lambda: Rational,
    pub non_isomorphic: bool,
    /// Zero-dimensional intertwiner space: the negative is certified rather
    /// than sampled.
    pub certified: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RoundtripReport {
    pub schema: String,
    pub title: String,
    pub evidence_note: String,
    pub seed: u64,
    pub trials: Vec<RoundtripTrial>,
    pub pairs: Vec<NonIsoPair>,
    pub pass: bool,
}

/// Normal-form uniqueness at desk scale: conjugating a normalized
/// representation by a seeded commuting block matrix and re-normalizing must
/// recover the original parameters, and distinct normalized data in one cell
/// must be non-isomorphic.
pub fn classification_roundtrip(cfg: &SweepConfig) -> Result<RoundtripReport> {
    cfg.validate_nonzero_lambda()?;
    let mut trials = Vec::new();
    let mut pairs = Vec::new();
    for n in cfg.n_min..=cfg.n_max {
        let triples = enumerate_triples(n)?;
        for lambda in &cfg.lambda_set {
            let alg = build_g(n, lambda.clone())?;
            for &abc in &triples {
                for alpha in &cfg.alpha_set {
                    let mut cell_params: Vec<RepParams> = Vec::new();
                    for sample in 0..cfg.samples_per_cell {
                        let fp = format!(
                            "roundtrip:{}",
                            cell_fingerprint(n, abc, alpha, lambda, sample)
                        );
                        let mut sampler = Sampler::new(cfg.seed, &fp);
                        let (m, nn) = sample_normalized_mn(&mut sampler, abc.0, abc.1, abc.2);
                        let params =
                            RepParams::new(n, lambda.clone(), alpha.clone(), abc, m, nn)?;
                        let rep = build_r_with(alg.clone(), params.clone())?;

                        let blocks = [
                            sample_toeplitz(&mut sampler, abc.0),
                            sample_toeplitz(&mut sampler, abc.1),
                            sample_toeplitz(&mut sampler, abc.2),
                        ];
                        let conjugated = conjugate_by_commuting_blocks(&rep, &blocks)?;
                        let (renormalized, _t) = normalize(&conjugated)?;
                        let recovered = renormalized.params.as_ref() == Some(&params);
                        trials.push(RoundtripTrial {
                            n,
                            abc: [abc.0, abc.1, abc.2],
                            alpha: alpha.clone(),
                            lambda: lambda.clone(),
                            sample,
                            recovered,
                        });
                        cell_params.push(params);
                    }
                    // Distinct normalized data within the cell: compare the
                    // first pair that differs.
                    if let Some((pa, pb)) = first_distinct_pair(&cell_params) {
                        let ra = build_r_with(alg.clone(), pa.clone())?;
                        let rb = build_r_with(alg.clone(), pb.clone())?;
                        let out = isomorphism_search(&ra, &rb, cfg.seed)?;
                        pairs.push(NonIsoPair {
                            n,
                            abc: [abc.0, abc.1, abc.2],
                            alpha: alpha.clone(),
                            lambda: lambda.clone(),
                            non_isomorphic: out.intertwiner.is_none(),
                            certified: out.certified_negative,
                        });
                    }
                }
            }
        }
    }
    let pass = trials.iter().all(|t| t.recovered) && pairs.iter().all(|p| p.non_isomorphic);
    Ok(RoundtripReport {
        schema: "v1".into(),
        title: "normal-form uniqueness roundtrip".into(),
        evidence_note: EVIDENCE_NOTE.into(),
        seed: cfg.seed,
        trials,
        pairs,
        pass,
    })
}

fn first_distinct_pair(params: &[RepParams]) -> Option<(&RepParams, &RepParams)> {
    for (i, a) in params.iter().enumerate() {
        for b in &params[i + 1..] {
            if a.m_mat != b.m_mat || a.n_mat != b.n_mat {
                return Some((a, b));
            }
        }
    }
    None
}

/// Invertible upper-triangular Toeplitz block with small seeded entries.
fn sample_toeplitz(sampler: &mut Sampler, size: usize) -> Matrix {
    let mut row = vec![Rational::zero(); size];
    row[0] = Rational::from_int(sampler.nonzero_int(4));
    for r in row.iter_mut().skip(1) {
        *r = Rational::from_int(sampler.int_in(-4, 4));
    }
    Matrix::from_fn(size, size, |i, j| {
        if j >= i {
            row[j - i].clone()
        } else {
            Rational::zero()
        }
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LengthBoundRow {
    pub sizes: [usize; 4],
    pub lambda: Rational,
    pub sample: usize,
    pub all_14_blocks_zero: bool,
    pub expected_all_zero: bool,
    pub pass: bool,
    pub closure_dim: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LengthBoundReport {
    pub schema: String,
    pub title: String,
    pub evidence_note: String,
    pub seed: u64,
    pub rows: Vec<LengthBoundRow>,
    pub pass: bool,
    pub counterexamples: Vec<LengthBoundRow>,
}

/// Four-block obstruction scan: over all size tuples with entries up to
/// `dmax`, only `(1,1,1,1)` may close up with every `(1,4)` block zero.
pub fn length_bound_scan(
    dmax: usize,
    lambda_set: &[Rational],
    seed: u64,
    samples: usize,
) -> Result<LengthBoundReport> {
    if dmax < 1 || samples < 1 {
        return Err(Error::InvalidInput("need dmax >= 1 and samples >= 1".into()));
    }
    if lambda_set.is_empty() || lambda_set.iter().any(Rational::is_zero) {
        return Err(Error::InvalidInput(
            "the scan needs a nonempty set of nonzero lambda values".into(),
        ));
    }
    let alphas = [Rational::zero(), Rational::one(), Rational::new(-1, 2)];
    let mut rows = Vec::new();
    for d1 in 1..=dmax {
        for d2 in 1..=dmax {
            for d3 in 1..=dmax {
                for d4 in 1..=dmax {
                    let sizes = (d1, d2, d3, d4);
                    for lambda in lambda_set {
                        for sample in 0..samples {
                            let fp = format!(
                                "reduccion:d={d1},{d2},{d3},{d4};lambda={lambda};s={sample}"
                            );
                            let mut sampler = Sampler::new(seed, &fp);
                            let x = sample_reduccion_x(sizes, &mut sampler);
                            let alpha = &alphas[sample % alphas.len()];
                            let out = reduccion_scan(sizes, lambda, alpha, &x)?;
                            let expected = sizes == (1, 1, 1, 1);
                            rows.push(LengthBoundRow {
                                sizes: [d1, d2, d3, d4],
                                lambda: lambda.clone(),
                                sample,
                                all_14_blocks_zero: out.all_14_blocks_zero,
                                expected_all_zero: expected,
                                pass: out.all_14_blocks_zero == expected,
                                closure_dim: out.closure_dim,
                            });
                        }
                    }
                }
            }
        }
    }
    let counterexamples: Vec<LengthBoundRow> = rows.iter().filter(|r| !r.pass).cloned().collect();
    Ok(LengthBoundReport {
        schema: "v1".into(),
        title: "four-block obstruction scan".into(),
        evidence_note: EVIDENCE_NOTE.into(),
        seed,
        pass: counterexamples.is_empty(),
        rows,
        counterexamples,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Sl2Report {
    pub schema: String,
    pub title: String,
    pub dimension: usize,
    pub faithful: bool,
    pub uniserial: bool,
    pub length: usize,
    pub recovered_abc: [usize; 3],
    pub all_blocks_square_of_size_2: bool,
    #[serde(rename = "recovered_M")]
    pub recovered_m: Matrix,
    #[serde(rename = "recovered_N")]
    pub recovered_n: Matrix,
    pub intertwiner_found: bool,
    pub pass: bool,
}

/// Build the tensor module, analyze it, recover its three-block parameters
/// through the filtration-adapted basis, and certify the match by an
/// explicit intertwiner.
pub fn crosscheck_sl2(seed: u64) -> Result<Sl2Report> {
    let tensor = build_sl2_tensor()?;
    let report = kernel_and_flags(&tensor)?;
    let (params, _basis) = standardize_nilpotent(&tensor)?;
    let candidate = build_r(params.clone())?;
    let iso = isomorphism_search(&tensor, &candidate, seed)?;
    let abc = [params.a, params.b, params.c];
    let squares = abc == [2, 2, 2];
    let pass = report.faithful
        && report.uniserial
        && report.length == 3
        && squares
        && iso.intertwiner.is_some();
    Ok(Sl2Report {
        schema: "v1".into(),
        title: "tensor-module crosscheck".into(),
        dimension: tensor.dim,
        faithful: report.faithful,
        uniserial: report.uniserial,
        length: report.length,
        recovered_abc: abc,
        all_blocks_square_of_size_2: squares,
        recovered_m: params.m_mat.clone(),
        recovered_n: params.n_mat.clone(),
        intertwiner_found: iso.intertwiner.is_some(),
        pass,
    })
}

/// Sample a (not necessarily normalized) legal parameter set for a cell.
pub fn sample_params(
    n: usize,
    abc: (usize, usize, usize),
    alpha: &Rational,
    lambda: &Rational,
    seed: u64,
    sample: usize,
) -> Result<RepParams> {
    let fp = cell_fingerprint(n, abc, alpha, lambda, sample);
    let mut sampler = Sampler::new(seed, &fp);
    let (m, nn) = sample_mn(&mut sampler, abc.0, abc.1, abc.2);
    RepParams::new(n, lambda.clone(), alpha.clone(), abc, m, nn)
}

/// Build one grid representation (used by the command-line analyze paths).
pub fn build_grid_rep(params: RepParams) -> Result<Representation> {
    build_r(params)
}
