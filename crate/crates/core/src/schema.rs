//! Versioned JSON schemas for representations, analysis reports and the
//! independence-check payload. Rationals appear as `"p/q"` strings, matrices
//! as row-major nested arrays of such strings; every document carries a
//! `"schema": "v1"` field.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::analysis::AnalysisReport;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::phi::{lidep_bruteforce, lidep_predict};
use crate::rational::Rational;
use crate::rep::{build_r, verify_representation, RepParams, Representation};

pub const SCHEMA_VERSION: &str = "v1";

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RepParamsDto {
    pub n: usize,
    pub lambda: Rational,
    pub alpha: Rational,
    pub abc: [usize; 3],
    #[serde(rename = "M")]
    pub m: Matrix,
    #[serde(rename = "N")]
    pub n_mat: Matrix,
}

impl RepParamsDto {
    pub fn to_params(&self) -> Result<RepParams> {
        RepParams::new(
            self.n,
            self.lambda.clone(),
            self.alpha.clone(),
            (self.abc[0], self.abc[1], self.abc[2]),
            self.m.clone(),
            self.n_mat.clone(),
        )
    }

    pub fn from_params(p: &RepParams) -> Self {
        RepParamsDto {
            n: p.n,
            lambda: p.lambda.clone(),
            alpha: p.alpha.clone(),
            abc: [p.a, p.b, p.c],
            m: p.m_mat.clone(),
            n_mat: p.n_mat.clone(),
        }
    }
}

/// On-disk representation file. The images section is optional on input
/// (recomputed from the parameters) and always present on output.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RepFile {
    pub schema: String,
    pub params: RepParamsDto,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub images: Option<BTreeMap<String, Matrix>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
}

pub fn check_schema(schema: &str) -> Result<()> {
    if schema != SCHEMA_VERSION {
        return Err(Error::InvalidInput(format!(
            "unsupported schema {schema:?}, expected {SCHEMA_VERSION:?}"
        )));
    }
    Ok(())
}

/// Serialize a built representation, images included.
pub fn rep_to_file(rep: &Representation) -> Result<RepFile> {
    let params = rep
        .params
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("representation carries no parameter data".into()))?;
    let mut images = BTreeMap::new();
    for (idx, img) in rep.images.iter().enumerate() {
        images.insert(rep.algebra.label_string(idx), img.clone());
    }
    Ok(RepFile {
        schema: SCHEMA_VERSION.into(),
        params: RepParamsDto::from_params(params),
        images: Some(images),
        verified: Some(rep.verified),
    })
}

/// Rebuild a representation from a file. Provided images, if any, must agree
/// with the recomputed ones: images failing the bracket check are reported as
/// a failed mathematical check, images that pass it but differ from the
/// parameters are invalid input.
pub fn rep_from_file(file: &RepFile) -> Result<Representation> {
    check_schema(&file.schema)?;
    let params = file.params.to_params()?;
    let rep = build_r(params)?;
    if let Some(images) = &file.images {
        let mut provided: Vec<Matrix> = Vec::with_capacity(rep.images.len());
        for idx in 0..rep.images.len() {
            let label = rep.algebra.label_string(idx);
            let img = images
                .get(&label)
                .ok_or_else(|| Error::InvalidInput(format!("missing image for {label}")))?;
            provided.push(img.clone());
        }
        if provided != rep.images {
            // Distinguish broken images from a consistent but foreign map.
            verify_representation(&rep.algebra, &provided)?;
            return Err(Error::InvalidInput(
                "images satisfy the brackets but do not match the parameters".into(),
            ));
        }
    }
    Ok(rep)
}

/// The analysis result as published: all flags are exact certificates, so
/// negative answers (non-faithfulness and the like) are certified.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct AnalysisReportDto {
    pub schema: String,
    pub length: usize,
    pub uniserial: bool,
    pub faithful: bool,
    pub relatively_faithful: bool,
    pub kernel_dim: usize,
    pub socle_layers: Vec<usize>,
    pub negative_certified: bool,
}

impl AnalysisReportDto {
    pub fn from_report(r: &AnalysisReport) -> Self {
        AnalysisReportDto {
            schema: SCHEMA_VERSION.into(),
            length: r.length,
            uniserial: r.uniserial,
            faithful: r.faithful,
            relatively_faithful: r.relatively_faithful,
            kernel_dim: r.kernel_dim,
            socle_layers: r.socle_layer_dims.clone(),
            negative_certified: true,
        }
    }
}

/// Payload and result of the independence predicate check.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LidepPayload {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    #[serde(rename = "P")]
    pub p: Matrix,
    #[serde(rename = "Q")]
    pub q: Matrix,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct LidepResult {
    pub schema: String,
    pub predict: bool,
    pub bruteforce: bool,
    pub agree: bool,
}

pub fn run_lidep(payload: &LidepPayload) -> Result<LidepResult> {
    let predict = lidep_predict(payload.a, payload.b, payload.c, &payload.p, &payload.q)?;
    let bruteforce = lidep_bruteforce(payload.a, payload.b, payload.c, &payload.p, &payload.q)?;
    Ok(LidepResult {
        schema: SCHEMA_VERSION.into(),
        predict,
        bruteforce,
        agree: predict == bruteforce,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::kernel_and_flags;
    fn worked_file_json() -> String {
        r#"{
            "schema": "v1",
            "params": {
                "n": 2,
                "lambda": "1",
                "alpha": "0",
                "abc": [2, 1, 1],
                "M": [["0"], ["1"]],
                "N": [["1"]]
            }
        }"#
        .to_string()
    }

    #[test]
    fn rep_file_roundtrip() {
        let file: RepFile = serde_json::from_str(&worked_file_json()).unwrap();
        let rep = rep_from_file(&file).unwrap();
        assert_eq!(rep.dim, 4);
        let out = rep_to_file(&rep).unwrap();
        assert!(out.images.as_ref().unwrap().contains_key("v0^v1"));
        let text = serde_json::to_string_pretty(&out).unwrap();
        let parsed: RepFile = serde_json::from_str(&text).unwrap();
        let rep2 = rep_from_file(&parsed).unwrap();
        assert_eq!(rep.images, rep2.images);
    }

    #[test]
    fn analysis_of_parsed_rep_matches_direct_build() {
        let file: RepFile = serde_json::from_str(&worked_file_json()).unwrap();
        let via_file = rep_from_file(&file).unwrap();
        let direct = rep_from_file(&rep_to_file(&via_file).unwrap()).unwrap();
        let a = AnalysisReportDto::from_report(&kernel_and_flags(&via_file).unwrap());
        let b = AnalysisReportDto::from_report(&kernel_and_flags(&direct).unwrap());
        assert_eq!(a, b);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn corrupted_images_fail_the_bracket_check() {
        let file: RepFile = serde_json::from_str(&worked_file_json()).unwrap();
        let rep = rep_from_file(&file).unwrap();
        let mut out = rep_to_file(&rep).unwrap();
        out.images
            .as_mut()
            .unwrap()
            .insert("v1".into(), mat![[0, 0, 2, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]);
        let err = rep_from_file(&out).unwrap_err();
        assert!(matches!(err, Error::RepresentationCheckFailed { .. }));
    }

    #[test]
    fn schema_version_enforced() {
        let mut file: RepFile = serde_json::from_str(&worked_file_json()).unwrap();
        file.schema = "v0".into();
        assert!(matches!(rep_from_file(&file), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn algebra_spec_wire_format() {
        use crate::lie::{build_g_variants, AlgebraSpec};
        let spec: AlgebraSpec =
            serde_json::from_str(r#"{"kind": "single", "n": 3, "lambda": "2/3"}"#).unwrap();
        assert_eq!(build_g_variants(&spec).unwrap().dim(), 1 + 3 + 3);

        let spec: AlgebraSpec = serde_json::from_str(
            r#"{"kind": "two_blocks", "n": 2, "m": 1, "lambda": "1", "mu": "-1/2"}"#,
        )
        .unwrap();
        assert_eq!(build_g_variants(&spec).unwrap().dim_v(), 3);

        let spec: AlgebraSpec = serde_json::from_str(
            r#"{"kind": "diagonal", "exponents": [1, 2, 4], "lambda": "5"}"#,
        )
        .unwrap();
        let text = serde_json::to_string(&spec).unwrap();
        assert!(text.contains(r#""kind":"diagonal""#));
        let back: AlgebraSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, spec);
    }

    #[test]
    fn lidep_payload_roundtrip() {
        let payload: LidepPayload = serde_json::from_str(
            r#"{"a": 3, "b": 1, "c": 1, "P": [["1"],["2"],["1"]], "Q": [["1"]]}"#,
        )
        .unwrap();
        let result = run_lidep(&payload).unwrap();
        assert!(!result.predict);
        assert!(!result.bruteforce);
        assert!(result.agree);
    }
}
