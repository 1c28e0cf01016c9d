//! JSON documents for pencils, instances, results and reports.
//!
//! Complex numbers are `[re, im]` arrays and floats are written in their
//! shortest round-trip form, so loading a saved file gives back the same
//! bits.

use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::giep::{BEntry, Classification, GiepInstance, ReconstructionResult};
use crate::pencil::{Pencil, SymmetricTridiagonal};

#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: malformed JSON: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("{path}: {source}")]
    Schema {
        path: PathBuf,
        #[source]
        source: Error,
    },
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, FileError> {
    let text = fs::read_to_string(path).map_err(|source| FileError::Io {
        path: path.into(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| FileError::Json {
        path: path.into(),
        source,
    })
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), FileError> {
    let text = serde_json::to_string_pretty(value).map_err(|source| FileError::Json {
        path: path.into(),
        source,
    })?;
    fs::write(path, text + "\n").map_err(|source| FileError::Io {
        path: path.into(),
        source,
    })
}

fn check_n(n: Option<usize>, actual: usize) -> crate::Result<()> {
    match n {
        Some(n) if n != actual => Err(Error::OrderMismatch {
            expected: n,
            found: actual,
        }),
        _ => Ok(()),
    }
}

/// A full pencil: `J = (c, d)` and `H = (a, b)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PencilFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub c: Vec<f64>,
    pub d: Vec<f64>,
    pub a: Vec<f64>,
    pub b: Vec<Complex64>,
}

impl From<&Pencil> for PencilFile {
    fn from(p: &Pencil) -> Self {
        Self {
            n: Some(p.n()),
            c: p.c().to_vec(),
            d: p.d().to_vec(),
            a: p.a().to_vec(),
            b: p.b().to_vec(),
        }
    }
}

impl PencilFile {
    pub fn to_pencil(&self) -> crate::Result<Pencil> {
        let p = Pencil::from_parts(self.c.clone(), self.d.clone(), self.a.clone(), self.b.clone())?;
        check_n(self.n, p.n())?;
        Ok(p)
    }

    pub fn load(path: &Path) -> Result<Pencil, FileError> {
        let file: Self = read_json(path)?;
        file.to_pencil().map_err(|source| FileError::Schema {
            path: path.into(),
            source,
        })
    }
}

/// Reconstruction input: `J` in full, `a`/`b` only for the leading block.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub n: usize,
    pub k: usize,
    pub c: Vec<f64>,
    pub d: Vec<f64>,
    /// `a_0..a_k`.
    pub a: Vec<f64>,
    /// `b_0..b_{k-1}`.
    pub b: Vec<Complex64>,
    pub lambda: f64,
    pub mu: f64,
    pub tail_p: Vec<Complex64>,
    pub tail_s: Vec<Complex64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poles: Option<Vec<Complex64>>,
}

impl From<&GiepInstance> for InstanceFile {
    fn from(i: &GiepInstance) -> Self {
        Self {
            n: i.n(),
            k: i.k,
            c: i.j.c().to_vec(),
            d: i.j.d().to_vec(),
            a: i.head_a.clone(),
            b: i.head_b.clone(),
            lambda: i.lambda,
            mu: i.mu,
            tail_p: i.tail_p.clone(),
            tail_s: i.tail_s.clone(),
            poles: i.poles.clone(),
        }
    }
}

impl InstanceFile {
    pub fn to_instance(&self) -> crate::Result<GiepInstance> {
        let instance = GiepInstance {
            j: SymmetricTridiagonal::new(self.c.clone(), self.d.clone())?,
            head_a: self.a.clone(),
            head_b: self.b.clone(),
            lambda: self.lambda,
            mu: self.mu,
            tail_p: self.tail_p.clone(),
            tail_s: self.tail_s.clone(),
            k: self.k,
            poles: self.poles.clone(),
        };
        check_n(Some(self.n), instance.n())?;
        instance.validate()?;
        Ok(instance)
    }

    pub fn load(path: &Path) -> Result<GiepInstance, FileError> {
        let file: Self = read_json(path)?;
        file.to_instance().map_err(|source| FileError::Schema {
            path: path.into(),
            source,
        })
    }
}

/// Everything [`ReconstructionResult`] holds, flattened.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultFile {
    pub n: usize,
    pub k: usize,
    pub c: Vec<f64>,
    pub d: Vec<f64>,
    pub a: Vec<f64>,
    pub b: Vec<Complex64>,
    pub lambda: f64,
    pub mu: f64,
    pub head_p: Vec<Complex64>,
    pub head_s: Vec<Complex64>,
    pub eigvec_lambda: Vec<Complex64>,
    pub eigvec_mu: Vec<Complex64>,
    pub b_entries: Vec<BEntry>,
    pub residual_lambda: f64,
    pub residual_mu: f64,
    pub classification: Vec<Classification>,
}

impl From<&ReconstructionResult> for ResultFile {
    fn from(r: &ReconstructionResult) -> Self {
        let p = &r.pencil;
        Self {
            n: p.n(),
            k: r.k,
            c: p.c().to_vec(),
            d: p.d().to_vec(),
            a: p.a().to_vec(),
            b: p.b().to_vec(),
            lambda: r.lambda,
            mu: r.mu,
            head_p: r.head_p.clone(),
            head_s: r.head_s.clone(),
            eigvec_lambda: r.eigvec_lambda.clone(),
            eigvec_mu: r.eigvec_mu.clone(),
            b_entries: r.b_entries.clone(),
            residual_lambda: r.residual_lambda,
            residual_mu: r.residual_mu,
            classification: r.classification.clone(),
        }
    }
}

impl ResultFile {
    pub fn to_result(&self) -> crate::Result<ReconstructionResult> {
        let pencil = Pencil::from_parts(self.c.clone(), self.d.clone(), self.a.clone(), self.b.clone())?;
        check_n(Some(self.n), pencil.n())?;
        let order = pencil.order();
        for v in [&self.eigvec_lambda, &self.eigvec_mu] {
            if v.len() != order {
                return Err(Error::OrderMismatch {
                    expected: order,
                    found: v.len(),
                });
            }
        }
        if self.k >= pencil.n() {
            return Err(Error::IndexOutOfRange {
                index: self.k,
                max: pencil.n() - 1,
            });
        }
        Ok(ReconstructionResult {
            pencil,
            k: self.k,
            lambda: self.lambda,
            mu: self.mu,
            head_p: self.head_p.clone(),
            head_s: self.head_s.clone(),
            eigvec_lambda: self.eigvec_lambda.clone(),
            eigvec_mu: self.eigvec_mu.clone(),
            b_entries: self.b_entries.clone(),
            residual_lambda: self.residual_lambda,
            residual_mu: self.residual_mu,
            classification: self.classification.clone(),
        })
    }

    pub fn load(path: &Path) -> Result<ReconstructionResult, FileError> {
        let file: Self = read_json(path)?;
        file.to_result().map_err(|source| FileError::Schema {
            path: path.into(),
            source,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{generate_instance, GeneratorConfig};

    #[test]
    fn complex_is_a_pair() {
        let f = PencilFile {
            n: None,
            c: vec![1.0],
            d: vec![],
            a: vec![0.0],
            b: vec![],
        };
        let text = serde_json::to_string(&f).unwrap();
        assert_eq!(text, r#"{"c":[1.0],"d":[],"a":[0.0],"b":[]}"#);
        let z: Complex64 = serde_json::from_str("[0.1, -2.5]").unwrap();
        assert_eq!(z, Complex64::new(0.1, -2.5));
    }

    #[test]
    fn files_round_trip_bitwise() {
        let g = generate_instance(&GeneratorConfig::new(5, 2, 77)).unwrap();
        let pf = PencilFile::from(&g.truth);
        let back: PencilFile = serde_json::from_str(&serde_json::to_string(&pf).unwrap()).unwrap();
        assert_eq!(back.to_pencil().unwrap(), g.truth);

        let inf = InstanceFile::from(&g.instance);
        let back: InstanceFile = serde_json::from_str(&serde_json::to_string_pretty(&inf).unwrap()).unwrap();
        assert_eq!(back.to_instance().unwrap(), g.instance);

        let r = crate::giep::solve(&g.instance).unwrap();
        let rf = ResultFile::from(&r);
        let back: ResultFile = serde_json::from_str(&serde_json::to_string(&rf).unwrap()).unwrap();
        assert_eq!(back.to_result().unwrap(), r);
    }

    #[test]
    fn schema_violations_are_reported() {
        let bad: Result<PencilFile, _> = serde_json::from_str(r#"{"c":[1.0],"d":[],"a":[0.0],"b":[],"x":1}"#);
        assert!(bad.is_err());
        let f: PencilFile = serde_json::from_str(r#"{"n":3,"c":[1.0],"d":[],"a":[0.0],"b":[]}"#).unwrap();
        assert!(matches!(f.to_pencil(), Err(Error::OrderMismatch { .. })));
        let f: PencilFile = serde_json::from_str(r#"{"c":[1.0,1.0],"d":[0.0],"a":[0.0,0.0],"b":[[1,0]]}"#).unwrap();
        assert!(matches!(f.to_pencil(), Err(Error::InvalidInput { .. })));
    }
}
