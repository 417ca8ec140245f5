//! Coxeter matrix input files (JSON or TOML) and the named presets.
//!
//! File schema: `{ rank, entries, infinity_weights?, mode? }` with
//! `entries` row-major bond labels ("inf" allowed) and
//! `infinity_weights` exact scalars (integers or "p/q" strings) defined
//! exactly where the bond is infinite.

use std::path::Path;

use num::bigint::BigInt;
use num::rational::BigRational;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::matrix::{Bond, CoxeterMatrix};
use crate::scalar::ScalarMode;

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum EntryVal {
    Num(u32),
    Str(String),
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum WeightVal {
    Int(i64),
    Str(String),
}

#[derive(Debug, Deserialize)]
struct MatrixFile {
    rank: usize,
    entries: Vec<EntryVal>,
    #[serde(default)]
    infinity_weights: Option<Vec<Option<WeightVal>>>,
    #[serde(default)]
    mode: Option<ScalarMode>,
}

fn parse_big_ratio(text: &str) -> Result<BigRational> {
    let bad = || Error::Parse { detail: format!("bad exact weight {text:?}; use an integer or \"p/q\"") };
    if let Some((p, q)) = text.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q == BigInt::from(0) {
            return Err(bad());
        }
        Ok(BigRational::new(p, q))
    } else {
        let n: BigInt = text.trim().parse().map_err(|_| bad())?;
        Ok(BigRational::from_integer(n))
    }
}

fn build(file: MatrixFile) -> Result<(CoxeterMatrix, ScalarMode)> {
    let bonds: Vec<Bond> = file
        .entries
        .iter()
        .map(|e| match e {
            EntryVal::Num(m) => Ok(Bond::Finite(*m)),
            EntryVal::Str(s) if s.eq_ignore_ascii_case("inf") => Ok(Bond::Infinite),
            EntryVal::Str(s) => Err(Error::Parse { detail: format!("bad bond label {s:?}") }),
        })
        .collect::<Result<_>>()?;
    let weights = match file.infinity_weights {
        None => None,
        Some(ws) => Some(
            ws.iter()
                .map(|w| match w {
                    None => Ok(None),
                    Some(WeightVal::Int(n)) => {
                        Ok(Some(BigRational::from_integer(BigInt::from(*n))))
                    }
                    Some(WeightVal::Str(s)) => parse_big_ratio(s).map(Some),
                })
                .collect::<Result<_>>()?,
        ),
    };
    let matrix = CoxeterMatrix::new(file.rank, bonds, weights)?;
    Ok((matrix, file.mode.unwrap_or(ScalarMode::Exact)))
}

/// Loads a matrix file, choosing the parser by extension (`.toml` for
/// TOML, everything else JSON).
pub fn load_matrix_file(path: &Path) -> Result<(CoxeterMatrix, ScalarMode)> {
    let text = std::fs::read_to_string(path)?;
    let file: MatrixFile = if path.extension().and_then(|e| e.to_str()) == Some("toml") {
        toml::from_str(&text).map_err(|e| Error::Parse { detail: format!("{path:?}: {e}") })?
    } else {
        serde_json::from_str(&text)
            .map_err(|e| Error::Parse { detail: format!("{path:?}: {e}") })?
    };
    build(file)
}

/// Well-known matrices by name: `universal3`, `a1`..`a9`, `a1~`, `a2~`.
pub fn preset(name: &str) -> Option<CoxeterMatrix> {
    let lower = name.to_ascii_lowercase();
    match lower.as_str() {
        "universal3" | "u3" => Some(CoxeterMatrix::universal(3)),
        "a1~" | "atilde1" => Some(CoxeterMatrix::affine_a1()),
        "a2~" | "atilde2" => Some(CoxeterMatrix::affine_a2()),
        _ => {
            let rank: usize = lower.strip_prefix('a')?.parse().ok()?;
            if (1..=9).contains(&rank) {
                Some(CoxeterMatrix::type_a(rank))
            } else {
                None
            }
        }
    }
}
