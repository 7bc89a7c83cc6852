//! Shipped reference forms of `T_1..T_5` in cyclic canonical form.

use crate::{DetError, NCPoly, NCWord};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

pub const GOLDEN_JSON: &str = include_str!("../data/tk_polynomials.json");

#[derive(Debug, Clone, Serialize, Deserialize)]
struct GoldenTerm {
    word: String,
    num: i64,
    den: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct GoldenEntry {
    k: u32,
    terms: Vec<GoldenTerm>,
}

/// Parses a golden file body into `(k, T_k)` pairs.
pub fn parse_golden(json: &str) -> Result<Vec<(u32, NCPoly)>, DetError> {
    let entries: Vec<GoldenEntry> =
        serde_json::from_str(json).map_err(|e| DetError::Golden(e.to_string()))?;
    entries
        .into_iter()
        .map(|e| {
            let mut p = NCPoly::zero();
            for t in e.terms {
                if t.den <= 0 {
                    return Err(DetError::Golden(format!(
                        "k = {}: denominator must be positive",
                        e.k
                    )));
                }
                let word = NCWord::parse(&t.word)?;
                if word.canonical_rotation() != word {
                    return Err(DetError::Golden(format!(
                        "k = {}: {} is not in canonical form",
                        e.k, t.word
                    )));
                }
                p.add_term(
                    word,
                    BigRational::new(BigInt::from(t.num), BigInt::from(t.den)),
                );
            }
            Ok((e.k, p))
        })
        .collect()
}

/// The shipped golden forms.
pub fn golden_tk() -> Result<Vec<(u32, NCPoly)>, DetError> {
    parse_golden(GOLDEN_JSON)
}

/// Serializes polynomials in the golden-file layout.
pub fn to_golden_json(polys: &[(u32, NCPoly)]) -> String {
    let entries: Vec<GoldenEntry> = polys
        .iter()
        .map(|(k, p)| GoldenEntry {
            k: *k,
            terms: p
                .terms()
                .map(|(w, c)| GoldenTerm {
                    word: w.to_string(),
                    num: c.numer().try_into().unwrap_or(i64::MAX),
                    den: c.denom().try_into().unwrap_or(i64::MAX),
                })
                .collect(),
        })
        .collect();
    serde_json::to_string_pretty(&entries).expect("serializable") + "\n"
}
