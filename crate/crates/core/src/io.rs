//! Text and JSON formats.
//!
//! Matrices are plain text: a header line `rows cols` followed by the rows,
//! whitespace separated, with `#` starting a comment. Specs are JSON in which
//! every integer may be written as a JSON number or as a decimal string, so
//! values beyond 64 bits survive. Every integer we emit is a decimal string.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Result, ToricError};
use crate::exactla::IntMat;
use crate::glm::{GlmSpec, PyramidalFamilySpec};

pub fn parse_matrix(text: &str) -> Result<IntMat> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let parse_row = |line: usize, l: &str| -> Result<Vec<BigInt>> {
        l.split_whitespace()
            .map(|t| {
                BigInt::from_str(t)
                    .map_err(|_| ToricError::Parse { line, msg: format!("`{t}` is not an integer") })
            })
            .collect()
    };
    let Some((hline, header)) = lines.next() else {
        return Err(ToricError::Parse { line: 1, msg: "empty input; expected `rows cols`".into() });
    };
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| ToricError::Parse { line: hline, msg: "header must be `rows cols`".into() })?;
    let &[rows, cols] = dims.as_slice() else {
        return Err(ToricError::Parse { line: hline, msg: "header must be `rows cols`".into() });
    };
    let mut entries = Vec::with_capacity(rows);
    let mut last = hline;
    for (line, l) in lines {
        last = line;
        let row = parse_row(line, l)?;
        if row.len() != cols {
            return Err(ToricError::Parse {
                line,
                msg: format!("row has {} entries, header says {}", row.len(), cols),
            });
        }
        if entries.len() == rows {
            return Err(ToricError::Parse { line, msg: format!("more than {rows} rows") });
        }
        entries.push(row);
    }
    if entries.len() != rows {
        return Err(ToricError::Parse {
            line: last,
            msg: format!("found {} rows, header says {}", entries.len(), rows),
        });
    }
    IntMat::from_big_rows(entries, cols)
}

/// Comma-separated multiplicities such as `0,0,4,0`.
pub fn parse_mult(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| ToricError::InvalidSpec(format!("`{}` is not a multiplicity", t.trim())))
        })
        .collect()
}

#[derive(Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Num(i64),
    Str(String),
}

impl JsonInt {
    fn big(&self) -> Result<BigInt> {
        match self {
            JsonInt::Num(x) => Ok(BigInt::from(*x)),
            JsonInt::Str(s) => BigInt::from_str(s.trim())
                .map_err(|_| ToricError::InvalidSpec(format!("`{s}` is not an integer"))),
        }
    }
}

fn bigs(v: &[JsonInt]) -> Result<Vec<BigInt>> {
    v.iter().map(JsonInt::big).collect()
}

fn big_rows(v: &[Vec<JsonInt>]) -> Result<Vec<Vec<BigInt>>> {
    v.iter().map(|r| bigs(r)).collect()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GlmSpecJson {
    a_prime: Vec<Vec<JsonInt>>,
    c_prime: Vec<Vec<JsonInt>>,
    #[serde(default)]
    lambdas: Option<Vec<Vec<JsonInt>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilySpecJson {
    k: usize,
    c_prime_0: Vec<JsonInt>,
    a_prime: Vec<Vec<JsonInt>>,
    c_prime: Vec<Vec<JsonInt>>,
    #[serde(default)]
    lambdas: Option<Vec<Vec<JsonInt>>>,
    multiplicities: Vec<usize>,
}

fn json_error(e: serde_json::Error) -> ToricError {
    ToricError::Parse { line: e.line(), msg: e.to_string() }
}

fn glm_from_parts(
    a: &[Vec<JsonInt>],
    c: &[Vec<JsonInt>],
    l: &Option<Vec<Vec<JsonInt>>>,
) -> Result<GlmSpec> {
    let (a, c) = (big_rows(a)?, big_rows(c)?);
    match l {
        Some(l) => GlmSpec::with_lambdas(a, c, big_rows(l)?),
        None => GlmSpec::new(a, c),
    }
}

/// `{"a_prime": [[..]], "c_prime": [[..]], "lambdas": [[..]]}`; `lambdas`
/// is optional.
pub fn parse_glm_spec(text: &str) -> Result<GlmSpec> {
    let j: GlmSpecJson = serde_json::from_str(text).map_err(json_error)?;
    glm_from_parts(&j.a_prime, &j.c_prime, &j.lambdas)
}

/// A GLM spec with the extra fields `k`, `c_prime_0` and `multiplicities`.
pub fn parse_family_spec(text: &str) -> Result<PyramidalFamilySpec> {
    let j: FamilySpecJson = serde_json::from_str(text).map_err(json_error)?;
    let spec = PyramidalFamilySpec {
        k: j.k,
        c_prime_0: bigs(&j.c_prime_0)?,
        base: glm_from_parts(&j.a_prime, &j.c_prime, &j.lambdas)?,
        multiplicities: j.multiplicities,
    };
    spec.validate()?;
    Ok(spec)
}

/// Whether a JSON spec describes a pyramidal family rather than a plain GLM.
pub fn is_family_spec(text: &str) -> bool {
    serde_json::from_str::<serde_json::Value>(text)
        .ok()
        .and_then(|v| v.get("c_prime_0").map(|_| ()))
        .is_some()
}

#[derive(Serialize)]
struct GlmSpecOut<'a> {
    #[serde(serialize_with = "ser_big_rows")]
    a_prime: &'a Vec<Vec<BigInt>>,
    #[serde(serialize_with = "ser_big_rows")]
    c_prime: &'a Vec<Vec<BigInt>>,
    #[serde(serialize_with = "ser_big_rows")]
    lambdas: &'a Vec<Vec<BigInt>>,
}

pub fn glm_spec_to_json(spec: &GlmSpec) -> String {
    let out = GlmSpecOut { a_prime: &spec.a_prime, c_prime: &spec.c_prime, lambdas: &spec.lambdas };
    serde_json::to_string_pretty(&out).expect("serializable")
}

pub fn ser_big<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn ser_big_vec<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

pub fn ser_big_rows<S: Serializer>(
    v: &[Vec<BigInt>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()))
}

pub fn matrix_to_json(m: &IntMat) -> serde_json::Value {
    serde_json::json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_with_comments() {
        let m = parse_matrix("# the twisted cubic\n1 4\n4 5 6 7  # one row\n").unwrap();
        assert_eq!(m, IntMat::from_rows(&[[4, 5, 6, 7]]));
        assert_eq!(parse_matrix(&m.to_string()).unwrap(), m);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = parse_matrix("2 2\n1 2\n\n3 x\n").unwrap_err();
        assert_eq!(e, ToricError::Parse { line: 4, msg: "`x` is not an integer".into() });
        let e = parse_matrix("2 2\n1 2 3\n").unwrap_err();
        assert!(matches!(e, ToricError::Parse { line: 2, .. }));
        let e = parse_matrix("2 2\n1 2\n").unwrap_err();
        assert!(matches!(e, ToricError::Parse { line: 2, .. }));
        assert!(matches!(parse_matrix("").unwrap_err(), ToricError::Parse { line: 1, .. }));
    }

    #[test]
    fn big_entries_round_trip() {
        let m = parse_matrix("1 2\n123456789012345678901234567890 -1\n").unwrap();
        assert_eq!(m[(0, 0)].to_string(), "123456789012345678901234567890");
    }

    #[test]
    fn glm_spec_accepts_numbers_and_strings() {
        let s = parse_glm_spec(r#"{"a_prime": [[2], ["3"]], "c_prime": [[1, -1], [2, -1, "-1"]]}"#)
            .unwrap();
        assert_eq!(s.block_sizes(), vec![2, 3]);
        let again = parse_glm_spec(&glm_spec_to_json(&s)).unwrap();
        assert_eq!(again, s);
        assert!(parse_glm_spec(r#"{"a_prime": [[2]], "c_prime": [[1, -1]], "extra": 1}"#).is_err());
    }

    #[test]
    fn multiplicities() {
        assert_eq!(parse_mult("0, 1,4").unwrap(), vec![0, 1, 4]);
        assert!(parse_mult("0,-1").is_err());
    }
}
