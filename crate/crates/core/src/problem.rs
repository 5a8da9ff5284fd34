//! Problem files: a cubic by monomial coefficients, `c2`, optional
//! generators and an optional enumeration bound.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{det3, LatticeMap, LinearForm, TrilinearForm, MONOMIAL_KEYS};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProblem {
    cubic: BTreeMap<String, i64>,
    c2: [i64; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    matrices: Option<Vec<[[i64; 3]; 3]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bound: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemFile {
    /// Coefficients in the order of [`MONOMIAL_KEYS`].
    pub cubic: [i64; 10],
    pub c2: LinearForm,
    pub matrices: Option<Vec<LatticeMap>>,
    pub bound: Option<u32>,
}

impl ProblemFile {
    pub fn trilinear(&self) -> TrilinearForm {
        TrilinearForm::from_monomials(&self.cubic)
    }

    pub fn coefficient(&self, key: &str) -> Option<i64> {
        MONOMIAL_KEYS
            .iter()
            .position(|k| *k == key)
            .map(|i| self.cubic[i])
    }

    pub fn to_json(&self) -> String {
        let raw = RawProblem {
            cubic: MONOMIAL_KEYS
                .iter()
                .zip(self.cubic)
                .filter(|(_, c)| *c != 0)
                .map(|(k, c)| (k.to_string(), c))
                .collect(),
            c2: self.c2.coeffs(),
            matrices: self
                .matrices
                .as_ref()
                .map(|ms| ms.iter().map(|m| *m.entries()).collect()),
            bound: self.bound,
        };
        serde_json::to_string_pretty(&raw).expect("plain data")
    }
}

pub(crate) fn json_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

pub fn parse_problem(text: &str) -> Result<ProblemFile> {
    let raw: RawProblem = serde_json::from_str(text).map_err(json_error)?;
    let mut cubic = [0i64; 10];
    for (key, value) in &raw.cubic {
        let i = MONOMIAL_KEYS
            .iter()
            .position(|k| k == key)
            .ok_or_else(|| Error::Validation(format!("unknown monomial key {key:?}")))?;
        cubic[i] = *value;
    }
    if raw.c2 == [0, 0, 0] {
        return Err(Error::Validation(
            "c2 must be nonzero: the linear form c2 is assumed not to vanish".into(),
        ));
    }
    let matrices = match raw.matrices {
        None => None,
        Some(ms) => Some(
            ms.into_iter()
                .enumerate()
                .map(|(i, m)| {
                    let d = det3(&m);
                    if d.abs() != 1 {
                        return Err(Error::Validation(format!(
                            "matrix {i} has determinant {d}, expected 1 or -1"
                        )));
                    }
                    LatticeMap::new(m)
                })
                .collect::<Result<Vec<_>>>()?,
        ),
    };
    Ok(ProblemFile {
        cubic,
        c2: LinearForm(raw.c2),
        matrices,
        bound: raw.bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOLDEN: &str = r#"{"cubic": {"x2z": 1, "xyz": -1, "y2z": -1}, "c2": [0, 0, 1]}"#;

    #[test]
    fn golden_file() {
        let p = parse_problem(GOLDEN).unwrap();
        assert_eq!(p.coefficient("x2z"), Some(1));
        assert_eq!(p.coefficient("xyz"), Some(-1));
        assert_eq!(p.coefficient("y2z"), Some(-1));
        assert_eq!(p.cubic.iter().filter(|c| **c != 0).count(), 3);
        assert_eq!(p.c2, LinearForm([0, 0, 1]));
        assert_eq!(p.matrices, None);
        assert_eq!(parse_problem(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn rejections() {
        let zero = r#"{"cubic": {"z3": 1}, "c2": [0, 0, 0]}"#;
        assert!(matches!(parse_problem(zero), Err(Error::Validation(_))));
        let det2 = r#"{"cubic": {"z3": 1}, "c2": [0, 0, 1], "matrices": [[[2,0,0],[0,1,0],[0,0,1]]]}"#;
        assert!(matches!(parse_problem(det2), Err(Error::Validation(_))));
        let unknown = r#"{"cubic": {"z3": 1}, "c2": [0, 0, 1], "extra": 1}"#;
        assert!(matches!(parse_problem(unknown), Err(Error::Parse { .. })));
        let bad_key = r#"{"cubic": {"w3": 1}, "c2": [0, 0, 1]}"#;
        assert!(matches!(parse_problem(bad_key), Err(Error::Validation(_))));
        let broken = "{\n  \"cubic\": {\"z3\": 1},\n  \"c2\": [0, 0 1]\n}";
        let Err(Error::Parse { line, .. }) = parse_problem(broken) else {
            panic!()
        };
        assert_eq!(line, 3);
    }
}
