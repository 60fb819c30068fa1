//! Problem spec files: JSON with exact rationals written as `"p/q"` strings.
//!
//! ```json
//! {
//!   "initial": ["1/1", "1/1", "1/1", "1/1", "2/1", "1/1"],
//!   "coeffs": { "kind": "constant", "period": 1, "a": ["1/1"], "b": ["0/1"] },
//!   "horizon": 10
//! }
//! ```

use serde::{Deserialize, Serialize};
use sixfold::number::Rational;
use sixfold::sampling::Instance;
use sixfold::seeds::InitialConditions;
use sixfold::sequence::CoefficientSequence;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Constant,
    Periodic,
    List,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoeffsFile {
    kind: Kind,
    #[serde(default)]
    period: Option<usize>,
    a: Vec<String>,
    b: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    initial: Vec<String>,
    coeffs: CoeffsFile,
    horizon: u64,
}

/// A parsed, validated problem instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemSpec {
    pub initial: InitialConditions,
    pub kind: Kind,
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
    pub horizon: u64,
}

fn parse_all(values: &[String], what: &str) -> Result<Vec<Rational>, String> {
    values
        .iter()
        .map(|s| s.parse::<Rational>().map_err(|e| format!("{what}: {e}")))
        .collect()
}

impl ProblemSpec {
    pub fn parse(text: &str) -> Result<Self, String> {
        let file: SpecFile = serde_json::from_str(text).map_err(|e| e.to_string())?;
        let initial = parse_all(&file.initial, "initial")?;
        let initial: [Rational; 6] = initial
            .try_into()
            .map_err(|v: Vec<_>| format!("initial: expected 6 values, got {}", v.len()))?;
        let initial = InitialConditions::new(initial).map_err(|e| e.to_string())?;
        let c = file.coeffs;
        let a = parse_all(&c.a, "coeffs.a")?;
        let b = parse_all(&c.b, "coeffs.b")?;
        if a.len() != b.len() {
            return Err(format!(
                "coeffs: a has {} entries, b has {}",
                a.len(),
                b.len()
            ));
        }
        if a.is_empty() {
            return Err("coeffs: a and b must not be empty".into());
        }
        let period = c.period.unwrap_or(a.len());
        match c.kind {
            Kind::Constant if a.len() != 1 || period != 1 => {
                return Err("coeffs: constant kind takes exactly one a and one b".into())
            }
            Kind::Periodic | Kind::List if period != a.len() => {
                return Err(format!("coeffs: period {period} but {} entries", a.len()))
            }
            _ => {}
        }
        Ok(ProblemSpec {
            initial,
            kind: c.kind,
            a,
            b,
            horizon: file.horizon,
        })
    }

    pub fn from_instance(inst: &Instance, horizon: u64) -> Result<Self, String> {
        let (kind, a, b) = match &inst.coeffs {
            CoefficientSequence::Constant { a, b } => {
                (Kind::Constant, vec![a.clone()], vec![b.clone()])
            }
            CoefficientSequence::Periodic { a, b } => (Kind::Periodic, a.clone(), b.clone()),
            CoefficientSequence::List { a, b } => (Kind::List, a.clone(), b.clone()),
            CoefficientSequence::Formula(_) => {
                return Err("formula coefficients cannot be written to a spec file".into())
            }
        };
        Ok(ProblemSpec {
            initial: inst.ic.clone(),
            kind,
            a,
            b,
            horizon,
        })
    }

    pub fn sequence(&self) -> CoefficientSequence {
        match self.kind {
            Kind::Constant => CoefficientSequence::constant(self.a[0].clone(), self.b[0].clone()),
            Kind::Periodic => CoefficientSequence::periodic(self.a.clone(), self.b.clone())
                .expect("lengths checked on parse"),
            Kind::List => CoefficientSequence::list(self.a.clone(), self.b.clone())
                .expect("lengths checked on parse"),
        }
    }

    /// Canonical JSON rendering, newline-terminated.
    pub fn to_json(&self) -> String {
        let strings = |v: &[Rational]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
        let file = SpecFile {
            initial: strings(self.initial.values()),
            coeffs: CoeffsFile {
                kind: self.kind,
                period: Some(self.a.len()),
                a: strings(&self.a),
                b: strings(&self.b),
            },
            horizon: self.horizon,
        };
        let mut s = serde_json::to_string_pretty(&file).expect("plain data serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ONES: &str = r#"{"initial":["1","1","1","1","2/1","1/1"],
        "coeffs":{"kind":"constant","a":["1"],"b":["0"]},"horizon":10}"#;

    #[test]
    fn parse_and_canonicalize() {
        let spec = ProblemSpec::parse(ONES).unwrap();
        assert_eq!(spec.horizon, 10);
        assert_eq!(spec.initial.x(-1), &Rational::from(2));
        let json = spec.to_json();
        assert!(json.contains("\"2/1\""));
        assert!(json.contains("\"period\": 1"));
        assert_eq!(ProblemSpec::parse(&json).unwrap(), spec);
        assert_eq!(ProblemSpec::parse(&json).unwrap().to_json(), json);
    }

    #[test]
    fn rejects_malformed() {
        let cases = [
            "not json",
            r#"{"initial":["1","1","1","1","1"],"coeffs":{"kind":"constant","a":["1"],"b":["0"]},"horizon":1}"#,
            r#"{"initial":["1","1","1","1","1","0"],"coeffs":{"kind":"constant","a":["1"],"b":["0"]},"horizon":1}"#,
            r#"{"initial":["1","1","1","1","1","1/0"],"coeffs":{"kind":"constant","a":["1"],"b":["0"]},"horizon":1}"#,
            r#"{"initial":["1","1","1","1","1","1"],"coeffs":{"kind":"periodic","period":3,"a":["1","2"],"b":["0","1"]},"horizon":1}"#,
            r#"{"initial":["1","1","1","1","1","1"],"coeffs":{"kind":"constant","a":["1","2"],"b":["0","1"]},"horizon":1}"#,
            r#"{"initial":["1","1","1","1","1","1"],"coeffs":{"kind":"weird","a":["1"],"b":["0"]},"horizon":1}"#,
            r#"{"initial":["1","1","1","1","1","1"],"coeffs":{"kind":"list","a":["1"],"b":[]},"horizon":1}"#,
        ];
        for c in cases {
            assert!(ProblemSpec::parse(c).is_err(), "{c}");
        }
    }
}
