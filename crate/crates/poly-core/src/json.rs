use crate::error::PolyError;
use crate::polynomial::Polynomial;
use crate::rational::{format_rational, parse_rational};
use crate::time::TimePolynomial;
use crate::Result;
use serde::{Deserialize, Serialize};

/// On-disk form: `{"vars": [...], "terms": [{"coef": "p/q", "exp": [...]}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialDoc {
    pub vars: Vec<String>,
    pub terms: Vec<TermDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub coef: String,
    pub exp: Vec<u32>,
}

/// `x, y, z` for up to three variables, `x1, x2, …` beyond.
pub fn default_var_names(n: usize) -> Vec<String> {
    if n <= 3 {
        ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

impl PolynomialDoc {
    /// Terms are written in descending graded-lex order.
    pub fn from_polynomial(p: &Polynomial, vars: &[String]) -> Result<Self> {
        if vars.len() != p.nvars() {
            return Err(PolyError::VariableCount { expected: p.nvars(), found: vars.len() });
        }
        Ok(PolynomialDoc {
            vars: vars.to_vec(),
            terms: p
                .terms()
                .rev()
                .map(|(m, c)| TermDoc { coef: format_rational(c), exp: m.exponents().to_vec() })
                .collect(),
        })
    }

    pub fn with_default_names(p: &Polynomial) -> Self {
        Self::from_polynomial(p, &default_var_names(p.nvars())).expect("names sized to variables")
    }

    pub fn from_time_polynomial(p: &TimePolynomial, spatial: &[String]) -> Result<Self> {
        let mut vars = vec!["t".to_string()];
        vars.extend(spatial.iter().cloned());
        Self::from_polynomial(p.as_polynomial(), &vars)
    }

    pub fn to_polynomial(&self) -> Result<Polynomial> {
        if self.vars.is_empty() {
            return Err(PolyError::NoVariables);
        }
        let mut seen = std::collections::BTreeSet::new();
        for v in &self.vars {
            if !seen.insert(v) {
                return Err(PolyError::Malformed(format!("duplicate variable name {v:?}")));
            }
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Ok((t.exp.clone(), parse_rational(&t.coef)?)))
            .collect::<Result<Vec<_>>>()?;
        Polynomial::from_terms(self.vars.len(), terms)
    }

    /// Requires `"t"` in slot 0.
    pub fn to_time_polynomial(&self) -> Result<TimePolynomial> {
        if self.vars.first().map(String::as_str) != Some("t") {
            return Err(PolyError::TimeSlot("variable 0 must be named \"t\"".into()));
        }
        TimePolynomial::from_polynomial(self.to_polynomial()?)
    }

    /// Spatial variable names, skipping a leading `"t"`.
    pub fn spatial_vars(&self) -> &[String] {
        match self.vars.first() {
            Some(v) if v == "t" => &self.vars[1..],
            _ => &self.vars,
        }
    }

    pub fn parse(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("document serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn spec_example_round_trip() {
        let text = r#"{"vars":["x","y"],"terms":[{"coef":"-3","exp":[2,2]},{"coef":"1/6","exp":[0,0]}]}"#;
        let doc = PolynomialDoc::parse(text).unwrap();
        let p = doc.to_polynomial().unwrap();
        assert_eq!(p.coeff(&[0, 0]), ratio(1, 6));
        let back = PolynomialDoc::from_polynomial(&p, &doc.vars).unwrap();
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn rejects_bad_documents() {
        let bad_exp = r#"{"vars":["x"],"terms":[{"coef":"1","exp":[1,1]}]}"#;
        assert!(PolynomialDoc::parse(bad_exp).unwrap().to_polynomial().is_err());
        let bad_coef = r#"{"vars":["x"],"terms":[{"coef":"1.5","exp":[1]}]}"#;
        assert!(PolynomialDoc::parse(bad_coef).unwrap().to_polynomial().is_err());
        let dup = r#"{"vars":["x","x"],"terms":[]}"#;
        assert!(PolynomialDoc::parse(dup).unwrap().to_polynomial().is_err());
        let no_t = r#"{"vars":["x","y"],"terms":[]}"#;
        assert!(PolynomialDoc::parse(no_t).unwrap().to_time_polynomial().is_err());
    }
}
