//! Serialization of polynomials and coefficient tables.
//!
//! The JSON form of a polynomial is
//! `{"variable":"A","terms":[[exponent, "coefficient"], ...]}` with terms in
//! descending exponent order and coefficients as decimal strings.

use std::str::FromStr;

use clap::ValueEnum;
use cyclojones::{render, render_latex, LaurentPoly, Variable};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Latex,
    Text,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub variable: String,
    pub terms: Vec<(i64, String)>,
}

impl From<&LaurentPoly> for PolyJson {
    fn from(f: &LaurentPoly) -> Self {
        PolyJson {
            variable: "A".into(),
            terms: f.terms().rev().map(|(e, c)| (e, c.to_string())).collect(),
        }
    }
}

impl TryFrom<&PolyJson> for LaurentPoly {
    type Error = CliError;

    fn try_from(v: &PolyJson) -> Result<Self, CliError> {
        let var = Variable::from_str(&v.variable)
            .map_err(|_| CliError::Format(format!("unknown variable {:?}", v.variable)))?;
        let step = var.step();
        let mut terms = Vec::with_capacity(v.terms.len());
        for (e, c) in &v.terms {
            let c = BigInt::from_str(c).map_err(|_| CliError::Format(format!("bad coefficient {c:?}")))?;
            let e = e
                .checked_mul(step)
                .ok_or_else(|| CliError::Format(format!("exponent {e} overflows")))?;
            terms.push((e, c));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

pub fn poly_to_json(f: &LaurentPoly) -> String {
    serde_json::to_string(&PolyJson::from(f)).expect("plain data serializes")
}

pub fn poly_from_json(s: &str) -> Result<LaurentPoly, CliError> {
    let v: PolyJson = serde_json::from_str(s).map_err(|e| CliError::Format(e.to_string()))?;
    LaurentPoly::try_from(&v)
}

/// A two-column table of labelled polynomials in text, CSV or LaTeX form.
pub fn poly_table(
    format: Format,
    header: (&str, &str),
    rows: &[(String, LaurentPoly)],
    display: Variable,
) -> Result<String, CliError> {
    match format {
        Format::Text => {
            let mut out = String::new();
            for (label, f) in rows {
                out.push_str(&format!("{label} = {}\n", render(f, display)?));
            }
            Ok(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([header.0, header.1]).map_err(csv_err)?;
            for (label, f) in rows {
                w.write_record([label.as_str(), render(f, display)?.as_str()])
                    .map_err(csv_err)?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Format(e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
        Format::Latex => {
            let mut out = String::from("\\begin{tabular}{rl}\n");
            out.push_str(&format!("${}$ & ${}$ \\\\\n\\hline\n", header.0, header.1));
            for (label, f) in rows {
                out.push_str(&format!("{label} & ${}$ \\\\\n", render_latex(f, display)?));
            }
            out.push_str("\\end{tabular}\n");
            Ok(out)
        }
        Format::Json => Err(CliError::Usage("JSON tables are built by the caller".into())),
    }
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Format(e.to_string())
}
