//! Text and LaTeX rendering of Laurent polynomials in `A`, `𝔮 = A^2` or
//! `q = A^4`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variable {
    /// The Kauffman variable.
    A,
    /// `𝔮 = A^2`.
    Frak,
    /// `q = A^4`.
    Q,
}

impl Variable {
    /// Power of `A` that one unit of this variable stands for.
    pub fn step(self) -> i64 {
        match self {
            Variable::A => 1,
            Variable::Frak => 2,
            Variable::Q => 4,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Variable::A => "A",
            Variable::Frak => "𝔮",
            Variable::Q => "q",
        }
    }

    fn latex_symbol(self) -> &'static str {
        match self {
            Variable::A => "A",
            Variable::Frak => "\\mathfrak{q}",
            Variable::Q => "q",
        }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Variable {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "A" | "a" => Ok(Variable::A),
            "𝔮" | "frak" | "qq" | "Q" => Ok(Variable::Frak),
            "q" => Ok(Variable::Q),
            other => Err(format!("unknown display variable `{other}` (expected A, 𝔮 or q)")),
        }
    }
}

fn expressible(f: &LaurentPoly, var: Variable) -> Result<()> {
    if f.exponents_divisible_by(var.step()) {
        Ok(())
    } else {
        Err(Error::NotExpressible {
            poly: f.clone(),
            variable: var.symbol(),
            step: var.step(),
        })
    }
}

/// Plain text, descending exponents, e.g. `𝔮^-2 + 𝔮^-6 - 𝔮^-8`.
pub fn render(f: &LaurentPoly, var: Variable) -> Result<String> {
    expressible(f, var)?;
    if f.is_zero() {
        return Ok("0".to_string());
    }
    let sym = var.symbol();
    let mut out = String::new();
    for (i, (e, c)) in f.terms().rev().enumerate() {
        let e = e / var.step();
        let negative = c.is_negative();
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mag = c.abs();
        if e == 0 {
            out.push_str(&mag.to_string());
            continue;
        }
        if !mag.is_one() {
            out.push_str(&mag.to_string());
        }
        out.push_str(sym);
        if e != 1 {
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
    Ok(out)
}

/// LaTeX math-mode form, same ordering as [`render`].
pub fn render_latex(f: &LaurentPoly, var: Variable) -> Result<String> {
    expressible(f, var)?;
    if f.is_zero() {
        return Ok("0".to_string());
    }
    let sym = var.latex_symbol();
    let mut out = String::new();
    for (i, (e, c)) in f.terms().rev().enumerate() {
        let e = e / var.step();
        match (i, c.is_negative()) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mag = c.abs();
        if e == 0 {
            out.push_str(&mag.to_string());
            continue;
        }
        if !mag.is_one() {
            out.push_str(&mag.to_string());
        }
        out.push_str(sym);
        if e != 1 {
            out.push_str(&format!("^{{{e}}}"));
        }
    }
    Ok(out)
}
