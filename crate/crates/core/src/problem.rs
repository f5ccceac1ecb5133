//! Problem files: a field, a variable list and the generators of `J`.
//!
//! ```text
//! # comment
//! field 32003          # or: field Q
//! vars x, y
//! ideal x^3; x*y; y^4  # may be repeated, generators accumulate
//! mode embedded        # optional, default intrinsic
//! ```
//!
//! Terms are products of coefficients (`3`, `-2/5`) and powers (`x^2`)
//! joined by explicit `*`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, VarSet};
use crate::scalar::{FieldSpec, Rationals};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Intrinsic,
    Embedded,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Intrinsic => "intrinsic",
            Mode::Embedded => "embedded",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "intrinsic" => Ok(Mode::Intrinsic),
            "embedded" => Ok(Mode::Embedded),
            _ => Err(Error::Parse {
                line: 0,
                column: 0,
                message: format!("unknown mode `{s}`"),
            }),
        }
    }
}

/// Generators are kept with rational coefficients so one file can be
/// analyzed over several fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemFile {
    pub field: FieldSpec,
    pub vars: VarSet,
    pub generators: Vec<Polynomial<Rationals>>,
    pub mode: Mode,
}

impl ProblemFile {
    pub fn new(field: FieldSpec, vars: VarSet, generators: Vec<Polynomial<Rationals>>) -> Self {
        Self {
            field,
            vars,
            generators,
            mode: Mode::Intrinsic,
        }
    }

    pub fn rendered_generators(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.render(&self.vars)).collect()
    }

    pub fn with_field(&self, field: FieldSpec) -> Self {
        Self {
            field,
            ..self.clone()
        }
    }
}

impl fmt::Display for ProblemFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field {}", self.field)?;
        writeln!(f, "vars {}", self.vars.names().join(", "))?;
        writeln!(f, "ideal {}", self.rendered_generators().join("; "))?;
        if self.mode != Mode::Intrinsic {
            writeln!(f, "mode {}", self.mode)?;
        }
        Ok(())
    }
}

impl FromStr for ProblemFile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_problem(s)
    }
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parses the text of a problem file.
pub fn parse_problem(text: &str) -> Result<ProblemFile> {
    let mut field: Option<FieldSpec> = None;
    let mut vars: Option<VarSet> = None;
    let mut mode: Option<Mode> = None;
    let mut generators = Vec::new();
    let mut saw_ideal = false;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let start = content.len() - content.trim_start().len();
        let body = content.trim_end();
        if start >= body.len() {
            continue;
        }
        let kw_end = body[start..]
            .find(char::is_whitespace)
            .map_or(body.len(), |i| start + i);
        let keyword = &body[start..kw_end];
        let rest_start = kw_end + (body[kw_end..].len() - body[kw_end..].trim_start().len());
        let rest = &body[rest_start..];
        let rest_col = body[..rest_start].chars().count() + 1;

        match keyword {
            "field" => {
                if field.is_some() {
                    return Err(parse_error(line, start + 1, "duplicate field line"));
                }
                if rest.is_empty() || rest.contains(char::is_whitespace) {
                    return Err(parse_error(line, rest_col, "expected `field <prime>` or `field Q`"));
                }
                field = Some(rest.parse::<FieldSpec>()?);
            }
            "vars" => {
                if vars.is_some() {
                    return Err(parse_error(line, start + 1, "duplicate vars line"));
                }
                vars = Some(parse_vars(rest, line, rest_col)?);
            }
            "ideal" => {
                let Some(vs) = &vars else {
                    return Err(parse_error(line, start + 1, "ideal line before vars line"));
                };
                saw_ideal = true;
                let mut col = rest_col;
                for piece in rest.split(';') {
                    let lead = piece.len() - piece.trim_start().len();
                    let item = piece.trim();
                    let item_col = col + piece[..lead].chars().count();
                    if item.is_empty() {
                        return Err(parse_error(line, item_col, "empty generator"));
                    }
                    generators.push(parse_polynomial(item, vs, line, item_col)?);
                    col += piece.chars().count() + 1;
                }
            }
            "mode" => {
                if mode.is_some() {
                    return Err(parse_error(line, start + 1, "duplicate mode line"));
                }
                mode = Some(rest.parse::<Mode>().map_err(|_| {
                    parse_error(line, rest_col, format!("unknown mode `{rest}`, expected intrinsic or embedded"))
                })?);
            }
            other => {
                return Err(parse_error(line, start + 1, format!("unknown directive `{other}`")));
            }
        }
    }

    let last = text.lines().count().max(1);
    let field = field.ok_or_else(|| parse_error(last, 1, "missing field line"))?;
    let vars = vars.ok_or_else(|| parse_error(last, 1, "missing vars line"))?;
    if !saw_ideal {
        return Err(parse_error(last, 1, "missing ideal line"));
    }
    Ok(ProblemFile {
        field,
        vars,
        generators,
        mode: mode.unwrap_or_default(),
    })
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn parse_vars(text: &str, line: usize, col: usize) -> Result<VarSet> {
    let mut names = Vec::new();
    let mut c = col;
    for piece in text.split(',') {
        let lead = piece.len() - piece.trim_start().len();
        let name = piece.trim();
        let name_col = c + piece[..lead].chars().count();
        let mut chars = name.chars();
        let valid = chars.next().is_some_and(is_ident_start) && chars.all(is_ident_char);
        if !valid {
            return Err(parse_error(line, name_col, format!("invalid variable name `{name}`")));
        }
        if names.iter().any(|n: &String| n == name) {
            return Err(parse_error(line, name_col, format!("duplicate variable `{name}`")));
        }
        names.push(name.to_string());
        c += piece.chars().count() + 1;
    }
    VarSet::new(names)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn tokenize(text: &str, line: usize, col: usize) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let at = col + i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            d if d.is_ascii_digit() => {
                let s = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[s..i].iter().collect();
                out.push((Tok::Num(digits.parse().expect("digits")), at));
                continue;
            }
            a if is_ident_start(a) => {
                let s = i;
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                out.push((Tok::Ident(chars[s..i].iter().collect()), at));
                continue;
            }
            other => return Err(parse_error(line, at, format!("unexpected character `{other}`"))),
        };
        out.push((tok, at));
        i += 1;
    }
    Ok(out)
}

struct PolyParser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    vars: &'a VarSet,
    line: usize,
    end_col: usize,
}

impl PolyParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn err(&self, message: impl Into<String>) -> Error {
        parse_error(self.line, self.col(), message)
    }

    fn expression(&mut self) -> Result<Vec<(Monomial, BigRational)>> {
        let mut terms = Vec::new();
        let mut negative = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                true
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let (m, c) = self.term()?;
            terms.push((m, if negative { -c } else { c }));
            match self.peek() {
                None => return Ok(terms),
                Some(Tok::Plus) => negative = false,
                Some(Tok::Minus) => negative = true,
                Some(_) => return Err(self.err("expected `+`, `-` or `*` (implicit multiplication is not allowed)")),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<(Monomial, BigRational)> {
        let n = self.vars.len();
        let mut coeff = BigRational::one();
        let mut mono = Monomial::one(n);
        loop {
            let col = self.col();
            match self.peek().cloned() {
                Some(Tok::Num(num)) => {
                    self.pos += 1;
                    let mut q = BigRational::from_integer(num);
                    if self.peek() == Some(&Tok::Slash) {
                        self.pos += 1;
                        let den_col = self.col();
                        let Some(Tok::Num(den)) = self.peek().cloned() else {
                            return Err(self.err("expected a positive integer denominator"));
                        };
                        if den.is_zero() {
                            return Err(parse_error(self.line, den_col, "zero denominator"));
                        }
                        self.pos += 1;
                        q /= BigRational::from_integer(den);
                    }
                    coeff *= q;
                }
                Some(Tok::Ident(name)) => {
                    self.pos += 1;
                    let index = self.vars.index_of(&name).ok_or(Error::UnknownVariable {
                        name: name.clone(),
                        line: self.line,
                        column: col,
                    })?;
                    let mut power = 1u32;
                    if self.peek() == Some(&Tok::Caret) {
                        self.pos += 1;
                        let Some(Tok::Num(e)) = self.peek().cloned() else {
                            return Err(self.err("expected a non-negative integer exponent"));
                        };
                        power = u32::try_from(&e).map_err(|_| self.err("exponent too large"))?;
                        self.pos += 1;
                    }
                    mono = mono
                        .mul(&Monomial::var(n, index, power))
                        .map_err(|_| parse_error(self.line, col, "exponent too large"))?;
                }
                _ => return Err(self.err("expected a coefficient or a variable")),
            }
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
            } else {
                return Ok((mono, coeff));
            }
        }
    }
}

/// Parses one polynomial over `vars`. `line` and `col` locate `text` for
/// error messages.
pub fn parse_polynomial(text: &str, vars: &VarSet, line: usize, col: usize) -> Result<Polynomial<Rationals>> {
    let toks = tokenize(text, line, col)?;
    let mut p = PolyParser {
        toks,
        pos: 0,
        vars,
        line,
        end_col: col + text.chars().count(),
    };
    let terms = p.expression()?;
    Ok(Polynomial::from_terms(Rationals, vars.len(), terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err_of(text: &str) -> Error {
        parse_problem(text).unwrap_err()
    }

    #[test]
    fn golden_file() {
        let p = parse_problem("field 32003\nvars x, y\nideal x^3; x*y; y^4").unwrap();
        assert_eq!(p.field, FieldSpec::Prime(32003));
        assert_eq!(p.vars.names(), ["x", "y"]);
        assert_eq!(p.rendered_generators(), ["x^3", "x*y", "y^4"]);
        assert_eq!(p.mode, Mode::Intrinsic);
    }

    #[test]
    fn rationals_and_comments() {
        let text = "# cubic\nfield Q   # rationals\nvars x\n\nideal x^3\n";
        let p = parse_problem(text).unwrap();
        assert_eq!(p.field, FieldSpec::Rationals);
        assert_eq!(p.rendered_generators(), ["x^3"]);
    }

    #[test]
    fn coefficients_and_signs() {
        let p = parse_problem("field Q\nvars x, y\nideal -2/3*y^4 + x*y*x - 1 + 3*x*1/3*y; 2/4").unwrap();
        assert_eq!(p.rendered_generators(), ["-2/3*y^4 + x^2*y + x*y - 1", "1/2"]);
    }

    #[test]
    fn repeated_ideal_lines_and_mode() {
        let p = parse_problem("field 7\nvars a\nideal a^2\nideal a^3\nmode embedded").unwrap();
        assert_eq!(p.generators.len(), 2);
        assert_eq!(p.mode, Mode::Embedded);
    }

    #[test]
    fn missing_field_line() {
        assert!(matches!(err_of("vars x\nideal x^2"), Error::Parse { .. }));
    }

    #[test]
    fn rejects_implicit_multiplication() {
        match err_of("field Q\nvars x, y\nideal 2x") {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (3, 8)),
            e => panic!("{e:?}"),
        }
        assert!(matches!(err_of("field Q\nvars x, y\nideal x y"), Error::Parse { .. }));
    }

    #[test]
    fn unknown_variable_position() {
        assert_eq!(
            err_of("field Q\nvars x, y\nideal x^2; x*z"),
            Error::UnknownVariable {
                name: "z".into(),
                line: 3,
                column: 14
            }
        );
    }

    #[test]
    fn invalid_fields() {
        assert!(matches!(err_of("field 12\nvars x\nideal x"), Error::InvalidField(_)));
        assert!(matches!(err_of("field R\nvars x\nideal x"), Error::InvalidField(_)));
    }

    #[test]
    fn structural_errors() {
        for text in [
            "field Q\nvars x\n",
            "field Q\nideal x\nvars x",
            "field Q\nfield 7\nvars x\nideal x",
            "field Q\nvars x, x\nideal x",
            "field Q\nvars x\nideal x;",
            "field Q\nvars x\nideal x^",
            "field Q\nvars x\nideal x +",
            "field Q\nvars x\nideal 1/0",
            "field Q\nvars x\nideal x/2",
            "field Q\nvars x\nideal x^99999999999",
            "field Q\nvars x\nideal (x)",
            "field Q\nvars x\nmode sideways\nideal x",
            "field Q\nvars x\nideals x",
        ] {
            assert!(matches!(err_of(text), Error::Parse { .. }), "{text:?}");
        }
    }

    #[test]
    fn print_parse_round_trip() {
        let text = "field Q\nvars x, y, z\nideal -1/2*x^2 + y*z - 3; z^5; y^2 - x\nmode embedded\n";
        let p = parse_problem(text).unwrap();
        assert_eq!(p.to_string(), text);
        assert_eq!(parse_problem(&p.to_string()).unwrap(), p);
    }
}
