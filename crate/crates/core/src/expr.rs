//! Bivector expressions such as `u1^w + v1^w`, `(e1-e2)^e3` or `2*e1^e2`,
//! read against the labels of the quotient basis.

use std::fmt;

use num_traits::Zero;

use crate::document::parse_rational;
use crate::field::Field;
use crate::lie;
use crate::linalg;
use crate::poisson::Bivector;
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at offset {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ExprError {}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Number(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Wedge,
    Open,
    Close,
}

fn tokenize(input: &str) -> Result<Vec<(usize, Token)>, ExprError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        let single = match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => Some(Token::Plus),
            '-' => Some(Token::Minus),
            '*' => Some(Token::Star),
            '/' => Some(Token::Slash),
            '^' => Some(Token::Wedge),
            '(' => Some(Token::Open),
            ')' => Some(Token::Close),
            _ => None,
        };
        if let Some(t) = single {
            out.push((start, t));
            i += 1;
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Token::Number(input[start..i].to_string())));
        } else if c.is_alphabetic() || c == '_' {
            while i < bytes.len() {
                let d = bytes[i] as char;
                if d.is_ascii_alphanumeric() || d == '_' || d == '\'' {
                    i += 1;
                } else {
                    break;
                }
            }
            out.push((start, Token::Ident(input[start..i].to_string())));
        } else {
            return Err(ExprError {
                position: start,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    labels: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError {
            position: self.offset(),
            message: message.into(),
        })
    }

    fn eat(&mut self, t: &Token) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    /// Optional leading coefficient `n`, `n/d`, followed by an optional `*`.
    fn coefficient(&mut self) -> Result<Rational, ExprError> {
        let Some(Token::Number(n)) = self.peek().cloned() else {
            return Ok(Rational::from_int(1));
        };
        self.pos += 1;
        let mut text = n;
        if self.eat(&Token::Slash) {
            match self.peek().cloned() {
                Some(Token::Number(d)) => {
                    self.pos += 1;
                    text = format!("{text}/{d}");
                }
                _ => return self.error("expected a denominator"),
            }
        }
        let value = parse_rational(&text).map_err(|message| ExprError {
            position: self.offset(),
            message,
        })?;
        self.eat(&Token::Star);
        Ok(value)
    }

    fn sign(&mut self) -> Rational {
        let mut s = Rational::from_int(1);
        loop {
            if self.eat(&Token::Minus) {
                s = -s;
            } else if !self.eat(&Token::Plus) {
                return s;
            }
        }
    }

    /// `[sign] [coef] label` or `[sign] [coef] ( linear )`.
    fn vector_term(&mut self) -> Result<Vec<Rational>, ExprError> {
        let k = self.sign() * self.coefficient()?;
        let v = self.vector_atom()?;
        Ok(linalg::scale(&k, &v))
    }

    fn vector_atom(&mut self) -> Result<Vec<Rational>, ExprError> {
        match self.peek().cloned() {
            Some(Token::Ident(name)) => match self.labels.iter().position(|l| *l == name) {
                Some(i) => {
                    self.pos += 1;
                    Ok(linalg::unit(self.labels.len(), i))
                }
                None => self.error(format!("unknown label `{name}`; expected one of {}", self.labels.join(", "))),
            },
            Some(Token::Open) => {
                self.pos += 1;
                let v = self.linear()?;
                if !self.eat(&Token::Close) {
                    return self.error("expected `)`");
                }
                Ok(v)
            }
            _ => self.error("expected a label or `(`"),
        }
    }

    fn linear(&mut self) -> Result<Vec<Rational>, ExprError> {
        let mut acc = self.vector_term()?;
        while matches!(self.peek(), Some(Token::Plus | Token::Minus)) {
            acc = linalg::add(&acc, &self.vector_term()?);
        }
        Ok(acc)
    }

    /// `[sign] [coef] atom ^ atom`.
    fn bivector_term(&mut self) -> Result<Bivector<Rational>, ExprError> {
        let k = self.sign() * self.coefficient()?;
        let x = self.vector_atom()?;
        if !self.eat(&Token::Wedge) {
            return self.error("expected `^`");
        }
        let y = self.vector_atom()?;
        Ok(Bivector::wedge(&x, &y).scale(&k))
    }

    fn bivector(&mut self) -> Result<Bivector<Rational>, ExprError> {
        if self.peek().is_none() {
            return self.error("empty expression");
        }
        if self.tokens.len() == 1 && self.peek() == Some(&Token::Number("0".into())) {
            self.pos += 1;
            return Ok(Bivector::zero(self.labels.len()));
        }
        let mut acc = self.bivector_term()?;
        while matches!(self.peek(), Some(Token::Plus | Token::Minus)) {
            acc = acc.add(&self.bivector_term()?);
        }
        if self.peek().is_some() {
            return self.error("unexpected trailing input");
        }
        Ok(acc)
    }
}

/// Parses a bivector expression; `0` is the zero bivector. A bracketed list
/// `[c_01, c_02, ...]` gives the coordinates on `x_i ^ x_j`, `i < j`, directly.
pub fn parse_bivector(input: &str, labels: &[String]) -> Result<Bivector<Rational>, ExprError> {
    let trimmed = input.trim_start();
    if trimmed.starts_with('[') {
        return parse_coordinates(input, labels.len());
    }
    let mut parser = Parser {
        tokens: tokenize(input)?,
        pos: 0,
        end: input.len(),
        labels,
    };
    parser.bivector()
}

fn parse_coordinates(input: &str, m: usize) -> Result<Bivector<Rational>, ExprError> {
    let open = input.find('[').unwrap_or(0);
    let Some(close) = input.rfind(']') else {
        return Err(ExprError {
            position: input.len(),
            message: "expected `]`".into(),
        });
    };
    if !input[close + 1..].trim().is_empty() {
        return Err(ExprError {
            position: close + 1,
            message: "unexpected trailing input".into(),
        });
    }
    let body = &input[open + 1..close];
    let mut coords = Vec::new();
    let mut offset = open + 1;
    if !body.trim().is_empty() {
        for item in body.split(',') {
            let value = parse_rational(item.trim()).map_err(|message| ExprError {
                position: offset,
                message,
            })?;
            coords.push(value);
            offset += item.len() + 1;
        }
    }
    let expected = lie::wedge2_dim(m);
    if coords.len() != expected {
        return Err(ExprError {
            position: open,
            message: format!("expected {expected} coordinates, got {}", coords.len()),
        });
    }
    Ok(Bivector::from_wedge(m, &coords))
}

/// Writes `r` on the basis `x_i ^ x_j`, `i < j`, e.g. `u1^w - 1/2*v1^w`.
pub fn format_bivector(r: &Bivector<Rational>, labels: &[String]) -> String {
    let m = r.dim();
    let mut out = String::new();
    for ((i, j), c) in lie::wedge2_indices(m).into_iter().zip(r.to_wedge()) {
        if c.is_zero() {
            continue;
        }
        let negative = c < Rational::from_int(0);
        let abs = if negative { -c } else { c };
        match (out.is_empty(), negative) {
            (true, true) => out.push('-'),
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
            (true, false) => {}
        }
        if abs != Rational::from_int(1) {
            out.push_str(&format!("{abs}*"));
        }
        out.push_str(&format!("{}^{}", labels[i], labels[j]));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Writes a vector as a linear combination of labels.
pub fn format_vector(v: &[Rational], labels: &[String]) -> String {
    let mut out = String::new();
    for (c, label) in v.iter().zip(labels) {
        if c.is_zero() {
            continue;
        }
        let negative = *c < Rational::from_int(0);
        let abs = if negative { -c.clone() } else { c.clone() };
        match (out.is_empty(), negative) {
            (true, true) => out.push('-'),
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
            (true, false) => {}
        }
        if abs != Rational::from_int(1) {
            out.push_str(&format!("{abs}*"));
        }
        out.push_str(label);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn parses_wedge_sums() {
        let l = labels(&["e1", "e2", "e3"]);
        let s = parse_bivector("(e1-e2)^e3", &l).unwrap();
        assert_eq!(s.to_wedge(), vec![q(0), q(1), q(-1)]);
        let r = parse_bivector("2*e1^e2", &l).unwrap();
        assert_eq!(r.to_wedge(), vec![q(2), q(0), q(0)]);
        let t = parse_bivector("-1/2 e1^e2 + e2^e1", &l).unwrap();
        assert_eq!(t.to_wedge(), vec![Rational::ratio(-3, 2), q(0), q(0)]);
        assert!(parse_bivector("0", &l).unwrap().is_zero());
        assert_eq!(parse_bivector("[0, 1, -1]", &l).unwrap(), s);
        assert!(parse_bivector("[0, 1]", &l).is_err());
        assert!(parse_bivector("[0, 1, x]", &l).is_err());
    }

    #[test]
    fn sums_of_wedges() {
        let l = labels(&["u1", "v1", "w"]);
        let r = parse_bivector("u1^w + v1^w", &l).unwrap();
        assert_eq!(format_bivector(&r, &l), "u1^w + v1^w");
        let r = parse_bivector("(u1 + 3 v1)^(2w)", &l).unwrap();
        assert_eq!(format_bivector(&r, &l), "2*u1^w + 6*v1^w");
    }

    #[test]
    fn errors_are_located() {
        let l = labels(&["e1", "e2"]);
        let err = parse_bivector("e1^e9", &l).unwrap_err();
        assert_eq!(err.position, 3);
        assert!(parse_bivector("e1 e2", &l).is_err());
        assert!(parse_bivector("e1^", &l).is_err());
        assert!(parse_bivector("(e1^e2", &l).is_err());
        assert!(parse_bivector("", &l).is_err());
        assert!(parse_bivector("1/0*e1^e2", &l).is_err());
    }

    #[test]
    fn roundtrip_format() {
        let l = labels(&["a", "b", "c", "d"]);
        let r = Bivector::from_wedge(4, &[q(1), q(-2), Rational::ratio(1, 3), q(0), q(0), q(-1)]);
        let text = format_bivector(&r, &l);
        assert_eq!(parse_bivector(&text, &l).unwrap(), r);
        assert_eq!(format_vector(&[q(1), q(0), q(-1), Rational::ratio(2, 3)], &l), "a - c + 2/3*d");
    }
}
