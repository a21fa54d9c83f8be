//! Recursive-descent parser for polynomial text.
//!
//! Grammar: `expr ('=' expr)?`, `expr = [sign] term (sign term)*`,
//! `term = factor ('*'? factor)*`, `factor = integer | ident ('^' integer)?`.
//! Both `-` and `−` (U+2212) are accepted as minus.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::One;

use super::poly::{MultiIndex, Polynomial};

/// Parse failure with a 0-based character position.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { pos: usize, name: String },
    #[error("negative exponent at position {pos}")]
    NegativeExponent { pos: usize },
    #[error("empty variable order")]
    NoVariables,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Eq,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => out.push((start, Tok::Plus)),
            '-' | '\u{2212}' => out.push((start, Tok::Minus)),
            '*' | '\u{00b7}' => out.push((start, Tok::Star)),
            '^' => out.push((start, Tok::Caret)),
            '=' => out.push((start, Tok::Eq)),
            c if c.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push((start, Tok::Int(s.parse().expect("digits"))));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(chars[start..i].iter().collect())));
                continue;
            }
            other => {
                return Err(ParseError::Syntax {
                    pos: start,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn syntax<T>(&self, msg: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos(),
            msg: msg.to_string(),
        })
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let n = self.vars.len();
        let mut acc = Polynomial::zero(n);
        let mut sign = match self.peek() {
            Some(Tok::Minus) => {
                self.at += 1;
                -1
            }
            Some(Tok::Plus) => {
                self.at += 1;
                1
            }
            _ => 1,
        };
        loop {
            let (e, c) = self.term()?;
            acc = acc.add(&Polynomial::from_terms(n, [(e, c * sign)]).expect("arity"));
            sign = match self.peek() {
                Some(Tok::Plus) => 1,
                Some(Tok::Minus) => -1,
                _ => return Ok(acc),
            };
            self.at += 1;
        }
    }

    fn term(&mut self) -> Result<(MultiIndex, BigInt), ParseError> {
        let mut coeff = BigInt::one();
        let mut exps = vec![0u32; self.vars.len()];
        let mut first = true;
        loop {
            match self.peek().cloned() {
                Some(Tok::Int(v)) => {
                    self.at += 1;
                    coeff *= v;
                }
                Some(Tok::Ident(name)) => {
                    let pos = self.pos();
                    self.at += 1;
                    let idx = self
                        .vars
                        .iter()
                        .position(|v| *v == name)
                        .ok_or(ParseError::UnknownVariable { pos, name })?;
                    let mut e = 1u32;
                    if self.peek() == Some(&Tok::Caret) {
                        self.at += 1;
                        match self.peek().cloned() {
                            Some(Tok::Int(k)) => {
                                self.at += 1;
                                e = u32::try_from(&k)
                                    .or_else(|_| self.syntax("exponent too large"))?;
                            }
                            Some(Tok::Minus) => {
                                return Err(ParseError::NegativeExponent { pos: self.pos() })
                            }
                            _ => return self.syntax("expected exponent after `^`"),
                        }
                    }
                    exps[idx] += e;
                }
                _ if first => return self.syntax("expected a term"),
                _ => return self.syntax("expected a factor after `*`"),
            }
            first = false;
            match self.peek() {
                Some(Tok::Star) => self.at += 1,
                Some(Tok::Int(_)) | Some(Tok::Ident(_)) => {}
                _ => return Ok((MultiIndex(exps), coeff)),
            }
        }
    }
}

/// Parses `text` with the given variable order; equations `L = R` become `L − R`.
pub fn parse_polynomial(text: &str, vars: &[String]) -> Result<Polynomial, ParseError> {
    if vars.is_empty() {
        return Err(ParseError::NoVariables);
    }
    let toks = lex(text)?;
    let end = text.chars().count();
    let mut p = Parser {
        toks,
        at: 0,
        end,
        vars,
    };
    let lhs = p.expr()?;
    let out = if p.peek() == Some(&Tok::Eq) {
        p.at += 1;
        let rhs = p.expr()?;
        lhs.sub(&rhs)
    } else {
        lhs
    };
    if p.at != p.toks.len() {
        return p.syntax("unexpected trailing input");
    }
    Ok(out)
}

/// Identifiers occurring in `text`, sorted.
pub fn variables_in(text: &str) -> Result<Vec<String>, ParseError> {
    let set: BTreeSet<String> = lex(text)?
        .into_iter()
        .filter_map(|(_, t)| match t {
            Tok::Ident(s) => Some(s),
            _ => None,
        })
        .collect();
    Ok(set.into_iter().collect())
}

/// Parses with alphabetical variable order.
pub fn parse_polynomial_auto(text: &str) -> Result<(Polynomial, Vec<String>), ParseError> {
    let vars = variables_in(text)?;
    let p = parse_polynomial(text, &vars)?;
    Ok((p, vars))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::poly::{default_var_names, render_polynomial};

    fn xyz() -> Vec<String> {
        default_var_names(3)
    }

    #[test]
    fn cubes() {
        let p = parse_polynomial("x^3 + y^3 - z^3", &xyz()).unwrap();
        assert_eq!(
            p,
            Polynomial::from_i64(3, &[(&[3, 0, 0], 1), (&[0, 3, 0], 1), (&[0, 0, 3], -1)])
        );
    }

    #[test]
    fn product_terms() {
        let p = parse_polynomial("x*y^2 - 2*z", &xyz()).unwrap();
        assert_eq!(
            p,
            Polynomial::from_i64(3, &[(&[1, 2, 0], 1), (&[0, 0, 1], -2)])
        );
    }

    #[test]
    fn cancellation() {
        let vars = vec!["x".to_string(), "y".to_string()];
        let p = parse_polynomial("x + y - x", &vars).unwrap();
        assert_eq!(p, Polynomial::from_i64(2, &[(&[0, 1], 1)]));
    }

    #[test]
    fn equations_and_unicode_minus() {
        let p = parse_polynomial("x + y = z^2", &xyz()).unwrap();
        let q = parse_polynomial("x + y \u{2212} z^2", &xyz()).unwrap();
        assert_eq!(p, q);
        let r = parse_polynomial("x + y + z = 3", &xyz()).unwrap();
        assert_eq!(render_polynomial(&r, &xyz()), "x + y + z - 3");
    }

    #[test]
    fn errors_report_positions() {
        assert_eq!(
            parse_polynomial("x + w", &xyz()),
            Err(ParseError::UnknownVariable {
                pos: 4,
                name: "w".into()
            })
        );
        assert_eq!(
            parse_polynomial("x^-2", &xyz()),
            Err(ParseError::NegativeExponent { pos: 2 })
        );
        assert!(matches!(
            parse_polynomial("x + + y", &xyz()),
            Err(ParseError::Syntax { pos: 4, .. })
        ));
        assert!(matches!(
            parse_polynomial("x $ y", &xyz()),
            Err(ParseError::Syntax { pos: 2, .. })
        ));
        assert!(matches!(
            parse_polynomial("x*", &xyz()),
            Err(ParseError::Syntax { pos: 2, .. })
        ));
    }

    #[test]
    fn auto_order() {
        let (p, vars) = parse_polynomial_auto("b*a^2 - c").unwrap();
        assert_eq!(vars, vec!["a", "b", "c"]);
        assert_eq!(
            p,
            Polynomial::from_i64(3, &[(&[2, 1, 0], 1), (&[0, 0, 1], -1)])
        );
    }
}
