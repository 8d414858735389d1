//! Recursive-descent parser for polynomial text.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := ('-' | '+') unary | power
//! power   := primary ('^' integer)?
//! primary := integer | identifier | 'omega' | '(' expr ')'
//! ```

use num_bigint::BigInt;

use super::coeff::Coefficient;
use super::poly::WPolynomial;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Int(text[start..i].parse().expect("digits")), start));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(Error::Syntax {
                    offset: start,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a, C> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    zero: &'a WPolynomial<C>,
}

impl<C: Coefficient> Parser<'_, C> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> Error {
        let found = match self.peek() {
            Tok::End => "end of input".to_string(),
            t => format!("{t:?}"),
        };
        Error::Syntax {
            offset: self.offset(),
            message: format!("expected {wanted}, found {found}"),
        }
    }

    fn expr(&mut self) -> Result<WPolynomial<C>> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<WPolynomial<C>> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<WPolynomial<C>> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(self.unary()?.neg())
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<WPolynomial<C>> {
        let base = self.primary()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        match self.bump() {
            Tok::Int(n) => {
                let e: u32 = n.try_into().map_err(|_| Error::Syntax {
                    offset: at,
                    message: "exponent too large".into(),
                })?;
                if *self.peek() == Tok::Caret {
                    return Err(Error::Syntax {
                        offset: self.offset(),
                        message: "chained exponents need parentheses".into(),
                    });
                }
                Ok(base.pow(e))
            }
            _ => Err(Error::Syntax {
                offset: at,
                message: "expected integer exponent".into(),
            }),
        }
    }

    fn primary(&mut self) -> Result<WPolynomial<C>> {
        let at = self.offset();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(self.zero.constant_like(C::from_integer(n)))
            }
            Tok::Ident(name) => {
                self.bump();
                if name == "omega" {
                    let w = C::omega().ok_or_else(|| Error::Syntax {
                        offset: at,
                        message: "omega is not available over this coefficient ring".into(),
                    })?;
                    return Ok(self.zero.constant_like(w));
                }
                let i = self
                    .zero
                    .var_index(&name)
                    .ok_or(Error::UnknownVariable { name, offset: at })?;
                Ok(self.zero.variable_like(i))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected("`)`"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.unexpected("a number, variable or `(`")),
        }
    }
}

/// Parses `text` into the expanded normal form over the given weighted variables.
pub fn parse_polynomial<C: Coefficient, S: AsRef<str>>(
    text: &str,
    vars: &[S],
    weights: &[u32],
) -> Result<WPolynomial<C>> {
    let zero = WPolynomial::<C>::zero(vars, weights)?;
    let mut parser = Parser {
        toks: tokenize(text)?,
        pos: 0,
        zero: &zero,
    };
    let poly = parser.expr()?;
    if *parser.peek() != Tok::End {
        return Err(parser.unexpected("an operator or end of input"));
    }
    Ok(poly)
}

/// Variable names in order of first appearance (excluding `omega`).
pub fn variables_in_order(text: &str) -> Result<Vec<String>> {
    let mut out: Vec<String> = Vec::new();
    for (tok, _) in tokenize(text)? {
        if let Tok::Ident(name) = tok {
            if name != "omega" && !out.contains(&name) {
                out.push(name);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::coeff::EisensteinInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    type E = EisensteinInt;

    #[test]
    fn trailing_operator_reports_end_offset() {
        let err = parse_polynomial::<BigRational, _>("x^2 +", &["x"], &[1]).unwrap_err();
        assert!(matches!(err, Error::Syntax { offset: 5, .. }), "{err:?}");
    }

    #[test]
    fn unknown_variable() {
        let err = parse_polynomial::<BigRational, _>("x + w", &["x"], &[1]).unwrap_err();
        assert_eq!(
            err,
            Error::UnknownVariable {
                name: "w".into(),
                offset: 4
            }
        );
    }

    #[test]
    fn precedence() {
        let vars = ["x", "y"];
        let a = parse_polynomial::<BigRational, _>("-x^2*y + 2*3^2", &vars, &[1, 1]).unwrap();
        let b = parse_polynomial::<BigRational, _>("18 - (x^2)*y", &vars, &[1, 1]).unwrap();
        assert_eq!(a, b);
        let c = parse_polynomial::<BigRational, _>("(x+y)^2", &vars, &[1, 1]).unwrap();
        assert_eq!(c.to_string(), "x^2 + 2*x*y + y^2");
    }

    #[test]
    fn syntax_errors() {
        for bad in ["", "x^", "(x", "x)", "x y", "x^y", "x^2^3", "3 $ x", "x**2"] {
            assert!(
                parse_polynomial::<BigRational, _>(bad, &["x", "y"], &[1, 1]).is_err(),
                "{bad}"
            );
        }
    }

    #[test]
    fn omega_only_over_eisenstein() {
        assert!(parse_polynomial::<BigRational, _>("omega*x", &["x"], &[1]).is_err());
        let f = parse_polynomial::<E, _>("omega^2 + omega + 1", &["x"], &[1]).unwrap();
        assert!(f.is_zero());
    }

    #[test]
    fn variable_order_of_appearance() {
        assert_eq!(
            variables_in_order("t1*y + x^3 - omega*s1^3 + y").unwrap(),
            vec!["t1", "y", "x", "s1"]
        );
    }

    fn arb_poly() -> impl Strategy<Value = WPolynomial<E>> {
        proptest::collection::vec(
            (
                proptest::collection::vec(0u32..4, 3),
                -20i64..20,
                -20i64..20,
            ),
            0..8,
        )
        .prop_map(|terms| {
            WPolynomial::from_terms(
                &["x", "y1", "z_2"],
                &[2, 3, 1],
                terms.into_iter().map(|(e, a, b)| (e, E::new(a, b))),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn print_then_parse_is_identity(f in arb_poly()) {
            let text = f.to_string();
            let g: WPolynomial<E> = parse_polynomial(&text, &["x", "y1", "z_2"], &[2, 3, 1]).unwrap();
            prop_assert_eq!(&g, &f);
            prop_assert_eq!(g.to_string(), text);
        }
    }
}
