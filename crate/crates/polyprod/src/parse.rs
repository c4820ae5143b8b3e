//! Text form of integer polynomials.
//!
//! Accepted grammar: signed terms `c`, `x`, `cx`, `x^k`, `cx^k` joined
//! by `+` and `-`, whitespace-insensitive, `*` optional between
//! coefficient and x. The alternative `coeffs:c0,c1,...,cd` form lists
//! coefficients in ascending degree.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::IntPoly;

const MAX_EXPONENT: usize = 1_000_000;

fn parse_err(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}

fn parse_coeff_list(text: &str, offset: usize) -> Result<IntPoly> {
    let mut coeffs = Vec::new();
    let mut pos = offset;
    for part in text.split(',') {
        let trimmed = part.trim();
        if trimmed.is_empty() {
            return Err(parse_err(pos, "empty coefficient"));
        }
        let c: BigInt = trimmed
            .parse()
            .map_err(|_| parse_err(pos, format!("invalid integer '{trimmed}'")))?;
        coeffs.push(c);
        pos += part.len() + 1;
    }
    let poly = IntPoly::new(coeffs);
    if poly.is_zero() {
        return Err(parse_err(offset, "zero polynomial rejected"));
    }
    Ok(poly)
}

struct Scanner<'a> {
    chars: Vec<(usize, char)>,
    idx: usize,
    len: usize,
    _text: &'a str,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Scanner {
            chars: text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
            idx: 0,
            len: text.len(),
            _text: text,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.idx).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.idx).map_or(self.len, |&(p, _)| p)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.idx += 1;
        c
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.idx += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<String> {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                s.push(c);
                self.idx += 1;
            } else {
                break;
            }
        }
        (!s.is_empty()).then_some(s)
    }
}

/// Parse the textual polynomial syntax into an IntPoly.
pub fn parse_polynomial(text: &str) -> Result<IntPoly> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(parse_err(0, "empty input"));
    }
    if let Some(rest) = trimmed.strip_prefix("coeffs:") {
        return parse_coeff_list(rest, text.find("coeffs:").unwrap_or(0) + 7);
    }

    let mut sc = Scanner::new(text);
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut first_term = true;
    loop {
        // sign
        let mut negative = false;
        match sc.peek() {
            Some('+') => {
                sc.bump();
            }
            Some('-') => {
                negative = true;
                sc.bump();
            }
            Some(_) if first_term => {}
            Some(c) => {
                return Err(parse_err(sc.pos(), format!("expected '+' or '-', found '{c}'")));
            }
            None => {
                return Err(parse_err(sc.pos(), "expected a term"));
            }
        }
        first_term = false;

        let term_pos = sc.pos();
        let coeff_digits = sc.digits();
        if coeff_digits.is_some() {
            sc.eat('*');
        }
        let has_x = sc.eat('x');
        if coeff_digits.is_none() && !has_x {
            return Err(parse_err(term_pos, "expected a coefficient or 'x'"));
        }
        let exponent = if has_x {
            if sc.eat('^') {
                let d = sc
                    .digits()
                    .ok_or_else(|| parse_err(sc.pos(), "expected exponent digits after '^'"))?;
                let e: usize = d
                    .parse()
                    .map_err(|_| parse_err(sc.pos(), "exponent out of range"))?;
                if e > MAX_EXPONENT {
                    return Err(parse_err(sc.pos(), "exponent out of range"));
                }
                e
            } else {
                1
            }
        } else {
            0
        };
        let mut coeff: BigInt = match coeff_digits {
            Some(d) => d.parse().expect("digit string parses"),
            None => BigInt::from(1),
        };
        if negative {
            coeff = -coeff;
        }
        if coeffs.len() <= exponent {
            coeffs.resize(exponent + 1, BigInt::zero());
        }
        coeffs[exponent] += coeff;

        if sc.peek().is_none() {
            break;
        }
    }
    let poly = IntPoly::new(coeffs);
    if poly.is_zero() {
        return Err(parse_err(0, "zero polynomial rejected"));
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(text: &str) -> Vec<i64> {
        parse_polynomial(text)
            .unwrap()
            .coeffs()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn standard_forms() {
        assert_eq!(coeffs("x^2+1"), vec![1, 0, 1]);
        assert_eq!(coeffs("2x^3-x+5"), vec![5, -1, 0, 2]);
        assert_eq!(coeffs("coeffs:-2,0,0,1"), vec![-2, 0, 0, 1]);
        assert_eq!(coeffs("x"), vec![0, 1]);
        assert_eq!(coeffs("-x"), vec![0, -1]);
        assert_eq!(coeffs("7"), vec![7]);
        assert_eq!(coeffs("3*x^2 - 2*x + 1"), vec![1, -2, 3]);
        assert_eq!(coeffs("  x ^ 2 + 1 "), vec![1, 0, 1]);
        assert_eq!(coeffs("x+x"), vec![0, 2]);
        assert_eq!(coeffs("+x^2-0"), vec![0, 0, 1]);
    }

    #[test]
    fn errors_carry_positions() {
        for bad in ["", "   ", "x^", "x^-2", "2y", "x++1", "*x", "coeffs:", "coeffs:1,a"] {
            let e = parse_polynomial(bad);
            assert!(e.is_err(), "input {bad:?} should fail");
        }
        match parse_polynomial("x^2 + @") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 6),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(
            parse_polynomial("0"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_polynomial("x-x"),
            Err(Error::Parse { .. })
        ));
    }

    proptest::proptest! {
        // print/parse round trip over deg <= 10, |coeffs| <= 10^6
        #[test]
        fn display_roundtrip(c in proptest::collection::vec(-1_000_000i64..=1_000_000, 1..=11)) {
            let f = IntPoly::from_i64(&c);
            if !f.is_zero() {
                let printed = f.to_string();
                let back = parse_polynomial(&printed).unwrap();
                proptest::prop_assert_eq!(back, f, "printed {}", printed);
            }
        }
    }
}
