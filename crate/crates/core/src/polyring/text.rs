use num_bigint::BigInt;

use super::{Coeff, MatrixContext, Monomial, PolyError, Polynomial, Rational, Variable};

/// Parses the text form produced by `Display for Polynomial`.
///
/// Terms are separated by `+` or `-` (the Unicode minus `−` is accepted too);
/// a term is a `*`-separated product of rational constants `p` or `p/q` and
/// variables `x[r,c]` with an optional `^e`.
pub fn parse_polynomial(s: &str, ctx: MatrixContext) -> Result<Polynomial, PolyError> {
    let mut p = Parser { src: s, pos: 0, ctx };
    let out = p.polynomial()?;
    p.skip_ws();
    if p.pos != s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    ctx: MatrixContext,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> PolyError {
        PolyError::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn sign(&mut self) -> Option<bool> {
        self.skip_ws();
        match self.peek() {
            Some('+') => {
                self.bump();
                Some(false)
            }
            Some('-') | Some('\u{2212}') => {
                self.bump();
                Some(true)
            }
            _ => None,
        }
    }

    fn polynomial(&mut self) -> Result<Polynomial, PolyError> {
        let field = self.ctx.field();
        let mut terms = Vec::new();
        let mut negative = self.sign().unwrap_or(false);
        loop {
            let (c, m) = self.term()?;
            let c = if negative { field.neg(&c) } else { c };
            terms.push((c, m));
            match self.sign() {
                Some(neg) => negative = neg,
                None => break,
            }
        }
        Polynomial::from_terms(self.ctx, terms)
    }

    fn term(&mut self) -> Result<(Coeff, Monomial), PolyError> {
        let field = self.ctx.field();
        let mut coeff = field.one();
        let mut vars = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some('x') => vars.push(self.variable()?),
                Some(c) if c.is_ascii_digit() => {
                    let r = self.rational()?;
                    let c = field.from_rational(&r).map_err(|_| self.err("constant not invertible in field"))?;
                    coeff = field.mul(&coeff, &c);
                }
                _ => return Err(self.err("expected a constant or a variable")),
            }
            self.skip_ws();
            if self.peek() == Some('*') {
                self.bump();
            } else {
                break;
            }
        }
        Ok((coeff, Monomial::from_factors(vars)))
    }

    fn variable(&mut self) -> Result<(Variable, u32), PolyError> {
        self.expect('x')?;
        self.expect('[')?;
        let row = self.small_int()?;
        self.expect(',')?;
        let col = self.small_int()?;
        self.expect(']')?;
        let v = Variable::new(row, col);
        self.ctx.check_var(v)?;
        self.skip_ws();
        let exp = if self.peek() == Some('^') {
            self.bump();
            self.small_int()?
        } else {
            1
        };
        Ok((v, exp))
    }

    fn expect(&mut self, c: char) -> Result<(), PolyError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.err(&format!("expected '{c}'")))
        }
    }

    fn digits(&mut self) -> Result<&str, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(&self.src[start..self.pos])
    }

    fn small_int(&mut self) -> Result<u32, PolyError> {
        let d = self.digits()?;
        d.parse().map_err(|_| self.err("integer out of range"))
    }

    fn rational(&mut self) -> Result<Rational, PolyError> {
        let num: BigInt = self.digits()?.parse().expect("digit string");
        self.skip_ws();
        if self.peek() == Some('/') {
            self.bump();
            let den: BigInt = self.digits()?.parse().expect("digit string");
            if den == BigInt::from(0) {
                return Err(self.err("zero denominator"));
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }
}
