use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::{Coeff, MatrixContext, Monomial, PolyError, Variable};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Coeff,
    pub mono: Monomial,
}

/// Sparse polynomial with terms sorted strictly decreasing in the lex order.
/// No stored coefficient is zero; the empty term list is the zero polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ctx: MatrixContext,
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero(ctx: MatrixContext) -> Self {
        Polynomial { ctx, terms: Vec::new() }
    }

    pub fn one(ctx: MatrixContext) -> Self {
        Self::constant(ctx, ctx.field().one())
    }

    pub fn constant(ctx: MatrixContext, c: Coeff) -> Self {
        Self::monomial(ctx, c, Monomial::one())
    }

    pub fn from_i64(ctx: MatrixContext, c: i64) -> Self {
        Self::constant(ctx, ctx.field().from_i64(c))
    }

    /// The single variable `x[row, col]`.
    pub fn var(ctx: MatrixContext, row: u32, col: u32) -> Result<Self, PolyError> {
        let v = ctx.var(row, col)?;
        Ok(Self::monomial(ctx, ctx.field().one(), Monomial::var(v)))
    }

    pub(crate) fn var_unchecked(ctx: MatrixContext, v: Variable) -> Self {
        Self::monomial(ctx, ctx.field().one(), Monomial::var(v))
    }

    fn monomial(ctx: MatrixContext, coeff: Coeff, mono: Monomial) -> Self {
        if coeff.is_zero() {
            return Self::zero(ctx);
        }
        Polynomial { ctx, terms: vec![Term { coeff, mono }] }
    }

    /// Canonicalizes an arbitrary list of terms: merges equal monomials,
    /// drops zeros, sorts by the monomial order.
    pub fn from_terms<I>(ctx: MatrixContext, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Coeff, Monomial)>,
    {
        let field = ctx.field();
        let mut acc: BTreeMap<Monomial, Coeff> = BTreeMap::new();
        for (c, m) in terms {
            ctx.check_monomial(&m)?;
            let entry = acc.entry(m).or_insert_with(|| field.zero());
            *entry = field.add(entry, &c);
        }
        let terms =
            acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).map(|(mono, coeff)| Term { coeff, mono }).collect();
        Ok(Polynomial { ctx, terms })
    }

    pub fn ctx(&self) -> &MatrixContext {
        &self.ctx
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Number of terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Same as [`Polynomial::is_zero`].
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.mono.is_one())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.mono.degree()).max().unwrap_or(0)
    }

    pub fn leading_term(&self) -> Result<(&Coeff, &Monomial), PolyError> {
        self.terms.first().map(|t| (&t.coeff, &t.mono)).ok_or(PolyError::NoLeadingTerm)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.mono)
    }

    pub fn leading_coeff(&self) -> Option<&Coeff> {
        self.terms.first().map(|t| &t.coeff)
    }

    fn check_same(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(PolyError::ContextMismatch)
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_same(other)?;
        Ok(self.merge(other, false))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_same(other)?;
        Ok(self.merge(other, true))
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn neg(&self) -> Polynomial {
        let field = self.ctx.field();
        let terms = self.terms.iter().map(|t| Term { coeff: field.neg(&t.coeff), mono: t.mono.clone() }).collect();
        Polynomial { ctx: self.ctx, terms }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        self.mul_term(c, &Monomial::one())
    }

    /// `c * m * self`. Multiplying by a monomial preserves the term order.
    pub fn mul_term(&self, c: &Coeff, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.ctx);
        }
        let field = self.ctx.field();
        let terms = self.terms.iter().map(|t| Term { coeff: field.mul(&t.coeff, c), mono: t.mono.mul(m) }).collect();
        Polynomial { ctx: self.ctx, terms }
    }

    /// Scales to leading coefficient 1. The zero polynomial is returned as is.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.ctx.field().inv(lc).expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    /// In place `self -= c * m * g`, used by polynomial division.
    pub fn sub_mul_term(&mut self, c: &Coeff, m: &Monomial, g: &Polynomial) {
        let scaled = g.mul_term(c, m);
        *self = self.merge(&scaled, true);
    }

    /// Splits off the leading term.
    pub(crate) fn pop_leading(&mut self) -> Option<Term> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    /// Wraps terms that are already strictly decreasing with nonzero
    /// coefficients.
    pub(crate) fn from_sorted_terms(ctx: MatrixContext, terms: Vec<Term>) -> Polynomial {
        debug_assert!(terms.windows(2).all(|w| w[0].mono > w[1].mono));
        debug_assert!(terms.iter().all(|t| !t.coeff.is_zero()));
        Polynomial { ctx, terms }
    }

    /// Rebuilds the canonical form from the stored terms.
    pub fn renormalize(&self) -> Polynomial {
        let pairs = self.terms.iter().map(|t| (t.coeff.clone(), t.mono.clone()));
        Polynomial::from_terms(self.ctx, pairs).expect("terms already validated")
    }

    pub(crate) fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.ctx);
        }
        let (short, long) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc = Polynomial::zero(self.ctx);
        for t in &short.terms {
            acc = acc.merge(&long.mul_term(&t.coeff, &t.mono), false);
        }
        acc
    }

    pub(crate) fn add_unchecked(&self, other: &Polynomial) -> Polynomial {
        self.merge(other, false)
    }

    pub(crate) fn sub_unchecked(&self, other: &Polynomial) -> Polynomial {
        self.merge(other, true)
    }

    fn merge(&self, other: &Polynomial, subtract: bool) -> Polynomial {
        let field = self.ctx.field();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (a, b) = (&self.terms, &other.terms);
        let (mut i, mut j) = (0, 0);
        let rhs = |c: &Coeff| if subtract { field.neg(c) } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].mono.cmp(&b[j].mono) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term { coeff: rhs(&b[j].coeff), mono: b[j].mono.clone() });
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if subtract {
                        field.sub(&a[i].coeff, &b[j].coeff)
                    } else {
                        field.add(&a[i].coeff, &b[j].coeff)
                    };
                    if !c.is_zero() {
                        out.push(Term { coeff: c, mono: a[i].mono.clone() });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|t| Term { coeff: rhs(&t.coeff), mono: t.mono.clone() }));
        Polynomial { ctx: self.ctx, terms: out }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let c = t.coeff.abs();
            if t.mono.is_one() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", t.mono)?;
            } else {
                write!(f, "{c}*{}", t.mono)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::Field;

    fn ctx() -> MatrixContext {
        MatrixContext::new(2, 3).unwrap()
    }

    fn x(r: u32, c: u32) -> Polynomial {
        Polynomial::var(ctx(), r, c).unwrap()
    }

    fn det2(i: u32, j: u32) -> Polynomial {
        x(1, i).mul(&x(2, j)).unwrap().sub(&x(1, j).mul(&x(2, i)).unwrap()).unwrap()
    }

    #[test]
    fn additive_identity_and_inverse() {
        let p = det2(1, 2);
        assert_eq!(p.add(&Polynomial::zero(ctx())).unwrap(), p);
        assert!(x(1, 1).add(&x(1, 1).neg()).unwrap().is_zero());
        assert!(p.add(&p.neg()).unwrap().is_zero());
    }

    #[test]
    fn add_merges_terms() {
        let p = det2(1, 2);
        let q = x(1, 2).mul(&x(2, 1)).unwrap();
        assert_eq!(p.add(&q).unwrap(), x(1, 1).mul(&x(2, 2)).unwrap());
    }

    #[test]
    fn multiplication_examples() {
        let one = Polynomial::one(ctx());
        let p = det2(1, 3);
        assert_eq!(p.mul(&one).unwrap(), p);
        let sq = x(1, 1).mul(&x(1, 1)).unwrap();
        assert_eq!(sq.to_string(), "x[1,1]^2");
        let a = x(1, 1).sub(&x(1, 2)).unwrap();
        let b = x(1, 1).add(&x(1, 2)).unwrap();
        let expect = sq.sub(&x(1, 2).mul(&x(1, 2)).unwrap()).unwrap();
        assert_eq!(a.mul(&b).unwrap(), expect);
    }

    #[test]
    fn leading_terms() {
        let (c, m) = det2(1, 3).leading_term().map(|(c, m)| (c.clone(), m.clone())).unwrap();
        assert!(c.is_one());
        assert_eq!(m.to_string(), "x[1,1]*x[2,3]");

        let five = Polynomial::from_i64(ctx(), 5);
        let (c, m) = five.leading_term().unwrap();
        assert_eq!(c.to_i64(), Some(5));
        assert!(m.is_one());

        let p = x(1, 3).mul(&det2(1, 2)).unwrap();
        let (c, m) = p.leading_term().unwrap();
        assert!(c.is_one());
        assert_eq!(m.to_string(), "x[1,1]*x[1,3]*x[2,2]");

        assert_eq!(Polynomial::zero(ctx()).leading_term(), Err(PolyError::NoLeadingTerm));
    }

    #[test]
    fn context_mismatch() {
        let other = MatrixContext::new(3, 3).unwrap();
        let a = x(1, 1);
        let b = Polynomial::var(other, 1, 1).unwrap();
        assert_eq!(a.add(&b), Err(PolyError::ContextMismatch));
        assert_eq!(a.mul(&b), Err(PolyError::ContextMismatch));
        let modp = MatrixContext::with_field(2, 3, Field::Prime(7)).unwrap();
        assert_eq!(a.add(&Polynomial::var(modp, 1, 1).unwrap()), Err(PolyError::ContextMismatch));
    }

    #[test]
    fn display_signs() {
        assert_eq!(det2(1, 2).to_string(), "x[1,1]*x[2,2] - x[1,2]*x[2,1]");
        assert_eq!(det2(1, 2).neg().to_string(), "-x[1,1]*x[2,2] + x[1,2]*x[2,1]");
        assert_eq!(Polynomial::zero(ctx()).to_string(), "0");
    }
}
