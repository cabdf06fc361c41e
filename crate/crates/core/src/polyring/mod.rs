//! Exact sparse polynomials in the entries `x[r,c]` of a generic `m x n`
//! matrix, ordered lexicographically with `x[1,1] > ... > x[1,n] > x[2,1] >
//! ... > x[m,n]`.

mod field;
mod monomial;
mod poly;
mod text;

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use field::{Coeff, Field, Rational};
pub use monomial::{Monomial, Variable};
pub use poly::{Polynomial, Term};
pub use text::parse_polynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable {0} lies outside the {1}x{2} matrix")]
    InvalidVariable(Variable, u32, u32),
    #[error("polynomials live in different rings")]
    ContextMismatch,
    #[error("the zero polynomial has no leading term")]
    NoLeadingTerm,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a usable prime modulus")]
    NotPrime(u64),
    #[error("matrix must have at least one row and one column")]
    EmptyMatrix,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Shape of the generic matrix together with the coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MatrixContext {
    rows: u32,
    cols: u32,
    field: Field,
}

impl MatrixContext {
    pub fn new(rows: u32, cols: u32) -> Result<Self, PolyError> {
        Self::with_field(rows, cols, Field::Rationals)
    }

    pub fn with_field(rows: u32, cols: u32, field: Field) -> Result<Self, PolyError> {
        if rows == 0 || cols == 0 {
            return Err(PolyError::EmptyMatrix);
        }
        if let Field::Prime(p) = field {
            Field::prime(p)?;
        }
        Ok(MatrixContext { rows, cols, field })
    }

    pub fn rows(&self) -> u32 {
        self.rows
    }

    pub fn cols(&self) -> u32 {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn var(&self, row: u32, col: u32) -> Result<Variable, PolyError> {
        let v = Variable::new(row, col);
        self.check_var(v)?;
        Ok(v)
    }

    pub fn check_var(&self, v: Variable) -> Result<(), PolyError> {
        if v.row == 0 || v.row > self.rows || v.col == 0 || v.col > self.cols {
            Err(PolyError::InvalidVariable(v, self.rows, self.cols))
        } else {
            Ok(())
        }
    }

    pub fn check_monomial(&self, m: &Monomial) -> Result<(), PolyError> {
        m.variables().try_for_each(|v| self.check_var(v))
    }
}

/// Lexicographic comparison of two monomials of the ring described by `ctx`.
pub fn compare_monomials(a: &Monomial, b: &Monomial, ctx: &MatrixContext) -> Result<Ordering, PolyError> {
    ctx.check_monomial(a)?;
    ctx.check_monomial(b)?;
    Ok(a.cmp(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compare_examples() {
        let ctx = MatrixContext::new(2, 3).unwrap();
        let x = |r, c| Monomial::var(ctx.var(r, c).unwrap());
        assert_eq!(compare_monomials(&x(1, 1), &x(1, 2), &ctx), Ok(Ordering::Greater));
        let m = x(1, 2).mul(&x(2, 3));
        assert_eq!(compare_monomials(&m, &m, &ctx), Ok(Ordering::Equal));
        let a = x(1, 2).mul(&x(2, 1));
        let b = x(1, 1).mul(&x(2, 3));
        assert_eq!(compare_monomials(&a, &b, &ctx), Ok(Ordering::Less));
    }

    #[test]
    fn compare_rejects_foreign_variable() {
        let ctx = MatrixContext::new(2, 3).unwrap();
        let bad = Monomial::var(Variable::new(3, 1));
        let err = compare_monomials(&bad, &Monomial::one(), &ctx).unwrap_err();
        assert!(matches!(err, PolyError::InvalidVariable(..)));
        assert!(ctx.var(1, 4).is_err());
        assert!(ctx.var(0, 1).is_err());
    }

    #[test]
    fn context_validation() {
        assert_eq!(MatrixContext::new(0, 3), Err(PolyError::EmptyMatrix));
        assert!(MatrixContext::with_field(2, 3, Field::Prime(4)).is_err());
        assert!(MatrixContext::with_field(2, 3, Field::Prime(32003)).is_ok());
    }
}
