//! Symbolic determinants over the generic matrix `X = (x[r,c])`.
//!
//! Columns may be plain columns of `X` or combinations `f*i - g*j`, the
//! column whose `r`-th entry is `f*x[r,i] - g*x[r,j]`.

use thiserror::Error;

use crate::polyring::{MatrixContext, PolyError, Polynomial, Variable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("row {0} outside 1..={1}")]
    RowOutOfBounds(u32, u32),
    #[error("column {0} outside 1..={1}")]
    ColumnOutOfBounds(u32, u32),
    #[error("{cols} columns against {rows} rows")]
    SizeMismatch { cols: usize, rows: usize },
    #[error("indices must be strictly increasing")]
    NotIncreasing,
    #[error("combination column needs two distinct columns")]
    DegenerateCombination,
    #[error("column {0} is used twice")]
    IndexClash(u32),
    #[error("need at least {needed} rows, context has {have}")]
    InsufficientRows { needed: u32, have: u32 },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColumnSpec {
    Plain(u32),
    /// `f * column i - g * column j`
    Combination {
        f: Polynomial,
        g: Polynomial,
        i: u32,
        j: u32,
    },
}

/// Square selection of rows and columns, both strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MinorSpec {
    rows: Vec<u32>,
    cols: Vec<u32>,
}

impl MinorSpec {
    pub fn new(rows: Vec<u32>, cols: Vec<u32>) -> Result<Self, MatrixError> {
        if rows.len() != cols.len() {
            return Err(MatrixError::SizeMismatch { cols: cols.len(), rows: rows.len() });
        }
        if !strictly_increasing(&rows) || !strictly_increasing(&cols) {
            return Err(MatrixError::NotIncreasing);
        }
        Ok(MinorSpec { rows, cols })
    }

    /// Maximal minor on the given columns, using rows `1..=cols.len()`.
    pub fn maximal(cols: Vec<u32>) -> Result<Self, MatrixError> {
        let rows = (1..=cols.len() as u32).collect();
        Self::new(rows, cols)
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn cols(&self) -> &[u32] {
        &self.cols
    }
}

fn strictly_increasing(v: &[u32]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

fn check_row(r: u32, ctx: &MatrixContext) -> Result<(), MatrixError> {
    if r == 0 || r > ctx.rows() {
        Err(MatrixError::RowOutOfBounds(r, ctx.rows()))
    } else {
        Ok(())
    }
}

fn check_col(c: u32, ctx: &MatrixContext) -> Result<(), MatrixError> {
    if c == 0 || c > ctx.cols() {
        Err(MatrixError::ColumnOutOfBounds(c, ctx.cols()))
    } else {
        Ok(())
    }
}

/// Determinant of the submatrix of `X` picked out by `spec`.
pub fn minor(spec: &MinorSpec, ctx: &MatrixContext) -> Result<Polynomial, MatrixError> {
    let cols: Vec<ColumnSpec> = spec.cols.iter().map(|&c| ColumnSpec::Plain(c)).collect();
    det_generalized(&cols, &spec.rows, ctx)
}

/// Determinant of the matrix whose columns are `columns` (in the given order)
/// restricted to `rows` (in the given order).
pub fn det_generalized(columns: &[ColumnSpec], rows: &[u32], ctx: &MatrixContext) -> Result<Polynomial, MatrixError> {
    if columns.len() != rows.len() {
        return Err(MatrixError::SizeMismatch { cols: columns.len(), rows: rows.len() });
    }
    for &r in rows {
        check_row(r, ctx)?;
    }
    let mut matrix: Vec<Vec<Polynomial>> = vec![Vec::with_capacity(columns.len()); rows.len()];
    for col in columns {
        match col {
            ColumnSpec::Plain(c) => {
                check_col(*c, ctx)?;
                for (k, &r) in rows.iter().enumerate() {
                    matrix[k].push(Polynomial::var_unchecked(*ctx, Variable::new(r, *c)));
                }
            }
            ColumnSpec::Combination { f, g, i, j } => {
                check_col(*i, ctx)?;
                check_col(*j, ctx)?;
                if i == j {
                    return Err(MatrixError::DegenerateCombination);
                }
                if f.ctx() != ctx || g.ctx() != ctx {
                    return Err(PolyError::ContextMismatch.into());
                }
                for (k, &r) in rows.iter().enumerate() {
                    let xi = Polynomial::var_unchecked(*ctx, Variable::new(r, *i));
                    let xj = Polynomial::var_unchecked(*ctx, Variable::new(r, *j));
                    let entry = f.mul_unchecked(&xi).sub_unchecked(&g.mul_unchecked(&xj));
                    matrix[k].push(entry);
                }
            }
        }
    }
    Ok(determinant(&matrix, *ctx))
}

/// Determinant of a square matrix of polynomials: Leibniz expansion up to
/// size 4, first-row Laplace expansion above that.
pub fn determinant(matrix: &[Vec<Polynomial>], ctx: MatrixContext) -> Polynomial {
    let n = matrix.len();
    debug_assert!(matrix.iter().all(|row| row.len() == n));
    if n == 0 {
        return Polynomial::one(ctx);
    }
    if n <= 4 {
        return leibniz(matrix, ctx);
    }
    let mut acc = Polynomial::zero(ctx);
    for c in 0..n {
        if matrix[0][c].is_zero() {
            continue;
        }
        let sub: Vec<Vec<Polynomial>> = matrix[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, e)| e.clone()).collect())
            .collect();
        let cof = matrix[0][c].mul_unchecked(&determinant(&sub, ctx));
        acc = if c % 2 == 0 { acc.add_unchecked(&cof) } else { acc.sub_unchecked(&cof) };
    }
    acc
}

fn leibniz(matrix: &[Vec<Polynomial>], ctx: MatrixContext) -> Polynomial {
    let n = matrix.len();
    let mut acc = Polynomial::zero(ctx);
    for (perm, odd) in permutations_with_parity(n) {
        let mut prod = Polynomial::one(ctx);
        for (r, &c) in perm.iter().enumerate() {
            prod = prod.mul_unchecked(&matrix[r][c]);
            if prod.is_zero() {
                break;
            }
        }
        acc = if odd { acc.sub_unchecked(&prod) } else { acc.add_unchecked(&prod) };
    }
    acc
}

/// All permutations of `0..n` with their parity (`true` = odd).
pub(crate) fn permutations_with_parity(n: usize) -> Vec<(Vec<usize>, bool)> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    heap_permute(n, &mut perm, false, &mut out);
    out
}

// Heap's algorithm: each step is a single transposition, so parity flips.
fn heap_permute(k: usize, perm: &mut Vec<usize>, odd: bool, out: &mut Vec<(Vec<usize>, bool)>) -> bool {
    if k <= 1 {
        out.push((perm.clone(), odd));
        return odd;
    }
    let mut parity = heap_permute(k - 1, perm, odd, out);
    for i in 0..k - 1 {
        if k.is_multiple_of(2) {
            perm.swap(i, k - 1);
        } else {
            perm.swap(0, k - 1);
        }
        parity = heap_permute(k - 1, perm, !parity, out);
    }
    parity
}

/// Checks, as an exact polynomial identity,
///
/// ```text
/// det(x[1,j]*i_1 - x[1,i_1]*j, i_2, ..., i_t)_{rows 2..t+1}
///   = det(j, i_1, ..., i_t)
///   + sum_{r=2..t} (-1)^(r+1) x[1,i_r] det(j, i_1, ..., ^i_r, ..., i_t)_{rows 2..t+1}
/// ```
///
/// where `t = cols.len()` and `j` is `extra`.
pub fn check_det_identity(cols: &[u32], extra: u32, ctx: &MatrixContext) -> Result<bool, MatrixError> {
    let t = cols.len() as u32;
    if t == 0 {
        return Err(MatrixError::SizeMismatch { cols: 0, rows: 1 });
    }
    if ctx.rows() < t + 1 {
        return Err(MatrixError::InsufficientRows { needed: t + 1, have: ctx.rows() });
    }
    for (k, &c) in cols.iter().enumerate() {
        check_col(c, ctx)?;
        if cols[..k].contains(&c) {
            return Err(MatrixError::IndexClash(c));
        }
    }
    check_col(extra, ctx)?;
    if cols.contains(&extra) {
        return Err(MatrixError::IndexClash(extra));
    }
    let x1 = |c: u32| Polynomial::var_unchecked(*ctx, Variable::new(1, c));
    let lower: Vec<u32> = (2..=t + 1).collect();
    let all: Vec<u32> = (1..=t + 1).collect();

    let mut lhs_cols = vec![ColumnSpec::Combination { f: x1(extra), g: x1(cols[0]), i: cols[0], j: extra }];
    lhs_cols.extend(cols[1..].iter().map(|&c| ColumnSpec::Plain(c)));
    let lhs = det_generalized(&lhs_cols, &lower, ctx)?;

    let mut full = vec![ColumnSpec::Plain(extra)];
    full.extend(cols.iter().map(|&c| ColumnSpec::Plain(c)));
    let mut rhs = det_generalized(&full, &all, ctx)?;
    for r in 2..=t as usize {
        let mut hat = vec![ColumnSpec::Plain(extra)];
        hat.extend(cols.iter().enumerate().filter(|(k, _)| k + 1 != r).map(|(_, &c)| ColumnSpec::Plain(c)));
        let term = x1(cols[r - 1]).mul_unchecked(&det_generalized(&hat, &lower, ctx)?);
        // (-1)^(r+1)
        rhs = if r % 2 == 1 { rhs.add_unchecked(&term) } else { rhs.sub_unchecked(&term) };
    }
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_polynomial;

    fn ctx(m: u32, n: u32) -> MatrixContext {
        MatrixContext::new(m, n).unwrap()
    }

    #[test]
    fn two_by_two_minor() {
        let c = ctx(2, 4);
        let p = minor(&MinorSpec::maximal(vec![1, 3]).unwrap(), &c).unwrap();
        assert_eq!(p.to_string(), "x[1,1]*x[2,3] - x[1,3]*x[2,1]");
    }

    #[test]
    fn three_by_three_minor_has_six_terms() {
        let c = ctx(3, 3);
        let p = minor(&MinorSpec::maximal(vec![1, 2, 3]).unwrap(), &c).unwrap();
        let expect = parse_polynomial(
            "x[1,1]*x[2,2]*x[3,3] - x[1,1]*x[2,3]*x[3,2] - x[1,2]*x[2,1]*x[3,3] \
             + x[1,2]*x[2,3]*x[3,1] + x[1,3]*x[2,1]*x[3,2] - x[1,3]*x[2,2]*x[3,1]",
            c,
        )
        .unwrap();
        assert_eq!(p, expect);
    }

    #[test]
    fn leading_term_is_diagonal() {
        let c = ctx(4, 7);
        let cols = vec![2, 3, 5, 7];
        let p = minor(&MinorSpec::maximal(cols.clone()).unwrap(), &c).unwrap();
        let (coef, mono) = p.leading_term().unwrap();
        assert!(coef.is_one());
        let diag: Vec<_> = cols.iter().enumerate().map(|(k, &j)| (Variable::new(k as u32 + 1, j), 1)).collect();
        assert_eq!(mono.factors(), diag.as_slice());
        assert_eq!(p.len(), 24);
    }

    #[test]
    fn laplace_agrees_with_leibniz_structure() {
        // 5x5 goes through Laplace; 120 distinct terms, diagonal leads.
        let c = ctx(5, 5);
        let p = minor(&MinorSpec::maximal(vec![1, 2, 3, 4, 5]).unwrap(), &c).unwrap();
        assert_eq!(p.len(), 120);
        assert_eq!(p.leading_monomial().unwrap().to_string(), "x[1,1]*x[2,2]*x[3,3]*x[4,4]*x[5,5]");
    }

    #[test]
    fn minor_spec_errors() {
        assert!(matches!(MinorSpec::new(vec![1, 2], vec![1]), Err(MatrixError::SizeMismatch { .. })));
        assert_eq!(MinorSpec::new(vec![2, 1], vec![1, 2]), Err(MatrixError::NotIncreasing));
        let c = ctx(2, 3);
        let spec = MinorSpec::maximal(vec![1, 4]).unwrap();
        assert_eq!(minor(&spec, &c), Err(MatrixError::ColumnOutOfBounds(4, 3)));
        let spec = MinorSpec::new(vec![2, 3], vec![1, 2]).unwrap();
        assert_eq!(minor(&spec, &c), Err(MatrixError::RowOutOfBounds(3, 2)));
    }

    #[test]
    fn plain_columns_degenerate_to_minor() {
        let c = ctx(3, 5);
        let spec = MinorSpec::maximal(vec![1, 4, 5]).unwrap();
        let cols: Vec<_> = spec.cols().iter().map(|&j| ColumnSpec::Plain(j)).collect();
        assert_eq!(det_generalized(&cols, spec.rows(), &c).unwrap(), minor(&spec, &c).unwrap());
    }

    #[test]
    fn one_by_one_combination() {
        let c = ctx(2, 3);
        let (i, j) = (1, 3);
        let f = Polynomial::var(c, 1, j).unwrap();
        let g = Polynomial::var(c, 1, i).unwrap();
        let col = ColumnSpec::Combination { f, g, i, j };
        let p = det_generalized(&[col], &[2], &c).unwrap();
        let expect = parse_polynomial("x[1,3]*x[2,1] - x[1,1]*x[2,3]", c).unwrap();
        assert_eq!(p, expect);
    }

    #[test]
    fn combination_expands_by_multilinearity() {
        let c = ctx(2, 4);
        let one = Polynomial::one(c);
        let comb = ColumnSpec::Combination { f: one.clone(), g: one, i: 1, j: 2 };
        let lhs = det_generalized(&[comb, ColumnSpec::Plain(4)], &[1, 2], &c).unwrap();
        let d = |a, b| det_generalized(&[ColumnSpec::Plain(a), ColumnSpec::Plain(b)], &[1, 2], &c).unwrap();
        assert_eq!(lhs, d(1, 4).sub(&d(2, 4)).unwrap());
    }

    #[test]
    fn swaps_and_duplicates() {
        let c = ctx(3, 4);
        let d = |cols: &[u32]| {
            let cs: Vec<_> = cols.iter().map(|&j| ColumnSpec::Plain(j)).collect();
            det_generalized(&cs, &[1, 2, 3], &c).unwrap()
        };
        assert_eq!(d(&[2, 1, 4]), d(&[1, 2, 4]).neg());
        assert!(d(&[1, 1, 3]).is_zero());
    }

    #[test]
    fn combination_errors() {
        let c = ctx(2, 3);
        let one = Polynomial::one(c);
        let bad = ColumnSpec::Combination { f: one.clone(), g: one, i: 2, j: 2 };
        assert_eq!(det_generalized(&[bad, ColumnSpec::Plain(1)], &[1, 2], &c), Err(MatrixError::DegenerateCombination));
        assert!(matches!(det_generalized(&[ColumnSpec::Plain(1)], &[1, 2], &c), Err(MatrixError::SizeMismatch { .. })));
    }

    #[test]
    fn det_identity_small_cases() {
        assert_eq!(check_det_identity(&[2], 1, &ctx(2, 3)), Ok(true));
        assert_eq!(check_det_identity(&[1, 2], 3, &ctx(3, 3)), Ok(true));
        assert_eq!(check_det_identity(&[1, 2, 3, 4], 5, &ctx(5, 5)), Ok(true));
    }

    #[test]
    fn det_identity_errors() {
        assert_eq!(check_det_identity(&[1, 2], 2, &ctx(3, 3)), Err(MatrixError::IndexClash(2)));
        assert_eq!(
            check_det_identity(&[1, 2], 3, &ctx(2, 3)),
            Err(MatrixError::InsufficientRows { needed: 3, have: 2 })
        );
    }

    #[test]
    fn permutation_parity() {
        let perms = permutations_with_parity(4);
        assert_eq!(perms.len(), 24);
        for (p, odd) in perms {
            let inversions = (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b))).filter(|&(a, b)| p[a] > p[b]).count();
            assert_eq!(inversions % 2 == 1, odd, "{p:?}");
        }
    }
}
