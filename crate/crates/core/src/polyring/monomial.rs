use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// The indeterminate `x[row, col]` of the generic matrix. Both indices are
/// 1-based.
///
/// The derived ordering on `(row, col)` runs opposite to the variable order
/// of the ring: `x[1,1]` is the greatest variable and sorts first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Variable {
    pub row: u32,
    pub col: u32,
}

impl Variable {
    pub fn new(row: u32, col: u32) -> Self {
        Variable { row, col }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x[{},{}]", self.row, self.col)
    }
}

/// A power product of matrix variables, stored sparsely.
///
/// Factors are sorted from the greatest variable to the smallest and carry
/// positive exponents; the empty product is `1`. The [`Ord`] impl is the pure
/// lexicographic order induced by `x[1,1] > x[1,2] > ... > x[m,n]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    factors: Vec<(Variable, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { factors: Vec::new() }
    }

    pub fn var(v: Variable) -> Self {
        Monomial { factors: vec![(v, 1)] }
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs,
    /// merging repeats and dropping zero exponents.
    pub fn from_factors<I: IntoIterator<Item = (Variable, u32)>>(iter: I) -> Self {
        let mut factors: Vec<(Variable, u32)> = iter.into_iter().filter(|f| f.1 > 0).collect();
        factors.sort_by_key(|f| f.0);
        let mut merged: Vec<(Variable, u32)> = Vec::with_capacity(factors.len());
        for (v, e) in factors {
            match merged.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => merged.push((v, e)),
            }
        }
        Monomial { factors: merged }
    }

    pub fn factors(&self) -> &[(Variable, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|f| f.1).sum()
    }

    pub fn exponent(&self, v: Variable) -> u32 {
        self.factors.binary_search_by_key(&v, |f| f.0).map(|i| self.factors[i].1).unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { factors: out }
    }

    /// Whether `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        let mut j = 0;
        let b = &other.factors;
        for &(v, e) in &self.factors {
            while j < b.len() && b[j].0 < v {
                j += 1;
            }
            if j == b.len() || b[j].0 != v || b[j].1 < e {
                return false;
            }
            j += 1;
        }
        true
    }

    /// `other / self`, or `None` when `self` does not divide `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let out = other
            .factors
            .iter()
            .filter_map(|&(v, e)| {
                let rest = e - self.exponent(v);
                (rest > 0).then_some((v, rest))
            })
            .collect();
        Some(Monomial { factors: out })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1.max(b[j].1)));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { factors: out }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => return false,
            }
        }
        true
    }

    pub fn max_row(&self) -> u32 {
        self.factors.iter().map(|f| f.0.row).max().unwrap_or(0)
    }

    pub fn max_col(&self) -> u32 {
        self.factors.iter().map(|f| f.0.col).max().unwrap_or(0)
    }

    pub fn variables(&self) -> impl Iterator<Item = Variable> + '_ {
        self.factors.iter().map(|f| f.0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        for (&(va, ea), &(vb, eb)) in self.factors.iter().zip(other.factors.iter()) {
            if va != vb {
                // The side holding the more significant variable is larger.
                return if va < vb { Ordering::Greater } else { Ordering::Less };
            }
            if ea != eb {
                return ea.cmp(&eb);
            }
        }
        self.factors.len().cmp(&other.factors.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "{v}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(r: u32, c: u32) -> Monomial {
        Monomial::var(Variable::new(r, c))
    }

    #[test]
    fn variable_order() {
        assert!(x(1, 1) > x(1, 2));
        assert!(x(1, 5) > x(2, 1));
        assert!(x(2, 1) > Monomial::one());
    }

    #[test]
    fn greatest_variable_dominates() {
        let a = x(1, 2).mul(&x(2, 1));
        let b = x(1, 1).mul(&x(2, 3));
        assert_eq!(a.cmp(&b), Ordering::Less);
    }

    #[test]
    fn divisibility_and_quotient() {
        let a = x(1, 1).mul(&x(2, 2));
        let b = a.mul(&x(1, 1)).mul(&x(3, 3));
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        let q = a.quotient_of(&b).unwrap();
        assert_eq!(q, x(1, 1).mul(&x(3, 3)));
        assert_eq!(q.mul(&a), b);
        assert_eq!(b.exponent(Variable::new(1, 1)), 2);
    }

    #[test]
    fn lcm_and_coprime() {
        let a = x(1, 1).mul(&x(2, 3));
        let b = x(1, 2).mul(&x(2, 3));
        assert!(!a.is_coprime(&b));
        assert_eq!(a.lcm(&b), x(1, 1).mul(&x(1, 2)).mul(&x(2, 3)));
        assert!(x(1, 1).is_coprime(&x(2, 2)));
    }

    #[test]
    fn from_factors_merges() {
        let m = Monomial::from_factors([(Variable::new(2, 1), 1), (Variable::new(1, 1), 2), (Variable::new(2, 1), 3)]);
        assert_eq!(m.factors(), &[(Variable::new(1, 1), 2), (Variable::new(2, 1), 4)]);
        assert_eq!(m.degree(), 6);
        assert_eq!(m.to_string(), "x[1,1]^2*x[2,1]^4");
    }
}
