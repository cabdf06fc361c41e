//! Buchberger machinery over the fixed lex order. Division and S-pairs feed
//! both the Gröbner criterion and the completion.

use std::collections::VecDeque;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::polyring::{Field, MatrixContext, Polynomial, Term};

/// Default cap on the number of elements a completion may generate.
pub const DEFAULT_COMPLETION_CAP: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroebnerError {
    #[error("polynomials live in different rings")]
    ContextMismatch,
    #[error("bases may not contain the zero polynomial")]
    ZeroElement,
    #[error("the basis is empty")]
    EmptyBasis,
    #[error("completion generated more than {cap} elements")]
    BudgetExceeded { cap: usize, partial: Basis },
    #[error("input is not a Groebner basis")]
    NotGroebner,
}

/// Ordered list of nonzero polynomials of one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    ctx: MatrixContext,
    polys: Vec<Polynomial>,
}

impl Basis {
    pub fn new(ctx: MatrixContext, polys: Vec<Polynomial>) -> Result<Self, GroebnerError> {
        for p in &polys {
            if p.ctx() != &ctx {
                return Err(GroebnerError::ContextMismatch);
            }
            if p.is_zero() {
                return Err(GroebnerError::ZeroElement);
            }
        }
        Ok(Basis { ctx, polys })
    }

    pub fn empty(ctx: MatrixContext) -> Self {
        Basis { ctx, polys: Vec::new() }
    }

    pub fn ctx(&self) -> &MatrixContext {
        &self.ctx
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn into_polys(self) -> Vec<Polynomial> {
        self.polys
    }
}

/// An S-pair whose remainder does not vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FailingPair {
    pub i: usize,
    pub j: usize,
    pub remainder: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GbReport {
    pub is_gb: bool,
    pub failing_pair: Option<FailingPair>,
    pub reduced: bool,
    pub field: Field,
}

impl GbReport {
    /// How much the verdict is worth: exact over Q, or evidence mod p.
    pub fn evidence(&self) -> String {
        match self.field {
            Field::Rationals => "exact over Q".to_string(),
            Field::Prime(p) => format!("mod {p} evidence"),
        }
    }
}

impl Serialize for GbReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Pair {
            i: usize,
            j: usize,
            remainder: String,
        }
        let mut st = s.serialize_struct("GbReport", 4)?;
        st.serialize_field("is_gb", &self.is_gb)?;
        st.serialize_field("reduced", &self.reduced)?;
        st.serialize_field("evidence", &self.evidence())?;
        let pair = self.failing_pair.as_ref().map(|p| Pair { i: p.i, j: p.j, remainder: p.remainder.to_string() });
        st.serialize_field("failing_pair", &pair)?;
        st.end()
    }
}

/// Remainder of `f` under multivariate division by `basis`.
///
/// Always reduces the current leading monomial first, dividing by the
/// earliest basis element whose leading monomial divides it.
pub fn normal_form(f: &Polynomial, basis: &Basis) -> Result<Polynomial, GroebnerError> {
    if f.ctx() != basis.ctx() {
        return Err(GroebnerError::ContextMismatch);
    }
    Ok(reduce(f, &basis.polys, None))
}

fn reduce(f: &Polynomial, divisors: &[Polynomial], skip: Option<usize>) -> Polynomial {
    let ctx = *f.ctx();
    let field = ctx.field();
    let mut p = f.clone();
    let mut rem: Vec<Term> = Vec::new();
    while let Some(lead) = p.leading_monomial().cloned() {
        let hit = divisors.iter().enumerate().find_map(|(k, g)| {
            if Some(k) == skip {
                return None;
            }
            let lm = g.leading_monomial()?;
            lm.quotient_of(&lead).map(|q| (g, q))
        });
        match hit {
            Some((g, q)) => {
                let c = field
                    .div(p.leading_coeff().unwrap(), g.leading_coeff().unwrap())
                    .expect("nonzero leading coefficient");
                p.sub_mul_term(&c, &q, g);
            }
            None => rem.push(p.pop_leading().unwrap()),
        }
    }
    Polynomial::from_sorted_terms(ctx, rem)
}

/// `(L / lt(f)) * f - (L / lt(g)) * g` with `L` the lcm of the leading
/// monomials.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Result<Polynomial, GroebnerError> {
    if f.ctx() != g.ctx() {
        return Err(GroebnerError::ContextMismatch);
    }
    let field = f.ctx().field();
    let (cf, mf) = f.leading_term().map_err(|_| GroebnerError::ZeroElement)?;
    let (cg, mg) = g.leading_term().map_err(|_| GroebnerError::ZeroElement)?;
    let lcm = mf.lcm(mg);
    let left = f.mul_term(&field.inv(cf).unwrap(), &mf.quotient_of(&lcm).unwrap());
    let right = g.mul_term(&field.inv(cg).unwrap(), &mg.quotient_of(&lcm).unwrap());
    Ok(left.sub(&right).expect("same ring"))
}

/// Buchberger's criterion. Pairs are visited in lexicographic `(i, j)` order
/// and pairs with coprime leading monomials are skipped.
pub fn is_groebner(basis: &Basis) -> Result<GbReport, GroebnerError> {
    if basis.is_empty() {
        return Err(GroebnerError::EmptyBasis);
    }
    let polys = &basis.polys;
    let mut failing = None;
    'outer: for i in 0..polys.len() {
        for j in i + 1..polys.len() {
            let (a, b) = (polys[i].leading_monomial().unwrap(), polys[j].leading_monomial().unwrap());
            if a.is_coprime(b) {
                continue;
            }
            let s = s_polynomial(&polys[i], &polys[j])?;
            let r = reduce(&s, polys, None);
            if !r.is_zero() {
                failing = Some(FailingPair { i, j, remainder: r });
                break 'outer;
            }
        }
    }
    Ok(GbReport {
        is_gb: failing.is_none(),
        failing_pair: failing,
        reduced: is_reduced(basis),
        field: basis.ctx.field(),
    })
}

/// Monic elements, and no monomial of any element is divisible by the
/// leading monomial of a different element.
pub fn is_reduced(basis: &Basis) -> bool {
    let polys = &basis.polys;
    polys.iter().enumerate().all(|(k, g)| {
        g.leading_coeff().is_some_and(|c| c.is_one())
            && polys.iter().enumerate().all(|(l, h)| {
                if k == l {
                    return true;
                }
                let lm = h.leading_monomial().unwrap();
                g.terms().iter().all(|t| !lm.divides(&t.mono))
            })
    })
}

/// Completes `basis` to a Groebner basis of the same ideal.
///
/// Fails with [`GroebnerError::BudgetExceeded`], carrying the partial basis,
/// once more than `cap` new elements have been added.
pub fn buchberger(basis: &Basis, cap: usize) -> Result<Basis, GroebnerError> {
    if basis.is_empty() {
        return Err(GroebnerError::EmptyBasis);
    }
    let mut polys = basis.polys.clone();
    let mut pairs: VecDeque<(usize, usize)> =
        (0..polys.len()).flat_map(|i| (i + 1..polys.len()).map(move |j| (i, j))).collect();
    let mut generated = 0usize;
    while let Some((i, j)) = pairs.pop_front() {
        let (a, b) = (polys[i].leading_monomial().unwrap(), polys[j].leading_monomial().unwrap());
        if a.is_coprime(b) {
            continue;
        }
        let s = s_polynomial(&polys[i], &polys[j])?;
        let r = reduce(&s, &polys, None);
        if r.is_zero() {
            continue;
        }
        generated += 1;
        if generated > cap {
            return Err(GroebnerError::BudgetExceeded { cap, partial: Basis { ctx: basis.ctx, polys } });
        }
        let k = polys.len();
        polys.push(r.monic());
        pairs.extend((0..k).map(|i| (i, k)));
    }
    Ok(Basis { ctx: basis.ctx, polys })
}

/// The reduced Groebner basis, sorted by decreasing leading monomial.
pub fn reduce_basis(basis: &Basis) -> Result<Basis, GroebnerError> {
    if !is_groebner(basis)?.is_gb {
        return Err(GroebnerError::NotGroebner);
    }
    let mut polys: Vec<Polynomial> = basis.polys.iter().map(Polynomial::monic).collect();
    polys.sort_by(|a, b| b.leading_monomial().cmp(&a.leading_monomial()));
    polys.dedup();

    // Minimalize: drop elements whose leading monomial another element divides.
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (k, p) in polys.iter().enumerate() {
        let lm = p.leading_monomial().unwrap();
        let redundant = polys.iter().enumerate().any(|(l, q)| {
            let lq = q.leading_monomial().unwrap();
            l != k && lq.divides(lm) && (lq != lm || l < k)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }

    // Tail-reduce each element against the others.
    for k in 0..minimal.len() {
        let r = reduce(&minimal[k], &minimal, Some(k));
        minimal[k] = r.monic();
    }
    Ok(Basis { ctx: basis.ctx, polys: minimal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmatrix::{minor, MinorSpec};

    fn ctx2(n: u32) -> MatrixContext {
        MatrixContext::new(2, n).unwrap()
    }

    fn det(ctx: &MatrixContext, cols: &[u32]) -> Polynomial {
        minor(&MinorSpec::maximal(cols.to_vec()).unwrap(), ctx).unwrap()
    }

    fn x(ctx: &MatrixContext, r: u32, c: u32) -> Polynomial {
        Polynomial::var(*ctx, r, c).unwrap()
    }

    #[test]
    fn normal_form_trivia() {
        let c = ctx2(3);
        let b = det(&c, &[1, 2]);
        let basis = Basis::new(c, vec![b.clone()]).unwrap();
        assert!(normal_form(&b, &basis).unwrap().is_zero());
        assert_eq!(normal_form(&b, &Basis::empty(c)).unwrap(), b);
    }

    #[test]
    fn normal_form_of_irreducible_leading_term() {
        let c = ctx2(3);
        let f = x(&c, 1, 3).mul(&det(&c, &[1, 2])).unwrap();
        let basis = Basis::new(c, vec![det(&c, &[1, 3]), det(&c, &[2, 3])]).unwrap();
        let r = normal_form(&f, &basis).unwrap();
        assert!(!r.is_zero());
        assert_eq!(r.leading_monomial().unwrap().to_string(), "x[1,1]*x[1,3]*x[2,2]");
    }

    #[test]
    fn s_polynomial_examples() {
        let c = ctx2(3);
        let f = det(&c, &[1, 3]);
        assert!(s_polynomial(&f, &f).unwrap().is_zero());

        let g = det(&c, &[2, 3]);
        let s = s_polynomial(&f, &g).unwrap();
        let expect = x(&c, 1, 3).mul(&det(&c, &[1, 2])).unwrap();
        assert!(s == expect || s == expect.neg(), "{s}");

        // coprime leading monomials reduce to zero
        let h = det(&c, &[1, 2]);
        let basis = Basis::new(c, vec![h.clone(), g.clone()]).unwrap();
        let lm_h = h.leading_monomial().unwrap();
        assert!(lm_h.is_coprime(g.leading_monomial().unwrap()));
        assert!(normal_form(&s_polynomial(&h, &g).unwrap(), &basis).unwrap().is_zero());

        assert_eq!(s_polynomial(&f, &Polynomial::zero(c)), Err(GroebnerError::ZeroElement));
    }

    #[test]
    fn all_two_minors_of_two_by_three() {
        let c = ctx2(3);
        let basis = Basis::new(c, vec![det(&c, &[1, 2]), det(&c, &[1, 3]), det(&c, &[2, 3])]).unwrap();
        let rep = is_groebner(&basis).unwrap();
        assert!(rep.is_gb);
        assert!(rep.reduced);
        assert_eq!(rep.evidence(), "exact over Q");
    }

    #[test]
    fn non_closed_pair_fails() {
        let c = ctx2(3);
        let basis = Basis::new(c, vec![det(&c, &[1, 3]), det(&c, &[2, 3])]).unwrap();
        let rep = is_groebner(&basis).unwrap();
        assert!(!rep.is_gb);
        let pair = rep.failing_pair.unwrap();
        assert_eq!((pair.i, pair.j), (0, 1));
        let lms: Vec<_> = basis.polys().iter().map(|p| p.leading_monomial().unwrap().clone()).collect();
        assert!(pair.remainder.terms().iter().all(|t| lms.iter().all(|m| !m.divides(&t.mono))));
    }

    #[test]
    fn singleton_and_empty() {
        let c = ctx2(3);
        assert!(is_groebner(&Basis::new(c, vec![det(&c, &[1, 2])]).unwrap()).unwrap().is_gb);
        assert_eq!(is_groebner(&Basis::empty(c)), Err(GroebnerError::EmptyBasis));
        assert_eq!(buchberger(&Basis::empty(c), 10), Err(GroebnerError::EmptyBasis));
    }

    #[test]
    fn basis_validation() {
        let c = ctx2(3);
        assert_eq!(Basis::new(c, vec![Polynomial::zero(c)]), Err(GroebnerError::ZeroElement));
        let other = MatrixContext::new(3, 3).unwrap();
        assert_eq!(Basis::new(c, vec![det(&other, &[1, 2, 3])]), Err(GroebnerError::ContextMismatch));
    }

    #[test]
    fn completion_adds_missing_leading_monomial() {
        let c = ctx2(3);
        let basis = Basis::new(c, vec![det(&c, &[1, 3]), det(&c, &[2, 3])]).unwrap();
        let gb = buchberger(&basis, DEFAULT_COMPLETION_CAP).unwrap();
        assert!(is_groebner(&gb).unwrap().is_gb);
        assert!(gb.polys().iter().any(|p| p.leading_monomial().unwrap().to_string() == "x[1,1]*x[1,3]*x[2,2]"));
        let red = reduce_basis(&gb).unwrap();
        assert_eq!(red.len(), 3);
        assert!(is_reduced(&red));
        assert!(red.polys().iter().all(|p| p.leading_coeff().unwrap().is_one()));
    }

    #[test]
    fn completion_of_a_basis_is_stable() {
        let c = MatrixContext::new(3, 4).unwrap();
        let minors: Vec<_> = [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]].iter().map(|cols| det(&c, cols)).collect();
        let basis = Basis::new(c, minors).unwrap();
        let gb = buchberger(&basis, DEFAULT_COMPLETION_CAP).unwrap();
        assert_eq!(gb.len(), basis.len());
    }

    #[test]
    fn completion_cap() {
        let c = ctx2(3);
        let basis = Basis::new(c, vec![det(&c, &[1, 3]), det(&c, &[2, 3])]).unwrap();
        match buchberger(&basis, 0) {
            Err(GroebnerError::BudgetExceeded { cap: 0, partial }) => assert_eq!(partial.len(), 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn reduce_basis_cases() {
        let c = ctx2(3);
        let gens = vec![det(&c, &[1, 2]), det(&c, &[1, 3]), det(&c, &[2, 3])];
        let basis = Basis::new(c, gens.clone()).unwrap();
        assert_eq!(reduce_basis(&basis).unwrap(), basis);

        let mut dup = gens.clone();
        dup.push(gens[1].clone());
        assert_eq!(reduce_basis(&Basis::new(c, dup).unwrap()).unwrap(), basis);

        let not_gb = Basis::new(c, vec![det(&c, &[1, 3]), det(&c, &[2, 3])]).unwrap();
        assert_eq!(reduce_basis(&not_gb), Err(GroebnerError::NotGroebner));
    }

    #[test]
    fn report_serializes() {
        let c = ctx2(3);
        let basis = Basis::new(c, vec![det(&c, &[1, 3]), det(&c, &[2, 3])]).unwrap();
        let json = serde_json::to_value(is_groebner(&basis).unwrap()).unwrap();
        assert_eq!(json["is_gb"], false);
        assert_eq!(json["failing_pair"]["i"], 0);
        assert!(json["failing_pair"]["remainder"].as_str().unwrap().contains("x[1,3]"));
    }
}
