//! Randomised checks of the algebraic and combinatorial invariants.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::Rational64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use detfacet::graphs::{
    delta_d, find_d_claw, find_d_paw, has_induced_cycle_of_length_at_least, ind_d, independence_complex, Graph,
};
use detfacet::groebner::{buchberger, is_groebner, normal_form, reduce_basis, Basis};
use detfacet::harness::{random_complex, random_graph};
use detfacet::polyring::{
    compare_monomials, parse_polynomial, Field, MatrixContext, Monomial, Polynomial, Rational, Variable,
};
use detfacet::scomplex::{
    exists_labelling, find_interval_rep, is_global_interval_lab, is_poor_closed_lab, is_proper_interval_lab,
    is_strong_interval_with_rep, is_unit_interval_lab, IntervalRep, LabelledClass, SearchBudget, SearchOutcome,
    SimplicialComplex,
};
use detfacet::sortable::sort_pair;
use detfacet::symmatrix::{det_generalized, ColumnSpec};
use detfacet::vset::VertexSet;

fn ctx23() -> MatrixContext {
    MatrixContext::new(2, 3).unwrap()
}

fn monomial(rows: u32, cols: u32, exps: &[u32]) -> Monomial {
    let vars = (1..=rows).flat_map(|r| (1..=cols).map(move |c| Variable::new(r, c)));
    Monomial::from_factors(vars.zip(exps.iter().copied()).filter(|&(_, e)| e > 0))
}

fn arb_monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0u32..=2, 6).prop_map(|e| monomial(2, 3, &e))
}

/// Up to four terms with coefficients `p/q`, `|p| <= 4`, `q <= 3`.
fn arb_poly_in(rows: u32, cols: u32) -> impl Strategy<Value = Polynomial> {
    let size = (rows * cols) as usize;
    prop::collection::vec((-4i64..=4, 1i64..=3, prop::collection::vec(0u32..=2, size)), 0..=4).prop_map(move |terms| {
        let ctx = MatrixContext::new(rows, cols).unwrap();
        let field = ctx.field();
        Polynomial::from_terms(
            ctx,
            terms.into_iter().map(|(p, q, e)| {
                let c = field.from_rational(&Rational::new(BigInt::from(p), BigInt::from(q))).unwrap();
                (c, monomial(rows, cols, &e))
            }),
        )
        .unwrap()
    })
}

fn arb_poly() -> impl Strategy<Value = Polynomial> {
    arb_poly_in(2, 3)
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, any::<u64>()).prop_map(|(n, seed)| random_graph(&mut ChaCha8Rng::seed_from_u64(seed), n))
}

fn arb_complex() -> impl Strategy<Value = SimplicialComplex> {
    any::<u64>().prop_map(|seed| random_complex(&mut ChaCha8Rng::seed_from_u64(seed), 6, 1..=2, 8))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
        prop_assert_eq!(p.add(&q).unwrap().add(&r).unwrap(), p.add(&q.add(&r).unwrap()).unwrap());
        prop_assert_eq!(p.add(&q).unwrap(), q.add(&p).unwrap());
        prop_assert_eq!(p.mul(&q).unwrap(), q.mul(&p).unwrap());
        prop_assert_eq!(p.mul(&q).unwrap().mul(&r).unwrap(), p.mul(&q.mul(&r).unwrap()).unwrap());
        prop_assert_eq!(
            p.mul(&q.add(&r).unwrap()).unwrap(),
            p.mul(&q).unwrap().add(&p.mul(&r).unwrap()).unwrap()
        );
        prop_assert!(p.sub(&p).unwrap().is_zero());
    }

    #[test]
    fn monomial_order_is_a_monomial_order(a in arb_monomial(), b in arb_monomial(), c in arb_monomial()) {
        let ctx = ctx23();
        let cmp = |x: &Monomial, y: &Monomial| compare_monomials(x, y, &ctx).unwrap();
        prop_assert_eq!(cmp(&a, &b), cmp(&b, &a).reverse());
        prop_assert_eq!(cmp(&a, &b) == Ordering::Equal, a == b);
        if cmp(&a, &b) != Ordering::Less && cmp(&b, &c) != Ordering::Less {
            prop_assert_ne!(cmp(&a, &c), Ordering::Less);
        }
        prop_assert_eq!(cmp(&a.mul(&c), &b.mul(&c)), cmp(&a, &b));
        prop_assert_ne!(cmp(&a, &Monomial::one()), Ordering::Less);
    }

    #[test]
    fn leading_term_of_a_product(p in arb_poly(), q in arb_poly()) {
        prop_assume!(!p.is_zero() && !q.is_zero());
        let (pc, pm) = p.leading_term().unwrap();
        let (qc, qm) = q.leading_term().unwrap();
        let pq = p.mul(&q).unwrap();
        let (c, m) = pq.leading_term().unwrap();
        prop_assert_eq!(m, &pm.mul(qm));
        prop_assert_eq!(c, &p.ctx().field().mul(pc, qc));
    }

    #[test]
    fn normalisation_is_idempotent_and_text_round_trips(p in arb_poly()) {
        prop_assert_eq!(&p.renormalize(), &p);
        prop_assert_eq!(parse_polynomial(&p.to_string(), ctx23()).unwrap(), p);
    }

    #[test]
    fn column_swaps_flip_the_determinant(
        cols in prop::sample::subsequence((1u32..=5).collect::<Vec<_>>(), 2..=3).prop_shuffle(),
        i in 0usize..3,
        j in 0usize..3,
    ) {
        let ctx = MatrixContext::new(3, 5).unwrap();
        let m = cols.len();
        let (i, j) = (i % m, j % m);
        prop_assume!(i != j);
        let rows: Vec<u32> = (1..=m as u32).collect();
        let plain: Vec<ColumnSpec> = cols.iter().map(|&c| ColumnSpec::Plain(c)).collect();
        let mut swapped = plain.clone();
        swapped.swap(i, j);
        let det = det_generalized(&plain, &rows, &ctx).unwrap();
        prop_assert_eq!(det_generalized(&swapped, &rows, &ctx).unwrap(), det.neg());
        let mut dup = plain.clone();
        dup[j] = dup[i].clone();
        prop_assert!(det_generalized(&dup, &rows, &ctx).unwrap().is_zero());
    }

    #[test]
    fn combinations_of_generators_reduce_to_zero(
        code in 1u128..64,
        hs in prop::collection::vec(arb_poly_in(2, 4), 6),
    ) {
        let g = Graph::from_adjacency_code(4, code);
        let basis = delta_d(&g, 1).unwrap().determinantal_facet_ideal(Field::Rationals).unwrap();
        let gb = buchberger(&basis, 10_000).unwrap();
        let mut f = Polynomial::zero(*basis.ctx());
        for (h, b) in hs.iter().zip(basis.polys()) {
            f = f.add(&h.mul(b).unwrap()).unwrap();
        }
        prop_assert!(normal_form(&f, &gb).unwrap().is_zero());
        // The generators are quadrics, so no variable lies in the ideal.
        let x = Polynomial::var(*basis.ctx(), 1, 1).unwrap();
        prop_assert!(!normal_form(&x, &gb).unwrap().is_zero());
        let reduced = reduce_basis(&gb).unwrap();
        prop_assert_eq!(reduce_basis(&reduced).unwrap(), reduced);
    }

    #[test]
    fn groebner_verdict_ignores_generator_order(code in 1u128..1024, perm in Just((0..10).collect::<Vec<usize>>()).prop_shuffle()) {
        let g = Graph::from_adjacency_code(5, code);
        let basis = delta_d(&g, 1).unwrap().determinantal_facet_ideal(Field::Rationals).unwrap();
        let polys = basis.polys();
        let shuffled: Vec<Polynomial> = perm.iter().filter(|&&k| k < polys.len()).map(|&k| polys[k].clone()).collect();
        let other = Basis::new(*basis.ctx(), shuffled).unwrap();
        prop_assert_eq!(is_groebner(&basis).unwrap().is_gb, is_groebner(&other).unwrap().is_gb);
    }

    #[test]
    fn unit_interval_implies_the_weaker_classes(c in arb_complex()) {
        if is_unit_interval_lab(&c) {
            prop_assert!(is_global_interval_lab(&c));
            prop_assert!(is_proper_interval_lab(&c));
            prop_assert!(is_poor_closed_lab(&c));
        }
    }

    // Only this direction holds: {123, 124, 134} on [4] is not unit interval
    // but its 1-skeleton, all of K4, is.
    #[test]
    fn unit_interval_passes_to_skeletons(c in arb_complex()) {
        for k in 0..c.dim() {
            let s = c.skeleton(k).unwrap();
            if is_unit_interval_lab(&c) {
                prop_assert!(is_unit_interval_lab(&s), "k={k}");
            }
            if is_global_interval_lab(&c) {
                prop_assert!(is_global_interval_lab(&s), "k={k}");
            }
            if is_proper_interval_lab(&c) {
                prop_assert!(is_proper_interval_lab(&s), "k={k}");
            }
        }
    }

    #[test]
    fn labelling_certificates_reverify(c in arb_complex()) {
        for class in LabelledClass::ALL {
            if let SearchOutcome::Found(l) = exists_labelling(&c, class, SearchBudget::default()) {
                prop_assert!(class.holds(&c.relabel(&l).unwrap()), "{class}");
            }
        }
    }

    #[test]
    fn strong_interval_is_affine_invariant(
        c in arb_complex(),
        ends in prop::collection::vec((0i64..8, 0i64..4), 6),
        by in -5i64..5,
        num in 1i64..7,
        den in 1i64..7,
    ) {
        let rep = IntervalRep::from_integers(&ends[..c.n()].iter().map(|&(a, l)| (a, a + l)).collect::<Vec<_>>()).unwrap();
        let moved = rep.affine(Rational64::from(by), Rational64::new(num, den));
        prop_assert_eq!(is_strong_interval_with_rep(&c, &rep), is_strong_interval_with_rep(&c, &moved));
        if let SearchOutcome::Found(found) = find_interval_rep(&c, SearchBudget::default()) {
            prop_assert_eq!(is_strong_interval_with_rep(&c, &found), Ok(true));
            prop_assert_eq!(is_strong_interval_with_rep(&c, &found.affine(Rational64::from(by), Rational64::new(num, den))), Ok(true));
        }
    }

    #[test]
    fn ind_d_is_the_independence_complex_of_delta_d(g in arb_graph(6), d in 1usize..=3) {
        prop_assert_eq!(ind_d(&g, d).unwrap(), independence_complex(&delta_d(&g, d).unwrap()));
    }

    #[test]
    fn connected_faces_of_delta_d_lie_in_delta_below(g in arb_graph(6), d in 2usize..=3) {
        let upper = delta_d(&g, d).unwrap();
        let lower = delta_d(&g, d - 1).unwrap();
        for f in upper.facets() {
            for s in f.subsets_of_size(d) {
                prop_assert_eq!(lower.is_facet(s), g.is_connected_within(s));
            }
        }
    }

    #[test]
    fn proper_interval_graphs_avoid_the_obstructions(g in arb_graph(6), d in 1usize..=3) {
        let c = delta_d(&g, d).unwrap();
        if exists_labelling(&c, LabelledClass::ProperInterval, SearchBudget::default()).is_found() {
            prop_assert!(find_d_claw(&g, d).is_none());
            prop_assert!(find_d_paw(&g, d).is_none());
            prop_assert!(!has_induced_cycle_of_length_at_least(&g, d + 3));
        }
    }

    #[test]
    fn sorting_preserves_sizes_and_the_multiset(
        f in prop::sample::subsequence((1usize..=10).collect::<Vec<_>>(), 3),
        g in prop::sample::subsequence((1usize..=10).collect::<Vec<_>>(), 3),
    ) {
        let (f, g) = (VertexSet::from_vertices(f), VertexSet::from_vertices(g));
        let (a, b) = sort_pair(f, g).unwrap();
        prop_assert_eq!(sort_pair(g, f).unwrap(), (a, b));
        prop_assert_eq!((a.len(), b.len()), (3, 3));
        for v in 1..=10 {
            let count = |s: VertexSet| usize::from(s.contains(v));
            prop_assert_eq!(count(a) + count(b), count(f) + count(g));
        }
        // the output is itself sorted: a_1 <= b_1 <= a_2 <= ...
        let (av, bv) = (a.to_vec(), b.to_vec());
        for k in 0..3 {
            prop_assert!(av[k] <= bv[k]);
            if k + 1 < 3 {
                prop_assert!(bv[k] <= av[k + 1]);
            }
        }
    }
}
