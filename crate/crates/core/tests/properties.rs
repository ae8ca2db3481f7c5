use charpoly::factor::{conjecture_sum, count_top_factorizations};
use charpoly::perm::{compose, enumerate_permutations, partitions_of, Permutation};
use charpoly::stanley::{f_k_residue, f_mu_interpolate, is_nonnegative};
use charpoly::trees::enumerate_trees;
use charpoly::{Context, Integer, Monomial, QPoly, Rational, ZPoly, ZSeries};
use proptest::prelude::*;

#[test]
fn inverses_compose_to_identity() {
    for k in 1..=6 {
        for a in enumerate_permutations(k) {
            assert!(compose(&a, &a.inverse()).unwrap().is_identity());
            assert!(compose(&a.inverse(), &a).unwrap().is_identity());
        }
    }
}

#[test]
fn single_colour_conjecture_holds() {
    for k in 1..=5 {
        for mu in partitions_of(k) {
            let f = f_mu_interpolate(&mu, 1).unwrap().substitute_neg_q();
            let f = if k % 2 == 0 { f } else { -f };
            let sum = conjecture_sum::<Integer>(&mu, 1).unwrap().to_rational();
            assert_eq!(sum, f, "μ = {mu}");
            assert!(is_nonnegative(&f));
        }
    }
}

#[test]
fn tree_counts_match_factorization_counts() {
    for k in 1..=8 {
        assert_eq!(
            enumerate_trees(k, 1).unwrap().len(),
            count_top_factorizations(k),
            "k = {k}"
        );
    }
}

#[test]
fn serialization_is_bit_exact() {
    for m in 1..=2 {
        for k in 1..=5 {
            let f = f_k_residue::<Rational>(k, m).unwrap();
            let text = f.to_json();
            let back = QPoly::from_json(&text).unwrap();
            assert_eq!(back, f);
            assert_eq!(back.to_json(), text);
        }
    }
}

fn small_poly(ctx: &Context, terms: &[(u8, u8, i8)]) -> ZPoly {
    ZPoly::from_terms(
        ctx,
        terms
            .iter()
            .map(|&(a, b, c)| {
                let mono = Monomial::from_exponents(&[u32::from(a % 3), u32::from(b % 3)]);
                (mono, Integer::from(c))
            })
            .collect::<Vec<_>>(),
    )
}

fn terms() -> impl Strategy<Value = Vec<(u8, u8, i8)>> {
    proptest::collection::vec((any::<u8>(), any::<u8>(), -5i8..=5), 0..5)
}

proptest! {
    #[test]
    fn distributive(a in terms(), b in terms(), c in terms()) {
        let ctx = Context::pq(1);
        let (f, g, h) = (small_poly(&ctx, &a), small_poly(&ctx, &b), small_poly(&ctx, &c));
        prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
        prop_assert_eq!(&f * &g, &g * &f);
    }

    #[test]
    fn composition_matches_power_sum(outer in proptest::collection::vec(terms(), 1..6),
                                     inner in proptest::collection::vec(terms(), 1..5)) {
        let ctx = Context::pq(1);
        let n = 5;
        let s = ZSeries::from_coeffs(&ctx, outer.iter().map(|t| small_poly(&ctx, t)).collect())
            .unwrap()
            .extend_order(n);
        let mut inner_coeffs: Vec<ZPoly> = inner.iter().map(|t| small_poly(&ctx, t)).collect();
        inner_coeffs.insert(0, ZPoly::zero(&ctx));
        let u = ZSeries::from_coeffs(&ctx, inner_coeffs).unwrap().extend_order(n).truncate(n);
        let mut expected = ZSeries::zero(&ctx, n);
        let mut power = ZSeries::one(&ctx, n);
        for i in 0..=n {
            expected = &expected + &(&ZSeries::constant(s.coeff(i).clone(), n) * &power);
            power = &power * &u;
        }
        prop_assert_eq!(s.compose(&u).unwrap(), expected);
    }
}

#[test]
fn full_cycle_is_a_single_cycle() {
    for k in 1..=9 {
        assert_eq!(Permutation::full_cycle(k).kappa(), 1);
    }
}
