mod common;

use common::P;
use flipchain_core::betti::{
    blowup_consistency, chamber_betti, flip_difference, fm_poincare_closed, fm_poincare_recursive, jacobian_poincare,
    mcon_poincare, sym_product_poincare, terminal_poincare, u2d_from_bundle, u2d_poincare, BettiError, BettiReport,
};
use flipchain_core::chambers::{first_index, last_index, moduli_dim};
use flipchain_core::exactpoly::LaurentPoly;

#[test]
fn sym_products_match_direct_count() {
    for g in 1..=5 {
        for n in 0..=9 {
            assert_eq!(P::of(&sym_product_poincare(n as usize, g)), common::sym(n, g), "n={n} g={g}");
        }
    }
}

#[test]
fn sym_products_are_palindromic_of_degree_2n() {
    for g in 1..=4 {
        for n in 1..=6usize {
            let p = sym_product_poincare(n, g);
            assert!(p.is_palindromic());
            assert_eq!(p.max_exponent(), Some(2 * n as i64));
        }
    }
}

#[test]
fn euler_characteristic_of_sym_products() {
    // χ(S^n X) = (−1)^n C(2g−2, n)
    for g in 2..=4 {
        for n in 0..=6i64 {
            let chi = sym_product_poincare(n as usize, g).eval_at_minus_one();
            let sign = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(chi, (sign * common::binom(2 * g - 2, n)).into());
        }
    }
}

#[test]
fn chamber_polynomials_match_oracle() {
    for g in 2..=4 {
        for d in -12..=-1 {
            for i in first_index(d)..=last_index(d) {
                let want = common::fm(i, d, g);
                assert_eq!(P::of(&fm_poincare_closed(i, d, g).unwrap()), want, "closed i={i} d={d} g={g}");
                assert_eq!(P::of(&fm_poincare_recursive(i, d, g).unwrap()), want, "recursive i={i} d={d} g={g}");
            }
        }
    }
}

#[test]
fn index_ranges_match_oracle() {
    for d in -30..=-1 {
        assert_eq!(first_index(d), common::first_index(d));
    }
}

#[test]
fn terminal_is_projective_bundle_over_jacobian() {
    for g in 2..=5 {
        for d in -10..=-1 {
            assert_eq!(P::of(&terminal_poincare(d, g).unwrap()), common::terminal(d, g));
        }
    }
}

#[test]
fn flip_differences_telescope() {
    let (d, g) = (-7, 3);
    for j in first_index(d)..last_index(d) {
        let diff = flip_difference(j, d, g).unwrap();
        let step = fm_poincare_closed(j + 1, d, g).unwrap() - fm_poincare_closed(j, d, g).unwrap();
        assert_eq!(diff, step, "j={j}");
    }
    let last = flip_difference(last_index(d), d, g).unwrap();
    assert_eq!(last, -terminal_poincare(d, g).unwrap());
}

#[test]
fn total_betti_number_at_t_equals_one() {
    // P(1) telescopes through the oracle as well
    for g in 2..=3 {
        for d in -9..=-3 {
            for i in first_index(d)..=last_index(d) {
                let got = fm_poincare_closed(i, d, g).unwrap().eval_at_one();
                let want: i128 = common::fm(i, d, g).0.iter().sum();
                assert_eq!(got, want.into());
            }
        }
    }
}

#[test]
fn u2d_genus_two_expansion() {
    let fixed = P::new(vec![1, 0, 1, 4, 1, 0, 1]);
    let want = common::jac(2).mul(&fixed);
    assert_eq!(P::of(&u2d_poincare(2).unwrap()), want);
}

#[test]
fn u2d_and_mcon_match_oracle() {
    for g in 2..=5 {
        assert_eq!(P::of(&u2d_poincare(g).unwrap()), common::u2d(g));
        assert_eq!(P::of(&mcon_poincare(g).unwrap()), common::mcon(g));
    }
}

#[test]
fn u2d_dimension_and_duality() {
    // dim U(2,d) = 4g − 3
    for g in 2..=5 {
        let p = u2d_poincare(g).unwrap();
        assert_eq!(p.max_exponent(), Some(2 * (4 * g - 3)));
        assert!(p.is_palindromic());
        assert!(p.has_nonnegative_coeffs());
    }
}

#[test]
fn via_bundle_agrees_beyond_the_threshold() {
    for g in 2..=4 {
        let mut d = -(4 * g - 3);
        while d >= -(4 * g + 7) {
            assert_eq!(u2d_from_bundle(g, d).unwrap(), u2d_poincare(g).unwrap(), "g={g} d={d}");
            d -= 2;
        }
    }
}

#[test]
fn via_bundle_rejects_bad_inputs() {
    assert!(matches!(u2d_from_bundle(2, -4), Err(BettiError::PreconditionFailed(_))));
    assert!(matches!(u2d_from_bundle(2, -3), Err(BettiError::PreconditionFailed(_))));
    assert!(matches!(u2d_from_bundle(2, 3), Err(BettiError::PreconditionFailed(_))));
}

#[test]
fn blowup_matches_oracle() {
    for g in 2..=4 {
        for d in -12..=-3 {
            let b = blowup_consistency(d, g).unwrap();
            assert!(b.consistent, "d={d} g={g}: {}", b.difference());
            let c = -d + g - 3;
            let center = common::jac(g).mul(&P::new(vec![1, 2 * g as i128, 1]));
            let want = common::terminal(d, g).add(&center.mul(&common::proj(c - 1).sub(&P::one())));
            assert_eq!(P::of(&b.predicted), want);
            assert_eq!(P::of(&b.computed), common::fm(-d - 2, d, g));
        }
    }
    assert!(matches!(blowup_consistency(-2, 2), Err(BettiError::PreconditionFailed(_))));
}

#[test]
fn chamber_entries_are_smooth_shadows() {
    for g in 2..=3 {
        for d in -10..=-1 {
            for i in first_index(d)..=last_index(d) {
                assert!(chamber_betti(i, d, g).unwrap().is_smooth_shadow(moduli_dim(d, g)));
            }
        }
    }
}

#[test]
fn report_for_odd_and_even_degree() {
    let odd = BettiReport::build(-5, 2, None).unwrap();
    assert!(odd.consistent());
    assert_eq!(odd.entries.len(), 3);
    assert_eq!(odd.u2d.as_ref().unwrap().agree, Some(true));
    let even = BettiReport::build(-6, 2, None).unwrap();
    assert!(even.u2d.is_none() && even.mcon.is_none());
    let single = BettiReport::build(-6, 2, Some(4)).unwrap();
    assert_eq!(single.entries.len(), 1);
    assert!(BettiReport::build(-6, 2, Some(9)).is_err());
    assert!(BettiReport::build(-6, 1, None).is_err());
}

#[test]
fn report_json_round_trip() {
    let r = BettiReport::build(-7, 3, None).unwrap();
    let text = serde_json::to_string(&r).unwrap();
    let back: BettiReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, r);
}

#[test]
fn jacobian_is_binomial() {
    for g in 1..=6 {
        assert_eq!(P::of(&jacobian_poincare(g)), common::jac(g));
    }
    assert_eq!(jacobian_poincare(2), LaurentPoly::from_i64s(0, &[1, 4, 6, 4, 1]));
}
