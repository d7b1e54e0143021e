//! Property suites for the window module: partition of unity, symmetry,
//! root soundness, and catalog correctness on randomized factored windows.

use gaborframe_core::poly::Poly;
use gaborframe_core::rat::{rat, rat_int, Rat};
use gaborframe_core::window::{make_bspline, make_piecewise, Piece};
use gaborframe_core::ExactReal;

use num_traits::{One, Zero};
use proptest::prelude::*;

/// Finite partition-of-unity sum: the support is compact, so only shifts
/// with |x - n| <= N/2 contribute.
fn pou_sum(n: i64, x: &Rat) -> Rat {
    let w = make_bspline(n).unwrap();
    let mut total = Rat::zero();
    let lo = (x - rat(n, 2)).floor().to_integer();
    let hi = (x + rat(n, 2)).ceil().to_integer();
    let mut k = lo;
    while k <= hi {
        total += w.eval(&(x - Rat::from_integer(k.clone())));
        k += 1;
    }
    total
}

#[test]
fn bspline_partition_of_unity_exact() {
    for n in 2..=6 {
        for i in 0..=200 {
            // Rational samples across several periods.
            let x = rat(i, 40) - rat_int(3);
            assert_eq!(pou_sum(n, &x), Rat::one(), "N = {n}, x = {x}");
        }
    }
}

#[test]
fn bspline_symmetry_exact() {
    for n in 2..=6 {
        let w = make_bspline(n).unwrap();
        for i in 0..100 {
            let x = rat(7 * i + 1, 97);
            assert_eq!(w.eval(&x), w.eval(&-x.clone()), "N = {n}, i = {i}");
        }
    }
}

#[test]
fn root_soundness_derivatives() {
    // For each cataloged zero with one-sided order m in a piece, the
    // owning piece's derivatives vanish below m and not at m.
    let poly = &(&Poly::from_coeffs(vec![rat(81, 100), rat_int(0), rat_int(-1)])
        * &Poly::linear(rat(1, 5), rat_int(-1)))
        * &Poly::linear(rat(1, 5), rat_int(-1));
    // (81/100 - x^2)(1/5 - x)^2: zero at 1/5 with multiplicity 2.
    let w = make_piecewise(
        rat(9, 10),
        vec![Piece {
            lo: rat(-9, 10),
            hi: rat(9, 10),
            poly: poly.clone(),
        }],
    )
    .unwrap();
    for z in w.zero_catalog() {
        let Some(loc) = z.location.as_rational() else {
            continue;
        };
        let m = z.multiplicity;
        let mut d = poly.clone();
        for k in 0..m {
            assert!(d.eval(loc).is_zero(), "derivative {k} at {loc}");
            d = d.derivative();
        }
        assert!(!d.eval(loc).is_zero(), "derivative {m} at {loc}");
    }
    assert_eq!(
        w.zero_at(&ExactReal::rational(rat(1, 5))).unwrap().multiplicity,
        2
    );
}

#[test]
fn breakpoint_continuity_exact() {
    for n in 2..=6 {
        let w = make_bspline(n).unwrap();
        for pair in w.pieces().windows(2) {
            assert_eq!(
                pair[0].poly.eval(&pair[0].hi),
                pair[1].poly.eval(&pair[1].lo)
            );
        }
    }
}

/// Strategy: a window on [-1, 1] built as (1 - x^2) * prod (x - r_i) with
/// planted rational roots r_i strictly inside ]-1, 1[.
fn planted_window() -> impl Strategy<Value = (Vec<Rat>, gaborframe_core::Window)> {
    proptest::collection::vec((-90i64..=90, 1i64..=3), 0..4).prop_map(|raw| {
        let mut roots: Vec<Rat> = raw
            .iter()
            .map(|(num, scale)| rat(*num, 100 * *scale))
            .collect();
        roots.sort();
        roots.dedup();
        let mut poly = Poly::from_i64(&[1, 0, -1]);
        for r in &roots {
            poly = &poly * &Poly::linear(-r.clone(), rat_int(1));
        }
        let w = make_piecewise(
            rat_int(1),
            vec![Piece {
                lo: rat_int(-1),
                hi: rat_int(1),
                poly,
            }],
        )
        .unwrap();
        (roots, w)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn catalog_matches_planted_roots((roots, w) in planted_window()) {
        let catalog: Vec<Rat> = w
            .zero_catalog()
            .iter()
            .map(|z| z.location.as_rational().unwrap().clone())
            .collect();
        // Catalog = planted roots plus the support endpoints.
        let mut expect = roots.clone();
        expect.insert(0, rat_int(-1));
        expect.push(rat_int(1));
        expect.sort();
        expect.dedup();
        prop_assert_eq!(catalog, expect);
        // interior_positive iff no planted roots.
        prop_assert_eq!(w.interior_positive(), roots.is_empty());
    }

    #[test]
    fn eval_matches_horner((_, w) in planted_window(), num in -150i64..150) {
        let x = rat(num, 100);
        let direct = if num.abs() >= 100 {
            Rat::zero()
        } else {
            w.pieces()[0].poly.eval(&x)
        };
        prop_assert_eq!(w.eval(&x), direct);
    }

    #[test]
    fn mirror_involution((_, w) in planted_window(), num in -99i64..=99) {
        let x = rat(num, 100);
        let m = w.mirror();
        prop_assert_eq!(m.eval(&-x.clone()), w.eval(&x));
        prop_assert_eq!(m.mirror().eval(&x), w.eval(&x));
    }
}

#[test]
fn scaling_preserves_catalog_positivity_flips() {
    let w = make_bspline(3).unwrap();
    let s = w.scale(&rat(-7, 3));
    assert_eq!(s.zero_catalog().len(), w.zero_catalog().len());
    assert!(w.interior_positive());
    assert!(!s.interior_positive());
    assert!(s.scale(&rat(-1, 2)).interior_positive());
}
