use bispectral_core::example::*;
use bispectral_core::exact::rat::{rat, rint};
use bispectral_core::zdiff::DiffOpZ;

fn names(c: &[Check]) -> Vec<(&str, bool)> {
    c.iter().map(|c| (c.name.as_str(), c.ok)).collect()
}

#[test]
fn kernel_closed_forms_and_gauge() {
    let r = reproduce(&rat(1, 3), &rint(2), &rat(5, 7), 40, (-6, 6), false).unwrap();
    let p = names(&r.printed);
    for n in ["phi_plus_0", "phi_plus_1", "psi_plus_0", "psi_plus_1"] {
        assert!(p.contains(&(n, true)), "{n}");
    }
    assert!(r.derived_ok(), "{:?}", r.derived);
    // the printed F forms and the display built from them do not match
    assert!(p.contains(&("F_in_terms_of_lambda", false)));
    assert!(p.contains(&("P_bar_display", false)));
}

#[test]
fn published_dual_operator() {
    for (b0, b1) in [(rint(2), rat(5, 7)), (rat(-3, 4), rat(1, 2))] {
        let r = reproduce(&rat(1, 3), &b0, &b1, 40, (-6, 6), false).unwrap();
        assert!(r.corrected_dual.ok);
        assert!(r.corrected_dual.verified_order >= 40);
        assert!(!r.printed_dual.ok);
        assert!(r.printed_dual.points.iter().all(|p| p.first_failure == Some(0)));
    }
}

#[test]
fn corrections_touch_two_coefficients() {
    let (e, b0, b1) = (rat(1, 3), rint(2), rat(5, 7));
    let d = &printed_b(&e, &b0, &b1) - &corrected_b(&e, &b0, &b1);
    let orders: Vec<usize> = d.terms().map(|(k, _)| k).collect();
    assert_eq!(orders, vec![2, 6]);
    let p = printed_b(&e, &b0, &b1);
    assert_eq!(p.coeff(6), -p.coeff(1));
    assert_ne!(corrected_b(&e, &b0, &b1), DiffOpZ::zero());
}

#[test]
fn eigenvalue_polynomial() {
    let e = rat(1, 3);
    let k2 = kappa(&e).pow(2);
    let b0 = rint(2);
    let h = printed_h(&e, &b0, &rat(5, 7));
    assert_eq!(h.degree(), Some(5));
    // h(x − 2): coefficient of x³ is 10B0κ² + 8
    let back = h.shift(&rint(-2));
    assert_eq!(back.coeff(3), rint(10) * &b0 * &k2 + rint(8));
    assert_eq!(kappa(&e), rat(28, 9));
}
