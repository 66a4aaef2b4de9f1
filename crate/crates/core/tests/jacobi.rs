mod common;

use bispectral_core::exact::rat::{rat, rint, Rat};
use bispectral_core::exact::{Poly, RatFunc};
use bispectral_core::jacobi::*;
use bispectral_core::ndiff::{DiffOp, SignedRatFunc};
use bispectral_core::ParamSet;
use common::{int_params, random_params, rng};

fn one() -> DiffOp {
    DiffOp::identity()
}

#[test]
fn jacobi_coefficient_of_t() {
    let p = int_params(2, 1, rat(1, 3));
    let l = jacobi_l(&p);
    for n in -5..5 {
        let x = rint(n) + &p.eps;
        let s = &x + &x + p.ab();
        let expect = rint(2) * (&x + rint(1)) * (&x + p.ab() + rint(1))
            / ((&s + rint(1)) * (&s + rint(2)));
        assert_eq!(l.coeff(1).eval(n).unwrap(), expect);
    }
    assert!(l.is_regular());
}

#[test]
fn regularity_fails_without_deformation() {
    let p = ParamSet::unchecked(rat(1, 3), rat(1, 5), Rat::from_integer(0.into()));
    let l = jacobi_l(&p);
    assert!(!l.is_regular());
    let t = &DiffOp::t(1) + &DiffOp::scalar_rf(RatFunc::var());
    assert!(!t.is_regular());
}

#[test]
fn parameter_symmetries() {
    let mut r = rng(11);
    for i in 0..12 {
        let mut p = random_params(&mut r);
        if i % 3 == 0 {
            p.beta = rint(0);
            if p.check_conditions().is_err() {
                continue;
            }
        }
        let l = jacobi_l(&p);
        let q = ParamSet::unchecked(-p.alpha.clone(), -p.beta.clone(), &p.eps + p.ab());
        assert_eq!(jacobi_l(&q), l);
        let sw = ParamSet::unchecked(p.beta.clone(), p.alpha.clone(), p.eps.clone());
        let conj = jacobi_l(&sw).conjugate(&SignedRatFunc::sigma()).unwrap();
        assert_eq!(conj, -&l, "{p:?}");
        // L itself is reflection-invariant only when αβ = 0: I(a₀) − c₀ carries a factor αβ.
        let fixed = l.involution_i(&p).unwrap() == l;
        assert_eq!(fixed, (&p.alpha * &p.beta) == rint(0));
        let lt = jacobi_l_tilde(&p);
        assert_eq!(lt.involution_i(&p).unwrap(), lt);
    }
}

#[test]
fn gauge_conjugation() {
    for a in [-3, -1, 0, 1, 2, 4] {
        let p = int_params(a, 0, rat(2, 7));
        let phi = SignedRatFunc::from(phi_fn(&p).unwrap());
        let conj = jacobi_l(&p).conjugate(&phi.inverse().unwrap()).unwrap();
        assert_eq!(conj, jacobi_l_tilde(&p), "alpha = {a}");
    }
    let p = int_params(2, 0, rat(1, 3));
    let kappa = rat(4, 3) * rat(7, 3);
    let expect = RatFunc::from_poly(pochhammer_poly_n(&(p.eps.clone() + rint(1)), 2).scale(&kappa.recip()));
    assert_eq!(phi_fn(&p).unwrap(), expect);
    let p = int_params(-1, 0, rat(1, 3));
    assert_eq!(
        phi_fn(&p).unwrap(),
        RatFunc::new(Poly::constant(rat(1, 3)), Poly::linear(rat(1, 3)))
    );
}

fn pochhammer_poly_n(c: &Rat, k: usize) -> Poly {
    bispectral_core::exact::pochhammer_poly(c, k)
}

#[test]
fn factorizations() {
    let mut r = rng(7);
    let mut done = 0;
    while done < 20 {
        let p = random_params(&mut r);
        if p.alpha == rint(0) || p.alpha == rint(-1) {
            continue;
        }
        done += 1;
        let l = jacobi_l(&p);
        let lm1 = &l - &one();
        let lp1 = &l + &one();
        let dm = |q: &ParamSet, k| contiguous_d(k, q).unwrap();
        let (am, ap) = (p.shifted(-1, 0), p.shifted(1, 0));
        let (bm, bp) = (p.shifted(0, -1), p.shifted(0, 1));
        assert_eq!(dm(&am, Contiguous::AlphaUp).compose(&dm(&p, Contiguous::AlphaDown)), lm1);
        assert_eq!(dm(&ap, Contiguous::AlphaDown).compose(&dm(&p, Contiguous::AlphaUp)), lm1);
        assert_eq!(dm(&bm, Contiguous::BetaUp).compose(&dm(&p, Contiguous::BetaDown)), lp1);
        assert_eq!(dm(&bp, Contiguous::BetaDown).compose(&dm(&p, Contiguous::BetaUp)), lp1);
    }
}

#[test]
fn kernel_ladders() {
    for a in [-3i64, -2, -1, 1, 2, 3] {
        for b in [-3i64, -2, -1, 1, 2, 3] {
            let p = int_params(a, b, rat(1, 3));
            let l = jacobi_l(&p);
            for (fam, sh) in [
                (Family::PhiPlus, -1),
                (Family::PsiPlus, -1),
                (Family::PhiMinus, 1),
                (Family::PsiMinus, 1),
            ] {
                let lim = if fam.is_plus() { a.abs() } else { b.abs() } as usize;
                let op = &l + &DiffOp::constant(rint(sh));
                let mut prev = SignedRatFunc::zero();
                for i in 0..lim {
                    let f = kernel_fn(KernelKind::new(fam, i), &p).unwrap();
                    assert_eq!(op.apply(&f), prev, "{fam:?} {i} a={a} b={b}");
                    for n in -4..4 {
                        assert_eq!(f.eval(n), kernel_fn_eval(KernelKind::new(fam, i), &p, n));
                    }
                    prev = f;
                }
            }
        }
    }
}

#[test]
fn worked_example_kernels() {
    let p = int_params(2, 0, rat(1, 3));
    let e = &p.eps;
    let kappa = (e + rint(1)) * (e + rint(2));
    let k = |f, i| kernel_fn(KernelKind::new(f, i), &p).unwrap();
    let x2 = pochhammer_poly_n(&(e + rint(1)), 2);
    assert_eq!(k(Family::PhiPlus, 0), RatFunc::from_poly(x2.scale(&kappa.recip())).into());
    let x4 = pochhammer_poly_n(e, 4);
    assert_eq!(
        k(Family::PhiPlus, 1),
        RatFunc::from_poly(x4.scale(&(rint(6) * &kappa).recip())).into()
    );
    assert_eq!(k(Family::PsiPlus, 0), RatFunc::new(Poly::constant(kappa.clone()), x2).into());
    assert_eq!(k(Family::PsiPlus, 1), SignedRatFunc::constant(-kappa / rint(2)));
    assert_eq!(k(Family::PhiMinus, 0), SignedRatFunc::sigma());
    for n in -3..3 {
        assert_eq!(kernel_fn_eval(KernelKind::new(Family::PhiPlus, 0), &p, 0), Some(rint(1)));
        assert_eq!(kernel_fn_eval(KernelKind::new(Family::PsiPlus, 0), &p, 0), Some(rint(1)));
        let _ = n;
    }
    assert!(kernel_fn(KernelKind::new(Family::PsiPlus, 2), &p).is_err());
    let q = ParamSet::new(rat(1, 2), rint(0), rat(1, 3)).unwrap();
    assert!(kernel_fn(KernelKind::new(Family::PhiPlus, 0), &q).is_err());
}

#[test]
fn series_coefficients() {
    let p = int_params(2, 0, rat(1, 3));
    let c = p_series_coeffs(&p, 3).unwrap();
    let phi = phi_fn(&p).unwrap();
    assert_eq!(c[0], phi);
    let lin = &RatFunc::from_poly(Poly::new(vec![-p.eps.clone(), rint(-1)]))
        * &RatFunc::from_poly(Poly::linear(&p.eps + rint(3)));
    assert_eq!(c[1], (&phi * &lin).scale(&rat(1, 3)));
    for n in -4..4 {
        let at = p_series_coeffs_at(&p, n, 3).unwrap();
        for j in 0..=3 {
            assert_eq!(c[j].eval(&rint(n)).unwrap(), at[j]);
        }
    }
    let q = int_params(-1, 1, rat(1, 3));
    let c = p_series_coeffs(&q, 4).unwrap();
    assert!(c[0].is_zero());
    for n in -4..4 {
        assert!(!c[1].eval(&rint(n)).unwrap().eq(&rint(0)));
    }
}
