//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Every identity is checked with exact arithmetic, so a residual either
//! vanishes or the line reads FAIL. Two criteria are stated in a form that
//! does not hold literally (see `KNOWN`); for those the line still reads FAIL,
//! and the run only succeeds if the failure has exactly the documented shape.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use bispectral_core::bispectral::*;
use bispectral_core::darboux::*;
use bispectral_core::example::reproduce;
use bispectral_core::exact::rat::{rat, rint, Rat};
use bispectral_core::exact::{Poly, RatFunc};
use bispectral_core::jacobi::*;
use bispectral_core::ndiff::op::integer_zeros;
use bispectral_core::ndiff::{DiffOp, SignedRatFunc};
use bispectral_core::params::substitute_lambda;
use bispectral_core::series::*;
use bispectral_core::zdiff::{DiffOpZ, FreeElem, Letter};
use bispectral_core::ParamSet;
use common::{int_params, random_params, random_spec, rng, small_rat};
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Criteria whose literal statement fails, with the failure shape checked.
const KNOWN: [usize; 2] = [4, 5];

struct Outcome {
    pass: bool,
    detail: String,
    /// For a failing line: whether the failure matches its known diagnosis.
    explained: bool,
}

impl Outcome {
    fn pass(detail: impl Into<String>) -> Self {
        Outcome { pass: true, detail: detail.into(), explained: false }
    }
}

fn run(id: usize, title: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let res = catch_unwind(AssertUnwindSafe(f));
    let took = start.elapsed();
    let (mut out, panicked) = match res {
        Ok(o) => (o, false),
        Err(e) => {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            (Outcome { pass: false, detail: format!("panicked: {msg}"), explained: false }, true)
        }
    };
    if let Some(lim) = limit {
        if took > lim && out.pass {
            out.pass = false;
            out.detail = format!("took {:.1} s, limit {} s", took.as_secs_f64(), lim.as_secs());
        }
    }
    let status = if out.pass { "PASS" } else { "FAIL" };
    println!("C{id} {status} {title} ({:.2} s): {}", took.as_secs_f64(), out.detail);
    if !out.pass && out.explained && !panicked && KNOWN.contains(&id) {
        println!("   known: literal statement does not hold; diagnosis confirmed");
        return true;
    }
    out.pass
}

fn one() -> DiffOp {
    DiffOp::identity()
}

fn factorizations() -> Outcome {
    let mut r = rng(101);
    let mut done = 0;
    while done < 20 {
        let p = random_params(&mut r);
        if p.alpha == rint(0) || p.alpha == rint(-1) {
            continue;
        }
        let l = jacobi_l(&p);
        let (lm1, lp1) = (&l - &one(), &l + &one());
        let d = |q: &ParamSet, k| contiguous_d(k, q).unwrap();
        let (am, ap) = (p.shifted(-1, 0), p.shifted(1, 0));
        let (bm, bp) = (p.shifted(0, -1), p.shifted(0, 1));
        let checks = [
            d(&am, Contiguous::AlphaUp).compose(&d(&p, Contiguous::AlphaDown)) == lm1,
            d(&ap, Contiguous::AlphaDown).compose(&d(&p, Contiguous::AlphaUp)) == lm1,
            d(&bm, Contiguous::BetaUp).compose(&d(&p, Contiguous::BetaDown)) == lp1,
            d(&bp, Contiguous::BetaDown).compose(&d(&p, Contiguous::BetaUp)) == lp1,
        ];
        if !checks.iter().all(|&c| c) {
            return Outcome { pass: false, detail: format!("{p:?}: {checks:?}"), explained: false };
        }
        done += 1;
    }
    Outcome::pass("4 factorizations for 20 random (α, β, ε)")
}

fn ladders() -> Outcome {
    let mut count = 0;
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
                let mut fs = Vec::new();
                for i in 0..lim {
                    let f = kernel_fn(KernelKind::new(fam, i), &p).unwrap();
                    if op.apply(&f) != prev {
                        return Outcome {
                            pass: false,
                            detail: format!("{fam:?} {i} α={a} β={b}"),
                            explained: false,
                        };
                    }
                    count += 1;
                    prev = f.clone();
                    fs.push(f);
                    let offs: Vec<i64> = (0..fs.len() as i64).collect();
                    let zs = integer_zeros(&casoratian(&fs, &offs));
                    if !zs.is_empty() {
                        return Outcome {
                            pass: false,
                            detail: format!("Casoratian of {fam:?} 0..={i} vanishes at {zs:?}"),
                            explained: false,
                        };
                    }
                }
            }
        }
    }
    Outcome::pass(format!("{count} ladder steps, Casoratians zero-free on ℤ"))
}

fn c3_cases() -> Vec<(i64, i64, usize, usize)> {
    let mut v = Vec::new();
    for (k, l) in [(1usize, 0usize), (2, 0), (0, 1), (1, 1), (2, 1), (2, 2)] {
        for sign in [1i64, -1] {
            v.push((sign * k as i64, sign * l as i64, k, l));
        }
    }
    v
}

fn bundles() -> Outcome {
    let mut r = rng(103);
    let mut n = 0;
    for (a, b, k, l) in c3_cases() {
        for eps in [rat(1, 3), rat(2, 7)] {
            let spec = random_spec(&mut r, int_params(a, b, eps), k, l);
            let bd = DarbouxBundle::new(&spec).unwrap();
            let l0 = bd.l0();
            let checks = [
                ("L∘P = P∘L₀", bd.l.compose(&bd.p) == bd.p.compose(&l0)),
                ("Q∘P = q(L₀)", bd.q.compose(&bd.p) == l0.poly_eval(&bd.eigen_poly)),
                ("P∘Q = q(L)", bd.p.compose(&bd.q) == bd.l.poly_eval(&bd.eigen_poly)),
                ("formulas", l_from_formulas(&spec, &bd.dets).unwrap() == bd.l),
                ("regular", bd.l.is_regular()),
            ];
            if let Some((name, _)) = checks.iter().find(|c| !c.1) {
                return Outcome { pass: false, detail: format!("{name} fails for {spec:?}"), explained: false };
            }
            n += 1;
        }
    }
    Outcome::pass(format!("{n} specs, 5 identities each"))
}

fn involution() -> Outcome {
    let mut r = rng(107);
    let mut literal_failures = Vec::new();
    let mut n = 0;
    for (a, b, k, l) in c3_cases() {
        for eps in [rat(1, 3), rat(2, 7)] {
            let spec = random_spec(&mut r, int_params(a, b, eps), k, l);
            let mut bd = DarbouxBundle::new(&spec).unwrap();
            if spec.order() % 2 == 1 {
                bd = lift_via_contiguous(&bd, LiftDirection::preferred(&spec)).unwrap().bundle;
            }
            let p = bd.params().clone();
            let l0 = jacobi_l(&p);
            let lt = jacobi_l_tilde(&p);
            let pb = build_p_bar(&bd.spec).unwrap();
            let s = pb.s;
            let (ai, bi) = (p.alpha_int().unwrap(), p.beta_int().unwrap());
            let sign = if (s + (ai + bi) * bd.spec.l as i64) % 2 == 0 { 1 } else { -1 };
            let phi = SignedRatFunc::from(phi_fn(&p).unwrap());
            let back = DiffOp::t(-s)
                .compose(&pb.pbar.conjugate(&phi).unwrap())
                .left_mul(&pb.rho.clone().into());
            let checks = [
                ("I(L̃) = L̃", lt.involution_i(&p).unwrap() == lt),
                ("sign law", pb.sign == sign && pb.ptilde.involution_i(&p).unwrap() == pb.ptilde.scale(&rint(sign))),
                ("I(P̄) = P̄", pb.pbar.involution_i(&p).unwrap() == pb.pbar),
                ("ρ relation", back == bd.p),
            ];
            if let Some((name, _)) = checks.iter().find(|c| !c.1) {
                return Outcome { pass: false, detail: format!("{name} fails for {spec:?}"), explained: false };
            }
            let fixed = l0.involution_i(&p).unwrap() == l0;
            let mixed = ai != 0 && bi != 0;
            if fixed == mixed {
                // I(L₀) = L₀ must hold exactly when αβ = 0
                return Outcome {
                    pass: false,
                    detail: format!("I(L₀) = L₀ is {fixed} for α={ai}, β={bi}"),
                    explained: false,
                };
            }
            if !fixed {
                literal_failures.push(format!("({ai},{bi})"));
            }
            n += 1;
        }
    }
    literal_failures.dedup();
    if literal_failures.is_empty() {
        return Outcome::pass(format!("{n} specs"));
    }
    Outcome {
        pass: false,
        detail: format!(
            "I(L̃) = L̃, sign law, I(P̄) = P̄ and ρ relation hold for all {n} specs; \
             I(L₀) ≠ L₀ when αβ ≠ 0, (α,β) ∈ {{{}}}: the T⁻¹ coefficients differ by 2αβ/(…)",
            literal_failures.join(", ")
        ),
        explained: true,
    }
}

fn golden_example() -> Outcome {
    let mut lines = Vec::new();
    let mut explained = true;
    let mut literal = true;
    for (b0, b1) in [(rint(2), rat(5, 7)), (rat(-3, 4), rat(1, 2))] {
        let rep = reproduce(&rat(1, 3), &b0, &b1, 40, (-6, 6), false).unwrap();
        let failed: Vec<&str> = rep.printed.iter().filter(|c| !c.ok).map(|c| c.name.as_str()).collect();
        literal &= failed.is_empty();
        // kernel closed forms match as printed; F, P̄ and B deviate; the
        // corrected forms hold with zero residual
        explained &= failed == ["F_in_terms_of_lambda", "P_bar_display", "B_and_h"]
            && rep.derived_ok()
            && rep.corrected_dual.ok
            && rep.corrected_dual.verified_order >= 40
            && rep.printed_dual.points.iter().all(|p| p.first_failure == Some(0));
        let det = rep
            .printed
            .iter()
            .filter(|c| !c.ok)
            .map(|c| format!("{}{}", c.name, c.detail.as_ref().map(|d| format!(" [{d}]")).unwrap_or_default()))
            .collect::<Vec<_>>();
        lines.push(format!("B0={} B1={}: printed mismatches {}", rep.b0, rep.b1, det.join("; ")));
    }
    if literal {
        return Outcome::pass("printed h, B, kernel closed forms, F and P̄ all match");
    }
    Outcome {
        pass: false,
        detail: format!(
            "{}; kernel closed forms match; corrected B (∂⁶, ∂² terms), F and P̄ hold exactly through order 40",
            lines.join(" | ")
        ),
        explained,
    }
}

fn duals() -> Outcome {
    let mut r = rng(21);
    let specs = [
        ("worked example", worked_example_spec(rat(1, 3), rint(2), rat(5, 7)).unwrap()),
        ("(1,1,1,1)", random_spec(&mut r, int_params(1, 1, rat(2, 7)), 1, 1)),
    ];
    let opts = DualOptions::default();
    let mut parts = Vec::new();
    for (name, spec) in specs {
        let bd = build_bundle(&spec).unwrap();
        let c = match build_dual(&bd, &opts) {
            Ok(c) => c,
            Err(e) => return Outcome { pass: false, detail: format!("{name}: {e}"), explained: false },
        };
        let cert = &c.certificate;
        let fam = psi_family(&c.working, opts.order + 24);
        let rep = verify_eigen_z_with(&cert.b, &cert.eigen, cert.shift, &cert.lambda_params, &fam, opts.window);
        let ino = verify_ino(&c.g_p, &c.g_q, &c.left.denom, &c.right.denom, &c.working.eigen_poly, c.working.params());
        if !(rep.ok && rep.verified_order >= opts.order as i64 && cert.verified_order == opts.order as i64 && ino.ok) {
            return Outcome {
                pass: false,
                detail: format!("{name}: eigen ok={} order={} ino={:?}", rep.ok, rep.verified_order, ino),
                explained: false,
            };
        }
        parts.push(format!(
            "{name}: order {} B, eigen degree {}",
            cert.b.order().unwrap_or(0),
            cert.eigen.degree().unwrap_or(0)
        ));
    }
    Outcome::pass(format!("{} (N = {}, n ∈ [{}, {}])", parts.join("; "), opts.order, opts.window.0, opts.window.1))
}

fn random_invariant(r: &mut ChaCha8Rng, p: &ParamSet) -> (DiffOp, bool) {
    let lt = jacobi_l_tilde(p);
    let pure = r.gen_bool(0.25);
    let top = if pure { 0 } else { r.gen_range(1..=2) };
    let mut x = DiffOp::zero();
    for j in 0..=top {
        let num = Poly::new((0..r.gen_range(1..=3)).map(|_| small_rat(r)).collect());
        let den = if r.gen_bool(0.5) { Poly::one() } else { Poly::linear(small_rat(r)) };
        if num.is_zero() {
            continue;
        }
        let coeff = substitute_lambda(&RatFunc::new(num, den), p);
        if coeff.den().eval(&rint(0)).is_zero() {
            continue;
        }
        x = &x + &lt.pow(j).left_mul(&SignedRatFunc::from(coeff));
    }
    (x, pure)
}

fn round_trips() -> Outcome {
    let mut r = rng(109);
    let mut done = 0;
    let mut pures = 0;
    while done < 25 {
        let p = random_params(&mut r);
        let (x, pure) = random_invariant(&mut r, &p);
        if x.is_zero() {
            continue;
        }
        let dl = decompose_left(&x, &p).unwrap();
        let dr = decompose_right(&x, &p).unwrap();
        let ok = dl.evaluate(&p).unwrap() == x
            && dr.evaluate(&p).unwrap() == x
            && (!pure || (dl.word.is_lambda_only() && dr.word.is_lambda_only()));
        if !ok {
            return Outcome { pass: false, detail: format!("{x:?}"), explained: false };
        }
        pures += pure as usize;
        done += 1;
    }
    let mut r = rng(8);
    for (a, b, k, l) in [(2, 0, 2, 0), (1, 1, 1, 1), (-2, 2, 2, 2)] {
        let p = int_params(a, b, rat(1, 3));
        let spec = random_spec(&mut r, p.clone(), k, l);
        let pb = build_p_bar(&spec).unwrap();
        let q = build_bundle(&spec).unwrap().eigen_poly;
        let qb = DiffOp::right_divide(&jacobi_l_tilde(&p).poly_eval(&q), &pb.pbar).unwrap();
        let ok = decompose_left(&pb.pbar, &p).unwrap().evaluate(&p).unwrap() == pb.pbar
            && decompose_right(&qb, &p).unwrap().evaluate(&p).unwrap() == qb;
        if !ok {
            return Outcome { pass: false, detail: format!("P̄/Q̄ for {spec:?}"), explained: false };
        }
    }
    Outcome::pass(format!("25 random operators ({pures} pure, Λ-only words), 3 P̄/Q̄ pairs"))
}

fn z_minus(c: i64) -> RatFunc {
    RatFunc::from_poly(Poly::linear(rint(-c)))
}

fn random_word(r: &mut impl Rng, len: usize) -> Vec<Letter> {
    (0..len).map(|_| if r.gen_bool(0.5) { Letter::Lambda } else { Letter::M }).collect()
}

fn fail(detail: String) -> Outcome {
    Outcome { pass: false, detail, explained: false }
}

fn series_layer() -> Outcome {
    let mut r = rng(113);
    let mut sets: Vec<ParamSet> = (0..5).map(|_| random_params(&mut r)).collect();
    sets.push(int_params(-1, 2, rat(1, 3)));
    sets.push(int_params(2, 0, rat(1, 3)));
    for p in &sets {
        let fam = hyp_family(p, 40);
        let rep = verify_eigen_n(&jacobi_l(p), &RatFunc::var(), &fam, (-6, 6));
        if !(rep.ok && rep.verified_order >= 40) {
            return fail(format!("L p = z p for {p:?}"));
        }
        let rep = verify_eigen_z(&b_op(&p.alpha, &p.beta), &Poly::x(), 0, &fam, (-6, 6));
        if !(rep.ok && rep.verified_order >= 39) {
            return fail(format!("B p = λ p for {p:?}"));
        }
    }
    // three-term relation of ₂F₁ in (a−1, b+1), (a, b), (a+1, b−1)
    for _ in 0..6 {
        let (a, b) = (small_rat(&mut r), small_rat(&mut r));
        let c = loop {
            let c = small_rat(&mut r);
            if !(c <= rint(0) && c.is_integer()) {
                break c;
            }
        };
        let b = if (&b - &a).is_integer() { b + rat(1, 7) } else { b };
        let (one, two) = (Rat::one(), rint(2));
        let f = hyp2f1_series(&a, &b, &c, 40).unwrap();
        let tf = hyp2f1_series(&(&a - &one), &(&b + &one), &c, 40).unwrap();
        let tmf = hyp2f1_series(&(&a + &one), &(&b - &one), &c, 40).unwrap();
        let ba = &b - &a;
        let k1 = &two * (&c - &a) * &b / (&ba * (&ba + &one));
        let k0 = (&a + &b - &one) * (-(&two * &c) + &a + &b + &one) / ((&ba - &one) * (&ba + &one));
        let km = &two * &a * (&c - &b) / (&ba * (&ba - &one));
        let rhs = apply_z(&DiffOpZ::z(), &f).unwrap();
        let res = tf.scale(&k1).add(&f.scale(&k0)).add(&tmf.scale(&km)).sub(&rhs);
        if !(res.is_zero() && res.trunc_order() >= 40) {
            return fail(format!("₂F₁ contiguity at a={a}, b={b}, c={c}"));
        }
    }
    for (a, b) in [(2, 1), (-2, 1), (1, -3), (3, 0)] {
        let p = int_params(a, b, rat(1, 3));
        let fam = hyp_family(&p, 40);
        let z1 = DiffOpZ::mult(z_minus(1).recip());
        let zp1 = DiffOpZ::mult(z_minus(-1).recip());
        for (kind, target, zf) in [
            (Contiguous::AlphaDown, p.shifted(-1, 0), None),
            (Contiguous::AlphaUp, p.shifted(1, 0), Some(&z1)),
            (Contiguous::BetaDown, p.shifted(0, -1), None),
            (Contiguous::BetaUp, p.shifted(0, 1), Some(&zp1)),
        ] {
            if target.check_conditions().is_err() {
                continue;
            }
            let d = contiguous_d(kind, &p).unwrap();
            let tfam = hyp_family(&target, 40);
            for n in -6..=6 {
                let mut lhs = apply_n(&d, &fam, n).unwrap();
                if let Some(g) = zf {
                    lhs = apply_z(g, &lhs).unwrap();
                }
                let res = lhs.sub(&tfam.get(n).unwrap());
                if !(res.is_zero() && res.trunc_order() >= 39) {
                    return fail(format!("{kind:?} ladder at α={a}, β={b}, n={n}"));
                }
            }
        }
    }
    let mut words = 0;
    for (a, b) in [(2, 0), (-1, 2), (1, 1)] {
        let p = int_params(a, b, rat(1, 3));
        let fam = hyp_tilde_family(&p, 30);
        for _ in 0..4 {
            let mut x = FreeElem::zero();
            for _ in 0..3 {
                let len = r.gen_range(0..4);
                x = x.free_add(&FreeElem::term(small_rat(&mut r), random_word(&mut r, len)));
            }
            let (dn, dz) = (x.eval_to_diffn(&p), x.eval_to_diffz_b(&p));
            for n in -5..=5 {
                let lhs = apply_n(&dn, &fam, n).unwrap();
                let rhs = apply_z(&dz, &fam.get(n).unwrap()).unwrap();
                let res = lhs.sub(&rhs);
                if !(res.is_zero() && res.trunc_order() >= 24) {
                    return fail(format!("word {x:?} at n={n}"));
                }
            }
            words += 1;
        }
    }
    Outcome::pass(format!("eigen relations, ₂F₁ contiguity, ladders at order 40; {words} words at order 30"))
}

fn main() {
    // `cargo test -- --list` and filters come through here too
    let args: Vec<String> = std::env::args().collect();
    if args.iter().any(|a| a == "--list") {
        println!("acceptance: test");
        return;
    }
    let secs = Duration::from_secs;
    let results = [
        run(1, "contiguous factorizations", Some(secs(5)), factorizations),
        run(2, "kernel ladders", Some(secs(10)), ladders),
        run(3, "Darboux bundles", Some(secs(60)), bundles),
        run(4, "involution machinery", None, involution),
        run(5, "worked example as printed", Some(secs(30)), golden_example),
        run(6, "dual certificates", Some(secs(120)), duals),
        run(7, "decomposition round trips", None, round_trips),
        run(8, "series layer", None, series_layer),
    ];
    let bad = results.iter().filter(|ok| !**ok).count();
    if bad > 0 {
        println!("{bad} criteria failed without a confirmed diagnosis");
        std::process::exit(1);
    }
}
