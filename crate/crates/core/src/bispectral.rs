//! Membership in the bispectral space, decomposition of reflection-invariant
//! operators into words in λ and L̃, and assembly of the dual differential
//! operator.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::darboux::{build_bundle, build_p_bar, lift_via_contiguous, DarbouxBundle, LiftDirection};
use crate::error::{Error, Result};
use crate::exact::rat::rint;
use crate::exact::{Poly, RatFunc};
use crate::jacobi::{b_op, jacobi_l_tilde, phi_fn};
use crate::ndiff::{integer_poles, DiffOp, SignedRatFunc};
use crate::params::{rewrite_in_lambda, ParamSet};
use crate::series::{psi_family, verify_eigen_z_with, EigenReport, LaurentSeries};
use crate::zdiff::{DiffOpZ, FreeElem};

/// Why an operator fails the membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MembershipWitness {
    CarriesSign,
    Pole { shift: i64, n: i64 },
    NotInvariant { shift: i64 },
}

/// Tests whether `φ⁻¹ M φ` is a pole-free, reflection-invariant, σ-free operator.
pub fn check_r_membership(m: &DiffOp, p: &ParamSet) -> Result<(bool, Option<MembershipWitness>)> {
    if !m.is_sigma_free() {
        return Ok((false, Some(MembershipWitness::CarriesSign)));
    }
    for (j, c) in m.terms() {
        if let Some(&n) = integer_poles(c).first() {
            return Ok((false, Some(MembershipWitness::Pole { shift: j, n })));
        }
    }
    let phi = SignedRatFunc::from(phi_fn(p)?);
    let conj = m.conjugate(&phi.inverse().expect("φ is nonzero"))?;
    let inv = conj.involution_i(p)?;
    if inv != conj {
        let shift = conj
            .terms()
            .map(|(j, _)| j)
            .chain(inv.terms().map(|(j, _)| j))
            .find(|&j| conj.coeff(j) != inv.coeff(j))
            .unwrap_or(0);
        return Ok((false, Some(MembershipWitness::NotInvariant { shift })));
    }
    Ok((true, None))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// `X = denom(λ)⁻¹ · eval(word)` (left) or `X = eval(word) · denom(λ)⁻¹` (right).
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub denom: Poly,
    pub word: FreeElem,
    pub side: Side,
}

impl Decomposition {
    /// Re-evaluates the decomposition as a difference operator.
    pub fn evaluate(&self, p: &ParamSet) -> Result<DiffOp> {
        let s = self.word.eval_to_diffn(p);
        let inv = SignedRatFunc::from(RatFunc::from_poly(self.denom.clone()).compose_poly(p.lambda().num()))
            .inverse()
            .ok_or_else(|| Error::Domain("zero denominator".into()))?;
        Ok(match self.side {
            Side::Left => s.left_mul(&inv),
            Side::Right => s.right_mul(&inv),
        })
    }
}

/// `Σ_j f(λ(n) − λ(n+j)) x_j(n) T^j`, i.e. `f(ad_λ)` applied to `x`.
fn ad_lambda_poly(f: &Poly, x: &DiffOp, p: &ParamSet) -> DiffOp {
    let lam = p.lambda();
    DiffOp::from_coeffs(x.terms().map(|(j, c)| {
        let diff = &lam - &lam.shift_int(j);
        let v = RatFunc::from_poly(f.clone()).compose_poly(diff.num());
        (j, c * &SignedRatFunc::from(v))
    }))
}

/// `ad_λ(ad_λ + 1) L̃` in the free algebra.
fn w_elem() -> FreeElem {
    let m = FreeElem::m();
    m.ad_lambda_pow(2).free_add(&m.ad_lambda_pow(1))
}

/// `Σ_m f_m ad_Λ^m(X)` in the free algebra.
fn ad_poly_free(f: &Poly, x: &FreeElem) -> FreeElem {
    let mut out = FreeElem::zero();
    for (m, c) in f.coeffs().iter().enumerate() {
        if !c.is_zero() {
            out = out.free_add(&x.ad_lambda_pow(m).scale(c));
        }
    }
    out
}

/// `c_d(n) = 2^d ∏_{i=1}^d (n+ε+α+i)(n+ε+α+β+i)`.
fn c_poly(d: usize, p: &ParamSet) -> Poly {
    let mut acc = Poly::constant(rint(1 << d));
    for i in 1..=d as i64 {
        acc = &acc * &Poly::linear(&p.eps + &p.alpha + rint(i));
        acc = &acc * &Poly::linear(&p.eps + p.ab() + rint(i));
    }
    acc
}

/// `f(n) ↦ f(−n − 2ε − α − β − 1)` on polynomials.
fn involute_poly(f: &Poly, p: &ParamSet) -> Poly {
    f.compose_affine(&rint(-1), &-(rint(2) * &p.eps + p.ab() + rint(1)))
}

/// Writes a reflection-invariant rational function as `A(λ)/B(λ)` with `B` monic.
fn scalar_in_lambda(r: &RatFunc, p: &ParamSet) -> Result<(Poly, Poly)> {
    let rho = rewrite_in_lambda(r, p)?;
    Ok((rho.num().clone(), rho.den().clone()))
}

fn lambda_poly_of(f: &Poly, p: &ParamSet) -> Result<Poly> {
    let r = rewrite_in_lambda(&RatFunc::from_poly(f.clone()), p)?;
    if !r.is_polynomial() {
        return Err(Error::Verification("expected a polynomial in λ".into()));
    }
    Ok(r.num().clone())
}

fn require_invariant(x: &DiffOp, p: &ParamSet) -> Result<(i64, Vec<(i64, RatFunc)>)> {
    if !x.is_sigma_free() {
        return Err(Error::Domain("operator carries (-1)^n".into()));
    }
    if x.involution_i(p)? != *x {
        return Err(Error::Domain("operator is not invariant under the reflection".into()));
    }
    let d = match x.support() {
        None => 0,
        Some((lo, hi)) => {
            if lo != -hi {
                return Err(Error::Domain("support is not symmetric".into()));
            }
            hi
        }
    };
    Ok((d, x.terms().map(|(j, c)| (j, c.as_plain().unwrap().clone())).collect()))
}

/// One peeling step: `(q_d, S_d word, S_d operator)` with the top coefficient of
/// `q_d(λ)⁻¹ S_d` (left) or `S_d q_d(λ)⁻¹` (right) equal to that of `x`.
fn peel(x: &DiffOp, d: i64, side: Side, p: &ParamSet) -> Result<(Poly, FreeElem, DiffOp)> {
    let du = d as usize;
    let top = x.rf(d);
    let (a, b) = (top.num().clone(), top.den().clone());
    let c = c_poly(du, p);
    let u = &b * &c;
    let (target, q) = match side {
        Side::Left => {
            // q(λ(n)) = u(n) u(In); A(n) = a(n) u(In)
            let q = lambda_poly_of(&(&u * &involute_poly(&u, p)), p)?;
            (&a * &involute_poly(&u, p), q)
        }
        Side::Right => {
            // v(m) = u(m − d): q(λ(m)) = v(m) v(Im); A(n) = a(n) v(I(n + d))
            let v = u.shift(&rint(-d));
            let q = lambda_poly_of(&(&v * &involute_poly(&v, p)), p)?;
            let vi = involute_poly(&v, p).shift(&rint(d));
            (&a * &vi, q)
        }
    };
    // n = −x/(2d) − (α+β+d+1)/2 − ε on the T^d component of ad_λ
    let two_d = rint(2 * d);
    let pd = target.compose_affine(
        &(-rint(1) / &two_d),
        &-((p.ab() + rint(d + 1)) / rint(2) + &p.eps),
    );
    let w = w_elem().pow(du);
    let word = ad_poly_free(&pd, &w);
    let w_op = w_elem().eval_to_diffn(p).pow(du);
    let s_op = ad_lambda_poly(&pd, &w_op, p);
    Ok((q, word, s_op))
}

/// Peels `g(λ) L̃^d` (left) or `L̃^d g(λ)` (right) when the top coefficient
/// allows a polynomial `g`.
fn direct_peel(x: &DiffOp, d: i64, side: Side, p: &ParamSet) -> Option<(Poly, FreeElem, DiffOp)> {
    let md = jacobi_l_tilde(p).pow(d as usize);
    let ratio = &x.rf(d) / &md.rf(d);
    let ratio = match side {
        Side::Left => ratio,
        Side::Right => ratio.shift_int(-d),
    };
    let g = rewrite_in_lambda(&ratio, p).ok()?;
    if !g.is_polynomial() {
        return None;
    }
    let g = g.num().clone();
    let gl = FreeElem::poly_in_lambda(&g);
    let mw = FreeElem::m().pow(d as usize);
    let gs = lambda_scalar(&g, p);
    Some(match side {
        Side::Left => (Poly::one(), gl.free_mul(&mw), md.left_mul(&gs)),
        Side::Right => (Poly::one(), mw.free_mul(&gl), md.right_mul(&gs)),
    })
}

fn lambda_scalar(f: &Poly, p: &ParamSet) -> SignedRatFunc {
    SignedRatFunc::from(RatFunc::from_poly(f.clone()).compose_poly(p.lambda().num()))
}

fn decompose(x: &DiffOp, p: &ParamSet, side: Side) -> Result<Decomposition> {
    let (d0, _) = require_invariant(x, p)?;
    // pieces: (denominator q, word S) with X = Σ q⁻¹ S (left) or Σ S q⁻¹ (right)
    let mut pieces: Vec<(Poly, FreeElem)> = Vec::new();
    let mut rest = x.clone();
    let mut d = d0;
    while d > 0 {
        if rest.coeff(d).is_zero() {
            d -= 1;
            continue;
        }
        let (q, word, s_op) = match direct_peel(&rest, d, side, p) {
            Some(x) => x,
            None => peel(&rest, d, side, p)?,
        };
        let qinv = lambda_scalar(&q, p).inverse().expect("q is nonzero");
        let piece = match side {
            Side::Left => s_op.left_mul(&qinv),
            Side::Right => s_op.right_mul(&qinv),
        };
        if piece.coeff(d) != rest.coeff(d) {
            return Err(Error::Verification(format!("peeling at order {d} missed the top coefficient")));
        }
        rest = &rest - &piece;
        if rest.support().is_some_and(|(lo, hi)| hi >= d || lo <= -d) {
            return Err(Error::Verification(format!("peeling at order {d} left the support unchanged")));
        }
        pieces.push((q, word));
        d -= 1;
    }
    if !rest.is_zero() {
        let (a, b) = scalar_in_lambda(&rest.rf(0), p)?;
        pieces.push((b, FreeElem::poly_in_lambda(&a)));
    }
    let mut denom = Poly::one();
    for (q, _) in &pieces {
        denom = denom.lcm(q);
    }
    let mut word = FreeElem::zero();
    for (q, s) in &pieces {
        let f = FreeElem::poly_in_lambda(&denom.exact_div(q).expect("lcm"));
        word = word.free_add(&match side {
            Side::Left => f.free_mul(s),
            Side::Right => s.free_mul(&f),
        });
    }
    let dec = Decomposition { denom, word, side };
    if dec.evaluate(p)? != *x {
        return Err(Error::Verification("decomposition does not reproduce the operator".into()));
    }
    Ok(dec)
}

/// `X = μ(λ)⁻¹ eval(S)`.
pub fn decompose_left(x: &DiffOp, p: &ParamSet) -> Result<Decomposition> {
    decompose(x, p, Side::Left)
}

/// `X = eval(S) ν(λ)⁻¹`.
pub fn decompose_right(x: &DiffOp, p: &ParamSet) -> Result<Decomposition> {
    decompose(x, p, Side::Right)
}

/// `B Ψ = eigen(λ_ε(n − shift)) Ψ`, with `λ_ε` for `lambda_params`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualCertificate {
    #[serde(rename = "B", with = "crate::json::diffopz")]
    pub b: DiffOpZ,
    #[serde(with = "crate::json::poly")]
    pub eigen: Poly,
    pub shift: i64,
    pub verified_order: i64,
    pub lambda_params: ParamSet,
}

/// Everything assembled on the way to a certificate.
#[derive(Clone, Debug)]
pub struct DualConstruction {
    pub certificate: DualCertificate,
    /// The bundle the gauge and decompositions were computed for (lifted when
    /// `k + l` was odd).
    pub working: DarbouxBundle,
    pub lift: Option<LiftDirection>,
    pub pbar: DiffOp,
    pub qbar: DiffOp,
    pub left: Decomposition,
    pub right: Decomposition,
    pub g_p: DiffOpZ,
    pub g_q: DiffOpZ,
    pub report: EigenReport,
}

#[derive(Clone, Debug)]
pub struct DualOptions {
    pub order: usize,
    pub window: (i64, i64),
}

impl Default for DualOptions {
    fn default() -> Self {
        DualOptions { order: 48, window: (-8, 8) }
    }
}

/// `q(z) = (z − 1)^k (z + 1)^l` as a rational function of z.
fn q_of_z(bundle: &DarbouxBundle) -> RatFunc {
    RatFunc::from_poly(bundle.eigen_poly.clone())
}

/// Highest pole order at z = 1 among the coefficients.
fn pole_order_at_one(g: &DiffOpZ) -> i64 {
    g.terms()
        .map(|(_, c)| {
            let s = LaurentSeries::from_ratfunc_z(c, 1);
            (-s.valuation()).max(0)
        })
        .max()
        .unwrap_or(0)
}

/// Builds and verifies a dual differential operator for the bundle's Ψ.
pub fn build_dual(bundle: &DarbouxBundle, opts: &DualOptions) -> Result<DualConstruction> {
    let spec = &bundle.spec;
    spec.validate()?;
    if spec.order() == 0 {
        let fam = psi_family(bundle, opts.order + 1);
        let b = DiffOpZ::identity();
        let report = verify_eigen_z_with(&b, &Poly::one(), 0, &spec.params, &fam, opts.window);
        let one = Decomposition { denom: Poly::one(), word: FreeElem::one(), side: Side::Left };
        return Ok(DualConstruction {
            certificate: DualCertificate {
                b: b.clone(),
                eigen: Poly::one(),
                shift: 0,
                verified_order: opts.order as i64,
                lambda_params: spec.params.clone(),
            },
            working: bundle.clone(),
            lift: None,
            pbar: DiffOp::identity(),
            qbar: DiffOp::identity(),
            left: one.clone(),
            right: Decomposition { side: Side::Right, ..one },
            g_p: b.clone(),
            g_q: b,
            report,
        });
    }
    if spec.k > 0 && spec.params.alpha_int().is_none() || spec.l > 0 && spec.params.beta_int().is_none() {
        return Err(Error::Scope("dual construction needs integer α (k > 0) and β (l > 0)".into()));
    }
    if spec.params.alpha_int().is_none() {
        return Err(Error::Scope(
            "the symmetric gauge φ is rational only for integer α; case k = 0 with non-integer α \
             is not covered"
                .into(),
        ));
    }
    let (working, lift) = if spec.order() % 2 == 1 {
        let dir = LiftDirection::preferred(spec);
        (lift_via_contiguous(bundle, dir)?.bundle, Some(dir))
    } else {
        (bundle.clone(), None)
    };
    let wp = working.params().clone();
    let pb = build_p_bar(&working.spec)?;
    let qpoly = working.eigen_poly.clone();
    let lt = jacobi_l_tilde(&wp);
    let qbar = DiffOp::right_divide(&lt.poly_eval(&qpoly), &pb.pbar)?;
    let left = decompose_left(&pb.pbar, &wp)?;
    let right = decompose_right(&qbar, &wp)?;
    let g_p = left.word.eval_to_diffz_b(&wp);
    let g_q = right.word.eval_to_diffz_b(&wp);
    let qinv = DiffOpZ::mult(q_of_z(&working).recip());
    let mut b = g_p.compose(&g_q).compose(&qinv);
    let eigen = &left.denom * &right.denom;
    let mut shift = pb.s;
    if let Some(dir) = lift {
        if let Some(g) = dir.z_factor() {
            // Ψ'(n) = c(n) g(z) Ψ(n − 1): conjugate by g and move the shift
            let gz = RatFunc::from_poly(g);
            b = DiffOpZ::mult(gz.recip()).compose(&b).compose(&DiffOpZ::mult(gz));
            shift -= 1;
        }
    }
    let margin = b.order().unwrap_or(0) as i64 + pole_order_at_one(&b) + 2;
    let fam = psi_family(bundle, opts.order + margin as usize);
    let report = verify_eigen_z_with(&b, &eigen, shift, &wp, &fam, opts.window);
    if !report.ok || report.verified_order < opts.order as i64 {
        return Err(Error::Verification(format!(
            "dual operator fails the series eigen-check: {}",
            report.to_json()
        )));
    }
    let certificate = DualCertificate {
        b,
        eigen,
        shift,
        verified_order: opts.order as i64,
        lambda_params: wp.clone(),
    };
    Ok(DualConstruction {
        certificate,
        working,
        lift,
        pbar: pb.pbar,
        qbar,
        left,
        right,
        g_p,
        g_q,
        report,
    })
}

/// Builds the bundle and its dual from a spec.
pub fn build_dual_from_spec(spec: &crate::darboux::DarbouxSpec, opts: &DualOptions) -> Result<DualConstruction> {
    build_dual(&build_bundle(spec)?, opts)
}

/// Result of comparing the two sides of the differential-side factorisation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InoCheck {
    pub ok: bool,
    /// The first order whose coefficients differ.
    pub mismatch: Option<usize>,
}

fn compare(lhs: &DiffOpZ, rhs: &DiffOpZ) -> InoCheck {
    if lhs == rhs {
        return InoCheck { ok: true, mismatch: None };
    }
    let top = lhs.order().unwrap_or(0).max(rhs.order().unwrap_or(0));
    let k = (0..=top).find(|&k| lhs.coeff(k) != rhs.coeff(k));
    InoCheck { ok: false, mismatch: k }
}

/// `G_Q ∘ q(z)⁻¹ ∘ G_P = ν(B) μ(B)`, the image under the anti-isomorphism b of
/// `S_Q (μν)(λ)⁻¹ S_P = q(L̃)`.
pub fn verify_ino(g_p: &DiffOpZ, g_q: &DiffOpZ, mu: &Poly, nu: &Poly, q: &Poly, p: &ParamSet) -> InoCheck {
    let b = b_op(&p.alpha, &p.beta);
    let lhs = b.poly_eval(nu).compose(&b.poly_eval(mu));
    let qinv = DiffOpZ::mult(RatFunc::from_poly(q.clone()).recip());
    compare(&lhs, &g_q.compose(&qinv).compose(g_p))
}

/// The same identity with the outer factors in the opposite order,
/// `G_P ∘ q(z)⁻¹ ∘ G_Q = ν(B) μ(B)`.
pub fn verify_ino_swapped(g_p: &DiffOpZ, g_q: &DiffOpZ, mu: &Poly, nu: &Poly, q: &Poly, p: &ParamSet) -> InoCheck {
    verify_ino(g_q, g_p, mu, nu, q, p)
}
