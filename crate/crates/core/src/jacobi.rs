//! The Jacobi operators, their gauge, kernel functions, contiguous operators and
//! the hypergeometric coefficients of p_ε^{α,β}.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rat::{factorial, pochhammer, pochhammer_signed, rint, sign_pow, to_i64, Rat};
use crate::exact::{pochhammer_poly, Poly, RatFunc};
use crate::ndiff::{DiffOp, SignedRatFunc};
use crate::params::ParamSet;
use crate::zdiff::DiffOpZ;

fn lin(c: Rat) -> Poly {
    Poly::linear(c)
}

/// `2n + 2ε + α + β + k`.
fn two_n(p: &ParamSet, k: i64) -> Poly {
    Poly::new(vec![&p.eps + &p.eps + p.ab() + rint(k), rint(2)])
}

fn rf(num: Poly, den: Poly) -> RatFunc {
    RatFunc::new(num, den)
}

/// `L_{α,β;ε} = a₀(n) T + b₀(n) + c₀(n) T⁻¹`.
pub fn jacobi_l(p: &ParamSet) -> DiffOp {
    let (a, b, e) = (&p.alpha, &p.beta, &p.eps);
    let one = Rat::one();
    let a0 = rf(
        (&lin(e + &one) * &lin(e + p.ab() + &one)).scale(&rint(2)),
        &two_n(p, 1) * &two_n(p, 2),
    );
    let b0 = rf(Poly::constant(b * b - a * a), &two_n(p, 0) * &two_n(p, 2));
    let c0 = rf(
        (&lin(e + a) * &lin(e + b)).scale(&rint(2)),
        &two_n(p, 0) * &two_n(p, 1),
    );
    DiffOp::from_rf_coeffs([(1, a0), (0, b0), (-1, c0)])
}

/// `L̃ = φ⁻¹ L φ`, written out directly so it is available for non-integer α.
pub fn jacobi_l_tilde(p: &ParamSet) -> DiffOp {
    let (a, b, e) = (&p.alpha, &p.beta, &p.eps);
    let one = Rat::one();
    let a0 = rf(
        (&lin(e + a + &one) * &lin(e + p.ab() + &one)).scale(&rint(2)),
        &two_n(p, 1) * &two_n(p, 2),
    );
    // Conjugation leaves the diagonal term untouched, so it equals that of L.
    let b0 = rf(Poly::constant(b * b - a * a), &two_n(p, 0) * &two_n(p, 2));
    let c0 = rf(
        (&lin(e.clone()) * &lin(e + b)).scale(&rint(2)),
        &two_n(p, 0) * &two_n(p, 1),
    );
    DiffOp::from_rf_coeffs([(1, a0), (0, b0), (-1, c0)])
}

/// `B_{α,β} = (z²−1)∂² + (α−β+(α+β+2)z)∂`.
pub fn b_op(alpha: &Rat, beta: &Rat) -> DiffOpZ {
    let c2 = RatFunc::from_poly(Poly::from_ints(&[-1, 0, 1]));
    let c1 = RatFunc::from_poly(Poly::new(vec![alpha - beta, alpha + beta + rint(2)]));
    &DiffOpZ::monomial(c2, 2) + &DiffOpZ::monomial(c1, 1)
}

/// `λ_ε(n) = (n+ε)(n+ε+α+β+1)`.
pub fn lambda_fn(p: &ParamSet) -> RatFunc {
    p.lambda()
}

/// `(a)_n / (b)_n` as a rational function of `n`; requires `a − b ∈ ℤ`.
pub fn pochhammer_ratio(a: &Rat, b: &Rat) -> Result<RatFunc> {
    let m = a - b;
    let m = to_i64(&m)
        .filter(|_| m.is_integer())
        .ok_or_else(|| Error::Scope("Pochhammer ratio with non-integer offset is not rational".into()))?;
    Ok(if m >= 0 {
        let k = m as usize;
        RatFunc::from_poly(pochhammer_poly(b, k).scale(&pochhammer(b, k).recip()))
    } else {
        let k = (-m) as usize;
        RatFunc::new(Poly::constant(pochhammer(a, k)), pochhammer_poly(a, k))
    })
}

/// Pointwise `(a)_n / (b)_n` for any integer `n`.
pub fn pochhammer_ratio_at(a: &Rat, b: &Rat, n: i64) -> Option<Rat> {
    let num = pochhammer_signed(a, n)?;
    let den = pochhammer_signed(b, n)?;
    if den.is_zero() {
        None
    } else {
        Some(num / den)
    }
}

/// The gauge `φ(n) = (ε+α+1)_n / (ε+1)_n` for integer α.
pub fn phi_fn(p: &ParamSet) -> Result<RatFunc> {
    if p.alpha_int().is_none() {
        return Err(Error::Scope("the gauge φ is rational only for integer alpha".into()));
    }
    pochhammer_ratio(&(&p.eps + &p.alpha + Rat::one()), &(&p.eps + Rat::one()))
}

/// `(−(n+c))_i` as a polynomial in `n`.
pub fn neg_pochhammer_poly(c: &Rat, i: usize) -> Poly {
    let mut acc = Poly::one();
    for r in 0..i {
        acc = &acc * &Poly::new(vec![rint(r as i64) - c, -Rat::one()]);
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    PhiPlus,
    PsiPlus,
    PhiMinus,
    PsiMinus,
}

impl Family {
    pub fn is_plus(self) -> bool {
        matches!(self, Family::PhiPlus | Family::PsiPlus)
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::PhiPlus => "phi+",
            Family::PsiPlus => "psi+",
            Family::PhiMinus => "phi-",
            Family::PsiMinus => "psi-",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct KernelKind {
    pub family: Family,
    pub index: usize,
}

impl KernelKind {
    pub fn new(family: Family, index: usize) -> Self {
        KernelKind { family, index }
    }
}

/// The pieces of a kernel function: `sign·(a)_n/(b)_n · poly(n) / scalar`.
struct KernelParts {
    sigma: bool,
    ratio: (Rat, Rat),
    poly: Poly,
    denom: Rat,
}

fn kernel_parts(kind: KernelKind, p: &ParamSet) -> KernelParts {
    let (a, b, e) = (&p.alpha, &p.beta, &p.eps);
    let one = Rat::one();
    let i = kind.index;
    let fi = factorial(i);
    let two_i = num_traits::pow(rint(2), i);
    // (−(n+ε))_i (n+ε+α+β+1)_i and (−(n+ε+α+β))_i (n+ε+1)_i
    let phi_poly = || &neg_pochhammer_poly(e, i) * &pochhammer_poly(&(e + p.ab() + &one), i);
    let psi_poly = || &neg_pochhammer_poly(&(e + p.ab()), i) * &pochhammer_poly(&(e + &one), i);
    match kind.family {
        Family::PhiPlus => KernelParts {
            sigma: false,
            ratio: (e + a + &one, e + &one),
            poly: phi_poly(),
            denom: sign_pow(i as i64) * &two_i * &fi * pochhammer(&(a + &one), i),
        },
        Family::PsiPlus => KernelParts {
            sigma: false,
            ratio: (e + b + &one, e + p.ab() + &one),
            poly: psi_poly(),
            denom: sign_pow(i as i64) * &two_i * &fi * pochhammer(&(&one - a), i),
        },
        Family::PhiMinus => KernelParts {
            sigma: true,
            ratio: (e + b + &one, e + &one),
            poly: phi_poly(),
            denom: &two_i * &fi * pochhammer(&(b + &one), i),
        },
        Family::PsiMinus => KernelParts {
            sigma: true,
            ratio: (e + a + &one, e + p.ab() + &one),
            poly: psi_poly(),
            denom: &two_i * &fi * pochhammer(&(&one - b), i),
        },
    }
}

/// Checks that a kernel function has a rational closed form: the parameter
/// governing its family (α for +, β for −) must be an integer and the
/// normalising Pochhammer factor must not vanish.
pub fn check_kernel_scope(kind: KernelKind, p: &ParamSet) -> Result<()> {
    let (v, name) = if kind.family.is_plus() {
        (p.alpha_int(), "alpha")
    } else {
        (p.beta_int(), "beta")
    };
    if v.is_none() {
        return Err(Error::Scope(format!(
            "closed form of {} needs integer {name}",
            kind.family.name()
        )));
    }
    if kernel_parts(kind, p).denom.is_zero() {
        return Err(Error::Scope(format!(
            "{}^({}) is undefined for {name} = {}",
            kind.family.name(),
            kind.index,
            v.unwrap()
        )));
    }
    Ok(())
}

/// A kernel function as a signed rational function.
pub fn kernel_fn(kind: KernelKind, p: &ParamSet) -> Result<SignedRatFunc> {
    check_kernel_scope(kind, p)?;
    let parts = kernel_parts(kind, p);
    let ratio = pochhammer_ratio(&parts.ratio.0, &parts.ratio.1)?;
    let r = &ratio * &RatFunc::from_poly(parts.poly.scale(&parts.denom.recip()));
    Ok(if parts.sigma {
        SignedRatFunc::times_sigma(r)
    } else {
        SignedRatFunc::from(r)
    })
}

/// A kernel function evaluated at an integer; works for any rational parameters
/// for which the value is defined.
pub fn kernel_fn_eval(kind: KernelKind, p: &ParamSet, n: i64) -> Option<Rat> {
    let parts = kernel_parts(kind, p);
    if parts.denom.is_zero() {
        return None;
    }
    let r = pochhammer_ratio_at(&parts.ratio.0, &parts.ratio.1, n)?;
    let v = r * parts.poly.eval(&rint(n)) / parts.denom;
    Some(if parts.sigma { v * sign_pow(n) } else { v })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Contiguous {
    /// `D_−^α`: lowers α.
    AlphaDown,
    /// `D_+^α`: raises α (up to the factor z − 1).
    AlphaUp,
    /// `D_−^β`: lowers β.
    BetaDown,
    /// `D_+^β`: raises β (up to the factor z + 1).
    BetaUp,
}

/// The four contiguous operators linking p_ε^{α,β} to its neighbours in α and β.
pub fn contiguous_d(kind: Contiguous, p: &ParamSet) -> Result<DiffOp> {
    let (a, b, e) = (&p.alpha, &p.beta, &p.eps);
    let one = Rat::one();
    let d0 = two_n(p, 0);
    let d2 = two_n(p, 2);
    let op = match kind {
        Contiguous::AlphaDown => {
            if a.is_zero() {
                return Err(Error::Domain("D_-^alpha is undefined for alpha = 0".into()));
            }
            let k = (e + a) / a;
            DiffOp::from_rf_coeffs([
                (0, rf(lin(e + p.ab()).scale(&k), d0.clone())),
                (-1, rf(lin(e + b).scale(&-k), d0)),
            ])
        }
        Contiguous::AlphaUp => {
            let den = e + a + &one;
            if den.is_zero() {
                return Err(Error::Domain("D_+^alpha is undefined for eps + alpha + 1 = 0".into()));
            }
            let k = (a + &one) / den;
            DiffOp::from_rf_coeffs([
                (1, rf(lin(e + &one).scale(&(&k * rint(2))), d2.clone())),
                (0, rf(lin(e + a + &one).scale(&(-&k * rint(2))), d2)),
            ])
        }
        Contiguous::BetaDown => DiffOp::from_rf_coeffs([
            (0, rf(lin(e + p.ab()), d0.clone())),
            (-1, rf(lin(e + a), d0)),
        ]),
        Contiguous::BetaUp => DiffOp::from_rf_coeffs([
            (1, rf(lin(e + &one).scale(&rint(2)), d2.clone())),
            (0, rf(lin(e + b + &one).scale(&rint(2)), d2)),
        ]),
    };
    Ok(op)
}

/// The constant in front of the α ∈ ℤ_{<0} branch of p_ε^{α,β}.
pub fn negative_alpha_constant(p: &ParamSet) -> Option<Rat> {
    let m = -p.alpha_int().filter(|a| *a < 0)?;
    let mu = m as usize;
    let e = &p.eps;
    let c = sign_pow(m) / factorial(mu - 1) * pochhammer(&-e.clone(), mu)
        * pochhammer(&(e + p.ab() + Rat::one()), mu)
        / factorial(mu);
    Some(c)
}

/// Coefficients of `t^j`, `j = 0..=n_terms`, of p_ε^{α,β}(n, 1 − 2t) at an integer `n`.
pub fn p_series_coeffs_at(p: &ParamSet, n: i64, order: usize) -> Option<Vec<Rat>> {
    let (a, b, e) = (&p.alpha, &p.beta, &p.eps);
    let one = Rat::one();
    let nn = rint(n);
    let mut out = vec![Rat::zero(); order + 1];
    if let Some(m) = p.alpha_int().filter(|a| *a < 0).map(|a| (-a) as usize) {
        let pref = negative_alpha_constant(p)?
            * pochhammer_ratio_at(&(e + b + &one), &(e + p.ab() + &one), n)?;
        // F(−(n+ε+α), n+ε+β+1; −α+1; t) shifted by t^{−α}
        let (x, y, c) = (-(&nn + e + a), &nn + e + b + &one, &one - a);
        let mut term = pref;
        for r in 0..=order.saturating_sub(m) {
            if m + r > order {
                break;
            }
            out[m + r] = term.clone();
            let rr = rint(r as i64);
            term = term * (&x + &rr) * (&y + &rr) / ((&c + &rr) * (&rr + &one));
        }
    } else {
        let mut term = pochhammer_ratio_at(&(e + a + &one), &(e + &one), n)?;
        let (x, y, c) = (-(&nn + e), &nn + e + p.ab() + &one, a + &one);
        for (j, slot) in out.iter_mut().enumerate() {
            *slot = term.clone();
            let jj = rint(j as i64);
            let den = (&c + &jj) * (&jj + &one);
            if den.is_zero() {
                return None;
            }
            term = term * (&x + &jj) * (&y + &jj) / den;
        }
    }
    Some(out)
}

/// Coefficients of `t^j` of p_ε^{α,β}(n, 1 − 2t) as rational functions of `n`
/// (integer α).
pub fn p_series_coeffs(p: &ParamSet, order: usize) -> Result<Vec<RatFunc>> {
    let a_int = p
        .alpha_int()
        .ok_or_else(|| Error::Scope("series coefficients in closed form need integer alpha".into()))?;
    let (a, b, e) = (&p.alpha, &p.beta, &p.eps);
    let one = Rat::one();
    let mut out = vec![RatFunc::zero(); order + 1];
    if a_int < 0 {
        let m = (-a_int) as usize;
        let c = negative_alpha_constant(p).unwrap();
        let pref = pochhammer_ratio(&(e + b + &one), &(e + p.ab() + &one))?.scale(&c);
        for r in 0..=order.saturating_sub(m) {
            if m + r > order {
                break;
            }
            let poly = &neg_pochhammer_poly(&(e + a), r) * &pochhammer_poly(&(e + b + &one), r);
            let d = factorial(r) * pochhammer(&(&one - a), r);
            out[m + r] = &pref * &RatFunc::from_poly(poly.scale(&d.recip()));
        }
    } else {
        let phi = phi_fn(p)?;
        for (j, slot) in out.iter_mut().enumerate() {
            let poly = &neg_pochhammer_poly(e, j) * &pochhammer_poly(&(e + p.ab() + &one), j);
            let d = factorial(j) * pochhammer(&(a + &one), j);
            *slot = &phi * &RatFunc::from_poly(poly.scale(&d.recip()));
        }
    }
    Ok(out)
}

