//! Truncated Laurent series in `t = (1 − z)/2` with exact coefficients, the
//! series families p, p̃ and Ψ, and exact eigen-relation checks.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::rat::{rint, Rat};
use crate::exact::{Poly, RatFunc};
use crate::jacobi::{self, p_series_coeffs_at, pochhammer_ratio_at};
use crate::ndiff::DiffOp;
use crate::params::ParamSet;
use crate::zdiff::DiffOpZ;

/// `Σ_{e ≥ valuation} c_e t^e + O(t^{trunc_order})`.
///
/// `coeffs[i]` is the coefficient of `t^{valuation + i}`; every exponent below
/// `trunc_order` is exact. The stored leading coefficient is nonzero unless the
/// series is zero through its window, in which case `valuation == trunc_order`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentSeries {
    valuation: i64,
    coeffs: Vec<Rat>,
    trunc_order: i64,
}

impl LaurentSeries {
    /// Coefficients starting at `start`, exact below `trunc_order`.
    pub fn new(start: i64, mut coeffs: Vec<Rat>, trunc_order: i64) -> Self {
        let keep = (trunc_order - start).max(0) as usize;
        coeffs.truncate(keep);
        let lead = coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => Self::zero(trunc_order),
            Some(i) => {
                coeffs.drain(..i);
                LaurentSeries { valuation: start + i as i64, coeffs, trunc_order }
            }
        }
    }

    /// The series `O(t^{trunc_order})`.
    pub fn zero(trunc_order: i64) -> Self {
        LaurentSeries { valuation: trunc_order, coeffs: Vec::new(), trunc_order }
    }

    pub fn constant(c: Rat, trunc_order: i64) -> Self {
        Self::new(0, vec![c], trunc_order)
    }

    /// A polynomial in `t`.
    pub fn from_poly_t(p: &Poly, trunc_order: i64) -> Self {
        Self::new(0, p.coeffs(), trunc_order)
    }

    /// Expansion of `r(z)` at `z = 1`.
    pub fn from_ratfunc_z(r: &RatFunc, trunc_order: i64) -> Self {
        let to_t = |p: &Poly| p.compose_affine(&rint(-2), &Rat::one());
        let num = to_t(r.num());
        let den = to_t(r.den());
        let (vn, nc) = strip_t(&num);
        let (vd, dc) = strip_t(&den);
        let shift = vn - vd;
        let len = (trunc_order - shift).max(0) as usize;
        let inv = inverse_power_series(&dc, len);
        let out = convolve(&nc, &inv, len);
        Self::new(shift, out, trunc_order)
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn trunc_order(&self) -> i64 {
        self.trunc_order
    }

    /// Coefficients from the valuation upward.
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// `None` outside the exact window.
    pub fn coeff(&self, e: i64) -> Option<Rat> {
        if e >= self.trunc_order {
            return None;
        }
        if e < self.valuation {
            return Some(Rat::zero());
        }
        Some(self.coeffs.get((e - self.valuation) as usize).cloned().unwrap_or_else(Rat::zero))
    }

    /// Zero through the whole exact window.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The lowest exponent with a nonzero coefficient inside the window.
    pub fn first_nonzero(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.valuation)
    }

    pub fn truncate(&self, trunc_order: i64) -> Self {
        Self::new(self.valuation, self.coeffs.clone(), trunc_order.min(self.trunc_order))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.trunc_order);
        }
        LaurentSeries {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            trunc_order: self.trunc_order,
        }
    }

    /// Multiplication by `t^k`.
    pub fn mul_t_pow(&self, k: i64) -> Self {
        LaurentSeries {
            valuation: self.valuation + k,
            coeffs: self.coeffs.clone(),
            trunc_order: self.trunc_order + k,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let prec = self.trunc_order.min(o.trunc_order);
        let start = self.valuation.min(o.valuation).min(prec);
        let mut out = vec![Rat::zero(); (prec - start) as usize];
        for s in [self, o] {
            for (i, c) in s.coeffs.iter().enumerate() {
                let e = s.valuation + i as i64;
                if e < prec {
                    out[(e - start) as usize] += c;
                }
            }
        }
        Self::new(start, out, prec)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Rat::one()))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let prec = (self.trunc_order + o.valuation).min(o.trunc_order + self.valuation);
        let start = self.valuation + o.valuation;
        if start >= prec {
            return Self::zero(prec);
        }
        let len = (prec - start) as usize;
        let out = convolve(&self.coeffs, &o.coeffs, len);
        Self::new(start, out, prec)
    }

    /// `d/dt`.
    pub fn derivative_t(&self) -> Self {
        let out: Vec<Rat> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * rint(self.valuation + i as i64))
            .collect();
        Self::new(self.valuation - 1, out, self.trunc_order - 1)
    }

    /// `d/dz = −½ d/dt`.
    pub fn derivative_z(&self) -> Self {
        self.derivative_t().scale(&Rat::new((-1).into(), 2.into()))
    }
}

/// `p = t^v · rest` with `rest(0) ≠ 0`; returns `(v, rest coefficients)`.
fn strip_t(p: &Poly) -> (i64, Vec<Rat>) {
    let c = p.coeffs();
    let v = c.iter().position(|x| !x.is_zero()).unwrap_or(0);
    (v as i64, c[v..].to_vec())
}

/// First `len` coefficients of `1 / Σ d_i t^i` with `d_0 ≠ 0`.
fn inverse_power_series(d: &[Rat], len: usize) -> Vec<Rat> {
    if len == 0 {
        return Vec::new();
    }
    let (den, ints) = common_denominator(d);
    // 1/d = den · 1/ints; with w_k = o_k · e^{k+1} (e = ints[0]) everything stays integral
    let e = &ints[0];
    let mut w: Vec<BigInt> = Vec::with_capacity(len);
    let mut epow = vec![BigInt::one()];
    for k in 0..len {
        if k == 0 {
            w.push(BigInt::one());
        } else {
            let mut acc = BigInt::zero();
            for i in 1..=k.min(ints.len() - 1) {
                if !ints[i].is_zero() {
                    acc += &ints[i] * &w[k - i] * &epow[i - 1];
                }
            }
            w.push(-acc);
        }
        let next = epow.last().unwrap() * e;
        epow.push(next);
    }
    w.into_iter()
        .enumerate()
        .map(|(k, wk)| Rat::new(wk * &den, epow[k + 1].clone()))
        .collect()
}

/// `(D, ints)` with `v = ints / D`.
fn common_denominator(v: &[Rat]) -> (BigInt, Vec<BigInt>) {
    let mut den = BigInt::one();
    for c in v {
        if !c.is_zero() {
            den = den.lcm(c.denom());
        }
    }
    let ints = v.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    (den, ints)
}

/// First `len` coefficients of the product, via one integer convolution.
fn convolve(a: &[Rat], b: &[Rat], len: usize) -> Vec<Rat> {
    let (da, ia) = common_denominator(&a[..a.len().min(len)]);
    let (db, ib) = common_denominator(&b[..b.len().min(len)]);
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in ia.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in ib.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    let d = da * db;
    out.into_iter().map(|c| Rat::new(c, d.clone())).collect()
}

/// `Σ_j (a)_j (b)_j / (j! (c)_j) x^j` with `x = t`, through `t^order`.
pub fn hyp2f1_series(a: &Rat, b: &Rat, c: &Rat, order: usize) -> Result<LaurentSeries> {
    let mut out = Vec::with_capacity(order + 1);
    let mut term = Rat::one();
    for j in 0..=order {
        out.push(term.clone());
        let jj = rint(j as i64);
        let den = (c + &jj) * (&jj + Rat::one());
        if den.is_zero() {
            return Err(Error::Domain("hypergeometric series with c a non-positive integer".into()));
        }
        term = term * (a + &jj) * (b + &jj) / den;
    }
    Ok(LaurentSeries::new(0, out, order as i64 + 1))
}

/// Multiplication of the differential operator's coefficients into `ser`.
pub fn apply_z(g: &DiffOpZ, ser: &LaurentSeries) -> Result<LaurentSeries> {
    PreparedZ::new(g).apply(ser)
}

/// A differential operator whose coefficient expansions at `z = 1` are kept
/// between applications.
pub struct PreparedZ {
    terms: Vec<(usize, RatFunc, i64)>,
    cache: Mutex<Vec<Option<LaurentSeries>>>,
}

impl PreparedZ {
    pub fn new(g: &DiffOpZ) -> Self {
        let terms: Vec<_> = g
            .terms()
            .map(|(ord, c)| {
                let (vn, _) = strip_t(&c.num().compose_affine(&rint(-2), &Rat::one()));
                let (vd, _) = strip_t(&c.den().compose_affine(&rint(-2), &Rat::one()));
                (ord, c.clone(), vn - vd)
            })
            .collect();
        let cache = Mutex::new(vec![None; terms.len()]);
        PreparedZ { terms, cache }
    }

    fn coeff_series(&self, i: usize, prec: i64) -> LaurentSeries {
        let mut cache = self.cache.lock().expect("cache lock");
        match &cache[i] {
            Some(s) if s.trunc_order() >= prec => s.truncate(prec),
            _ => {
                let s = LaurentSeries::from_ratfunc_z(&self.terms[i].1, prec);
                cache[i] = Some(s.clone());
                s
            }
        }
    }

    pub fn apply(&self, ser: &LaurentSeries) -> Result<LaurentSeries> {
        let mut acc: Option<LaurentSeries> = None;
        let mut deriv = ser.clone();
        let mut k = 0usize;
        for (i, (ord, _, vc)) in self.terms.iter().enumerate() {
            while k < *ord {
                deriv = deriv.derivative_z();
                k += 1;
            }
            // enough terms of c so the product window is limited by `deriv`
            let prec_c = deriv.trunc_order() - deriv.valuation() + vc + 1;
            let cs = self.coeff_series(i, prec_c.max(vc + 1));
            let term = cs.mul(&deriv);
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term),
            });
        }
        Ok(acc.unwrap_or_else(|| LaurentSeries::zero(ser.trunc_order())))
    }
}

enum Producer {
    Hyp(ParamSet),
    HypTilde(ParamSet),
    Applied(DiffOp, Arc<SeriesFamily>),
}

/// `n ↦ LaurentSeries`, memoised.
pub struct SeriesFamily {
    producer: Producer,
    order: usize,
    params: ParamSet,
    cache: Mutex<HashMap<i64, LaurentSeries>>,
}

impl std::fmt::Debug for SeriesFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SeriesFamily").field("order", &self.order).field("params", &self.params).finish()
    }
}

impl SeriesFamily {
    fn make(producer: Producer, params: ParamSet, order: usize) -> Arc<Self> {
        Arc::new(SeriesFamily { producer, order, params, cache: Mutex::new(HashMap::new()) })
    }

    /// The parameters whose `λ_ε` labels the family's spectrum.
    pub fn params(&self) -> &ParamSet {
        &self.params
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, n: i64) -> Result<LaurentSeries> {
        if let Some(s) = self.cache.lock().unwrap().get(&n) {
            return Ok(s.clone());
        }
        let s = self.compute(n)?;
        self.cache.lock().unwrap().entry(n).or_insert_with(|| s.clone());
        Ok(s)
    }

    fn compute(&self, n: i64) -> Result<LaurentSeries> {
        let prec = self.order as i64 + 1;
        match &self.producer {
            Producer::Hyp(p) => {
                let c = p_series_coeffs_at(p, n, self.order).ok_or_else(|| {
                    Error::Domain(format!("p(n, z) is undefined at n = {n}"))
                })?;
                Ok(LaurentSeries::new(0, c, prec))
            }
            Producer::HypTilde(p) => {
                let phi = pochhammer_ratio_at(&(&p.eps + &p.alpha + Rat::one()), &(&p.eps + Rat::one()), n)
                    .filter(|x| !x.is_zero())
                    .ok_or_else(|| Error::Domain(format!("φ is singular at n = {n}")))?;
                let c = p_series_coeffs_at(p, n, self.order).ok_or_else(|| {
                    Error::Domain(format!("p(n, z) is undefined at n = {n}"))
                })?;
                Ok(LaurentSeries::new(0, c, prec).scale(&phi.recip()))
            }
            Producer::Applied(d, base) => apply_n(d, base, n),
        }
    }
}

/// p_ε^{α,β}(n, z) expanded at z = 1 through `t^order`.
pub fn hyp_family(p: &ParamSet, order: usize) -> Arc<SeriesFamily> {
    SeriesFamily::make(Producer::Hyp(p.clone()), p.clone(), order)
}

/// `p̃ = p / φ`.
pub fn hyp_tilde_family(p: &ParamSet, order: usize) -> Arc<SeriesFamily> {
    SeriesFamily::make(Producer::HypTilde(p.clone()), p.clone(), order)
}

/// `n ↦ (D fam)(n)`, sharing the parameters of `fam`.
pub fn applied_family(d: &DiffOp, fam: &Arc<SeriesFamily>) -> Arc<SeriesFamily> {
    SeriesFamily::make(Producer::Applied(d.clone(), fam.clone()), fam.params.clone(), fam.order)
}

/// `Ψ(n, z) = P(n, T) p(n, z)` for a Darboux bundle.
pub fn psi_family(bundle: &crate::darboux::DarbouxBundle, order: usize) -> Arc<SeriesFamily> {
    applied_family(&bundle.p, &hyp_family(bundle.params(), order))
}

/// `Σ_j c_j(n0) fam(n0 + j)` with σ evaluated as (−1)^{n0}.
pub fn apply_n(d: &DiffOp, fam: &SeriesFamily, n0: i64) -> Result<LaurentSeries> {
    let mut acc: Option<LaurentSeries> = None;
    for (j, c) in d.terms() {
        let v = c
            .eval(n0)
            .ok_or_else(|| Error::Domain(format!("coefficient of T^{j} has a pole at n = {n0}")))?;
        let term = fam.get(n0 + j)?.scale(&v);
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term),
        });
    }
    Ok(acc.unwrap_or_else(|| LaurentSeries::zero(fam.order as i64 + 1)))
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PointReport {
    pub n: i64,
    pub ok: bool,
    /// Residual exponents below this bound are exact.
    pub guaranteed_order: i64,
    pub first_failure: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct EigenReport {
    pub ok: bool,
    pub window: (i64, i64),
    /// The smallest guaranteed order over the window.
    pub verified_order: i64,
    pub points: Vec<PointReport>,
}

impl EigenReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

/// The eigenvalue `eigen(λ_ε(n − s))` at an integer `n`.
pub fn eigen_value(eigen: &Poly, s: i64, lambda_params: &ParamSet, n: i64) -> Rat {
    let lam = jacobi::lambda_fn(lambda_params);
    eigen.eval(&lam.eval(&rint(n - s)).expect("λ is a polynomial"))
}

/// Checks `B Ψ = eigen(λ_ε(n − s)) Ψ` on the series of `fam` for every `n` in the
/// window, with `λ_ε` taken from the family's parameters.
pub fn verify_eigen_z(b: &DiffOpZ, eigen: &Poly, s: i64, fam: &SeriesFamily, window: (i64, i64)) -> EigenReport {
    verify_eigen_z_with(b, eigen, s, fam.params(), fam, window)
}

/// As [`verify_eigen_z`] with `λ_ε` taken from `lambda_params`.
pub fn verify_eigen_z_with(
    b: &DiffOpZ,
    eigen: &Poly,
    s: i64,
    lambda_params: &ParamSet,
    fam: &SeriesFamily,
    window: (i64, i64),
) -> EigenReport {
    let prepared = PreparedZ::new(b);
    let points: Vec<PointReport> = (window.0..=window.1)
        .into_par_iter()
        .map(|n| {
            let run = || -> Result<LaurentSeries> {
                let ser = fam.get(n)?;
                let lhs = prepared.apply(&ser)?;
                Ok(lhs.sub(&ser.scale(&eigen_value(eigen, s, lambda_params, n))))
            };
            match run() {
                Ok(res) => PointReport {
                    n,
                    ok: res.is_zero(),
                    guaranteed_order: res.trunc_order(),
                    first_failure: res.first_nonzero(),
                    error: None,
                },
                Err(e) => PointReport {
                    n,
                    ok: false,
                    guaranteed_order: 0,
                    first_failure: None,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();
    let ok = points.iter().all(|p| p.ok);
    let verified_order = points.iter().map(|p| p.guaranteed_order).min().unwrap_or(0);
    EigenReport { ok, window, verified_order, points }
}

/// Checks `D Ψ = θ(n, z) Ψ` where `θ` is multiplication by a rational function of
/// `z` (e.g. `L Ψ = z Ψ`).
pub fn verify_eigen_n(d: &DiffOp, theta: &RatFunc, fam: &SeriesFamily, window: (i64, i64)) -> EigenReport {
    let points: Vec<PointReport> = (window.0..=window.1)
        .into_par_iter()
        .map(|n| {
            let run = || -> Result<LaurentSeries> {
                let lhs = apply_n(d, fam, n)?;
                let ser = fam.get(n)?;
                let rhs = apply_z(&DiffOpZ::mult(theta.clone()), &ser)?;
                Ok(lhs.sub(&rhs))
            };
            match run() {
                Ok(res) => PointReport {
                    n,
                    ok: res.is_zero(),
                    guaranteed_order: res.trunc_order(),
                    first_failure: res.first_nonzero(),
                    error: None,
                },
                Err(e) => PointReport {
                    n,
                    ok: false,
                    guaranteed_order: 0,
                    first_failure: None,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();
    let ok = points.iter().all(|p| p.ok);
    let verified_order = points.iter().map(|p| p.guaranteed_order).min().unwrap_or(0);
    EigenReport { ok, window, verified_order, points }
}

