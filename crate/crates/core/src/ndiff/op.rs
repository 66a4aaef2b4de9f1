//! Difference operators `Σ c_j(n) T^j` with signed rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{ToPrimitive, Zero};

use super::signed::{signed_det, signed_solve, SignedRatFunc};
use crate::error::{Error, Result};
use crate::exact::rat::Rat;
use crate::exact::{integer_roots, Poly, RatFunc};
use crate::params::{involute_subst, ParamSet};

#[derive(Clone, PartialEq, Eq, Default)]
pub struct DiffOp {
    coeffs: BTreeMap<i64, SignedRatFunc>,
}

/// Why an operator fails to be regular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irregularity {
    /// Some coefficient has a pole at an integer.
    Pole { n: i64, shift: i64 },
    /// The first or last coefficient vanishes at an integer.
    Vanishing { n: i64, shift: i64 },
    /// The zero operator.
    Zero,
}

impl fmt::Display for Irregularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Irregularity::Pole { n, shift } => {
                write!(f, "coefficient of T^{shift} has a pole at n = {n}")
            }
            Irregularity::Vanishing { n, shift } => {
                write!(f, "coefficient of T^{shift} vanishes at n = {n}")
            }
            Irregularity::Zero => write!(f, "zero operator"),
        }
    }
}

/// Integer points where the signed function's branch for that parity has a root of `pick`.
fn parity_roots(c: &SignedRatFunc, pick: impl Fn(&RatFunc) -> &Poly) -> Vec<i64> {
    let mut out = Vec::new();
    let mut scan = |r: &RatFunc, parity: Option<i64>| {
        let p = pick(r);
        if p.is_zero() || p.is_constant() {
            return;
        }
        if let Ok(roots) = integer_roots(p) {
            for z in roots {
                let Some(z) = z.to_i64() else { continue };
                if parity.is_none_or(|q| z.rem_euclid(2) == q) {
                    out.push(z);
                }
            }
        }
    };
    match c {
        SignedRatFunc::Plain(r) => scan(r, None),
        SignedRatFunc::Split { plus, minus } => {
            scan(plus, Some(0));
            scan(minus, Some(1));
        }
    }
    out.sort_unstable();
    out
}

/// Integer points where the function vanishes.
pub fn integer_zeros(c: &SignedRatFunc) -> Vec<i64> {
    parity_roots(c, |r| r.num())
}

/// Integer points where the function has a pole.
pub fn integer_poles(c: &SignedRatFunc) -> Vec<i64> {
    parity_roots(c, |r| r.den())
}

impl DiffOp {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::scalar(SignedRatFunc::one())
    }

    /// `T^j`.
    pub fn t(j: i64) -> Self {
        Self::monomial(SignedRatFunc::one(), j)
    }

    pub fn scalar(c: SignedRatFunc) -> Self {
        Self::monomial(c, 0)
    }

    pub fn scalar_rf(c: RatFunc) -> Self {
        Self::scalar(c.into())
    }

    pub fn constant(c: Rat) -> Self {
        Self::scalar(SignedRatFunc::constant(c))
    }

    /// `c(n) T^j`.
    pub fn monomial(c: SignedRatFunc, j: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(j, c);
        }
        DiffOp { coeffs }
    }

    pub fn from_coeffs(it: impl IntoIterator<Item = (i64, SignedRatFunc)>) -> Self {
        let mut d = DiffOp::zero();
        for (j, c) in it {
            d.add_term(j, &c);
        }
        d
    }

    pub fn from_rf_coeffs(it: impl IntoIterator<Item = (i64, RatFunc)>) -> Self {
        Self::from_coeffs(it.into_iter().map(|(j, c)| (j, c.into())))
    }

    fn add_term(&mut self, j: i64, c: &SignedRatFunc) {
        if c.is_zero() {
            return;
        }
        let s = match self.coeffs.get(&j) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if s.is_zero() {
            self.coeffs.remove(&j);
        } else {
            self.coeffs.insert(j, s);
        }
    }

    pub fn coeff(&self, j: i64) -> SignedRatFunc {
        self.coeffs.get(&j).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &SignedRatFunc)> {
        self.coeffs.iter().map(|(j, c)| (*j, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `[p, q]`, or `None` for the zero operator.
    pub fn support(&self) -> Option<(i64, i64)> {
        let lo = *self.coeffs.keys().next()?;
        let hi = *self.coeffs.keys().next_back()?;
        Some((lo, hi))
    }

    pub fn is_sigma_free(&self) -> bool {
        self.coeffs.values().all(SignedRatFunc::is_sigma_free)
    }

    /// Rational coefficient at a shift of a σ-free operator.
    pub fn rf(&self, j: i64) -> RatFunc {
        self.coeff(j)
            .as_plain()
            .cloned()
            .expect("rational coefficient requested from a σ-carrying operator")
    }

    /// `c(n)·D`.
    pub fn left_mul(&self, c: &SignedRatFunc) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|(j, x)| (*j, c * x)))
    }

    /// `D·c(n) = Σ c_j(n) c(n+j) T^j`.
    pub fn right_mul(&self, c: &SignedRatFunc) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|(j, x)| (*j, x * &c.shift(*j))))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        DiffOp {
            coeffs: self.coeffs.iter().map(|(j, x)| (*j, x.scale(c))).collect(),
        }
    }

    /// Operator product, using `T f(n) = f(n+1) T`.
    pub fn compose(&self, o: &DiffOp) -> DiffOp {
        let mut acc: BTreeMap<i64, Vec<SignedRatFunc>> = BTreeMap::new();
        for (i, f) in &self.coeffs {
            for (j, g) in &o.coeffs {
                acc.entry(i + j).or_default().push(f * &g.shift(*i));
            }
        }
        DiffOp::from_coeffs(acc.into_iter().map(|(k, v)| {
            let s = v.iter().fold(SignedRatFunc::zero(), |a, b| &a + b);
            (k, s)
        }))
    }

    pub fn pow(&self, e: usize) -> DiffOp {
        let mut r = DiffOp::identity();
        for _ in 0..e {
            r = r.compose(self);
        }
        r
    }

    /// `Σ q_i D^i`.
    pub fn poly_eval(&self, q: &Poly) -> DiffOp {
        let mut r = DiffOp::zero();
        for c in q.coeffs().iter().rev() {
            r = &r.compose(self) + &DiffOp::constant(c.clone());
        }
        r
    }

    /// `(Df)(n) = Σ c_j(n) f(n+j)`.
    pub fn apply(&self, f: &SignedRatFunc) -> SignedRatFunc {
        self.coeffs
            .iter()
            .fold(SignedRatFunc::zero(), |acc, (j, c)| &acc + &(c * &f.shift(*j)))
    }

    /// `g D g⁻¹`.
    pub fn conjugate(&self, g: &SignedRatFunc) -> Result<DiffOp> {
        let inv = g
            .inverse()
            .ok_or_else(|| Error::Domain("conjugation by a non-invertible function".into()))?;
        Ok(self.left_mul(g).right_mul(&inv))
    }

    /// `a∘b − b∘a`.
    pub fn commutator(a: &DiffOp, b: &DiffOp) -> DiffOp {
        &a.compose(b) - &b.compose(a)
    }

    /// The involution `n ↦ −(n + 2ε + α + β + 1)`, `T ↦ T⁻¹`. Undefined on σ.
    pub fn involution_i(&self, p: &ParamSet) -> Result<DiffOp> {
        if !self.is_sigma_free() {
            return Err(Error::Domain(
                "the involution is not defined on operators carrying (-1)^n".into(),
            ));
        }
        Ok(DiffOp::from_rf_coeffs(
            self.coeffs
                .iter()
                .map(|(j, c)| (-*j, involute_subst(c.as_plain().unwrap(), p))),
        ))
    }

    /// Regular iff no coefficient has an integer pole and the end coefficients
    /// never vanish on the integers.
    pub fn regularity(&self) -> std::result::Result<(), Irregularity> {
        let Some((lo, hi)) = self.support() else {
            return Err(Irregularity::Zero);
        };
        for (j, c) in &self.coeffs {
            if let Some(&n) = integer_poles(c).first() {
                return Err(Irregularity::Pole { n, shift: *j });
            }
        }
        for j in [lo, hi] {
            if let Some(&n) = integer_zeros(&self.coeffs[&j]).first() {
                return Err(Irregularity::Vanishing { n, shift: j });
            }
        }
        Ok(())
    }

    pub fn is_regular(&self) -> bool {
        self.regularity().is_ok()
    }

    /// Coefficient values at the integer `n`.
    pub fn eval_at(&self, n: i64) -> Result<Vec<(i64, Rat)>> {
        self.coeffs
            .iter()
            .map(|(j, c)| {
                c.eval(n)
                    .map(|v| (*j, v))
                    .ok_or_else(|| Error::Domain(format!("coefficient of T^{j} has a pole at n = {n}")))
            })
            .collect()
    }

    /// Finds `Q` with `Q∘P = D`.
    pub fn right_divide(d: &DiffOp, p: &DiffOp) -> Result<DiffOp> {
        let (plo, phi) = p
            .support()
            .ok_or_else(|| Error::Domain("division by the zero operator".into()))?;
        let top = p.coeff(phi);
        let mut rem = d.clone();
        let mut q = DiffOp::zero();
        let qmin = d.support().map_or(0, |(lo, _)| lo - plo);
        while let Some((_, dhi)) = rem.support() {
            let i = dhi - phi;
            if i < qmin {
                break;
            }
            let inv = top.shift(i).inverse().ok_or_else(|| {
                Error::Domain("leading coefficient of the divisor is not invertible".into())
            })?;
            let term = DiffOp::monomial(&rem.coeff(dhi) * &inv, i);
            rem = &rem - &term.compose(p);
            q = &q + &term;
        }
        if !rem.is_zero() {
            return Err(Error::Domain(format!(
                "operator is not right-divisible: remainder has support {:?}",
                rem.support()
            )));
        }
        if &q.compose(p) != d {
            return Err(Error::Verification("right division check Q∘P = D failed".into()));
        }
        Ok(q)
    }

    /// The unique `L` with `L∘P = P∘L0`.
    pub fn darboux_solve(p: &DiffOp, l0: &DiffOp) -> Result<DiffOp> {
        DiffOp::right_divide(&p.compose(l0), p).map_err(|e| match e {
            Error::Domain(m) => Error::Domain(format!("kernel of P is not preserved by L0: {m}")),
            e => e,
        })
    }

    /// The operator with support `[p, q]`, coefficient 1 at `T^q`, and kernel spanned by `basis`.
    pub fn from_kernel(basis: &[SignedRatFunc], support: (i64, i64)) -> Result<DiffOp> {
        let (p, q) = support;
        let m = (q - p) as usize;
        if basis.len() != m {
            return Err(Error::Domain(format!(
                "kernel basis of size {} does not match support width {m}",
                basis.len()
            )));
        }
        let mat: Vec<Vec<SignedRatFunc>> = basis
            .iter()
            .map(|f| (p..q).map(|j| f.shift(j)).collect())
            .collect();
        let cas = signed_det(&mat);
        if cas.plus().is_zero() || cas.minus().is_zero() {
            return Err(Error::Domain("degenerate kernel basis: Casoratian vanishes identically".into()));
        }
        if let Some(n) = integer_zeros(&cas).first() {
            return Err(Error::Domain(format!("degenerate kernel basis: Casoratian vanishes at n = {n}")));
        }
        let rhs: Vec<SignedRatFunc> = basis.iter().map(|f| -f.shift(q)).collect();
        let sol = signed_solve(&mat, &rhs)
            .ok_or_else(|| Error::Domain("degenerate kernel basis".into()))?;
        let mut d = DiffOp::t(q);
        for (k, c) in sol.into_iter().enumerate() {
            d.add_term(p + k as i64, &c);
        }
        Ok(d)
    }

    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(|(j, c)| format!("({c:?}) T^{j}"))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

impl Add<&DiffOp> for &DiffOp {
    type Output = DiffOp;
    fn add(self, o: &DiffOp) -> DiffOp {
        let mut r = self.clone();
        for (j, c) in &o.coeffs {
            r.add_term(*j, c);
        }
        r
    }
}

impl Sub<&DiffOp> for &DiffOp {
    type Output = DiffOp;
    fn sub(self, o: &DiffOp) -> DiffOp {
        let mut r = self.clone();
        for (j, c) in &o.coeffs {
            r.add_term(*j, &-c);
        }
        r
    }
}

impl Neg for &DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        DiffOp {
            coeffs: self.coeffs.iter().map(|(j, c)| (*j, -c)).collect(),
        }
    }
}

impl Mul<&DiffOp> for &DiffOp {
    type Output = DiffOp;
    fn mul(self, o: &DiffOp) -> DiffOp {
        self.compose(o)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for DiffOp {
            type Output = DiffOp;
            fn $m(self, o: DiffOp) -> DiffOp {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

