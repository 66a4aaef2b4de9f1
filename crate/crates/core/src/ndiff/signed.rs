//! Functions of the form `e(n) + o(n)·σ` with `σ = (−1)ⁿ`.
//!
//! The ring `Q(n)[σ]/(σ² − 1)` splits as `Q(n) × Q(n)` through the values at even
//! and odd `n`: `plus = e + o`, `minus = e − o`. Elements are stored in that split
//! form so products, inverses and linear algebra work branch by branch.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::exact::rat::{rat, rint, Rat};
use crate::exact::RatFunc;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum SignedRatFunc {
    /// No σ part.
    Plain(RatFunc),
    /// Values at even n and at odd n; never equal.
    Split { plus: RatFunc, minus: RatFunc },
}

impl Default for SignedRatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl SignedRatFunc {
    pub fn zero() -> Self {
        SignedRatFunc::Plain(RatFunc::zero())
    }

    pub fn one() -> Self {
        SignedRatFunc::Plain(RatFunc::one())
    }

    pub fn constant(c: Rat) -> Self {
        SignedRatFunc::Plain(RatFunc::constant(c))
    }

    /// σ itself.
    pub fn sigma() -> Self {
        Self::from_branches(RatFunc::one(), -RatFunc::one())
    }

    pub fn from_branches(plus: RatFunc, minus: RatFunc) -> Self {
        if plus == minus {
            SignedRatFunc::Plain(plus)
        } else {
            SignedRatFunc::Split { plus, minus }
        }
    }

    /// `even + odd·σ`.
    pub fn new(even: RatFunc, odd: RatFunc) -> Self {
        if odd.is_zero() {
            return SignedRatFunc::Plain(even);
        }
        Self::from_branches(&even + &odd, &even - &odd)
    }

    /// `r·σ`.
    pub fn times_sigma(r: RatFunc) -> Self {
        let m = -&r;
        Self::from_branches(r, m)
    }

    pub fn plus(&self) -> &RatFunc {
        match self {
            SignedRatFunc::Plain(r) => r,
            SignedRatFunc::Split { plus, .. } => plus,
        }
    }

    pub fn minus(&self) -> &RatFunc {
        match self {
            SignedRatFunc::Plain(r) => r,
            SignedRatFunc::Split { minus, .. } => minus,
        }
    }

    /// The branch governing values at `n` with the given parity.
    pub fn branch(&self, n: i64) -> &RatFunc {
        if n.rem_euclid(2) == 0 {
            self.plus()
        } else {
            self.minus()
        }
    }

    pub fn even(&self) -> RatFunc {
        match self {
            SignedRatFunc::Plain(r) => r.clone(),
            SignedRatFunc::Split { plus, minus } => (plus + minus).scale(&rat(1, 2)),
        }
    }

    pub fn odd(&self) -> RatFunc {
        match self {
            SignedRatFunc::Plain(_) => RatFunc::zero(),
            SignedRatFunc::Split { plus, minus } => (plus - minus).scale(&rat(1, 2)),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, SignedRatFunc::Plain(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, SignedRatFunc::Plain(r) if r.is_one())
    }

    pub fn is_sigma_free(&self) -> bool {
        matches!(self, SignedRatFunc::Plain(_))
    }

    pub fn as_plain(&self) -> Option<&RatFunc> {
        match self {
            SignedRatFunc::Plain(r) => Some(r),
            _ => None,
        }
    }

    /// `c` with the σ part removed: `c·σ` becomes rational when `c` is purely odd.
    pub fn strip_sigma(&self) -> Option<RatFunc> {
        match self {
            SignedRatFunc::Plain(r) => Some(r.clone()),
            SignedRatFunc::Split { plus, minus } => (plus == &-minus).then(|| plus.clone()),
        }
    }

    fn map(&self, f: impl Fn(&RatFunc) -> RatFunc) -> Self {
        match self {
            SignedRatFunc::Plain(r) => SignedRatFunc::Plain(f(r)),
            SignedRatFunc::Split { plus, minus } => Self::from_branches(f(plus), f(minus)),
        }
    }

    fn zip(&self, o: &Self, f: impl Fn(&RatFunc, &RatFunc) -> RatFunc) -> Self {
        match (self, o) {
            (SignedRatFunc::Plain(a), SignedRatFunc::Plain(b)) => SignedRatFunc::Plain(f(a, b)),
            _ => Self::from_branches(f(self.plus(), o.plus()), f(self.minus(), o.minus())),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        self.map(|r| r.scale(c))
    }

    /// `f(n + j)`. An odd shift exchanges the two branches.
    pub fn shift(&self, j: i64) -> Self {
        if j == 0 {
            return self.clone();
        }
        match self {
            SignedRatFunc::Plain(r) => SignedRatFunc::Plain(r.shift_int(j)),
            SignedRatFunc::Split { plus, minus } => {
                let (p, m) = (plus.shift_int(j), minus.shift_int(j));
                if j % 2 == 0 {
                    Self::from_branches(p, m)
                } else {
                    Self::from_branches(m, p)
                }
            }
        }
    }

    /// Multiplicative inverse, if both branches are nonzero.
    pub fn inverse(&self) -> Option<Self> {
        if self.plus().is_zero() || self.minus().is_zero() {
            return None;
        }
        Some(self.map(|r| r.recip()))
    }

    /// Value at an integer point, `None` at a pole.
    pub fn eval(&self, n: i64) -> Option<Rat> {
        self.branch(n).eval(&rint(n))
    }

    /// Applies a map to both components of the even/odd form, e.g. a substitution
    /// that commutes with σ.
    pub fn map_components(&self, f: impl Fn(&RatFunc) -> RatFunc) -> Self {
        self.map(f)
    }
}

impl fmt::Debug for SignedRatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignedRatFunc::Plain(r) => write!(f, "{r:?}"),
            _ => write!(f, "[{:?}] + [{:?}]σ", self.even(), self.odd()),
        }
    }
}

impl From<RatFunc> for SignedRatFunc {
    fn from(r: RatFunc) -> Self {
        SignedRatFunc::Plain(r)
    }
}

impl From<Rat> for SignedRatFunc {
    fn from(c: Rat) -> Self {
        Self::constant(c)
    }
}

impl Add<&SignedRatFunc> for &SignedRatFunc {
    type Output = SignedRatFunc;
    fn add(self, o: &SignedRatFunc) -> SignedRatFunc {
        self.zip(o, |a, b| a + b)
    }
}

impl Sub<&SignedRatFunc> for &SignedRatFunc {
    type Output = SignedRatFunc;
    fn sub(self, o: &SignedRatFunc) -> SignedRatFunc {
        self.zip(o, |a, b| a - b)
    }
}

impl Mul<&SignedRatFunc> for &SignedRatFunc {
    type Output = SignedRatFunc;
    fn mul(self, o: &SignedRatFunc) -> SignedRatFunc {
        self.zip(o, |a, b| a * b)
    }
}

impl Neg for &SignedRatFunc {
    type Output = SignedRatFunc;
    fn neg(self) -> SignedRatFunc {
        self.map(|r| -r)
    }
}

impl Neg for SignedRatFunc {
    type Output = SignedRatFunc;
    fn neg(self) -> SignedRatFunc {
        -&self
    }
}

impl Add for SignedRatFunc {
    type Output = SignedRatFunc;
    fn add(self, o: SignedRatFunc) -> SignedRatFunc {
        &self + &o
    }
}

impl Sub for SignedRatFunc {
    type Output = SignedRatFunc;
    fn sub(self, o: SignedRatFunc) -> SignedRatFunc {
        &self - &o
    }
}

impl Mul for SignedRatFunc {
    type Output = SignedRatFunc;
    fn mul(self, o: SignedRatFunc) -> SignedRatFunc {
        &self * &o
    }
}

impl Zero for SignedRatFunc {
    fn zero() -> Self {
        SignedRatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        SignedRatFunc::is_zero(self)
    }
}

impl One for SignedRatFunc {
    fn one() -> Self {
        SignedRatFunc::one()
    }
}

/// Determinant of a matrix of signed functions, computed branch by branch.
pub fn signed_det(m: &[Vec<SignedRatFunc>]) -> SignedRatFunc {
    use crate::exact::linalg::det;
    if m.iter().flatten().all(|x| x.is_sigma_free()) {
        let a: Vec<Vec<RatFunc>> = m
            .iter()
            .map(|r| r.iter().map(|x| x.plus().clone()).collect())
            .collect();
        return SignedRatFunc::Plain(det(&a));
    }
    let p: Vec<Vec<RatFunc>> = m.iter().map(|r| r.iter().map(|x| x.plus().clone()).collect()).collect();
    let q: Vec<Vec<RatFunc>> = m.iter().map(|r| r.iter().map(|x| x.minus().clone()).collect()).collect();
    SignedRatFunc::from_branches(det(&p), det(&q))
}

/// Solves `m x = b` branch by branch; `None` if either branch is singular.
pub fn signed_solve(m: &[Vec<SignedRatFunc>], b: &[SignedRatFunc]) -> Option<Vec<SignedRatFunc>> {
    use crate::exact::linalg::solve;
    let branch = |plus: bool| -> Option<Vec<RatFunc>> {
        let a: Vec<Vec<RatFunc>> = m
            .iter()
            .map(|r| r.iter().map(|x| if plus { x.plus() } else { x.minus() }.clone()).collect())
            .collect();
        let v: Vec<RatFunc> = b.iter().map(|x| if plus { x.plus() } else { x.minus() }.clone()).collect();
        solve(&a, &v)
    };
    let free = m.iter().flatten().chain(b).all(|x| x.is_sigma_free());
    let p = branch(true)?;
    if free {
        return Some(p.into_iter().map(SignedRatFunc::Plain).collect());
    }
    let q = branch(false)?;
    Some(
        p.into_iter()
            .zip(q)
            .map(|(a, b)| SignedRatFunc::from_branches(a, b))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Poly;

    #[test]
    fn sigma_arithmetic() {
        let s = SignedRatFunc::sigma();
        assert!((&s * &s).is_one());
        assert_eq!(s.shift(1), -&s);
        assert_eq!(s.eval(3), Some(rint(-1)));
        let f = SignedRatFunc::new(RatFunc::var(), RatFunc::one());
        assert_eq!(f.even(), RatFunc::var());
        assert_eq!(f.odd(), RatFunc::one());
        for n in -4..4 {
            let g = f.shift(2);
            assert_eq!(g.eval(n), f.eval(n + 2));
            assert_eq!(f.shift(-1).eval(n), f.eval(n - 1));
        }
    }

    #[test]
    fn inverse_per_branch() {
        let one = RatFunc::one();
        assert!(SignedRatFunc::new(one.clone(), one.clone()).inverse().is_none());
        let g = SignedRatFunc::new(RatFunc::from_poly(Poly::from_ints(&[3, 1])), one);
        assert!((&g * &g.inverse().unwrap()).is_one());
    }
}
