//! Dense univariate polynomials over [`Rat`].
//!
//! A nonzero polynomial is stored as a rational content times a primitive
//! integer polynomial with positive leading coefficient, so products need no
//! normalisation and equality stays structural.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rat::{fmt_rat, rint, Rat};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    content: Rat,
    ints: Vec<BigInt>,
}

impl Default for Poly {
    fn default() -> Self {
        Self::zero()
    }
}

fn vec_gcd(v: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in v {
        if c.is_zero() {
            continue;
        }
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

impl Poly {
    pub fn zero() -> Self {
        Poly { content: Rat::zero(), ints: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly { content: c, ints: vec![BigInt::one()] }
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::monomial(Rat::one(), 1)
    }

    /// `x + c`.
    pub fn linear(c: Rat) -> Self {
        Self::new(vec![c, Rat::one()])
    }

    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Self::zero();
        }
        let mut l = BigInt::one();
        for c in &coeffs {
            if !c.denom().is_one() {
                l = l.lcm(c.denom());
            }
        }
        let ints: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect();
        Self::from_scaled_ints(Rat::new(BigInt::one(), l), ints)
    }

    /// `scale * Σ ints[k] x^k`, normalised.
    fn from_scaled_ints(scale: Rat, mut ints: Vec<BigInt>) -> Self {
        while ints.last().is_some_and(|c| c.is_zero()) {
            ints.pop();
        }
        if ints.is_empty() || scale.is_zero() {
            return Self::zero();
        }
        let mut g = vec_gcd(&ints);
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for v in ints.iter_mut() {
                *v /= &g;
            }
        }
        Poly { content: scale * Rat::from_integer(g), ints }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::from_bigints(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn from_bigints(c: Vec<BigInt>) -> Self {
        Self::from_scaled_ints(Rat::one(), c)
    }

    pub fn monomial(c: Rat, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut ints = vec![BigInt::zero(); k + 1];
        ints[k] = BigInt::one();
        Poly { content: c, ints }
    }

    pub fn coeffs(&self) -> Vec<Rat> {
        self.ints.iter().map(|v| &self.content * v).collect()
    }

    pub fn coeff(&self, k: usize) -> Rat {
        match self.ints.get(k) {
            Some(v) if !v.is_zero() => &self.content * v,
            _ => Rat::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.ints.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.ints.len() == 1 && self.content.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.ints.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.ints.len().checked_sub(1)
    }

    pub fn lead(&self) -> Rat {
        match self.ints.last() {
            Some(v) => &self.content * v,
            None => Rat::zero(),
        }
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        if self.is_zero() {
            return Rat::zero();
        }
        // homogeneous Horner: Σ a_k p^k q^{d-k}
        let (p, q) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut qpow = BigInt::one();
        for c in self.ints.iter().rev() {
            acc = acc * p + c * &qpow;
            qpow *= q;
        }
        // qpow = q^{d+1}
        let qd = qpow / q;
        &self.content * Rat::new(acc, qd)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() || self.is_zero() {
            return Self::zero();
        }
        Poly { content: &self.content * c, ints: self.ints.clone() }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Poly {
            content: Rat::new(BigInt::one(), self.ints.last().unwrap().clone()),
            ints: self.ints.clone(),
        }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::from_scaled_ints(
            self.content.clone(),
            self.ints
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    fn taylor_shift_int(mut c: Vec<BigInt>, d: &BigInt) -> Vec<BigInt> {
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = &c[j + 1] * d;
                c[j] += t;
            }
        }
        c
    }

    /// `p(x + d)`.
    pub fn shift(&self, d: &Rat) -> Self {
        if d.is_zero() || self.is_constant() {
            return self.clone();
        }
        if d.denom().is_one() {
            // integer shifts preserve content and leading coefficient
            return Poly {
                content: self.content.clone(),
                ints: Self::taylor_shift_int(self.ints.clone(), d.numer()),
            };
        }
        // q^deg p(y/q) has integer coefficients; shift by numerator, substitute y = q x
        let q = d.denom();
        let deg = self.ints.len() - 1;
        let mut qp = vec![BigInt::one(); deg + 1];
        for k in 1..=deg {
            qp[k] = &qp[k - 1] * q;
        }
        let scaled: Vec<BigInt> =
            self.ints.iter().enumerate().map(|(k, c)| c * &qp[deg - k]).collect();
        let shifted = Self::taylor_shift_int(scaled, d.numer());
        let back: Vec<BigInt> = shifted.into_iter().enumerate().map(|(k, c)| c * &qp[k]).collect();
        Self::from_scaled_ints(&self.content / Rat::from_integer(qp[deg].clone()), back)
    }

    /// `p(a x + b)`.
    pub fn compose_affine(&self, a: &Rat, b: &Rat) -> Self {
        let shifted = self.shift(b);
        if a.is_one() || shifted.is_constant() {
            return shifted;
        }
        if a.is_zero() {
            return Self::constant(shifted.coeff(0));
        }
        let (r, s) = (a.numer(), a.denom());
        let deg = shifted.ints.len() - 1;
        let mut rp = vec![BigInt::one(); deg + 1];
        let mut sp = vec![BigInt::one(); deg + 1];
        for k in 1..=deg {
            rp[k] = &rp[k - 1] * r;
            sp[k] = &sp[k - 1] * s;
        }
        let ints: Vec<BigInt> = shifted
            .ints
            .iter()
            .enumerate()
            .map(|(k, c)| c * &rp[k] * &sp[deg - k])
            .collect();
        Self::from_scaled_ints(&shifted.content / Rat::from_integer(sp[deg].clone()), ints)
    }

    /// `p(q(x))`.
    pub fn compose(&self, q: &Poly) -> Self {
        let mut acc = Poly::zero();
        for c in self.coeffs().into_iter().rev() {
            acc = &(&acc * q) + &Poly::constant(c);
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        let mut r = self.coeffs();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let dc = d.coeffs();
        let inv = d.lead().recip();
        let mut q = vec![Rat::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] * &inv;
            if !c.is_zero() {
                for (j, x) in dc.iter().enumerate() {
                    let t = &c * x;
                    r[i + j] -= t;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    /// Exact quotient, `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        // by Gauss's lemma the quotient of primitive parts is integral
        let dd = d.ints.len() - 1;
        let lead = &d.ints[dd];
        let mut r = self.ints.clone();
        if r.len() <= dd {
            return None;
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        while r.len() > dd {
            let (c, rem) = r.last().unwrap().div_rem(lead);
            if !rem.is_zero() {
                return None;
            }
            let s = r.len() - 1 - dd;
            if !c.is_zero() {
                for (j, x) in d.ints.iter().enumerate() {
                    r[s + j] -= &c * x;
                }
            }
            q[s] = c;
            r.pop();
        }
        if !r.iter().all(|c| c.is_zero()) {
            return None;
        }
        Some(Poly { content: &self.content / &d.content, ints: q })
    }

    /// Rational content and primitive integer polynomial with positive leading
    /// coefficient: `self = c * prim`.
    pub fn primitive_part(&self) -> (Rat, Vec<BigInt>) {
        (self.content.clone(), self.ints.clone())
    }

    /// Monic greatest common divisor (zero iff both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Poly::one();
        }
        if self.ints == other.ints {
            return self.monic();
        }
        Poly::from_bigints(super::modgcd::gcd_primitive(&self.ints, &other.ints)).monic()
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(other);
        (self * &other.exact_div(&g).expect("gcd divides")).monic()
    }

    /// Squarefree part (monic).
    pub fn squarefree(&self) -> Poly {
        if self.is_constant() {
            return Poly::one();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    /// Human-readable form in the variable `var`.
    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = fmt_rat(c);
            let term = match k {
                0 => cs,
                1 if c.is_one() => var.to_string(),
                1 => format!("({cs})*{var}"),
                _ if c.is_one() => format!("{var}^{k}"),
                _ => format!("({cs})*{var}^{k}"),
            };
            parts.push(term);
        }
        parts.join(" + ")
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("x"))
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        // c1 A + c2 B = (G / D) (u A + v B)
        let (n1, d1) = (self.content.numer(), self.content.denom());
        let (n2, d2) = (rhs.content.numer(), rhs.content.denom());
        let dl = d1.lcm(d2);
        let g = n1.gcd(n2);
        let u = (n1 / &g) * (&dl / d1);
        let v = (n2 / &g) * (&dl / d2);
        let len = self.ints.len().max(rhs.ints.len());
        let mut c = vec![BigInt::zero(); len];
        for (i, a) in self.ints.iter().enumerate() {
            c[i] = a * &u;
        }
        for (i, b) in rhs.ints.iter().enumerate() {
            c[i] += b * &v;
        }
        Poly::from_scaled_ints(Rat::new(g, dl), c)
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![BigInt::zero(); self.ints.len() + rhs.ints.len() - 1];
        for (i, a) in self.ints.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.ints.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        Poly { content: &self.content * &rhs.content, ints: c }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { content: -&self.content, ints: self.ints.clone() }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(mut self) -> Poly {
        self.content = -self.content;
        self
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        *self = &*self - rhs;
    }
}

/// `prod_{r=0}^{k-1} (x + offset + r)`.
pub fn pochhammer_poly(offset: &Rat, k: usize) -> Poly {
    let mut acc = Poly::one();
    for r in 0..k {
        acc = &acc * &Poly::linear(offset + rint(r as i64));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::super::rat::rat;
    use super::*;

    #[test]
    fn pochhammer_poly_examples() {
        assert_eq!(pochhammer_poly(&rint(0), 2), Poly::from_ints(&[0, 1, 1]));
        let e = rat(1, 3);
        let expect = &Poly::linear(rat(4, 3)) * &Poly::linear(rat(7, 3));
        assert_eq!(pochhammer_poly(&(e + rint(1)), 2), expect);
        assert_eq!(pochhammer_poly(&rat(5, 7), 0), Poly::one());
    }

    #[test]
    fn gcd_and_division() {
        let a = &Poly::from_ints(&[-1, 0, 1]) * &Poly::from_ints(&[2, 3]);
        let b = &Poly::from_ints(&[1, 1]) * &Poly::from_ints(&[5, 0, 1]);
        assert_eq!(a.gcd(&b), Poly::from_ints(&[1, 1]));
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert_eq!(Poly::from_ints(&[0, 0, 2]).gcd(&Poly::zero()), Poly::from_ints(&[0, 0, 1]));
    }

    #[test]
    fn shift_and_compose() {
        let p = Poly::from_ints(&[1, 2, 3]);
        let d = rat(2, 5);
        let s = p.shift(&d);
        for x in [-3i64, 0, 4] {
            let xv = rint(x);
            assert_eq!(s.eval(&xv), p.eval(&(&xv + &d)));
        }
        let c = p.compose_affine(&rat(-1, 2), &rint(3));
        assert_eq!(c.eval(&rint(2)), p.eval(&rint(2)));
        let q = Poly::from_ints(&[1, 1]);
        assert_eq!(p.compose(&q), p.shift(&rint(1)));
    }

    fn euclid_gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    fn small_poly() -> impl proptest::strategy::Strategy<Value = Poly> {
        use proptest::prelude::*;
        prop::collection::vec((-40i64..40, 1i64..6), 1..6)
            .prop_map(|v| Poly::new(v.into_iter().map(|(p, q)| rat(p, q)).collect()))
    }

    proptest::proptest! {
        #[test]
        fn gcd_matches_euclid(a in small_poly(), b in small_poly(), c in small_poly()) {
            let (x, y) = (&a * &c, &b * &c);
            let g = x.gcd(&y);
            proptest::prop_assert_eq!(&g, &euclid_gcd(&x, &y));
            if !c.is_zero() && !x.is_zero() {
                proptest::prop_assert!(g.exact_div(&c.monic()).is_some());
            }
        }

        #[test]
        fn ring_ops_match_coefficients(a in small_poly(), b in small_poly(), x in -7i64..7) {
            let xv = rint(x);
            proptest::prop_assert_eq!((&a * &b).eval(&xv), a.eval(&xv) * b.eval(&xv));
            proptest::prop_assert_eq!((&a + &b).eval(&xv), a.eval(&xv) + b.eval(&xv));
            proptest::prop_assert_eq!(&a - &a, Poly::zero());
            if !b.is_zero() {
                proptest::prop_assert_eq!((&a * &b).exact_div(&b), Some(a.clone()));
            }
        }
    }
}
