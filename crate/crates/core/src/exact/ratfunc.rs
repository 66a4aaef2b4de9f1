//! Reduced rational functions over [`Rat`].

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::Poly;
use super::rat::{rint, Rat};

/// `num / den` with `gcd(num, den) = 1` and `den` monic. Equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        RatFunc {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::from_poly(Poly::x())
    }

    /// Panics if `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides"),
                den.exact_div(&g).expect("gcd divides"),
            )
        };
        let l = den.lead();
        if l.is_one() {
            RatFunc { num, den }
        } else {
            let inv = l.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    /// The constant value, if this is constant.
    pub fn as_constant(&self) -> Option<Rat> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    /// `None` at a pole.
    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero rational function");
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: usize) -> Self {
        RatFunc {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// `r(x + d)`.
    pub fn shift(&self, d: &Rat) -> Self {
        if d.is_zero() {
            return self.clone();
        }
        RatFunc {
            num: self.num.shift(d),
            den: self.den.shift(d),
        }
    }

    pub fn shift_int(&self, d: i64) -> Self {
        self.shift(&rint(d))
    }

    /// `r(a x + b)`.
    pub fn compose_affine(&self, a: &Rat, b: &Rat) -> Self {
        let den = self.den.compose_affine(a, b);
        let l = den.lead().recip();
        RatFunc {
            num: self.num.compose_affine(a, b).scale(&l),
            den: den.scale(&l),
        }
    }

    /// `r(q(x))` for a polynomial `q`.
    pub fn compose_poly(&self, q: &Poly) -> Self {
        Self::new(self.num.compose(q), self.den.compose(q))
    }

    pub fn derivative(&self) -> Self {
        if self.den.is_one() {
            return Self::from_poly(self.num.derivative());
        }
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(n, &self.den * &self.den)
    }

    pub fn display(&self, var: &str) -> String {
        if self.den.is_one() {
            self.num.display(var)
        } else {
            format!("({}) / ({})", self.num.display(var), self.den.display(var))
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display("n"))
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        Self::from_poly(p)
    }
}

impl From<Rat> for RatFunc {
    fn from(c: Rat) -> Self {
        Self::constant(c)
    }
}

impl Add<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return RatFunc::from_poly(&self.num + &rhs.num);
            }
            return RatFunc::new(&self.num + &rhs.num, self.den.clone());
        }
        if self.den.is_one() {
            let n = &(&self.num * &rhs.den) + &rhs.num;
            return RatFunc {
                num: n,
                den: rhs.den.clone(),
            };
        }
        if rhs.den.is_one() {
            let n = &self.num + &(&rhs.num * &self.den);
            return RatFunc {
                num: n,
                den: self.den.clone(),
            };
        }
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            let n = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            if n.is_zero() {
                return RatFunc::zero();
            }
            return RatFunc {
                num: n,
                den: &self.den * &rhs.den,
            };
        }
        // Henrici: common factors of the new numerator and denominator divide g.
        let bd = rhs.den.exact_div(&g).unwrap();
        let ad = self.den.exact_div(&g).unwrap();
        let n = &(&self.num * &bd) + &(&rhs.num * &ad);
        if n.is_zero() {
            return RatFunc::zero();
        }
        let h = n.gcd(&g);
        let den = &self.den * &bd;
        if h.is_one() {
            RatFunc { num: n, den }
        } else {
            RatFunc {
                num: n.exact_div(&h).unwrap(),
                den: den.exact_div(&h).unwrap(),
            }
        }
    }
}

impl Sub<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let (a, d) = if g1.is_one() {
            (self.num.clone(), rhs.den.clone())
        } else {
            (
                self.num.exact_div(&g1).unwrap(),
                rhs.den.exact_div(&g1).unwrap(),
            )
        };
        let (c, b) = if g2.is_one() {
            (rhs.num.clone(), self.den.clone())
        } else {
            (
                rhs.num.exact_div(&g2).unwrap(),
                self.den.exact_div(&g2).unwrap(),
            )
        };
        let num = &a * &c;
        let den = &b * &d;
        let l = den.lead();
        if l.is_one() {
            RatFunc { num, den }
        } else {
            let inv = l.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }
}

impl Div<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self * &rhs.recip()
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::super::rat::rat;
    use super::*;

    #[test]
    fn normal_form() {
        let r = RatFunc::new(Poly::from_ints(&[-2, 0, 2]), Poly::from_ints(&[3, 3]));
        assert_eq!(r.num(), &Poly::new(vec![rat(-2, 3), rat(2, 3)]));
        assert_eq!(r.den(), &Poly::one());
        let a = RatFunc::new(Poly::one(), Poly::from_ints(&[1, 1]));
        let b = RatFunc::new(Poly::from_ints(&[-1]), Poly::from_ints(&[1, 1]));
        assert!((&a + &b).is_zero());
    }

    #[test]
    fn arithmetic_matches_pointwise() {
        let a = RatFunc::new(Poly::from_ints(&[1, 2]), Poly::from_ints(&[3, 0, 1]));
        let b = RatFunc::new(Poly::from_ints(&[0, 1, 1]), Poly::from_ints(&[-1, 2]));
        let x = rat(5, 7);
        let (ax, bx) = (a.eval(&x).unwrap(), b.eval(&x).unwrap());
        assert_eq!((&a + &b).eval(&x).unwrap(), &ax + &bx);
        assert_eq!((&a * &b).eval(&x).unwrap(), &ax * &bx);
        assert_eq!((&a / &b).eval(&x).unwrap(), &ax / &bx);
        assert_eq!(a.shift(&rint(2)).eval(&x).unwrap(), a.eval(&(&x + rint(2))).unwrap());
    }
}
