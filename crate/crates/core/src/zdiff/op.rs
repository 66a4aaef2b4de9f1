//! Differential operators `Σ c_d(z) ∂_z^d` with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::exact::rat::{binomial, Rat};
use crate::exact::{Poly, RatFunc};

#[derive(Clone, PartialEq, Eq, Default)]
pub struct DiffOpZ {
    coeffs: BTreeMap<usize, RatFunc>,
}

impl DiffOpZ {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::mult(RatFunc::one())
    }

    /// Multiplication by `r(z)`.
    pub fn mult(r: RatFunc) -> Self {
        Self::monomial(r, 0)
    }

    pub fn mult_poly(p: Poly) -> Self {
        Self::mult(RatFunc::from_poly(p))
    }

    pub fn constant(c: Rat) -> Self {
        Self::mult(RatFunc::constant(c))
    }

    /// Multiplication by `z`.
    pub fn z() -> Self {
        Self::mult(RatFunc::var())
    }

    /// `∂_z`.
    pub fn d() -> Self {
        Self::monomial(RatFunc::one(), 1)
    }

    /// `r(z) ∂^k`.
    pub fn monomial(r: RatFunc, k: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        if !r.is_zero() {
            coeffs.insert(k, r);
        }
        DiffOpZ { coeffs }
    }

    pub fn from_coeffs(it: impl IntoIterator<Item = (usize, RatFunc)>) -> Self {
        let mut g = DiffOpZ::zero();
        for (k, c) in it {
            g.add_term(k, &c);
        }
        g
    }

    fn add_term(&mut self, k: usize, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        let s = match self.coeffs.get(&k) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if s.is_zero() {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, s);
        }
    }

    pub fn coeff(&self, k: usize) -> RatFunc {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &RatFunc)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest derivative order, `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        DiffOpZ {
            coeffs: self.coeffs.iter().map(|(k, x)| (*k, x.scale(c))).collect(),
        }
    }

    /// `r(z)·G`.
    pub fn left_mul(&self, r: &RatFunc) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|(k, c)| (*k, r * c)))
    }

    /// Composition by the Leibniz rule `∂^i b = Σ_k C(i,k) b^{(k)} ∂^{i−k}`.
    pub fn compose(&self, o: &DiffOpZ) -> DiffOpZ {
        let max_i = self.order().unwrap_or(0);
        let mut acc: BTreeMap<usize, RatFunc> = BTreeMap::new();
        for (j, b) in &o.coeffs {
            // derivatives of b up to the highest order in self
            let mut ders = Vec::with_capacity(max_i + 1);
            ders.push(b.clone());
            for k in 1..=max_i {
                let next = ders[k - 1].derivative();
                let stop = next.is_zero();
                ders.push(next);
                if stop {
                    break;
                }
            }
            for (i, a) in &self.coeffs {
                for (k, bk) in ders.iter().enumerate().take(i + 1) {
                    if bk.is_zero() {
                        continue;
                    }
                    let c = (a * bk).scale(&binomial(*i, k));
                    let e = acc.entry(i - k + j).or_default();
                    *e = &*e + &c;
                }
            }
        }
        DiffOpZ::from_coeffs(acc)
    }

    pub fn pow(&self, e: usize) -> DiffOpZ {
        let mut r = DiffOpZ::identity();
        for _ in 0..e {
            r = r.compose(self);
        }
        r
    }

    /// `Σ q_i G^i`.
    pub fn poly_eval(&self, q: &Poly) -> DiffOpZ {
        let mut r = DiffOpZ::zero();
        for c in q.coeffs().iter().rev() {
            r = &r.compose(self) + &DiffOpZ::constant(c.clone());
        }
        r
    }

    /// Applies the operator to a rational function of `z`.
    pub fn apply(&self, f: &RatFunc) -> RatFunc {
        let mut out = RatFunc::zero();
        let mut der = f.clone();
        let top = self.order().unwrap_or(0);
        for k in 0..=top {
            if let Some(c) = self.coeffs.get(&k) {
                out = &out + &(c * &der);
            }
            if k < top {
                der = der.derivative();
            }
        }
        out
    }

    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .rev()
            .map(|(k, c)| format!("({}) d^{k}", c.display("z")))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Debug for DiffOpZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

impl Add<&DiffOpZ> for &DiffOpZ {
    type Output = DiffOpZ;
    fn add(self, o: &DiffOpZ) -> DiffOpZ {
        let mut r = self.clone();
        for (k, c) in &o.coeffs {
            r.add_term(*k, c);
        }
        r
    }
}

impl Sub<&DiffOpZ> for &DiffOpZ {
    type Output = DiffOpZ;
    fn sub(self, o: &DiffOpZ) -> DiffOpZ {
        let mut r = self.clone();
        for (k, c) in &o.coeffs {
            r.add_term(*k, &-c);
        }
        r
    }
}

impl Neg for &DiffOpZ {
    type Output = DiffOpZ;
    fn neg(self) -> DiffOpZ {
        DiffOpZ {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Mul<&DiffOpZ> for &DiffOpZ {
    type Output = DiffOpZ;
    fn mul(self, o: &DiffOpZ) -> DiffOpZ {
        self.compose(o)
    }
}
