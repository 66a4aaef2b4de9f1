//! Noncommutative polynomials in two letters: `Λ` (the eigenvalue λ_ε) and `M`
//! (the gauged Jacobi operator). Words are kept unreduced.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::op::DiffOpZ;
use crate::exact::rat::Rat;
use crate::exact::Poly;
use crate::jacobi;
use crate::ndiff::{DiffOp, SignedRatFunc};
use crate::params::ParamSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Lambda,
    M,
}

impl Letter {
    pub fn symbol(self) -> char {
        match self {
            Letter::Lambda => 'Λ',
            Letter::M => 'M',
        }
    }

    pub fn from_symbol(c: char) -> Option<Letter> {
        match c {
            'Λ' | 'L' => Some(Letter::Lambda),
            'M' => Some(Letter::M),
            _ => None,
        }
    }
}

pub type Word = Vec<Letter>;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct FreeElem {
    terms: BTreeMap<Word, Rat>,
}

impl FreeElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::term(c, Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Self::term(Rat::one(), vec![l])
    }

    pub fn lambda() -> Self {
        Self::letter(Letter::Lambda)
    }

    pub fn m() -> Self {
        Self::letter(Letter::M)
    }

    pub fn term(c: Rat, w: Word) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        FreeElem { terms }
    }

    /// `Σ p_i Λ^i`.
    pub fn poly_in_lambda(p: &Poly) -> Self {
        let mut r = FreeElem::zero();
        for (i, c) in p.coeffs().iter().enumerate() {
            r.add_term(vec![Letter::Lambda; i], c);
        }
        r
    }

    fn add_term(&mut self, w: Word, c: &Rat) {
        if c.is_zero() {
            return;
        }
        let s = match self.terms.get(&w) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if s.is_zero() {
            self.terms.remove(&w);
        } else {
            self.terms.insert(w, s);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True if no word contains `M`.
    pub fn is_lambda_only(&self) -> bool {
        self.terms.keys().all(|w| w.iter().all(|l| *l == Letter::Lambda))
    }

    /// Longest word length.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// Largest number of `Λ` letters in a single word.
    pub fn lambda_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|w| w.iter().filter(|l| **l == Letter::Lambda).count())
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        FreeElem {
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    pub fn free_add(&self, o: &FreeElem) -> FreeElem {
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(w.clone(), c);
        }
        r
    }

    pub fn free_mul(&self, o: &FreeElem) -> FreeElem {
        let mut r = FreeElem::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                r.add_term(w, &(c1 * c2));
            }
        }
        r
    }

    pub fn free_commutator(a: &FreeElem, b: &FreeElem) -> FreeElem {
        &a.free_mul(b) - &b.free_mul(a)
    }

    pub fn pow(&self, e: usize) -> FreeElem {
        let mut r = FreeElem::one();
        for _ in 0..e {
            r = r.free_mul(self);
        }
        r
    }

    /// `ad_Λ^m(X) = Σ_k C(m,k) (−1)^{m−k} Λ^k X Λ^{m−k}`.
    pub fn ad_lambda_pow(&self, m: usize) -> FreeElem {
        let mut r = FreeElem::zero();
        for k in 0..=m {
            let mut c = crate::exact::rat::binomial(m, k);
            if (m - k) % 2 == 1 {
                c = -c;
            }
            for (w, x) in &self.terms {
                let mut nw = vec![Letter::Lambda; k];
                nw.extend_from_slice(w);
                nw.extend(std::iter::repeat_n(Letter::Lambda, m - k));
                r.add_term(nw, &(x * &c));
            }
        }
        r
    }

    /// Substitutes `Λ ↦ λ_ε(n)` and `M ↦ L̃` (a homomorphism).
    pub fn eval_to_diffn(&self, p: &ParamSet) -> DiffOp {
        let lam = SignedRatFunc::from(p.lambda());
        let lt = jacobi::jacobi_l_tilde(p);
        let items: Vec<(&[Letter], &Rat)> = self.terms.iter().map(|(w, c)| (w.as_slice(), c)).collect();
        eval_n_rec(&items, &lam, &lt)
    }

    /// Applies the anti-isomorphism `b`: a word `s₁…s_m` goes to `b(s_m)∘…∘b(s₁)`
    /// with `b(Λ) = B_{α,β}` and `b(M) = z`.
    pub fn eval_to_diffz_b(&self, p: &ParamSet) -> DiffOpZ {
        let b = jacobi::b_op(&p.alpha, &p.beta);
        let z = DiffOpZ::z();
        let items: Vec<(&[Letter], &Rat)> = self.terms.iter().map(|(w, c)| (w.as_slice(), c)).collect();
        eval_b_rec(&items, &b, &z)
    }

    pub fn word_string(w: &[Letter]) -> String {
        w.iter().map(|l| l.symbol()).collect()
    }

    pub fn parse_word(s: &str) -> Option<Word> {
        s.chars().map(Letter::from_symbol).collect()
    }
}

/// Groups words by their first letter: returns the constant and the suffix lists.
type Split<'a> = (Rat, Vec<(&'a [Letter], &'a Rat)>, Vec<(&'a [Letter], &'a Rat)>);

fn split_first<'a>(items: &[(&'a [Letter], &'a Rat)]) -> Split<'a> {
    let mut c = Rat::zero();
    let mut lam = Vec::new();
    let mut m = Vec::new();
    for (w, x) in items {
        match w.split_first() {
            None => c += *x,
            Some((Letter::Lambda, rest)) => lam.push((rest, *x)),
            Some((Letter::M, rest)) => m.push((rest, *x)),
        }
    }
    (c, lam, m)
}

fn eval_n_rec(items: &[(&[Letter], &Rat)], lam: &SignedRatFunc, lt: &DiffOp) -> DiffOp {
    let (c, l_items, m_items) = split_first(items);
    let mut out = DiffOp::constant(c);
    if !l_items.is_empty() {
        out = &out + &eval_n_rec(&l_items, lam, lt).left_mul(lam);
    }
    if !m_items.is_empty() {
        out = &out + &lt.compose(&eval_n_rec(&m_items, lam, lt));
    }
    out
}

fn eval_b_rec(items: &[(&[Letter], &Rat)], b: &DiffOpZ, z: &DiffOpZ) -> DiffOpZ {
    let (c, l_items, m_items) = split_first(items);
    let mut out = DiffOpZ::constant(c);
    if !l_items.is_empty() {
        out = &out + &eval_b_rec(&l_items, b, z).compose(b);
    }
    if !m_items.is_empty() {
        out = &out + &eval_b_rec(&m_items, b, z).compose(z);
    }
    out
}

impl fmt::Debug for FreeElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let ws = if w.is_empty() { "1".to_string() } else { Self::word_string(w) };
                format!("({}) {ws}", crate::exact::fmt_rat(c))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add<&FreeElem> for &FreeElem {
    type Output = FreeElem;
    fn add(self, o: &FreeElem) -> FreeElem {
        self.free_add(o)
    }
}

impl Sub<&FreeElem> for &FreeElem {
    type Output = FreeElem;
    fn sub(self, o: &FreeElem) -> FreeElem {
        self.free_add(&-o)
    }
}

impl Neg for &FreeElem {
    type Output = FreeElem;
    fn neg(self) -> FreeElem {
        self.scale(&-Rat::one())
    }
}

impl Mul<&FreeElem> for &FreeElem {
    type Output = FreeElem;
    fn mul(self, o: &FreeElem) -> FreeElem {
        self.free_mul(o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::rint;

    #[test]
    fn words() {
        let l = FreeElem::lambda();
        let m = FreeElem::m();
        let lm = l.free_mul(&m);
        assert_eq!(lm.terms().next().unwrap().0, &vec![Letter::Lambda, Letter::M]);
        assert!(FreeElem::free_commutator(&l, &l).is_zero());
        let e = FreeElem::free_commutator(&l, &m).free_mul(&l);
        let expect = &FreeElem::term(rint(1), vec![Letter::Lambda, Letter::M, Letter::Lambda])
            - &FreeElem::term(rint(1), vec![Letter::M, Letter::Lambda, Letter::Lambda]);
        assert_eq!(e, expect);
    }

    #[test]
    fn ad_power_matches_iterated_commutator() {
        let x = &FreeElem::m().free_mul(&FreeElem::lambda()) + &FreeElem::m();
        let mut it = x.clone();
        for _ in 0..3 {
            it = FreeElem::free_commutator(&FreeElem::lambda(), &it);
        }
        assert_eq!(x.ad_lambda_pow(3), it);
    }
}
