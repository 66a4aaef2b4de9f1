//! The parameter triple (α, β, ε) and the substitutions tied to it.

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rat::{fmt_rat, is_integer, rat, rint, Rat};
use crate::exact::{Poly, RatFunc};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ParamsJson", into = "ParamsJson")]
pub struct ParamSet {
    pub alpha: Rat,
    pub beta: Rat,
    pub eps: Rat,
}

#[derive(Serialize, Deserialize)]
struct ParamsJson {
    alpha: String,
    beta: String,
    eps: String,
}

impl TryFrom<ParamsJson> for ParamSet {
    type Error = Error;
    fn try_from(j: ParamsJson) -> Result<Self> {
        use crate::exact::rat::parse_rat;
        Ok(ParamSet::unchecked(
            parse_rat(&j.alpha)?,
            parse_rat(&j.beta)?,
            parse_rat(&j.eps)?,
        ))
    }
}

impl From<ParamSet> for ParamsJson {
    fn from(p: ParamSet) -> Self {
        ParamsJson {
            alpha: fmt_rat(&p.alpha),
            beta: fmt_rat(&p.beta),
            eps: fmt_rat(&p.eps),
        }
    }
}

impl ParamSet {
    /// Builds the triple and checks that ε, ε+α, ε+β, ε+α+β and 2ε+α+β are non-integers.
    pub fn new(alpha: Rat, beta: Rat, eps: Rat) -> Result<Self> {
        let p = Self::unchecked(alpha, beta, eps);
        p.check_conditions()?;
        Ok(p)
    }

    pub fn unchecked(alpha: Rat, beta: Rat, eps: Rat) -> Self {
        ParamSet { alpha, beta, eps }
    }

    pub fn from_ints(alpha: i64, beta: i64, eps: Rat) -> Result<Self> {
        Self::new(rint(alpha), rint(beta), eps)
    }

    pub fn check_conditions(&self) -> Result<()> {
        let (a, b, e) = (&self.alpha, &self.beta, &self.eps);
        let checks = [
            ("eps", e.clone()),
            ("eps+alpha", e + a),
            ("eps+beta", e + b),
            ("eps+alpha+beta", e + a + b),
            ("2*eps+alpha+beta", e + e + a + b),
        ];
        for (name, v) in checks {
            if is_integer(&v) {
                return Err(Error::Conditions(format!(
                    "{name} = {} is an integer",
                    fmt_rat(&v)
                )));
            }
        }
        Ok(())
    }

    /// α + β.
    pub fn ab(&self) -> Rat {
        &self.alpha + &self.beta
    }

    /// The centre c = ε + (α+β+1)/2 of the reflection n ↦ −(n + 2ε + α + β + 1).
    pub fn center(&self) -> Rat {
        &self.eps + (self.ab() + Rat::one()) * rat(1, 2)
    }

    /// λ_ε(n) = (n+ε)(n+ε+α+β+1).
    pub fn lambda(&self) -> RatFunc {
        let a = Poly::linear(self.eps.clone());
        let b = Poly::linear(&self.eps + self.ab() + Rat::one());
        RatFunc::from_poly(&a * &b)
    }

    /// λ_ε(n + d) for an integer shift d.
    pub fn lambda_at(&self, d: i64) -> RatFunc {
        self.lambda().shift_int(d)
    }

    /// The same triple with α replaced by α + da and β by β + db.
    pub fn shifted(&self, da: i64, db: i64) -> ParamSet {
        ParamSet::unchecked(&self.alpha + rint(da), &self.beta + rint(db), self.eps.clone())
    }

    pub fn alpha_int(&self) -> Option<i64> {
        crate::exact::rat::to_i64(&self.alpha).filter(|_| is_integer(&self.alpha))
    }

    pub fn beta_int(&self) -> Option<i64> {
        crate::exact::rat::to_i64(&self.beta).filter(|_| is_integer(&self.beta))
    }
}

/// `r(n + d)`.
pub fn shift_subst(r: &RatFunc, d: i64) -> RatFunc {
    r.shift_int(d)
}

/// `r(−(n + 2ε + α + β + 1))`.
pub fn involute_subst(r: &RatFunc, p: &ParamSet) -> RatFunc {
    let off = -(&p.eps + &p.eps + p.ab() + Rat::one());
    r.compose_affine(&-Rat::one(), &off)
}

/// Splits `p(n)` as `E(u²) + u·O(u²)` where `u = n + c`.
fn split_even_odd(p: &Poly, c: &Rat) -> (Poly, Poly) {
    let q = p.shift(&-c.clone());
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for (k, a) in q.coeffs().iter().enumerate() {
        if k % 2 == 0 {
            even.push(a.clone());
        } else {
            odd.push(a.clone());
        }
    }
    (Poly::new(even), Poly::new(odd))
}

/// Finds ρ with ρ(λ_ε(n)) = r(n). Fails when r is not fixed by the reflection,
/// reporting the non-invariant part.
pub fn rewrite_in_lambda(r: &RatFunc, p: &ParamSet) -> Result<RatFunc> {
    // With u = n + c and h = (α+β+1)/2: λ = u² − h², and the reflection is u ↦ −u.
    let c = p.center();
    let h = (p.ab() + Rat::one()) * rat(1, 2);
    let h2 = &h * &h;
    let (en, on) = split_even_odd(r.num(), &c);
    let (ed, od) = split_even_odd(r.den(), &c);
    // E(u²) with u² = x + h².
    let back = |e: &Poly| e.shift(&h2);
    if on.is_zero() && od.is_zero() {
        return Ok(RatFunc::new(back(&en), back(&ed)));
    }
    if en.is_zero() && ed.is_zero() {
        return Ok(RatFunc::new(back(&on), back(&od)));
    }
    let witness = r - &involute_subst(r, p);
    Err(Error::Domain(format!(
        "not invariant under the reflection; r - I(r) = {}",
        witness.display("n")
    )))
}

/// ρ(λ_ε(n)) for a polynomial or rational ρ in x.
pub fn substitute_lambda(rho: &RatFunc, p: &ParamSet) -> RatFunc {
    let lam = p.lambda();
    rho.compose_poly(lam.num())
}


#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> ParamSet {
        ParamSet::new(rat(2, 1), rat(1, 3), rat(1, 7)).unwrap()
    }

    #[test]
    fn conditions() {
        assert!(ParamSet::new(rint(2), rint(0), rint(0)).is_err());
        assert!(ParamSet::new(rint(2), rint(0), rat(1, 3)).is_ok());
        assert!(ParamSet::new(rint(2), rint(0), rat(1, 2)).is_err());
        assert!(ParamSet::new(rint(1), rint(0), rat(1, 2)).is_err());
    }

    #[test]
    fn lambda_shift_difference() {
        let p = params();
        for d in -3..=3 {
            let diff = &p.lambda() - &shift_subst(&p.lambda(), d);
            let expect = Poly::new(vec![
                -rint(d) * (&p.eps + &p.eps + p.ab() + rint(d) + Rat::one()),
                -rint(2 * d),
            ]);
            assert_eq!(diff, RatFunc::from_poly(expect));
        }
    }

    #[test]
    fn involution() {
        let p = params();
        assert_eq!(involute_subst(&p.lambda(), &p), p.lambda());
        let u = RatFunc::from_poly(Poly::linear(p.center()));
        assert_eq!(involute_subst(&u, &p), -&u);
        let r = RatFunc::new(Poly::from_ints(&[1, 2, 3]), Poly::from_ints(&[5, 0, 1]));
        assert_eq!(involute_subst(&involute_subst(&r, &p), &p), r);
    }

    #[test]
    fn rewriting() {
        let p = params();
        let lam = p.lambda();
        assert_eq!(rewrite_in_lambda(&lam, &p).unwrap(), RatFunc::var());
        let r = &(&lam * &lam) + &lam;
        assert_eq!(
            rewrite_in_lambda(&r, &p).unwrap(),
            RatFunc::from_poly(Poly::from_ints(&[0, 1, 1]))
        );
        assert!(rewrite_in_lambda(&RatFunc::var(), &p).is_err());
        let q = RatFunc::new(Poly::from_ints(&[1, 0, 2]), Poly::from_ints(&[3, 1]));
        let back = substitute_lambda(&q, &p);
        assert_eq!(rewrite_in_lambda(&back, &p).unwrap(), q);
    }
}
