//! Exact integer-root detection.
//!
//! The squarefree primitive part is reduced modulo a small prime for which it
//! stays squarefree; every root found there is Hensel-lifted past twice the
//! Cauchy root bound and the symmetric representative is tested exactly.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::Poly;
use super::rat::Rat;
use crate::error::Error;

/// All integer roots of a nonzero polynomial.
pub fn integer_roots(p: &Poly) -> Result<BTreeSet<BigInt>, Error> {
    if p.is_zero() {
        return Err(Error::Domain("integer_roots of the zero polynomial".into()));
    }
    let mut roots = BTreeSet::new();
    let (_, mut a) = p.primitive_part();
    let lowest = a.iter().position(|c| !c.is_zero()).unwrap();
    if lowest > 0 {
        roots.insert(BigInt::zero());
        a.drain(..lowest);
    }
    if a.len() <= 1 {
        return Ok(roots);
    }
    let g = Poly::from_bigints(a).squarefree();
    let (_, g) = g.primitive_part();
    if g.len() == 2 {
        // a1 x + a0
        let (q, r) = (-&g[0]).div_rem(&g[1]);
        if r.is_zero() {
            roots.insert(q);
        }
        return Ok(roots);
    }
    let bound = cauchy_bound(&g);
    let prime = choose_prime(&g);
    let modulus_target = &bound * 2 + 1;
    let dg = derivative_int(&g);
    for r0 in 0..prime {
        if eval_mod_u64(&g, r0, prime) != 0 {
            continue;
        }
        let mut r = BigInt::from(r0);
        let mut m = BigInt::from(prime);
        while m <= modulus_target {
            m = &m * &m;
            let fr = eval_int(&g, &r).mod_floor(&m);
            let dr = eval_int(&dg, &r).mod_floor(&m);
            let inv = mod_inverse(&dr, &m).expect("simple root has invertible derivative");
            r = (&r - fr * inv).mod_floor(&m);
        }
        let half = &m / 2;
        let cand = if r > half { r - &m } else { r };
        if eval_int(&g, &cand).is_zero() {
            roots.insert(cand);
        }
    }
    Ok(roots)
}

/// Integer roots as `i64`; roots outside the `i64` range are dropped.
pub fn integer_roots_i64(p: &Poly) -> Result<Vec<i64>, Error> {
    Ok(integer_roots(p)?.iter().filter_map(|r| r.to_i64()).collect())
}

fn cauchy_bound(g: &[BigInt]) -> BigInt {
    let lead = g.last().unwrap().abs();
    let mut best = Rat::zero();
    for c in &g[..g.len() - 1] {
        let v = Rat::new(c.abs(), lead.clone());
        if v > best {
            best = v;
        }
    }
    best.ceil().to_integer() + 1
}

fn derivative_int(g: &[BigInt]) -> Vec<BigInt> {
    g.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigInt::from(k))
        .collect()
}

fn eval_int(g: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in g.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn mod_u64(c: &BigInt, q: u64) -> u64 {
    c.mod_floor(&BigInt::from(q)).to_u64().unwrap()
}

fn eval_mod_u64(g: &[BigInt], x: u64, q: u64) -> u64 {
    let mut acc = 0u64;
    for c in g.iter().rev() {
        acc = (acc * x % q + mod_u64(c, q)) % q;
    }
    acc
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

fn choose_prime(g: &[BigInt]) -> u64 {
    let dg = derivative_int(g);
    for q in small_primes() {
        if mod_u64(g.last().unwrap(), q) == 0 {
            continue;
        }
        let a: Vec<u64> = g.iter().map(|c| mod_u64(c, q)).collect();
        let b: Vec<u64> = dg.iter().map(|c| mod_u64(c, q)).collect();
        if gcd_degree_mod(a, b, q) == 0 {
            return q;
        }
    }
    unreachable!("a squarefree polynomial stays squarefree modulo all but finitely many primes")
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn pow_mod(mut b: u64, mut e: u64, q: u64) -> u64 {
    let mut acc = 1u64;
    b %= q;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % q;
        }
        b = b * b % q;
        e >>= 1;
    }
    acc
}

/// Degree of `gcd(a, b)` over `F_q`.
fn gcd_degree_mod(mut a: Vec<u64>, mut b: Vec<u64>, q: u64) -> usize {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let inv = pow_mod(*b.last().unwrap(), q - 2, q);
        while a.len() >= b.len() {
            let c = a.last().unwrap() * inv % q;
            let s = a.len() - b.len();
            for (j, bc) in b.iter().enumerate() {
                a[s + j] = (a[s + j] + q - c * bc % q) % q;
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

#[cfg(test)]
mod tests {
    use super::super::rat::{rat, rint};
    use super::*;

    fn roots(p: &Poly) -> Vec<i64> {
        integer_roots_i64(p).unwrap()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(roots(&Poly::from_ints(&[-1, 0, 1])), vec![-1, 1]);
        assert!(roots(&Poly::from_ints(&[1, 0, 1])).is_empty());
        assert!(roots(&Poly::from_ints(&[-3, 2])).is_empty());
        assert!(integer_roots(&Poly::zero()).is_err());
    }

    #[test]
    fn repeated_and_large_roots() {
        let big = 1_000_003i64;
        let p = &(&Poly::from_ints(&[-big, 1]).pow(3) * &Poly::from_ints(&[7, 1]))
            * &Poly::new(vec![rat(1, 3), rint(0), rint(1)]);
        assert_eq!(roots(&p), vec![-7, big]);
        let q = &Poly::x().pow(2) * &Poly::from_ints(&[-5, 1]);
        assert_eq!(roots(&q), vec![0, 5]);
    }

    #[test]
    fn window_spot_check() {
        let p = &(&Poly::from_ints(&[12, 1]) * &Poly::from_ints(&[-40, 1]))
            * &Poly::new(vec![rat(2, 7), rint(3), rint(1)]);
        let found = roots(&p);
        let brute: Vec<i64> = (-10_000..=10_000)
            .filter(|&m| p.eval(&rint(m)).is_zero())
            .collect();
        assert_eq!(found, brute);
    }
}
