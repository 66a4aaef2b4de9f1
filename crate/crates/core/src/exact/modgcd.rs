//! Polynomial gcd over Z by reduction modulo word-size primes, Chinese
//! remaindering, and trial division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn primes() -> impl Iterator<Item = u64> {
    ((1u64 << 30)..(1u64 << 31)).rev().filter(|&p| is_prime(p))
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

fn inv_mod(a: u64, q: u64) -> u64 {
    pow_mod(a, q - 2, q)
}

fn reduce(v: &[BigInt], q: u64) -> Vec<u64> {
    let qb = BigInt::from(q);
    let mut out: Vec<u64> = v.iter().map(|c| c.mod_floor(&qb).to_u64().unwrap()).collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// Monic gcd over `F_q`.
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, q: u64) -> Vec<u64> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let inv = inv_mod(*b.last().unwrap(), q);
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
    let inv = inv_mod(*a.last().unwrap(), q);
    a.iter().map(|c| c * inv % q).collect()
}

fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn divides(d: &[BigInt], a: &[BigInt]) -> bool {
    let dd = d.len() - 1;
    let lead = &d[dd];
    let mut r = a.to_vec();
    while r.len() > dd {
        let top = r.last().unwrap();
        let (c, rem) = top.div_rem(lead);
        if !rem.is_zero() {
            return false;
        }
        let s = r.len() - 1 - dd;
        if !c.is_zero() {
            for (j, x) in d.iter().enumerate() {
                r[s + j] -= &c * x;
            }
        }
        debug_assert!(r.last().unwrap().is_zero());
        r.pop();
    }
    r.iter().all(|c| c.is_zero())
}

/// Primitive gcd (positive leading coefficient) of two primitive nonconstant
/// integer polynomials.
pub(crate) fn gcd_primitive(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let la = a.last().unwrap();
    let lb = b.last().unwrap();
    let gamma = la.gcd(lb);
    let mut acc: Option<(Vec<BigInt>, BigInt)> = None;
    for q in primes() {
        let qb = BigInt::from(q);
        if (la % &qb).is_zero() || (lb % &qb).is_zero() {
            continue;
        }
        let g = gcd_mod(reduce(a, q), reduce(b, q), q);
        if g.len() == 1 {
            return vec![BigInt::one()];
        }
        let gm = gamma.mod_floor(&qb).to_u64().unwrap();
        let g: Vec<u64> = g.iter().map(|c| c * gm % q).collect();
        let (h, m) = match acc.take() {
            None => {
                (g.iter().map(|&c| symmetric(BigInt::from(c), &qb)).collect(), qb)
            }
            Some((h, m)) if h.len() > g.len() => {
                let _ = m;
                (g.iter().map(|&c| symmetric(BigInt::from(c), &qb)).collect(), qb)
            }
            Some((h, m)) if h.len() < g.len() => {
                acc = Some((h, m));
                continue;
            }
            Some((h, m)) => {
                let minv = inv_mod(m.mod_floor(&qb).to_u64().unwrap(), q);
                let newm = &m * &qb;
                let mut changed = false;
                let nh: Vec<BigInt> = h
                    .iter()
                    .zip(&g)
                    .map(|(hc, &gc)| {
                        let hq = hc.mod_floor(&qb).to_u64().unwrap();
                        let t = (gc + q - hq) % q * minv % q;
                        let x = symmetric(hc + &m * BigInt::from(t), &newm);
                        if &x != hc {
                            changed = true;
                        }
                        x
                    })
                    .collect();
                if !changed {
                    let c = content(&nh);
                    let mut cand: Vec<BigInt> = nh.iter().map(|x| x / &c).collect();
                    if cand.last().unwrap().is_negative() {
                        cand.iter_mut().for_each(|x| *x = -&*x);
                    }
                    if divides(&cand, a) && divides(&cand, b) {
                        return cand;
                    }
                }
                (nh, newm)
            }
        };
        acc = Some((h, m));
    }
    unreachable!("prime supply exhausted")
}

fn symmetric(x: BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}
