#![allow(dead_code)]

use bispectral_core::exact::rat::{rat, rint, Rat};
use bispectral_core::darboux::{check_admissible, DarbouxSpec};
use bispectral_core::ParamSet;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rat(r: &mut ChaCha8Rng) -> Rat {
    let q = r.gen_range(1..=9);
    let p = r.gen_range(-20..=20);
    rat(p, q)
}

/// Random rational (α, β, ε) satisfying the non-integrality conditions.
pub fn random_params(r: &mut ChaCha8Rng) -> ParamSet {
    loop {
        if let Ok(p) = ParamSet::new(small_rat(r), small_rat(r), small_rat(r)) {
            return p;
        }
    }
}

/// Integer α, β with a random non-integer ε satisfying the conditions.
pub fn int_params(alpha: i64, beta: i64, eps: Rat) -> ParamSet {
    ParamSet::new(rint(alpha), rint(beta), eps).expect("conditions")
}

pub fn nonzero(r: &mut ChaCha8Rng) -> Rat {
    loop {
        let x = small_rat(r);
        if x != rint(0) {
            return x;
        }
    }
}

/// Random admissible spec with nonzero leading kernel data.
pub fn random_spec(r: &mut ChaCha8Rng, p: ParamSet, k: usize, l: usize) -> DarbouxSpec {
    loop {
        let mut v = |n: usize| (0..n).map(|_| small_rat(r)).collect::<Vec<_>>();
        let (mut a, mut b, mut c, mut d) = (v(k), v(k), v(l), v(l));
        if k > 0 {
            a[0] = nonzero(r);
            b[0] = nonzero(r);
        }
        if l > 0 {
            c[0] = nonzero(r);
            d[0] = nonzero(r);
        }
        let s = DarbouxSpec::new(p.clone(), k, l, a, b, c, d).unwrap();
        if check_admissible(&s).unwrap().admissible() {
            return s;
        }
    }
}
