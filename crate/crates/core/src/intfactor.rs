//! Integer factorization at desk scale: trial division, Miller-Rabin,
//! Brent's variant of Pollard rho.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::Z;

pub const TRIAL_LIMIT: u64 = 1_000_000;
/// Total rho iterations allowed per call of [`factor`].
pub const RHO_BUDGET: u64 = 2_000_000;

fn sieve(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

fn small_primes() -> &'static [u64] {
    use std::sync::OnceLock;
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| sieve(TRIAL_LIMIT))
}

const MR_BASES: [u64; 20] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71];

/// Miller-Rabin with the first 20 prime bases. Deterministic below
/// 3.3 * 10^24; a strong probable-prime test above that.
pub fn is_probable_prime(n: &Z) -> bool {
    if n < &Z::from(2) {
        return false;
    }
    for &b in &MR_BASES {
        let b = Z::from(b);
        if n == &b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let one = Z::one();
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for &b in &MR_BASES {
        let mut x = Z::from(b).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn is_prime_u64(n: u64) -> bool {
    is_probable_prime(&Z::from(n))
}

fn rho(n: &Z, c: u64, budget: &mut u64) -> Option<Z> {
    let c = Z::from(c);
    let f = |x: &Z| (x * x + &c) % n;
    let (mut y, mut r, mut q) = (Z::from(2), 1u64, Z::one());
    let mut g = Z::one();
    let (mut x, mut ys) = (Z::zero(), Z::zero());
    const M: u64 = 128;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..M.min(r - k) {
                y = f(&y);
                q = (q * (&x - &y).abs()) % n;
            }
            g = q.gcd(n);
            k += M;
            *budget = budget.checked_sub(M.min(r))?;
        }
        r *= 2;
    }
    if &g == n {
        loop {
            ys = f(&ys);
            g = (&x - &ys).abs().gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    (&g != n).then_some(g)
}

fn split_large(n: Z, budget: &mut u64, out: &mut Vec<Z>) -> Result<()> {
    if n.is_one() {
        return Ok(());
    }
    if is_probable_prime(&n) {
        out.push(n);
        return Ok(());
    }
    let r = n.sqrt();
    if &r * &r == n {
        split_large(r.clone(), budget, out)?;
        return split_large(r, budget, out);
    }
    for c in 1.. {
        if *budget == 0 {
            break;
        }
        if let Some(d) = rho(&n, c, budget) {
            let other = &n / &d;
            split_large(d, budget, out)?;
            return split_large(other, budget, out);
        }
    }
    Err(Error::DiscFactorizationFailed(n.to_string()))
}

/// Prime factorization of `|n|` as sorted `(prime, exponent)` pairs.
pub fn factor(n: &Z) -> Result<Vec<(Z, u32)>> {
    let mut m = n.abs();
    if m.is_zero() {
        return Err(Error::MalformedInput("cannot factor 0".into()));
    }
    let mut primes: Vec<Z> = Vec::new();
    for &p in small_primes() {
        if m.is_one() {
            break;
        }
        if let Some(mm) = m.to_u64() {
            if p * p > mm {
                break;
            }
        }
        let pz = Z::from(p);
        while (&m % &pz).is_zero() {
            m /= &pz;
            primes.push(pz.clone());
        }
    }
    let mut budget = RHO_BUDGET;
    if !m.is_one() {
        if m.to_u64().is_some_and(|mm| mm < TRIAL_LIMIT * TRIAL_LIMIT) {
            primes.push(m);
        } else {
            split_large(m, &mut budget, &mut primes)?;
        }
    }
    primes.sort();
    let mut out: Vec<(Z, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    Ok(out)
}
