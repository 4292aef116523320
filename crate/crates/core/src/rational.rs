//! Helpers around `num_rational::BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;
pub type Z = BigInt;

pub fn q(n: i64) -> Q {
    Q::from_integer(Z::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(Z::from(n), Z::from(d))
}

pub fn qvec(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}

pub fn to_q(v: &[Z]) -> Vec<Q> {
    v.iter().cloned().map(Q::from_integer).collect()
}

/// Integer coordinates if every entry is integral.
pub fn to_z(v: &[Q]) -> Option<Vec<Z>> {
    v.iter()
        .map(|x| x.is_integer().then(|| x.to_integer()))
        .collect()
}

/// Least common multiple of all denominators (1 for an empty slice).
pub fn common_denominator(v: &[Q]) -> Z {
    v.iter().fold(Z::one(), |acc, x| acc.lcm(x.denom()))
}

/// Write `v = a / d` with `a` integral and `d` the least positive denominator.
pub fn split_denominator(v: &[Q]) -> (Vec<Z>, Z) {
    let d = common_denominator(v);
    let a = v.iter().map(|x| (x * &d).to_integer()).collect();
    (a, d)
}

pub fn content(v: &[Z]) -> Z {
    v.iter().fold(Z::zero(), |acc, x| acc.gcd(x))
}

/// True iff the reduced denominator is prime to `p` (membership in Z_(p)).
pub fn is_p_integral(x: &Q, p: u64) -> bool {
    !(x.denom() % Z::from(p)).is_zero()
}

pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::MalformedInput(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Z = n.trim().parse().map_err(|_| bad())?;
            let d: Z = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Comma separated rational coordinates, e.g. `0,1/2,1/2,1`.
pub fn parse_coords(s: &str) -> Result<Vec<Q>> {
    s.split(',').map(parse_rational).collect()
}

pub fn fmt_rational(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn fmt_coords(v: &[Q]) -> Vec<String> {
    v.iter().map(fmt_rational).collect()
}

/// Round toward negative infinity modulo a positive integer.
pub fn mod_floor(a: &Z, m: &Z) -> Z {
    let r = a % m;
    if r.is_negative() {
        r + m
    } else {
        r
    }
}

/// Symmetric residue in (-m/2, m/2].
pub fn mod_symmetric(a: &Z, m: &Z) -> Z {
    let r = mod_floor(a, m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}
