//! Factorization in Q[X]: squarefree splitting, Berlekamp modulo a small
//! prime, quadratic Hensel lifting and Zassenhaus subset recombination.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::modpoly::{berlekamp, ModPoly};
use crate::poly::RationalPolynomial;
use crate::rational::{mod_floor, mod_symmetric, Q, Z};

/// Largest degree accepted by [`poly_factor_q`].
pub const MAX_DEGREE: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    /// Leading coefficient of the input.
    pub unit: Q,
    /// Monic irreducible factors with multiplicities, sorted by degree then
    /// coefficients.
    pub factors: Vec<(RationalPolynomial, usize)>,
}

impl Factorization {
    pub fn expand(&self) -> RationalPolynomial {
        self.factors
            .iter()
            .fold(RationalPolynomial::constant(self.unit.clone()), |acc, (g, m)| &acc * &g.pow(*m as u64))
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, m)| *m == 1)
    }
}

pub fn poly_factor_q(f: &RationalPolynomial) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let deg = f.degree() as usize;
    if deg > MAX_DEGREE {
        return Err(Error::DegreeTooLarge(deg));
    }
    let mut factors = Vec::new();
    for (part, mult) in f.squarefree_decomposition() {
        for g in factor_squarefree(&part) {
            factors.push((g, mult));
        }
    }
    factors.sort_by(|(a, _), (b, _)| a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs())));
    Ok(Factorization { unit: f.leading_coeff(), factors })
}

type ZPoly = Vec<Z>;

fn trim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn zmul(a: &[Z], b: &[Z]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Z::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn zadd(a: &[Z], b: &[Z]) -> ZPoly {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
        .collect()
}

fn zsub(a: &[Z], b: &[Z]) -> ZPoly {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
        .collect()
}

fn zmod(a: &[Z], m: &Z) -> ZPoly {
    trim(a.iter().map(|x| mod_floor(x, m)).collect())
}

/// Division by a monic polynomial modulo `m`.
fn zdivrem_monic(a: &[Z], b: &[Z], m: &Z) -> (ZPoly, ZPoly) {
    let b = zmod(b, m);
    let db = b.len() - 1;
    debug_assert!(b[db].is_one());
    let mut rem = zmod(a, m);
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Z::zero(); rem.len() - db];
    for i in (0..quot.len()).rev() {
        let c = mod_floor(&rem[i + db], m);
        if c.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            rem[i + j] = mod_floor(&(&rem[i + j] - &c * y), m);
        }
        quot[i] = c;
    }
    rem.truncate(db);
    (trim(quot), trim(rem))
}

fn to_zpoly(p: &ModPoly) -> ZPoly {
    p.coeffs().iter().map(|&x| Z::from(x)).collect()
}

/// Lift `f = g h (mod p)` with `h` monic to a factorization modulo `p^(2^j)`
/// for the least `j` with `p^(2^j) >= target`; returns `(g*, h*, modulus)`.
fn hensel_lift(f: &[Z], g: &ModPoly, h: &ModPoly, target: &Z) -> (ZPoly, ZPoly, Z) {
    let p = g.modulus();
    let (one, s0, t0) = g.ext_gcd(h);
    debug_assert_eq!(one.degree(), 0);
    let (mut g, mut h, mut s, mut t) = (to_zpoly(g), to_zpoly(h), to_zpoly(&s0), to_zpoly(&t0));
    let mut m = Z::from(p);
    while &m < target {
        let m2 = &m * &m;
        let e = zmod(&zsub(f, &zmul(&g, &h)), &m2);
        let (q, r) = zdivrem_monic(&zmul(&s, &e), &h, &m2);
        let g_new = zmod(&zadd(&zadd(&g, &zmul(&t, &e)), &zmul(&q, &g)), &m2);
        let h_new = zmod(&zadd(&h, &r), &m2);
        let b = zmod(&zsub(&zadd(&zmul(&s, &g_new), &zmul(&t, &h_new)), &[Z::one()]), &m2);
        let (c, d) = zdivrem_monic(&zmul(&s, &b), &h_new, &m2);
        s = zmod(&zsub(&s, &d), &m2);
        t = zmod(&zsub(&zsub(&t, &zmul(&t, &b)), &zmul(&c, &g_new)), &m2);
        g = g_new;
        h = h_new;
        m = m2;
    }
    (g, h, m)
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

/// Irreducible monic factors of a monic squarefree polynomial.
fn factor_squarefree(a: &RationalPolynomial) -> Vec<RationalPolynomial> {
    if a.degree() <= 1 {
        return vec![a.monic()];
    }
    let g = a.primitive_part();
    let n = g.len() - 1;
    let lc = g[n].clone();

    // pick the good prime with fewest modular factors among the first few
    let mut best: Option<(u64, Vec<ModPoly>)> = None;
    let mut tried = 0;
    for p in small_primes().take(400) {
        if (&lc % Z::from(p)).is_zero() {
            continue;
        }
        let gp = ModPoly::from_z(p, &g);
        if !gp.is_squarefree() {
            continue;
        }
        let facs = berlekamp(&gp.monic());
        if facs.len() == 1 {
            return vec![a.monic()];
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried == 5 {
            break;
        }
    }
    let (p, modular) = best.expect("a squarefree integer polynomial stays squarefree modulo almost every prime");

    // Mignotte-type bound on coefficients of lc * (any factor)
    let norm2 = g.iter().map(|c| c * c).sum::<Z>().sqrt() + Z::one();
    let bound = (Z::one() << n) * norm2 * lc.abs();
    let target = bound * 2 + Z::one();

    let r = modular.len();
    let mut lifted: Vec<ZPoly> = Vec::with_capacity(r);
    let mut cur: ZPoly = g.clone();
    let mut modulus = Z::from(p);
    for i in 0..r - 1 {
        let lc_p = ModPoly::from_z(p, std::slice::from_ref(&lc));
        let rest = modular[i + 1..].iter().fold(lc_p, |acc, u| acc.mul(u));
        let (rest_l, h_l, m) = hensel_lift(&cur, &rest, &modular[i], &target);
        lifted.push(h_l);
        cur = rest_l;
        modulus = m;
    }
    let lc_inv = mod_floor(&lc.extended_gcd(&modulus).x, &modulus);
    lifted.push(zmod(&cur.iter().map(|c| c * &lc_inv).collect::<Vec<_>>(), &modulus));

    // recombination
    let mut remaining: Vec<usize> = (0..r).collect();
    let mut rest = g;
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut hit = None;
        for subset in combinations(remaining.len(), size) {
            let lcr = rest.last().unwrap().clone();
            let prod = subset
                .iter()
                .fold(vec![lcr], |acc, &k| zmod(&zmul(&acc, &lifted[remaining[k]]), &modulus));
            let cand: ZPoly = trim(prod.iter().map(|c| mod_symmetric(c, &modulus)).collect());
            let cand = RationalPolynomial::from_z(&cand).primitive_part();
            let constant_ok = if cand[0].is_zero() { rest[0].is_zero() } else { (&rest[0] % &cand[0]).is_zero() };
            if cand.len() < 2 || !constant_ok {
                continue;
            }
            let (rq, cq) = (RationalPolynomial::from_z(&rest), RationalPolynomial::from_z(&cand));
            if let Some(quot) = rq.exact_div(&cq).expect("nonzero") {
                if quot.has_integer_coeffs() {
                    hit = Some((subset, cq, quot));
                    break;
                }
            }
        }
        match hit {
            Some((subset, factor, quot)) => {
                found.push(factor.monic());
                rest = quot.integer_numerator().0;
                let drop: Vec<usize> = subset.iter().map(|&k| remaining[k]).collect();
                remaining.retain(|k| !drop.contains(k));
            }
            None => size += 1,
        }
    }
    let rest = RationalPolynomial::from_z(&rest);
    if rest.degree() > 0 {
        found.push(rest.monic());
    }
    found
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
