//! Membership in rings of integer-valued polynomials, the pointwise
//! closedness test, ramification data and the polynomial transforms built
//! from it.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::closure::{closure_outcome, ClosureOutcome};
use crate::enumerate;
use crate::error::{Error, Result};
use crate::factor::poly_factor_q;
use crate::intfactor;
use crate::lattice::{lattice_intersect, IntegerLattice};
use crate::linalg::{self, mulmod};
use crate::modpoly::{factor_mod_p, ModPoly};
use crate::order::{AlgebraElement, EmbeddedOrder, ZOrder};
use crate::poly::RationalPolynomial;
use crate::rational::{mod_floor, to_q, to_z, Q, Z};
use crate::semisimple::{decompose, primitive_elements};

pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Residue budget, overridable by the `IVP_BUDGET` environment variable.
pub fn budget_from_env() -> u64 {
    std::env::var("IVP_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FailingPoint {
    pub index: usize,
    pub point: AlgebraElement,
    pub value: AlgebraElement,
}

/// Whether `f(s) ∈ A` for every `s ∈ S`; on failure, the first bad point.
pub fn int_member_finite(
    order: &ZOrder,
    points: &[AlgebraElement],
    f: &RationalPolynomial,
) -> Result<Option<FailingPoint>> {
    if points.is_empty() {
        return Err(Error::MalformedInput("point set is empty".into()));
    }
    for (index, s) in points.iter().enumerate() {
        let value = order.eval_poly(f, s)?;
        if !order.contains(&value)? {
            return Ok(Some(FailingPoint { index, point: s.clone(), value }));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderMembership {
    pub member: bool,
    pub residues_checked: u64,
    /// A point `a ∈ A` (integer coordinates) with `f(a) ∉ A`.
    pub counterexample: Option<Vec<Z>>,
}

/// Prime powers `q^k` exactly dividing `d`.
fn prime_power_parts(d: &Z) -> Result<Vec<Z>> {
    Ok(intfactor::factor(d)?.into_iter().map(|(q, k)| num_traits::pow(q, k as usize)).collect())
}

/// Number of residues [`int_member_order`] evaluates for `f`: the sum of
/// `m^dim` over the prime powers `m` exactly dividing the denominator.
pub fn residue_count(order: &ZOrder, f: &RationalPolynomial) -> Result<Z> {
    let d = f.denominator();
    if d.is_one() {
        return Ok(Z::zero());
    }
    Ok(prime_power_parts(&d)?.iter().map(|m| num_traits::pow(m.clone(), order.dim())).sum())
}

struct ResidueRing {
    m: u64,
    /// products of reduced residues fit in a u64
    small: bool,
    lazy: bool,
    n: usize,
    table: Vec<Vec<Vec<u64>>>,
    one: Vec<u64>,
    coeffs: Vec<u64>,
}

impl ResidueRing {
    fn new(order: &ZOrder, g: &[Z], m: u64) -> Self {
        let mz = Z::from(m);
        let red = |x: &Z| mod_floor(x, &mz).to_u64().expect("reduced");
        Self {
            m,
            small: m <= u64::from(u32::MAX),
            lazy: (m as u128).pow(2) * (order.dim() as u128 + 1) <= u128::from(u64::MAX),
            n: order.dim(),
            table: order.table().iter().map(|r| r.iter().map(|v| v.iter().map(red).collect()).collect()).collect(),
            one: order.one_coords().iter().map(red).collect(),
            coeffs: g.iter().map(red).collect(),
        }
    }

    #[inline]
    fn mm(&self, a: u64, b: u64) -> u64 {
        if self.small {
            a * b % self.m
        } else {
            mulmod(a, b, self.m)
        }
    }

    fn point(&self, mut idx: u64) -> Vec<u64> {
        (0..self.n)
            .map(|_| {
                let d = idx % self.m;
                idx /= self.m;
                d
            })
            .collect()
    }

    /// First index in `lo..hi` whose point fails, scanning in order.
    fn first_failure(&self, lo: u64, hi: u64) -> Option<u64> {
        let n = self.n;
        let mut a = self.point(lo);
        let mut scratch = Scratch { lm: vec![0; n * n], acc: vec![0; n], next: vec![0; n] };
        for idx in lo..hi {
            if !self.vanishes_at(&a, &mut scratch) {
                return Some(idx);
            }
            for x in a.iter_mut() {
                *x += 1;
                if *x < self.m {
                    break;
                }
                *x = 0;
            }
        }
        None
    }

    /// `g(a) ≡ 0 (mod m A)`.
    fn vanishes_at(&self, a: &[u64], s: &mut Scratch) -> bool {
        let (n, m) = (self.n, self.m);
        // left multiplication by a, column-major: lm[j*n..][k] = (a * b_j)_k
        s.lm.iter_mut().for_each(|x| *x = 0);
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for j in 0..n {
                for (o, &t) in s.lm[j * n..(j + 1) * n].iter_mut().zip(&self.table[i][j]) {
                    *o = (*o + self.mm(ai, t)) % m;
                }
            }
        }
        s.acc.iter_mut().for_each(|x| *x = 0);
        if self.lazy {
            // n * m^2 fits in a u64, so reduce once per coordinate
            for &c in self.coeffs.iter().rev() {
                for (k, x) in s.next.iter_mut().enumerate() {
                    let mut t = c * self.one[k];
                    for (j, &y) in s.acc.iter().enumerate() {
                        t += y * s.lm[j * n + k];
                    }
                    *x = t % m;
                }
                std::mem::swap(&mut s.acc, &mut s.next);
            }
            return s.acc.iter().all(|&x| x == 0);
        }
        for &c in self.coeffs.iter().rev() {
            s.next.iter_mut().zip(&self.one).for_each(|(x, &u)| *x = self.mm(c, u));
            for (j, &x) in s.acc.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (o, &t) in s.next.iter_mut().zip(&s.lm[j * n..(j + 1) * n]) {
                    *o = (*o + self.mm(x, t)) % m;
                }
            }
            std::mem::swap(&mut s.acc, &mut s.next);
        }
        s.acc.iter().all(|&x| x == 0)
    }
}

struct Scratch {
    lm: Vec<u64>,
    acc: Vec<u64>,
    next: Vec<u64>,
}

const BLOCK: u64 = 1 << 12;

/// Whether `f ∈ Int_Q(A)`. With `f = g/d`, `g(a) mod dA` depends only on `a`
/// modulo `dA`, and by the Chinese remainder theorem it suffices to check
/// `g(a) ∈ mA` for `a` ranging over `A/mA` for each prime power `m || d`.
pub fn int_member_order(order: &ZOrder, f: &RationalPolynomial, budget: u64) -> Result<OrderMembership> {
    let (g, d) = f.integer_numerator();
    if d.is_one() {
        return Ok(OrderMembership { member: true, residues_checked: 0, counterexample: None });
    }
    let required = residue_count(order, f)?;
    if required > Z::from(budget) {
        return Err(Error::BudgetExceeded { required: required.to_string(), budget });
    }
    let mut checked = 0u64;
    for m in prime_power_parts(&d)? {
        let m = m.to_u64().expect("within budget");
        let ring = ResidueRing::new(order, &g, m);
        let total = m.pow(order.dim() as u32);
        let bad = (0..total.div_ceil(BLOCK))
            .into_par_iter()
            .filter_map(|b| ring.first_failure(b * BLOCK, ((b + 1) * BLOCK).min(total)))
            .find_first(|_| true);
        checked += bad.map_or(total, |b| b + 1);
        if let Some(idx) = bad {
            let point = ring.point(idx).into_iter().map(Z::from).collect();
            return Ok(OrderMembership { member: false, residues_checked: checked, counterexample: Some(point) });
        }
    }
    Ok(OrderMembership { member: true, residues_checked: checked, counterexample: None })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointwiseVerdict {
    pub closed: bool,
    pub minpoly: RationalPolynomial,
    /// Basis of `A ∩ Q[a]` in the coordinates of `A`.
    pub intersection: IntegerLattice,
    /// An integral element of `Q[a]` outside `A`, with its minimal polynomial.
    pub witness: Option<(AlgebraElement, RationalPolynomial)>,
}

/// Whether `R = A ∩ Q[a]` is integrally closed, i.e. equal to the integral
/// closure of Z in `Q[a]`.
pub fn pointwise_integrally_closed(order: &ZOrder, a: &AlgebraElement) -> Result<PointwiseVerdict> {
    if !order.contains(a)? {
        return Err(Error::NotInOrder);
    }
    let minpoly = order.minimal_polynomial(a)?;
    let mut powers = vec![order.one()];
    for _ in 1..minpoly.degree() {
        let next = order.mul(powers.last().expect("nonempty"), a)?;
        powers.push(next);
    }
    let rows: Vec<Vec<Q>> = powers.iter().map(|x| x.coords().to_vec()).collect();
    let intersection = lattice_intersect(&order.lattice(), &rows)?;
    let r_rows: Vec<Vec<Q>> = intersection.basis().iter().map(|r| to_q(r)).collect();
    let r = EmbeddedOrder::from_rows(order, &r_rows, &to_q(order.one_coords()))?;
    let local = match closure_outcome(&r.order)? {
        ClosureOutcome::Closed { .. } => None,
        ClosureOutcome::NotReduced { nilpotent, .. } => Some(nilpotent.scale(&Q::new(Z::one(), Z::from(2)))),
        ClosureOutcome::IdempotentEscapes { component, decomposition } => {
            Some(decomposition.idempotents[component].clone())
        }
        ClosureOutcome::ComponentNotMaximal { witness, .. } => Some(witness),
    };
    let witness = match local {
        None => None,
        Some(w) => {
            let w = AlgebraElement::new(r.to_parent(w.coords()));
            let mu = order.minimal_polynomial(&w)?;
            Some((w, mu))
        }
    };
    Ok(PointwiseVerdict { closed: witness.is_none(), minpoly, intersection, witness })
}

/// Splitting data of a prime `p` in a maximal order `O_F`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RamificationProfile {
    pub p: u64,
    /// `(e, f)` for each prime above `p`; empty when built from bounds.
    pub primes: Vec<(u64, u64)>,
    pub e_set: Vec<u64>,
    pub f_set: Vec<u64>,
    pub e_max: u64,
    pub f_max: u64,
    /// `e_max!`
    pub s: u64,
    /// `p^(f_max!)`
    #[serde(serialize_with = "ser_display")]
    pub r: Z,
}

fn ser_display<S: serde::Serializer>(z: &Z, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&z.to_string())
}

fn factorial(n: u64) -> Result<u64> {
    (1..=n)
        .try_fold(1u64, |acc, k| acc.checked_mul(k))
        .ok_or_else(|| Error::Unsupported(format!("{n}! overflows")))
}

impl RamificationProfile {
    /// Profile from the bounds `e_max`, `f_max` alone.
    pub fn from_bounds(p: u64, e_max: u64, f_max: u64) -> Result<Self> {
        Self::build(p, Vec::new(), vec![e_max], vec![f_max])
    }

    fn build(p: u64, primes: Vec<(u64, u64)>, mut e_set: Vec<u64>, mut f_set: Vec<u64>) -> Result<Self> {
        if !intfactor::is_prime_u64(p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        e_set.sort_unstable();
        e_set.dedup();
        f_set.sort_unstable();
        f_set.dedup();
        let e_max = *e_set.last().ok_or_else(|| Error::MalformedInput("empty ramification data".into()))?;
        let f_max = *f_set.last().ok_or_else(|| Error::MalformedInput("empty ramification data".into()))?;
        if e_max == 0 || f_max == 0 {
            return Err(Error::MalformedInput("e and f must be positive".into()));
        }
        let s = factorial(e_max)?;
        let ff = factorial(f_max)?;
        let ff = u32::try_from(ff).map_err(|_| Error::Unsupported(format!("p^({f_max}!) is too large")))?;
        let r = num_traits::pow(Z::from(p), ff as usize);
        Ok(Self { p, primes, e_set, f_set, e_max, f_max, s, r })
    }

    /// `Σ e f` over the primes above `p`.
    pub fn degree(&self) -> u64 {
        self.primes.iter().map(|(e, f)| e * f).sum()
    }
}

/// Primitive elements tried before giving up on a prime dividing the index.
pub const INDEX_SEARCH_LIMIT: usize = 2000;

/// Kummer-Dedekind: factor the minimal polynomial of a primitive element `a`
/// modulo `p`, for some `a` with `p ∤ [O_F : Z[a]]`.
pub fn ramification_profile(o_f: &ZOrder, p: u64) -> Result<RamificationProfile> {
    if !intfactor::is_prime_u64(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    if decompose(o_f)?.len() != 1 {
        return Err(Error::NotAField);
    }
    if crate::closure::is_integrally_closed_order(o_f)?.is_some() {
        return Err(Error::NotMaximal);
    }
    let n = o_f.dim();
    let pz = Z::from(p);
    for (a, mu) in primitive_elements(o_f).take(INDEX_SEARCH_LIMIT) {
        let mut powers = vec![o_f.one()];
        for _ in 1..n {
            let next = o_f.mul(powers.last().expect("nonempty"), &a)?;
            powers.push(next);
        }
        let m: Vec<Vec<Q>> = powers.iter().map(|x| x.coords().to_vec()).collect();
        let index = linalg::determinant(&m).abs().to_integer();
        if index.is_multiple_of(&pz) {
            continue;
        }
        let coeffs = to_z(mu.coeffs()).ok_or_else(|| Error::Internal("minimal polynomial of an order element".into()))?;
        let (_, factors) = factor_mod_p(&ModPoly::from_z(p, &coeffs));
        let primes: Vec<(u64, u64)> = factors.iter().map(|(g, e)| (*e as u64, g.degree() as u64)).collect();
        let e_set = primes.iter().map(|x| x.0).collect();
        let f_set = primes.iter().map(|x| x.1).collect();
        return RamificationProfile::build(p, primes, e_set, f_set);
    }
    Err(Error::IndexDivisible(p))
}

/// Degree cap for transformed polynomials.
pub const MAX_TRANSFORM_DEGREE: u64 = 1 << 16;

fn small_r(profile: &RamificationProfile, f: &RationalPolynomial, growth: u64) -> Result<u64> {
    let r = profile
        .r
        .to_u64()
        .ok_or_else(|| Error::Unsupported(format!("r = {} is too large", profile.r)))?;
    let deg = f.degree().max(1) as u64;
    match deg.checked_mul(r).and_then(|x| x.checked_mul(growth)) {
        Some(x) if x <= MAX_TRANSFORM_DEGREE => Ok(r),
        _ => Err(Error::Unsupported(format!("transformed degree exceeds {MAX_TRANSFORM_DEGREE}"))),
    }
}

fn over_p(f: RationalPolynomial, p: u64) -> RationalPolynomial {
    f.scale(&Q::new(Z::one(), Z::from(p)))
}

/// `(f^r - f)^s / p`.
pub fn pruefer_transform(f: &RationalPolynomial, profile: &RamificationProfile) -> Result<RationalPolynomial> {
    if f.is_zero() {
        return Ok(RationalPolynomial::zero());
    }
    let r = small_r(profile, f, profile.s)?;
    let inner = &f.pow(r) - f;
    Ok(over_p(inner.pow(profile.s), profile.p))
}

/// `f_0 = f^s` and `f_k = f_{k-1} (f_{k-1}^(r-1) - 1)^s / p` for `k <= k_max`.
pub fn transform_sequence(
    f: &RationalPolynomial,
    profile: &RamificationProfile,
    k_max: usize,
) -> Result<Vec<RationalPolynomial>> {
    if k_max == 0 {
        return Err(Error::MalformedInput("k_max must be at least 1".into()));
    }
    let mut out = vec![f.pow(profile.s)];
    for _ in 0..k_max {
        let prev = out.last().expect("nonempty");
        if prev.is_zero() {
            out.push(RationalPolynomial::zero());
            continue;
        }
        let r = small_r(profile, prev, 1 + profile.s)?;
        let t = &prev.pow(r - 1) - &RationalPolynomial::one();
        out.push(over_p(prev * &t.pow(profile.s), profile.p));
    }
    Ok(out)
}

/// Elements tried by [`nilpotent_witness`] before giving up.
pub const NILPOTENT_SEARCH_LIMIT: u64 = 10_000_000;

/// Deterministic search for `a ∈ A` with `a ∉ pA` and `a^2 ∈ p^2 A`, over
/// coordinates bounded by `p`, then by `2p`.
pub fn nilpotent_witness(order: &ZOrder, p: u64) -> Result<AlgebraElement> {
    if !intfactor::is_prime_u64(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let p2 = p.checked_mul(p).ok_or_else(|| Error::Unsupported(format!("prime {p} too large")))?;
    let n = order.dim();
    let ring = ResidueRing::new(order, &[], p2);
    let bound = u32::try_from(2 * p).map_err(|_| Error::Unsupported(format!("prime {p} too large")))?;
    let mut tried = 0u64;
    for b in 1..=bound {
        for v in enumerate::shell(n, b) {
            tried += 1;
            if tried > NILPOTENT_SEARCH_LIMIT {
                return Err(Error::NotFound);
            }
            if v.iter().all(|&x| x.rem_euclid(p as i64) == 0) {
                continue;
            }
            let a: Vec<u64> = v.iter().map(|&x| x.rem_euclid(p2 as i64) as u64).collect();
            let sq = ring.square(&a);
            if sq.iter().all(|&x| x == 0) {
                return Ok(AlgebraElement::from_ints(&v));
            }
        }
    }
    Err(Error::NotFound)
}

impl ResidueRing {
    fn square(&self, a: &[u64]) -> Vec<u64> {
        let m = self.m;
        let mut out = vec![0u64; self.n];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in a.iter().enumerate() {
                let xy = self.mm(x, y);
                if xy == 0 {
                    continue;
                }
                for (o, &t) in out.iter_mut().zip(&self.table[i][j]) {
                    *o = (*o + self.mm(xy, t)) % m;
                }
            }
        }
        out
    }
}

/// `X^2 / p^2`, which lies in `Int_Q({a}, A)` for a witness of
/// [`nilpotent_witness`] but is not integral over Z at `p`.
pub fn nilpotent_polynomial(p: u64) -> RationalPolynomial {
    let p2 = Z::from(p) * Z::from(p);
    RationalPolynomial::monomial(Q::new(Z::one(), p2), 2)
}

/// Irreducible factors of the minimal polynomial of `a`, for display.
pub fn minpoly_factors(order: &ZOrder, a: &AlgebraElement) -> Result<Vec<(RationalPolynomial, usize)>> {
    Ok(poly_factor_q(&order.minimal_polynomial(a)?)?.factors)
}
