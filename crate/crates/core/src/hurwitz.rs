//! Rational quaternions and the Hurwitz order over `Z_(2)`.
//!
//! `Z_(2)` is represented by rationals with odd reduced denominator.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rational::{is_p_integral, Q, Z};

/// `a0 + a1 i + a2 j + a3 k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quaternion(pub [Q; 4]);

fn in_z2(x: &Q) -> bool {
    is_p_integral(x, 2)
}

impl Quaternion {
    pub fn new(a0: Q, a1: Q, a2: Q, a3: Q) -> Self {
        Self([a0, a1, a2, a3])
    }

    pub fn from_ints(a: [i64; 4]) -> Self {
        Self(a.map(|x| Q::from_integer(x.into())))
    }

    /// `(a0 + a1 i + a2 j + a3 k) / d`.
    pub fn from_ints_over(a: [i64; 4], d: i64) -> Self {
        Self(a.map(|x| Q::new(x.into(), d.into())))
    }

    /// The Hurwitz unit `(1 + i + j + k) / 2`.
    pub fn h() -> Self {
        Self::from_ints_over([1, 1, 1, 1], 2)
    }

    /// From coordinates in the basis `h, i, j, k`.
    pub fn from_hurwitz_basis(c: &[Q]) -> Self {
        let half = &c[0] / Q::from_integer(2.into());
        Self::new(half.clone(), &half + &c[1], &half + &c[2], &half + &c[3])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn coords(&self) -> &[Q; 4] {
        &self.0
    }

    pub fn mul(&self, o: &Self) -> Self {
        let [a0, a1, a2, a3] = &self.0;
        let [b0, b1, b2, b3] = &o.0;
        Self::new(
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )
    }

    pub fn conj(&self) -> Self {
        let [a0, a1, a2, a3] = &self.0;
        Self::new(a0.clone(), -a1, -a2, -a3)
    }

    pub fn norm(&self) -> Q {
        self.0.iter().map(|a| a * a).sum()
    }

    pub fn trace(&self) -> Q {
        &self.0[0] * Q::from_integer(2.into())
    }
}

/// Membership in `D_H`: all coordinates in `Z_(2)`, or all in `Z_(2) + 1/2`.
pub fn hurwitz_member(a: &Quaternion) -> bool {
    let half = Q::new(Z::one(), 2.into());
    a.0.iter().all(in_z2) || a.0.iter().all(|x| in_z2(&(x - &half)))
}

/// `a` is a root of `X^2 - 2 a0 X + N(a)`, so it is integral over `Z_(2)`
/// iff the trace and norm lie in `Z_(2)`.
pub fn quaternion_integral(a: &Quaternion) -> bool {
    in_z2(&a.trace()) && in_z2(&a.norm())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureReport {
    pub samples: u64,
    pub integral: u64,
    pub members: u64,
    /// Integral quaternions outside `D_H`; must stay empty.
    pub counterexamples: Vec<Quaternion>,
}

/// Random `(a0 + a1 i + a2 j + a3 k) / (2^n e)` with `|a_i| <= 50`, `n <= 4`,
/// odd `e <= 9`.
pub fn sample_quaternion(rng: &mut ChaCha8Rng) -> Quaternion {
    let a: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-50..=50));
    let n = rng.gen_range(0..=4u32);
    let e = 2 * rng.gen_range(0..=4i64) + 1;
    Quaternion::from_ints_over(a, (1 << n) * e)
}

/// Checks that every sampled integral quaternion lies in `D_H`.
pub fn closure_check(samples: u64, seed: u64) -> Result<ClosureReport> {
    if samples == 0 {
        return Err(Error::MalformedInput("samples must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ClosureReport { samples, integral: 0, members: 0, counterexamples: Vec::new() };
    for _ in 0..samples {
        let a = sample_quaternion(&mut rng);
        let integral = quaternion_integral(&a);
        let member = hurwitz_member(&a);
        report.integral += u64::from(integral);
        report.members += u64::from(member);
        if integral && !member {
            report.counterexamples.push(a);
        }
    }
    Ok(report)
}

/// Tuples in `[0, 4^n)^4` with `a^2 + b^2 + c^2 + d^2 ≡ 0 (mod 4^n)` that are
/// not all even. Any `n` in `1..=3`; the lemma needs `n >= 2`.
pub fn four_square_violations(n: u32) -> Result<Vec<[u32; 4]>> {
    if !(1..=3).contains(&n) {
        return Err(Error::Unsupported(format!("n = {n}, expected 1, 2 or 3")));
    }
    let m = 4u32.pow(n);
    let mut out: Vec<[u32; 4]> = (0..m)
        .into_par_iter()
        .flat_map_iter(|a| {
            let mut v = Vec::new();
            for b in 0..m {
                for c in 0..m {
                    let s = (a * a + b * b + c * c) % m;
                    for d in 0..m {
                        if (s + d * d) % m == 0 && (a | b | c | d) & 1 == 1 {
                            v.push([a, b, c, d]);
                        }
                    }
                }
            }
            v
        })
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Number of tuples enumerated by [`four_square_violations`].
pub fn four_square_tuples(n: u32) -> u64 {
    4u64.pow(n).pow(4)
}

/// True iff every solution of `a^2 + b^2 + c^2 + d^2 ≡ 0 (mod 4^n)` is all
/// even. `n` must be 2 or 3.
pub fn four_square_lemma_check(n: u32) -> Result<bool> {
    if !(2..=3).contains(&n) {
        return Err(Error::Unsupported(format!("n = {n}, expected 2 or 3")));
    }
    Ok(four_square_violations(n)?.is_empty())
}

/// Samples `D_H` members of both types and checks that their norms lie in
/// `Z_(2)`.
pub fn norm_in_d_check(samples: u64, seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).all(|i| {
        let e = 2 * rng.gen_range(0..=4i64) + 1;
        let a: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-50..=50));
        let q = if i % 2 == 0 {
            Quaternion::from_ints_over(a, e)
        } else {
            // odd numerators over 2e
            Quaternion::from_ints_over(a.map(|x| 2 * x + 1), 2 * e)
        };
        debug_assert!(hurwitz_member(&q));
        hurwitz_member(&q) && in_z2(&q.norm())
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddGridReport {
    pub points: u64,
    pub not_member: u64,
    pub not_integral: u64,
}

/// `(a0 + a1 i + a2 j + a3 k) / (2e)` for all odd `a0..a3, e` in `[-9, 9]`:
/// each must lie in `D_H` and be integral.
pub fn odd_grid_check() -> OddGridReport {
    let odd: Vec<i64> = (-9..=9).filter(|x: &i64| x.rem_euclid(2) == 1).collect();
    let mut report = OddGridReport { points: 0, not_member: 0, not_integral: 0 };
    for &e in &odd {
        for &a0 in &odd {
            for &a1 in &odd {
                for &a2 in &odd {
                    for &a3 in &odd {
                        let q = Quaternion::from_ints_over([a0, a1, a2, a3], 2 * e);
                        report.points += 1;
                        report.not_member += u64::from(!hurwitz_member(&q));
                        report.not_integral += u64::from(!quaternion_integral(&q));
                    }
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::rational::{q, qf};

    #[test]
    fn arithmetic() {
        let i = Quaternion::from_ints([0, 1, 0, 0]);
        let j = Quaternion::from_ints([0, 0, 1, 0]);
        let k = Quaternion::from_ints([0, 0, 0, 1]);
        assert_eq!(i.mul(&j), k);
        assert_eq!(j.mul(&i), Quaternion::from_ints([0, 0, 0, -1]));
        let h = Quaternion::h();
        assert_eq!((h.trace(), h.norm()), (q(1), q(1)));
        assert_eq!(h.mul(&h.conj()), Quaternion::from_ints([1, 0, 0, 0]));
        assert_eq!(Quaternion::from_ints_over([3, 5, 7, 9], 2).norm(), q(41));
        assert_eq!(Quaternion::from_ints([1, 2, 0, 0]).norm(), q(5));
    }

    #[test]
    fn membership_and_integrality() {
        assert!(hurwitz_member(&Quaternion::h()));
        assert!(!hurwitz_member(&Quaternion::from_ints_over([1, 1, 0, 0], 2)));
        assert!(hurwitz_member(&Quaternion::new(qf(3, 5), q(1), q(0), q(0))));
        assert!(quaternion_integral(&Quaternion::h()));
        assert!(quaternion_integral(&Quaternion::from_ints_over([1, 1, 1, 3], 2)));
        assert!(!quaternion_integral(&Quaternion::from_ints_over([1, 1, 1, 1], 4)));
        assert!(!quaternion_integral(&Quaternion::from_ints_over([0, 1, 0, 0], 2)));
    }

    #[test]
    fn matches_the_order_table() {
        let o = corpus::hurwitz();
        for a in 0..4 {
            for b in 0..4 {
                let x = Quaternion::from_hurwitz_basis(o.basis_element(a).coords());
                let y = Quaternion::from_hurwitz_basis(o.basis_element(b).coords());
                let xy = o.mul(&o.basis_element(a), &o.basis_element(b)).unwrap();
                assert_eq!(x.mul(&y), Quaternion::from_hurwitz_basis(xy.coords()));
            }
        }
        assert_eq!(Quaternion::from_hurwitz_basis(o.one().coords()), Quaternion::from_ints([1, 0, 0, 0]));
    }

    #[test]
    fn four_squares() {
        assert!(four_square_lemma_check(2).unwrap());
        let v = four_square_violations(1).unwrap();
        assert!(v.contains(&[1, 1, 1, 1]));
        assert!(four_square_lemma_check(1).is_err());
        assert!(four_square_violations(4).is_err());
    }

    #[test]
    fn samplers() {
        let r = closure_check(2000, 1).unwrap();
        assert!(r.counterexamples.is_empty());
        assert!(r.integral > 0);
        assert_eq!(closure_check(2000, 1).unwrap(), r);
        assert!(norm_in_d_check(500, 3));
        let g = odd_grid_check();
        assert_eq!((g.points, g.not_member, g.not_integral), (100_000, 0, 0));
    }
}
