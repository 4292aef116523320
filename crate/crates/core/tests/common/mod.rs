//! Oracles, generators and property checks shared by the `properties` and
//! `acceptance` test targets. Everything here recomputes its answer by a
//! route that does not go through the library routine under test.

#![allow(dead_code)]

use ivp_core::closure::{is_integrally_closed_order, maximal_order};
use ivp_core::corpus;
use ivp_core::decision::{decide_pruefer, verify_certificate, Verdict};
use ivp_core::factor::poly_factor_q;
use ivp_core::ivp::{int_member_finite, int_member_order, pointwise_integrally_closed, DEFAULT_BUDGET};
use ivp_core::lattice::IntegerLattice;
use ivp_core::linalg;
use ivp_core::rational::{Q, Z};
use ivp_core::semisimple::{component_order, decompose, idempotents_in_a};
use ivp_core::{AlgebraElement, RationalPolynomial, ZOrder};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestError, TestRng, TestRunner};

// --- runner ----------------------------------------------------------------

pub fn runner(cases: u32, seed: u8) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]))
}

pub fn outcome<T: std::fmt::Debug>(r: Result<(), TestError<T>>) -> Result<(), String> {
    r.map_err(|e| format!("{e}"))
}

// --- generators ------------------------------------------------------------

pub fn monic(coeffs: Vec<i64>) -> Vec<i64> {
    let mut c = coeffs;
    c.push(1);
    c
}

/// Commutative orders of dimension at most 4: monogenic orders of random
/// monic polynomials, products of two of them, and a few fixed suborders.
pub fn commutative_order() -> impl Strategy<Value = ZOrder> {
    let mono = (1usize..=3)
        .prop_flat_map(|d| prop::collection::vec(-6i64..=6, d))
        .prop_map(|c| corpus::monogenic(&monic(c)).expect("monic"));
    let small = (1usize..=2)
        .prop_flat_map(|d| prop::collection::vec(-6i64..=6, d))
        .prop_map(|c| corpus::monogenic(&monic(c)).expect("monic"));
    prop_oneof![
        4 => mono,
        2 => (small.clone(), small).prop_map(|(a, b)| a.product(&b)),
        1 => Just(corpus::zz_index2()),
        1 => Just(corpus::z_3i()),
    ]
}

/// Any order of dimension at most 4, including noncommutative ones.
pub fn any_order() -> impl Strategy<Value = ZOrder> {
    prop_oneof![
        3 => commutative_order(),
        1 => Just(corpus::m2z()),
        1 => Just(corpus::hurwitz()),
        1 => Just(upper_triangular()),
    ]
}

pub fn upper_triangular() -> ZOrder {
    ivp_core::load_order(
        r#"{"dim": 3, "basis_names": ["e11", "e12", "e22"], "one": [1, 0, 1], "table": [
            [[1,0,0],[0,1,0],[0,0,0]],
            [[0,0,0],[0,0,0],[0,1,0]],
            [[0,0,0],[0,0,0],[0,0,1]]]}"#,
    )
    .expect("valid")
}

pub fn element(n: usize, bound: i64) -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec(-bound..=bound, n).prop_map(|v| AlgebraElement::from_ints(&v))
}

pub fn int_poly(max_deg: usize, bound: i64) -> impl Strategy<Value = RationalPolynomial> {
    prop::collection::vec(-bound..=bound, 1..=max_deg + 1).prop_map(|c| RationalPolynomial::from_ints(&c))
}

// --- lattice oracle ----------------------------------------------------------

fn det_z(m: &[Vec<Z>]) -> Z {
    match m.len() {
        0 => Z::one(),
        1 => m[0][0].clone(),
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<Z>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let t = &m[0][j] * det_z(&minor);
                if j % 2 == 0 {
                    t
                } else {
                    -t
                }
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// `[Z^n : L]` as the gcd of the maximal minors of a generating matrix;
/// zero when the rows do not span.
pub fn index_by_minors(rows: &[Vec<Z>], n: usize) -> Z {
    subsets(rows.len(), n)
        .iter()
        .map(|s| det_z(&s.iter().map(|&i| rows[i].clone()).collect::<Vec<_>>()))
        .fold(Z::zero(), |g, d| g.gcd(&d))
}

// --- irreducibility oracle -----------------------------------------------------

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

fn rem_mod(a: &[i64], b: &[i64], p: i64) -> Vec<i64> {
    let mut r: Vec<i64> = a.iter().map(|x| x.rem_euclid(p)).collect();
    let db = b.len() - 1;
    let inv = (1..p).find(|x| (x * b[db]).rem_euclid(p) == 1).unwrap();
    while r.len() > db && r.iter().any(|&x| x != 0) {
        let top = r.len() - 1;
        let c = (r[top] * inv).rem_euclid(p);
        if c != 0 {
            for i in 0..=db {
                r[top - db + i] = (r[top - db + i] - c * b[i]).rem_euclid(p);
            }
        }
        r.pop();
    }
    trim(r)
}

fn div_mod(a: &[i64], b: &[i64], p: i64) -> Vec<i64> {
    let mut r: Vec<i64> = a.iter().map(|x| x.rem_euclid(p)).collect();
    let db = b.len() - 1;
    let mut q = vec![0; r.len() - db];
    for top in (db..r.len()).rev() {
        let c = r[top];
        q[top - db] = c;
        for i in 0..=db {
            r[top - db + i] = (r[top - db + i] - c * b[i]).rem_euclid(p);
        }
    }
    trim(q)
}

/// Degrees of the irreducible factors of a monic squarefree `f` over F_p, by
/// trial division with every monic polynomial of each degree.
fn degrees_mod_p(f: &[i64], p: i64) -> Option<Vec<usize>> {
    let mut f = f.to_vec();
    let mut out = Vec::new();
    let mut d = 1;
    while f.len() - 1 >= 2 * d {
        let count = (p as u64).pow(d as u32);
        let mut found = false;
        for idx in 0..count {
            let mut g = vec![0i64; d + 1];
            let mut t = idx;
            for c in g.iter_mut().take(d) {
                *c = (t % p as u64) as i64;
                t /= p as u64;
            }
            g[d] = 1;
            if rem_mod(&f, &g, p) == vec![0] {
                let q = div_mod(&f, &g, p);
                if rem_mod(&q, &g, p) == vec![0] {
                    return None; // repeated factor mod p
                }
                out.push(d);
                f = q;
                found = true;
                break;
            }
        }
        if !found {
            d += 1;
        }
    }
    if f.len() > 1 {
        out.push(f.len() - 1);
    }
    Some(out)
}

fn subset_sums(ds: &[usize]) -> Vec<bool> {
    let total: usize = ds.iter().sum();
    let mut can = vec![false; total + 1];
    can[0] = true;
    for &d in ds {
        for s in (d..=total).rev() {
            if can[s - d] {
                can[s] = true;
            }
        }
    }
    can
}

/// Irreducibility over Q of a primitive integer polynomial, proven by
/// intersecting the possible factor degrees modulo several primes, with a
/// rational-root test for the degree-1 case. `None` when undecided.
pub fn irreducible_oracle(f: &[Z]) -> Option<bool> {
    let m = f.len() - 1;
    if m <= 1 {
        return Some(true);
    }
    // rational roots r/s with r | f0, s | lc
    let divisors = |z: &Z| -> Vec<i64> {
        let a = z.abs().to_i64().unwrap();
        (1..=a).filter(|d| a % d == 0).collect()
    };
    if f[0].is_zero() {
        return Some(false);
    }
    for r in divisors(&f[0]) {
        for s in divisors(&f[m]) {
            for sign in [1, -1] {
                let x = Q::new(Z::from(sign * r), Z::from(s));
                let v = f.iter().rev().fold(Q::zero(), |acc, c| acc * &x + Q::from_integer(c.clone()));
                if v.is_zero() {
                    return Some(false);
                }
            }
        }
    }
    let mut possible = vec![true; m + 1];
    for p in [3i64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61] {
        let pz = Z::from(p);
        if (&f[m] % &pz).is_zero() || (p as f64).powi((m / 2) as i32) > 5e6 {
            continue;
        }
        let lc_inv = (1..p).find(|x| (Z::from(*x) * &f[m] - 1i64).mod_floor(&pz).is_zero()).unwrap();
        let g: Vec<i64> = f
            .iter()
            .map(|c| (c.mod_floor(&pz).to_i64().unwrap() * lc_inv).rem_euclid(p))
            .collect();
        let Some(ds) = degrees_mod_p(&g, p) else { continue };
        let can = subset_sums(&ds);
        for (k, slot) in possible.iter_mut().enumerate() {
            *slot &= can[k];
        }
        if (1..m).all(|k| !possible[k]) {
            return Some(true);
        }
        // only linear factors remain possible, and there are no rational roots
        if (2..m - 1).all(|k| !possible[k]) {
            return Some(true);
        }
    }
    None
}

// --- property checks -----------------------------------------------------------

pub fn prop_hnf(seed: u8) -> Result<(), String> {
    let strat = (1usize..=3).prop_flat_map(|n| (Just(n), prop::collection::vec(prop::collection::vec(-6i64..=6, n), 1..=5)));
    outcome(runner(200, seed).run(&strat, |(n, rows)| {
        let rows: Vec<Vec<Z>> = rows.iter().map(|r| r.iter().map(|&x| Z::from(x)).collect()).collect();
        let l = IntegerLattice::from_rows(n, &rows).unwrap();
        let again = IntegerLattice::from_rows(n, l.basis()).unwrap();
        prop_assert_eq!(&again, &l);
        for r in &rows {
            prop_assert!(l.contains_int(r).unwrap());
        }
        if l.is_full_rank() {
            prop_assert_eq!(l.index().unwrap(), index_by_minors(&rows, n).abs());
        } else {
            prop_assert!(index_by_minors(&rows, n).is_zero());
        }
        // small combinations of the generators stay inside
        for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
            if j < rows.len() {
                let v: Vec<Z> = rows[i].iter().zip(&rows[j]).map(|(a, b)| a * 3 - b * 2).collect();
                prop_assert!(l.contains_int(&v).unwrap());
            }
        }
        Ok(())
    }))
}

pub fn prop_factor(seed: u8) -> Result<(), String> {
    let strat = prop::collection::vec(-20i64..=20, 1..=9)
        .prop_filter("nonzero", |c| c.iter().any(|&x| x != 0));
    outcome(runner(200, seed).run(&strat, |c| {
        let f = RationalPolynomial::from_ints(&c);
        let fac = poly_factor_q(&f).unwrap();
        prop_assert_eq!(fac.expand(), f.clone());
        for (g, _) in &fac.factors {
            prop_assert!(g.degree() >= 1);
            let prim = g.primitive_part();
            prop_assert_eq!(irreducible_oracle(&prim), Some(true), "factor {} of {}", g, f);
        }
        Ok(())
    }))
}

/// `μ_b | charpoly(b)` and `μ_{f(b)} | charpoly of f(X) on Q[X]/(μ_b)`.
pub fn prop_minpoly(seed: u8) -> Result<(), String> {
    let strat = any_order()
        .prop_flat_map(|o| {
            let n = o.dim();
            (Just(o), element(n, 4), int_poly(3, 3))
        });
    outcome(runner(100, seed).run(&strat, |(o, b, f)| {
        let mu = o.minimal_polynomial(&b).unwrap();
        prop_assert!(o.eval_poly(&mu, &b).unwrap().is_zero());
        let chi = o.characteristic_polynomial(&b).unwrap();
        prop_assert!(chi.exact_div(&mu).unwrap().is_some());
        let fb = o.eval_poly(&f, &b).unwrap();
        let mu_fb = o.minimal_polynomial(&fb).unwrap();
        let k = mu.degree() as usize;
        // matrix of multiplication by f(X) on the basis 1..X^(k-1)
        let cols: Vec<Vec<Q>> = (0..k)
            .map(|j| {
                let r = (&f * &RationalPolynomial::monomial(Q::one(), j)).rem(&mu).unwrap();
                (0..k).map(|i| r.coeff(i)).collect()
            })
            .collect();
        let m = linalg::transpose(&cols);
        let chi_f = linalg::charpoly(&m);
        prop_assert!(chi_f.exact_div(&mu_fb).unwrap().is_some(), "{} vs {}", mu_fb, chi_f);
        Ok(())
    }))
}

pub fn prop_decomposition(seed: u8) -> Result<(), String> {
    let strat = commutative_order();
    outcome(runner(80, seed).run(&strat, |o| {
        let dec = match decompose(&o) {
            Ok(d) => d,
            Err(e) => {
                prop_assert_eq!(e.code(), "NOT_REDUCED");
                prop_assert!(o.discriminant().is_zero());
                return Ok(());
            }
        };
        let n = o.dim();
        let mut sum = AlgebraElement::new(vec![Q::zero(); n]);
        for (i, ei) in dec.idempotents.iter().enumerate() {
            for (j, ej) in dec.idempotents.iter().enumerate() {
                let p = o.mul(ei, ej).unwrap();
                if i == j {
                    prop_assert_eq!(&p, ei);
                } else {
                    prop_assert!(p.is_zero());
                }
            }
            sum = sum.add(ei);
        }
        prop_assert_eq!(sum, o.one());
        prop_assert_eq!(dec.component_bases.iter().map(Vec::len).sum::<usize>(), n);
        let prod = dec.component_minpolys.iter().fold(RationalPolynomial::one(), |a, g| &a * g);
        prop_assert_eq!(&prod, &dec.minpoly);
        if idempotents_in_a(&o, &dec).unwrap().is_none() {
            for i in 0..dec.len() {
                let c = component_order(&o, &dec, i).unwrap();
                prop_assert_eq!(decompose(&c.order).unwrap().len(), 1);
            }
        }
        Ok(())
    }))
}

pub fn prop_certificates(seed: u8) -> Result<(), String> {
    let strat = any_order();
    outcome(runner(80, seed).run(&strat, |o| {
        let cert = decide_pruefer(&o).unwrap();
        prop_assert!(cert.verdict != Verdict::Indeterminate);
        prop_assert!(verify_certificate(&o, &cert).unwrap(), "{}", cert.to_json());
        Ok(())
    }))
}

/// Maximal orders are idempotent, closed, and `disc(O) = disc(O_F) [O_F:O]^2`.
pub fn prop_maximal_order(seed: u8) -> Result<(), String> {
    let strat = commutative_order().prop_filter("reduced", |o| !o.discriminant().is_zero());
    outcome(runner(60, seed).run(&strat, |o| {
        let max = maximal_order(&o).unwrap();
        let index = Q::one() / max.covolume().unwrap();
        prop_assert!(index.is_integer());
        let index = index.to_integer();
        prop_assert_eq!(max.order.discriminant() * &index * &index, o.discriminant());
        prop_assert!(is_integrally_closed_order(&max.order).unwrap().is_none());
        for row in &max.basis {
            let mu = o.minimal_polynomial(&AlgebraElement::new(row.clone())).unwrap();
            prop_assert!(mu.has_integer_coeffs());
        }
        Ok(())
    }))
}

/// For nonzero `a`, `a ∉ d^k A` once `d^k` exceeds the largest coordinate.
pub fn prop_hausdorff(seed: u8) -> Result<(), String> {
    let strat = any_order().prop_flat_map(|o| {
        let n = o.dim();
        (Just(o), element(n, 50).prop_filter("nonzero", |a| !a.is_zero()))
    });
    outcome(runner(100, seed).run(&strat, |(o, a)| {
        let big = a.coords().iter().map(|x| x.abs()).max().unwrap().to_integer();
        for d in [2i64, 3, 5] {
            let mut dk = Z::from(d);
            while dk <= big {
                dk *= d;
            }
            let lattice = o.lattice().scaled(&dk);
            prop_assert!(!lattice.contains(a.coords()).unwrap());
        }
        Ok(())
    }))
}

/// `int_member_order(f)` implies `int_member_finite(f, S)` for sampled `S`.
pub fn prop_finite_soundness(seed: u8) -> Result<(), String> {
    let strat = any_order().prop_flat_map(|o| {
        let n = o.dim();
        (
            Just(o),
            prop::collection::vec(-3i64..=3, 1..=4),
            1i64..=4,
            prop::collection::vec(element(n, 9), 1..=5),
        )
    });
    outcome(runner(100, seed).run(&strat, |(o, g, d, s)| {
        // bias toward members: multiply by X^2 - X
        let g = &RationalPolynomial::from_ints(&g) * &RationalPolynomial::from_ints(&[0, -1, 1]);
        let f = g.scale(&Q::new(Z::one(), Z::from(d)));
        if int_member_order(&o, &f, DEFAULT_BUDGET).unwrap().member {
            prop_assert!(int_member_finite(&o, &s, &f).unwrap().is_none());
        }
        Ok(())
    }))
}

/// When `A ∩ Q[a]` is closed, integral elements of `Q[a]` built from the
/// maximal order lie in `A`.
pub fn prop_pointwise(seed: u8) -> Result<(), String> {
    let strat = any_order().prop_flat_map(|o| {
        let n = o.dim();
        (Just(o), element(n, 3), prop::collection::vec(prop::collection::vec(-5i64..=5, 4), 20))
    });
    outcome(runner(60, seed).run(&strat, |(o, a, combos)| {
        let v = pointwise_integrally_closed(&o, &a).unwrap();
        match &v.witness {
            Some((w, mu)) => {
                prop_assert!(mu.has_integer_coeffs());
                prop_assert!(!o.contains(w).unwrap());
            }
            None => {
                let rows: Vec<Vec<Q>> = v.intersection.basis().iter().map(|r| r.iter().cloned().map(Q::from_integer).collect()).collect();
                let r = ivp_core::order::EmbeddedOrder::from_rows(&o, &rows, o.one().coords()).unwrap();
                let max = maximal_order(&r.order).unwrap();
                for c in &combos {
                    let coords: Vec<Q> = (0..max.dim()).map(|i| Q::from_integer(Z::from(c[i % 4]))).collect();
                    let in_r = max.to_parent(&coords);
                    let b = AlgebraElement::new(r.to_parent(&in_r));
                    prop_assert!(o.contains(&b).unwrap());
                }
            }
        }
        Ok(())
    }))
}

/// YES orders are pointwise closed at sample elements, and products behave.
pub fn prop_decision_consistency(seed: u8) -> Result<(), String> {
    let strat = (commutative_order(), commutative_order()).prop_filter("small", |(a, b)| a.dim() + b.dim() <= 5);
    outcome(runner(40, seed).run(&strat, |(a, b)| {
        let (ca, cb) = (decide_pruefer(&a).unwrap(), decide_pruefer(&b).unwrap());
        let cp = decide_pruefer(&a.product(&b)).unwrap();
        let both = ca.verdict == Verdict::Yes && cb.verdict == Verdict::Yes;
        prop_assert_eq!(cp.verdict == Verdict::Yes, both);
        if ca.verdict == Verdict::Yes {
            for v in ivp_core::enumerate::up_to(a.dim(), 2).take(25) {
                let x = AlgebraElement::from_ints(&v);
                prop_assert!(pointwise_integrally_closed(&a, &x).unwrap().closed);
            }
        }
        Ok(())
    }))
}

pub const PROPERTIES: &[(&str, fn(u8) -> Result<(), String>)] = &[
    ("hnf idempotence and index", prop_hnf),
    ("factorization round trip", prop_factor),
    ("minimal polynomial divisibility", prop_minpoly),
    ("idempotent identities", prop_decomposition),
    ("certificate soundness", prop_certificates),
    ("maximal order invariants", prop_maximal_order),
    ("hausdorff", prop_hausdorff),
    ("finite membership soundness", prop_finite_soundness),
    ("pointwise closure", prop_pointwise),
    ("decision consistency", prop_decision_consistency),
];

pub const SEED: u8 = 7;
