//! Integrality of elements and maximal orders of commutative reduced
//! algebras (round 2: p-radicals and rings of multipliers).

use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::intfactor;
use crate::lattice::{rational_hnf, IntegerLattice};
use crate::linalg::{self, mulmod};
use crate::order::{unit_vector, AlgebraElement, Commutativity, EmbeddedOrder, Reducedness, ZOrder};
use crate::semisimple::{component_order, decompose, idempotents_in_a, Decomposition};
use crate::poly::RationalPolynomial;
use crate::rational::{mod_floor, to_q, Q, Z};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralityVerdict {
    pub element: AlgebraElement,
    pub minpoly: RationalPolynomial,
    pub integral: bool,
    pub in_a: bool,
}

/// `b` is integral over Z iff its minimal polynomial has integer
/// coefficients, since Z is integrally closed.
pub fn is_integral(order: &ZOrder, b: &AlgebraElement) -> Result<IntegralityVerdict> {
    let minpoly = order.minimal_polynomial(b)?;
    Ok(IntegralityVerdict {
        element: b.clone(),
        integral: minpoly.has_integer_coeffs(),
        in_a: order.contains(b)?,
        minpoly,
    })
}

fn require_commutative(order: &ZOrder) -> Result<()> {
    match order.is_commutative() {
        Commutativity::Commutative => Ok(()),
        Commutativity::Witness(..) => Err(Error::NotCommutative),
    }
}

fn reduce_table(order: &ZOrder, p: u64) -> Vec<Vec<Vec<u64>>> {
    let pz = Z::from(p);
    order
        .table()
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| v.iter().map(|x| mod_floor(x, &pz).to_u64().expect("reduced")).collect())
                .collect()
        })
        .collect()
}

fn mul_mod(t: &[Vec<Vec<u64>>], x: &[u64], y: &[u64], p: u64) -> Vec<u64> {
    let n = x.len();
    let mut out = vec![0u64; n];
    for (i, &a) in x.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in y.iter().enumerate() {
            if b == 0 {
                continue;
            }
            let ab = mulmod(a, b, p);
            for (o, &c) in out.iter_mut().zip(&t[i][j]) {
                *o = (*o + mulmod(ab, c, p)) % p;
            }
        }
    }
    out
}

fn pow_mod(t: &[Vec<Vec<u64>>], one: &[u64], x: &[u64], mut e: u64, p: u64) -> Vec<u64> {
    let mut acc = one.to_vec();
    let mut base = x.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(t, &acc, &base, p);
        }
        e >>= 1;
        if e > 0 {
            base = mul_mod(t, &base, &base, p);
        }
    }
    acc
}

/// The p-radical `I_p`: elements of `O` that are nilpotent modulo `pO`.
/// Computed as the kernel of `x -> x^(p^k)` on `O/pO` with `p^k >= dim`.
pub fn p_radical(order: &ZOrder, p: u64) -> Result<IntegerLattice> {
    require_commutative(order)?;
    if !intfactor::is_prime_u64(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let n = order.dim();
    let t = reduce_table(order, p);
    let pz = Z::from(p);
    let one: Vec<u64> = order.one_coords().iter().map(|x| mod_floor(x, &pz).to_u64().expect("reduced")).collect();
    let mut k = 1u32;
    while (p as u128).pow(k) < n as u128 {
        k += 1;
    }
    // column j holds the image of b_j
    let mut images = Vec::with_capacity(n);
    for j in 0..n {
        let mut x: Vec<u64> = (0..n).map(|i| u64::from(i == j)).collect();
        for _ in 0..k {
            x = pow_mod(&t, &one, &x, p, p);
        }
        images.push(x);
    }
    let m: Vec<Vec<u64>> = (0..n).map(|l| images.iter().map(|x| x[l]).collect()).collect();
    let mut rows: Vec<Vec<Z>> = linalg::kernel_mod_p(&m, n, p)
        .into_iter()
        .map(|v| v.into_iter().map(Z::from).collect())
        .collect();
    rows.extend((0..n).map(|i| {
        let mut e = unit_vector(n, i);
        e[i] = pz.clone();
        e
    }));
    IntegerLattice::from_rows(n, &rows)
}

/// `{x ∈ B : x I ⊆ I}` for a full-rank lattice `I`. Writing `x` in the
/// basis of `O`, the condition says that `x` pairs integrally with every
/// vector `(coords_I(b_k ι_j)[l])_k`, so the answer is the dual of their
/// span.
pub fn ring_of_multipliers(order: &ZOrder, ideal: &IntegerLattice) -> Result<EmbeddedOrder> {
    let n = order.dim();
    if !ideal.is_full_rank() || ideal.ambient_dim() != n {
        return Err(Error::RankDeficient);
    }
    let mut coords = vec![Vec::new(); n];
    for (k, c) in coords.iter_mut().enumerate() {
        let bk = unit_vector(n, k);
        for iota in ideal.basis() {
            let prod = order.mul_int(&bk, iota);
            let cj = ideal
                .rational_coords(&to_q(&prod))?
                .ok_or_else(|| Error::Internal("ideal lattice is not full rank".into()))?;
            c.push(cj);
        }
    }
    let cols: Vec<Vec<Q>> = (0..n)
        .flat_map(|j| (0..n).map(move |l| (j, l)))
        .map(|(j, l)| (0..n).map(|k| coords[k][j][l].clone()).collect())
        .collect();
    let span = rational_hnf(n, &cols)?;
    let inv = linalg::inverse(&span).ok_or(Error::RankDeficient)?;
    let dual = linalg::transpose(&inv);
    EmbeddedOrder::from_rows(order, &dual, &to_q(order.one_coords()))
}

/// Primes `p` with `p^2 | disc`; only these can divide `[O_F : O]`.
pub fn candidate_primes(order: &ZOrder) -> Result<Vec<u64>> {
    let disc = order.discriminant();
    if disc.is_zero() {
        return Err(Error::NotReduced);
    }
    intfactor::factor(&disc)?
        .into_iter()
        .filter(|(_, e)| *e >= 2)
        .map(|(p, _)| p.to_u64().ok_or_else(|| Error::Unsupported(format!("prime {p} exceeds 64 bits"))))
        .collect()
}

/// One step of round 2 at `p`: `None` when `O` is `p`-maximal, otherwise the
/// strictly larger ring of multipliers of the p-radical.
pub fn round2_step(order: &ZOrder, p: u64) -> Result<Option<EmbeddedOrder>> {
    let ideal = p_radical(order, p)?;
    let mult = ring_of_multipliers(order, &ideal)?;
    Ok((!mult.covolume()?.is_one()).then_some(mult))
}

/// The maximal order of a commutative reduced algebra, expressed over `O`.
pub fn maximal_order(order: &ZOrder) -> Result<EmbeddedOrder> {
    require_commutative(order)?;
    let n = order.dim();
    let one = to_q(order.one_coords());
    let standard: Vec<Vec<Q>> = (0..n).map(|i| to_q(&unit_vector(n, i))).collect();
    let mut cur = EmbeddedOrder::from_rows(order, &standard, &one)?;
    for p in candidate_primes(order)? {
        while let Some(next) = round2_step(&cur.order, p)? {
            let rows: Vec<Vec<Q>> = next.basis.iter().map(|r| cur.to_parent(r)).collect();
            cur = EmbeddedOrder::from_rows(order, &rows, &one)?;
        }
    }
    Ok(cur)
}

/// True when every round-2 step at every candidate prime leaves `O` fixed.
pub fn is_round2_stable(order: &ZOrder) -> Result<bool> {
    require_commutative(order)?;
    for p in candidate_primes(order)? {
        if round2_step(order, p)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `None` when `O` is its own integral closure; otherwise the first HNF
/// basis vector of the maximal order that is not in `O`.
pub fn is_integrally_closed_order(order: &ZOrder) -> Result<Option<AlgebraElement>> {
    let max = maximal_order(order)?;
    Ok(max
        .basis
        .iter()
        .find(|r| !r.iter().all(Q::is_integer))
        .map(|r| AlgebraElement::new(r.clone())))
}

/// How a commutative order compares with its integral closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosureOutcome {
    /// `x` is a primitive nonzero nilpotent of `O`.
    NotReduced { nilpotent: AlgebraElement, index: usize },
    /// The idempotent `e_component` is integral but not in `O`.
    IdempotentEscapes { component: usize, decomposition: Decomposition },
    /// `witness` (in the coordinates of `O`) is integral, lies in the
    /// component's field, and is not in `O`.
    ComponentNotMaximal { component: usize, witness: AlgebraElement, decomposition: Decomposition },
    /// `O` is the product of the maximal orders of its components.
    Closed { decomposition: Decomposition },
}

/// The pipeline reducedness, idempotents, componentwise maximality, for a
/// commutative order.
pub fn closure_outcome(order: &ZOrder) -> Result<ClosureOutcome> {
    require_commutative(order)?;
    if let Reducedness::NotReduced { witness, nilpotency_index } = order.is_reduced() {
        return Ok(ClosureOutcome::NotReduced { nilpotent: AlgebraElement::from_z(&witness), index: nilpotency_index });
    }
    let decomposition = decompose(order)?;
    if let Some(component) = idempotents_in_a(order, &decomposition)? {
        return Ok(ClosureOutcome::IdempotentEscapes { component, decomposition });
    }
    let witnesses: Vec<Option<AlgebraElement>> = (0..decomposition.len())
        .into_par_iter()
        .map(|i| {
            let comp = component_order(order, &decomposition, i)?;
            Ok(is_integrally_closed_order(&comp.order)?.map(|w| AlgebraElement::new(comp.to_parent(w.coords()))))
        })
        .collect::<Result<_>>()?;
    Ok(match witnesses.into_iter().enumerate().find_map(|(i, w)| w.map(|w| (i, w))) {
        Some((component, witness)) => ClosureOutcome::ComponentNotMaximal { component, witness, decomposition },
        None => ClosureOutcome::Closed { decomposition },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::rational::{q, qf, qvec};

    fn lat(rows: &[&[i64]]) -> IntegerLattice {
        let rows: Vec<Vec<Z>> = rows.iter().map(|r| r.iter().map(|&x| Z::from(x)).collect()).collect();
        IntegerLattice::from_rows(rows[0].len(), &rows).unwrap()
    }

    #[test]
    fn integrality() {
        let m2 = corpus::m2z();
        let half = AlgebraElement::new(vec![q(0), q(2), qf(1, 2), q(1)]);
        let v = is_integral(&m2, &half).unwrap();
        assert!(v.integral && !v.in_a);
        assert_eq!(v.minpoly, RationalPolynomial::from_ints(&[-1, -1, 1]));
        let zi = corpus::z_i();
        let v = is_integral(&zi, &AlgebraElement::new(vec![q(0), qf(1, 2)])).unwrap();
        assert!(!v.integral);
        assert_eq!(v.minpoly, RationalPolynomial::new(vec![qf(1, 4), q(0), q(1)]));
    }

    #[test]
    fn p_radicals() {
        assert_eq!(p_radical(&corpus::z_sqrt5(), 2).unwrap(), lat(&[&[1, 1], &[0, 2]]));
        assert_eq!(p_radical(&corpus::z_i(), 3).unwrap(), lat(&[&[3, 0], &[0, 3]]));
        assert_eq!(p_radical(&corpus::z(), 5).unwrap(), lat(&[&[5]]));
        assert_eq!(p_radical(&corpus::z(), 4).unwrap_err().code(), "NOT_PRIME");
    }

    #[test]
    fn multipliers() {
        let o = corpus::z_sqrt5();
        let m = ring_of_multipliers(&o, &lat(&[&[1, 1], &[0, 2]])).unwrap();
        assert_eq!(m.basis, vec![vec![qf(1, 2), qf(1, 2)], qvec(&[0, 1])]);
        let m = ring_of_multipliers(&corpus::z_i(), &lat(&[&[2, 0], &[0, 2]])).unwrap();
        assert_eq!(m.covolume().unwrap(), q(1));
        let m = ring_of_multipliers(&corpus::z(), &lat(&[&[7]])).unwrap();
        assert_eq!(m.basis, vec![qvec(&[1])]);
    }

    #[test]
    fn maximal_orders() {
        let o = corpus::z_sqrt5();
        let max = maximal_order(&o).unwrap();
        assert_eq!(max.covolume().unwrap(), qf(1, 2));
        assert_eq!(max.order.discriminant(), Z::from(5));
        let w = is_integrally_closed_order(&o).unwrap().unwrap();
        assert_eq!(w.coords(), &[qf(1, 2), qf(1, 2)]);
        let g = corpus::z_golden();
        assert!(is_integrally_closed_order(&g).unwrap().is_none());
        assert!(is_round2_stable(&g).unwrap());
        let w = is_integrally_closed_order(&corpus::z_3i()).unwrap().unwrap();
        assert_eq!(w.coords(), &[q(0), qf(1, 3)]);
        assert!(is_integrally_closed_order(&corpus::z_i()).unwrap().is_none());
        assert!(is_integrally_closed_order(&corpus::z()).unwrap().is_none());
        assert!(!is_round2_stable(&corpus::zz_index2()).unwrap());
    }

    #[test]
    fn outcomes() {
        assert!(matches!(closure_outcome(&corpus::z_i()).unwrap(), ClosureOutcome::Closed { .. }));
        assert!(matches!(closure_outcome(&corpus::zz_index2()).unwrap(), ClosureOutcome::IdempotentEscapes { .. }));
        assert!(matches!(closure_outcome(&corpus::z_x_mod_x2()).unwrap(), ClosureOutcome::NotReduced { index: 2, .. }));
        let p = corpus::z().product(&corpus::z_sqrt5());
        match closure_outcome(&p).unwrap() {
            ClosureOutcome::ComponentNotMaximal { witness, .. } => {
                assert_eq!(witness.coords(), &[q(0), qf(1, 2), qf(1, 2)]);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(closure_outcome(&corpus::m2z()).unwrap_err(), Error::NotCommutative);
    }

    #[test]
    fn discriminant_index_relation() {
        for o in [corpus::z_sqrt5(), corpus::z_3i(), corpus::zz_index2(), corpus::z_golden()] {
            let max = maximal_order(&o).unwrap();
            let index = (Q::one() / max.covolume().unwrap()).to_integer();
            assert_eq!(max.order.discriminant() * &index * &index, o.discriminant());
            let again = maximal_order(&max.order).unwrap();
            assert!(again.covolume().unwrap().is_one());
        }
    }
}
