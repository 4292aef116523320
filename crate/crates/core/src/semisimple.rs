//! Splitting a commutative reduced algebra into number fields.

use num_traits::{One, Zero};

use crate::enumerate;
use crate::error::{Error, Result};
use crate::factor::poly_factor_q;
use crate::order::{AlgebraElement, Commutativity, EmbeddedOrder, ZOrder};
use crate::poly::RationalPolynomial;
use crate::rational::{q, Q};

/// Largest coefficient bound tried by [`find_primitive_element`].
pub const PRIMITIVE_SEARCH_BOUND: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// The primitive element `a` used for the split, and its minimal
    /// polynomial (the product of the `component_minpolys`).
    pub primitive: AlgebraElement,
    pub minpoly: RationalPolynomial,
    pub idempotents: Vec<AlgebraElement>,
    /// Rational basis of `B e_i`, namely `e_i, e_i a, ..., e_i a^(deg g_i - 1)`.
    pub component_bases: Vec<Vec<Vec<Q>>>,
    pub component_minpolys: Vec<RationalPolynomial>,
}

impl Decomposition {
    pub fn len(&self) -> usize {
        self.idempotents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.idempotents.is_empty()
    }
}

fn require_commutative(order: &ZOrder) -> Result<()> {
    match order.is_commutative() {
        Commutativity::Commutative => Ok(()),
        Commutativity::Witness(..) => Err(Error::NotCommutative),
    }
}

/// Integer coefficient vectors in enumeration order whose minimal polynomial
/// has degree `dim`. Yields at most those with coefficients up to
/// [`PRIMITIVE_SEARCH_BOUND`].
pub fn primitive_elements(order: &ZOrder) -> impl Iterator<Item = (AlgebraElement, RationalPolynomial)> + '_ {
    let n = order.dim();
    enumerate::up_to(n, PRIMITIVE_SEARCH_BOUND).filter_map(move |v| {
        let a = AlgebraElement::from_ints(&v);
        let mu = order.minimal_polynomial(&a).ok()?;
        (mu.degree() as usize == n).then_some((a, mu))
    })
}

pub fn find_primitive_element(order: &ZOrder) -> Result<AlgebraElement> {
    require_commutative(order)?;
    primitive_elements(order)
        .next()
        .map(|(a, _)| a)
        .ok_or(Error::SearchExhausted(PRIMITIVE_SEARCH_BOUND))
}

pub fn decompose(order: &ZOrder) -> Result<Decomposition> {
    require_commutative(order)?;
    if !order.jacobson_radical().is_empty() {
        return Err(Error::NotReduced);
    }
    let a = find_primitive_element(order)?;
    let mu = order.minimal_polynomial(&a)?;
    if !mu.is_squarefree() {
        return Err(Error::NotReduced);
    }
    let factors: Vec<RationalPolynomial> = poly_factor_q(&mu)?
        .factors
        .into_iter()
        .map(|(g, _)| g.monic())
        .collect();
    let mut idempotents = Vec::new();
    let mut component_bases = Vec::new();
    for g in &factors {
        let h = mu.exact_div(g)?.ok_or_else(|| Error::Internal("factor does not divide".into()))?;
        // s g + t h = 1, so t h is 1 mod g and 0 mod h
        let (_, _, t) = g.ext_gcd(&h);
        let e_poly = (&t * &h).rem(&mu)?;
        let e = order.eval_poly(&e_poly, &a)?;
        let mut basis = Vec::new();
        let mut cur = e.clone();
        for _ in 0..g.degree() {
            basis.push(cur.coords().to_vec());
            cur = order.mul(&cur, &a)?;
        }
        idempotents.push(e);
        component_bases.push(basis);
    }
    Ok(Decomposition { primitive: a, minpoly: mu, idempotents, component_bases, component_minpolys: factors })
}

/// Index of the first idempotent outside `A`, or `None` when all lie in `A`.
pub fn idempotents_in_a(order: &ZOrder, dec: &Decomposition) -> Result<Option<usize>> {
    for (i, e) in dec.idempotents.iter().enumerate() {
        if !order.contains(e)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// The component `A e_i`, an order in the field `B e_i`, with identity `e_i`.
pub fn component_order(order: &ZOrder, dec: &Decomposition, i: usize) -> Result<EmbeddedOrder> {
    let e = dec
        .idempotents
        .get(i)
        .ok_or_else(|| Error::MalformedInput(format!("no component {i}")))?;
    if !order.contains(e)? {
        return Err(Error::IdempotentNotInOrder(i));
    }
    let rows: Vec<Vec<Q>> = (0..order.dim())
        .map(|j| order.mul(&order.basis_element(j), e).map(AlgebraElement::into_coords))
        .collect::<Result<_>>()?;
    EmbeddedOrder::from_rows(order, &rows, e.coords())
}

/// Checks the idempotent identities `e_i e_j = δ_ij e_i`, `Σ e_i = 1`, and
/// that the component dimensions add up.
pub fn check_decomposition(order: &ZOrder, dec: &Decomposition) -> Result<bool> {
    let n = order.dim();
    let mut sum = AlgebraElement::new(vec![Q::zero(); n]);
    for (i, ei) in dec.idempotents.iter().enumerate() {
        for (j, ej) in dec.idempotents.iter().enumerate() {
            let p = order.mul(ei, ej)?;
            let ok = if i == j { &p == ei } else { p.is_zero() };
            if !ok {
                return Ok(false);
            }
        }
        sum = sum.add(ei);
    }
    let dims: usize = dec.component_bases.iter().map(Vec::len).sum();
    Ok(sum == order.one() && dims == n && !dec.is_empty())
}

/// `e^2 = e`.
pub fn is_idempotent(order: &ZOrder, e: &AlgebraElement) -> Result<bool> {
    Ok(&order.mul(e, e)? == e)
}

/// `X^2 - X`.
pub fn idempotent_polynomial() -> RationalPolynomial {
    RationalPolynomial::new(vec![q(0), -Q::one(), q(1)])
}
