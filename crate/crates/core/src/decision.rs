//! Deciding whether `Int_Q(A)` is a Prüfer domain, with certificates that
//! can be re-checked independently.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::closure::{closure_outcome, is_round2_stable, ClosureOutcome};
use crate::error::{Error, Result};
use crate::lattice::lattice_member;
use crate::order::{AlgebraElement, Commutativity, EmbeddedOrder, ZOrder};
use crate::poly::RationalPolynomial;
use crate::rational::{fmt_coords, parse_rational, Q};
use crate::semisimple::{idempotent_polynomial, Decomposition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Yes,
    No,
    Indeterminate,
}

pub mod reason {
    pub const NONCOMMUTATIVE: &str = "NONCOMMUTATIVE";
    pub const NOT_REDUCED: &str = "NOT_REDUCED";
    pub const IDEMPOTENT_ESCAPES: &str = "IDEMPOTENT_ESCAPES";
    pub const COMPONENT_NOT_MAXIMAL: &str = "COMPONENT_NOT_MAXIMAL";
    pub const ALL_COMPONENTS_MAXIMAL: &str = "ALL_COMPONENTS_MAXIMAL";
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentProof {
    pub idempotent: Vec<String>,
    /// Irreducible defining polynomial of the field `B e_i`.
    pub field_polynomial: String,
    pub dimension: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    NoncommutingPair { left: Vec<String>, right: Vec<String>, names: [String; 2] },
    Nilpotent { element: Vec<String>, index: usize },
    IntegralElement { element: Vec<String>, minpoly: String },
    Decomposition { primitive: Vec<String>, minpoly: String, components: Vec<ComponentProof> },
    ResourceLimit { error: String, message: String },
}

/// Field order is part of the JSON contract.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrueferCertificate {
    pub verdict: Verdict,
    pub reason: String,
    pub witness: Option<Witness>,
    pub citation: String,
}

impl PrueferCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::MalformedCertificate(e.to_string()))
    }
}

const CITE_NONCOMMUTATIVE: &str =
    "over a base ring with zero Jacobson radical, Int_Q(A) Pruefer forces A commutative; these basis elements do not commute";
const CITE_NOT_REDUCED: &str =
    "Int_Q(A) Pruefer forces A reduced; this element of A is nonzero and nilpotent";
const CITE_NOT_CLOSED: &str =
    "Int_Q(A) Pruefer forces A to equal the set A' of elements of A tensor Q integral over Z; this element lies in A' but not in A";
const CITE_YES: &str =
    "A is commutative and equals the product of the rings of integers of the fields B e_i, so Int_Q(A) is Pruefer";

fn no(reason: &str, witness: Witness, citation: &str) -> PrueferCertificate {
    PrueferCertificate { verdict: Verdict::No, reason: reason.into(), witness: Some(witness), citation: citation.into() }
}

fn decomposition_witness(dec: &Decomposition) -> Witness {
    Witness::Decomposition {
        primitive: fmt_coords(dec.primitive.coords()),
        minpoly: dec.minpoly.to_string(),
        components: dec
            .idempotents
            .iter()
            .zip(&dec.component_minpolys)
            .zip(&dec.component_bases)
            .map(|((e, g), b)| ComponentProof {
                idempotent: fmt_coords(e.coords()),
                field_polynomial: g.to_string(),
                dimension: b.len(),
            })
            .collect(),
    }
}

fn decide_inner(order: &ZOrder) -> Result<PrueferCertificate> {
    if let Commutativity::Witness(i, j) = order.is_commutative() {
        let names = order.basis_names();
        return Ok(no(
            reason::NONCOMMUTATIVE,
            Witness::NoncommutingPair {
                left: fmt_coords(order.basis_element(i).coords()),
                right: fmt_coords(order.basis_element(j).coords()),
                names: [names[i].clone(), names[j].clone()],
            },
            CITE_NONCOMMUTATIVE,
        ));
    }
    Ok(match closure_outcome(order)? {
        ClosureOutcome::NotReduced { nilpotent, index } => no(
            reason::NOT_REDUCED,
            Witness::Nilpotent { element: fmt_coords(nilpotent.coords()), index },
            CITE_NOT_REDUCED,
        ),
        ClosureOutcome::IdempotentEscapes { component, decomposition } => no(
            reason::IDEMPOTENT_ESCAPES,
            Witness::IntegralElement {
                element: fmt_coords(decomposition.idempotents[component].coords()),
                minpoly: idempotent_polynomial().to_string(),
            },
            CITE_NOT_CLOSED,
        ),
        ClosureOutcome::ComponentNotMaximal { witness, .. } => no(
            reason::COMPONENT_NOT_MAXIMAL,
            Witness::IntegralElement {
                element: fmt_coords(witness.coords()),
                minpoly: order.minimal_polynomial(&witness)?.to_string(),
            },
            CITE_NOT_CLOSED,
        ),
        ClosureOutcome::Closed { decomposition } => PrueferCertificate {
            verdict: Verdict::Yes,
            reason: reason::ALL_COMPONENTS_MAXIMAL.into(),
            witness: Some(decomposition_witness(&decomposition)),
            citation: CITE_YES.into(),
        },
    })
}

/// Runs the decision pipeline. Resource exhaustion yields an
/// `INDETERMINATE` certificate; other errors are returned.
pub fn decide_pruefer(order: &ZOrder) -> Result<PrueferCertificate> {
    match decide_inner(order) {
        Err(e) if e.is_resource_limit() => Ok(PrueferCertificate {
            verdict: Verdict::Indeterminate,
            reason: e.code().into(),
            witness: Some(Witness::ResourceLimit { error: e.code().into(), message: e.to_string() }),
            citation: "resource limit reached before a verdict".into(),
        }),
        other => other,
    }
}

// --- verification ---------------------------------------------------------
//
// The checks below multiply with their own loop over the structure constants
// and evaluate polynomials with their own Horner scheme.

fn parse_element(order: &ZOrder, v: &[String]) -> Result<Vec<Q>> {
    if v.len() != order.dim() {
        return Err(Error::MalformedCertificate(format!("element has {} coordinates, expected {}", v.len(), order.dim())));
    }
    v.iter()
        .map(|s| parse_rational(s).map_err(|e| Error::MalformedCertificate(e.to_string())))
        .collect()
}

fn parse_poly(s: &str) -> Result<RationalPolynomial> {
    RationalPolynomial::parse(s).map_err(|e| Error::MalformedCertificate(e.to_string()))
}

fn product(order: &ZOrder, x: &[Q], y: &[Q]) -> Vec<Q> {
    let n = order.dim();
    let t = order.table();
    (0..n)
        .map(|k| {
            let mut acc = Q::zero();
            for i in 0..n {
                for j in 0..n {
                    let c = &t[i][j][k];
                    if !c.is_zero() && !x[i].is_zero() && !y[j].is_zero() {
                        acc += &x[i] * &y[j] * Q::from_integer(c.clone());
                    }
                }
            }
            acc
        })
        .collect()
}

fn evaluate(order: &ZOrder, f: &RationalPolynomial, x: &[Q]) -> Vec<Q> {
    let one: Vec<Q> = order.one_coords().iter().map(|c| Q::from_integer(c.clone())).collect();
    let mut acc = vec![Q::zero(); order.dim()];
    for c in f.coeffs().iter().rev() {
        acc = product(order, &acc, x).into_iter().zip(&one).map(|(a, u)| a + c * u).collect();
    }
    acc
}

fn is_zero(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

fn malformed(msg: &str) -> Error {
    Error::MalformedCertificate(msg.into())
}

/// Re-checks a certificate against `order`. `Ok(false)` means the claim is
/// wrong; `Err` means the certificate is not well formed.
pub fn verify_certificate(order: &ZOrder, cert: &PrueferCertificate) -> Result<bool> {
    let witness = cert.witness.as_ref().ok_or_else(|| malformed("missing witness"))?;
    match (cert.verdict, cert.reason.as_str(), witness) {
        (Verdict::No, reason::NONCOMMUTATIVE, Witness::NoncommutingPair { left, right, .. }) => {
            let (x, y) = (parse_element(order, left)?, parse_element(order, right)?);
            Ok(product(order, &x, &y) != product(order, &y, &x))
        }
        (Verdict::No, reason::NOT_REDUCED, Witness::Nilpotent { element, index }) => {
            let x = parse_element(order, element)?;
            if is_zero(&x) || *index == 0 || !lattice_member(&order.lattice(), &x)? {
                return Ok(false);
            }
            let mut p = x.clone();
            for _ in 1..*index {
                p = product(order, &p, &x);
            }
            Ok(is_zero(&p))
        }
        (Verdict::No, reason::IDEMPOTENT_ESCAPES | reason::COMPONENT_NOT_MAXIMAL, Witness::IntegralElement { element, minpoly }) => {
            let b = parse_element(order, element)?;
            let f = parse_poly(minpoly)?;
            let monic_integral = f.is_monic() && f.has_integer_coeffs() && f.degree() >= 1;
            Ok(monic_integral && is_zero(&evaluate(order, &f, &b)) && !lattice_member(&order.lattice(), &b)?)
        }
        (Verdict::Yes, reason::ALL_COMPONENTS_MAXIMAL, Witness::Decomposition { components, .. }) => {
            verify_yes(order, components)
        }
        (Verdict::Indeterminate, _, Witness::ResourceLimit { .. }) => Ok(false),
        _ => Err(malformed("verdict, reason and witness kind do not match")),
    }
}

fn verify_yes(order: &ZOrder, components: &[ComponentProof]) -> Result<bool> {
    let n = order.dim();
    let t = order.table();
    if (0..n).any(|i| (0..n).any(|j| t[i][j] != t[j][i])) {
        return Ok(false);
    }
    if components.is_empty() {
        return Ok(false);
    }
    let es: Vec<Vec<Q>> = components.iter().map(|c| parse_element(order, &c.idempotent)).collect::<Result<_>>()?;
    let mut sum = vec![Q::zero(); n];
    for (i, ei) in es.iter().enumerate() {
        for (j, ej) in es.iter().enumerate() {
            let p = product(order, ei, ej);
            let ok = if i == j { &p == ei } else { is_zero(&p) };
            if !ok {
                return Ok(false);
            }
        }
        if !lattice_member(&order.lattice(), ei)? {
            return Ok(false);
        }
        sum.iter_mut().zip(ei).for_each(|(s, x)| *s += x);
    }
    let one: Vec<Q> = order.one_coords().iter().map(|c| Q::from_integer(c.clone())).collect();
    if sum != one {
        return Ok(false);
    }
    let mut total = 0;
    for e in &es {
        let rows: Vec<Vec<Q>> = (0..n)
            .map(|j| product(order, order.basis_element(j).coords(), e))
            .collect();
        let comp = EmbeddedOrder::from_rows(order, &rows, e)?;
        total += comp.dim();
        match is_round2_stable(&comp.order) {
            Ok(true) => {}
            Ok(false) | Err(Error::NotReduced) => return Ok(false),
            Err(e) => return Err(e),
        }
    }
    Ok(total == n)
}

/// `(X/c)^k`. It sends a nilpotent of index `k` to 0, so it is
/// integer-valued there without being in Z[X] for `c > 1`.
pub fn nilpotent_annihilator(index: usize, c: u64) -> RationalPolynomial {
    RationalPolynomial::monomial(Q::one() / Q::from_integer(num_traits::pow(c.into(), index)), index)
}

/// Convenience for callers holding parsed coordinates.
pub fn element_of(order: &ZOrder, v: &[String]) -> Result<AlgebraElement> {
    Ok(AlgebraElement::new(parse_element(order, v)?))
}
