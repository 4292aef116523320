//! Z-orders given by integer structure constants, and their rational
//! algebras.
//!
//! The basis of a [`ZOrder`] is a Z-basis of the order `A`, so an element of
//! `B = A ⊗ Q` lies in `A` exactly when all of its coordinates are integers.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{lattice_member, rational_hnf, IntegerLattice};
use crate::linalg::{self, Matrix};
use crate::poly::RationalPolynomial;
use crate::rational::{content, split_denominator, to_q, Q, Z};

/// An element of `B`, in the coordinates of its order's basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    coords: Vec<Q>,
}

impl AlgebraElement {
    pub fn new(coords: Vec<Q>) -> Self {
        Self { coords }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Self::new(v.iter().map(|&x| Q::from_integer(x.into())).collect())
    }

    pub fn from_z(v: &[Z]) -> Self {
        Self::new(to_q(v))
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Q> {
        self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// `(a, d)` with `self = a / d`, `a` integral and `d` minimal.
    pub fn split(&self) -> (Vec<Z>, Z) {
        split_denominator(&self.coords)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::new(self.coords.iter().map(|a| a * c).collect())
    }
}

/// Either an integer literal or a decimal string, for entries that may not
/// fit in 64 bits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntLit {
    Small(i64),
    Big(String),
}

impl IntLit {
    fn to_z(&self) -> Result<Z> {
        match self {
            IntLit::Small(x) => Ok(Z::from(*x)),
            IntLit::Big(s) => s
                .trim()
                .parse()
                .map_err(|_| Error::MalformedInput(format!("not an integer: {s:?}"))),
        }
    }

    fn from_z(z: &Z) -> Self {
        i64::try_from(z).map_or_else(|_| IntLit::Big(z.to_string()), IntLit::Small)
    }
}

/// On-disk description of an order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderDocument {
    pub dim: usize,
    #[serde(default)]
    pub basis_names: Vec<String>,
    pub one: Vec<IntLit>,
    pub table: Vec<Vec<Vec<IntLit>>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Commutativity {
    Commutative,
    /// Basis indices `(i, j)` with `b_i b_j != b_j b_i`.
    Witness(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reducedness {
    Reduced,
    /// A nonzero nilpotent element of `A` with primitive integer coordinates.
    NotReduced { witness: Vec<Z>, nilpotency_index: usize },
    /// `B` is semisimple but not commutative; reducedness would need division
    /// ring recognition.
    UndecidedSemisimple,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZOrder {
    names: Vec<String>,
    table: Vec<Vec<Vec<Z>>>,
    one: Vec<Z>,
}

pub fn load_order(json: &str) -> Result<ZOrder> {
    let doc: OrderDocument =
        serde_json::from_str(json).map_err(|e| Error::MalformedInput(e.to_string()))?;
    ZOrder::from_document(&doc)
}

impl ZOrder {
    /// Validate and build an order. Checks, in order: shapes, unit-line
    /// saturation (`A ∩ Q = Z`), the two-sided identity, associativity.
    pub fn new(names: Vec<String>, one: Vec<Z>, table: Vec<Vec<Vec<Z>>>) -> Result<Self> {
        let n = one.len();
        if n == 0 {
            return Err(Error::MalformedInput("dimension must be at least 1".into()));
        }
        let shape_ok = table.len() == n
            && table.iter().all(|row| row.len() == n && row.iter().all(|v| v.len() == n));
        if !shape_ok {
            return Err(Error::MalformedInput(format!("table must be {n} x {n} x {n}")));
        }
        let names = if names.is_empty() { (1..=n).map(|i| format!("b{i}")).collect() } else { names };
        if names.len() != n {
            return Err(Error::MalformedInput("basis_names length differs from dim".into()));
        }
        let g = content(&one);
        if g.is_zero() {
            return Err(Error::NoIdentity(0));
        }
        if !g.is_one() {
            return Err(Error::UnitLineNotSaturated(g.to_string()));
        }
        let order = Self { names, table, one };
        order.check_identity()?;
        order.check_associative()?;
        Ok(order)
    }

    pub fn from_document(doc: &OrderDocument) -> Result<Self> {
        if doc.one.len() != doc.dim {
            return Err(Error::MalformedInput(format!("`one` has length {}, dim is {}", doc.one.len(), doc.dim)));
        }
        let one = doc.one.iter().map(IntLit::to_z).collect::<Result<Vec<_>>>()?;
        let table = doc
            .table
            .iter()
            .map(|row| row.iter().map(|v| v.iter().map(IntLit::to_z).collect()).collect())
            .collect::<Result<Vec<Vec<Vec<Z>>>>>()?;
        Self::new(doc.basis_names.clone(), one, table)
    }

    pub fn to_document(&self) -> OrderDocument {
        OrderDocument {
            dim: self.dim(),
            basis_names: self.names.clone(),
            one: self.one.iter().map(IntLit::from_z).collect(),
            table: self
                .table
                .iter()
                .map(|row| row.iter().map(|v| v.iter().map(IntLit::from_z).collect()).collect())
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("serializable")
    }

    fn check_identity(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            let e = unit_vector(n, i);
            if self.mul_int(&self.one, &e) != e || self.mul_int(&e, &self.one) != e {
                return Err(Error::NoIdentity(i));
            }
        }
        Ok(())
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let ij = &self.table[i][j];
                for k in 0..n {
                    let left = self.mul_int(ij, &unit_vector(n, k));
                    let right = self.mul_int(&unit_vector(n, i), &self.table[j][k]);
                    if left != right {
                        return Err(Error::NonAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.one.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.names
    }

    pub fn table(&self) -> &[Vec<Vec<Z>>] {
        &self.table
    }

    pub fn one_coords(&self) -> &[Z] {
        &self.one
    }

    pub fn one(&self) -> AlgebraElement {
        AlgebraElement::from_z(&self.one)
    }

    pub fn basis_element(&self, i: usize) -> AlgebraElement {
        AlgebraElement::from_z(&unit_vector(self.dim(), i))
    }

    /// The lattice `A` itself (`Z^n` in its own coordinates).
    pub fn lattice(&self) -> IntegerLattice {
        IntegerLattice::standard(self.dim())
    }

    fn check_dim(&self, x: &AlgebraElement) -> Result<()> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: x.dim() });
        }
        Ok(())
    }

    pub fn element(&self, coords: Vec<Q>) -> Result<AlgebraElement> {
        let x = AlgebraElement::new(coords);
        self.check_dim(&x)?;
        Ok(x)
    }

    pub fn mul_int(&self, x: &[Z], y: &[Z]) -> Vec<Z> {
        let n = self.dim();
        let mut out = vec![Z::zero(); n];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (o, t) in out.iter_mut().zip(&self.table[i][j]) {
                    if !t.is_zero() {
                        *o += &ab * t;
                    }
                }
            }
        }
        out
    }

    pub fn mul_coords(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let n = self.dim();
        let mut out = vec![Q::zero(); n];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (o, t) in out.iter_mut().zip(&self.table[i][j]) {
                    if !t.is_zero() {
                        *o += &ab * Q::from_integer(t.clone());
                    }
                }
            }
        }
        out
    }

    /// Product in `B`, the bilinear extension of the table.
    pub fn mul(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(AlgebraElement::new(self.mul_coords(&x.coords, &y.coords)))
    }

    pub fn pow(&self, x: &AlgebraElement, k: u64) -> Result<AlgebraElement> {
        self.check_dim(x)?;
        let mut acc = self.one();
        let mut base = x.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = AlgebraElement::new(self.mul_coords(&acc.coords, &base.coords));
            }
            e >>= 1;
            if e > 0 {
                base = AlgebraElement::new(self.mul_coords(&base.coords, &base.coords));
            }
        }
        Ok(acc)
    }

    /// `f(x)` by Horner's rule.
    pub fn eval_poly(&self, f: &RationalPolynomial, x: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_dim(x)?;
        let one = self.one();
        let mut acc = AlgebraElement::new(vec![Q::zero(); self.dim()]);
        for c in f.coeffs().iter().rev() {
            acc = AlgebraElement::new(self.mul_coords(&acc.coords, &x.coords)).add(&one.scale(c));
        }
        Ok(acc)
    }

    /// `x ∈ A`, decided by lattice membership.
    pub fn contains(&self, x: &AlgebraElement) -> Result<bool> {
        self.check_dim(x)?;
        lattice_member(&self.lattice(), &x.coords)
    }

    /// Matrix of `y -> x y` acting on coordinate columns.
    pub fn left_mult_matrix(&self, x: &[Q]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vec<Q>> = (0..n)
            .map(|j| self.mul_coords(x, &to_q(&unit_vector(n, j))))
            .collect();
        linalg::transpose(&cols)
    }

    /// Trace of the left regular representation.
    pub fn trace(&self, x: &[Q]) -> Q {
        linalg::trace(&self.left_mult_matrix(x))
    }

    /// Gram matrix `Tr(b_i b_j)`; integral for an order.
    pub fn trace_form(&self) -> Vec<Vec<Z>> {
        let n = self.dim();
        let traces: Vec<Z> = (0..n)
            .map(|k| linalg::trace(&self.left_mult_matrix(&to_q(&unit_vector(n, k)))).to_integer())
            .collect();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.table[i][j].iter().zip(&traces).map(|(c, t)| c * t).sum())
                    .collect()
            })
            .collect()
    }

    pub fn discriminant(&self) -> Z {
        let g: Matrix = self.trace_form().iter().map(|r| to_q(r)).collect();
        linalg::determinant(&g).to_integer()
    }

    /// Least-degree monic polynomial vanishing at `b`, from the first linear
    /// dependency among `1, b, b^2, ...`.
    pub fn minimal_polynomial(&self, b: &AlgebraElement) -> Result<RationalPolynomial> {
        self.check_dim(b)?;
        let n = self.dim();
        let mut powers = vec![to_q(&self.one)];
        loop {
            let k = powers.len();
            // columns are powers
            let m: Matrix = (0..n).map(|r| powers.iter().map(|p| p[r].clone()).collect()).collect();
            let ker = linalg::kernel(&m, k);
            if let Some(c) = ker.first() {
                let f = RationalPolynomial::new(c.clone());
                return Ok(f.monic());
            }
            let next = self.mul_coords(&powers[k - 1], &b.coords);
            powers.push(next);
        }
    }

    pub fn characteristic_polynomial(&self, b: &AlgebraElement) -> Result<RationalPolynomial> {
        self.check_dim(b)?;
        Ok(linalg::charpoly(&self.left_mult_matrix(&b.coords)))
    }

    pub fn is_commutative(&self) -> Commutativity {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                if self.table[i][j] != self.table[j][i] {
                    return Commutativity::Witness(i, j);
                }
            }
        }
        Commutativity::Commutative
    }

    /// Radical of `B`, computed as the radical of the trace form
    /// `(x, y) -> Tr(xy)`. This identification needs characteristic zero.
    pub fn jacobson_radical(&self) -> Vec<Vec<Q>> {
        let g: Matrix = self.trace_form().iter().map(|r| to_q(r)).collect();
        let n = self.dim();
        let ker = linalg::kernel(&g, n);
        if ker.is_empty() {
            return ker;
        }
        rational_hnf(n, &ker).expect("consistent dimensions")
    }

    /// Smallest `k >= 1` with `x^k = 0`, if `x` is nilpotent.
    pub fn nilpotency_index(&self, x: &[Q]) -> Option<usize> {
        let mut p = x.to_vec();
        for k in 1..=self.dim() + 1 {
            if p.iter().all(Zero::is_zero) {
                return Some(k);
            }
            p = self.mul_coords(&p, x);
        }
        None
    }

    pub fn is_reduced(&self) -> Reducedness {
        let rad = self.jacobson_radical();
        match rad.first() {
            None if self.is_commutative() == Commutativity::Commutative => Reducedness::Reduced,
            None => Reducedness::UndecidedSemisimple,
            Some(v) => {
                let (mut a, _) = split_denominator(v);
                let g = content(&a);
                a.iter_mut().for_each(|x| *x = &*x / &g);
                let k = self
                    .nilpotency_index(&to_q(&a))
                    .expect("radical elements are nilpotent");
                Reducedness::NotReduced { witness: a, nilpotency_index: k }
            }
        }
    }

    /// The direct product order `self × other`.
    pub fn product(&self, other: &ZOrder) -> ZOrder {
        let (n, m) = (self.dim(), other.dim());
        let mut names: Vec<String> = self.names.iter().map(|s| format!("{s}.1")).collect();
        names.extend(other.names.iter().map(|s| format!("{s}.2")));
        let mut one = self.one.clone();
        one.extend(other.one.iter().cloned());
        let mut table = vec![vec![vec![Z::zero(); n + m]; n + m]; n + m];
        for i in 0..n {
            for j in 0..n {
                table[i][j][..n].clone_from_slice(&self.table[i][j]);
            }
        }
        for i in 0..m {
            for j in 0..m {
                table[n + i][n + j][n..].clone_from_slice(&other.table[i][j]);
            }
        }
        ZOrder { names, table, one }
    }
}

pub fn unit_vector(n: usize, i: usize) -> Vec<Z> {
    (0..n).map(|j| if i == j { Z::one() } else { Z::zero() }).collect()
}

/// An order whose basis is given by rational coordinate rows in some parent
/// algebra (a suborder, an overorder, or a component `A e`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddedOrder {
    pub order: ZOrder,
    /// Row `i` holds the parent coordinates of basis element `i`.
    pub basis: Vec<Vec<Q>>,
    scaled: IntegerLattice,
    denom: Z,
}

impl EmbeddedOrder {
    /// Build the order spanned by `rows` inside `parent`, with the given
    /// identity. The rows are replaced by their canonical HNF basis; the
    /// multiplication table is rebuilt and validated.
    pub fn from_rows(parent: &ZOrder, rows: &[Vec<Q>], one: &[Q]) -> Result<Self> {
        let n = parent.dim();
        let basis = rational_hnf(n, rows)?;
        let denom = basis
            .iter()
            .fold(Z::one(), |acc, r| acc.lcm(&crate::rational::common_denominator(r)));
        let scaled_rows: Vec<Vec<Z>> = basis
            .iter()
            .map(|r| r.iter().map(|x| (x * &denom).to_integer()).collect())
            .collect();
        let scaled = IntegerLattice::from_rows(n, &scaled_rows)?;
        let mut this = Self { order: parent.clone(), basis, scaled, denom };
        let k = this.basis.len();
        let to_int = |v: Option<Vec<Q>>, what: &str| -> Result<Vec<Z>> {
            let v = v.ok_or_else(|| Error::Internal(format!("{what} leaves the span")))?;
            crate::rational::to_z(&v).ok_or_else(|| Error::Internal(format!("{what} is not integral")))
        };
        let one_c = to_int(this.from_parent(one)?, "identity")?;
        let mut table = vec![vec![Vec::new(); k]; k];
        for i in 0..k {
            for j in 0..k {
                let prod = parent.mul_coords(&this.basis[i], &this.basis[j]);
                table[i][j] = to_int(this.from_parent(&prod)?, "product of basis elements")?;
            }
        }
        let names = (1..=k).map(|i| format!("w{i}")).collect();
        this.order = ZOrder::new(names, one_c, table)?;
        Ok(this)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates in this order's basis of a parent vector in its span.
    pub fn from_parent(&self, v: &[Q]) -> Result<Option<Vec<Q>>> {
        let dq = Q::from_integer(self.denom.clone());
        let scaled: Vec<Q> = v.iter().map(|x| x * &dq).collect();
        self.scaled.rational_coords(&scaled)
    }

    pub fn to_parent(&self, coords: &[Q]) -> Vec<Q> {
        let n = self.basis.first().map_or(0, Vec::len);
        let mut out = vec![Q::zero(); n];
        for (c, row) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(row) {
                *o += c * b;
            }
        }
        out
    }

    /// Membership of a parent vector in this order.
    pub fn contains(&self, v: &[Q]) -> Result<bool> {
        Ok(self.from_parent(v)?.is_some_and(|c| c.iter().all(|x| x.is_integer())))
    }

    /// `|det|` of the basis, i.e. the index `[parent : self]` as a rational
    /// (below 1 for overorders). Full rank only.
    pub fn covolume(&self) -> Result<Q> {
        if self.basis.len() != self.basis.first().map_or(0, Vec::len) {
            return Err(Error::RankDeficient);
        }
        Ok(linalg::determinant(&self.basis).abs())
    }
}
