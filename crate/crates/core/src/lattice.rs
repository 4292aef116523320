//! Integer lattices in row Hermite normal form.
//!
//! A lattice is stored as the nonzero rows of its HNF: rows are ordered by
//! strictly increasing pivot column, pivots are positive and every entry
//! above a pivot lies in `[0, pivot)`. The form is unique for a given span,
//! so lattice equality is plain equality of the stored rows.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{common_denominator, Q, Z};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerLattice {
    ambient_dim: usize,
    basis: Vec<Vec<Z>>,
}

fn check_rows<T>(rows: &[Vec<T>], dim: usize) -> Result<()> {
    match rows.iter().find(|r| r.len() != dim) {
        Some(r) => Err(Error::DimensionMismatch { expected: dim, got: r.len() }),
        None => Ok(()),
    }
}

fn sub_multiple(rows: &mut [Vec<Z>], target: usize, source: usize, q: &Z) {
    if q.is_zero() {
        return;
    }
    let (t, s) = if target < source {
        let (lo, hi) = rows.split_at_mut(source);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(target);
        (&mut hi[0], &lo[source])
    };
    for (x, y) in t.iter_mut().zip(s) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

/// Row echelon reduction with Euclidean pivoting. Applies the same row
/// operations to `transform` when given. Returns the rank; the first `rank`
/// rows of `a` then hold the HNF and the remaining rows are zero.
pub(crate) fn echelon(a: &mut [Vec<Z>], ncols: usize, mut transform: Option<&mut [Vec<Z>]>) -> usize {
    let m = a.len();
    let mut r = 0;
    for c in 0..ncols {
        if r == m {
            break;
        }
        loop {
            let piv = (r..m)
                .filter(|&i| !a[i][c].is_zero())
                .min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()));
            let Some(piv) = piv else { break };
            a.swap(r, piv);
            if let Some(u) = transform.as_deref_mut() {
                u.swap(r, piv);
            }
            let mut clean = true;
            for i in r + 1..m {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                sub_multiple(a, i, r, &q);
                if let Some(u) = transform.as_deref_mut() {
                    sub_multiple(u, i, r, &q);
                }
                if !a[i][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if r < m && !a[r][c].is_zero() {
            if a[r][c].is_negative() {
                a[r].iter_mut().for_each(|x| *x = -&*x);
                if let Some(u) = transform.as_deref_mut() {
                    u[r].iter_mut().for_each(|x| *x = -&*x);
                }
            }
            for i in 0..r {
                let q = a[i][c].div_floor(&a[r][c]);
                sub_multiple(a, i, r, &q);
                if let Some(u) = transform.as_deref_mut() {
                    sub_multiple(u, i, r, &q);
                }
            }
            r += 1;
        }
    }
    r
}

/// HNF of the integer row span of `rows`.
pub fn hnf_reduce(rows: &[Vec<Z>]) -> Result<IntegerLattice> {
    let dim = rows
        .first()
        .map(Vec::len)
        .ok_or_else(|| Error::MalformedInput("no rows given".into()))?;
    IntegerLattice::from_rows(dim, rows)
}

/// Integer vectors `x` with `x * m = 0`, as a saturated lattice basis.
pub fn integer_left_kernel(m: &[Vec<Z>], ncols: usize) -> Vec<Vec<Z>> {
    let k = m.len();
    let mut a = m.to_vec();
    let mut u: Vec<Vec<Z>> = (0..k)
        .map(|i| (0..k).map(|j| if i == j { Z::one() } else { Z::zero() }).collect())
        .collect();
    let rank = echelon(&mut a, ncols, Some(&mut u));
    u.split_off(rank)
}

impl IntegerLattice {
    pub fn from_rows(ambient_dim: usize, rows: &[Vec<Z>]) -> Result<Self> {
        check_rows(rows, ambient_dim)?;
        let mut a = rows.to_vec();
        let rank = echelon(&mut a, ambient_dim, None);
        a.truncate(rank);
        Ok(Self { ambient_dim, basis: a })
    }

    /// Z^n with the standard basis.
    pub fn standard(n: usize) -> Self {
        let basis = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Z::one() } else { Z::zero() }).collect())
            .collect();
        Self { ambient_dim: n, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[Vec<Z>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.ambient_dim
    }

    fn pivot(row: &[Z]) -> usize {
        row.iter().position(|x| !x.is_zero()).expect("HNF rows are nonzero")
    }

    /// HNF diagonal; for a full-rank lattice this lists the pivot entries
    /// whose product is the index in Z^n.
    pub fn pivots(&self) -> Vec<Z> {
        self.basis.iter().map(|r| r[Self::pivot(r)].clone()).collect()
    }

    /// Index `[Z^n : L]` of a full-rank lattice.
    pub fn index(&self) -> Result<Z> {
        if !self.is_full_rank() {
            return Err(Error::RankDeficient);
        }
        Ok(self.pivots().iter().product())
    }

    /// Coefficients of `v` against the basis when `v` lies in the rational span.
    pub fn rational_coords(&self, v: &[Q]) -> Result<Option<Vec<Q>>> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, got: v.len() });
        }
        let mut rest = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.basis.len());
        for row in &self.basis {
            let p = Self::pivot(row);
            let x = &rest[p] / Q::from_integer(row[p].clone());
            if !x.is_zero() {
                for (r, b) in rest.iter_mut().zip(row).skip(p) {
                    if !b.is_zero() {
                        *r -= &x * Q::from_integer(b.clone());
                    }
                }
            }
            coeffs.push(x);
        }
        Ok(rest.iter().all(Zero::is_zero).then_some(coeffs))
    }

    /// True iff `v` is an integer combination of the basis rows.
    pub fn contains(&self, v: &[Q]) -> Result<bool> {
        Ok(self
            .rational_coords(v)?
            .is_some_and(|c| c.iter().all(|x| x.is_integer())))
    }

    pub fn contains_int(&self, v: &[Z]) -> Result<bool> {
        self.contains(&crate::rational::to_q(v))
    }

    /// `k * L`.
    pub fn scaled(&self, k: &Z) -> Self {
        let basis: Vec<Vec<Z>> = self
            .basis
            .iter()
            .map(|r| r.iter().map(|x| x * k).collect())
            .collect();
        Self::from_rows(self.ambient_dim, &basis).expect("same dimension")
    }

    /// Sum of two lattices.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Self::from_rows(self.ambient_dim, &rows)
    }

    pub fn contains_lattice(&self, other: &Self) -> Result<bool> {
        for r in &other.basis {
            if !self.contains_int(r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Membership of a rational vector in the integer span of `lattice`.
pub fn lattice_member(lattice: &IntegerLattice, v: &[Q]) -> Result<bool> {
    lattice.contains(v)
}

/// Points of `lattice` lying in the rational span of `subspace`.
pub fn lattice_intersect(lattice: &IntegerLattice, subspace: &[Vec<Q>]) -> Result<IntegerLattice> {
    let n = lattice.ambient_dim;
    check_rows(subspace, n)?;
    let normals = linalg::kernel(subspace, n);
    if normals.is_empty() || lattice.rank() == 0 {
        return Ok(lattice.clone());
    }
    // x * H * W^T = 0, cleared to integers
    let mut m: Vec<Vec<Q>> = lattice
        .basis
        .iter()
        .map(|h| {
            normals
                .iter()
                .map(|w| {
                    h.iter()
                        .zip(w)
                        .fold(Q::zero(), |acc, (a, b)| acc + Q::from_integer(a.clone()) * b)
                })
                .collect()
        })
        .collect();
    let d = m.iter().fold(Z::one(), |acc, r| acc.lcm(&common_denominator(r)));
    let mz: Vec<Vec<Z>> = m
        .iter_mut()
        .map(|r| r.iter().map(|x| (x * &d).to_integer()).collect())
        .collect();
    let kernel = integer_left_kernel(&mz, normals.len());
    let rows: Vec<Vec<Z>> = kernel
        .iter()
        .map(|k| {
            (0..n)
                .map(|j| {
                    k.iter()
                        .zip(&lattice.basis)
                        .fold(Z::zero(), |acc, (c, h)| acc + c * &h[j])
                })
                .collect()
        })
        .collect();
    IntegerLattice::from_rows(n, &rows)
}

/// Canonical basis of the Z-span of rational vectors: `HNF(d L) / d` where
/// `d` clears every denominator.
pub fn rational_hnf(dim: usize, rows: &[Vec<Q>]) -> Result<Vec<Vec<Q>>> {
    check_rows(rows, dim)?;
    let d = rows.iter().fold(Z::one(), |acc, r| acc.lcm(&common_denominator(r)));
    let scaled: Vec<Vec<Z>> = rows
        .iter()
        .map(|r| r.iter().map(|x| (x * &d).to_integer()).collect())
        .collect();
    let lat = IntegerLattice::from_rows(dim, &scaled)?;
    let dq = Q::from_integer(d);
    Ok(lat
        .basis
        .iter()
        .map(|r| r.iter().map(|x| Q::from_integer(x.clone()) / &dq).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf, qvec};

    fn zrows(rows: &[&[i64]]) -> Vec<Vec<Z>> {
        rows.iter().map(|r| r.iter().map(|&x| Z::from(x)).collect()).collect()
    }

    #[test]
    fn identity_rows() {
        let l = hnf_reduce(&zrows(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap();
        assert_eq!(l, IntegerLattice::standard(3));
    }

    #[test]
    fn small_hnf() {
        let l = hnf_reduce(&zrows(&[&[2, 0], &[0, 2], &[1, 1]])).unwrap();
        assert_eq!(l.basis(), zrows(&[&[1, 1], &[0, 2]]).as_slice());
    }

    #[test]
    fn zero_rows_give_rank_zero() {
        let l = hnf_reduce(&zrows(&[&[0, 0]])).unwrap();
        assert_eq!(l.rank(), 0);
        assert!(l.contains(&qvec(&[0, 0])).unwrap());
        assert!(!l.contains(&qvec(&[1, 0])).unwrap());
    }

    #[test]
    fn mismatched_rows_rejected() {
        let err = hnf_reduce(&zrows(&[&[1, 0], &[1]])).unwrap_err();
        assert_eq!(err.code(), "DIMENSION_MISMATCH");
        let l = IntegerLattice::standard(2);
        assert!(l.contains(&qvec(&[1])).is_err());
    }

    #[test]
    fn membership() {
        let z2 = IntegerLattice::standard(2);
        assert!(!lattice_member(&z2, &[qf(1, 2), q(0)]).unwrap());
        let l = hnf_reduce(&zrows(&[&[2, 0], &[1, 1]])).unwrap();
        assert!(lattice_member(&l, &qvec(&[3, 1])).unwrap());
        assert!(!lattice_member(&l, &qvec(&[1, 0])).unwrap());
        // a/2 for a = [[0,4],[1,2]] in M2(Z) coordinates
        let z4 = IntegerLattice::standard(4);
        assert!(!lattice_member(&z4, &[q(0), q(2), qf(1, 2), q(1)]).unwrap());
    }

    #[test]
    fn intersections() {
        let z2 = IntegerLattice::standard(2);
        let l = lattice_intersect(&z2, &[qvec(&[1, 0])]).unwrap();
        assert_eq!(l.basis(), zrows(&[&[1, 0]]).as_slice());

        let z3 = IntegerLattice::standard(3);
        let full = lattice_intersect(&z3, &[qvec(&[1, 0, 0]), qvec(&[0, 1, 0]), qvec(&[0, 0, 1])]).unwrap();
        assert_eq!(full, z3);

        // a rational direction through a sublattice
        let l = hnf_reduce(&zrows(&[&[2, 0], &[0, 3]])).unwrap();
        let line = lattice_intersect(&l, &[vec![qf(1, 2), qf(1, 2)]]).unwrap();
        assert_eq!(line.basis(), zrows(&[&[6, 6]]).as_slice());
    }

    #[test]
    fn rational_hnf_is_canonical() {
        let a = rational_hnf(2, &[qvec(&[1, 0]), vec![qf(1, 2), qf(1, 2)]]).unwrap();
        let b = rational_hnf(2, &[vec![qf(1, 2), qf(1, 2)], vec![qf(-1, 2), qf(1, 2)]]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, vec![vec![qf(1, 2), qf(1, 2)], vec![q(0), q(1)]]);
    }

    #[test]
    fn left_kernel_is_saturated() {
        let m = zrows(&[&[2], &[4], &[6]]);
        let k = integer_left_kernel(&m, 1);
        assert_eq!(k.len(), 2);
        for row in &k {
            let s: Z = row.iter().zip(&m).map(|(a, b)| a * &b[0]).sum();
            assert!(s.is_zero());
        }
        let lat = IntegerLattice::from_rows(3, &k).unwrap();
        assert!(lat.contains_int(&[Z::from(1), Z::from(1), Z::from(-1)]).unwrap());
    }
}
