//! Dense univariate polynomials over Q.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{fmt_rational, parse_rational, Q, Z};

/// Coefficients are stored lowest degree first, with no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RationalPolynomial {
    coeffs: Vec<Q>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn x() -> Self {
        Self::monomial(Q::one(), 1)
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: Q, deg: usize) -> Self {
        let mut coeffs = vec![Q::zero(); deg + 1];
        coeffs[deg] = c;
        Self::new(coeffs)
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| Q::from_integer(x.into())).collect())
    }

    pub fn from_z(c: &[Z]) -> Self {
        Self::new(c.iter().cloned().map(Q::from_integer).collect())
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    /// Degree, with -1 for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.leading_coeff().recip())
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Q::from_integer((i as i64).into()))
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self(inner(X))`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * inner) + &Self::constant(c.clone()))
    }

    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        if divisor.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let dd = divisor.degree() as usize;
        let lc_inv = divisor.leading_coeff().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Q::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[i + j] -= &c * d;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Exact quotient, if `divisor` divides `self`.
    pub fn exact_div(&self, divisor: &Self) -> Result<Option<Self>> {
        let (q, r) = self.div_rem(divisor)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.leading_coeff().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() <= 0
    }

    /// Product of the distinct monic irreducible factors.
    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("nonzero").expect("gcd divides").monic()
    }

    /// Yun's algorithm: monic squarefree `a_i` with `self = lc * prod a_i^i`.
    /// Trivial factors are omitted.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree() <= 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let mut a = f.gcd(&df);
        let mut b = f.exact_div(&a).unwrap().unwrap();
        let mut c = df.exact_div(&a).unwrap().unwrap();
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while b.degree() > 0 {
            a = b.gcd(&d);
            b = b.exact_div(&a).unwrap().unwrap();
            c = d.exact_div(&a).unwrap().unwrap();
            d = &c - &b.derivative();
            if a.degree() > 0 {
                out.push((a.monic(), i));
            }
            i += 1;
        }
        out
    }

    /// Least positive `d` with `d * self` integral.
    pub fn denominator(&self) -> Z {
        self.coeffs.iter().fold(Z::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Integer coefficients of `d * self` where `d = self.denominator()`.
    pub fn integer_numerator(&self) -> (Vec<Z>, Z) {
        let d = self.denominator();
        let q = Q::from_integer(d.clone());
        (self.coeffs.iter().map(|c| (c * &q).to_integer()).collect(), d)
    }

    /// Primitive integer polynomial with positive leading coefficient that is
    /// a rational multiple of `self`.
    pub fn primitive_part(&self) -> Vec<Z> {
        let (mut z, _) = self.integer_numerator();
        let g = z.iter().fold(Z::zero(), |acc, x| acc.gcd(x));
        if !g.is_zero() {
            let g = if z.last().is_some_and(|x| x.is_negative()) { -g } else { g };
            z.iter_mut().for_each(|x| *x = &*x / &g);
        }
        z
    }

    /// Parse the sparse text form `c0 + c1*X + c2*X^2 ...` (any term order,
    /// rational coefficients `a/b`, optional parentheses around coefficients).
    pub fn parse(s: &str) -> Result<Self> {
        let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |m: &str| Error::MalformedInput(format!("bad polynomial {s:?}: {m}"));
        if src.is_empty() {
            return Err(bad("empty"));
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        let mut depth = 0;
        for (i, ch) in src.chars().enumerate() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            if (ch == '+' || ch == '-') && depth == 0 && !cur.ends_with('^') {
                if i > 0 && !cur.is_empty() {
                    terms.push((neg, std::mem::take(&mut cur)));
                } else if i > 0 {
                    return Err(bad("dangling sign"));
                }
                neg = ch == '-';
                continue;
            }
            cur.push(ch);
        }
        if cur.is_empty() {
            return Err(bad("dangling sign"));
        }
        terms.push((neg, cur));
        let mut out = Self::zero();
        for (neg, t) in terms {
            let (coef, power) = match t.find(['X', 'x']) {
                None => (parse_coef(&t).ok_or_else(|| bad(&t))?, 0usize),
                Some(pos) => {
                    let head = t[..pos].trim_end_matches('*');
                    let coef = if head.is_empty() { Q::one() } else { parse_coef(head).ok_or_else(|| bad(&t))? };
                    let tail = &t[pos + 1..];
                    let power = if tail.is_empty() {
                        1
                    } else if let Some(e) = tail.strip_prefix('^') {
                        e.parse::<usize>().map_err(|_| bad(&t))?
                    } else {
                        return Err(bad(&t));
                    };
                    (coef, power)
                }
            };
            let coef = if neg { -coef } else { coef };
            out = &out + &Self::monomial(coef, power);
        }
        Ok(out)
    }
}

fn parse_coef(s: &str) -> Option<Q> {
    let s = s.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(s);
    parse_rational(s).ok()
}

impl fmt::Display for RationalPolynomial {
    /// Highest degree first, e.g. `X^2 - 2*X - 4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{i}"),
            };
            if i == 0 {
                write!(f, "{}", fmt_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", fmt_rational(&a))?;
            }
        }
        Ok(())
    }
}

impl Add for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn add(self, rhs: Self) -> RationalPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn sub(self, rhs: Self) -> RationalPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn mul(self, rhs: Self) -> RationalPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RationalPolynomial::zero();
        }
        // multiply integer numerators, divide once per coefficient
        let (a, da) = self.integer_numerator();
        let (b, db) = rhs.integer_numerator();
        let mut acc = vec![Z::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    acc[i + j] += x * y;
                }
            }
        }
        let d = da * db;
        let out = acc.into_iter().map(|c| Q::new(c, d.clone())).collect();
        RationalPolynomial::new(out)
    }
}

impl Neg for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn neg(self) -> RationalPolynomial {
        RationalPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    fn p(c: &[i64]) -> RationalPolynomial {
        RationalPolynomial::from_ints(c)
    }

    #[test]
    fn zero_has_degree_minus_one() {
        assert_eq!(RationalPolynomial::zero().degree(), -1);
        assert_eq!(p(&[0, 0]).degree(), -1);
        assert_eq!(p(&[3]).degree(), 0);
    }

    #[test]
    fn arithmetic() {
        let a = p(&[-1, 1]);
        let b = p(&[1, 1]);
        assert_eq!(&a * &b, p(&[-1, 0, 1]));
        let (quo, rem) = p(&[-1, 0, 1]).div_rem(&a).unwrap();
        assert_eq!(quo, b);
        assert!(rem.is_zero());
        assert_eq!(p(&[0, 0, 1]).compose(&p(&[1, 1])), p(&[1, 2, 1]));
        assert_eq!(p(&[1, 1]).pow(3), p(&[1, 3, 3, 1]));
        assert_eq!(p(&[-4, -2, 1]).eval(&q(3)), q(-1));
        assert!(p(&[1]).div_rem(&RationalPolynomial::zero()).is_err());
    }

    #[test]
    fn gcds() {
        let f = p(&[-1, 0, 1]);
        let g = p(&[1, 2, 1]);
        assert_eq!(f.gcd(&g), p(&[1, 1]));
        let (d, s, t) = p(&[0, 1]).ext_gcd(&p(&[-1, 1]));
        assert_eq!(d, p(&[1]));
        assert_eq!(&(&s * &p(&[0, 1])) + &(&t * &p(&[-1, 1])), p(&[1]));
    }

    #[test]
    fn squarefree() {
        // (X-1)^2 (X+2)^3 X
        let f = &(&p(&[-1, 1]).pow(2) * &p(&[2, 1]).pow(3)) * &p(&[0, 1]);
        let dec = f.squarefree_decomposition();
        assert_eq!(dec, vec![(p(&[0, 1]), 1), (p(&[-1, 1]), 2), (p(&[2, 1]), 3)]);
        assert!(!f.is_squarefree());
        assert_eq!(f.squarefree_part(), &(&p(&[-1, 1]) * &p(&[2, 1])) * &p(&[0, 1]));
    }

    #[test]
    fn parse_and_display() {
        let f = RationalPolynomial::parse("X^2 - 2*X - 4").unwrap();
        assert_eq!(f, p(&[-4, -2, 1]));
        assert_eq!(f.to_string(), "X^2 - 2*X - 4");
        let g = RationalPolynomial::parse("1/2*X").unwrap();
        assert_eq!(g.coeffs(), &[q(0), qf(1, 2)]);
        let h = RationalPolynomial::parse("-1/2 + (1/4)*x^3 + X").unwrap();
        assert_eq!(h.coeffs(), &[qf(-1, 2), q(1), q(0), qf(1, 4)]);
        assert_eq!(RationalPolynomial::parse(&h.to_string()).unwrap(), h);
        assert_eq!(RationalPolynomial::parse("0").unwrap(), RationalPolynomial::zero());
        assert!(RationalPolynomial::parse("X^").is_err());
        assert!(RationalPolynomial::parse("2 +").is_err());
        assert!(RationalPolynomial::parse("").is_err());
    }

    #[test]
    fn primitive_part_sign() {
        let f = RationalPolynomial::new(vec![qf(1, 2), qf(-3, 2)]);
        assert_eq!(f.primitive_part(), vec![Z::from(-1), Z::from(3)]);
        assert_eq!(f.denominator(), Z::from(2));
    }
}
