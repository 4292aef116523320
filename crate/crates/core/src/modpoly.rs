//! Polynomials over a prime field F_p (p < 2^63) and their factorization
//! by Berlekamp's algorithm.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{invmod, kernel_mod_p, mulmod};
use crate::rational::{mod_floor, Z};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModPoly {
    p: u64,
    c: Vec<u64>,
}

impl ModPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        c.iter_mut().for_each(|x| *x %= p);
        while c.last() == Some(&0) {
            c.pop();
        }
        Self { p, c }
    }

    pub fn from_z(p: u64, coeffs: &[Z]) -> Self {
        let pz = Z::from(p);
        let c = coeffs
            .iter()
            .map(|x| u64::try_from(mod_floor(x, &pz)).expect("residue fits"))
            .collect();
        Self::new(p, c)
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn degree(&self) -> isize {
        self.c.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn lc(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = invmod(self.lc(), self.p);
        Self::new(self.p, self.c.iter().map(|&x| mulmod(x, inv, self.p)).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        Self::new(p, (0..n).map(|i| (self.get(i) + o.get(i)) % p).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        Self::new(p, (0..n).map(|i| (self.get(i) + p - o.get(i)) % p).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::new(self.p, vec![]);
        }
        let p = self.p;
        let mut out = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                out[i + j] = (out[i + j] + mulmod(a, b, p)) % p;
            }
        }
        Self::new(p, out)
    }

    pub fn scale(&self, k: u64) -> Self {
        Self::new(self.p, self.c.iter().map(|&x| mulmod(x, k, self.p)).collect())
    }

    fn get(&self, i: usize) -> u64 {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        let dd = d.c.len() - 1;
        let inv = invmod(d.lc(), p);
        let mut rem = self.c.clone();
        if rem.len() <= dd {
            return (Self::new(p, vec![]), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = mulmod(rem[i + dd], inv, p);
            if c == 0 {
                continue;
            }
            for (j, &b) in d.c.iter().enumerate() {
                rem[i + j] = (rem[i + j] + p - mulmod(c, b, p)) % p;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(p, quot), Self::new(p, rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*o = g` monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::new(p, vec![]));
        let (mut t0, mut t1) = (Self::new(p, vec![]), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = invmod(r0.lc(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        Self::new(
            p,
            self.c.iter().enumerate().skip(1).map(|(i, &x)| mulmod(x, i as u64 % p, p)).collect(),
        )
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::one(self.p).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// For `self = g(X^p)`, returns `g` (coefficients are fixed by Frobenius).
    fn pth_root(&self) -> Self {
        let p = self.p as usize;
        Self::new(self.p, self.c.iter().step_by(p).copied().collect())
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == 0
    }
}

/// Squarefree decomposition of a monic polynomial over F_p.
pub fn squarefree_decomposition(f: &ModPoly) -> Vec<(ModPoly, usize)> {
    let mut out = Vec::new();
    sqf_rec(&f.monic(), 1, &mut out);
    out.sort_by_key(|(_, m)| *m);
    out
}

fn sqf_rec(f: &ModPoly, mult: usize, out: &mut Vec<(ModPoly, usize)>) {
    if f.degree() <= 0 {
        return;
    }
    let p = f.modulus() as usize;
    let df = f.derivative();
    let mut c = f.gcd(&df);
    let mut w = f.div_rem(&c).0;
    let mut i = 1;
    while w.degree() > 0 {
        let y = w.gcd(&c);
        let z = w.div_rem(&y).0;
        if z.degree() > 0 {
            push_factor(out, z, i * mult);
        }
        i += 1;
        w = y;
        c = c.div_rem(&w).0;
    }
    if c.degree() > 0 {
        sqf_rec(&c.pth_root(), mult * p, out);
    }
}

fn push_factor(out: &mut Vec<(ModPoly, usize)>, f: ModPoly, m: usize) {
    if let Some(e) = out.iter_mut().find(|(_, k)| *k == m) {
        e.0 = e.0.mul(&f);
    } else {
        out.push((f, m));
    }
}

/// Monic irreducible factors of a monic squarefree polynomial.
pub fn berlekamp(f: &ModPoly) -> Vec<ModPoly> {
    let p = f.modulus();
    let n = f.degree();
    if n <= 1 {
        return vec![f.monic()];
    }
    let n = n as usize;
    let xp = ModPoly::x(p).pow_mod(p, f);
    let mut rows = Vec::with_capacity(n);
    let mut cur = ModPoly::one(p);
    for _ in 0..n {
        let mut r: Vec<u64> = (0..n).map(|j| cur.get(j)).collect();
        rows.push(std::mem::take(&mut r));
        cur = cur.mul(&xp).rem(f);
    }
    // v (Q - I) = 0  <=>  (Q - I)^T v = 0
    let qt: Vec<Vec<u64>> = (0..n)
        .map(|j| (0..n).map(|i| (rows[i][j] + if i == j { p - 1 } else { 0 }) % p).collect())
        .collect();
    let basis: Vec<ModPoly> = kernel_mod_p(&qt, n, p).into_iter().map(|v| ModPoly::new(p, v)).collect();
    let r = basis.len();
    let mut factors = vec![f.monic()];
    if r == 1 {
        return factors;
    }
    if p <= 64 {
        for v in basis.iter().filter(|v| v.degree() > 0) {
            let mut next = Vec::new();
            for h in factors {
                let mut pending = vec![h];
                for s in 0..p {
                    let shifted = v.sub(&ModPoly::new(p, vec![s]));
                    let mut keep = Vec::new();
                    for h in pending {
                        let g = h.gcd(&shifted);
                        if g.degree() > 0 && g.degree() < h.degree() {
                            keep.push(h.div_rem(&g).0.monic());
                            keep.push(g);
                        } else {
                            keep.push(h);
                        }
                    }
                    pending = keep;
                }
                next.extend(pending);
            }
            factors = next;
            if factors.len() == r {
                break;
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        while factors.len() < r {
            let mut v = ModPoly::new(p, vec![]);
            for b in &basis {
                v = v.add(&b.scale(rng.gen_range(0..p)));
            }
            let mut next = Vec::new();
            for h in factors {
                if h.degree() <= 1 {
                    next.push(h);
                    continue;
                }
                let w = v.pow_mod((p - 1) / 2, &h).sub(&ModPoly::one(p));
                let g = h.gcd(&w);
                if g.degree() > 0 && g.degree() < h.degree() {
                    next.push(h.div_rem(&g).0.monic());
                    next.push(g);
                } else {
                    next.push(h);
                }
            }
            factors = next;
        }
    }
    factors.sort();
    factors
}

/// Complete factorization over F_p: leading coefficient and monic
/// irreducible factors with multiplicities, sorted.
pub fn factor_mod_p(f: &ModPoly) -> (u64, Vec<(ModPoly, usize)>) {
    let mut out = Vec::new();
    for (g, m) in squarefree_decomposition(f) {
        for h in berlekamp(&g) {
            out.push((h, m));
        }
    }
    out.sort();
    (f.lc(), out)
}
