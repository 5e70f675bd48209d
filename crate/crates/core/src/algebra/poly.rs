//! Dense univariate polynomials over a [`Field`].

use super::field::{Fe, Field};
use crate::error::{Error, Result};

/// Degree of a polynomial; the zero polynomial has degree `MinusInfinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    MinusInfinity,
    Finite(usize),
}

/// Coefficients lowest degree first, never with a trailing zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct UniPoly {
    c: Vec<Fe>,
}

/// Result of a targeted power computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Targeted {
    Values(Vec<Fe>),
    /// The target at this position was nonzero; later targets were skipped.
    Aborted(usize),
}

impl Targeted {
    pub fn all_zero(&self) -> bool {
        match self {
            Targeted::Values(v) => v.iter().all(Fe::is_zero),
            Targeted::Aborted(_) => false,
        }
    }
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { c: Vec::new() }
    }
    pub fn constant(a: Fe) -> Self {
        Self::from_coeffs(vec![a])
    }
    pub fn one(k: &Field) -> Self {
        Self::constant(k.one())
    }
    /// `x - a`.
    pub fn linear(k: &Field, a: Fe) -> Self {
        Self::from_coeffs(vec![k.neg(a), k.one()])
    }
    pub fn x(k: &Field) -> Self {
        Self::from_coeffs(vec![k.zero(), k.one()])
    }
    pub fn from_coeffs(mut c: Vec<Fe>) -> Self {
        while c.last().is_some_and(Fe::is_zero) {
            c.pop();
        }
        UniPoly { c }
    }
    pub fn from_u64s(k: &Field, cs: &[u64]) -> Self {
        Self::from_coeffs(cs.iter().map(|&a| k.from_u64(a)).collect())
    }
    pub fn from_i64s(k: &Field, cs: &[i64]) -> Self {
        Self::from_coeffs(cs.iter().map(|&a| k.from_i64(a)).collect())
    }
    /// Product of `(x - r)` over the given roots.
    pub fn from_roots(k: &Field, roots: &[Fe]) -> Self {
        roots.iter().fold(Self::one(k), |acc, &r| acc.mul(&Self::linear(k, r), k))
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.c
    }
    pub fn into_coeffs(self) -> Vec<Fe> {
        self.c
    }
    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Fe {
        self.c.get(i).copied().unwrap_or(Fe::ZERO)
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn degree(&self) -> Degree {
        match self.c.len() {
            0 => Degree::MinusInfinity,
            n => Degree::Finite(n - 1),
        }
    }
    /// Degree as an option (`None` for the zero polynomial).
    pub fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }
    pub fn lead(&self) -> Fe {
        self.c.last().copied().unwrap_or(Fe::ZERO)
    }
    pub fn is_monic(&self, k: &Field) -> bool {
        self.lead() == k.one()
    }

    pub fn eval(&self, x: Fe, k: &Field) -> Fe {
        self.c.iter().rev().fold(Fe::ZERO, |acc, &a| k.add(k.mul(acc, x), a))
    }

    pub fn add(&self, o: &Self, k: &Field) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::from_coeffs((0..n).map(|i| k.add(self.coeff(i), o.coeff(i))).collect())
    }
    pub fn sub(&self, o: &Self, k: &Field) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::from_coeffs((0..n).map(|i| k.sub(self.coeff(i), o.coeff(i))).collect())
    }
    pub fn neg(&self, k: &Field) -> Self {
        UniPoly { c: self.c.iter().map(|&a| k.neg(a)).collect() }
    }
    pub fn scale(&self, s: Fe, k: &Field) -> Self {
        Self::from_coeffs(self.c.iter().map(|&a| k.mul(a, s)).collect())
    }
    /// Multiply by `x^n`.
    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![Fe::ZERO; n];
        c.extend_from_slice(&self.c);
        UniPoly { c }
    }

    pub fn mul(&self, o: &Self, k: &Field) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(mul_trunc(&self.c, &o.c, self.c.len() + o.c.len() - 1, k))
    }
    pub fn sqr(&self, k: &Field) -> Self {
        self.mul(self, k)
    }

    /// `self^m` by binary powering.
    pub fn pow(&self, mut m: u64, k: &Field) -> Self {
        let mut r = Self::one(k);
        let mut b = self.clone();
        while m > 0 {
            if m & 1 == 1 {
                r = r.mul(&b, k);
            }
            m >>= 1;
            if m > 0 {
                b = b.sqr(k);
            }
        }
        r
    }

    /// Coefficients of `x^0 .. x^{n-1}` of `self^m`.
    pub fn pow_trunc(&self, m: u64, n: usize, k: &Field) -> Vec<Fe> {
        let mut r = vec![k.one()];
        let mut b: Vec<Fe> = self.c.iter().take(n).copied().collect();
        let mut m = m;
        while m > 0 {
            if m & 1 == 1 {
                r = mul_trunc(&r, &b, n, k);
            }
            m >>= 1;
            if m > 0 {
                b = mul_trunc(&b, &b, n, k);
            }
        }
        r.resize(n, Fe::ZERO);
        r
    }

    /// The requested coefficients of `self^m`. `targets` must be ascending.
    /// With `early_abort` the lowest target is evaluated first (from a short
    /// truncation) and the computation stops if it is nonzero.
    pub fn targeted_power_coeffs(&self, m: u64, targets: &[usize], early_abort: bool, k: &Field) -> Result<Targeted> {
        if targets.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Argument("targets must be ascending".into()));
        }
        let Some(&last) = targets.last() else {
            return Ok(Targeted::Values(Vec::new()));
        };
        if early_abort {
            let first = targets[0];
            let low = self.pow_trunc(m, first + 1, k);
            if !low[first].is_zero() {
                return Ok(Targeted::Aborted(0));
            }
            if first == last {
                return Ok(Targeted::Values(vec![Fe::ZERO; targets.len()]));
            }
        }
        let full = self.pow_trunc(m, last + 1, k);
        let vals: Vec<Fe> = targets.iter().map(|&t| full[t]).collect();
        if early_abort {
            if let Some(i) = vals.iter().position(|v| !v.is_zero()) {
                return Ok(Targeted::Aborted(i));
            }
        }
        Ok(Targeted::Values(vals))
    }

    pub fn derivative(&self, k: &Field) -> Self {
        Self::from_coeffs(
            self.c.iter().enumerate().skip(1).map(|(i, &a)| k.scale(a, i as u64 % k.p())).collect(),
        )
    }

    pub fn monic(&self, k: &Field) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let li = k.inv(self.lead()).expect("nonzero lead");
        self.scale(li, k)
    }

    /// Euclidean division; errors on a zero divisor.
    pub fn divrem(&self, d: &Self, k: &Field) -> Result<(Self, Self)> {
        let dd = d.deg().ok_or(Error::Division)?;
        let li = k.inv(d.lead())?;
        let mut r = self.c.clone();
        if r.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut q = vec![Fe::ZERO; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = k.mul(r[i], li);
            if c.is_zero() {
                continue;
            }
            q[i - dd] = c;
            for j in 0..=dd {
                r[i - dd + j] = k.sub(r[i - dd + j], k.mul(c, d.c[j]));
            }
        }
        r.truncate(dd);
        Ok((Self::from_coeffs(q), Self::from_coeffs(r)))
    }
    pub fn rem(&self, d: &Self, k: &Field) -> Result<Self> {
        Ok(self.divrem(d, k)?.1)
    }
    /// Exact division; errors when the remainder is nonzero.
    pub fn div_exact(&self, d: &Self, k: &Field) -> Result<Self> {
        let (q, r) = self.divrem(d, k)?;
        if !r.is_zero() {
            return Err(Error::Internal("inexact polynomial division".into()));
        }
        Ok(q)
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, o: &Self, k: &Field) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b, k).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic(k)
    }

    pub fn is_separable(&self, k: &Field) -> bool {
        match self.deg() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative(k), k).deg() == Some(0),
        }
    }

    pub fn mulmod(&self, o: &Self, m: &Self, k: &Field) -> Self {
        self.mul(o, k).rem(m, k).expect("nonzero modulus")
    }

    /// `self^e mod m`.
    pub fn powmod(&self, mut e: u128, m: &Self, k: &Field) -> Self {
        let mut r = Self::one(k).rem(m, k).expect("nonzero modulus");
        let mut b = self.rem(m, k).expect("nonzero modulus");
        while e > 0 {
            if e & 1 == 1 {
                r = r.mulmod(&b, m, k);
            }
            e >>= 1;
            if e > 0 {
                b = b.mulmod(&b, m, k);
            }
        }
        r
    }

    /// Apply the field Frobenius to every coefficient.
    pub fn frobenius_coeffs(&self, k: &Field) -> Self {
        UniPoly { c: self.c.iter().map(|&a| k.frobenius(a)).collect() }
    }

    /// Map coefficients through a function (e.g. an embedding).
    pub fn map(&self, f: impl Fn(Fe) -> Fe) -> Self {
        Self::from_coeffs(self.c.iter().map(|&a| f(a)).collect())
    }

    /// `x^n * self(1/x)` for `n >= deg`.
    pub fn reverse(&self, n: usize) -> Self {
        let mut c = vec![Fe::ZERO; n + 1];
        for (i, &a) in self.c.iter().enumerate() {
            c[n - i] = a;
        }
        Self::from_coeffs(c)
    }

    /// `self(a x + b)`.
    pub fn compose_affine(&self, a: Fe, b: Fe, k: &Field) -> Self {
        let lin = Self::from_coeffs(vec![b, a]);
        self.c.iter().rev().fold(Self::zero(), |acc, &c| acc.mul(&lin, k).add(&Self::constant(c), k))
    }

    pub fn to_strings(&self, k: &Field) -> Vec<String> {
        self.c.iter().map(|&a| k.format(a)).collect()
    }
}

/// Product truncated to `n` coefficients. Accumulates in `u64` for the
/// prime field when the term count keeps the sum below `2^64`.
pub(crate) fn mul_trunc(a: &[Fe], b: &[Fe], n: usize, k: &Field) -> Vec<Fe> {
    let len = (a.len() + b.len()).saturating_sub(1).min(n);
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if k.degree() == 1 && a.len().min(b.len()) < (1 << 23) {
        let md = k.modp();
        let mut acc = vec![0u64; len];
        for (i, x) in a.iter().enumerate().take(len) {
            let xv = x.c0();
            if xv == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(len - i) {
                acc[i + j] += xv * y.c0();
            }
        }
        return acc.into_iter().map(|v| k.from_u64(md.reduce(v))).collect();
    }
    let mut out = vec![Fe::ZERO; len];
    for (i, &x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(len - i) {
            out[i + j] = k.add(out[i + j], k.mul(x, y));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    #[test]
    fn small_products() {
        let k = f5();
        let f = UniPoly::from_i64s(&k, &[1, 1]);
        assert_eq!(f.pow(2, &k), UniPoly::from_i64s(&k, &[1, 2, 1]));
        let g = UniPoly::from_i64s(&k, &[0, -1, 0, 0, 0, 1]);
        let mut want = vec![0i64; 11];
        want[10] = 1;
        want[6] = 3;
        want[2] = 1;
        assert_eq!(g.pow(2, &k), UniPoly::from_i64s(&k, &want));
        assert_eq!(UniPoly::zero().degree(), Degree::MinusInfinity);
    }

    #[test]
    fn targeted_examples() {
        let k = f5();
        for b in 0..5 {
            // (x - b)(x^3 + 1)
            let f = UniPoly::from_i64s(&k, &[-b, 1, 0, -b, 1]);
            let t = f.targeted_power_coeffs(2, &[4], false, &k).unwrap();
            assert_eq!(t, Targeted::Values(vec![k.from_i64(b)]));
        }
        let g = UniPoly::from_i64s(&k, &[0, -1, 0, 0, 0, 1]);
        let t = g.targeted_power_coeffs(2, &[3, 4, 8, 9], true, &k).unwrap();
        assert!(t.all_zero());
        assert!(g.targeted_power_coeffs(2, &[4, 3], false, &k).is_err());
        // beyond the degree is zero, not an error
        let t = g.targeted_power_coeffs(2, &[40], false, &k).unwrap();
        assert!(t.all_zero());
    }

    #[test]
    fn gcd_and_separability() {
        let k = Field::prime(7).unwrap();
        let a = UniPoly::from_i64s(&k, &[-1, 0, 1]);
        let b = UniPoly::from_i64s(&k, &[-1, 1]);
        assert_eq!(a.gcd(&b, &k), b);
        let k5 = f5();
        assert!(UniPoly::from_i64s(&k5, &[0, -1, 0, 0, 0, 1]).is_separable(&k5));
        let sq = UniPoly::from_roots(&k, &[k.one(), k.one(), k.from_i64(-1)]);
        assert!(!sq.is_separable(&k));
    }

    #[test]
    fn degree_additivity_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let k = Field::new(11, 2).unwrap();
        for _ in 0..50 {
            let d = rng.gen_range(1..7);
            let mut c: Vec<Fe> = (0..d).map(|_| k.random(&mut rng)).collect();
            c.push(k.random_nonzero(&mut rng));
            let f = UniPoly::from_coeffs(c);
            let m = rng.gen_range(0..=8u64);
            assert_eq!(f.pow(m, &k).deg(), Some(m as usize * d));
        }
    }

    #[test]
    fn targeted_matches_full_exhaustive_small() {
        // every f of degree <= 3 over F_5 (the larger exhaustive sweep lives in tests/)
        let k = f5();
        for idx in 0..625u64 {
            let cs: Vec<u64> = (0..4).map(|i| (idx / 5u64.pow(i)) % 5).collect();
            let f = UniPoly::from_u64s(&k, &cs);
            let full = f.pow(2, &k);
            let targets = [1usize, 3, 4, 6];
            let want: Vec<Fe> = targets.iter().map(|&t| full.coeff(t)).collect();
            assert_eq!(f.targeted_power_coeffs(2, &targets, false, &k).unwrap(), Targeted::Values(want.clone()));
            let ea = f.targeted_power_coeffs(2, &targets, true, &k).unwrap();
            assert_eq!(ea.all_zero(), want.iter().all(Fe::is_zero));
        }
    }

    #[test]
    fn divrem_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let k = Field::new(7, 3).unwrap();
        for _ in 0..100 {
            let a = UniPoly::from_coeffs((0..9).map(|_| k.random(&mut rng)).collect());
            let mut dc: Vec<Fe> = (0..3).map(|_| k.random(&mut rng)).collect();
            dc.push(k.random_nonzero(&mut rng));
            let d = UniPoly::from_coeffs(dc);
            let (q, r) = a.divrem(&d, &k).unwrap();
            assert_eq!(q.mul(&d, &k).add(&r, &k), a);
            assert!(r.deg().map_or(true, |x| x < 3));
        }
    }
}
