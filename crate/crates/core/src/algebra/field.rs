//! Finite fields `F_{p^k}` as quotients `F_p[t] / (m(t))` with `k <= 12`.
//!
//! Elements are plain `Copy` values ([`Fe`]); every operation goes through a
//! [`Field`] context that owns the modulus and the precomputed Frobenius
//! table. A `Field` never changes after construction, so a shared reference
//! can be handed to any number of worker threads.

use std::fmt;

use rand::Rng;

use super::prime::{is_prime, prime_factors, Modulus, MAX_PRIME};
use crate::error::{Error, Result};

/// Largest supported extension degree over the prime field.
pub const MAX_EXT: usize = 12;

/// A field element: coefficients of `1, t, ..., t^{k-1}` in `[0, p)`.
/// Entries beyond the degree of the owning field are zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fe(pub(crate) [u32; MAX_EXT]);

impl Fe {
    pub const ZERO: Fe = Fe([0; MAX_EXT]);

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Constant term (the whole value for prime-field elements).
    #[inline]
    pub fn c0(&self) -> u64 {
        u64::from(self.0[0])
    }

    pub fn coeff(&self, i: usize) -> u64 {
        u64::from(self.0[i])
    }

    /// True when the element lies in the prime subfield.
    pub fn is_prime_subfield(&self) -> bool {
        self.0[1..].iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.0.iter().rposition(|&c| c != 0).unwrap_or(0);
        if last == 0 {
            write!(f, "{}", self.0[0])
        } else {
            write!(f, "{:?}", &self.0[..=last])
        }
    }
}

/// Context for `F_{p^k}`.
#[derive(Clone, Debug)]
pub struct Field {
    p: u64,
    k: usize,
    md: Modulus,
    /// Monic modulus, lowest degree first, length `k + 1`.
    modulus: Vec<u64>,
    /// `t^k = sum c_j t^j` for the listed nonzero `(j, c_j)`.
    tail: Vec<(usize, u64)>,
    /// Least non-square of the prime field.
    eps: u64,
    /// Least primitive element (only computed for `k <= 2`).
    zeta: Option<Fe>,
    /// `frob[i] = (t^i)^p`.
    frob: Vec<Fe>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}
impl Eq for Field {}

impl Field {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Field> {
        Field::new(p, 1)
    }

    /// `F_{p^k}` for an odd prime `p < 2^20` and `1 <= k <= 12`.
    ///
    /// For `k = 2` the modulus is `t^2 - eps` with `eps` the least
    /// non-square; otherwise it is the first irreducible binomial
    /// `t^k - c`, trinomial `t^k + t + c`, or (failing both) the
    /// lexicographically least irreducible polynomial.
    pub fn new(p: u64, k: usize) -> Result<Field> {
        if !is_prime(p) || p == 2 || p >= MAX_PRIME {
            return Err(Error::Argument(format!("{p} is not an odd prime below 2^20")));
        }
        if k == 0 || k > MAX_EXT {
            return Err(Error::Argument(format!("extension degree {k} outside 1..=12")));
        }
        let md = Modulus::new(p);
        let eps = md.least_non_square();
        let modulus = match k {
            1 => vec![0, 1],
            2 => vec![p - eps, 0, 1],
            _ => find_irreducible(&md, k)
                .ok_or_else(|| Error::Internal(format!("no irreducible of degree {k} over F_{p}")))?,
        };
        let tail = (0..k)
            .filter(|&j| modulus[j] != 0)
            .map(|j| (j, md.neg(modulus[j])))
            .collect();
        let mut field = Field { p, k, md, modulus, tail, eps, zeta: None, frob: Vec::new() };
        field.frob = (0..k)
            .map(|i| {
                let ti = field.monomial(i);
                field.pow(ti, u128::from(p))
            })
            .collect();
        if k <= 2 {
            field.zeta = Some(field.find_primitive());
        }
        debug_assert!(field.md.pow(eps, (p - 1) / 2) == p - 1);
        Ok(field)
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }
    #[inline]
    pub fn degree(&self) -> usize {
        self.k
    }
    #[inline]
    pub fn modp(&self) -> &Modulus {
        &self.md
    }
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
    /// Field order `p^k`, when it fits in a `u128`.
    pub fn order(&self) -> Option<u128> {
        let mut q: u128 = 1;
        for _ in 0..self.k {
            q = q.checked_mul(u128::from(self.p))?;
        }
        Some(q)
    }
    /// Field order as `u64` (panics if it does not fit; fine for `F_p`, `F_{p^2}`).
    pub fn q(&self) -> u64 {
        u64::try_from(self.order().expect("order fits")).expect("order fits in u64")
    }
    /// Least non-square of the prime subfield.
    pub fn eps_prime(&self) -> u64 {
        self.eps
    }
    pub fn eps(&self) -> Fe {
        self.from_u64(self.eps)
    }
    /// Least primitive element, available for `k <= 2`.
    pub fn zeta(&self) -> Option<Fe> {
        self.zeta
    }

    // ----- construction of elements -----

    #[inline]
    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }
    #[inline]
    pub fn one(&self) -> Fe {
        self.from_u64(1)
    }
    #[inline]
    pub fn from_u64(&self, a: u64) -> Fe {
        let mut c = [0u32; MAX_EXT];
        c[0] = self.md.reduce(a) as u32;
        Fe(c)
    }
    pub fn from_i64(&self, a: i64) -> Fe {
        self.from_u64(self.md.from_i64(a))
    }
    /// Element with the given coefficients on `1, t, t^2, ...`.
    pub fn from_coeffs(&self, cs: &[u64]) -> Fe {
        assert!(cs.len() <= self.k, "too many coefficients");
        let mut c = [0u32; MAX_EXT];
        for (dst, &src) in c.iter_mut().zip(cs) {
            *dst = self.md.reduce(src) as u32;
        }
        Fe(c)
    }
    /// `t^i` reduced.
    pub fn monomial(&self, i: usize) -> Fe {
        if i < self.k {
            let mut c = [0u32; MAX_EXT];
            c[i] = 1;
            return Fe(c);
        }
        let t = self.monomial(1.min(self.k - 1));
        if self.k == 1 {
            return self.one();
        }
        self.pow(t, i as u128)
    }
    /// The class of `t`; for the prime field the modulus is `t` itself, so 0.
    pub fn gen(&self) -> Fe {
        if self.k == 1 {
            Fe::ZERO
        } else {
            self.monomial(1)
        }
    }
    pub fn coeffs(&self, a: Fe) -> Vec<u64> {
        (0..self.k).map(|i| a.coeff(i)).collect()
    }

    /// Enumerate all field elements in canonical (lexicographic) order.
    /// Only sensible for small fields.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        let q = self.q();
        // coefficient 0 is the most significant digit of the index
        (0..q).map(move |idx| self.element(idx))
    }
    /// The element at position `idx` of [`Field::elements`].
    pub fn element(&self, mut idx: u64) -> Fe {
        let mut c = [0u32; MAX_EXT];
        for i in (0..self.k).rev() {
            c[i] = (idx % self.p) as u32;
            idx /= self.p;
        }
        Fe(c)
    }
    /// Least non-square of this field in the canonical element order
    /// (equals the prime-field `eps` when `k` is odd).
    pub fn non_square(&self) -> Fe {
        if self.k % 2 == 1 {
            return self.eps();
        }
        self.elements().find(|&x| !self.is_square(x)).expect("odd characteristic has non-squares")
    }
    /// Position of an element in [`Field::elements`].
    pub fn index_of(&self, a: Fe) -> u64 {
        (0..self.k).fold(0u64, |acc, i| acc * self.p + a.coeff(i))
    }
    pub fn nonzero_elements(&self) -> impl Iterator<Item = Fe> + '_ {
        self.elements().filter(|x| !x.is_zero())
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        let mut c = [0u32; MAX_EXT];
        for ci in c.iter_mut().take(self.k) {
            *ci = rng.gen_range(0..self.p) as u32;
        }
        Fe(c)
    }
    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        loop {
            let x = self.random(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }

    // ----- arithmetic -----

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let mut c = [0u32; MAX_EXT];
        for i in 0..self.k {
            c[i] = self.md.add(u64::from(a.0[i]), u64::from(b.0[i])) as u32;
        }
        Fe(c)
    }
    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        let mut c = [0u32; MAX_EXT];
        for i in 0..self.k {
            c[i] = self.md.sub(u64::from(a.0[i]), u64::from(b.0[i])) as u32;
        }
        Fe(c)
    }
    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        let mut c = [0u32; MAX_EXT];
        for i in 0..self.k {
            c[i] = self.md.neg(u64::from(a.0[i])) as u32;
        }
        Fe(c)
    }
    /// Multiply by a prime-field scalar.
    #[inline]
    pub fn scale(&self, a: Fe, s: u64) -> Fe {
        let mut c = [0u32; MAX_EXT];
        for i in 0..self.k {
            c[i] = self.md.mul(u64::from(a.0[i]), s) as u32;
        }
        Fe(c)
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        let md = &self.md;
        match self.k {
            1 => {
                let mut c = [0u32; MAX_EXT];
                c[0] = md.mul(u64::from(a.0[0]), u64::from(b.0[0])) as u32;
                Fe(c)
            }
            2 => {
                let (a0, a1) = (u64::from(a.0[0]), u64::from(a.0[1]));
                let (b0, b1) = (u64::from(b.0[0]), u64::from(b.0[1]));
                let hi = md.reduce(a1 * b1);
                let mut c = [0u32; MAX_EXT];
                c[0] = md.reduce(a0 * b0 + hi * self.eps) as u32;
                c[1] = md.reduce(a0 * b1 + a1 * b0) as u32;
                Fe(c)
            }
            k => {
                let mut acc = [0u64; 2 * MAX_EXT - 1];
                for i in 0..k {
                    let ai = u64::from(a.0[i]);
                    if ai == 0 {
                        continue;
                    }
                    for j in 0..k {
                        acc[i + j] += ai * u64::from(b.0[j]);
                    }
                }
                self.reduce_wide(&mut acc)
            }
        }
    }

    fn reduce_wide(&self, acc: &mut [u64; 2 * MAX_EXT - 1]) -> Fe {
        let k = self.k;
        for v in acc.iter_mut().take(2 * k - 1) {
            *v = self.md.reduce(*v);
        }
        for i in (k..2 * k - 1).rev() {
            let c = acc[i];
            if c == 0 {
                continue;
            }
            for &(j, m) in &self.tail {
                let idx = i - k + j;
                acc[idx] = self.md.reduce(acc[idx] + c * m);
            }
        }
        let mut out = [0u32; MAX_EXT];
        for i in 0..k {
            out[i] = acc[i] as u32;
        }
        Fe(out)
    }

    #[inline]
    pub fn sqr(&self, a: Fe) -> Fe {
        self.mul(a, a)
    }

    pub fn pow(&self, mut a: Fe, mut e: u128) -> Fe {
        let mut r = self.one();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// `a^p`, computed linearly from the Frobenius table.
    pub fn frobenius(&self, a: Fe) -> Fe {
        if self.k == 1 {
            return a;
        }
        let mut acc = [0u64; MAX_EXT];
        for i in 0..self.k {
            let ai = u64::from(a.0[i]);
            if ai == 0 {
                continue;
            }
            for (j, slot) in acc.iter_mut().enumerate().take(self.k) {
                *slot = self.md.reduce(*slot + ai * u64::from(self.frob[i].0[j]));
            }
        }
        let mut out = [0u32; MAX_EXT];
        for i in 0..self.k {
            out[i] = acc[i] as u32;
        }
        Fe(out)
    }

    /// `a^{p^n}`.
    pub fn frobenius_n(&self, mut a: Fe, n: usize) -> Fe {
        for _ in 0..(n % self.k) {
            a = self.frobenius(a);
        }
        a
    }

    /// True when `a` lies in the subfield `F_{p^d}` (requires `d | k`).
    pub fn in_subfield(&self, a: Fe, d: usize) -> bool {
        self.frobenius_n(a, d) == a
    }

    /// Norm down to `F_p`.
    pub fn norm(&self, a: Fe) -> u64 {
        let mut acc = a;
        let mut conj = a;
        for _ in 1..self.k {
            conj = self.frobenius(conj);
            acc = self.mul(acc, conj);
        }
        debug_assert!(acc.is_prime_subfield());
        acc.c0()
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            return Err(Error::Division);
        }
        match self.k {
            1 => Ok(self.from_u64(self.md.inv(a.c0()).unwrap())),
            2 => {
                let (a0, a1) = (a.c0(), a.coeff(1));
                let n = self.md.sub(self.md.mul(a0, a0), self.md.mul(self.eps, self.md.mul(a1, a1)));
                let ni = self.md.inv(n).ok_or(Error::Division)?;
                Ok(self.from_coeffs(&[self.md.mul(a0, ni), self.md.mul(self.md.neg(a1), ni)]))
            }
            _ => {
                // a^{-1} = conj-product / norm
                let mut prod = self.one();
                let mut conj = a;
                for _ in 1..self.k {
                    conj = self.frobenius(conj);
                    prod = self.mul(prod, conj);
                }
                let n = self.mul(prod, a).c0();
                let ni = self.md.inv(n).ok_or(Error::Division)?;
                Ok(self.scale(prod, ni))
            }
        }
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn is_square(&self, a: Fe) -> bool {
        if a.is_zero() {
            return true;
        }
        self.md.is_square(self.norm(a))
    }

    /// A square root, or `None` when `a` is not a square.
    pub fn sqrt(&self, a: Fe) -> Option<Fe> {
        if a.is_zero() {
            return Some(a);
        }
        if !self.is_square(a) {
            return None;
        }
        let md = &self.md;
        match self.k {
            1 => md.sqrt(a.c0()).map(|r| self.from_u64(r)),
            2 => {
                let (a0, a1) = (a.c0(), a.coeff(1));
                if a1 == 0 {
                    if let Some(r) = md.sqrt(a0) {
                        return Some(self.from_u64(r));
                    }
                    // a0 = eps * s^2  =>  sqrt = s t
                    let s = md.sqrt(md.mul(a0, md.inv(self.eps).unwrap()))?;
                    return Some(self.from_coeffs(&[0, s]));
                }
                let n = md.sub(md.mul(a0, a0), md.mul(self.eps, md.mul(a1, a1)));
                let rn = md.sqrt(n)?;
                let half = md.inv(2).unwrap();
                for cand in [md.add(a0, rn), md.sub(a0, rn)] {
                    let x0sq = md.mul(cand, half);
                    if let Some(x0) = md.sqrt(x0sq) {
                        if x0 == 0 {
                            continue;
                        }
                        let x1 = md.mul(a1, md.inv(md.mul(2, x0)).unwrap());
                        let r = self.from_coeffs(&[x0, x1]);
                        if self.sqr(r) == a {
                            return Some(r);
                        }
                    }
                }
                None
            }
            _ => {
                let poly = super::poly::UniPoly::from_coeffs(vec![self.neg(a), self.zero(), self.one()]);
                super::factor::roots(self, &poly).into_iter().next()
            }
        }
    }

    fn find_primitive(&self) -> Fe {
        let n = self.order().unwrap() - 1;
        let fs = prime_factors(n);
        self.elements()
            .filter(|x| !x.is_zero())
            .find(|&x| fs.iter().all(|&f| self.pow(x, n / f) != self.one()))
            .expect("finite field has a primitive element")
    }

    /// Multiplicative order of a nonzero element (`k <= 2` or small orders only).
    pub fn mult_order(&self, a: Fe) -> u128 {
        let n = self.order().unwrap() - 1;
        let mut ord = n;
        for f in prime_factors(n) {
            while ord % f == 0 && self.pow(a, ord / f) == self.one() {
                ord /= f;
            }
        }
        ord
    }

    /// Render an element as a decimal string: `"a"` in the prime field,
    /// `"a0+a1t+..."`-style otherwise (always all `k` coefficients).
    pub fn format(&self, a: Fe) -> String {
        if self.k == 1 {
            return a.c0().to_string();
        }
        let parts: Vec<String> = (0..self.k).map(|i| a.coeff(i).to_string()).collect();
        parts.join(":")
    }

    /// Inverse of [`Field::format`].
    pub fn parse(&self, s: &str) -> Result<Fe> {
        let bad = || Error::Argument(format!("`{s}` is not an element of F_{}^{}", self.p, self.k));
        let cs: Vec<u64> = s.split(':').map(|x| x.parse().map_err(|_| bad())).collect::<Result<_>>()?;
        if cs.len() != self.k || cs.iter().any(|&c| c >= self.p) {
            return Err(bad());
        }
        Ok(self.from_coeffs(&cs))
    }
}

// ----- prime-field polynomial helpers used to pick a modulus -----

fn fp_trim(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

fn fp_mulmod(md: &Modulus, a: &[u64], b: &[u64], m: &[u64]) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = md.reduce(prod[i + j] + x * y);
        }
    }
    fp_rem(md, prod, m)
}

fn fp_rem(md: &Modulus, mut a: Vec<u64>, m: &[u64]) -> Vec<u64> {
    let dm = m.len() - 1;
    let lead_inv = md.inv(m[dm]).unwrap();
    while a.len() > dm {
        let c = md.mul(*a.last().unwrap(), lead_inv);
        let shift = a.len() - 1 - dm;
        if c != 0 {
            for (j, &mj) in m.iter().enumerate() {
                a[shift + j] = md.sub(a[shift + j], md.mul(c, mj));
            }
        }
        a.pop();
    }
    if a.is_empty() {
        a.push(0);
    }
    fp_trim(&mut a);
    a
}

fn fp_powmod(md: &Modulus, base: &[u64], mut e: u64, m: &[u64]) -> Vec<u64> {
    let mut r = vec![1u64];
    let mut b = fp_rem(md, base.to_vec(), m);
    while e > 0 {
        if e & 1 == 1 {
            r = fp_mulmod(md, &r, &b, m);
        }
        b = fp_mulmod(md, &b, &b, m);
        e >>= 1;
    }
    r
}

fn fp_gcd_is_one(md: &Modulus, a: &[u64], b: &[u64]) -> bool {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    fp_trim(&mut x);
    fp_trim(&mut y);
    while !(y.len() == 1 && y[0] == 0) {
        let r = fp_rem(md, x, &y);
        x = y;
        y = r;
    }
    x.len() == 1 && x[0] != 0
}

/// Rabin's irreducibility test for a monic polynomial over `F_p`.
pub(crate) fn fp_is_irreducible(md: &Modulus, f: &[u64]) -> bool {
    let n = f.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    // x^{p^i} mod f for i = 0..=n
    let mut pows = vec![fp_rem(md, x.clone(), f)];
    for i in 1..=n {
        let next = fp_powmod(md, &pows[i - 1], md.p(), f);
        pows.push(next);
    }
    let sub_x = |v: &[u64]| {
        let mut w = v.to_vec();
        w.resize(w.len().max(2), 0);
        w[1] = md.sub(w[1], 1);
        fp_trim(&mut w);
        w
    };
    let full = sub_x(&pows[n]);
    if !(full.len() == 1 && full[0] == 0) {
        return false;
    }
    for r in prime_factors(n as u128) {
        let d = n / r as usize;
        if !fp_gcd_is_one(md, &sub_x(&pows[d]), f) {
            return false;
        }
    }
    true
}

fn find_irreducible(md: &Modulus, k: usize) -> Option<Vec<u64>> {
    let p = md.p();
    for c in 1..p {
        let mut f = vec![0u64; k + 1];
        f[0] = md.neg(c);
        f[k] = 1;
        if fp_is_irreducible(md, &f) {
            return Some(f);
        }
    }
    for c in 1..p {
        let mut f = vec![0u64; k + 1];
        f[0] = c;
        f[1] = 1;
        f[k] = 1;
        if fp_is_irreducible(md, &f) {
            return Some(f);
        }
    }
    // exhaustive fallback over the low coefficients
    let limit = p.checked_pow(k as u32).unwrap_or(u64::MAX);
    for idx in 0..limit {
        let mut f = vec![0u64; k + 1];
        let mut t = idx;
        for c in f.iter_mut().take(k) {
            *c = t % p;
            t /= p;
        }
        f[k] = 1;
        if fp_is_irreducible(md, &f) {
            return Some(f);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn build_small_fields() {
        let f52 = Field::new(5, 2).unwrap();
        assert_eq!(f52.eps_prime(), 2);
        assert_eq!(f52.modulus(), &[3, 0, 1]);
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f7.zeta(), Some(f7.from_u64(3)));
        assert_eq!(f7.mult_order(f7.zeta().unwrap()), 6);
        let f112 = Field::new(11, 2).unwrap();
        assert_eq!(f112.mult_order(f112.zeta().unwrap()), 120);
        assert!(Field::new(9, 1).is_err());
        assert!(Field::new(7, 13).is_err());
    }

    #[test]
    fn field_axioms_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, k) in [(5, 1), (5, 2), (11, 2), (7, 4), (3, 6), (13, 12), (11, 10), (11, 5), (1_048_573, 2)] {
            let f = Field::new(p, k).unwrap();
            for _ in 0..2000 {
                let (a, b, c) = (f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
                assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                }
                assert_eq!(f.frobenius(a), f.pow(a, u128::from(p)));
                let s = f.sqr(a);
                let r = f.sqrt(s).unwrap();
                assert_eq!(f.sqr(r), s);
            }
        }
    }

    #[test]
    fn inverse_of_zero_is_error() {
        let f = Field::prime(7).unwrap();
        assert!(matches!(f.inv(f.zero()), Err(Error::Division)));
    }

    #[test]
    fn non_squares_have_no_root() {
        let f = Field::new(7, 2).unwrap();
        let nonsq = f.elements().filter(|&x| !f.is_square(x)).count();
        assert_eq!(nonsq, 24);
        for x in f.elements() {
            assert_eq!(f.sqrt(x).is_some(), f.is_square(x));
        }
    }
}
