//! Prime-field arithmetic on raw `u64` residues.
//!
//! All residues are kept in `[0, p)`. Products of two residues fit in 40
//! bits because `p < 2^20`, so dot products of a few thousand terms can be
//! accumulated in a `u64` before a single reduction.

/// Largest supported characteristic (exclusive).
pub const MAX_PRIME: u64 = 1 << 20;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors by trial division. Intended for `n < 2^64` with
/// small prime factors or small cofactors (orders of `F_p` and `F_{p^2}`).
pub fn prime_factors(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d: u128 = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Barrett reduction constants for a fixed odd prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Modulus {
    p: u64,
    // floor(2^64 / p)
    m: u64,
}

impl Modulus {
    pub fn new(p: u64) -> Self {
        assert!(p >= 2 && p < MAX_PRIME, "modulus out of range");
        let m = (u128::from(u64::MAX) + 1) / u128::from(p);
        Modulus { p, m: m as u64 }
    }

    #[inline(always)]
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Reduce any `u64`.
    #[inline(always)]
    pub fn reduce(&self, x: u64) -> u64 {
        let q = ((u128::from(x) * u128::from(self.m)) >> 64) as u64;
        let r = x - q * self.p;
        if r >= self.p {
            r - self.p
        } else {
            r
        }
    }

    #[inline(always)]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline(always)]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline(always)]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline(always)]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a * b)
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Inverse of a nonzero residue.
    pub fn inv(&self, a: u64) -> Option<u64> {
        if a % self.p == 0 {
            return None;
        }
        // extended Euclid on signed integers
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(t0.rem_euclid(self.p as i64) as u64)
    }

    /// Reduce a signed integer.
    pub fn from_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    /// Legendre symbol `(a / p)` in `{-1, 0, 1}`.
    pub fn legendre(&self, a: u64) -> i32 {
        let a = self.reduce(a);
        if a == 0 {
            return 0;
        }
        if self.p == 2 {
            return 1;
        }
        if self.pow(a, (self.p - 1) / 2) == 1 {
            1
        } else {
            -1
        }
    }

    pub fn is_square(&self, a: u64) -> bool {
        self.legendre(a) >= 0
    }

    /// Tonelli-Shanks square root; `None` for non-squares.
    pub fn sqrt(&self, a: u64) -> Option<u64> {
        let p = self.p;
        let a = self.reduce(a);
        if a == 0 || p == 2 {
            return Some(a);
        }
        if self.legendre(a) != 1 {
            return None;
        }
        if p % 4 == 3 {
            return Some(self.pow(a, (p + 1) / 4));
        }
        let mut q = p - 1;
        let mut s = 0;
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let z = (2..p).find(|&z| self.legendre(z) == -1).unwrap();
        let mut m = s;
        let mut c = self.pow(z, q);
        let mut t = self.pow(a, q);
        let mut r = self.pow(a, (q + 1) / 2);
        while t != 1 {
            let mut i = 0;
            let mut tt = t;
            while tt != 1 {
                tt = self.mul(tt, tt);
                i += 1;
            }
            let b = self.pow(c, 1 << (m - i - 1));
            m = i;
            c = self.mul(b, b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        Some(r)
    }

    /// Least quadratic non-residue in `{2, ..., p-1}`.
    pub fn least_non_square(&self) -> u64 {
        (2..self.p).find(|&e| self.legendre(e) == -1).expect("odd prime has a non-square")
    }

    /// Least generator of `F_p^*`.
    pub fn least_primitive_root(&self) -> u64 {
        let n = self.p - 1;
        if n == 1 {
            return 1;
        }
        let fs = prime_factors(u128::from(n));
        (2..self.p)
            .find(|&g| fs.iter().all(|&f| self.pow(g, n / f as u64) != 1))
            .expect("prime field has a primitive root")
    }
}

/// Binomial coefficients `C(n, k) mod p` for `0 <= k <= n < p`.
pub fn binomial_row(md: &Modulus, n: u64) -> Vec<u64> {
    let mut row = vec![1u64; n as usize + 1];
    for k in 1..=n as usize {
        let num = md.reduce(n - k as u64 + 1);
        let inv = md.inv(k as u64).expect("k < p");
        row[k] = md.mul(md.mul(row[k - 1], num), inv);
    }
    row
}
