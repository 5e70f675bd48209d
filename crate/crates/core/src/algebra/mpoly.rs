//! Sparse multivariate polynomials (up to 8 variables) with lex or graded
//! reverse lex term orders; the ring for the small Groebner computations.

use std::cmp::Ordering;

use super::field::{Fe, Field};

pub const MAX_VARS: usize = 8;
pub type Mono = [u8; MAX_VARS];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TermOrder {
    Lex,
    Grevlex,
}

impl TermOrder {
    #[inline]
    pub fn cmp(self, a: &Mono, b: &Mono) -> Ordering {
        match self {
            TermOrder::Lex => a.cmp(b),
            TermOrder::Grevlex => {
                let da: u32 = a.iter().map(|&x| u32::from(x)).sum();
                let db: u32 = b.iter().map(|&x| u32::from(x)).sum();
                da.cmp(&db).then_with(|| {
                    for i in (0..MAX_VARS).rev() {
                        if a[i] != b[i] {
                            return b[i].cmp(&a[i]);
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }
}

#[inline]
pub fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    let mut c = [0u8; MAX_VARS];
    for i in 0..MAX_VARS {
        c[i] = a[i] + b[i];
    }
    c
}
#[inline]
pub fn mono_divides(a: &Mono, b: &Mono) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}
#[inline]
pub fn mono_div(b: &Mono, a: &Mono) -> Mono {
    let mut c = [0u8; MAX_VARS];
    for i in 0..MAX_VARS {
        c[i] = b[i] - a[i];
    }
    c
}
#[inline]
pub fn mono_lcm(a: &Mono, b: &Mono) -> Mono {
    let mut c = [0u8; MAX_VARS];
    for i in 0..MAX_VARS {
        c[i] = a[i].max(b[i]);
    }
    c
}
pub fn mono_deg(a: &Mono) -> u32 {
    a.iter().map(|&x| u32::from(x)).sum()
}
pub fn var(i: usize) -> Mono {
    let mut m = [0u8; MAX_VARS];
    m[i] = 1;
    m
}

/// Terms sorted strictly descending in `order`, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    pub order: TermOrder,
    pub terms: Vec<(Mono, Fe)>,
}

impl MPoly {
    pub fn zero(order: TermOrder) -> Self {
        MPoly { order, terms: Vec::new() }
    }
    pub fn constant(c: Fe, order: TermOrder) -> Self {
        Self::from_terms(vec![([0; MAX_VARS], c)], order, None)
    }
    pub fn var(i: usize, k: &Field, order: TermOrder) -> Self {
        Self::from_terms(vec![(var(i), k.one())], order, Some(k))
    }

    /// Sort and combine; `k` is required when duplicates may occur.
    pub fn from_terms(mut terms: Vec<(Mono, Fe)>, order: TermOrder, k: Option<&Field>) -> Self {
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Mono, Fe)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => {
                    *lc = k.expect("field needed to merge terms").add(*lc, c);
                }
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        MPoly { order, terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn lm(&self) -> &Mono {
        &self.terms[0].0
    }
    pub fn lc(&self) -> Fe {
        self.terms[0].1
    }
    pub fn is_constant_nonzero(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == [0; MAX_VARS]
    }
    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| mono_deg(m)).max().unwrap_or(0)
    }

    pub fn reorder(&self, order: TermOrder) -> Self {
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        MPoly { order, terms }
    }

    /// `self - c * m * other`.
    pub fn sub_scaled(&self, c: Fe, m: &Mono, other: &MPoly, k: &Field) -> MPoly {
        let ord = self.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() || j < b.len() {
            let bj = (j < b.len()).then(|| (mono_mul(&b[j].0, m), k.mul(b[j].1, c)));
            match (i < a.len(), bj) {
                (true, Some((bm, bc))) => match ord.cmp(&a[i].0, &bm) {
                    Ordering::Greater => {
                        out.push(a[i]);
                        i += 1;
                    }
                    Ordering::Less => {
                        out.push((bm, k.neg(bc)));
                        j += 1;
                    }
                    Ordering::Equal => {
                        let v = k.sub(a[i].1, bc);
                        if !v.is_zero() {
                            out.push((bm, v));
                        }
                        i += 1;
                        j += 1;
                    }
                },
                (true, None) => {
                    out.push(a[i]);
                    i += 1;
                }
                (false, Some((bm, bc))) => {
                    out.push((bm, k.neg(bc)));
                    j += 1;
                }
                (false, None) => unreachable!(),
            }
        }
        MPoly { order: ord, terms: out }
    }

    pub fn add(&self, o: &MPoly, k: &Field) -> MPoly {
        self.sub_scaled(k.neg(k.one()), &[0; MAX_VARS], o, k)
    }
    pub fn sub(&self, o: &MPoly, k: &Field) -> MPoly {
        self.sub_scaled(k.one(), &[0; MAX_VARS], o, k)
    }
    pub fn scale(&self, c: Fe, k: &Field) -> MPoly {
        MPoly { order: self.order, terms: self.terms.iter().map(|&(m, x)| (m, k.mul(x, c))).filter(|t| !t.1.is_zero()).collect() }
    }
    pub fn mul(&self, o: &MPoly, k: &Field) -> MPoly {
        let mut acc = MPoly::zero(self.order);
        for &(m, c) in &o.terms {
            acc = acc.sub_scaled(k.neg(c), &m, self, k);
        }
        acc
    }
    pub fn monic(&self, k: &Field) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(k.inv(self.lc()).unwrap(), k)
    }

    pub fn eval(&self, pt: &[Fe], k: &Field) -> Fe {
        let mut acc = k.zero();
        for &(m, c) in &self.terms {
            let mut t = c;
            for (v, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = k.mul(t, k.pow(pt[v], u128::from(e)));
                }
            }
            acc = k.add(acc, t);
        }
        acc
    }

    /// Substitute `x_v = value` (a constant), leaving the variable absent.
    pub fn specialize(&self, v: usize, value: Fe, k: &Field) -> MPoly {
        let terms = self
            .terms
            .iter()
            .map(|&(m, c)| {
                let mut m2 = m;
                m2[v] = 0;
                (m2, k.mul(c, k.pow(value, u128::from(m[v]))))
            })
            .collect();
        MPoly::from_terms(terms, self.order, Some(k))
    }

    /// Highest variable index occurring, if any.
    pub fn max_var(&self) -> Option<usize> {
        self.terms.iter().filter_map(|(m, _)| m.iter().rposition(|&e| e > 0)).max()
    }
    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.iter().any(|(m, _)| m[v] > 0)
    }

    /// Univariate view in variable `v` (requires no other variable to occur).
    pub fn to_univariate(&self, v: usize) -> Option<super::poly::UniPoly> {
        let mut deg = 0usize;
        for (m, _) in &self.terms {
            if m.iter().enumerate().any(|(i, &e)| i != v && e > 0) {
                return None;
            }
            deg = deg.max(m[v] as usize);
        }
        let mut c = vec![Fe::ZERO; deg + 1];
        for &(m, x) in &self.terms {
            c[m[v] as usize] = x;
        }
        Some(super::poly::UniPoly::from_coeffs(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_order() {
        let o = TermOrder::Grevlex;
        // x^2 > xy > y^2 > xz > yz > z^2 in grevlex
        let m = |a, b, c| {
            let mut x = [0u8; MAX_VARS];
            x[0] = a;
            x[1] = b;
            x[2] = c;
            x
        };
        let seq = [m(2, 0, 0), m(1, 1, 0), m(0, 2, 0), m(1, 0, 1), m(0, 1, 1), m(0, 0, 2)];
        for w in seq.windows(2) {
            assert_eq!(o.cmp(&w[0], &w[1]), Ordering::Greater);
        }
    }

    #[test]
    fn arithmetic() {
        let k = Field::prime(7).unwrap();
        let o = TermOrder::Grevlex;
        let x = MPoly::var(0, &k, o);
        let y = MPoly::var(1, &k, o);
        let s = x.add(&y, &k);
        let sq = s.mul(&s, &k);
        assert_eq!(sq.terms.len(), 3);
        assert_eq!(sq.sub(&sq, &k), MPoly::zero(o));
        assert_eq!(sq.eval(&[k.one(), k.one()], &k), k.from_u64(4));
    }
}
