//! Homogeneous forms in 3 or 4 variables.
//!
//! A form keeps its nonzero terms sparsely (the models have at most ~20
//! terms). Powers are dense: the monomials of a fixed degree are ranked
//! through a mixed-radix lookup table so that multiplying two dense forms is
//! a pair of nested loops with one table read per product.

use std::collections::BTreeMap;

use super::field::{Fe, Field};
use super::poly::Targeted;
use crate::error::{Error, Result};

/// Exponent tuple; unused trailing slots are zero.
pub type Exp = [u8; 4];

/// All monomials of degree `d` in `n` variables, in descending lex order
/// (`x^d` first), with an `O(1)` rank lookup.
#[derive(Clone, Debug)]
pub struct MonoTable {
    pub n: usize,
    pub d: usize,
    pub monos: Vec<Exp>,
    radix: usize,
    lookup: Vec<u32>,
}

impl MonoTable {
    pub fn new(n: usize, d: usize) -> Self {
        assert!((3..=4).contains(&n) && d < 256);
        let mut monos = Vec::new();
        let mut e = [0u8; 4];
        fill(n, d, 0, &mut e, &mut monos);
        let radix = d + 1;
        let mut lookup = vec![u32::MAX; radix.pow(n as u32 - 1)];
        for (i, m) in monos.iter().enumerate() {
            lookup[Self::key_radix(m, n, radix)] = i as u32;
        }
        MonoTable { n, d, monos, radix, lookup }
    }

    #[inline]
    fn key_radix(e: &Exp, n: usize, radix: usize) -> usize {
        (1..n).fold(0, |acc, v| acc * radix + e[v] as usize)
    }
    /// Mixed-radix key (additive in the exponents) for use with [`Self::rank_key`].
    #[inline]
    pub fn key(&self, e: &Exp) -> usize {
        Self::key_radix(e, self.n, self.radix)
    }
    #[inline]
    pub fn rank_key(&self, key: usize) -> usize {
        self.lookup[key] as usize
    }
    pub fn rank(&self, e: &Exp) -> Option<usize> {
        let s: usize = e[..self.n].iter().map(|&x| x as usize).sum();
        if s != self.d || e[self.n..].iter().any(|&x| x != 0) {
            return None;
        }
        Some(self.lookup[self.key(e)] as usize)
    }
    pub fn len(&self) -> usize {
        self.monos.len()
    }
    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }
}

fn fill(n: usize, left: usize, v: usize, e: &mut Exp, out: &mut Vec<Exp>) {
    if v == n - 1 {
        e[v] = left as u8;
        out.push(*e);
        e[v] = 0;
        return;
    }
    for a in (0..=left).rev() {
        e[v] = a as u8;
        fill(n, left - a, v + 1, e, out);
    }
    e[v] = 0;
}

/// Sparse homogeneous form. Terms are sorted in descending lex order of the
/// exponent and never carry a zero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomogForm {
    nvars: usize,
    deg: usize,
    terms: Vec<(Exp, Fe)>,
}

impl HomogForm {
    pub fn zero(nvars: usize, deg: usize) -> Self {
        HomogForm { nvars, deg, terms: Vec::new() }
    }

    /// Build from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms(nvars: usize, deg: usize, terms: impl IntoIterator<Item = (Exp, Fe)>, k: &Field) -> Result<Self> {
        if !(3..=4).contains(&nvars) {
            return Err(Error::Argument(format!("forms need 3 or 4 variables, got {nvars}")));
        }
        let mut map: BTreeMap<std::cmp::Reverse<Exp>, Fe> = BTreeMap::new();
        for (e, c) in terms {
            let s: usize = e.iter().map(|&x| x as usize).sum();
            if s != deg || e[nvars..].iter().any(|&x| x != 0) {
                return Err(Error::Argument(format!("monomial {e:?} is not of degree {deg} in {nvars} variables")));
            }
            let slot = map.entry(std::cmp::Reverse(e)).or_insert(Fe::ZERO);
            *slot = k.add(*slot, c);
        }
        Ok(HomogForm { nvars, deg, terms: map.into_iter().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (e.0, c)).collect() })
    }

    /// Convenience constructor from small signed integers.
    pub fn from_int_terms(nvars: usize, deg: usize, terms: &[(Exp, i64)], k: &Field) -> Result<Self> {
        Self::from_terms(nvars, deg, terms.iter().map(|&(e, c)| (e, k.from_i64(c))), k)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn degree(&self) -> usize {
        self.deg
    }
    pub fn terms(&self) -> &[(Exp, Fe)] {
        &self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn coeff(&self, e: &Exp) -> Fe {
        self.terms.iter().find(|(x, _)| x == e).map_or(Fe::ZERO, |t| t.1)
    }

    pub fn add(&self, o: &Self, k: &Field) -> Result<Self> {
        self.check_compatible(o)?;
        Self::from_terms(self.nvars, self.deg, self.terms.iter().chain(&o.terms).copied(), k)
    }
    pub fn sub(&self, o: &Self, k: &Field) -> Result<Self> {
        self.add(&o.scale(k.neg(k.one()), k), k)
    }
    pub fn scale(&self, s: Fe, k: &Field) -> Self {
        HomogForm {
            nvars: self.nvars,
            deg: self.deg,
            terms: self.terms.iter().map(|&(e, c)| (e, k.mul(c, s))).filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
    fn check_compatible(&self, o: &Self) -> Result<()> {
        if self.nvars != o.nvars || self.deg != o.deg {
            return Err(Error::Argument("forms of different shape".into()));
        }
        Ok(())
    }

    pub fn mul(&self, o: &Self, k: &Field) -> Result<Self> {
        if self.nvars != o.nvars {
            return Err(Error::Argument("forms in different numbers of variables".into()));
        }
        let mut out = Vec::with_capacity(self.terms.len() * o.terms.len());
        for &(a, ca) in &self.terms {
            for &(b, cb) in &o.terms {
                out.push((add_exp(&a, &b), k.mul(ca, cb)));
            }
        }
        Self::from_terms(self.nvars, self.deg + o.deg, out, k)
    }

    pub fn eval(&self, pt: &[Fe], k: &Field) -> Fe {
        let mut acc = k.zero();
        for &(e, c) in &self.terms {
            let mut t = c;
            for v in 0..self.nvars {
                if e[v] > 0 {
                    t = k.mul(t, k.pow(pt[v], u128::from(e[v])));
                }
            }
            acc = k.add(acc, t);
        }
        acc
    }

    /// Partial derivative with respect to variable `v`.
    pub fn partial(&self, v: usize, k: &Field) -> Self {
        if self.deg == 0 {
            return Self::zero(self.nvars, 0);
        }
        let terms = self.terms.iter().filter(|(e, _)| e[v] > 0).map(|&(e, c)| {
            let mut e2 = e;
            e2[v] -= 1;
            (e2, k.scale(c, u64::from(e[v]) % k.p()))
        });
        Self::from_terms(self.nvars, self.deg - 1, terms, k).expect("degrees consistent")
    }

    /// `F(M v)`: substitute `x_i <- sum_j M[i][j] x_j`.
    pub fn substitute(&self, m: &[Vec<Fe>], k: &Field) -> Self {
        let n = self.nvars;
        let lin: Vec<Vec<(Exp, Fe)>> = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| !m[i][j].is_zero())
                    .map(|j| {
                        let mut e = [0u8; 4];
                        e[j] = 1;
                        (e, m[i][j])
                    })
                    .collect()
            })
            .collect();
        // powers of each linear form, computed on demand
        let mut cache: Vec<Vec<BTreeMap<Exp, Fe>>> = vec![Vec::new(); n];
        let mut out: BTreeMap<Exp, Fe> = BTreeMap::new();
        for &(e, c) in &self.terms {
            let mut acc: BTreeMap<Exp, Fe> = BTreeMap::from([([0u8; 4], c)]);
            for v in 0..n {
                let pw = e[v] as usize;
                if pw == 0 {
                    continue;
                }
                while cache[v].len() <= pw {
                    let next = if cache[v].is_empty() {
                        BTreeMap::from([([0u8; 4], k.one())])
                    } else {
                        sparse_mul(cache[v].last().unwrap(), &lin[v], k)
                    };
                    cache[v].push(next);
                }
                acc = sparse_mul_map(&acc, &cache[v][pw], k);
            }
            for (ex, cf) in acc {
                let slot = out.entry(ex).or_insert(Fe::ZERO);
                *slot = k.add(*slot, cf);
            }
        }
        Self::from_terms(n, self.deg, out, k).expect("substitution preserves degree")
    }

    /// Dense coefficient vector in the order of `MonoTable::new(nvars, deg)`.
    pub fn to_dense(&self, t: &MonoTable) -> Vec<Fe> {
        let mut v = vec![Fe::ZERO; t.len()];
        for &(e, c) in &self.terms {
            v[t.rank(&e).expect("table matches form")] = c;
        }
        v
    }

    pub fn from_dense(nvars: usize, deg: usize, t: &MonoTable, v: &[Fe]) -> Self {
        HomogForm {
            nvars,
            deg,
            terms: t.monos.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(&e, &c)| (e, c)).collect(),
        }
    }

    /// Full dense expansion of `self^m` (the oracle for targeted powers).
    pub fn pow_dense(&self, m: usize, k: &Field) -> (MonoTable, Vec<Fe>) {
        let mut table = MonoTable::new(self.nvars, 0);
        let mut acc = vec![k.one()];
        let mut deg = 0;
        for _ in 0..m {
            let nt = MonoTable::new(self.nvars, deg + self.deg);
            acc = dense_times_sparse(&table, &acc, &self.terms, &nt, k);
            table = nt;
            deg += self.deg;
        }
        (table, acc)
    }

    /// Targeted coefficients of `self^m`, split as `F^h * F^(m-h)` with
    /// `h = m / 2`, so each target costs one dot product over the monomials
    /// of degree `h * deg` dividing it. Targets are checked in the given
    /// order; with `early_abort` the first nonzero one stops the run.
    pub fn pow_targeted(&self, m: usize, targets: &[Exp], early_abort: bool, k: &Field) -> Result<Targeted> {
        let total = m * self.deg;
        for t in targets {
            let s: usize = t.iter().map(|&x| x as usize).sum();
            if s != total || t[self.nvars..].iter().any(|&x| x != 0) {
                return Err(Error::Argument(format!("target {t:?} does not have degree {total}")));
            }
        }
        let h = m / 2;
        let (th, low) = self.pow_dense(h, k);
        let (thi, high) = if m - h == h {
            (th.clone(), low.clone())
        } else {
            let nt = MonoTable::new(self.nvars, (h + 1) * self.deg);
            let v = dense_times_sparse(&th, &low, &self.terms, &nt, k);
            (nt, v)
        };
        let mut vals = Vec::with_capacity(targets.len());
        for (ti, t) in targets.iter().enumerate() {
            let mut acc = k.zero();
            for (i, e) in th.monos.iter().enumerate() {
                if low[i].is_zero() || (0..self.nvars).any(|v| e[v] > t[v]) {
                    continue;
                }
                let rest = sub_exp(t, e);
                let j = thi.rank(&rest).expect("degree matches");
                acc = k.add(acc, k.mul(low[i], high[j]));
            }
            if early_abort && !acc.is_zero() {
                return Ok(Targeted::Aborted(ti));
            }
            vals.push(acc);
        }
        Ok(Targeted::Values(vals))
    }

    /// Coefficients as decimal strings in descending lex monomial order,
    /// listing every monomial of the degree (zeros included).
    pub fn to_strings(&self, k: &Field) -> Vec<String> {
        let t = MonoTable::new(self.nvars, self.deg);
        self.to_dense(&t).into_iter().map(|c| k.format(c)).collect()
    }

    /// Map every coefficient (e.g. through a field embedding).
    pub fn map_coeffs(&self, f: impl Fn(Fe) -> Fe) -> Self {
        HomogForm {
            nvars: self.nvars,
            deg: self.deg,
            terms: self.terms.iter().map(|&(e, c)| (e, f(c))).filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Scale so that the leading (first) coefficient is one.
    pub fn normalized(&self, k: &Field) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some(&(_, c)) => self.scale(k.inv(c).expect("nonzero"), k),
        }
    }
}

#[inline]
pub fn add_exp(a: &Exp, b: &Exp) -> Exp {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}
#[inline]
pub fn sub_exp(a: &Exp, b: &Exp) -> Exp {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]]
}

fn sparse_mul(a: &BTreeMap<Exp, Fe>, lin: &[(Exp, Fe)], k: &Field) -> BTreeMap<Exp, Fe> {
    let mut out = BTreeMap::new();
    for (ea, &ca) in a {
        for &(eb, cb) in lin {
            let slot = out.entry(add_exp(ea, &eb)).or_insert(Fe::ZERO);
            *slot = k.add(*slot, k.mul(ca, cb));
        }
    }
    out
}

fn sparse_mul_map(a: &BTreeMap<Exp, Fe>, b: &BTreeMap<Exp, Fe>, k: &Field) -> BTreeMap<Exp, Fe> {
    let lin: Vec<(Exp, Fe)> = b.iter().map(|(&e, &c)| (e, c)).collect();
    sparse_mul(a, &lin, k)
}

/// Dense (degree of `ta`) times sparse, into the table `tout`.
pub(crate) fn dense_times_sparse(ta: &MonoTable, a: &[Fe], b: &[(Exp, Fe)], tout: &MonoTable, k: &Field) -> Vec<Fe> {
    let mut out = vec![Fe::ZERO; tout.len()];
    let bkeys: Vec<usize> = b.iter().map(|(e, _)| tout.key(e)).collect();
    for (i, &ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        let ka = tout.key(&ta.monos[i]);
        for (j, &(_, cb)) in b.iter().enumerate() {
            let r = tout.rank_key(ka + bkeys[j]);
            out[r] = k.add(out[r], k.mul(ca, cb));
        }
    }
    out
}

/// Shorthand for exponent tuples: `e3(1, 2, 0)` is `x y^2`.
pub const fn e3(a: u8, b: u8, c: u8) -> Exp {
    [a, b, c, 0]
}
pub const fn e4(a: u8, b: u8, c: u8, d: u8) -> Exp {
    [a, b, c, d]
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn table_ranks() {
        let t = MonoTable::new(4, 5);
        assert_eq!(t.len(), 56);
        assert_eq!(t.monos[0], [5, 0, 0, 0]);
        for (i, m) in t.monos.iter().enumerate() {
            assert_eq!(t.rank(m), Some(i));
        }
        assert_eq!(MonoTable::new(3, 50).len(), 1326);
    }

    #[test]
    fn square_of_linear() {
        let k = Field::prime(5).unwrap();
        let f = HomogForm::from_int_terms(3, 1, &[(e3(1, 0, 0), 1), (e3(0, 1, 0), 1)], &k).unwrap();
        let t = f.pow_targeted(2, &[e3(1, 1, 0)], false, &k).unwrap();
        assert_eq!(t, Targeted::Values(vec![k.from_u64(2)]));
        assert!(f.pow_targeted(2, &[e3(1, 0, 0)], false, &k).is_err());
    }

    #[test]
    fn targeted_matches_dense_random_quintics() {
        let k = Field::prime(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let t5 = MonoTable::new(4, 5);
        for _ in 0..50 {
            let terms: Vec<(Exp, Fe)> = t5.monos.iter().filter_map(|&e| rng.gen_bool(0.3).then(|| (e, k.random(&mut rng)))).collect();
            let f = HomogForm::from_terms(4, 5, terms, &k).unwrap();
            let (tab, full) = f.pow_dense(4, &k);
            let targets: Vec<Exp> = (0..8).map(|_| tab.monos[rng.gen_range(0..tab.len())]).collect();
            let want: Vec<Fe> = targets.iter().map(|e| full[tab.rank(e).unwrap()]).collect();
            assert_eq!(f.pow_targeted(4, &targets, false, &k).unwrap(), Targeted::Values(want));
        }
    }

    #[test]
    fn substitution_is_an_action() {
        let k = Field::prime(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let t = MonoTable::new(3, 5);
        for _ in 0..20 {
            let terms: Vec<(Exp, Fe)> = t.monos.iter().map(|&e| (e, k.random(&mut rng))).collect();
            let f = HomogForm::from_terms(3, 5, terms, &k).unwrap();
            let m: Vec<Vec<Fe>> = (0..3).map(|_| (0..3).map(|_| k.random(&mut rng)).collect()).collect();
            let g = f.substitute(&m, &k);
            let pt: Vec<Fe> = (0..3).map(|_| k.random(&mut rng)).collect();
            let mp: Vec<Fe> = (0..3).map(|i| (0..3).fold(k.zero(), |a, j| k.add(a, k.mul(m[i][j], pt[j])))).collect();
            assert_eq!(g.eval(&pt, &k), f.eval(&mp, &k));
        }
    }
}
