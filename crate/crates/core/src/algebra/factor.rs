//! Root finding and factorisation of univariate polynomials over `F_{p^k}`
//! (square-free split, distinct-degree, then Cantor-Zassenhaus).
//!
//! Equal-degree splitting draws random polynomials from a ChaCha stream
//! seeded by the caller (or a fixed default), and the output is sorted, so
//! results never depend on the randomness.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::{Fe, Field};
use super::poly::UniPoly;

use std::sync::atomic::{AtomicU64, Ordering};

static DEFAULT_SEED: AtomicU64 = AtomicU64::new(0x5eed_5eed);

/// Seed used by `factor` and `roots` from now on.
pub fn set_default_seed(seed: u64) {
    DEFAULT_SEED.store(seed, Ordering::Relaxed);
}

fn default_seed() -> u64 {
    DEFAULT_SEED.load(Ordering::Relaxed)
}

/// `g^p mod m`.
fn pth_power_mod(g: &UniPoly, m: &UniPoly, k: &Field) -> UniPoly {
    g.powmod(u128::from(k.p()), m, k)
}

/// `g^q mod m` where `q = p^k` is the field size.
fn qth_power_mod(g: &UniPoly, m: &UniPoly, k: &Field) -> UniPoly {
    let mut h = g.rem(m, k).expect("nonzero modulus");
    for _ in 0..k.degree() {
        h = pth_power_mod(&h, m, k);
    }
    h
}

/// `a^{(q^d - 1)/2} mod g`, written as `(prod_i a^{p^i})^{(p-1)/2}` over
/// `i < k d` so no big exponent is ever formed.
fn half_power(a: &UniPoly, d: usize, g: &UniPoly, k: &Field) -> UniPoly {
    let mut conj = a.rem(g, k).expect("nonzero modulus");
    let mut prod = conj.clone();
    for _ in 1..d * k.degree() {
        conj = pth_power_mod(&conj, g, k);
        prod = prod.mulmod(&conj, g, k);
    }
    prod.powmod(u128::from((k.p() - 1) / 2), g, k)
}

/// Split a monic square-free `g` whose irreducible factors all have degree `d`.
fn equal_degree(g: &UniPoly, d: usize, k: &Field, rng: &mut ChaCha8Rng, out: &mut Vec<UniPoly>) {
    let n = g.deg().expect("nonzero");
    if n == d {
        out.push(g.monic(k));
        return;
    }
    loop {
        let a = UniPoly::from_coeffs((0..n).map(|_| k.random(rng)).collect());
        if a.deg().unwrap_or(0) == 0 {
            continue;
        }
        let h = half_power(&a, d, g, k).sub(&UniPoly::one(k), k);
        let f1 = g.gcd(&h, k);
        let deg1 = f1.deg().unwrap_or(0);
        if deg1 > 0 && deg1 < n {
            let f2 = g.div_exact(&f1, k).expect("gcd divides");
            equal_degree(&f1, d, k, rng, out);
            equal_degree(&f2.monic(k), d, k, rng, out);
            return;
        }
    }
}

/// Distinct-degree factorisation of a monic square-free polynomial:
/// pairs `(product of all degree-d factors, d)`.
fn distinct_degree(f: &UniPoly, k: &Field, max_d: Option<usize>) -> Vec<(UniPoly, usize)> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = UniPoly::x(k);
    let mut h = x.clone();
    let mut d = 0;
    while rest.deg().unwrap_or(0) > 0 {
        d += 1;
        if max_d.is_some_and(|m| d > m) {
            break;
        }
        if 2 * d > rest.deg().unwrap() {
            let dd = rest.deg().unwrap();
            if max_d.map_or(true, |m| dd <= m) {
                out.push((rest.clone(), dd));
            }
            break;
        }
        h = qth_power_mod(&h, &rest, k);
        let g = rest.gcd(&h.sub(&x, k), k);
        if g.deg().unwrap_or(0) > 0 {
            rest = rest.div_exact(&g, k).expect("gcd divides").monic(k);
            h = h.rem(&rest, k).expect("nonzero");
            out.push((g, d));
        }
    }
    out
}

/// Square-free decomposition of a monic polynomial: `(factor, multiplicity)`.
fn square_free(f: &UniPoly, k: &Field) -> Vec<(UniPoly, usize)> {
    let mut out = Vec::new();
    if f.deg().unwrap_or(0) == 0 {
        return out;
    }
    let df = f.derivative(k);
    if df.is_zero() {
        // f = g(x^p); take p-th roots of the coefficients
        let root = pth_root_poly(f, k);
        for (g, m) in square_free(&root, k) {
            out.push((g, m * k.p() as usize));
        }
        return out;
    }
    let mut c = f.gcd(&df, k);
    let mut w = f.div_exact(&c, k).unwrap().monic(k);
    let mut i = 1;
    while w.deg().unwrap_or(0) > 0 {
        let y = w.gcd(&c, k);
        let z = w.div_exact(&y, k).unwrap().monic(k);
        if z.deg().unwrap_or(0) > 0 {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w, k).unwrap().monic(k);
    }
    if c.deg().unwrap_or(0) > 0 {
        let root = pth_root_poly(&c, k);
        for (g, m) in square_free(&root, k) {
            out.push((g, m * k.p() as usize));
        }
    }
    out
}

fn pth_root_poly(f: &UniPoly, k: &Field) -> UniPoly {
    let p = k.p() as usize;
    let deg = f.deg().unwrap();
    // a^{1/p} = a^{p^{k-1}}
    let root = |a: Fe| k.frobenius_n(a, k.degree() - 1);
    UniPoly::from_coeffs((0..=deg / p).map(|i| root(f.coeff(i * p))).collect())
}

/// Full factorisation of a nonzero polynomial into monic irreducibles with
/// multiplicities, sorted by (degree, coefficients). The leading unit is
/// dropped (it is `f.lead()`).
pub fn factor(f: &UniPoly, k: &Field) -> Vec<(UniPoly, usize)> {
    factor_seeded(f, k, default_seed())
}

pub fn factor_seeded(f: &UniPoly, k: &Field, seed: u64) -> Vec<(UniPoly, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (sf, mult) in square_free(&f.monic(k), k) {
        for (g, d) in distinct_degree(&sf, k, None) {
            let mut parts = Vec::new();
            equal_degree(&g, d, k, &mut rng, &mut parts);
            out.extend(parts.into_iter().map(|h| (h, mult)));
        }
    }
    out.sort_by(|a, b| (a.0.deg(), &a.0, a.1).cmp(&(b.0.deg(), &b.0, b.1)));
    // merge equal factors coming from different square-free layers
    let mut merged: Vec<(UniPoly, usize)> = Vec::new();
    for (g, m) in out {
        match merged.last_mut() {
            Some((h, mm)) if *h == g => *mm += m,
            _ => merged.push((g, m)),
        }
    }
    merged
}

/// Distinct roots in `k`, ascending in the canonical element order.
pub fn roots(k: &Field, f: &UniPoly) -> Vec<Fe> {
    let Some(n) = f.deg() else {
        return Vec::new();
    };
    if n == 0 {
        return Vec::new();
    }
    let monic = f.monic(k);
    let mut out: Vec<Fe> = if n == 1 {
        vec![k.neg(monic.coeff(0))]
    } else if n == 2 && k.degree() <= 2 {
        quadratic_roots(k, &monic)
    } else {
        // gcd with x^q - x keeps exactly the product of linear factors
        let xq = qth_power_mod(&UniPoly::x(k), &monic, k);
        let lin = monic.gcd(&xq.sub(&UniPoly::x(k), k), k);
        let mut parts = Vec::new();
        if lin.deg().unwrap_or(0) > 0 {
            let mut rng = ChaCha8Rng::seed_from_u64(default_seed());
            equal_degree(&lin, 1, k, &mut rng, &mut parts);
        }
        parts.iter().map(|g| k.neg(g.coeff(0))).collect()
    };
    out.sort();
    out.dedup();
    out
}

fn quadratic_roots(k: &Field, f: &UniPoly) -> Vec<Fe> {
    // x^2 + b x + c
    let (b, c) = (f.coeff(1), f.coeff(0));
    let disc = k.sub(k.sqr(b), k.scale(c, 4));
    let Some(s) = k.sqrt(disc) else {
        return Vec::new();
    };
    let half = k.inv(k.from_u64(2)).unwrap();
    let nb = k.neg(b);
    vec![k.mul(k.add(nb, s), half), k.mul(k.sub(nb, s), half)]
}

/// True when `f` (nonzero, positive degree) is irreducible over `k`.
pub fn is_irreducible(f: &UniPoly, k: &Field) -> bool {
    let Some(n) = f.deg() else { return false };
    if n == 0 {
        return false;
    }
    if !f.is_separable(k) {
        return false;
    }
    let dd = distinct_degree(&f.monic(k), k, None);
    dd.len() == 1 && dd[0].1 == n
}

/// A field homomorphism `F_{p^a} -> F_{p^b}` (`a | b`) sending the source
/// generator to the least root of the source modulus in the target, with a
/// left inverse for coercion back.
#[derive(Clone, Debug)]
pub struct Embedding {
    src_k: usize,
    dst_k: usize,
    img: Vec<Fe>,
    pivots: Vec<usize>,
    // inverse of the pivot-row submatrix, row major (src_k x src_k)
    inv: Vec<u64>,
    p: u64,
}

impl Embedding {
    pub fn new(src: &Field, dst: &Field) -> crate::error::Result<Embedding> {
        use crate::error::Error;
        if src.p() != dst.p() || dst.degree() % src.degree() != 0 {
            return Err(Error::Argument("no embedding between these fields".into()));
        }
        let a = src.degree();
        let img: Vec<Fe> = if a == 1 {
            vec![dst.one()]
        } else {
            let m = UniPoly::from_u64s(dst, src.modulus());
            let r = *roots(dst, &m).first().ok_or_else(|| Error::Internal("modulus has no root".into()))?;
            (0..a).map(|i| dst.pow(r, i as u128)).collect()
        };
        let md = *dst.modp();
        // pick `a` rows of the (dst_k x a) coordinate matrix that are independent
        let mut pivots: Vec<usize> = Vec::new();
        for r in 0..dst.degree() {
            let mut cand = pivots.clone();
            cand.push(r);
            let rows: Vec<Vec<u64>> = cand.iter().map(|&i| (0..a).map(|c| img[c].coeff(i)).collect()).collect();
            if rank(&md, rows) == cand.len() {
                pivots = cand;
                if pivots.len() == a {
                    break;
                }
            }
        }
        // invert the square submatrix of chosen rows
        let sub: Vec<Vec<u64>> = pivots.iter().map(|&r| (0..a).map(|c| img[c].coeff(r)).collect()).collect();
        let inv = invert_matrix(&md, &sub).ok_or_else(|| Error::Internal("singular embedding".into()))?;
        Ok(Embedding { src_k: a, dst_k: dst.degree(), img, pivots, inv, p: src.p() })
    }

    /// The identity of `k`.
    pub fn identity(k: &Field) -> Embedding {
        let a = k.degree();
        let img = (0..a).map(|i| k.monomial(i)).collect();
        let mut inv = vec![0; a * a];
        for i in 0..a {
            inv[i * a + i] = 1;
        }
        Embedding { src_k: a, dst_k: a, img, pivots: (0..a).collect(), inv, p: k.p() }
    }

    pub fn embed(&self, x: Fe, dst: &Field) -> Fe {
        if self.src_k == 1 {
            return dst.from_u64(x.c0());
        }
        let mut acc = dst.zero();
        for i in 0..self.src_k {
            let c = x.coeff(i);
            if c != 0 {
                acc = dst.add(acc, dst.scale(self.img[i], c));
            }
        }
        acc
    }

    /// Inverse image, if `y` lies in the embedded subfield.
    pub fn coerce(&self, y: Fe, src: &Field, dst: &Field) -> Option<Fe> {
        debug_assert_eq!(dst.degree(), self.dst_k);
        let md = dst.modp();
        let a = self.src_k;
        let rhs: Vec<u64> = self.pivots.iter().map(|&r| y.coeff(r)).collect();
        let coeffs: Vec<u64> = (0..a)
            .map(|i| (0..a).fold(0u64, |acc, j| md.add(acc, md.mul(self.inv[i * a + j], rhs[j]))))
            .collect();
        let x = src.from_coeffs(&coeffs);
        (self.embed(x, dst) == y).then_some(x)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }
}

fn rank(md: &super::prime::Modulus, mut m: Vec<Vec<u64>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        let inv = md.inv(m[r][c]).unwrap();
        let prow: Vec<u64> = m[r].iter().map(|&x| md.mul(x, inv)).collect();
        for row in m.iter_mut().skip(r + 1) {
            let f = row[c];
            if f != 0 {
                for (x, &y) in row.iter_mut().zip(&prow) {
                    *x = md.sub(*x, md.mul(f, y));
                }
            }
        }
        r += 1;
    }
    r
}

/// Inverse of a square matrix over `F_p`.
pub(crate) fn invert_matrix(md: &super::prime::Modulus, m: &[Vec<u64>]) -> Option<Vec<u64>> {
    let n = m.len();
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u64::from(i == j)));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != 0)?;
        a.swap(col, piv);
        let inv = md.inv(a[col][col])?;
        for x in a[col].iter_mut() {
            *x = md.mul(*x, inv);
        }
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, &y) in a[r].iter_mut().zip(&pivot_row) {
                    *x = md.sub(*x, md.mul(f, y));
                }
            }
        }
    }
    Some(a.into_iter().flat_map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn quadratics_over_prime_fields() {
        let f7 = Field::prime(7).unwrap();
        let f = UniPoly::from_i64s(&f7, &[1, 0, 1]);
        assert!(is_irreducible(&f, &f7));
        assert_eq!(factor(&f, &f7), vec![(f.clone(), 1)]);
        let f5 = Field::prime(5).unwrap();
        let g = UniPoly::from_i64s(&f5, &[-2, 0, 1]);
        assert!(is_irreducible(&g, &f5));
        assert!(roots(&f5, &g).is_empty());
    }

    #[test]
    fn factor_roundtrip_sextics_over_f121() {
        let k = Field::new(11, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let mut c: Vec<Fe> = (0..6).map(|_| k.random(&mut rng)).collect();
            c.push(k.one());
            let f = UniPoly::from_coeffs(c);
            let fs = factor(&f, &k);
            let prod = fs.iter().fold(UniPoly::one(&k), |acc, (g, m)| acc.mul(&g.pow(*m as u64, &k), &k));
            assert_eq!(prod, f);
            for (g, _) in &fs {
                assert!(is_irreducible(g, &k));
            }
        }
    }

    #[test]
    fn repeated_and_pth_power_factors() {
        let k = Field::new(5, 2).unwrap();
        let a = UniPoly::from_i64s(&k, &[1, 1]);
        let b = UniPoly::from_i64s(&k, &[2, 0, 0, 1]);
        let f = a.pow(5, &k).mul(&b.pow(2, &k), &k);
        let fs = factor(&f, &k);
        let prod = fs.iter().fold(UniPoly::one(&k), |acc, (g, m)| acc.mul(&g.pow(*m as u64, &k), &k));
        assert_eq!(prod, f);
    }

    #[test]
    fn roots_match_scan() {
        let k = Field::new(7, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let d = rng.gen_range(1..8);
            let mut c: Vec<Fe> = (0..d).map(|_| k.random(&mut rng)).collect();
            c.push(k.one());
            let f = UniPoly::from_coeffs(c);
            let want: Vec<Fe> = k.elements().filter(|&x| f.eval(x, &k).is_zero()).collect();
            assert_eq!(roots(&k, &f), want);
        }
    }

    #[test]
    fn embed_project_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for p in [5u64, 11, 53] {
            let small = Field::new(p, 2).unwrap();
            let big = Field::new(p, 12).unwrap();
            let e = Embedding::new(&small, &big).unwrap();
            for _ in 0..100 {
                let (x, y) = (small.random(&mut rng), small.random(&mut rng));
                let (ex, ey) = (e.embed(x, &big), e.embed(y, &big));
                assert_eq!(e.embed(small.mul(x, y), &big), big.mul(ex, ey));
                assert_eq!(e.embed(small.add(x, y), &big), big.add(ex, ey));
                assert_eq!(e.coerce(ex, &small, &big), Some(x));
            }
            // the generator of the big field is not in the subfield
            assert_eq!(e.coerce(big.gen(), &small, &big), None);
        }
    }
}
