//! Hyperelliptic curves as binary forms: `c y^2 = F(x, z)`.

use crate::algebra::{factor, Fe, Field, UniPoly, MAX_EXT};
use crate::error::{Error, InvalidReason, Result};
use crate::models::Hyper;

use super::{binary_points, descend_mat, extension, mobius_mapping, normalize_pt, pgl2, splitting_degree, Mat2, Pt};

/// `F(h v) = mu G(v)` for the homogenised forms of the two curves, over
/// `field`; for the rational test `mu c2 / c1` is a square there.
#[derive(Clone, Debug)]
pub struct BinaryWitness {
    pub field: Field,
    pub h: Mat2,
    pub mu: Fe,
}

/// Coefficients of the degree-`n` homogenisation, index = power of `x`.
pub fn homogenize(f: &UniPoly, n: usize, k: &Field) -> Vec<Fe> {
    (0..=n).map(|i| if i < f.coeffs().len() { f.coeff(i) } else { k.zero() }).collect()
}

fn lin_powers(c_x: Fe, c_z: Fe, n: usize, k: &Field) -> Vec<Vec<Fe>> {
    let mut out = vec![vec![k.one()]];
    for _ in 0..n {
        let prev = out.last().unwrap();
        let mut next = vec![k.zero(); prev.len() + 1];
        for (i, &a) in prev.iter().enumerate() {
            next[i] = k.add(next[i], k.mul(a, c_z));
            next[i + 1] = k.add(next[i + 1], k.mul(a, c_x));
        }
        out.push(next);
    }
    out
}

/// `F(a x + b z, c x + d z)`.
pub fn binary_compose(f: &[Fe], h: &Mat2, k: &Field) -> Vec<Fe> {
    let n = f.len() - 1;
    let p1 = lin_powers(h[0], h[1], n, k);
    let p2 = lin_powers(h[2], h[3], n, k);
    let mut out = vec![k.zero(); n + 1];
    for (i, &fi) in f.iter().enumerate() {
        if fi.is_zero() {
            continue;
        }
        let a = &p1[i];
        let b = &p2[n - i];
        for (s, &x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let fx = k.mul(fi, x);
            for (t, &y) in b.iter().enumerate() {
                out[s + t] = k.add(out[s + t], k.mul(fx, y));
            }
        }
    }
    out
}

/// `mu` with `a = mu b`, if it exists (both nonzero).
pub(crate) fn proportional(a: &[Fe], b: &[Fe], k: &Field) -> Option<Fe> {
    let i = b.iter().position(|x| !x.is_zero())?;
    let mu = k.div(a[i], b[i]).ok()?;
    (!mu.is_zero() && a.iter().zip(b).all(|(&x, &y)| x == k.mul(mu, y))).then_some(mu)
}

fn check(m: &Hyper, k: &Field) -> Result<()> {
    if !m.f.is_separable(k) {
        return Err(Error::InvalidModel(InvalidReason::Inseparable));
    }
    Ok(())
}

/// Search for `h`, `mu` with `F1(h v) = mu F2(v)` by sending a fixed
/// ordered triple of zeros of `F2` to every ordered triple of zeros of
/// `F1`. Over `k` (`closure = false`) the map must descend to `k` and the
/// twist condition must hold.
pub fn binary_form_iso(m1: &Hyper, m2: &Hyper, closure: bool, k: &Field) -> Result<Option<BinaryWitness>> {
    if m1.g != m2.g {
        return Err(Error::NotComparable("different genera".into()));
    }
    check(m1, k)?;
    check(m2, k)?;
    let n = 2 * m1.g + 2;
    if !closure {
        // a map over k keeps the factorisation pattern, the point at
        // infinity counting as a linear factor
        if pattern(&m1.f, n, k) != pattern(&m2.f, n, k) {
            return Ok(None);
        }
        if k.degree() * splitting_degree(&[&m1.f], k) > MAX_EXT {
            return Ok(enumerate_pgl2(m1, m2, n, k));
        }
    }
    let d = splitting_degree(&[&m1.f, &m2.f], k);
    let (big, emb) = extension(k, d)?;
    let r1 = binary_points(&m1.f, n, &big, &emb)?;
    let r2 = binary_points(&m2.f, n, &big, &emb)?;
    let mut set1: Vec<Pt> = r1.iter().map(|&p| normalize_pt(p, &big)).collect();
    set1.sort();
    let f1 = homogenize(&m1.f, n, k);
    let f2 = homogenize(&m2.f, n, k);
    let f1b: Vec<Fe> = f1.iter().map(|&c| emb.embed(c, &big)).collect();
    let f2b: Vec<Fe> = f2.iter().map(|&c| emb.embed(c, &big)).collect();
    let src = [r2[0], r2[1], r2[2]];
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                if i == j || j == l || i == l {
                    continue;
                }
                let Some(h) = mobius_mapping(src, [r1[i], r1[j], r1[l]], &big) else { continue };
                let hits = r2.iter().all(|&p| set1.binary_search(&normalize_pt(super::apply(&h, p, &big), &big)).is_ok());
                if !hits {
                    continue;
                }
                if closure {
                    let g = binary_compose(&f1b, &h, &big);
                    let mu = proportional(&g, &f2b, &big).ok_or_else(|| Error::Internal("root map is not a form map".into()))?;
                    return Ok(Some(BinaryWitness { field: big.clone(), h, mu }));
                }
                let Some(hk) = descend_mat(&h, k, &big, &emb) else { continue };
                let g = binary_compose(&f1, &hk, k);
                let mu = proportional(&g, &f2, k).ok_or_else(|| Error::Internal("root map is not a form map".into()))?;
                let tw = k.div(k.mul(mu, m2.c), m1.c)?;
                if k.is_square(tw) {
                    return Ok(Some(BinaryWitness { field: k.clone(), h: hk, mu }));
                }
            }
        }
    }
    Ok(None)
}

fn pattern(f: &UniPoly, n: usize, k: &Field) -> Vec<usize> {
    let mut v: Vec<usize> = factor(f, k).iter().map(|(g, _)| g.deg().unwrap()).collect();
    if f.deg() < Some(n) {
        v.push(1);
    }
    v.sort();
    v
}

/// Exhaustive search over `PGL_2(k)`, for splitting fields beyond the cap.
fn enumerate_pgl2(m1: &Hyper, m2: &Hyper, n: usize, k: &Field) -> Option<BinaryWitness> {
    let f1 = homogenize(&m1.f, n, k);
    let f2 = homogenize(&m2.f, n, k);
    pgl2(k).find_map(|h| {
        let g = binary_compose(&f1, &h, k);
        let mu = proportional(&g, &f2, k)?;
        let tw = k.div(k.mul(mu, m2.c), m1.c).ok()?;
        k.is_square(tw).then(|| BinaryWitness { field: k.clone(), h, mu })
    })
}
