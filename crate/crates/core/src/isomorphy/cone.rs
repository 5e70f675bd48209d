//! Geometric isomorphy of canonical curves on the cone `2yw + z^2`.
//!
//! Shifting `x` removes the `x^2` term, leaving `c x^3 + x R + S` with `R`, `S`
//! quadratic and cubic in `(y, z, w)`. On the conic `(s^2, s t, -t^2/2)` they
//! become binary forms of degree 4 and 6, and an isomorphism over the
//! closure is a `g` in `GL_2` with `R1 o g = mu R2`, `S1 o g = L S2` and
//! `c1 L^2 = c2 mu^3` (then `x -> (L / mu) x`). The map `g` is found by
//! sending three zeros of `R2 S2` to zeros of `R1 S1`.

use crate::algebra::form::HomogForm;
use crate::algebra::{roots, Embedding, Fe, Field, UniPoly};
use crate::error::{Error, InvalidReason, Result};
use crate::models::{Canonical, QType};

use super::binary::{binary_compose, proportional};
use super::{affine, extension, infinity, mobius_mapping, normalize_pt, splitting_degree, Mat2, Pt};

/// `(c, R, S)` with `R`, `S` as binary forms, index = power of `s`.
struct Shape {
    c: Fe,
    r: Vec<Fe>,
    s: Vec<Fe>,
}

fn bin_mul(a: &[Fe], b: &[Fe], k: &Field) -> Vec<Fe> {
    let mut out = vec![k.zero(); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = k.add(out[i + j], k.mul(x, y));
        }
    }
    out
}

fn axpy(acc: &mut [Fe], s: Fe, a: &[Fe], k: &Field) {
    for (x, &y) in acc.iter_mut().zip(a) {
        *x = k.add(*x, k.mul(s, y));
    }
}

fn shape(p: &HomogForm, k: &Field) -> Result<Shape> {
    let c = p.coeff(&[3, 0, 0, 0]);
    if c.is_zero() {
        return Err(Error::InvalidModel(InvalidReason::WrongSingularity));
    }
    let mhalf = k.neg(k.inv(k.from_u64(2))?);
    // graded parts restricted to the conic: index 0 is x^2, 1 is x, 2 is 1
    let mut parts = [vec![k.zero(); 3], vec![k.zero(); 5], vec![k.zero(); 7]];
    for &(e, a) in p.terms() {
        if e[0] == 3 {
            continue;
        }
        let (b, cz, d) = (e[1] as usize, e[2] as usize, e[3] as usize);
        let part = &mut parts[2 - e[0] as usize];
        let i = 2 * b + cz;
        part[i] = k.add(part[i], k.mul(a, k.pow(mhalf, d as u128)));
    }
    let [l, r, s] = parts;
    let i3c = k.inv(k.mul(k.from_u64(3), c))?;
    let ll = bin_mul(&l, &l, k);
    let mut r2 = r.clone();
    axpy(&mut r2, k.neg(i3c), &ll, k);
    let mut s2 = s;
    axpy(&mut s2, k.neg(i3c), &bin_mul(&l, &r, k), k);
    // 2 / (27 c^2) = 2 i3c^2 / 3
    let f = k.mul(k.scale(k.sqr(i3c), 2), k.inv(k.from_u64(3))?);
    axpy(&mut s2, f, &bin_mul(&ll, &l, k), k);
    Ok(Shape { c, r: r2, s: s2 })
}

fn is_zero(f: &[Fe]) -> bool {
    f.iter().all(Fe::is_zero)
}

fn dehom(f: &[Fe]) -> UniPoly {
    UniPoly::from_coeffs(f.to_vec())
}

/// Distinct zeros over `big` of the binary form `f` (not identically 0).
fn zeros(f: &[Fe], big: &Field, emb: &Embedding) -> Vec<Pt> {
    let n = f.len() - 1;
    let u = UniPoly::from_coeffs(f.iter().map(|&c| emb.embed(c, big)).collect());
    let mut out: Vec<Pt> = roots(big, &u).into_iter().map(|r| affine(r, big)).collect();
    if u.deg().is_some_and(|d| d < n) {
        out.push(infinity(big));
    }
    out
}

/// Zeros of `R S` labelled by which of the two vanish there.
fn labelled(sh: &Shape, big: &Field, emb: &Embedding) -> Vec<(Pt, u8)> {
    let mut out: Vec<(Pt, u8)> = Vec::new();
    for (f, bit) in [(&sh.r, 1u8), (&sh.s, 2u8)] {
        if is_zero(f) {
            continue;
        }
        for p in zeros(f, big, emb) {
            let p = normalize_pt(p, big);
            match out.iter_mut().find(|x| x.0 == p) {
                Some(x) => x.1 |= bit,
                None => out.push((p, bit)),
            }
        }
    }
    out.sort();
    out
}

fn embed(f: &[Fe], big: &Field, emb: &Embedding) -> Vec<Fe> {
    f.iter().map(|&c| emb.embed(c, big)).collect()
}

/// Whether two canonical curves on the cone are isomorphic over the
/// algebraic closure. Errors with `Overload` if the zeros of `R S` need a
/// field beyond the supported extension degree.
pub fn dege_geometric_iso(m1: &Canonical, m2: &Canonical, k: &Field) -> Result<bool> {
    if m1.qtype != QType::Dege || m2.qtype != QType::Dege {
        return Err(Error::NotComparable("closure test is for the cone only".into()));
    }
    let (a, b) = (shape(&m1.cubic, k)?, shape(&m2.cubic, k)?);
    if is_zero(&a.s) != is_zero(&b.s) || is_zero(&a.r) != is_zero(&b.r) {
        return Ok(false);
    }
    let polys: Vec<UniPoly> = [&a.r, &a.s, &b.r, &b.s].iter().filter(|f| !is_zero(f)).map(|f| dehom(f)).collect();
    let refs: Vec<&UniPoly> = polys.iter().collect();
    let d = splitting_degree(&refs, k);
    let (big, emb) = extension(k, d)?;
    let z1 = labelled(&a, &big, &emb);
    let z2 = labelled(&b, &big, &emb);
    if z1.len() != z2.len() {
        return Ok(false);
    }
    if z2.len() < 3 {
        return Err(Error::Overload("fewer than three marked points on the conic".into()));
    }
    let (r1, s1) = (embed(&a.r, &big, &emb), embed(&a.s, &big, &emb));
    let (r2, s2) = (embed(&b.r, &big, &emb), embed(&b.s, &big, &emb));
    let (c1, c2) = (emb.embed(a.c, &big), emb.embed(b.c, &big));
    let src = [z2[0].0, z2[1].0, z2[2].0];
    let n = z1.len();
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                if i == j || j == l || i == l {
                    continue;
                }
                if [z1[i].1, z1[j].1, z1[l].1] != [z2[0].1, z2[1].1, z2[2].1] {
                    continue;
                }
                let Some(h) = mobius_mapping(src, [z1[i].0, z1[j].0, z1[l].0], &big) else { continue };
                if accepts(&h, (&r1, &s1, c1), (&r2, &s2, c2), &big) {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

fn accepts(h: &Mat2, one: (&[Fe], &[Fe], Fe), two: (&[Fe], &[Fe], Fe), k: &Field) -> bool {
    let Some(lam) = proportional(&binary_compose(one.1, h, k), two.1, k) else { return false };
    if is_zero(one.0) {
        return true;
    }
    let Some(mu) = proportional(&binary_compose(one.0, h, k), two.0, k) else { return false };
    k.mul(one.2, k.sqr(lam)) == k.mul(two.2, k.pow(mu, 3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::form::e4;
    use crate::isomorphy::canonical_g4_iso;

    fn cubic(t: &[([u8; 4], i64)], k: &Field) -> Canonical {
        let t: Vec<_> = t.iter().map(|&(e, c)| (e4(e[0], e[1], e[2], e[3]), c)).collect();
        Canonical { qtype: QType::Dege, cubic: HomogForm::from_int_terms(4, 3, &t, k).unwrap() }
    }

    #[test]
    fn agrees_with_search_over_small_fields() {
        // whenever the search over F_25 finds a map, so must the closure test
        let k = Field::prime(5).unwrap();
        let base = cubic(&[([3, 0, 0, 0], 1), ([0, 3, 0, 0], 1), ([0, 0, 0, 3], 1)], &k);
        let others = [
            cubic(&[([3, 0, 0, 0], 1), ([0, 3, 0, 0], 2), ([0, 0, 0, 3], 1)], &k),
            cubic(&[([3, 0, 0, 0], 2), ([0, 3, 0, 0], 1), ([0, 0, 0, 3], 1)], &k),
            cubic(&[([3, 0, 0, 0], 1), ([1, 2, 0, 0], 1), ([0, 3, 0, 0], 1), ([0, 0, 0, 3], 1)], &k),
            cubic(&[([3, 0, 0, 0], 1), ([2, 1, 0, 0], 1), ([0, 3, 0, 0], 1), ([0, 0, 0, 3], 1)], &k),
        ];
        for o in &others {
            let search = canonical_g4_iso(&base, o, 2, &k).unwrap().is_some();
            let closure = dege_geometric_iso(&base, o, &k).unwrap();
            assert!(!search || closure);
        }
        assert!(dege_geometric_iso(&base, &base, &k).unwrap());
    }

    #[test]
    fn superspecial_and_ordinary_differ() {
        let k = Field::prime(5).unwrap();
        let ss = cubic(&[([3, 0, 0, 0], 1), ([0, 3, 0, 0], 1), ([0, 0, 0, 3], 1)], &k);
        let other = cubic(&[([3, 0, 0, 0], 1), ([0, 3, 0, 0], 1), ([0, 0, 0, 3], 1), ([0, 1, 1, 1], 1)], &k);
        assert!(!crate::frobenius::hw_canonical_g4(&other, &k).unwrap().is_zero());
        assert!(!dege_geometric_iso(&ss, &other, &k).unwrap());
    }

    #[test]
    fn shift_removes_square_term() {
        let k = Field::prime(7).unwrap();
        // (x + y)^3 + w^3 + y^3 shifts to x^3 + w^3 + y^3
        let a = cubic(&[([3, 0, 0, 0], 1), ([2, 1, 0, 0], 3), ([1, 2, 0, 0], 3), ([0, 3, 0, 0], 2), ([0, 0, 0, 3], 1)], &k);
        let b = cubic(&[([3, 0, 0, 0], 1), ([0, 3, 0, 0], 1), ([0, 0, 0, 3], 1)], &k);
        let (sa, sb) = (shape(&a.cubic, &k).unwrap(), shape(&b.cubic, &k).unwrap());
        assert!(is_zero(&sa.r));
        assert_eq!(sa.s, sb.s);
    }
}
