//! Point counts over finite extensions of the base field, used as cheap
//! class fingerprints and for the Frobenius trace check.

use crate::algebra::form::HomogForm;
use crate::algebra::{Embedding, Fe, Field, UniPoly};
use crate::error::Result;
use crate::isomorphy::extension;
use crate::models::{quadric, Canonical, Hyper, TrigCase, Trigonal};
use crate::richelot::count_points;

/// Points of `P^(n-1)(k)` with first nonzero coordinate 1.
pub fn proj_points(n: usize, k: &Field) -> impl Iterator<Item = Vec<Fe>> + '_ {
    let q = k.q();
    (0..n).rev().flat_map(move |lead| {
        // lead = index of the first nonzero coordinate, counted from the end
        let pos = n - 1 - lead;
        (0..q.pow(lead as u32)).map(move |mut i| {
            let mut v = vec![k.zero(); n];
            v[pos] = k.one();
            for j in (pos + 1..n).rev() {
                v[j] = k.element(i % q);
                i /= q;
            }
            v
        })
    })
}

fn embed_form(f: &HomogForm, big: &Field, emb: &Embedding) -> HomogForm {
    f.map_coeffs(|c| emb.embed(c, big))
}

/// Evaluates with per-point power tables.
fn eval(f: &HomogForm, pt: &[Fe], k: &Field) -> Fe {
    let d = f.degree();
    let pw: Vec<Vec<Fe>> = pt
        .iter()
        .map(|&x| {
            let mut v = vec![k.one(); d + 1];
            for i in 1..=d {
                v[i] = k.mul(v[i - 1], x);
            }
            v
        })
        .collect();
    let mut acc = k.zero();
    for &(e, c) in f.terms() {
        let mut t = c;
        for (v, p) in pw.iter().enumerate() {
            if e[v] > 0 {
                t = k.mul(t, p[e[v] as usize]);
            }
        }
        acc = k.add(acc, t);
    }
    acc
}

/// `#C(F_(q^d))` for `c y^2 = f(x)`.
pub fn count_hyper(h: &Hyper, k: &Field, d: usize) -> Result<u64> {
    let (big, emb) = extension(k, d)?;
    let f = UniPoly::from_coeffs(h.f.coeffs().iter().map(|&c| emb.embed(c, &big)).collect());
    Ok(count_points(&Hyper { c: emb.embed(h.c, &big), f, g: h.g }, &big))
}

/// `#V(Q, P)(F_(q^d))` in `P^3`.
pub fn count_canonical(m: &Canonical, k: &Field, d: usize) -> Result<u64> {
    let (big, emb) = extension(k, d)?;
    let q = embed_form(&quadric(m.qtype, k), &big, &emb);
    let p = embed_form(&m.cubic, &big, &emb);
    Ok(proj_points(4, &big).filter(|v| eval(&q, v, &big).is_zero() && eval(&p, v, &big).is_zero()).count() as u64)
}

/// Points of the smooth model of a trigonal quintic over `F_(q^d)`: the
/// plane points off `(0:0:1)` plus the branches there.
pub fn count_trigonal(m: &Trigonal, k: &Field, d: usize) -> Result<u64> {
    let (big, emb) = extension(k, d)?;
    let f = embed_form(&m.quintic, &big, &emb);
    let sing = [big.zero(), big.zero(), big.one()];
    let plane = proj_points(3, &big).filter(|v| v[..] != sing[..] && eval(&f, v, &big).is_zero()).count() as u64;
    let branches = match m.case {
        TrigCase::Cusp => 1,
        _ => {
            // tangent cone: the z^3 part a x^2 + b x y + c y^2
            let c = |e: [u8; 4]| f.coeff(&e);
            let (a, b, cc) = (c([2, 0, 3, 0]), c([1, 1, 3, 0]), c([0, 2, 3, 0]));
            let cone = UniPoly::from_coeffs(vec![cc, b, a]);
            let mut n = crate::algebra::roots(&big, &cone).len() as u64;
            if a.is_zero() {
                n += 1;
            }
            n
        }
    };
    Ok(plane + branches)
}
