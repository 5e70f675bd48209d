//! Isomorphism tests for every model family, and invariant keys for
//! genus-2 curves and Howe triples.
//!
//! Points of `P^1` are homogeneous pairs `(x : z)`; 2x2 matrices are row
//! major `[a, b, c, d]` acting as `(x, z) -> (a x + b z, c x + d z)`.

mod binary;
mod canonical;
mod cone;
mod howe;
mod igusa;
mod trigonal;

pub use binary::{binary_compose, binary_form_iso, homogenize, BinaryWitness};
pub use canonical::{canonical_g4_iso, CanonicalWitness};
pub use cone::dege_geometric_iso;
pub use howe::{howe_key, howe_triple_iso, HoweKey, HoweTriple};
pub use igusa::{igusa_invariants, igusa_key, igusa_key_from_points, Genus2Key};
pub use trigonal::{trigonal_iso, TrigonalWitness};

use crate::algebra::{factor, Embedding, Fe, Field, UniPoly, MAX_EXT};
use crate::error::{Error, InvalidReason, Result};

/// A point of the projective line.
pub type Pt = [Fe; 2];
/// A 2x2 matrix, row major.
pub type Mat2 = [Fe; 4];

pub fn infinity(k: &Field) -> Pt {
    [k.one(), k.zero()]
}

pub fn affine(x: Fe, k: &Field) -> Pt {
    [x, k.one()]
}

/// Representative `(x : 1)` or `(1 : 0)`.
pub fn normalize_pt(p: Pt, k: &Field) -> Pt {
    if p[1].is_zero() {
        infinity(k)
    } else {
        [k.div(p[0], p[1]).expect("nonzero"), k.one()]
    }
}

#[inline]
pub fn bracket(a: Pt, b: Pt, k: &Field) -> Fe {
    k.sub(k.mul(a[0], b[1]), k.mul(b[0], a[1]))
}

/// The image of `x` under the Moebius map sending `i, j, l` to `0, 1, inf`.
pub fn cross_ratio(x: Pt, i: Pt, j: Pt, l: Pt, k: &Field) -> Pt {
    let num = k.mul(bracket(x, i, k), bracket(j, l, k));
    let den = k.mul(bracket(x, l, k), bracket(j, i, k));
    normalize_pt([num, den], k)
}

pub fn apply(m: &Mat2, p: Pt, k: &Field) -> Pt {
    [k.add(k.mul(m[0], p[0]), k.mul(m[1], p[1])), k.add(k.mul(m[2], p[0]), k.mul(m[3], p[1]))]
}

pub fn mat_mul(a: &Mat2, b: &Mat2, k: &Field) -> Mat2 {
    let e = |x: Fe, y: Fe, z: Fe, w: Fe| k.add(k.mul(x, y), k.mul(z, w));
    [e(a[0], b[0], a[1], b[2]), e(a[0], b[1], a[1], b[3]), e(a[2], b[0], a[3], b[2]), e(a[2], b[1], a[3], b[3])]
}

pub fn det(m: &Mat2, k: &Field) -> Fe {
    k.sub(k.mul(m[0], m[3]), k.mul(m[1], m[2]))
}

/// The adjugate, which inverts up to the scalar `det`.
pub fn adjugate(m: &Mat2, k: &Field) -> Mat2 {
    [m[3], k.neg(m[1]), k.neg(m[2]), m[0]]
}

/// Scale so that the first nonzero entry is one.
pub fn normalize_mat(m: &Mat2, k: &Field) -> Mat2 {
    let lead = m.iter().copied().find(|x| !x.is_zero()).expect("nonzero matrix");
    let s = k.inv(lead).expect("nonzero");
    m.map(|x| k.mul(x, s))
}

/// The Moebius map sending `(1:0), (0:1), (1:1)` to the three given points.
/// `None` if two of them coincide.
pub fn mobius_from_triple(t: [Pt; 3], k: &Field) -> Option<Mat2> {
    let d = bracket(t[0], t[1], k);
    if d.is_zero() {
        return None;
    }
    let alpha = k.div(bracket(t[2], t[1], k), d).ok()?;
    let beta = k.div(bracket(t[0], t[2], k), d).ok()?;
    if alpha.is_zero() || beta.is_zero() {
        return None;
    }
    Some([k.mul(alpha, t[0][0]), k.mul(beta, t[1][0]), k.mul(alpha, t[0][1]), k.mul(beta, t[1][1])])
}

/// The Moebius map sending `src[i]` to `dst[i]`.
pub fn mobius_mapping(src: [Pt; 3], dst: [Pt; 3], k: &Field) -> Option<Mat2> {
    let ms = mobius_from_triple(src, k)?;
    let md = mobius_from_triple(dst, k)?;
    Some(mat_mul(&md, &adjugate(&ms, k), k))
}

/// Representatives of `PGL_2(k)`: `[[a, b], [1, d]]` with `ad != b`, then
/// `[[a, b], [0, 1]]` with `a != 0`.
pub fn pgl2(k: &Field) -> impl Iterator<Item = Mat2> + '_ {
    let q = k.q();
    let upper = (0..q * q * q).filter_map(move |i| {
        let (a, b, d) = (k.element(i / (q * q)), k.element(i / q % q), k.element(i % q));
        let m = [a, b, k.one(), d];
        (!det(&m, k).is_zero()).then_some(m)
    });
    let lower = (q..q * q).map(move |i| [k.element(i / q), k.element(i % q), k.zero(), k.one()]);
    upper.chain(lower)
}

/// Lcm of the degrees of the irreducible factors of the given polynomials.
pub fn splitting_degree(fs: &[&UniPoly], k: &Field) -> usize {
    let mut l = 1usize;
    for f in fs {
        if f.deg().unwrap_or(0) == 0 {
            continue;
        }
        for (g, _) in factor(f, k) {
            let d = g.deg().unwrap();
            l = l / gcd(l, d) * d;
        }
    }
    l
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The degree-`d` extension of `k` with its embedding.
pub fn extension(k: &Field, d: usize) -> Result<(Field, Embedding)> {
    let total = k.degree() * d;
    if total > MAX_EXT {
        return Err(Error::Overload(format!("extension of degree {total} over F_{}", k.p())));
    }
    if d == 1 {
        return Ok((k.clone(), Embedding::identity(k)));
    }
    let big = Field::new(k.p(), total)?;
    let emb = Embedding::new(k, &big)?;
    Ok((big, emb))
}

pub fn embed_poly(f: &UniPoly, big: &Field, emb: &Embedding) -> UniPoly {
    UniPoly::from_coeffs(f.coeffs().iter().map(|&c| emb.embed(c, big)).collect())
}

/// The zeros of the degree-`n` homogenisation of `f` (over `k`), as points
/// over `big`. Errors unless there are exactly `n` distinct ones there.
pub fn binary_points(f: &UniPoly, n: usize, big: &Field, emb: &Embedding) -> Result<Vec<Pt>> {
    let d = f.deg().ok_or(Error::InvalidModel(InvalidReason::Inseparable))?;
    if d + 1 < n {
        return Err(Error::InvalidModel(InvalidReason::Inseparable));
    }
    let fe = embed_poly(f, big, emb);
    let mut pts: Vec<Pt> = crate::algebra::roots(big, &fe).into_iter().map(|r| affine(r, big)).collect();
    if d < n {
        pts.push(infinity(big));
    }
    if pts.len() != n {
        return Err(Error::InvalidModel(InvalidReason::Inseparable));
    }
    Ok(pts)
}

/// Field of definition of a matrix known up to scalar: the normalised
/// matrix pulled back along `emb`, if it lies in the small field.
pub fn descend_mat(m: &Mat2, small: &Field, big: &Field, emb: &Embedding) -> Option<Mat2> {
    let n = normalize_mat(m, big);
    let mut out = [small.zero(); 4];
    for i in 0..4 {
        out[i] = emb.coerce(n[i], small, big)?;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mobius_sends_triples() {
        let k = Field::new(7, 2).unwrap();
        let pts: Vec<Pt> = (0..6).map(|i| affine(k.element(i * 5 + 3), &k)).collect();
        let src = [pts[0], pts[1], infinity(&k)];
        let dst = [pts[3], pts[4], pts[5]];
        let m = mobius_mapping(src, dst, &k).unwrap();
        for i in 0..3 {
            assert_eq!(normalize_pt(apply(&m, src[i], &k), &k), normalize_pt(dst[i], &k));
        }
        let x = pts[2];
        let cr = cross_ratio(x, pts[0], pts[1], pts[3], &k);
        let m2 = mobius_mapping([pts[0], pts[1], pts[3]], [affine(k.zero(), &k), affine(k.one(), &k), infinity(&k)], &k).unwrap();
        assert_eq!(cr, normalize_pt(apply(&m2, x, &k), &k));
    }

    #[test]
    fn pgl2_size() {
        let k = Field::prime(5).unwrap();
        assert_eq!(pgl2(&k).count(), 120);
    }

    #[test]
    fn splitting_of_cubic_times_quadratic() {
        let k = Field::prime(7).unwrap();
        // x^3 - 2 is irreducible mod 7, x^2 + 1 too
        let f = UniPoly::from_i64s(&k, &[-2, 0, 0, 1]);
        let g = UniPoly::from_i64s(&k, &[1, 0, 1]);
        assert_eq!(splitting_degree(&[&f, &g], &k), 6);
        let (big, emb) = extension(&k, 6).unwrap();
        assert_eq!(binary_points(&f, 3, &big, &emb).unwrap().len(), 3);
        assert_eq!(binary_points(&f, 4, &big, &emb).unwrap().len(), 4);
    }
}
