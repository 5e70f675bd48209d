//! Howe triples: a genus-2 curve, a split of its Weierstrass points into two
//! blocks of three, and a marked non-Weierstrass point of the x-line.
//!
//! All points live in one fixed field `H` that contains the base field
//! through a fixed embedding, so keys of different triples compare.

use crate::algebra::{Embedding, Fe, Field};
use crate::models::Hyper;

use super::binary::{binary_compose, homogenize, proportional};
use super::{apply, cross_ratio, descend_mat, mobius_mapping, normalize_pt, Pt};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HoweTriple {
    /// `c y^2 = f(x)` over the base field.
    pub curve: Hyper,
    /// The two blocks, as points over `H`.
    pub blocks: [[Pt; 3]; 2],
    /// Marked point over `H`.
    pub marked: Pt,
}

/// Complete invariant of a triple under Moebius maps over the closure.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HoweKey(pub [Pt; 6]);

impl HoweTriple {
    pub fn points(&self) -> [Pt; 6] {
        let [a, b] = self.blocks;
        [a[0], a[1], a[2], b[0], b[1], b[2]]
    }
}

/// Minimum over ordered pairs `(u, v)` of Weierstrass points of the images
/// of both blocks (the block of `u` first) under the map sending `u`, the
/// marked point and `v` to `0, 1, inf`.
pub fn howe_key(t: &HoweTriple, h: &Field) -> HoweKey {
    let pts = t.points();
    let mut best: Option<[Pt; 6]> = None;
    for u in 0..6 {
        for v in 0..6 {
            if u == v {
                continue;
            }
            let bu = u / 3;
            let map = |x: Pt| cross_ratio(x, pts[u], t.marked, pts[v], h);
            let mut own: Vec<Pt> = t.blocks[bu].iter().map(|&x| map(x)).collect();
            let mut other: Vec<Pt> = t.blocks[1 - bu].iter().map(|&x| map(x)).collect();
            own.sort();
            other.sort();
            let cand = [own[0], own[1], own[2], other[0], other[1], other[2]];
            if best.is_none_or(|b| cand < b) {
                best = Some(cand);
            }
        }
    }
    HoweKey(best.expect("six points"))
}

/// True iff a Moebius map takes the marked point, the Weierstrass points and
/// the block pair of `t2` to those of `t1`. Without `closure` the map must
/// descend to the base field `k` and respect the quadratic twist.
pub fn howe_triple_iso(t1: &HoweTriple, t2: &HoweTriple, closure: bool, k: &Field, h: &Field, emb: &Embedding) -> bool {
    let norm = |b: &[Pt; 3]| {
        let mut v: Vec<Pt> = b.iter().map(|&p| normalize_pt(p, h)).collect();
        v.sort();
        v
    };
    let target = [norm(&t1.blocks[0]), norm(&t1.blocks[1])];
    let marked1 = normalize_pt(t1.marked, h);
    let src = t2.blocks[0];
    let n = 2 * t1.curve.g + 2;
    for (bi, blk) in t1.blocks.iter().enumerate() {
        for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            let Some(m) = mobius_mapping(src, [blk[perm[0]], blk[perm[1]], blk[perm[2]]], h) else { continue };
            if normalize_pt(apply(&m, t2.marked, h), h) != marked1 {
                continue;
            }
            let mut img: Vec<Pt> = t2.blocks[1].iter().map(|&p| normalize_pt(apply(&m, p, h), h)).collect();
            img.sort();
            if img != target[1 - bi] {
                continue;
            }
            if closure {
                return true;
            }
            let Some(mk) = descend_mat(&m, k, h, emb) else { continue };
            let f1: Vec<Fe> = homogenize(&t1.curve.f, n, k);
            let f2: Vec<Fe> = homogenize(&t2.curve.f, n, k);
            let g = binary_compose(&f1, &mk, k);
            if let Some(mu) = proportional(&g, &f2, k) {
                let tw = k.div(k.mul(mu, t2.curve.c), t1.curve.c).expect("units");
                if k.is_square(tw) {
                    return true;
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::UniPoly;
    use crate::isomorphy::{affine, binary_points, extension, infinity};

    fn triple(k: &Field, h: &Field, emb: &Embedding, roots: [i64; 6], marked: Pt) -> HoweTriple {
        let r: Vec<Fe> = roots.iter().map(|&x| k.from_i64(x)).collect();
        let f = UniPoly::from_roots(k, &r);
        let pts = binary_points(&f, 6, h, emb).unwrap();
        let find = |x: i64| *pts.iter().find(|p| p[0] == emb.embed(k.from_i64(x), h)).unwrap();
        HoweTriple {
            curve: Hyper { c: k.one(), f, g: 2 },
            blocks: [[find(roots[0]), find(roots[1]), find(roots[2])], [find(roots[3]), find(roots[4]), find(roots[5])]],
            marked,
        }
    }

    #[test]
    fn swap_and_scaling() {
        let k = Field::prime(11).unwrap();
        let (h, emb) = extension(&k, 2).unwrap();
        let t = triple(&k, &h, &emb, [1, 2, 3, 4, 5, 7], infinity(&h));
        let swapped = HoweTriple { blocks: [t.blocks[1], t.blocks[0]], ..t.clone() };
        assert!(howe_triple_iso(&t, &swapped, false, &k, &h, &emb));
        assert_eq!(howe_key(&t, &h), howe_key(&swapped, &h));
        // x -> 2x
        let s = triple(&k, &h, &emb, [2, 4, 6, 8, 10, 14], infinity(&h));
        assert!(howe_triple_iso(&t, &s, true, &k, &h, &emb));
        assert_eq!(howe_key(&t, &h), howe_key(&s, &h));
        let moved = triple(&k, &h, &emb, [1, 2, 3, 4, 5, 7], affine(emb.embed(k.from_u64(9), &h), &h));
        assert!(!howe_triple_iso(&t, &moved, true, &k, &h, &emb));
        assert_ne!(howe_key(&t, &h), howe_key(&moved, &h));
        let regrouped = triple(&k, &h, &emb, [1, 2, 4, 3, 5, 7], infinity(&h));
        assert_eq!(howe_triple_iso(&t, &regrouped, true, &k, &h, &emb), howe_key(&t, &h) == howe_key(&regrouped, &h));
    }
}
