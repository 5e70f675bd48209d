//! Igusa-Clebsch invariants of genus-2 curves, computed from the six
//! Weierstrass points, and a normalised key for the weighted-projective
//! class `(I2 : I4 : I6 : I10)`.

use crate::algebra::{Fe, Field};
use crate::error::{Error, Result};
use crate::models::Hyper;

use super::{binary_points, bracket, extension, splitting_degree, Pt};

/// Normalised invariant class with weights `(1, 2, 3, 5)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Genus2Key {
    /// `I4/I2^2, I6/I2^3, I10/I2^5`
    Generic([Fe; 3]),
    /// `I2 = 0`: `I6^2/I4^3, I6 I10/I4^4, I10^2/I4^5`
    NoI2([Fe; 3]),
    /// `I2 = I4 = 0`: `I10^3/I6^5`
    NoI4(Fe),
    /// `I2 = I4 = I6 = 0`
    OnlyI10,
}

fn matchings() -> Vec<[(usize, usize); 3]> {
    let mut out = Vec::new();
    for b in 1..6 {
        let rest: Vec<usize> = (1..6).filter(|&x| x != b).collect();
        for j in 1..4 {
            let others: Vec<usize> = rest[1..].iter().copied().filter(|&x| x != rest[j]).collect();
            out.push([(0, b), (rest[0], rest[j]), (others[0], others[1])]);
        }
    }
    out
}

fn triple_splits() -> Vec<([usize; 3], [usize; 3])> {
    let mut out = Vec::new();
    for a in 1..6 {
        for b in a + 1..6 {
            let rest: Vec<usize> = (1..6).filter(|&x| x != a && x != b).collect();
            out.push(([0, a, b], [rest[0], rest[1], rest[2]]));
        }
    }
    out
}

/// `(I2, I4, I6, I10)` of the form with the given zeros (any scaling).
pub fn igusa_invariants(pts: &[Pt; 6], k: &Field) -> [Fe; 4] {
    let mut sq = [[k.zero(); 6]; 6];
    for i in 0..6 {
        for j in 0..6 {
            sq[i][j] = k.sqr(bracket(pts[i], pts[j], k));
        }
    }
    let mut i2 = k.zero();
    for m in matchings() {
        i2 = k.add(i2, m.iter().fold(k.one(), |acc, &(a, b)| k.mul(acc, sq[a][b])));
    }
    let tri = |t: &[usize; 3]| k.mul(k.mul(sq[t[0]][t[1]], sq[t[1]][t[2]]), sq[t[2]][t[0]]);
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let (mut i4, mut i6) = (k.zero(), k.zero());
    for (a, b) in triple_splits() {
        let base = k.mul(tri(&a), tri(&b));
        i4 = k.add(i4, base);
        for p in &perms {
            let cross = (0..3).fold(k.one(), |acc, t| k.mul(acc, sq[a[t]][b[p[t]]]));
            i6 = k.add(i6, k.mul(base, cross));
        }
    }
    let mut i10 = k.one();
    for i in 0..6 {
        for j in i + 1..6 {
            i10 = k.mul(i10, sq[i][j]);
        }
    }
    [i2, i4, i6, i10]
}

fn normal_form(inv: [Fe; 4], k: &Field) -> Genus2Key {
    let [i2, i4, i6, i10] = inv;
    let r = |num: Fe, den: Fe| k.div(num, den).expect("nonzero");
    if !i2.is_zero() {
        Genus2Key::Generic([r(i4, k.pow(i2, 2)), r(i6, k.pow(i2, 3)), r(i10, k.pow(i2, 5))])
    } else if !i4.is_zero() {
        Genus2Key::NoI2([r(k.sqr(i6), k.pow(i4, 3)), r(k.mul(i6, i10), k.pow(i4, 4)), r(k.sqr(i10), k.pow(i4, 5))])
    } else if !i6.is_zero() {
        Genus2Key::NoI4(r(k.pow(i10, 3), k.pow(i6, 5)))
    } else {
        Genus2Key::OnlyI10
    }
}

/// Key from six distinct points over `k` itself.
pub fn igusa_key_from_points(pts: &[Pt; 6], k: &Field) -> Result<Genus2Key> {
    if k.p() < 7 {
        return Err(Error::UnsupportedInvariants(k.p()));
    }
    Ok(normal_form(igusa_invariants(pts, k), k))
}

/// Key of a genus-2 curve over `k`; the invariants are computed in the
/// splitting field and pulled back.
pub fn igusa_key(m: &Hyper, k: &Field) -> Result<Genus2Key> {
    if k.p() < 7 {
        return Err(Error::UnsupportedInvariants(k.p()));
    }
    if m.g != 2 {
        return Err(Error::Argument("igusa_key needs genus 2".into()));
    }
    if !m.f.is_separable(k) {
        return Err(Error::InvalidModel(crate::error::InvalidReason::Inseparable));
    }
    let d = splitting_degree(&[&m.f], k);
    let (big, emb) = extension(k, d)?;
    let pts: [Pt; 6] = binary_points(&m.f, 6, &big, &emb)?.try_into().expect("six points");
    let inv = igusa_invariants(&pts, &big);
    let mut down = [k.zero(); 4];
    for i in 0..4 {
        down[i] = emb.coerce(inv[i], k, &big).ok_or_else(|| Error::Internal("invariant outside the base field".into()))?;
    }
    Ok(normal_form(down, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::UniPoly;

    #[test]
    fn partition_counts() {
        assert_eq!(matchings().len(), 15);
        assert_eq!(triple_splits().len(), 10);
        let mut seen: Vec<Vec<(usize, usize)>> = matchings().iter().map(|m| m.to_vec()).collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 15);
    }

    #[test]
    fn key_is_invariant_under_moebius_and_twist() {
        let k = Field::new(11, 2).unwrap();
        let f = UniPoly::from_i64s(&k, &[3, 1, 0, 5, 0, 2, 1]);
        let m = Hyper { c: k.one(), f: f.clone(), g: 2 };
        let key = igusa_key(&m, &k).unwrap();
        let shifted = Hyper { c: k.one(), f: f.compose_affine(k.one(), k.one(), &k), g: 2 };
        assert_eq!(igusa_key(&shifted, &k).unwrap(), key);
        let twist = Hyper { c: k.non_square(), ..m.clone() };
        assert_eq!(igusa_key(&twist, &k).unwrap(), key);
        // x -> 1/x
        let rev = Hyper { c: k.one(), f: f.reverse(6), g: 2 };
        assert_eq!(igusa_key(&rev, &k).unwrap(), key);
        let other = Hyper { c: k.one(), f: UniPoly::from_i64s(&k, &[1, 0, 0, 0, 0, 1, 1]), g: 2 };
        assert_ne!(igusa_key(&other, &k).unwrap(), key);
        assert!(matches!(igusa_key(&m, &Field::prime(5).unwrap()), Err(Error::UnsupportedInvariants(5))));
    }
}
