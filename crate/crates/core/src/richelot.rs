//! Richelot (2,2)-isogenies between genus-2 Jacobians and the walk over the
//! superspecial ones.
//!
//! Curves in the walk are stored by their six Weierstrass points, all
//! rational over `K = F_{p^2}`. A model whose Frobenius is `+-p` has its
//! whole 2-torsion rational, and a Richelot isogeny with rational kernel
//! keeps the Frobenius, so every codomain again has rational points. Seeds
//! are chosen with Frobenius `+-p` (checked by counting points).

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::algebra::{roots, Fe, Field, UniPoly};
use crate::error::{Error, InvalidReason, Result};
use crate::frobenius::cm_poly;
use crate::isomorphy::{affine, binary_points, cross_ratio, extension, infinity, normalize_pt, Pt};
use crate::models::Hyper;

/// Canonical geometric key of six points of `P^1(K)`: over all ordered
/// triples sent to `0, 1, inf`, the least sorted image of the other three.
pub type RosenhainKey = [Fe; 3];

pub fn rosenhain_key(pts: &[Pt; 6], k: &Field) -> RosenhainKey {
    let mut best: Option<RosenhainKey> = None;
    for i in 0..6 {
        for j in 0..6 {
            for l in 0..6 {
                if i == j || j == l || i == l {
                    continue;
                }
                let mut img = [k.zero(); 3];
                let mut n = 0;
                for (m, &x) in pts.iter().enumerate() {
                    if m != i && m != j && m != l {
                        img[n] = cross_ratio(x, pts[i], pts[j], pts[l], k)[0];
                        n += 1;
                    }
                }
                img.sort();
                if best.is_none_or(|b| img < b) {
                    best = Some(img);
                }
            }
        }
    }
    best.expect("six points")
}

/// The Rosenhain points `0, 1, inf, lambda, mu, nu` of a key.
pub fn key_points(key: &RosenhainKey, k: &Field) -> [Pt; 6] {
    [affine(k.zero(), k), affine(k.one(), k), infinity(k), affine(key[0], k), affine(key[1], k), affine(key[2], k)]
}

/// `y^2 = x (x - 1) (x - lambda) (x - mu) (x - nu)`.
pub fn rosenhain_model(key: &RosenhainKey, k: &Field) -> Hyper {
    let rts = [k.zero(), k.one(), key[0], key[1], key[2]];
    Hyper { c: k.one(), f: UniPoly::from_roots(k, &rts), g: 2 }
}

/// Pair partition of six points with its quadratics (index = power of `x`)
/// over `field`.
#[derive(Clone, Debug)]
pub struct Splitting {
    pub field: Field,
    pub pairs: [[usize; 2]; 3],
    pub quads: [[Fe; 3]; 3],
    pub delta: Fe,
}

/// Quotient of a Richelot isogeny.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Codomain {
    /// The sextic `delta^-1 H1 H2 H3` over the base field.
    Curve(Hyper),
    /// Product of elliptic curves, by `j`-invariants (sorted).
    Product([Fe; 2]),
}

fn pair_partitions() -> Vec<[[usize; 2]; 3]> {
    let mut out = Vec::new();
    for b in 1..6 {
        let rest: Vec<usize> = (1..6).filter(|&x| x != b).collect();
        for j in 1..4 {
            let o: Vec<usize> = rest[1..].iter().copied().filter(|&x| x != rest[j]).collect();
            out.push([[0, b], [rest[0], rest[j]], [o[0], o[1]]]);
        }
    }
    out
}

/// Product of the monic linear factors (`1` for the point at infinity) of
/// two points, at `z = 1`.
fn quad_of(a: Pt, b: Pt, k: &Field) -> [Fe; 3] {
    let lin = |p: Pt| if p[1].is_zero() { [k.one(), k.zero()] } else { [k.neg(k.div(p[0], p[1]).unwrap()), k.one()] };
    let (la, lb) = (lin(a), lin(b));
    [k.mul(la[0], lb[0]), k.add(k.mul(la[0], lb[1]), k.mul(la[1], lb[0])), k.mul(la[1], lb[1])]
}

fn det3(m: &[[Fe; 3]; 3], k: &Field) -> Fe {
    let t = |a: usize, b: usize, c: usize| k.mul(m[0][a], k.sub(k.mul(m[1][b], m[2][c]), k.mul(m[1][c], m[2][b])));
    k.add(k.sub(t(0, 1, 2), t(1, 0, 2)), t(2, 0, 1))
}

/// Frobenius-stable pair partitions of the zeros of the degree-6
/// homogenisation of `f` (a quintic has a zero at infinity).
pub fn splittings(f: &UniPoly, k: &Field) -> Result<Vec<Splitting>> {
    if !f.is_separable(k) || !matches!(f.deg(), Some(5 | 6)) {
        return Err(Error::InvalidModel(InvalidReason::Inseparable));
    }
    let d = crate::isomorphy::splitting_degree(&[f], k);
    let (big, emb) = extension(k, d)?;
    let mut pts = binary_points(f, 6, &big, &emb)?;
    for p in pts.iter_mut() {
        *p = normalize_pt(*p, &big);
    }
    let frob: Vec<usize> = pts
        .iter()
        .map(|p| {
            let img = normalize_pt([big.frobenius_n(p[0], k.degree()), big.frobenius_n(p[1], k.degree())], &big);
            pts.iter().position(|q| *q == img).expect("roots are permuted")
        })
        .collect();
    let lead = emb.embed(f.lead(), &big);
    let mut out = Vec::new();
    for part in pair_partitions() {
        let norm = |pr: [usize; 2]| if pr[0] < pr[1] { pr } else { [pr[1], pr[0]] };
        let stable = part.iter().all(|pr| {
            let img = norm([frob[pr[0]], frob[pr[1]]]);
            part.iter().any(|q| norm(*q) == img)
        });
        if !stable {
            continue;
        }
        let mut quads = part.map(|pr| quad_of(pts[pr[0]], pts[pr[1]], &big));
        quads[0] = quads[0].map(|c| big.mul(c, lead));
        let delta = det3(&quads, &big);
        out.push(Splitting { field: big.clone(), pairs: part, quads, delta });
    }
    Ok(out)
}

fn pmul(a: &[Fe], b: &[Fe], k: &Field) -> Vec<Fe> {
    let mut out = vec![k.zero(); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = k.add(out[i + j], k.mul(x, y));
        }
    }
    out
}

fn deriv(g: &[Fe; 3], k: &Field) -> [Fe; 2] {
    [g[1], k.scale(g[2], 2)]
}

/// Codomain of the isogeny with kernel given by `s`, pulled back to `k`.
pub fn codomain(s: &Splitting, k: &Field) -> Result<Codomain> {
    let big = &s.field;
    let emb = if big.degree() == k.degree() {
        crate::algebra::Embedding::identity(k)
    } else {
        crate::algebra::Embedding::new(k, big)?
    };
    if s.delta.is_zero() {
        return product_js(s, k, &emb).map(Codomain::Product);
    }
    let g = &s.quads;
    let mut prod = vec![big.one()];
    for i in 0..3 {
        let (j, l) = ((i + 1) % 3, (i + 2) % 3);
        let a = pmul(&deriv(&g[j], big), &g[l], big);
        let b = pmul(&g[j], &deriv(&g[l], big), big);
        let h: Vec<Fe> = a.iter().zip(&b).map(|(&x, &y)| big.sub(x, y)).collect();
        prod = pmul(&prod, &h, big);
    }
    let inv = big.inv(s.delta)?;
    let mut coeffs = Vec::new();
    for c in prod {
        let c = big.mul(c, inv);
        coeffs.push(emb.coerce(c, k, big).ok_or_else(|| Error::Internal("codomain outside the base field".into()))?);
    }
    let f = UniPoly::from_coeffs(coeffs);
    Ok(Codomain::Curve(Hyper { c: k.one(), f, g: 2 }))
}

/// `j = 256 (l^2 - l + 1)^3 / (l^2 (l - 1)^2)` of the curve branched at
/// four points.
fn j_of_points(p: [Pt; 4], k: &Field) -> Fe {
    let l = cross_ratio(p[3], p[0], p[1], p[2], k)[0];
    let num = k.scale(k.pow(k.add(k.sub(k.sqr(l), l), k.one()), 3), 256);
    let den = k.mul(k.sqr(l), k.sqr(k.sub(l, k.one())));
    k.div(num, den).expect("distinct branch points")
}

/// The `j`-invariants of `E x E'` for a splitting with `delta = 0`. The
/// pencil spanned by the quadratics has two squares `X^2, Z^2`; writing
/// `G_i = a_i X^2 + b_i Z^2` the quotients are branched at
/// `{-b_i/a_i} + {inf}` and `{-b_i/a_i} + {0}`.
fn product_js(s: &Splitting, k: &Field, emb: &crate::algebra::Embedding) -> Result<[Fe; 2]> {
    let (big2, emb2) = extension(&s.field, 2)?;
    let up = |c: Fe| emb2.embed(c, &big2);
    let g: Vec<[Fe; 3]> = s.quads.iter().map(|q| q.map(up)).collect();
    let kk = &big2;
    // two independent members
    let (u, v) = if det2(&g[0], &g[1], kk) { (g[0], g[1]) } else { (g[0], g[2]) };
    // disc(s u + t v) = 0 as a binary quadratic in (s, t)
    let disc = |a: &[Fe; 3], b: &[Fe; 3]| k_disc_bilinear(a, b, kk);
    let (duu, duv, dvv) = (disc(&u, &u), disc(&u, &v), disc(&v, &v));
    // duu s^2 + 2 duv s t + dvv t^2
    let coeffs = UniPoly::from_coeffs(vec![dvv, kk.scale(duv, 2), duu]);
    let mut members: Vec<[Fe; 3]> = Vec::new();
    if duu.is_zero() {
        members.push(u);
    }
    for r in roots(kk, &coeffs) {
        members.push([0, 1, 2].map(|i| kk.add(kk.mul(r, u[i]), v[i])));
    }
    if members.len() != 2 {
        return Err(Error::Internal("degenerate Richelot pencil".into()));
    }
    // square roots up to scalar: the sign-free linear factor
    let lin = |m: &[Fe; 3]| -> [Fe; 2] {
        if m[2].is_zero() {
            [kk.zero(), kk.one()]
        } else {
            [kk.one(), kk.div(m[1], kk.scale(m[2], 2)).unwrap()]
        }
    };
    let (x1, x2) = (lin(&members[0]), lin(&members[1]));
    // X = x1[0] x + x1[1], squares as quadratics
    let sq = |l: [Fe; 2]| [kk.sqr(l[1]), kk.scale(kk.mul(l[0], l[1]), 2), kk.sqr(l[0])];
    let (bx, bz) = (sq(x1), sq(x2));
    let mut branch = Vec::new();
    for gi in &g {
        // gi = a bx + b bz: solve on two independent coordinates
        let (a, b) = solve2(&bx, &bz, gi, kk).ok_or_else(|| Error::Internal("quadratic outside the pencil".into()))?;
        branch.push([kk.neg(b), a]);
    }
    let e1 = j_of_points([branch[0], branch[1], branch[2], infinity(kk)], kk);
    let e2 = j_of_points([branch[0], branch[1], branch[2], affine(kk.zero(), kk)], kk);
    let down = |j: Fe| -> Result<Fe> {
        let j1 = emb2.coerce(j, &s.field, kk).ok_or_else(|| Error::Internal("j outside the field".into()))?;
        emb.coerce(j1, k, &s.field).ok_or_else(|| Error::Internal("j outside the base field".into()))
    };
    let mut js = [down(e1)?, down(e2)?];
    js.sort();
    Ok(js)
}

fn det2(a: &[Fe; 3], b: &[Fe; 3], k: &Field) -> bool {
    (0..3).any(|i| (0..3).any(|j| !k.sub(k.mul(a[i], b[j]), k.mul(a[j], b[i])).is_zero()))
}

/// Polarisation of `c1^2 - 4 c0 c2`.
fn k_disc_bilinear(a: &[Fe; 3], b: &[Fe; 3], k: &Field) -> Fe {
    let t = k.mul(a[1], b[1]);
    let u = k.scale(k.add(k.mul(a[0], b[2]), k.mul(a[2], b[0])), 2);
    k.sub(t, u)
}

fn solve2(x: &[Fe; 3], z: &[Fe; 3], g: &[Fe; 3], k: &Field) -> Option<(Fe, Fe)> {
    for i in 0..3 {
        for j in i + 1..3 {
            let d = k.sub(k.mul(x[i], z[j]), k.mul(x[j], z[i]));
            if d.is_zero() {
                continue;
            }
            let a = k.div(k.sub(k.mul(g[i], z[j]), k.mul(g[j], z[i])), d).ok()?;
            let b = k.div(k.sub(k.mul(x[i], g[j]), k.mul(x[j], g[i])), d).ok()?;
            let ok = (0..3).all(|m| k.add(k.mul(a, x[m]), k.mul(b, z[m])) == g[m]);
            return ok.then_some((a, b));
        }
    }
    None
}

/// `#C(K)` for `c y^2 = f(x)` of genus 2 (both points at infinity counted
/// when `deg f = 6`).
pub fn count_points(h: &Hyper, k: &Field) -> u64 {
    let chi = |v: Fe| -> i64 {
        if v.is_zero() {
            0
        } else if k.is_square(v) {
            1
        } else {
            -1
        }
    };
    let mut n: i64 = 0;
    for x in k.elements() {
        n += 1 + chi(k.mul(h.c, h.f.eval(x, k)));
    }
    n += match h.f.deg() {
        Some(d) if d == 2 * h.g + 2 => 1 + chi(k.mul(h.c, h.f.lead())),
        _ => 1,
    };
    n as u64
}

/// True when the Frobenius of `K` acts as `+-p` (extremal point count).
pub fn frobenius_is_scalar(h: &Hyper, k: &Field) -> bool {
    let q = k.q() as i64;
    let p = k.p() as i64;
    let n = count_points(h, k) as i64;
    let t = q + 1 - n;
    t.abs() == 2 * h.g as i64 * p
}

/// Supersingular Legendre parameters in `k`.
pub fn supersingular_lambdas(k: &Field) -> Vec<Fe> {
    let p = k.p();
    let m = (p - 1) / 2;
    // sum_i C(m, i)^2 l^i
    let mut coeffs = Vec::new();
    let mut c: u64 = 1;
    let md = k.modp();
    for i in 0..=m {
        coeffs.push(k.from_u64(md.mul(c, c)));
        c = md.mul(md.mul(c, (m - i) % p), md.inv(i + 1).unwrap());
    }
    roots(k, &UniPoly::from_coeffs(coeffs))
}

/// Six rational points from a separable `f` of degree 5 or 6 whose roots
/// all lie in `k`.
pub fn rational_points(f: &UniPoly, k: &Field) -> Option<[Pt; 6]> {
    let mut pts: Vec<Pt> = roots(k, f).into_iter().map(|r| affine(r, k)).collect();
    if f.deg() == Some(5) {
        pts.push(infinity(k));
    }
    pts.try_into().ok()
}

/// A superspecial bielliptic curve `y^2 = F(x^2)` with Frobenius `+-p` and
/// all Weierstrass points rational. `F` has roots `s (1, r, 1 + l (r - 1))`
/// with `l` a supersingular Legendre parameter, so `y^2 = F(u)` is
/// supersingular; the other quotient is branched at `{0} + roots(F)`.
pub fn glue_seed(k: &Field) -> Result<Hyper> {
    glue_candidates(k, None).next().ok_or(Error::SeedFailure(k.p()))
}

/// Bielliptic candidates, optionally restricted to quotients with the given
/// `j`-invariants (sorted pair).
pub fn glue_candidates<'a>(k: &'a Field, js: Option<[Fe; 2]>) -> impl Iterator<Item = Hyper> + 'a {
    let lams = supersingular_lambdas(k);
    let lamset: BTreeSet<Fe> = lams.iter().copied().collect();
    let scales = [k.one(), k.non_square()];
    let lams2 = lams.clone();
    lams2.into_iter().flat_map(move |l| {
        let lamset = lamset.clone();
        k.elements().flat_map(move |r| scales.map(|s| (l, r, s))).filter_map(move |(l, r, s)| {
            let rs = [s, k.mul(s, r), k.mul(s, k.add(k.one(), k.mul(l, k.sub(r, k.one()))))];
            if rs.iter().any(|x| x.is_zero()) || rs[0] == rs[1] || rs[1] == rs[2] || rs[0] == rs[2] {
                return None;
            }
            if !rs.iter().all(|&x| k.is_square(x)) {
                return None;
            }
            let pts = [affine(k.zero(), k), affine(rs[0], k), affine(rs[1], k), affine(rs[2], k)];
            let l2 = cross_ratio(pts[3], pts[0], pts[1], pts[2], k)[0];
            if !lamset.contains(&l2) {
                return None;
            }
            if let Some(want) = js {
                let a = j_of_points([pts[1], pts[2], pts[3], infinity(k)], k);
                let b = j_of_points(pts, k);
                let mut got = [a, b];
                got.sort();
                if got != want {
                    return None;
                }
            }
            // F(x^2) = prod (x^2 - r_i)
            let mut f = UniPoly::one(k);
            for &ri in &rs {
                f = f.mul(&UniPoly::from_coeffs(vec![k.neg(ri), k.zero(), k.one()]), k);
            }
            let h = Hyper { c: k.one(), f, g: 2 };
            if !h.f.is_separable(k) {
                return None;
            }
            let h = if frobenius_is_scalar(&h, k) { h } else { return None };
            Some(h)
        })
    })
}

#[derive(Clone, Debug, Default)]
pub struct WalkResult {
    /// Curve classes, by key.
    pub curves: BTreeSet<RosenhainKey>,
    /// Product nodes met along the way.
    pub products: BTreeSet<[Fe; 2]>,
    /// Product nodes that had to be glued back into the walk.
    pub product_expansions: usize,
    pub edges: usize,
}

/// Breadth-first search over Richelot neighbours from the glued seed, with
/// product nodes expanded by gluing only if the curve-only component falls
/// short of `expected`.
pub fn walk(k: &Field, expected: Option<u64>) -> Result<WalkResult> {
    if k.p() < 5 {
        return Err(Error::UnsupportedCharacteristic(k.p()));
    }
    let seed = glue_seed(k)?;
    let mut res = WalkResult::default();
    let mut queue: VecDeque<RosenhainKey> = VecDeque::new();
    let start = rational_points(&seed.f, k).ok_or_else(|| Error::Internal("seed points not rational".into()))?;
    let key = rosenhain_key(&start, k);
    res.curves.insert(key);
    queue.push_back(key);
    let mut expanded: BTreeSet<[Fe; 2]> = BTreeSet::new();
    loop {
        while let Some(node) = queue.pop_front() {
            let model = rosenhain_model(&node, k);
            if !cm_poly(&model.f, 2, k)?.is_zero() {
                return Err(Error::Internal("walk reached a non-superspecial curve".into()));
            }
            for s in splittings(&model.f, k)? {
                res.edges += 1;
                match codomain(&s, k)? {
                    Codomain::Product(js) => {
                        res.products.insert(js);
                    }
                    Codomain::Curve(h) => {
                        let pts = rational_points(&h.f, k).ok_or_else(|| Error::Internal("codomain points not rational".into()))?;
                        let key = rosenhain_key(&pts, k);
                        if res.curves.insert(key) {
                            queue.push_back(key);
                        }
                    }
                }
            }
        }
        let short = expected.is_some_and(|e| (res.curves.len() as u64) < e);
        let Some(js) = res.products.iter().find(|js| !expanded.contains(*js)).copied() else { break };
        if !short {
            break;
        }
        expanded.insert(js);
        res.product_expansions += 1;
        for h in glue_candidates(k, Some(js)) {
            let pts = rational_points(&h.f, k).expect("glued roots are rational");
            let key = rosenhain_key(&pts, k);
            if res.curves.insert(key) {
                queue.push_back(key);
            }
        }
    }
    if let Some(e) = expected {
        if res.curves.len() as u64 != e {
            return Err(Error::CensusIncomplete(format!("walk found {} classes, expected {e}", res.curves.len())));
        }
    }
    Ok(res)
}

/// Neighbour keys of a node (for diagnostics and tests).
pub fn neighbours(key: &RosenhainKey, k: &Field) -> Result<Vec<Codomain>> {
    let model = rosenhain_model(key, k);
    splittings(&model.f, k)?.iter().map(|s| codomain(s, k)).collect()
}

/// Map from key to a representative model, for reporting.
pub fn models(keys: &BTreeSet<RosenhainKey>, k: &Field) -> BTreeMap<RosenhainKey, Hyper> {
    keys.iter().map(|key| (*key, rosenhain_model(key, k))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen_partitions() {
        let parts = pair_partitions();
        assert_eq!(parts.len(), 15);
        let k = Field::new(7, 2).unwrap();
        let f = UniPoly::from_roots(&k, &[k.zero(), k.one(), k.from_u64(2), k.from_u64(3), k.from_u64(4)]);
        let s = splittings(&f, &k).unwrap();
        assert_eq!(s.len(), 15);
        // recomposition
        for sp in &s {
            let prod = pmul(&pmul(&sp.quads[0], &sp.quads[1], &k), &sp.quads[2], &k);
            let want: Vec<Fe> = (0..7).map(|i| if i < 6 { f.coeff(i) } else { k.zero() }).collect();
            assert_eq!(prod, want);
        }
    }

    #[test]
    fn galois_stable_partitions_of_irreducible_sextic() {
        let k = Field::prime(7).unwrap();
        // find an irreducible sextic over F_7
        let f = (0..7u64.pow(3))
            .map(|i| UniPoly::from_u64s(&k, &[i % 7, i / 7 % 7, i / 49, 1, 0, 0, 1]))
            .find(|f| crate::algebra::is_irreducible(f, &k))
            .unwrap();
        // the Frobenius is a 6-cycle; stable partitions are the pairs {r, F^3 r}
        assert_eq!(splittings(&f, &k).unwrap().len(), 1);
    }

    #[test]
    fn seed_and_walk_small_primes() {
        for (p, want) in [(5u64, 1u64), (7, 1), (11, 2), (13, 3)] {
            let k = Field::new(p, 2).unwrap();
            let seed = glue_seed(&k).unwrap();
            assert!(cm_poly(&seed.f, 2, &k).unwrap().is_zero());
            let w = walk(&k, Some(want)).unwrap();
            assert_eq!(w.curves.len() as u64, want);
        }
    }

    #[test]
    fn codomains_are_superspecial_and_dual_step_returns() {
        let k = Field::new(11, 2).unwrap();
        let w = walk(&k, None).unwrap();
        for key in &w.curves {
            for c in neighbours(key, &k).unwrap() {
                if let Codomain::Curve(h) = c {
                    assert!(cm_poly(&h.f, 2, &k).unwrap().is_zero());
                    let pts = rational_points(&h.f, &k).unwrap();
                    let back = neighbours(&rosenhain_key(&pts, &k), &k).unwrap();
                    let home = back.iter().any(|b| match b {
                        Codomain::Curve(g) => rosenhain_key(&rational_points(&g.f, &k).unwrap(), &k) == *key,
                        _ => false,
                    });
                    assert!(home);
                }
            }
        }
    }
}
