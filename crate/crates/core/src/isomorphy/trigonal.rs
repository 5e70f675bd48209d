//! Isomorphy of trigonal quintic models `F(x, y, z)` whose only singular
//! point is `(0:0:1)`.
//!
//! A witness fixes that point, so it has the shape
//! `(x, y, z) -> (B(x, y), e x + f y + s z)`. Writing
//! `F = sum_j z^j G_{5-j}(x, y)` and `H_m = G1_m o B`, the identity
//! `F1 o M = lambda F2` splits by powers of `z`:
//!
//! ```text
//! z^3:  s^3 H2 = lambda G2_2
//! z^2:  s^2 (3 l H2 + H3) = lambda G2_3
//! z^1:  s (3 l^2 H2 + 2 l H3 + H4) = lambda G2_4
//! z^0:  l^3 H2 + l^2 H3 + l H4 + H5 = lambda G2_5
//! ```
//!
//! The tangent cone `G_2` forces `B` to map the zeros of `G2_2` onto those
//! of `G1_2`; for each such `B` the `z^2` row is linear in `(e, f, s)`.

use crate::algebra::form::HomogForm;
use crate::algebra::{roots, Embedding, Fe, Field, UniPoly};
use crate::error::{Error, Result};
use crate::models::Trigonal;

use super::binary::proportional;
use super::{extension, mat_mul, Mat2};

#[derive(Clone, Debug)]
pub struct TrigonalWitness {
    pub field: Field,
    /// Substitution matrix, row `i` gives the new `i`-th variable.
    pub m: [[Fe; 3]; 3],
    pub lambda: Fe,
}

/// Cap on the number of tangent-cone maps tried for a cusp.
const MAX_CUSP_MAPS: u64 = 4_000_000;

/// Search over `F_{q^d}`.
pub fn trigonal_iso(m1: &Trigonal, m2: &Trigonal, d: usize, k: &Field) -> Result<Option<TrigonalWitness>> {
    let (big, emb) = extension(k, d)?;
    let f1 = lift(&m1.quintic, &big, &emb);
    let f2 = lift(&m2.quintic, &big, &emb);
    let g1 = grades(&f1);
    let g2 = grades(&f2);
    let Some(maps) = cone_maps(&g1[2], &g2[2], &big)? else { return Ok(None) };
    for b in maps {
        if let Some((m, lambda)) = try_map(&b, &g1, &g2, &big) {
            let rows: Vec<Vec<Fe>> = m.iter().map(|r| r.to_vec()).collect();
            if f1.substitute(&rows, &big) != f2.scale(lambda, &big) {
                return Err(Error::Internal("trigonal witness failed verification".into()));
            }
            return Ok(Some(TrigonalWitness { field: big, m, lambda }));
        }
    }
    Ok(None)
}

fn lift(f: &HomogForm, big: &Field, emb: &Embedding) -> HomogForm {
    f.map_coeffs(|c| emb.embed(c, big))
}

/// `G_m` for `m = 0..=5`, index = power of `x`.
fn grades(f: &HomogForm) -> Vec<Vec<Fe>> {
    let mut g: Vec<Vec<Fe>> = (0..=5).map(|m| vec![Fe::ZERO; m + 1]).collect();
    for &(e, c) in f.terms() {
        let m = 5 - e[2] as usize;
        g[m][e[0] as usize] = c;
    }
    g
}

fn bmul(a: &[Fe], b: &[Fe], k: &Field) -> Vec<Fe> {
    let mut out = vec![k.zero(); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
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

/// `G(B v)` for every grade at once.
fn compose_all(g: &[Vec<Fe>], b: &Mat2, k: &Field) -> Vec<Vec<Fe>> {
    // B x -> b0 x + b1 y, B y -> b2 x + b3 y; vectors indexed by x power
    let lx = [b[1], b[0]];
    let ly = [b[3], b[2]];
    let mut px = vec![vec![k.one()]];
    let mut py = vec![vec![k.one()]];
    for _ in 0..5 {
        px.push(bmul(px.last().unwrap(), &lx, k));
        py.push(bmul(py.last().unwrap(), &ly, k));
    }
    g.iter()
        .enumerate()
        .map(|(m, gm)| {
            let mut out = vec![k.zero(); m + 1];
            for (i, &c) in gm.iter().enumerate() {
                if !c.is_zero() {
                    axpy(&mut out, c, &bmul(&px[i], &py[m - i], k), k);
                }
            }
            out
        })
        .collect()
}

enum Cone {
    Split([[Fe; 2]; 2]),
    NonSplit { a: Mat2, d: Fe },
    Cusp([Fe; 2]),
}

/// Zeros and type of a binary quadratic `n2 x^2 + n1 x y + n0 y^2`.
fn classify(n: &[Fe], k: &Field) -> Result<Cone> {
    let (n0, n1, n2) = (n[0], n[1], n[2]);
    let disc = k.sub(k.sqr(n1), k.scale(k.mul(n2, n0), 4));
    if n2.is_zero() {
        if n1.is_zero() {
            return Ok(Cone::Cusp([k.one(), k.zero()]));
        }
        return Ok(Cone::Split([[k.one(), k.zero()], [k.neg(n0), n1]]));
    }
    let two_n2 = k.scale(n2, 2);
    if disc.is_zero() {
        return Ok(Cone::Cusp([k.neg(k.div(n1, two_n2)?), k.one()]));
    }
    match k.sqrt(disc) {
        Some(r) => {
            let x1 = k.div(k.sub(r, n1), two_n2)?;
            let x2 = k.div(k.sub(k.neg(r), n1), two_n2)?;
            Ok(Cone::Split([[x1, k.one()], [x2, k.one()]]))
        }
        None => {
            let a = [k.one(), k.div(n1, two_n2)?, k.zero(), k.one()];
            let d = k.div(disc, k.sqr(two_n2))?;
            Ok(Cone::NonSplit { a, d })
        }
    }
}

fn inv2(m: &Mat2, k: &Field) -> Result<Mat2> {
    let det = k.sub(k.mul(m[0], m[3]), k.mul(m[1], m[2]));
    let i = k.inv(det)?;
    Ok([k.mul(m[3], i), k.neg(k.mul(m[1], i)), k.neg(k.mul(m[2], i)), k.mul(m[0], i)])
}

fn cols(a: [Fe; 2], b: [Fe; 2]) -> Mat2 {
    [a[0], b[0], a[1], b[1]]
}

/// All `B` up to scalar with `N1(B v)` proportional to `N2(v)`, or `None`
/// when the two tangent cones have different types over `k`.
fn cone_maps(n1: &[Fe], n2: &[Fe], k: &Field) -> Result<Option<Vec<Mat2>>> {
    let q = k.q();
    let mut out = Vec::new();
    match (classify(n1, k)?, classify(n2, k)?) {
        (Cone::Split(r), Cone::Split(s)) => {
            let rm = cols(r[0], r[1]);
            let si = inv2(&cols(s[0], s[1]), k)?;
            for t in k.nonzero_elements() {
                for d in [[k.one(), k.zero(), k.zero(), t], [k.zero(), t, k.one(), k.zero()]] {
                    out.push(mat_mul(&mat_mul(&rm, &d, k), &si, k));
                }
            }
        }
        (Cone::NonSplit { a: a1, d: d1 }, Cone::NonSplit { a: a2, d: d2 }) => {
            let kappa = k.sqrt(k.div(d1, d2)?).ok_or_else(|| Error::Internal("norm forms not similar".into()))?;
            let c = [k.one(), k.zero(), k.zero(), k.inv(kappa)?];
            let left = mat_mul(&inv2(&a1, k)?, &c, k);
            // multiplication by r + sigma sqrt(d2), (r : sigma) in P^1
            let mut ts: Vec<Mat2> = vec![[k.one(), k.zero(), k.zero(), k.one()]];
            ts.extend(k.elements().map(|r| [r, d2, k.one(), r]));
            let conj = [k.one(), k.zero(), k.zero(), k.neg(k.one())];
            for t in ts {
                for tt in [t, mat_mul(&t, &conj, k)] {
                    out.push(mat_mul(&mat_mul(&left, &tt, k), &a2, k));
                }
            }
        }
        (Cone::Cusp(r), Cone::Cusp(s)) => {
            if q.saturating_mul(q - 1) > MAX_CUSP_MAPS {
                return Err(Error::Overload(format!("cusp maps over F_{q}")));
            }
            let comp = |v: [Fe; 2]| if v[1].is_zero() { [k.zero(), k.one()] } else { [k.one(), k.zero()] };
            let rm = cols(r, comp(r));
            let si = inv2(&cols(s, comp(s)), k)?;
            for u in k.elements() {
                for t in k.nonzero_elements() {
                    out.push(mat_mul(&mat_mul(&rm, &[k.one(), u, k.zero(), t], k), &si, k));
                }
            }
        }
        _ => return Ok(None),
    }
    Ok(Some(out))
}

/// Particular solution and kernel basis of `A x = b`, if consistent.
fn solve(mut a: Vec<Vec<Fe>>, mut b: Vec<Fe>, k: &Field) -> Option<(Vec<Fe>, Vec<Vec<Fe>>)> {
    let (rows, ncols) = (a.len(), a[0].len());
    let mut piv_cols = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        b.swap(r, p);
        let inv = k.inv(a[r][c]).expect("pivot");
        for cc in 0..ncols {
            a[r][cc] = k.mul(a[r][cc], inv);
        }
        b[r] = k.mul(b[r], inv);
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c];
                for cc in 0..ncols {
                    a[i][cc] = k.sub(a[i][cc], k.mul(f, a[r][cc]));
                }
                b[i] = k.sub(b[i], k.mul(f, b[r]));
            }
        }
        piv_cols.push(c);
        r += 1;
    }
    if b[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut x = vec![k.zero(); ncols];
    for (i, &c) in piv_cols.iter().enumerate() {
        x[c] = b[i];
    }
    let mut kernel = Vec::new();
    for free in (0..ncols).filter(|c| !piv_cols.contains(c)) {
        let mut v = vec![k.zero(); ncols];
        v[free] = k.one();
        for (i, &c) in piv_cols.iter().enumerate() {
            v[c] = k.neg(a[i][free]);
        }
        kernel.push(v);
    }
    Some((x, kernel))
}

/// Residuals of the `z^1` and `z^0` rows for given `l` and `s`.
fn residuals(l: &[Fe], s: Fe, rho: Fe, h: &[Vec<Fe>], g2: &[Vec<Fe>], k: &Field) -> Vec<Fe> {
    let l2 = bmul(l, l, k);
    let l3 = bmul(&l2, l, k);
    let mut r1 = h[4].clone();
    axpy(&mut r1, k.from_u64(3), &bmul(&l2, &h[2], k), k);
    axpy(&mut r1, k.from_u64(2), &bmul(l, &h[3], k), k);
    axpy(&mut r1, k.neg(k.mul(rho, k.sqr(s))), &g2[4], k);
    let mut r0 = h[5].clone();
    axpy(&mut r0, k.one(), &bmul(&l3, &h[2], k), k);
    axpy(&mut r0, k.one(), &bmul(&l2, &h[3], k), k);
    axpy(&mut r0, k.one(), &bmul(l, &h[4], k), k);
    axpy(&mut r0, k.neg(k.mul(rho, k.pow(s, 3))), &g2[5], k);
    r1.extend(r0);
    r1
}

fn lagrange(xs: &[Fe], ys: &[Fe], k: &Field) -> UniPoly {
    let mut acc = UniPoly::zero();
    for (i, &xi) in xs.iter().enumerate() {
        let mut basis = UniPoly::one(k);
        let mut den = k.one();
        for (j, &xj) in xs.iter().enumerate() {
            if i != j {
                basis = basis.mul(&UniPoly::from_coeffs(vec![k.neg(xj), k.one()]), k);
                den = k.mul(den, k.sub(xi, xj));
            }
        }
        acc = acc.add(&basis.scale(k.div(ys[i], den).expect("distinct nodes"), k), k);
    }
    acc
}

fn try_map(b: &Mat2, g1: &[Vec<Fe>], g2: &[Vec<Fe>], k: &Field) -> Option<([[Fe; 3]; 3], Fe)> {
    let h = compose_all(g1, b, k);
    let rho = proportional(&h[2], &g2[2], k)?;
    // z^2 row: 3 e (x H2) + 3 f (y H2) - s rho G2_3 = -H3, over the 4
    // coefficients of a binary cubic
    let three = k.from_u64(3);
    let mut a = vec![vec![k.zero(); 3]; 4];
    for i in 0..3 {
        a[i + 1][0] = k.mul(three, h[2][i]);
        a[i][1] = k.mul(three, h[2][i]);
    }
    for i in 0..4 {
        a[i][2] = k.neg(k.mul(rho, g2[3][i]));
    }
    let rhs: Vec<Fe> = h[3].iter().map(|&x| k.neg(x)).collect();
    let (x0, kernel) = solve(a, rhs, k)?;
    let ell = |v: &[Fe]| vec![v[1], v[0]];
    let candidates: Vec<(Vec<Fe>, Fe)> = match kernel.len() {
        0 => vec![(ell(&x0), x0[2])],
        1 => {
            let n = &kernel[0];
            if n[2].is_zero() {
                return None;
            }
            let at = |s: Fe| {
                let t = k.div(k.sub(s, x0[2]), n[2]).expect("nonzero");
                let v: Vec<Fe> = (0..3).map(|i| k.add(x0[i], k.mul(t, n[i]))).collect();
                ell(&v)
            };
            let nodes: Vec<Fe> = (1..=4).map(|i| k.from_u64(i)).collect();
            let samples: Vec<Vec<Fe>> = nodes.iter().map(|&s| residuals(&at(s), s, rho, &h, g2, k)).collect();
            let mut g = UniPoly::zero();
            for c in 0..samples[0].len() {
                let ys: Vec<Fe> = samples.iter().map(|v| v[c]).collect();
                g = g.gcd(&lagrange(&nodes, &ys, k), k);
            }
            let ss: Vec<Fe> = if g.is_zero() { vec![k.one()] } else { roots(k, &g) };
            ss.into_iter().filter(|s| !s.is_zero()).map(|s| (at(s), s)).collect()
        }
        _ => return None,
    };
    for (l, s) in candidates {
        if s.is_zero() || residuals(&l, s, rho, &h, g2, k).iter().any(|x| !x.is_zero()) {
            continue;
        }
        let lambda = k.mul(rho, k.pow(s, 3));
        let m = [[b[0], b[1], k.zero()], [b[2], b[3], k.zero()], [l[1], l[0], s]];
        return Some((m, lambda));
    }
    None
}
