//! Isomorphy of canonical genus-4 curves `V(Q, P)` with a common quadric.
//!
//! A witness is a 4x4 matrix `M` with `Q(Mv) = c Q(v)` and a scalar with
//! `P1(Mv) = lambda P2(v) mod Q`. For the cone `2yw + z^2` the vertex is
//! fixed, so `M` is `x -> a x + l(y, z, w)` on top of a similitude `N` of the
//! ternary form; those `N` are the images of `PGL_2` acting on binary
//! quadratics (discriminant form). The other types use a column-by-column
//! backtracking over the similitude conditions.

use crate::algebra::form::{Exp, HomogForm, MonoTable};
use crate::algebra::{Embedding, Fe, Field};
use crate::error::{Error, InvalidReason, Result};
use crate::models::{quadric, reduce_mod_quadric, Canonical, QType};

use super::{extension, pgl2};

#[derive(Clone, Debug)]
pub struct CanonicalWitness {
    pub field: Field,
    /// Substitution matrix, row `i` gives the new `x_i`.
    pub m: [[Fe; 4]; 4],
    pub lambda: Fe,
}

/// Candidate cap for the generic backtracking.
const MAX_GENERIC_FIELD: u64 = 5;

/// Search over `F_{q^d}` (`q` the size of `k`).
pub fn canonical_g4_iso(m1: &Canonical, m2: &Canonical, d: usize, k: &Field) -> Result<Option<CanonicalWitness>> {
    if m1.qtype != m2.qtype {
        return Err(Error::NotComparable(format!("quadric types {} and {}", m1.qtype.tag(), m2.qtype.tag())));
    }
    let (big, emb) = extension(k, d)?;
    let p1 = lift(&m1.cubic, &big, &emb);
    let p2 = lift(&m2.cubic, &big, &emb);
    let found = match m1.qtype {
        QType::Dege => dege_search(&p1, &p2, &big)?,
        _ => generic_search(m1.qtype, &p1, &p2, &big)?,
    };
    match found {
        Some((m, lambda)) => {
            if !verify(m1.qtype, &p1, &p2, &m, lambda, &big) {
                return Err(Error::Internal("canonical witness failed verification".into()));
            }
            Ok(Some(CanonicalWitness { field: big, m, lambda }))
        }
        None => Ok(None),
    }
}

fn lift(f: &HomogForm, big: &Field, emb: &Embedding) -> HomogForm {
    f.map_coeffs(|c| emb.embed(c, big))
}

fn to_rows(m: &[[Fe; 4]; 4]) -> Vec<Vec<Fe>> {
    m.iter().map(|r| r.to_vec()).collect()
}

/// Direct substitution check of both conditions.
pub(crate) fn verify(qtype: QType, p1: &HomogForm, p2: &HomogForm, m: &[[Fe; 4]; 4], lambda: Fe, k: &Field) -> bool {
    let q = quadric(qtype, k);
    let rows = to_rows(m);
    let qm = q.substitute(&rows, k);
    let Some(&(e, c)) = q.terms().first() else { return false };
    let ratio = k.div(qm.coeff(&e), c).unwrap_or(k.zero());
    if ratio.is_zero() || qm != q.scale(ratio, k) {
        return false;
    }
    let lhs = reduce_mod_quadric(&p1.substitute(&rows, k), qtype, k);
    let rhs = reduce_mod_quadric(&p2.scale(lambda, k), qtype, k);
    lhs == rhs && !lambda.is_zero()
}

/// Dense ternary forms in `(y, z, w)`.
struct Tern {
    tabs: Vec<MonoTable>,
}

impl Tern {
    fn new() -> Self {
        Tern { tabs: (0..=3).map(|d| MonoTable::new(3, d)).collect() }
    }
    fn from_form(&self, f: &HomogForm, d: usize, xdeg: u8, k: &Field) -> Vec<Fe> {
        let mut v = vec![k.zero(); self.tabs[d].len()];
        for &(e, c) in f.terms() {
            if e[0] == xdeg {
                let r = self.tabs[d].rank(&[e[1], e[2], e[3], 0]).expect("degree");
                v[r] = c;
            }
        }
        v
    }
    fn deg(&self, v: &[Fe]) -> usize {
        self.tabs.iter().position(|t| t.len() == v.len()).expect("known size")
    }
    fn mul(&self, a: &[Fe], b: &[Fe], k: &Field) -> Vec<Fe> {
        let (da, db) = (self.deg(a), self.deg(b));
        let t = &self.tabs[da + db];
        let mut out = vec![k.zero(); t.len()];
        for (i, &x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let ka = t.key(&self.tabs[da].monos[i]);
            for (j, &y) in b.iter().enumerate() {
                if !y.is_zero() {
                    let r = t.rank_key(ka + t.key(&self.tabs[db].monos[j]));
                    out[r] = k.add(out[r], k.mul(x, y));
                }
            }
        }
        out
    }
    fn axpy(&self, acc: &mut [Fe], s: Fe, a: &[Fe], k: &Field) {
        for (x, &y) in acc.iter_mut().zip(a) {
            *x = k.add(*x, k.mul(s, y));
        }
    }
    /// Remainder modulo `2yw + z^2` (no monomial with `z^2`).
    fn reduce(&self, a: &mut [Fe], k: &Field) {
        let d = self.deg(a);
        let t = &self.tabs[d];
        let m2 = k.neg(k.from_u64(2));
        // monomials are in descending lex order, so higher z powers of a
        // fixed y power come first
        for i in 0..a.len() {
            let e = t.monos[i];
            if e[1] >= 2 && !a[i].is_zero() {
                let c = a[i];
                a[i] = k.zero();
                let r = t.rank(&[e[0] + 1, e[1] - 2, e[2] + 1, 0]).expect("degree");
                a[r] = k.add(a[r], k.mul(c, m2));
            }
        }
    }
    /// `F(N u)`.
    fn subst(&self, a: &[Fe], n: &[[Fe; 3]; 3], k: &Field) -> Vec<Fe> {
        let d = self.deg(a);
        let lin: Vec<Vec<Fe>> = (0..3).map(|i| n[i].to_vec()).collect();
        let mut pows: Vec<Vec<Vec<Fe>>> = Vec::new();
        for l in &lin {
            let mut ps = vec![vec![k.one()]];
            for _ in 0..d {
                let next = self.mul(ps.last().unwrap(), l, k);
                ps.push(next);
            }
            pows.push(ps);
        }
        let mut out = vec![k.zero(); a.len()];
        for (i, &c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.tabs[d].monos[i];
            let t = self.mul(&self.mul(&pows[0][e[0] as usize], &pows[1][e[1] as usize], k), &pows[2][e[2] as usize], k);
            self.axpy(&mut out, c, &t, k);
        }
        out
    }
}

/// The similitude of `2yw + z^2` induced by `g` on binary quadratics
/// `A X^2 + B XY + C Y^2`, `(y, z, w) = (A, B, -2C)`.
fn sym2(g: &[Fe; 4], k: &Field) -> [[Fe; 3]; 3] {
    let half = k.inv(k.from_u64(2)).expect("odd characteristic");
    let mut n = [[k.zero(); 3]; 3];
    for j in 0..3 {
        // basis vector j as (A, B, C)
        let (a, b, c) = match j {
            0 => (k.one(), k.zero(), k.zero()),
            1 => (k.zero(), k.one(), k.zero()),
            _ => (k.zero(), k.zero(), k.neg(half)),
        };
        // substitute X -> g0 X + g1 Y, Y -> g2 X + g3 Y
        let (l1, l2) = ([g[0], g[1]], [g[2], g[3]]);
        let sq = |u: [Fe; 2]| [k.sqr(u[0]), k.scale(k.mul(u[0], u[1]), 2), k.sqr(u[1])];
        let pr = [k.mul(l1[0], l2[0]), k.add(k.mul(l1[0], l2[1]), k.mul(l1[1], l2[0])), k.mul(l1[1], l2[1])];
        let (s1, s2) = (sq(l1), sq(l2));
        let coef: Vec<Fe> = (0..3).map(|i| k.add(k.add(k.mul(a, s1[i]), k.mul(b, pr[i])), k.mul(c, s2[i]))).collect();
        n[0][j] = coef[0];
        n[1][j] = coef[1];
        n[2][j] = k.neg(k.scale(coef[2], 2));
    }
    n
}

fn dege_search(p1: &HomogForm, p2: &HomogForm, k: &Field) -> Result<Option<([[Fe; 4]; 4], Fe)>> {
    let t = Tern::new();
    let c1 = p1.coeff(&[3, 0, 0, 0]);
    let c2 = p2.coeff(&[3, 0, 0, 0]);
    if c1.is_zero() || c2.is_zero() {
        // the vertex lies on the curve
        return Err(Error::InvalidModel(InvalidReason::WrongSingularity));
    }
    let parts = |p: &HomogForm| (t.from_form(p, 1, 2, k), t.from_form(p, 2, 1, k), t.from_form(p, 3, 0, k));
    let (l1, r1, s1) = parts(p1);
    let (l2, mut r2, mut s2) = parts(p2);
    t.reduce(&mut r2, k);
    t.reduce(&mut s2, k);
    let third = k.inv(k.from_u64(3)).map_err(|_| Error::UnsupportedCharacteristic(3))?;
    let ic1 = k.inv(c1)?;
    let ic2 = k.inv(c2)?;
    let alphas: Vec<Fe> = k.nonzero_elements().collect();
    for g in pgl2(k) {
        let n = sym2(&g, k);
        let l1n = t.subst(&l1, &n, k);
        let r1n = t.subst(&r1, &n, k);
        let s1n = t.subst(&s1, &n, k);
        for &a in &alphas {
            let lambda = k.mul(k.mul(c1, k.pow(a, 3)), ic2);
            // l = (a L2 / c2 - L1' / c1) / 3
            let mut l = vec![k.zero(); 3];
            t.axpy(&mut l, k.mul(k.mul(a, ic2), third), &l2, k);
            t.axpy(&mut l, k.neg(k.mul(ic1, third)), &l1n, k);
            let l2f = t.mul(&l, &l, k);
            // x^1: 3 c1 a l^2 + 2 a l L1' + a R1' = lambda R2
            let mut e1 = vec![k.zero(); 6];
            t.axpy(&mut e1, k.mul(k.scale(c1, 3), a), &l2f, k);
            t.axpy(&mut e1, k.scale(a, 2), &t.mul(&l, &l1n, k), k);
            t.axpy(&mut e1, a, &r1n, k);
            t.reduce(&mut e1, k);
            t.axpy(&mut e1, k.neg(lambda), &r2, k);
            if e1.iter().any(|x| !x.is_zero()) {
                continue;
            }
            // x^0: c1 l^3 + l^2 L1' + l R1' + S1' = lambda S2
            let mut e0 = s1n.clone();
            t.axpy(&mut e0, c1, &t.mul(&l2f, &l, k), k);
            t.axpy(&mut e0, k.one(), &t.mul(&l2f, &l1n, k), k);
            t.axpy(&mut e0, k.one(), &t.mul(&l, &r1n, k), k);
            t.reduce(&mut e0, k);
            t.axpy(&mut e0, k.neg(lambda), &s2, k);
            if e0.iter().any(|x| !x.is_zero()) {
                continue;
            }
            let mut m = [[k.zero(); 4]; 4];
            m[0] = [a, l[0], l[1], l[2]];
            for i in 0..3 {
                m[i + 1][1..].copy_from_slice(&n[i]);
            }
            return Ok(Some((m, lambda)));
        }
    }
    Ok(None)
}

/// Symmetric bilinear form `B(u, v)` of the quadric (so `Q(v) = B(v, v)`).
fn bilinear(qtype: QType, k: &Field) -> [[Fe; 4]; 4] {
    let q = quadric(qtype, k);
    let half = k.inv(k.from_u64(2)).expect("odd characteristic");
    let mut b = [[k.zero(); 4]; 4];
    for &(e, c) in q.terms() {
        let vars: Vec<usize> = (0..4).filter(|&v| e[v] > 0).collect();
        if vars.len() == 1 {
            b[vars[0]][vars[0]] = c;
        } else {
            let h = k.mul(c, half);
            b[vars[0]][vars[1]] = h;
            b[vars[1]][vars[0]] = h;
        }
    }
    b
}

fn bform(b: &[[Fe; 4]; 4], u: &[Fe; 4], v: &[Fe; 4], k: &Field) -> Fe {
    let mut acc = k.zero();
    for i in 0..4 {
        if u[i].is_zero() {
            continue;
        }
        for j in 0..4 {
            if !b[i][j].is_zero() && !v[j].is_zero() {
                acc = k.add(acc, k.mul(u[i], k.mul(b[i][j], v[j])));
            }
        }
    }
    acc
}

fn det4(m: &[[Fe; 4]; 4], k: &Field) -> Fe {
    let mut a = *m;
    let mut d = k.one();
    for c in 0..4 {
        let Some(p) = (c..4).find(|&r| !a[r][c].is_zero()) else { return k.zero() };
        if p != c {
            a.swap(p, c);
            d = k.neg(d);
        }
        d = k.mul(d, a[c][c]);
        let inv = k.inv(a[c][c]).expect("pivot");
        for r in c + 1..4 {
            let f = k.mul(a[r][c], inv);
            for cc in c..4 {
                a[r][cc] = k.sub(a[r][cc], k.mul(f, a[c][cc]));
            }
        }
    }
    d
}

/// Backtracking over columns `M e_j` with `B(M e_i, M e_j) = c B(e_i, e_j)`.
/// The scalar `c` runs over square-class representatives.
fn generic_search(qtype: QType, p1: &HomogForm, p2: &HomogForm, k: &Field) -> Result<Option<([[Fe; 4]; 4], Fe)>> {
    if k.q() > MAX_GENERIC_FIELD {
        return Err(Error::Overload(format!("similitude backtracking over F_{}", k.q())));
    }
    let b = bilinear(qtype, k);
    let q = k.q();
    let vecs: Vec<[Fe; 4]> = (0..q.pow(4)).map(|i| [0, 1, 2, 3].map(|j| k.element(i / q.pow(3 - j) % q))).collect();
    let red2 = reduce_mod_quadric(p2, qtype, k);
    let lead = red2.terms().first().map(|t| t.0);
    let Some(lead) = lead else { return Err(Error::InvalidModel(InvalidReason::Reducible)) };
    for c in [k.one(), k.non_square()] {
        let mut cols: Vec<[Fe; 4]> = Vec::new();
        if let Some(hit) = extend(&b, c, &vecs, &mut cols, qtype, p1, &red2, &lead, k) {
            return Ok(Some(hit));
        }
    }
    Ok(None)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    b: &[[Fe; 4]; 4],
    c: Fe,
    vecs: &[[Fe; 4]],
    cols: &mut Vec<[Fe; 4]>,
    qtype: QType,
    p1: &HomogForm,
    red2: &HomogForm,
    lead: &Exp,
    k: &Field,
) -> Option<([[Fe; 4]; 4], Fe)> {
    let j = cols.len();
    if j == 4 {
        let mut m = [[k.zero(); 4]; 4];
        for (col, v) in cols.iter().enumerate() {
            for r in 0..4 {
                m[r][col] = v[r];
            }
        }
        if det4(&m, k).is_zero() {
            return None;
        }
        let lhs = reduce_mod_quadric(&p1.substitute(&to_rows(&m), k), qtype, k);
        let lambda = k.div(lhs.coeff(lead), red2.coeff(lead)).ok()?;
        return (!lambda.is_zero() && lhs == red2.scale(lambda, k)).then_some((m, lambda));
    }
    let want_self = k.mul(c, b[j][j]);
    for v in vecs {
        if v.iter().all(|x| x.is_zero()) || bform(b, v, v, k) != want_self {
            continue;
        }
        let ok = cols.iter().enumerate().all(|(i, u)| bform(b, u, v, k) == k.mul(c, b[i][j]));
        if !ok {
            continue;
        }
        cols.push(*v);
        if let Some(hit) = extend(b, c, vecs, cols, qtype, p1, red2, lead, k) {
            return Some(hit);
        }
        cols.pop();
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::form::e4;

    fn dege(k: &Field, terms: &[(Exp, i64)]) -> Canonical {
        Canonical { qtype: QType::Dege, cubic: HomogForm::from_int_terms(4, 3, terms, k).unwrap() }
    }

    #[test]
    fn sym2_is_a_similitude() {
        let k = Field::prime(7).unwrap();
        let q3 = |v: [Fe; 3]| k.add(k.scale(k.mul(v[0], v[2]), 2), k.sqr(v[1]));
        for g in pgl2(&k).step_by(37) {
            let n = sym2(&g, &k);
            let dd = k.sqr(super::super::det(&g, &k));
            for u in [[1u64, 2, 3], [0, 1, 0], [4, 0, 1]] {
                let u = u.map(|x| k.from_u64(x));
                let nu: [Fe; 3] = [0, 1, 2].map(|i| (0..3).fold(k.zero(), |a, j| k.add(a, k.mul(n[i][j], u[j]))));
                assert_eq!(q3(nu), k.mul(dd, q3(u)));
            }
        }
    }

    #[test]
    fn scaled_cubic_and_identity() {
        let k = Field::prime(5).unwrap();
        let m = dege(&k, &[(e4(3, 0, 0, 0), 1), (e4(0, 3, 0, 0), 1), (e4(0, 0, 0, 3), 1)]);
        let w = canonical_g4_iso(&m, &m, 1, &k).unwrap().unwrap();
        assert_eq!(w.field.degree(), 1);
        let twice = Canonical { cubic: m.cubic.scale(k.from_u64(2), &k), ..m.clone() };
        assert!(canonical_g4_iso(&m, &twice, 1, &k).unwrap().is_some());
        let n1 = Canonical { qtype: QType::N1, ..m.clone() };
        assert!(matches!(canonical_g4_iso(&m, &n1, 1, &k), Err(Error::NotComparable(_))));
    }

    #[test]
    fn fast_path_agrees_with_backtracking() {
        let k = Field::prime(5).unwrap();
        let base = dege(&k, &[(e4(3, 0, 0, 0), 1), (e4(0, 3, 0, 0), 1), (e4(0, 0, 0, 3), 1)]);
        let others = [
            dege(&k, &[(e4(3, 0, 0, 0), 1), (e4(0, 3, 0, 0), 2), (e4(0, 0, 0, 3), 1)]),
            dege(&k, &[(e4(3, 0, 0, 0), 1), (e4(0, 3, 0, 0), 1), (e4(0, 0, 0, 3), 1), (e4(0, 0, 1, 2), 1)]),
            dege(&k, &[(e4(3, 0, 0, 0), 2), (e4(0, 0, 0, 3), 1), (e4(0, 3, 0, 0), 1), (e4(2, 1, 0, 0), 1)]),
        ];
        for o in &others {
            let fast = dege_search(&base.cubic, &o.cubic, &k).unwrap().is_some();
            let slow = generic_search(QType::Dege, &base.cubic, &o.cubic, &k).unwrap().is_some();
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn n1_witness_for_a_coordinate_swap() {
        let k = Field::prime(5).unwrap();
        let p = HomogForm::from_int_terms(4, 3, &[(e4(3, 0, 0, 0), 1), (e4(0, 3, 0, 0), 1), (e4(0, 0, 2, 1), 2)], &k).unwrap();
        // swapping y and z preserves 2xw + 2yz
        let swap = vec![
            vec![k.one(), k.zero(), k.zero(), k.zero()],
            vec![k.zero(), k.zero(), k.one(), k.zero()],
            vec![k.zero(), k.one(), k.zero(), k.zero()],
            vec![k.zero(), k.zero(), k.zero(), k.one()],
        ];
        let m1 = Canonical { qtype: QType::N1, cubic: p.clone() };
        let m2 = Canonical { qtype: QType::N1, cubic: p.substitute(&swap, &k) };
        assert!(canonical_g4_iso(&m1, &m2, 1, &k).unwrap().is_some());
    }
}
