//! Reduced-form generators. Each family is a parameter box (a product of
//! slots) indexed in mixed radix with the first slot most significant, so
//! any `[start, end)` range is a chunk and chunks concatenate to the full
//! stream.

use crate::algebra::form::{e3, e4, Exp, HomogForm};
use crate::algebra::{Fe, Field, UniPoly};
use crate::error::{Error, InvalidReason, Result};

use super::{CurveModel, QType, TrigCase};

/// One coordinate block of a parameter box.
#[derive(Clone, Debug)]
pub enum Slot {
    /// An explicit list of value tuples.
    Fixed(Vec<Vec<Fe>>),
    /// Any element of `K`.
    Free,
    /// Any element of `K^x`.
    NonZero,
    /// Any nonzero vector of `K^n`.
    NonZeroVec(usize),
    /// Zero, or a vector of `K^n` whose first nonzero entry is 1.
    Normalized(usize),
}

impl Slot {
    pub(crate) fn width(&self) -> usize {
        match self {
            Slot::Fixed(v) => v.first().map_or(0, Vec::len),
            Slot::Free | Slot::NonZero => 1,
            Slot::NonZeroVec(n) | Slot::Normalized(n) => *n,
        }
    }

    pub(crate) fn size(&self, q: u64) -> u64 {
        match self {
            Slot::Fixed(v) => v.len() as u64,
            Slot::Free => q,
            Slot::NonZero => q - 1,
            Slot::NonZeroVec(n) => q.pow(*n as u32) - 1,
            Slot::Normalized(n) => 1 + (q.pow(*n as u32) - 1) / (q - 1),
        }
    }

    pub(crate) fn decode(&self, idx: u64, k: &Field, out: &mut Vec<Fe>) {
        let q = k.q();
        let digits = |mut v: u64, n: usize, out: &mut Vec<Fe>| {
            let start = out.len();
            out.resize(start + n, Fe::ZERO);
            for i in (0..n).rev() {
                out[start + i] = k.element(v % q);
                v /= q;
            }
        };
        match self {
            Slot::Fixed(v) => out.extend_from_slice(&v[idx as usize]),
            Slot::Free => out.push(k.element(idx)),
            Slot::NonZero => out.push(k.element(idx + 1)),
            Slot::NonZeroVec(n) => digits(idx + 1, *n, out),
            Slot::Normalized(n) => {
                if idx == 0 {
                    out.extend(std::iter::repeat(Fe::ZERO).take(*n));
                    return;
                }
                // leading position 0 first (q^(n-1) vectors), then 1, ...
                let mut rest = idx - 1;
                for lead in 0..*n {
                    let tail = n - lead - 1;
                    let cnt = q.pow(tail as u32);
                    if rest < cnt {
                        out.extend(std::iter::repeat(Fe::ZERO).take(lead));
                        out.push(k.one());
                        digits(rest, tail, out);
                        return;
                    }
                    rest -= cnt;
                }
                unreachable!("index inside slot");
            }
        }
    }
}

/// Which reduced form a box generates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Hyper(usize),
    N1,
    N2,
    Dege3,
    Dege4,
    /// Split node, with the `(x^3 + b1 y^3) z^2` term.
    SplitA,
    /// Split node, no `z^2` part.
    SplitB,
    /// Non-split node, with the cubic `z^2` term.
    NonSplitA,
    /// Non-split node, `(c x^4 + ...) z`.
    NonSplitB,
    /// Non-split node, no `z^2` or `z` part.
    NonSplitC,
    Cusp,
}

impl FamilyKind {
    pub fn tag(self) -> String {
        match self {
            FamilyKind::Hyper(g) => format!("hyper{g}"),
            FamilyKind::N1 => "N1".into(),
            FamilyKind::N2 => "N2".into(),
            FamilyKind::Dege3 => "Dege3".into(),
            FamilyKind::Dege4 => "Dege4".into(),
            FamilyKind::SplitA => "split-a".into(),
            FamilyKind::SplitB => "split-b".into(),
            FamilyKind::NonSplitA => "nonsplit-a".into(),
            FamilyKind::NonSplitB => "nonsplit-b".into(),
            FamilyKind::NonSplitC => "nonsplit-c".into(),
            FamilyKind::Cusp => "cusp".into(),
        }
    }
}

/// An unvalidated member of a family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RawModel {
    Hyper { c: Fe, f: UniPoly, g: usize },
    Canonical { qtype: QType, cubic: HomogForm },
    Trigonal { case: TrigCase, quintic: HomogForm },
}

impl RawModel {
    pub fn validate(self, k: &Field) -> Result<CurveModel> {
        match self {
            RawModel::Hyper { c, f, g } => CurveModel::hyperelliptic(c, f, g, k),
            RawModel::Canonical { qtype, cubic } => CurveModel::canonical(qtype, cubic, k),
            RawModel::Trigonal { case, quintic } => CurveModel::trigonal(case, quintic, k),
        }
    }
}

/// A stream item: a validated model or the reason it was filtered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenItem {
    Model(CurveModel),
    Filtered(InvalidReason),
}

#[derive(Clone, Debug)]
pub struct ParamBox {
    pub kind: FamilyKind,
    pub slots: Vec<Slot>,
    radix: Vec<u64>,
    size: u64,
}

impl ParamBox {
    fn new(kind: FamilyKind, slots: Vec<Slot>, k: &Field) -> Self {
        let q = k.q();
        let radix: Vec<u64> = slots.iter().map(|s| s.size(q)).collect();
        let size = radix.iter().product();
        ParamBox { kind, slots, radix, size }
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    /// Number of parameter values (the sum of slot widths).
    pub fn width(&self) -> usize {
        self.slots.iter().map(Slot::width).sum()
    }

    /// Parameter values at a box index.
    pub fn decode(&self, mut idx: u64, k: &Field) -> Vec<Fe> {
        assert!(idx < self.size, "index outside box");
        let mut parts = vec![0u64; self.slots.len()];
        for i in (0..self.slots.len()).rev() {
            parts[i] = idx % self.radix[i];
            idx /= self.radix[i];
        }
        let mut out = Vec::with_capacity(self.width());
        for (s, &i) in self.slots.iter().zip(&parts) {
            s.decode(i, k, &mut out);
        }
        out
    }

    pub fn raw(&self, idx: u64, k: &Field) -> RawModel {
        build(self.kind, &self.decode(idx, k), k)
    }

    pub fn item(&self, idx: u64, k: &Field) -> Result<GenItem> {
        match self.raw(idx, k).validate(k) {
            Ok(m) => Ok(GenItem::Model(m)),
            Err(Error::InvalidModel(r)) => Ok(GenItem::Filtered(r)),
            Err(e) => Err(e),
        }
    }

    /// Items of the chunk `[start, end)` in order.
    pub fn chunk<'a>(&'a self, start: u64, end: u64, k: &'a Field) -> impl Iterator<Item = Result<GenItem>> + 'a {
        (start..end.min(self.size)).map(move |i| self.item(i, k))
    }
}

fn fixed(vals: &[Fe]) -> Slot {
    Slot::Fixed(vals.iter().map(|&v| vec![v]).collect())
}

/// `c y^2 = x^(2g+2) + b x^(2g) + a_(2g-1) x^(2g-1) + ... + a_0` with
/// `c in {1, eps}` and `b in {0, 1, eps}`. Slots: `c, b, a_(2g-1), ..., a_0`.
pub fn hyper_box(g: usize, k: &Field) -> Result<ParamBox> {
    if (2 * g as u64 + 2) % k.p() == 0 {
        return Err(Error::UnsupportedCharacteristic(k.p()));
    }
    let eps = k.non_square();
    let mut slots = vec![fixed(&[k.one(), eps]), fixed(&[k.zero(), k.one(), eps])];
    slots.extend(std::iter::repeat(Slot::Free).take(2 * g));
    Ok(ParamBox::new(FamilyKind::Hyper(g), slots, k))
}

/// The reduced cubic boxes for the three quadric types; the Dege box of
/// the second shape is only present when `#K = 5`.
pub fn canonical_boxes(k: &Field) -> Vec<ParamBox> {
    let (z, o) = (k.zero(), k.one());
    let eps = k.non_square();
    let mut out = Vec::new();
    let mut s = vec![fixed(&[z, o, eps]), fixed(&[z, o])];
    s.extend(std::iter::repeat(Slot::Free).take(10));
    out.push(ParamBox::new(FamilyKind::N1, s, k));
    let mut s = vec![fixed(&[z, o]), fixed(&[z, o]), Slot::NonZeroVec(2)];
    s.extend(std::iter::repeat(Slot::Free).take(8));
    out.push(ParamBox::new(FamilyKind::N2, s, k));
    let mut s = vec![Slot::NonZero, Slot::NonZero, fixed(&[z, o]), fixed(&[z, o]), Slot::Normalized(5)];
    s.extend(std::iter::repeat(Slot::Free).take(3));
    out.push(ParamBox::new(FamilyKind::Dege3, s, k));
    if k.q() == 5 {
        let mut s = vec![fixed(&[z, o])];
        s.extend(std::iter::repeat(Slot::Free).take(4));
        out.push(ParamBox::new(FamilyKind::Dege4, s, k));
    }
    out
}

/// Values of `b` for the first non-split shape: three values from the
/// cosets of cubes in `F_(q^2)^x` when `q = -1 mod 3`, otherwise only 0.
pub fn nonsplit_b_values(k: &Field) -> Result<Vec<Fe>> {
    if k.q() % 3 != 2 {
        return Ok(vec![k.zero()]);
    }
    // q = -1 mod 3 forces K = F_p, so F_(q^2) = F_p[t]/(t^2 - eps) and
    // r + s t corresponds to the matrix [[r, eps s], [s, r]]
    let big = Field::new(k.p(), 2)?;
    debug_assert_eq!(big.modulus()[0], big.modp().neg(k.eps_prime()));
    let zeta = big.zeta().expect("zeta for degree 2");
    let eps = k.eps();
    let mut out = Vec::new();
    for i in 0..3u128 {
        let mut e = i;
        loop {
            let a = big.pow(zeta, e);
            let (r, s) = (k.from_u64(a.coeff(0)), k.from_u64(a.coeff(1)));
            if !r.is_zero() {
                out.push(k.mul(eps, k.div(s, r)?));
                break;
            }
            e += 3;
        }
    }
    out.sort();
    Ok(out)
}

/// The reduced quintic boxes of all three singularity types.
pub fn trigonal_boxes(k: &Field) -> Result<Vec<ParamBox>> {
    let (z, o) = (k.zero(), k.one());
    let zeta = k.zeta().ok_or_else(|| Error::Argument("trigonal forms need q = p or p^2".into()))?;
    let free = |n: usize| std::iter::repeat(Slot::Free).take(n);
    let mut out = Vec::new();
    let b1 = if k.q() % 3 == 1 { vec![z, o, zeta] } else { vec![z, o] };
    let mut s = vec![fixed(&b1)];
    s.extend(free(11));
    out.push(ParamBox::new(FamilyKind::SplitA, s, k));
    let pairs = vec![vec![z, z], vec![o, z], vec![z, o], vec![o, o], vec![o, zeta]];
    let mut s = vec![Slot::Fixed(pairs)];
    s.extend(free(9));
    out.push(ParamBox::new(FamilyKind::SplitB, s, k));
    let mut s = vec![fixed(&nonsplit_b_values(k)?)];
    s.extend(free(11));
    out.push(ParamBox::new(FamilyKind::NonSplitA, s, k));
    let mut s = vec![fixed(&[o, zeta])];
    s.extend(free(10));
    out.push(ParamBox::new(FamilyKind::NonSplitB, s, k));
    out.push(ParamBox::new(FamilyKind::NonSplitC, free(6).collect(), k));
    let mut s = vec![Slot::NonZero, fixed(&[z, o]), fixed(&[z, o])];
    s.extend(free(9));
    out.push(ParamBox::new(FamilyKind::Cusp, s, k));
    Ok(out)
}

fn form(nvars: usize, deg: usize, terms: Vec<(Exp, Fe)>, k: &Field) -> HomogForm {
    HomogForm::from_terms(nvars, deg, terms, k).expect("generator monomials have the right degree")
}

/// `a_6 x^5 + ... + a_11 y^5` from six values.
fn quintic_tail(a: &[Fe]) -> Vec<(Exp, Fe)> {
    (0..6u8).map(|i| (e3(5 - i, i, 0), a[i as usize])).collect()
}

/// `(a_1 x^4 + ... + a_5 y^4) z` from five values.
fn quartic_z(a: &[Fe]) -> Vec<(Exp, Fe)> {
    (0..5u8).map(|i| (e3(4 - i, i, 1), a[i as usize])).collect()
}

/// Shared shape of the two node cases: `N z^3`, a cubic `z^2` part, then
/// `quartic_z` and `quintic_tail`.
fn node_quintic(n: &[(Exp, Fe)], cubic: Vec<(Exp, Fe)>, a: &[Fe]) -> Vec<(Exp, Fe)> {
    let mut t = n.to_vec();
    t.extend(cubic);
    t.extend(quartic_z(&a[..5]));
    t.extend(quintic_tail(&a[5..]));
    t
}

/// Form of a family from decoded parameter values (in slot order).
pub fn build(kind: FamilyKind, v: &[Fe], k: &Field) -> RawModel {
    let eps = k.non_square();
    let (z, o) = (k.zero(), k.one());
    match kind {
        FamilyKind::Hyper(g) => {
            let mut c = vec![z; 2 * g + 3];
            c[2 * g + 2] = o;
            c[2 * g] = v[1];
            for i in 0..2 * g {
                c[2 * g - 1 - i] = v[2 + i];
            }
            RawModel::Hyper { c: v[0], f: UniPoly::from_coeffs(c), g }
        }
        FamilyKind::N1 => {
            let (b1, b2, a) = (v[0], v[1], &v[2..]);
            let t = vec![
                (e4(2, 1, 0, 0), o),
                (e4(2, 0, 1, 0), b1),
                (e4(1, 0, 2, 0), b2),
                (e4(0, 3, 0, 0), a[0]),
                (e4(0, 2, 1, 0), a[1]),
                (e4(0, 1, 2, 0), a[2]),
                (e4(0, 0, 3, 0), a[3]),
                (e4(0, 2, 0, 1), a[4]),
                (e4(0, 1, 1, 1), a[5]),
                (e4(0, 0, 2, 1), a[6]),
                (e4(0, 1, 0, 2), a[7]),
                (e4(0, 0, 1, 2), a[8]),
                (e4(0, 0, 0, 3), a[9]),
            ];
            RawModel::Canonical { qtype: QType::N1, cubic: form(4, 3, t, k) }
        }
        FamilyKind::N2 => {
            let (b1, b2, a) = (v[0], v[1], &v[2..]);
            let three = k.from_u64(3);
            let me = k.neg(eps);
            // a1..a10 are a[0..10]
            let t = vec![
                (e4(2, 1, 0, 0), a[0]),
                (e4(2, 0, 1, 0), a[1]),
                (e4(1, 2, 0, 0), a[2]),
                (e4(1, 0, 2, 0), k.mul(a[2], me)),
                (e4(0, 3, 0, 0), k.add(b1, a[3])),
                (e4(0, 1, 2, 0), k.add(k.mul(b1, me), k.mul(a[3], k.mul(three, eps)))),
                (e4(0, 2, 1, 0), k.mul(a[4], three)),
                (e4(0, 0, 3, 0), k.mul(a[4], eps)),
                (e4(0, 2, 0, 1), a[5]),
                (e4(0, 1, 1, 1), a[6]),
                (e4(0, 0, 2, 1), b2),
                (e4(0, 1, 0, 2), a[7]),
                (e4(0, 0, 1, 2), a[8]),
                (e4(0, 0, 0, 3), a[9]),
            ];
            RawModel::Canonical { qtype: QType::N2, cubic: form(4, 3, t, k) }
        }
        FamilyKind::Dege3 => {
            // a0, a6, b1, b2, R = (y^2, yz, z^2, zw, w^2), a7, a8, a9
            let (a0, a6, b1, b2) = (v[0], v[1], v[2], v[3]);
            let r = &v[4..9];
            let (a7, a8, a9) = (v[9], v[10], v[11]);
            let t = vec![
                (e4(3, 0, 0, 0), a0),
                (e4(1, 2, 0, 0), r[0]),
                (e4(1, 1, 1, 0), r[1]),
                (e4(1, 0, 2, 0), r[2]),
                (e4(1, 0, 1, 1), r[3]),
                (e4(1, 0, 0, 2), r[4]),
                (e4(0, 3, 0, 0), a6),
                (e4(0, 0, 3, 0), a7),
                (e4(0, 0, 0, 3), a8),
                (e4(0, 1, 2, 0), a9),
                (e4(0, 0, 2, 1), b1),
                (e4(0, 0, 1, 2), b2),
            ];
            RawModel::Canonical { qtype: QType::Dege, cubic: form(4, 3, t, k) }
        }
        FamilyKind::Dege4 => {
            let (b1, a) = (v[0], &v[1..]);
            let t = vec![
                (e4(3, 0, 0, 0), o),
                (e4(1, 2, 0, 0), a[0]),
                (e4(1, 0, 2, 0), a[1]),
                (e4(1, 0, 0, 2), a[2]),
                (e4(1, 1, 1, 0), a[3]),
                (e4(1, 0, 1, 1), b1),
                (e4(0, 2, 1, 0), o),
                (e4(0, 0, 1, 2), o),
            ];
            RawModel::Canonical { qtype: QType::Dege, cubic: form(4, 3, t, k) }
        }
        FamilyKind::SplitA => {
            let n = [(e3(1, 1, 3), o)];
            let cubic = vec![(e3(3, 0, 2), o), (e3(0, 3, 2), v[0])];
            let t = node_quintic(&n, cubic, &v[1..]);
            RawModel::Trigonal { case: TrigCase::SplitNode, quintic: form(3, 5, t, k) }
        }
        FamilyKind::SplitB => {
            let n = [(e3(1, 1, 3), o)];
            let t = node_quintic(&n, Vec::new(), v);
            RawModel::Trigonal { case: TrigCase::SplitNode, quintic: form(3, 5, t, k) }
        }
        FamilyKind::NonSplitA => {
            let n = [(e3(2, 0, 3), o), (e3(0, 2, 3), k.neg(eps))];
            let (b, three) = (v[0], k.from_u64(3));
            // x(x^2 + 3 eps y^2) + b y(3 x^2 + eps y^2)
            let cubic = vec![
                (e3(3, 0, 2), o),
                (e3(1, 2, 2), k.mul(three, eps)),
                (e3(2, 1, 2), k.mul(three, b)),
                (e3(0, 3, 2), k.mul(eps, b)),
            ];
            let t = node_quintic(&n, cubic, &v[1..]);
            RawModel::Trigonal { case: TrigCase::NonSplitNode, quintic: form(3, 5, t, k) }
        }
        FamilyKind::NonSplitB => {
            let n = [(e3(2, 0, 3), o), (e3(0, 2, 3), k.neg(eps))];
            let t = node_quintic(&n, Vec::new(), v);
            RawModel::Trigonal { case: TrigCase::NonSplitNode, quintic: form(3, 5, t, k) }
        }
        FamilyKind::NonSplitC => {
            let mut t = vec![(e3(2, 0, 3), o), (e3(0, 2, 3), k.neg(eps))];
            t.extend(quintic_tail(v));
            RawModel::Trigonal { case: TrigCase::NonSplitNode, quintic: form(3, 5, t, k) }
        }
        FamilyKind::Cusp => {
            // a1, b1, b2, a2..a10
            let (a1, b1, b2, a) = (v[0], v[1], v[2], &v[3..]);
            let mut t = vec![(e3(2, 0, 3), o), (e3(0, 3, 2), a1)];
            t.extend(quartic_z(&[a[0], a[1], a[2], b1, a[3]]));
            t.extend(quintic_tail(&[a[4], a[5], a[6], a[7], b2, a[8]]));
            RawModel::Trigonal { case: TrigCase::Cusp, quintic: form(3, 5, t, k) }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_sizes() {
        let k = Field::prime(5).unwrap();
        let b = canonical_boxes(&k);
        assert_eq!(b[0].size(), 6 * 5u64.pow(10));
        assert_eq!(b[1].size(), 4 * 24 * 5u64.pow(8));
        assert_eq!(b[2].size(), 6_256_000);
        assert_eq!(b[3].size(), 2 * 625);
        let k11 = Field::prime(11).unwrap();
        assert_eq!(hyper_box(4, &k11).unwrap().size(), 6 * 11u64.pow(8));
        assert!(canonical_boxes(&k11).len() == 3);
        assert!(hyper_box(2, &Field::prime(3).unwrap()).is_err());
    }

    #[test]
    fn normalized_slot_is_bijective() {
        let k = Field::prime(3).unwrap();
        let s = Slot::Normalized(3);
        let mut seen = std::collections::BTreeSet::new();
        for i in 0..s.size(3) {
            let mut v = Vec::new();
            s.decode(i, &k, &mut v);
            if let Some(f) = v.iter().find(|x| !x.is_zero()) {
                assert_eq!(*f, k.one());
            }
            assert!(seen.insert(v));
        }
        assert_eq!(seen.len(), 14);
    }

    #[test]
    fn b_values() {
        let k = Field::prime(11).unwrap();
        let b: Vec<u64> = nonsplit_b_values(&k).unwrap().iter().map(|x| x.c0()).collect();
        assert_eq!(b, vec![0, 6, 10]);
        assert_eq!(nonsplit_b_values(&Field::prime(13).unwrap()).unwrap().len(), 1);
        let t13 = trigonal_boxes(&Field::prime(13).unwrap()).unwrap();
        assert_eq!(t13[0].size(), 3 * 13u64.pow(11));
        let t11 = trigonal_boxes(&k).unwrap();
        assert_eq!(t11[0].size(), 2 * 11u64.pow(11));
    }

    #[test]
    fn hyper_member_and_order() {
        let k = Field::prime(5).unwrap();
        let b = hyper_box(2, &k).unwrap();
        assert_eq!(b.decode(0, &k), vec![k.one(), k.zero(), k.zero(), k.zero(), k.zero(), k.zero()]);
        // last slot (a_0) varies fastest
        let v = b.decode(1, &k);
        assert_eq!(v[5], k.one());
        match b.raw(1, &k) {
            RawModel::Hyper { f, .. } => assert_eq!(f.coeff(0), k.one()),
            _ => unreachable!(),
        }
    }

    #[test]
    fn trig_members_match_named_forms() {
        let k = Field::prime(11).unwrap();
        let boxes = trigonal_boxes(&k).unwrap();
        // xyz^3 + x^5 + y^5 lies in the second split-node box with c = (0, 0)
        let sb = &boxes[1];
        let target = HomogForm::from_int_terms(3, 5, &[(e3(1, 1, 3), 1), (e3(5, 0, 0), 1), (e3(0, 5, 0), 1)], &k).unwrap();
        let mut v = vec![k.zero(), k.zero(), k.zero(), k.zero(), k.zero()];
        v.extend([k.one(), k.zero(), k.zero(), k.zero(), k.zero(), k.one()]);
        assert_eq!(build(sb.kind, &v, &k), RawModel::Trigonal { case: TrigCase::SplitNode, quintic: target });
    }
}
