//! Superspecial Howe curves of genus 4, as Howe triples: a superspecial
//! genus-2 curve `C`, a split of its Weierstrass points into two blocks of
//! three, and a point `b` of the x-line such that both genus-1 covers
//! branched over a block plus `b` are supersingular.
//!
//! Strategy B starts from the genus-2 census: for a block `T` the admissible
//! `b` are the preimages of the supersingular Legendre parameters under the
//! Moebius map sending `T` to `0, 1, inf`. Strategy A scans fiber products
//! of two supersingular elliptic curves directly.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::algebra::{Embedding, Fe, Field, UniPoly};
use crate::error::{Error, Result};
use crate::formulas::howe_ratio_string;
use crate::frobenius::{cm_poly, cm_vanishes};
use crate::isomorphy::{affine, apply, binary_points, extension, howe_key, infinity, mobius_from_triple, normalize_pt, HoweKey, HoweTriple, Pt};
use crate::models::{CurveModel, HoweParams, Hyper};
use crate::richelot::{self, key_points, rosenhain_key, rosenhain_model, supersingular_lambdas, Codomain, RosenhainKey};

use super::elliptic::census_elliptic;
use super::genus2::{fmt_key, genus2_keys};
use super::{inv, trace_p2, Census, CensusRecord, Level, ScanStats};

/// Degree over `F_p` of the field holding the points of strategy-A triples
/// (every cubic over `F_(p^2)` splits over its degree-6 extension).
pub const HOWE_FIELD_DEGREE: usize = 12;

#[derive(Clone, Debug)]
pub struct HoweCensus {
    pub census: Census,
    /// One triple per class, keyed by `howe_key` over `field`.
    pub classes: BTreeMap<HoweKey, HoweTriple>,
    pub field: Field,
}

impl HoweCensus {
    pub fn count(&self) -> usize {
        self.classes.len()
    }

    /// Keys of all classes recomputed over `big`, into which `field` embeds.
    pub fn keys_in(&self, big: &Field, emb: &Embedding) -> BTreeSet<HoweKey> {
        self.classes.values().map(|t| howe_key(&embed_triple(t, big, emb), big)).collect()
    }
}

/// Whether two censuses have the same geometric classes, compared in the
/// larger of their two key fields.
pub fn same_classes(a: &HoweCensus, b: &HoweCensus) -> Result<bool> {
    let (small, big) = if a.field.degree() <= b.field.degree() { (a, b) } else { (b, a) };
    let emb = Embedding::new(&small.field, &big.field)?;
    Ok(small.keys_in(&big.field, &emb) == big.classes.keys().cloned().collect::<BTreeSet<_>>())
}

fn embed_triple(t: &HoweTriple, big: &Field, emb: &Embedding) -> HoweTriple {
    let e = |p: Pt| [emb.embed(p[0], big), emb.embed(p[1], big)];
    HoweTriple { curve: t.curve.clone(), blocks: t.blocks.map(|b| b.map(e)), marked: e(t.marked) }
}

/// The ten splits of six indices into two triples (the first holds 0).
pub fn triple_partitions() -> Vec<([usize; 3], [usize; 3])> {
    let mut out = Vec::new();
    for a in 1..6 {
        for b in a + 1..6 {
            let rest: Vec<usize> = (1..6).filter(|&x| x != a && x != b).collect();
            out.push(([0, a, b], [rest[0], rest[1], rest[2]]));
        }
    }
    out
}

/// Points `b` with `y^2 = (x - b) prod_{t in block} (x - t)` supersingular.
pub fn admissible_b(block: [Pt; 3], lams: &[Fe], k: &Field) -> BTreeSet<Pt> {
    let m = mobius_from_triple(block, k).expect("distinct points");
    lams.iter().map(|&l| normalize_pt(apply(&m, affine(l, k), k), k)).collect()
}

/// All Howe triples on the curve with Rosenhain key `key`.
pub fn triples_on(key: &RosenhainKey, lams: &[Fe], k: &Field) -> Vec<HoweTriple> {
    let pts = key_points(key, k);
    let curve = rosenhain_model(key, k);
    let mut out = Vec::new();
    for (a, b) in triple_partitions() {
        let ba = a.map(|i| pts[i]);
        let bb = b.map(|i| pts[i]);
        let sa = admissible_b(ba, lams, k);
        let sb = admissible_b(bb, lams, k);
        for &m in sa.intersection(&sb) {
            out.push(HoweTriple { curve: curve.clone(), blocks: [ba, bb], marked: m });
        }
    }
    out
}

/// The fiber-product model of a triple with points in `k`: `b` is moved
/// to infinity and the first block centred at 0.
pub fn howe_params(t: &HoweTriple, k: &Field) -> Result<HoweParams> {
    let b = normalize_pt(t.marked, k);
    let m = if b[1].is_zero() { [k.one(), k.zero(), k.zero(), k.one()] } else { [k.zero(), k.one(), k.one(), k.neg(b[0])] };
    let mut roots = [[k.zero(); 3]; 2];
    for (i, blk) in t.blocks.iter().enumerate() {
        for (j, &p) in blk.iter().enumerate() {
            let q = normalize_pt(apply(&m, p, k), k);
            if q[1].is_zero() {
                return Err(Error::Internal("marked point on a block".into()));
            }
            roots[i][j] = q[0];
        }
    }
    let third = k.inv(k.from_u64(3))?;
    let centre = |r: &[Fe; 3]| k.mul(k.add(k.add(r[0], r[1]), r[2]), third);
    let depressed = |r: &[Fe; 3], c: Fe| {
        let s = r.map(|x| k.sub(x, c));
        let e2 = k.add(k.add(k.mul(s[0], s[1]), k.mul(s[0], s[2])), k.mul(s[1], s[2]));
        let e3 = k.mul(k.mul(s[0], s[1]), s[2]);
        (e2, k.neg(e3))
    };
    let c1 = centre(&roots[0]);
    let (a1, b1) = depressed(&roots[0], c1);
    let c2 = centre(&roots[1]);
    let (a2, b2) = depressed(&roots[1], c2);
    let h = HoweParams { a1, b1, a2, b2, lambda: k.sub(c2, c1), mu: k.one(), nu: k.one() };
    match CurveModel::howe(h, k)? {
        CurveModel::Howe(h) => Ok(h),
        _ => unreachable!(),
    }
}

/// `#H(K)` from the three quotients: the trace of `H` is the sum of theirs.
fn howe_points(h: &HoweParams, k: &Field) -> Result<u64> {
    let f1 = h.f1(k);
    let f2 = h.f2(k);
    let q = k.q() as i64;
    let e1 = Hyper { c: k.one(), f: f1.clone(), g: 1 };
    let e2 = Hyper { c: k.one(), f: f2.clone(), g: 1 };
    let c = Hyper { c: k.one(), f: f1.mul(&f2, k), g: 2 };
    let tr = |n: u64| q + 1 - n as i64;
    let t = tr(richelot::count_points(&e1, k)) + tr(richelot::count_points(&e2, k)) + tr(richelot::count_points(&c, k));
    Ok((q + 1 - t) as u64)
}

fn fmt_pt(p: Pt, k: &Field) -> String {
    if p[1].is_zero() {
        "inf".into()
    } else {
        k.format(p[0])
    }
}

fn fmt_howe_key(key: &HoweKey, k: &Field) -> String {
    key.0.iter().map(|&p| fmt_pt(p, k)).collect::<Vec<_>>().join(",")
}

fn record(family: &str, p: u64, k: &Field, h: &HoweParams, key: String, hits: u64, extra: Vec<(&str, String)>) -> Result<CensusRecord> {
    let mut invs = vec![("howe_key", key)];
    invs.extend(extra);
    let n = howe_points(h, k)?;
    let t = trace_p2(n, p, 4)?;
    invs.push(("points_p2", n.to_string()));
    invs.push(("trace_p2", t.to_string()));
    Ok(CensusRecord {
        family: family.into(),
        p,
        field_degree: 2,
        model: CurveModel::Howe(*h).serialize(k),
        invariants: inv(&invs),
        class_id: 0,
        level: Level::Geometric,
        raw_hits: hits,
    })
}

fn check_range(p: u64, lo: u64, hi: u64, what: &str) -> Result<()> {
    if !(lo..=hi).contains(&p) || !crate::algebra::is_prime(p) {
        return Err(Error::Argument(format!("{what} needs a prime {lo} <= p <= {hi}, got {p}")));
    }
    Ok(())
}

/// Published class counts `n(p)` of superspecial Howe curves.
pub const HOWE_COUNTS: [(u64, usize); 12] =
    [(11, 4), (13, 3), (17, 10), (19, 4), (23, 33), (29, 45), (31, 59), (37, 41), (41, 105), (43, 79), (47, 235), (53, 167)];

/// Strategy B over `F_(p^2)`, from the genus-2 census.
pub fn census_howe_b(p: u64) -> Result<HoweCensus> {
    census_howe_b_upto(p, 53)
}

/// Strategy B with an explicit upper bound on `p` (at most 199).
pub fn census_howe_b_upto(p: u64, hi: u64) -> Result<HoweCensus> {
    check_range(p, 7, hi.min(199), "Howe strategy B census")?;
    let (k, keys) = genus2_keys(p)?;
    let lams = supersingular_lambdas(&k);
    let mut classes: BTreeMap<HoweKey, (HoweTriple, u64, RosenhainKey)> = BTreeMap::new();
    let mut hits = 0u64;
    for key in &keys {
        for t in triples_on(key, &lams, &k) {
            hits += 1;
            let hk = howe_key(&t, &k);
            classes.entry(hk).or_insert_with(|| (t, 0, *key)).1 += 1;
        }
    }
    let mut records = Vec::new();
    for (hk, (t, n, g2)) in &classes {
        let h = howe_params(t, &k)?;
        records.push(record("howe-b", p, &k, &h, fmt_howe_key(hk, &k), *n, vec![("genus2", fmt_key(g2, &k))])?);
    }
    let census = Census {
        family: "howe-b".into(),
        p,
        field_degree: 2,
        records,
        stats: ScanStats { box_size: hits, survivors: hits, ..Default::default() },
    }
    .finish();
    let classes = classes.into_iter().map(|(hk, (t, _, _))| (hk, t)).collect();
    Ok(HoweCensus { census, classes, field: k })
}

/// Strategy A: for each unordered pair of supersingular classes, scan
/// `lambda in K`, `mu in K^x` (`nu = 1`) and keep the Howe-type parameters
/// whose genus-2 curve `y^2 = f1 f2` is superspecial. Keys live in the
/// degree-12 field over `F_p`.
pub fn census_howe_a(p: u64) -> Result<HoweCensus> {
    check_range(p, 7, 31, "Howe strategy A census")?;
    let ell = census_elliptic(p)?;
    let k = ell.field.clone().expect("p >= 7");
    let (big, emb) = extension(&k, HOWE_FIELD_DEGREE / 2)?;
    let mut classes: BTreeMap<HoweKey, (HoweTriple, u64, HoweParams)> = BTreeMap::new();
    let mut stats = ScanStats::default();
    let ms = &ell.models;
    for i in 0..ms.len() {
        for j in i..ms.len() {
            let ((a1, b1), (a2, b2)) = (ms[i], ms[j]);
            for lambda in k.elements() {
                for mu in k.nonzero_elements() {
                    stats.box_size += 1;
                    let h = HoweParams { a1, b1, a2, b2, lambda, mu, nu: k.one() };
                    let (f1, f2) = (h.f1(&k), h.f2(&k));
                    let f = f1.mul(&f2, &k);
                    if !cm_vanishes(&f, 2, &k)? {
                        stats.rejected += 1;
                        continue;
                    }
                    if let Err(Error::InvalidModel(r)) = CurveModel::howe(h, &k) {
                        *stats.filtered.entry(r).or_default() += 1;
                        continue;
                    }
                    if !cm_poly(&f, 2, &k)?.is_zero() {
                        return Err(Error::Internal("survivor fails the full Cartier–Manin check".into()));
                    }
                    stats.survivors += 1;
                    let t = triple_from_cubics(&f1, &f2, &k, &big, &emb)?;
                    let hk = howe_key(&t, &big);
                    classes.entry(hk).or_insert((t, 0, h)).1 += 1;
                }
            }
        }
    }
    let mut records = Vec::new();
    for (hk, (_, n, h)) in &classes {
        records.push(record("howe-a", p, &k, h, fmt_howe_key(hk, &big), *n, Vec::new())?);
    }
    let census = Census { family: "howe-a".into(), p, field_degree: 2, records, stats }.finish();
    let classes = classes.into_iter().map(|(hk, (t, _, _))| (hk, t)).collect();
    Ok(HoweCensus { census, classes, field: big })
}

fn triple_from_cubics(f1: &UniPoly, f2: &UniPoly, k: &Field, big: &Field, emb: &Embedding) -> Result<HoweTriple> {
    let r1: [Pt; 3] = binary_points(f1, 3, big, emb)?.try_into().expect("three roots");
    let r2: [Pt; 3] = binary_points(f2, 3, big, emb)?.try_into().expect("three roots");
    let curve = Hyper { c: k.one(), f: f1.mul(f2, k), g: 2 };
    Ok(HoweTriple { curve, blocks: [r1, r2], marked: infinity(big) })
}

/// Existence form of strategy B for larger `p`: walks the Richelot graph
/// from the glued seed and stops at the first curve carrying a Howe
/// triple.
pub fn howe_b_exists(p: u64) -> Result<Option<HoweTriple>> {
    check_range(p, 7, 499, "Howe existence check")?;
    let k = Field::new(p, 2)?;
    let lams = supersingular_lambdas(&k);
    let seed = richelot::glue_seed(&k)?;
    let pts = richelot::rational_points(&seed.f, &k).ok_or_else(|| Error::Internal("seed points not rational".into()))?;
    let start = rosenhain_key(&pts, &k);
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(node) = queue.pop_front() {
        if let Some(t) = triples_on(&node, &lams, &k).into_iter().next() {
            if !cm_poly(&t.curve.f, 2, &k)?.is_zero() {
                return Err(Error::Internal("walk reached a non-superspecial curve".into()));
            }
            return Ok(Some(t));
        }
        for c in richelot::neighbours(&node, &k)? {
            if let Codomain::Curve(h) = c {
                let pts = richelot::rational_points(&h.f, &k).ok_or_else(|| Error::Internal("codomain points not rational".into()))?;
                let key = rosenhain_key(&pts, &k);
                if seen.insert(key) {
                    queue.push_back(key);
                }
            }
        }
    }
    Ok(None)
}

/// The `n(p) / (p^3/1152)` column.
pub fn ratio(n: usize, p: u64) -> String {
    howe_ratio_string(n as u64, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::roots;
    use crate::frobenius::shifted_power_root_poly;

    #[test]
    fn ten_partitions() {
        let parts = triple_partitions();
        assert_eq!(parts.len(), 10);
        for (a, b) in parts {
            let mut all: Vec<usize> = a.iter().chain(&b).copied().collect();
            all.sort();
            assert_eq!(all, vec![0, 1, 2, 3, 4, 5]);
        }
    }

    /// The admissible `b` agree with the roots of the shifted-power
    /// polynomial, and `inf` with the supersingularity of the cubic.
    #[test]
    fn moebius_preimages_match_root_polynomial() {
        for p in [11u64, 13, 17] {
            let k = Field::new(p, 2).unwrap();
            let lams = supersingular_lambdas(&k);
            for s in 0..20u64 {
                let r: Vec<Fe> = (0..3).map(|i| k.element((s * 31 + i * 17 + 2) % k.q())).collect();
                if r[0] == r[1] || r[1] == r[2] || r[0] == r[2] {
                    continue;
                }
                let block = [affine(r[0], &k), affine(r[1], &k), affine(r[2], &k)];
                let got = admissible_b(block, &lams, &k);
                let f = UniPoly::from_roots(&k, &r);
                let rp = shifted_power_root_poly(&f, &k).unwrap();
                let mut want: BTreeSet<Pt> =
                    roots(&k, &rp).into_iter().filter(|b| !r.contains(b)).map(|b| affine(b, &k)).collect();
                let fc = f.coeffs();
                // depress to read off A and B for the point at infinity
                let shift = k.div(fc[2], k.from_u64(3)).unwrap();
                let g = f.compose_affine(k.one(), k.neg(shift), &k);
                if crate::frobenius::is_supersingular_elliptic(g.coeff(1), g.coeff(0), &k).unwrap() {
                    want.insert(infinity(&k));
                }
                assert_eq!(got, want, "p = {p}, roots {r:?}");
            }
        }
    }

    #[test]
    fn small_counts() {
        assert_eq!(census_howe_b(7).unwrap().count(), 0);
        assert_eq!(census_howe_b(11).unwrap().count(), 4);
        assert_eq!(census_howe_b(13).unwrap().count(), 3);
    }
}
