//! Canonical genus-4 curves `V(Q, P)` over `F_5`, and the `F_25` family.
//!
//! Every reduced cubic is affine in its decoded parameters, so `G = Q P` is
//! `G_0 + sum v_i G_i` with precomputed `G_i`. The scan walks each box as an
//! odometer, patching `G` when a digit moves, and tests the 16 target
//! coefficients of `G^4 = (G^2)^2` over small integer arrays.

use std::collections::BTreeMap;

use crate::algebra::form::{e4, Exp, HomogForm};
use crate::algebra::{Fe, Field};
use crate::error::{Error, Result};
use crate::frobenius::{g4_targets, hw_canonical_g4, qp};
use crate::isomorphy::{canonical_g4_iso, dege_geometric_iso};
use crate::models::gen::{build, canonical_boxes, ParamBox, RawModel};
use crate::models::{Canonical, CurveModel};
use crate::par::{run_chunks, ChunkLog, ScanConfig};

use super::points::count_canonical;
use super::{inv, trace_p2, Census, CensusRecord, Level, ScanStats};

const P: u32 = 5;

/// Exponent code `a 121 + b 11 + c` of `x^a y^b z^c w^*`.
fn code(e: &Exp) -> usize {
    e[0] as usize * 121 + e[1] as usize * 11 + e[2] as usize
}

fn monos(deg: u8) -> Vec<Exp> {
    let mut out = Vec::new();
    for a in 0..=deg {
        for b in 0..=deg - a {
            for c in 0..=deg - a - b {
                out.push(e4(a, b, c, deg - a - b - c));
            }
        }
    }
    out
}

/// Precomputed data for one box.
struct BoxKernel {
    /// Slot radices and, per slot, the decoded values of every digit.
    radix: Vec<u64>,
    tables: Vec<Vec<Vec<u32>>>,
    /// First coordinate of each slot.
    offset: Vec<usize>,
    /// Dense `G_0` and sparse `G_i` over the 56 quintic monomials.
    g0: Vec<u32>,
    basis: Vec<Vec<(usize, u32)>>,
}

/// Shared tables: quintic codes, quartic-degree-10 codes, target pairs.
struct Shape {
    codes5: Vec<usize>,
    codes10: Vec<usize>,
    /// Per target: `(e, f, multiplicity)` with `e + f` the target, `e <= f`.
    pairs: Vec<Vec<(usize, usize, u64)>>,
}

impl Shape {
    fn new() -> Shape {
        let codes5: Vec<usize> = monos(5).iter().map(code).collect();
        let m10 = monos(10);
        let codes10: Vec<usize> = m10.iter().map(code).collect();
        let mut pairs = Vec::new();
        for t in g4_targets(u64::from(P)) {
            let mut v = Vec::new();
            for e in &m10 {
                if (0..4).all(|i| e[i] <= t[i]) {
                    let f = [t[0] - e[0], t[1] - e[1], t[2] - e[2], t[3] - e[3]];
                    let (ce, cf) = (code(e), code(&f));
                    if ce < cf {
                        v.push((ce, cf, 2));
                    } else if ce == cf {
                        v.push((ce, cf, 1));
                    }
                }
            }
            pairs.push(v);
        }
        Shape { codes5, codes10, pairs }
    }
}

fn dense(f: &HomogForm, shape: &Shape) -> Vec<u32> {
    let mut out = vec![0u32; shape.codes5.len()];
    for (e, c) in f.terms() {
        let r = shape.codes5.iter().position(|&x| x == code(e)).expect("quintic monomial");
        out[r] = c.c0() as u32;
    }
    out
}

fn cubic_of(raw: RawModel) -> Canonical {
    match raw {
        RawModel::Canonical { qtype, cubic } => Canonical { qtype, cubic },
        _ => unreachable!("canonical box"),
    }
}

impl BoxKernel {
    fn new(bx: &ParamBox, shape: &Shape, k: &Field) -> Result<BoxKernel> {
        let w = bx.width();
        let zero = vec![k.zero(); w];
        let c0 = cubic_of(build(bx.kind, &zero, k));
        let g0 = dense(&qp(c0.qtype, &c0.cubic, k)?, shape);
        let mut basis = Vec::with_capacity(w);
        for i in 0..w {
            let mut v = zero.clone();
            v[i] = k.one();
            let c = cubic_of(build(bx.kind, &v, k));
            let g = dense(&qp(c.qtype, &c.cubic, k)?, shape);
            basis.push(g.iter().zip(&g0).enumerate().filter(|(_, (a, b))| a != b).map(|(r, (a, b))| (r, (a + P - b) % P)).collect());
        }
        let mut tables = Vec::new();
        let mut offset = Vec::new();
        let mut at = 0;
        for s in &bx.slots {
            let n = s.size(k.q());
            let mut t = Vec::with_capacity(n as usize);
            for d in 0..n {
                let mut out = Vec::new();
                s.decode(d, k, &mut out);
                t.push(out.iter().map(|x| x.c0() as u32).collect());
            }
            tables.push(t);
            offset.push(at);
            at += s.width();
        }
        let radix = bx.slots.iter().map(|s| s.size(k.q())).collect();
        Ok(BoxKernel { radix, tables, offset, g0, basis })
    }

    fn axpy(&self, g: &mut [u32], coord: usize, delta: u32) {
        for &(r, c) in &self.basis[coord] {
            g[r] = (g[r] + delta * c) % P;
        }
    }

    /// Box indices in `[start, end)` whose `G^4` meets every target.
    fn scan(&self, shape: &Shape, start: u64, end: u64) -> Vec<u64> {
        let mut out = Vec::new();
        if start >= end {
            return out;
        }
        let ns = self.radix.len();
        let mut digits = vec![0u64; ns];
        let mut rest = start;
        for i in (0..ns).rev() {
            digits[i] = rest % self.radix[i];
            rest /= self.radix[i];
        }
        let mut g = self.g0.clone();
        for s in 0..ns {
            for (j, &v) in self.tables[s][digits[s] as usize].iter().enumerate() {
                if v != 0 {
                    self.axpy(&mut g, self.offset[s] + j, v);
                }
            }
        }
        let mut g2 = vec![0u64; 1331];
        let mut nz: Vec<(usize, u64)> = Vec::with_capacity(56);
        for idx in start..end {
            nz.clear();
            for (r, &c) in g.iter().enumerate() {
                if c != 0 {
                    nz.push((shape.codes5[r], u64::from(c)));
                }
            }
            for &c in &shape.codes10 {
                g2[c] = 0;
            }
            for (i, &(ci, gi)) in nz.iter().enumerate() {
                g2[2 * ci] += gi * gi;
                let gi2 = 2 * gi;
                for &(cj, gj) in &nz[i + 1..] {
                    g2[ci + cj] += gi2 * gj;
                }
            }
            let hit = shape.pairs.iter().all(|pairs| {
                let s: u64 = pairs.iter().map(|&(e, f, m)| m * (g2[e] % 5) * (g2[f] % 5)).sum();
                s % u64::from(P) == 0
            });
            if hit {
                out.push(idx);
            }
            if idx + 1 == end {
                break;
            }
            // advance the odometer
            let mut s = ns - 1;
            loop {
                let old = digits[s] as usize;
                digits[s] += 1;
                if digits[s] == self.radix[s] {
                    digits[s] = 0;
                }
                let new = digits[s] as usize;
                for j in 0..self.tables[s][new].len() {
                    let delta = (self.tables[s][new][j] + P - self.tables[s][old][j]) % P;
                    if delta != 0 {
                        self.axpy(&mut g, self.offset[s] + j, delta);
                    }
                }
                if digits[s] != 0 || s == 0 {
                    break;
                }
                s -= 1;
            }
        }
        out
    }
}

/// Concatenated reduced boxes over `F_5` with their kernels.
struct Scanner {
    k: Field,
    boxes: Vec<ParamBox>,
    kernels: Vec<BoxKernel>,
    shape: Shape,
    starts: Vec<u64>,
}

impl Scanner {
    fn new() -> Result<Scanner> {
        let k = Field::prime(u64::from(P))?;
        let boxes = canonical_boxes(&k);
        let shape = Shape::new();
        let kernels = boxes.iter().map(|b| BoxKernel::new(b, &shape, &k)).collect::<Result<Vec<_>>>()?;
        let mut starts = vec![0];
        for b in &boxes {
            starts.push(starts.last().unwrap() + b.size());
        }
        Ok(Scanner { k, boxes, kernels, shape, starts })
    }

    fn total(&self) -> u64 {
        *self.starts.last().unwrap()
    }

    fn scan(&self, start: u64, end: u64) -> Vec<u64> {
        let mut out = Vec::new();
        for (i, kern) in self.kernels.iter().enumerate() {
            let (lo, hi) = (start.max(self.starts[i]), end.min(self.starts[i + 1]));
            if lo < hi {
                let base = self.starts[i];
                out.extend(kern.scan(&self.shape, lo - base, hi - base).into_iter().map(|x| x + base));
            }
        }
        out
    }

    fn raw(&self, idx: u64) -> RawModel {
        let i = self.starts.partition_point(|&s| s <= idx) - 1;
        self.boxes[i].raw(idx - self.starts[i], &self.k)
    }
}

/// Size of the `F_5` scan.
pub fn canonical_scan_size() -> Result<u64> {
    Ok(Scanner::new()?.total())
}

#[derive(Clone, Debug)]
pub struct CanonicalCensus {
    /// Classes over `F_5`; each record carries its `geometric_class`.
    pub census: Census,
    pub geometric_classes: usize,
}

impl CanonicalCensus {
    pub fn count(&self) -> usize {
        self.census.count()
    }
}

/// Closure test on the cone, a search over `F_25` for the other types.
fn geometric(a: &Canonical, b: &Canonical, k: &Field) -> Result<bool> {
    match a.qtype {
        crate::models::QType::Dege => dege_geometric_iso(a, b, k),
        _ => Ok(canonical_g4_iso(a, b, 2, k)?.is_some()),
    }
}

pub fn census_canonical_g4_f5(cfg: &ScanConfig, log: &mut dyn ChunkLog) -> Result<CanonicalCensus> {
    let sc = Scanner::new()?;
    let k = sc.k.clone();
    let hits = run_chunks(sc.total(), cfg, log, |s, e| Ok(sc.scan(s, e)))?;
    let mut stats = ScanStats { box_size: sc.total(), ..Default::default() };
    let mut models = Vec::new();
    for &idx in &hits {
        match sc.raw(idx).validate(&k) {
            Ok(CurveModel::CanonicalG4(m)) => {
                if !hw_canonical_g4(&m, &k)?.is_zero() {
                    return Err(Error::Internal("kernel survivor fails the full Hasse–Witt check".into()));
                }
                models.push(m);
            }
            Ok(_) => unreachable!(),
            Err(Error::InvalidModel(r)) => *stats.filtered.entry(r).or_default() += 1,
            Err(e) => return Err(e),
        }
    }
    stats.survivors = models.len() as u64;
    stats.rejected = stats.box_size - stats.survivors - stats.filtered_total();

    // rational classes, point counts as the prefilter
    let mut reps: Vec<(Canonical, (u64, u64), u64)> = Vec::new();
    for m in models {
        let fp = (count_canonical(&m, &k, 1)?, count_canonical(&m, &k, 2)?);
        let mut found = false;
        for r in reps.iter_mut() {
            if r.0.qtype == m.qtype && r.1 == fp && canonical_g4_iso(&r.0, &m, 1, &k)?.is_some() {
                r.2 += 1;
                found = true;
                break;
            }
        }
        if !found {
            reps.push((m, fp, 1));
        }
    }
    reps.sort_by(|a, b| CurveModel::CanonicalG4(a.0.clone()).serialize(&k).cmp(&CurveModel::CanonicalG4(b.0.clone()).serialize(&k)));

    // geometric classes by union-find
    let mut parent: Vec<usize> = (0..reps.len()).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut i = i;
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for i in 0..reps.len() {
        for j in 0..i {
            if find(&mut parent, i) == find(&mut parent, j) || reps[i].0.qtype != reps[j].0.qtype {
                continue;
            }
            if geometric(&reps[j].0, &reps[i].0, &k)? {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut geo_ids = BTreeMap::new();
    let mut records = Vec::new();
    for (i, (m, fp, n)) in reps.iter().enumerate() {
        let root = find(&mut parent, i);
        let next = geo_ids.len();
        let gid = *geo_ids.entry(root).or_insert(next);
        let t = trace_p2(fp.1, 5, 4)?;
        records.push(CensusRecord {
            family: "canonical4-f5".into(),
            p: 5,
            field_degree: 1,
            model: CurveModel::CanonicalG4(m.clone()).serialize(&k),
            invariants: inv(&[
                ("qtype", m.qtype.tag().to_string()),
                ("points_p", fp.0.to_string()),
                ("points_p2", fp.1.to_string()),
                ("trace_p2", t.to_string()),
                ("geometric_class", gid.to_string()),
            ]),
            class_id: 0,
            level: Level::Rational,
            raw_hits: *n,
        });
    }
    let census = Census { family: "canonical4-f5".into(), p: 5, field_degree: 1, records, stats }.finish();
    Ok(CanonicalCensus { census, geometric_classes: geo_ids.len() })
}

/// `P = x^3 + a1 y^3 + a2 w^3 + a3 z w^2` on the cone `2yw + z^2`.
pub fn f25_member(a: [Fe; 3], k: &Field) -> Result<HomogForm> {
    HomogForm::from_terms(4, 3, [(e4(3, 0, 0, 0), k.one()), (e4(0, 3, 0, 0), a[0]), (e4(0, 0, 0, 3), a[1]), (e4(0, 0, 1, 2), a[2])], k)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FamilyReport {
    pub checked: u64,
    /// Parameters of members that are singular or not superspecial.
    pub failures: Vec<String>,
}

impl FamilyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks every member `a1, a2 in F_25^x`, `a3 in F_25` for smoothness and
/// a vanishing Hasse–Witt matrix.
pub fn verify_canonical_family_f25() -> Result<FamilyReport> {
    let k = Field::new(5, 2)?;
    let nz: Vec<Fe> = k.nonzero_elements().collect();
    let all: Vec<Fe> = k.elements().collect();
    let mut rep = FamilyReport::default();
    for &a1 in &nz {
        for &a2 in &nz {
            for &a3 in &all {
                rep.checked += 1;
                let cubic = f25_member([a1, a2, a3], &k)?;
                let ok = match CurveModel::canonical(crate::models::QType::Dege, cubic, &k) {
                    Ok(CurveModel::CanonicalG4(m)) => hw_canonical_g4(&m, &k)?.is_zero(),
                    Ok(_) => unreachable!(),
                    Err(Error::InvalidModel(_)) => false,
                    Err(e) => return Err(e),
                };
                if !ok {
                    rep.failures.push(format!("{},{},{}", k.format(a1), k.format(a2), k.format(a3)));
                }
            }
        }
    }
    Ok(rep)
}
