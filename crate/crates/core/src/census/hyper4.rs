//! Rational census of hyperelliptic curves `c y^2 = f(x)` in the reduced
//! form `f = x^(2g+2) + b x^(2g) + a_(2g-1) x^(2g-1) + ... + a_0`.
//!
//! The Cartier–Manin matrix does not involve `c`, so the scan runs over
//! `f` only. For small `p` the lowest targets `x^(p-j)` have degree below
//! `4g - 4`, where `[x^t] f^m` is affine in the top two free coefficients:
//! with `f = h + s x^(2g-2) + r x^(2g-1)`,
//!
//! `[x^t] f^m = [x^t] h^m + m s [x^(t-2g+2)] h^(m-1) + m r [x^(t-2g+1)] h^(m-1)`.
//!
//! So each prefix `(b, a_(2g-3), ..., a_0)` needs one truncated power and a
//! tiny linear solve, and only solutions get the full check.

use crate::algebra::Field;
use crate::error::{Error, Result};
use crate::frobenius::{cm_poly, cm_vanishes};
use crate::isomorphy::binary_form_iso;
use crate::models::gen::{hyper_box, RawModel};
use crate::models::{CurveModel, Hyper};
use crate::par::{run_chunks, ChunkLog, ScanConfig};

use super::points::count_hyper;
use super::{inv, trace_p2, Census, CensusRecord, Level, ScanStats};

/// Whether the linear kernel applies to `(g, p)`.
pub fn kernel_applies(g: usize, p: u64) -> bool {
    g >= 3 && p > 2 && !low_targets(g, p).is_empty()
}

/// Low targets `x^(p i - j)` of degree at most `4g - 5`.
fn low_targets(g: usize, p: u64) -> Vec<usize> {
    let mut t = Vec::new();
    for i in 1..=g {
        for j in 1..=g {
            let e = p as usize * i;
            if e > j && e - j <= 4 * g - 5 {
                t.push(e - j);
            }
        }
    }
    t
}

struct Kernel {
    g: usize,
    p: u32,
    m: u32,
    eps: u32,
    targets: Vec<usize>,
    /// number of prefix coefficients `a_(2g-3) .. a_0`
    nrest: u32,
    len: usize,
}

impl Kernel {
    fn new(g: usize, k: &Field) -> Kernel {
        let p = k.p() as u32;
        Kernel {
            g,
            p,
            m: (p - 1) / 2,
            eps: k.eps_prime() as u32,
            targets: low_targets(g, k.p()),
            nrest: 2 * g as u32 - 2,
            len: 4 * g - 4,
        }
    }

    fn prefix_count(&self) -> u64 {
        3 * u64::from(self.p).pow(self.nrest)
    }

    fn mul(&self, a: &[u32], b: &[u32], out: &mut [u32]) {
        let n = self.len;
        for (i, o) in out.iter_mut().enumerate().take(n) {
            let mut s: u32 = 0;
            for j in 0..=i {
                s += a[j] * b[i - j];
            }
            *o = s % self.p;
        }
    }

    /// Pairs `(s, r)` solving the low-target equations for prefix `pi`,
    /// as box indices of the `c = 1` members.
    fn solve(&self, pi: u64, out: &mut Vec<u64>) {
        let (p, g) = (self.p, self.g);
        let rest_size = u64::from(p).pow(self.nrest);
        let bi = pi / rest_size;
        let rest = pi % rest_size;
        let bval = [0, 1, self.eps][bi as usize];
        let mut h = vec![0u32; self.len];
        // a_0 is the fastest digit
        let mut r = rest;
        for i in 0..self.nrest as usize {
            h[i] = (r % u64::from(p)) as u32;
            r /= u64::from(p);
        }
        if 2 * g < self.len {
            h[2 * g] = bval;
        }
        if 2 * g + 2 < self.len {
            h[2 * g + 2] = 1;
        }
        let mut pw = h.clone();
        let mut prev = vec![0u32; self.len];
        prev[0] = 1;
        let mut tmp = vec![0u32; self.len];
        for _ in 1..self.m {
            prev.copy_from_slice(&pw);
            self.mul(&pw, &h, &mut tmp);
            std::mem::swap(&mut pw, &mut tmp);
        }
        // equation: c0 + al * s + be * r = 0
        let lo_s = 2 * g - 2;
        let lo_r = 2 * g - 1;
        let eqs: Vec<(u32, u32, u32)> = self
            .targets
            .iter()
            .map(|&t| {
                let c0 = pw[t];
                let al = if t >= lo_s { self.m * prev[t - lo_s] % p } else { 0 };
                let be = if t >= lo_r { self.m * prev[t - lo_r] % p } else { 0 };
                (c0, al, be)
            })
            .collect();
        for s in 0..p {
            let mut fixed: Option<u32> = None;
            let mut ok = true;
            for &(c0, al, be) in &eqs {
                let lhs = (c0 + al * s) % p;
                if be == 0 {
                    if lhs != 0 {
                        ok = false;
                        break;
                    }
                } else {
                    let v = (p - lhs) % p * inv_mod(be, p) % p;
                    match fixed {
                        Some(f) if f != v => {
                            ok = false;
                            break;
                        }
                        _ => fixed = Some(v),
                    }
                }
            }
            if !ok {
                continue;
            }
            let rs: Vec<u32> = match fixed {
                Some(v) => vec![v],
                None => (0..p).collect(),
            };
            for rv in rs {
                let top = (bi * u64::from(p) + u64::from(rv)) * u64::from(p) + u64::from(s);
                out.push(top * rest_size + rest);
            }
        }
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let (mut b, mut e) = (u64::from(a), p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % u64::from(p);
        }
        b = b * b % u64::from(p);
        e >>= 1;
    }
    r as u32
}

/// Box indices (with `c = 1`) whose polynomial passes the full
/// Cartier–Manin check, over a range of the scan space.
fn scan_range(g: usize, k: &Field, start: u64, end: u64) -> Result<Vec<u64>> {
    let bx = hyper_box(g, k)?;
    let mut out = Vec::new();
    if kernel_applies(g, k.p()) {
        let kern = Kernel::new(g, k);
        let mut cand = Vec::new();
        for pi in start..end {
            cand.clear();
            kern.solve(pi, &mut cand);
            for &idx in &cand {
                if full_check(&bx.raw(idx, k), k)? {
                    out.push(idx);
                }
            }
        }
    } else {
        for idx in start..end {
            let raw = bx.raw(idx, k);
            let RawModel::Hyper { f, .. } = &raw else { unreachable!() };
            if cm_vanishes(f, g, k)? && full_check(&raw, k)? {
                out.push(idx);
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

fn full_check(raw: &RawModel, k: &Field) -> Result<bool> {
    let RawModel::Hyper { f, g, .. } = raw else { unreachable!() };
    Ok(cm_poly(f, *g, k)?.is_zero())
}

/// Size of the scan space: prefixes for the kernel, `c = 1` half of the
/// box otherwise.
pub fn scan_size(g: usize, k: &Field) -> Result<u64> {
    if kernel_applies(g, k.p()) {
        Ok(Kernel::new(g, k).prefix_count())
    } else {
        Ok(hyper_box(g, k)?.size() / 2)
    }
}

pub fn census_hyper(g: usize, p: u64, cfg: &ScanConfig, log: &mut dyn ChunkLog) -> Result<Census> {
    let k = Field::prime(p)?;
    let bx = hyper_box(g, &k)?;
    let half = bx.size() / 2;
    let total = scan_size(g, &k)?;
    let mut hits = run_chunks(total, cfg, log, |s, e| scan_range(g, &k, s, e))?;
    hits.sort_unstable();
    hits.dedup();
    let mut stats = ScanStats { box_size: bx.size(), ..Default::default() };
    let mut models: Vec<Hyper> = Vec::new();
    for &idx in &hits {
        for c_off in [0, half] {
            match bx.raw(idx + c_off, &k).validate(&k) {
                Ok(CurveModel::Hyperelliptic(h)) => models.push(h),
                Ok(_) => unreachable!(),
                Err(Error::InvalidModel(r)) => *stats.filtered.entry(r).or_default() += 1,
                Err(e) => return Err(e),
            }
        }
    }
    stats.survivors = models.len() as u64;
    stats.rejected = stats.box_size - stats.survivors - stats.filtered_total();
    let records = classify(models, &k)?;
    Ok(Census { family: format!("hyper{g}"), p, field_degree: 1, records, stats }.finish())
}

pub fn census_hyper_g4(p: u64, cfg: &ScanConfig, log: &mut dyn ChunkLog) -> Result<Census> {
    census_hyper(4, p, cfg, log)
}

/// Rational classes, with point counts over `F_p` and `F_(p^2)` as the
/// prefilter.
fn classify(models: Vec<Hyper>, k: &Field) -> Result<Vec<CensusRecord>> {
    let p = k.p();
    let mut reps: Vec<(Hyper, (u64, u64), u64)> = Vec::new();
    for h in models {
        let fp = (count_hyper(&h, k, 1)?, count_hyper(&h, k, 2)?);
        trace_p2(fp.1, p, h.g)?;
        let mut found = false;
        for r in reps.iter_mut() {
            if r.1 == fp && binary_form_iso(&r.0, &h, false, k)?.is_some() {
                r.2 += 1;
                found = true;
                break;
            }
        }
        if !found {
            reps.push((h, fp, 1));
        }
    }
    Ok(reps
        .into_iter()
        .map(|(h, fp, n)| CensusRecord {
            family: format!("hyper{}", h.g),
            p,
            field_degree: 1,
            model: CurveModel::Hyperelliptic(h).serialize(k),
            invariants: inv(&[
                ("points_p", fp.0.to_string()),
                ("points_p2", fp.1.to_string()),
                ("trace_p2", ((p * p + 1) as i64 - fp.1 as i64).to_string()),
            ]),
            class_id: 0,
            level: Level::Rational,
            raw_hits: n,
        })
        .collect())
}

/// Every `(s, r)` meeting the low targets, by direct expansion (oracle for
/// the kernel).
#[cfg(test)]
fn brute_low(g: usize, k: &Field, pi: u64) -> Vec<u64> {
    let kern = Kernel::new(g, k);
    let bx = hyper_box(g, k).unwrap();
    let p = k.p();
    let rest_size = p.pow(kern.nrest);
    let (bi, rest) = (pi / rest_size, pi % rest_size);
    let mut out = Vec::new();
    for r in 0..p {
        for s in 0..p {
            let idx = ((bi * p + r) * p + s) * rest_size + rest;
            let RawModel::Hyper { f, .. } = bx.raw(idx, k) else { unreachable!() };
            let pw = f.pow_trunc(u64::from(kern.m), kern.len, k);
            if kern.targets.iter().all(|&t| pw[t].is_zero()) {
                out.push(idx);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::par::NoLog;

    #[test]
    fn low_targets_per_prime() {
        assert_eq!(low_targets(4, 11), vec![10, 9, 8, 7]);
        assert_eq!(low_targets(4, 13), vec![11, 10, 9]);
        assert!(!kernel_applies(4, 17));
        assert!(kernel_applies(3, 7));
    }

    #[test]
    fn kernel_matches_expansion() {
        for (g, p) in [(4usize, 11u64), (4, 13), (3, 7)] {
            let k = Field::prime(p).unwrap();
            let kern = Kernel::new(g, &k);
            let n = kern.prefix_count();
            for i in 0..200u64 {
                let pi = (i * 7919 + 13) % n;
                let mut got = Vec::new();
                kern.solve(pi, &mut got);
                got.sort_unstable();
                let mut want = brute_low(g, &k, pi);
                want.sort_unstable();
                assert_eq!(got, want, "g = {g}, p = {p}, prefix {pi}");
            }
        }
    }

    /// Genus 3 at p = 7 through the kernel against a plain scan of the box.
    #[test]
    fn genus_three_against_plain_scan() {
        let k = Field::prime(7).unwrap();
        let bx = hyper_box(3, &k).unwrap();
        let mut want = Vec::new();
        for idx in 0..bx.size() / 2 {
            let RawModel::Hyper { f, .. } = bx.raw(idx, &k) else { unreachable!() };
            if cm_vanishes(&f, 3, &k).unwrap() {
                want.push(idx);
            }
        }
        let got = run_chunks(scan_size(3, &k).unwrap(), &ScanConfig::default(), &mut NoLog, |s, e| scan_range(3, &k, s, e)).unwrap();
        let mut got = got;
        got.sort_unstable();
        assert_eq!(got, want);
        assert!(!want.is_empty());
        let c = census_hyper(3, 7, &ScanConfig::default(), &mut NoLog).unwrap();
        assert!(c.stats.balanced());
        assert_eq!(c.stats.survivors, c.records.iter().map(|r| r.raw_hits).sum::<u64>());
    }
}
