//! Verification suites: each prints one `PASS`/`FAIL` line per check.

use clap::ValueEnum;
use ssp_core::algebra::is_prime;
use ssp_core::census::{self, HOWE_COUNTS};
use ssp_core::formulas::{eichler_h, genus2_count};
use ssp_core::par::{NoLog, ScanConfig};
use ssp_core::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Integrality of the closed formulas and the Eichler cross-check.
    Formulas,
    /// Supersingular j-invariants against the class number.
    Elliptic,
    /// Genus-2 census against the mass formula, and oracle against walk.
    Genus2,
    /// Howe strategy-B counts against the reference table.
    HoweTable,
    /// Strategies A and B give the same classes.
    HoweStrategies,
    /// Some superspecial Howe curve exists for every `7 < p <= pmax`.
    HoweExistence,
    /// No hyperelliptic genus-4 classes at `p = 11, 13`.
    Hyper4,
    /// The canonical genus-4 census over `F_5`.
    Canonical,
    /// The 14400-member family over `F_25`.
    CanonicalFamily,
    /// The two trigonal families and `F_1, ..., F_4` over `F_11`.
    Trigonal,
}

pub struct Check {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

fn check(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), ok, detail: detail.into() }
}

fn primes(lo: u64, hi: u64) -> impl Iterator<Item = u64> {
    (lo..=hi).filter(|&p| is_prime(p))
}

pub fn run(suite: Suite, pmax: Option<u64>, cfg: &ScanConfig) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    match suite {
        Suite::Formulas => {
            let pmax = pmax.unwrap_or(199);
            let mut bad = Vec::new();
            for p in primes(2, pmax) {
                if eichler_h(p).is_err() || genus2_count(p).is_err() {
                    bad.push(p);
                }
            }
            out.push(check("formulas integral", bad.is_empty(), format!("primes <= {pmax}, failures {bad:?}")));
            out.extend(run(Suite::Elliptic, Some(pmax), cfg)?);
        }
        Suite::Elliptic => {
            let pmax = pmax.unwrap_or(199);
            let mut bad = Vec::new();
            for p in primes(5, pmax) {
                let c = census::census_elliptic(p)?;
                if c.h != eichler_h(p)? || c.js.len() as u64 != c.h {
                    bad.push(p);
                }
            }
            out.push(check("eichler cross-check", bad.is_empty(), format!("5 <= p <= {pmax}, failures {bad:?}")));
        }
        Suite::Genus2 => {
            let pmax = pmax.unwrap_or(census::genus2::GENUS2_MAX_P);
            let mut bad = Vec::new();
            for p in primes(5, pmax) {
                let n = census::census_genus2_upto(p, pmax)?.count() as u64;
                if n != genus2_count(p)? {
                    bad.push((p, n));
                }
            }
            out.push(check("genus-2 mass", bad.is_empty(), format!("5 <= p <= {pmax}, failures {bad:?}")));
            for p in [7, 11, 13].into_iter().filter(|&p| p <= pmax) {
                let oracle = census::rosenhain_oracle(p)?;
                let (_, walk) = census::genus2::genus2_keys(p)?;
                out.push(check(format!("oracle = walk at p = {p}"), oracle == walk, format!("{} keys", walk.len())));
            }
        }
        Suite::HoweTable => {
            let pmax = pmax.unwrap_or(53);
            for (p, want) in HOWE_COUNTS.into_iter().filter(|&(p, _)| p <= pmax) {
                let n = census::census_howe_b(p)?.count();
                out.push(check(format!("howe-b n({p})"), n == want, format!("{n}, table {want}")));
            }
        }
        Suite::HoweStrategies => {
            let pmax = pmax.unwrap_or(23);
            for p in primes(11, pmax) {
                let (a, b) = (census::census_howe_a(p)?, census::census_howe_b(p)?);
                let ok = census::same_classes(&a, &b)?;
                out.push(check(format!("howe A = B at p = {p}"), ok, format!("{} and {} classes", a.count(), b.count())));
            }
        }
        Suite::HoweExistence => {
            let pmax = pmax.unwrap_or(499);
            let missing: Vec<u64> = primes(11, pmax).filter(|&p| !matches!(census::howe_b_exists(p), Ok(Some(_)))).collect();
            out.push(check("howe existence", missing.is_empty(), format!("7 < p <= {pmax}, missing {missing:?}")));
        }
        Suite::Hyper4 => {
            for p in [11, 13] {
                let n = census::census_hyper_g4(p, cfg, &mut NoLog)?.count();
                out.push(check(format!("hyper4 empty at p = {p}"), n == 0, format!("{n} classes")));
            }
        }
        Suite::Canonical => {
            let c = census::census_canonical_g4_f5(cfg, &mut NoLog)?;
            out.push(check("canonical F_5 classes", c.count() == 7, format!("{}", c.count())));
            out.push(check("canonical geometric classes", c.geometric_classes == 1, format!("{}", c.geometric_classes)));
        }
        Suite::CanonicalFamily => {
            let r = census::verify_canonical_family_f25()?;
            out.push(check("F_25 family", r.passed() && r.checked == 14400, format!("{} checked, {} failures", r.checked, r.failures.len())));
        }
        Suite::Trigonal => {
            let r = census::verify_trigonal_f11()?;
            out.push(check(
                "trigonal families",
                r.families_pass(),
                format!("{} + {} checked, {} failures", r.split_checked, r.nonsplit_checked, r.failures.len()),
            ));
            out.push(check("F1..F4 distinct over F_11", r.pairwise_distinct(), format!("{:?}", r.rational_isos)));
            out.push(check("F1..F4 one geometric class", r.one_geometric_class(), format!("degrees {:?}", r.geometric_degree)));
        }
    }
    Ok(out)
}
