//! Censuses: scans of reduced forms filtered by the Frobenius criteria,
//! validated, re-checked, and sorted into isomorphism classes.

pub mod canonical;
pub mod elliptic;
pub mod genus2;
pub mod howe;
pub mod hyper4;
pub mod points;
pub mod trigonal;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::InvalidReason;


pub use elliptic::{census_elliptic, EllipticCensus};
pub use genus2::{census_genus2, census_genus2_upto, rosenhain_oracle};
pub use howe::{census_howe_a, census_howe_b, census_howe_b_upto, howe_b_exists, same_classes, HoweCensus, HOWE_COUNTS};
pub use canonical::{census_canonical_g4_f5, verify_canonical_family_f25, CanonicalCensus, FamilyReport};
pub use hyper4::census_hyper_g4;
pub use trigonal::{verify_trigonal_f11, TrigonalReport};


/// Level at which class representatives are pairwise non-isomorphic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Level {
    Rational,
    Geometric,
}

/// One isomorphism class of a census.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRecord {
    pub family: String,
    pub p: u64,
    pub field_degree: usize,
    /// Serialised representative (see `CurveModel::serialize`).
    pub model: Vec<String>,
    pub invariants: BTreeMap<String, String>,
    pub class_id: usize,
    pub level: Level,
    /// Survivors of the scan that fell into this class.
    pub raw_hits: u64,
}

/// Counts of a parameter-box scan. The box splits into candidates rejected
/// by the Frobenius criterion, criterion survivors that fail validation,
/// and valid survivors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ScanStats {
    pub box_size: u64,
    pub rejected: u64,
    pub filtered: BTreeMap<InvalidReason, u64>,
    pub survivors: u64,
}

impl ScanStats {
    pub fn filtered_total(&self) -> u64 {
        self.filtered.values().sum()
    }

    pub fn balanced(&self) -> bool {
        self.box_size == self.rejected + self.filtered_total() + self.survivors
    }

    pub fn merge(&mut self, o: &ScanStats) {
        self.box_size += o.box_size;
        self.rejected += o.rejected;
        for (r, n) in &o.filtered {
            *self.filtered.entry(*r).or_default() += n;
        }
        self.survivors += o.survivors;
    }
}

/// A finished census.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub family: String,
    pub p: u64,
    pub field_degree: usize,
    /// Sorted by serialised model; class ids follow this order.
    pub records: Vec<CensusRecord>,
    pub stats: ScanStats,
}

impl Census {
    pub fn count(&self) -> usize {
        self.records.len()
    }

    /// Sort records by model and renumber.
    pub(crate) fn finish(mut self) -> Census {
        self.records.sort_by(|a, b| a.model.cmp(&b.model));
        for (i, r) in self.records.iter_mut().enumerate() {
            r.class_id = i;
        }
        self
    }
}

/// Trace of Frobenius over `F_(p^2)` from `#C(F_(p^2))`; errors if it
/// breaks the Hasse–Weil bound `|t| <= 2 g p`.
pub fn trace_p2(n: u64, p: u64, g: usize) -> crate::Result<i64> {
    let t = (p * p + 1) as i64 - n as i64;
    if t.unsigned_abs() > 2 * g as u64 * p {
        return Err(crate::Error::Internal(format!("{n} points over F_{p}^2 break the Hasse–Weil bound")));
    }
    Ok(t)
}

/// `#C(F_(p^2)) = p^2 + 1 mod 2p`, i.e. the trace is a multiple of `2p`.
pub fn congruence_ok(trace: i64, p: u64) -> bool {
    trace.rem_euclid(2 * p as i64) == 0
}

impl CensusRecord {
    /// The recorded trace over `F_(p^2)`, if any.
    pub fn trace(&self) -> Option<i64> {
        self.invariants.get("trace_p2").and_then(|s| s.parse().ok())
    }
}

pub(crate) fn inv(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(a, b)| (a.to_string(), b.clone())).collect()
}
