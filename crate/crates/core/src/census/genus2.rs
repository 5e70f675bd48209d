//! Superspecial genus-2 curves: the Richelot walk, and a brute-force
//! Rosenhain scan used as its oracle for small `p`.

use std::collections::BTreeSet;

use crate::algebra::{Fe, Field};
use crate::error::{Error, Result};
use crate::formulas::genus2_count;
use crate::frobenius::{cm_poly, cm_vanishes};
use crate::isomorphy::{igusa_key_from_points, Genus2Key};
use crate::models::CurveModel;
use crate::richelot::{count_points, key_points, rosenhain_key, rosenhain_model, walk, RosenhainKey};

use super::{inv, trace_p2, Census, CensusRecord, Level, ScanStats};

/// Largest `p` accepted by the oracle.
pub const ORACLE_MAX_P: u64 = 13;

pub fn fmt_key(key: &RosenhainKey, k: &Field) -> String {
    key.iter().map(|&x| k.format(x)).collect::<Vec<_>>().join(",")
}

pub fn fmt_igusa(key: &Genus2Key, k: &Field) -> String {
    let f = |xs: &[Fe]| xs.iter().map(|&x| k.format(x)).collect::<Vec<_>>().join(",");
    match key {
        Genus2Key::Generic(v) => format!("generic:{}", f(v)),
        Genus2Key::NoI2(v) => format!("i2=0:{}", f(v)),
        Genus2Key::NoI4(v) => format!("i2=i4=0:{}", f(&[*v])),
        Genus2Key::OnlyI10 => "i10".into(),
    }
}

/// Rosenhain keys of all `y^2 = x (x-1) (x-l) (x-m) (x-n)` over
/// `F_(p^2)` with vanishing Cartier–Manin matrix.
pub fn rosenhain_oracle(p: u64) -> Result<BTreeSet<RosenhainKey>> {
    if p > ORACLE_MAX_P {
        return Err(Error::Overload(format!("rosenhain oracle is limited to p <= {ORACLE_MAX_P}")));
    }
    if p < 5 {
        return Err(Error::UnsupportedCharacteristic(p));
    }
    let k = Field::new(p, 2)?;
    let vals: Vec<Fe> = k.elements().filter(|x| !x.is_zero() && *x != k.one()).collect();
    let mut keys = BTreeSet::new();
    for (i, &l) in vals.iter().enumerate() {
        for (j, &m) in vals.iter().enumerate().skip(i + 1) {
            for &n in &vals[j + 1..] {
                let key = [l, m, n];
                let h = rosenhain_model(&key, &k);
                if cm_vanishes(&h.f, 2, &k)? {
                    keys.insert(rosenhain_key(&key_points(&key, &k), &k));
                }
            }
        }
    }
    Ok(keys)
}

/// Walk keys, checked against the formula and (for small `p`) the oracle.
pub fn genus2_keys(p: u64) -> Result<(Field, BTreeSet<RosenhainKey>)> {
    let want = genus2_count(p)?;
    let k = Field::new(p, 2)?;
    let res = walk(&k, Some(want))?;
    if p <= ORACLE_MAX_P && rosenhain_oracle(p)? != res.curves {
        return Err(Error::CensusIncomplete(format!("walk and oracle disagree at p = {p}")));
    }
    Ok((k, res.curves))
}

/// Largest `p` of the genus-2 census contract, and of its stretch range.
pub const GENUS2_MAX_P: u64 = 53;
pub const GENUS2_STRETCH_MAX_P: u64 = 199;

pub fn census_genus2(p: u64) -> Result<Census> {
    census_genus2_upto(p, GENUS2_MAX_P)
}

/// The census with an explicit upper bound on `p` (at most the stretch
/// bound).
pub fn census_genus2_upto(p: u64, hi: u64) -> Result<Census> {
    let hi = hi.min(GENUS2_STRETCH_MAX_P);
    if !(5..=hi).contains(&p) {
        return Err(Error::Argument(format!("genus-2 census needs 5 <= p <= {hi}, got {p}")));
    }
    let (k, keys) = genus2_keys(p)?;
    let mut records = Vec::new();
    for key in &keys {
        let h = rosenhain_model(key, &k);
        if !cm_poly(&h.f, 2, &k)?.is_zero() {
            return Err(Error::Internal("survivor fails the full Cartier–Manin check".into()));
        }
        let n = count_points(&h, &k);
        let t = trace_p2(n, p, 2)?;
        let mut invs = vec![("rosenhain", fmt_key(key, &k)), ("points_p2", n.to_string()), ("trace_p2", t.to_string())];
        if p >= 7 {
            let ig = igusa_key_from_points(&key_points(key, &k), &k)?;
            invs.push(("igusa", fmt_igusa(&ig, &k)));
        }
        records.push(CensusRecord {
            family: "genus2".into(),
            p,
            field_degree: 2,
            model: CurveModel::Hyperelliptic(h).serialize(&k),
            invariants: inv(&invs),
            class_id: 0,
            level: Level::Geometric,
            raw_hits: 1,
        });
    }
    let n = records.len() as u64;
    Ok(Census {
        family: "genus2".into(),
        p,
        field_degree: 2,
        records,
        stats: ScanStats { box_size: n, survivors: n, ..Default::default() },
    }
    .finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_small() {
        assert_eq!(rosenhain_oracle(5).unwrap().len(), 1);
        assert_eq!(rosenhain_oracle(7).unwrap().len(), 1);
        assert!(matches!(rosenhain_oracle(17), Err(Error::Overload(_))));
    }

    #[test]
    fn census_eleven() {
        let c = census_genus2(11).unwrap();
        assert_eq!(c.count(), 2);
        assert!(c.records.iter().all(|r| r.invariants.contains_key("igusa")));
    }
}
