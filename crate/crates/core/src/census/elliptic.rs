//! Supersingular j-invariants by a Legendre scan over `F_(p^2)`.

use std::collections::BTreeMap;

use crate::algebra::{Fe, Field};
use crate::error::{Error, Result};
use crate::formulas::eichler_h;
use crate::frobenius::is_supersingular_elliptic;
use crate::models::CurveModel;

use super::{inv, Census, CensusRecord, Level, ScanStats};

#[derive(Clone, Debug)]
pub struct EllipticCensus {
    pub h: u64,
    /// Sorted supersingular j-invariants in `F_(p^2)`.
    pub js: Vec<Fe>,
    /// A short Weierstrass model `(A, B)` per class, aligned with `js`
    /// (empty for `p < 5`).
    pub models: Vec<(Fe, Fe)>,
    /// `F_(p^2)`, absent for `p = 2`.
    pub field: Option<Field>,
}

/// `j(lambda) = 256 (l^2 - l + 1)^3 / (l^2 (l - 1)^2)`.
pub fn legendre_j(l: Fe, k: &Field) -> Result<Fe> {
    let t = k.add(k.sub(k.sqr(l), l), k.one());
    let num = k.scale(k.pow(t, 3), 256);
    let den = k.sqr(k.mul(l, k.sub(l, k.one())));
    k.div(num, den)
}

/// Short Weierstrass model of `y^2 = x (x - 1) (x - lambda)`.
pub fn legendre_short(l: Fe, k: &Field) -> (Fe, Fe) {
    // x^3 + a2 x^2 + a4 x with x -> x - a2/3
    let a2 = k.neg(k.add(l, k.one()));
    let a4 = l;
    let third = k.inv(k.from_u64(3)).expect("p > 3");
    let a = k.sub(a4, k.mul(k.sqr(a2), third));
    let b = k.sub(k.mul(k.scale(k.pow(a2, 3), 2), k.pow(third, 3)), k.mul(k.mul(a2, a4), third));
    (a, b)
}

pub fn census_elliptic(p: u64) -> Result<EllipticCensus> {
    let h = eichler_h(p)?;
    if p <= 3 {
        return Ok(EllipticCensus { h: 1, js: vec![Fe::ZERO], models: Vec::new(), field: Field::new(p, 2).ok() });
    }
    let k = Field::new(p, 2)?;
    let mut seen: BTreeMap<Fe, Option<(Fe, Fe)>> = BTreeMap::new();
    for l in k.elements() {
        if l.is_zero() || l == k.one() {
            continue;
        }
        let j = legendre_j(l, &k)?;
        if seen.contains_key(&j) {
            continue;
        }
        let (a, b) = legendre_short(l, &k);
        let ss = is_supersingular_elliptic(a, b, &k)?;
        seen.insert(j, ss.then_some((a, b)));
    }
    let (js, models): (Vec<Fe>, Vec<(Fe, Fe)>) = seen.into_iter().filter_map(|(j, m)| m.map(|m| (j, m))).unzip();
    if js.len() as u64 != h {
        return Err(Error::CensusIncomplete(format!("found {} supersingular j at p = {p}, expected {h}", js.len())));
    }
    Ok(EllipticCensus { h, js, models, field: Some(k) })
}

impl EllipticCensus {
    pub fn census(&self, p: u64) -> Census {
        let fmt = |j: Fe| self.field.as_ref().map_or("0".to_string(), |k| k.format(j));
        let records = self
            .js
            .iter()
            .enumerate()
            .map(|(i, &j)| {
                let model = match self.models.get(i) {
                    Some(&(a, b)) => CurveModel::Elliptic { a, b }.serialize(self.field.as_ref().expect("field for p > 3")),
                    None => Vec::new(),
                };
                CensusRecord {
                    family: "elliptic".into(),
                    p,
                    field_degree: 2,
                    model,
                    invariants: inv(&[("j", fmt(j))]),
                    class_id: i,
                    level: Level::Geometric,
                    raw_hits: 1,
                }
            })
            .collect();
        let n = self.js.len() as u64;
        Census {
            family: "elliptic".into(),
            p,
            field_degree: 2,
            records,
            stats: ScanStats { box_size: n, survivors: n, ..Default::default() },
        }
        .finish()
    }
}
