//! Superspecial trigonal genus-5 curves over `F_11`: the two parameter
//! families and the four representatives `F_1, ..., F_4`.

use crate::algebra::form::{e3, HomogForm};
use crate::algebra::{Fe, Field};
use crate::error::{Error, Result};
use crate::frobenius::hw_trigonal_g5;
use crate::isomorphy::trigonal_iso;
use crate::models::{quintic_singularities, QuinticVerdict, TrigCase, Trigonal};

use crate::models::CurveModel;

use super::points::count_trigonal;
use super::{inv, trace_p2, Census, CensusRecord, Level, ScanStats};

/// Largest extension degree tried when merging the representatives.
/// `F_1 ~ F_4` shows up over `F_(11^2)`, `F_1 ~ F_2 ~ F_3` only over
/// `F_(11^5)`.
pub const MAX_GEOMETRIC_DEGREE: usize = 6;

fn quintic(terms: &[([u8; 3], Fe)], k: &Field) -> Result<HomogForm> {
    HomogForm::from_terms(3, 5, terms.iter().map(|&(e, c)| (e3(e[0], e[1], e[2]), c)), k)
}

/// `x y z^3 + a1 x^5 + a2 y^5`.
pub fn split_member(a1: Fe, a2: Fe, k: &Field) -> Result<Trigonal> {
    let f = quintic(&[([1, 1, 3], k.one()), ([5, 0, 0], a1), ([0, 5, 0], a2)], k)?;
    Ok(Trigonal { case: TrigCase::SplitNode, quintic: f })
}

/// `(x^2 - 2 y^2) z^3 + a x^5 + b x^4 y + 9a x^3 y^2 + 4b x^2 y^3 + 9a x y^4 + 3b y^5`.
pub fn nonsplit_member(a: Fe, b: Fe, k: &Field) -> Result<Trigonal> {
    let s = |c: u64, x: Fe| k.mul(k.from_u64(c), x);
    let f = quintic(
        &[
            ([2, 0, 3], k.one()),
            ([0, 2, 3], k.neg(k.from_u64(2))),
            ([5, 0, 0], a),
            ([4, 1, 0], b),
            ([3, 2, 0], s(9, a)),
            ([2, 3, 0], s(4, b)),
            ([1, 4, 0], s(9, a)),
            ([0, 5, 0], s(3, b)),
        ],
        k,
    )?;
    Ok(Trigonal { case: TrigCase::NonSplitNode, quintic: f })
}

/// `F_1, F_2, F_3, F_4`.
pub fn representatives(k: &Field) -> Result<[Trigonal; 4]> {
    let c = |x: u64| k.from_u64(x);
    Ok([
        split_member(c(1), c(1), k)?,
        split_member(c(2), c(1), k)?,
        split_member(c(3), c(1), k)?,
        nonsplit_member(c(1), c(0), k)?,
    ])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrigonalReport {
    pub split_checked: u64,
    pub nonsplit_checked: u64,
    /// Members failing the singularity check or with nonzero Hasse–Witt
    /// matrix, as `family:a,b`.
    pub failures: Vec<String>,
    /// Pairs `(i, j)` of representatives found isomorphic over `F_11`.
    pub rational_isos: Vec<(usize, usize)>,
    /// Passing family members per `F_11`-isomorphic representative; the last
    /// slot counts members matching none.
    pub member_classes: [u64; 5],
    /// Smallest degree `d` with `F_1 ~ F_i` over `F_(11^d)`, per `i`.
    pub geometric_degree: [Option<usize>; 4],
    /// `#C(F_(11^2))` per representative.
    pub points_p2: [u64; 4],
}

impl TrigonalReport {
    pub fn families_pass(&self) -> bool {
        self.split_checked == 100 && self.nonsplit_checked == 120 && self.failures.is_empty()
    }

    pub fn pairwise_distinct(&self) -> bool {
        self.rational_isos.is_empty()
    }

    pub fn one_geometric_class(&self) -> bool {
        self.geometric_degree.iter().all(Option::is_some)
    }
}

fn passes(t: &Trigonal, k: &Field) -> Result<bool> {
    Ok(quintic_singularities(t.case, &t.quintic, k)? == QuinticVerdict::ValidUniqueSingularity && hw_trigonal_g5(t, k)?.is_zero())
}

fn same_case(a: &Trigonal, b: &Trigonal, d: usize, k: &Field) -> Result<bool> {
    // over F_11 the two node types cannot meet
    if d == 1 && a.case != b.case {
        return Ok(false);
    }
    Ok(trigonal_iso(a, b, d, k)?.is_some())
}

pub fn verify_trigonal_f11() -> Result<TrigonalReport> {
    let k = Field::prime(11)?;
    let reps = representatives(&k)?;
    let mut rep = TrigonalReport {
        split_checked: 0,
        nonsplit_checked: 0,
        failures: Vec::new(),
        rational_isos: Vec::new(),
        member_classes: [0; 5],
        geometric_degree: [None; 4],
        points_p2: [0; 4],
    };
    let mut members = Vec::new();
    for a1 in k.nonzero_elements() {
        for a2 in k.nonzero_elements() {
            rep.split_checked += 1;
            members.push((format!("split:{},{}", k.format(a1), k.format(a2)), split_member(a1, a2, &k)?));
        }
    }
    for a in k.elements() {
        for b in k.elements() {
            if a.is_zero() && b.is_zero() {
                continue;
            }
            rep.nonsplit_checked += 1;
            members.push((format!("nonsplit:{},{}", k.format(a), k.format(b)), nonsplit_member(a, b, &k)?));
        }
    }
    for (name, t) in &members {
        if !passes(t, &k)? {
            rep.failures.push(name.clone());
            continue;
        }
        let mut cls = 4;
        for (i, r) in reps.iter().enumerate() {
            if same_case(r, t, 1, &k)? {
                cls = i;
                break;
            }
        }
        rep.member_classes[cls] += 1;
    }
    for i in 0..4 {
        if !passes(&reps[i], &k)? {
            return Err(Error::Internal(format!("representative F_{} is not superspecial", i + 1)));
        }
        rep.points_p2[i] = count_trigonal(&reps[i], &k, 2)?;
        for j in 0..i {
            if same_case(&reps[j], &reps[i], 1, &k)? {
                rep.rational_isos.push((j, i));
            }
        }
    }
    rep.geometric_degree[0] = Some(1);
    for i in 1..4 {
        for d in 1..=MAX_GEOMETRIC_DEGREE {
            if trigonal_iso(&reps[0], &reps[i], d, &k)?.is_some() {
                rep.geometric_degree[i] = Some(d);
                break;
            }
        }
    }
    Ok(rep)
}

impl TrigonalReport {
    /// `F_1, ..., F_4` as an `F_11`-rational census.
    pub fn census(&self) -> Result<Census> {
        let k = Field::prime(11)?;
        let mut records = Vec::new();
        for (i, t) in representatives(&k)?.into_iter().enumerate() {
            let n = self.points_p2[i];
            let tr = trace_p2(n, 11, 5)?;
            let mut invs = vec![("name", format!("F{}", i + 1)), ("points_p2", n.to_string()), ("trace_p2", tr.to_string())];
            if let Some(d) = self.geometric_degree[i] {
                invs.push(("geometric_degree", d.to_string()));
            }
            records.push(CensusRecord {
                family: "trigonal5".into(),
                p: 11,
                field_degree: 1,
                model: CurveModel::TrigonalQuintic(t).serialize(&k),
                invariants: inv(&invs),
                class_id: 0,
                level: Level::Rational,
                raw_hits: self.member_classes[i],
            });
        }
        let checked = self.split_checked + self.nonsplit_checked;
        let bad = self.failures.len() as u64;
        let stats = ScanStats { box_size: checked, rejected: bad, survivors: checked - bad, ..Default::default() };
        Ok(Census { family: "trigonal5".into(), p: 11, field_degree: 1, records, stats }.finish())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn representatives_pass() {
        let k = Field::prime(11).unwrap();
        for r in representatives(&k).unwrap() {
            assert!(passes(&r, &k).unwrap());
        }
    }

    #[test]
    fn f1_and_f2_differ_over_the_prime_field() {
        let k = Field::prime(11).unwrap();
        let r = representatives(&k).unwrap();
        assert!(trigonal_iso(&r[0], &r[1], 1, &k).unwrap().is_none());
    }
}
