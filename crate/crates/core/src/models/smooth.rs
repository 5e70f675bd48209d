//! Smoothness of canonical genus-4 models and the singularity check for
//! trigonal quintics, both decided chart by chart with Groebner bases.

use crate::algebra::form::{e3, HomogForm};
use crate::algebra::mpoly::{MPoly, TermOrder, MAX_VARS};
use crate::algebra::{Fe, Field};
use crate::error::Result;

use super::groebner::contains_one;
use super::{quadric, QType, TrigCase};

/// Dehomogenise: variables listed in `fixed` get constant values, the rest
/// become affine variables `0, 1, ...` in their original order.
pub(crate) fn dehom(f: &HomogForm, fixed: &[(usize, Fe)], k: &Field, order: TermOrder) -> MPoly {
    let n = f.nvars();
    let free: Vec<usize> = (0..n).filter(|v| fixed.iter().all(|(w, _)| w != v)).collect();
    let terms = f
        .terms()
        .iter()
        .map(|&(e, c)| {
            let mut m = [0u8; MAX_VARS];
            let mut coef = c;
            for &(v, val) in fixed {
                if e[v] > 0 {
                    coef = k.mul(coef, k.pow(val, u128::from(e[v])));
                }
            }
            for (i, &v) in free.iter().enumerate() {
                m[i] = e[v];
            }
            (m, coef)
        })
        .collect();
    MPoly::from_terms(terms, order, Some(k))
}

/// True iff `V(Q, P)` is non-singular: the ideal of `Q`, `P` and the 2x2
/// minors of their Jacobian has no projective zero.
pub fn is_smooth_ci_g4(qtype: QType, p: &HomogForm, k: &Field) -> Result<bool> {
    let q = quadric(qtype, k);
    let dq: Vec<HomogForm> = (0..4).map(|v| q.partial(v, k)).collect();
    let dp: Vec<HomogForm> = (0..4).map(|v| p.partial(v, k)).collect();
    let mut minors = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            let m = dq[i].mul(&dp[j], k)?.sub(&dq[j].mul(&dp[i], k)?, k)?;
            minors.push(m);
        }
    }
    for chart in 0..4 {
        let fixed = [(chart, k.one())];
        let ord = TermOrder::Grevlex;
        let mut gens = vec![dehom(&q, &fixed, k, ord), dehom(p, &fixed, k, ord)];
        gens.extend(minors.iter().map(|m| dehom(m, &fixed, k, ord)));
        if !contains_one(gens, ord, k)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuinticVerdict {
    ValidUniqueSingularity,
    ExtraSingularity,
    WrongType,
}

/// Type of the singularity of `F` at `(0:0:1)`, if it is a node or cusp.
pub fn local_type(f: &HomogForm, k: &Field) -> Option<TrigCase> {
    if f.terms().iter().any(|(e, _)| e[2] >= 4) {
        return None;
    }
    let n20 = f.coeff(&e3(2, 0, 3));
    let n11 = f.coeff(&e3(1, 1, 3));
    let n02 = f.coeff(&e3(0, 2, 3));
    if n20.is_zero() && n11.is_zero() && n02.is_zero() {
        return None;
    }
    let disc = k.sub(k.sqr(n11), k.scale(k.mul(n20, n02), 4));
    if !disc.is_zero() {
        return Some(if k.is_square(disc) { TrigCase::SplitNode } else { TrigCase::NonSplitNode });
    }
    // N = c l^2: the cusp is ordinary when the cubic part does not vanish
    // in the direction killed by l
    let (vx, vy) = if n20.is_zero() { (k.one(), k.zero()) } else { (k.neg(n11), k.scale(n20, 2)) };
    let c = [e3(3, 0, 2), e3(2, 1, 2), e3(1, 2, 2), e3(0, 3, 2)];
    let mut val = k.zero();
    for (i, e) in c.iter().enumerate() {
        let term = k.mul(f.coeff(e), k.mul(k.pow(vx, (3 - i) as u128), k.pow(vy, i as u128)));
        val = k.add(val, term);
    }
    (!val.is_zero()).then_some(TrigCase::Cusp)
}

/// Checks that `(0:0:1)` is a singular point of the expected type and that
/// `V(F)` has no other singular point over the algebraic closure.
pub fn quintic_singularities(case: TrigCase, f: &HomogForm, k: &Field) -> Result<QuinticVerdict> {
    if local_type(f, k) != Some(case) {
        return Ok(QuinticVerdict::WrongType);
    }
    let parts: Vec<HomogForm> = (0..3).map(|v| f.partial(v, k)).collect();
    let ord = TermOrder::Grevlex;
    // every other point has x != 0, or x = 0 and y != 0
    let fixed = [(0, k.one())];
    let mut gens = vec![dehom(f, &fixed, k, ord)];
    gens.extend(parts.iter().map(|g| dehom(g, &fixed, k, ord)));
    if !contains_one(gens, ord, k)? {
        return Ok(QuinticVerdict::ExtraSingularity);
    }
    let fixed = [(0, k.zero()), (1, k.one())];
    let mut g = dehom(f, &fixed, k, ord).to_univariate(0).expect("one variable");
    for h in &parts {
        g = g.gcd(&dehom(h, &fixed, k, ord).to_univariate(0).expect("one variable"), k);
    }
    if g.deg() != Some(0) {
        return Ok(QuinticVerdict::ExtraSingularity);
    }
    Ok(QuinticVerdict::ValidUniqueSingularity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::form::e4;

    #[test]
    fn dege_family_member_is_smooth() {
        let k = Field::prime(5).unwrap();
        let p = HomogForm::from_int_terms(4, 3, &[(e4(3, 0, 0, 0), 1), (e4(0, 3, 0, 0), 1), (e4(0, 0, 0, 3), 1)], &k).unwrap();
        assert!(is_smooth_ci_g4(QType::Dege, &p, &k).unwrap());
    }

    #[test]
    fn vertex_singularity() {
        let k = Field::prime(5).unwrap();
        let p = HomogForm::from_int_terms(4, 3, &[(e4(2, 1, 0, 0), 1), (e4(0, 3, 0, 0), 1), (e4(0, 0, 0, 3), 1)], &k).unwrap();
        assert!(!is_smooth_ci_g4(QType::Dege, &p, &k).unwrap());
    }

    #[test]
    fn quintic_verdicts() {
        let k = Field::prime(11).unwrap();
        let f1 = HomogForm::from_int_terms(3, 5, &[(e3(1, 1, 3), 1), (e3(5, 0, 0), 1), (e3(0, 5, 0), 1)], &k).unwrap();
        assert_eq!(quintic_singularities(TrigCase::SplitNode, &f1, &k).unwrap(), QuinticVerdict::ValidUniqueSingularity);
        assert_eq!(quintic_singularities(TrigCase::Cusp, &f1, &k).unwrap(), QuinticVerdict::WrongType);
        let cusp = HomogForm::from_int_terms(3, 5, &[(e3(2, 0, 3), 1), (e3(0, 5, 0), 1)], &k).unwrap();
        // the cubic part vanishes, so this is not an ordinary cusp
        assert_eq!(quintic_singularities(TrigCase::Cusp, &cusp, &k).unwrap(), QuinticVerdict::WrongType);
        let red = HomogForm::from_int_terms(3, 5, &[(e3(1, 1, 3), 1), (e3(5, 0, 0), 1)], &k).unwrap();
        assert_eq!(quintic_singularities(TrigCase::SplitNode, &red, &k).unwrap(), QuinticVerdict::ExtraSingularity);
        let f4 = HomogForm::from_int_terms(
            3,
            5,
            &[(e3(2, 0, 3), 1), (e3(0, 2, 3), -2), (e3(5, 0, 0), 1), (e3(3, 2, 0), 9), (e3(1, 4, 0), 9)],
            &k,
        )
        .unwrap();
        assert_eq!(quintic_singularities(TrigCase::NonSplitNode, &f4, &k).unwrap(), QuinticVerdict::ValidUniqueSingularity);
    }
}
