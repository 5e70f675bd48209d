//! Cartier–Manin and Hasse–Witt matrices as targeted coefficients of powers.

use crate::algebra::form::{Exp, HomogForm};
use crate::algebra::{Fe, Field, Targeted, UniPoly};
use crate::error::{Error, Result};
use crate::models::{quadric, Canonical, CurveModel, Hyper, QType, Trigonal};

/// Which coefficient an entry was read from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Uni(usize),
    Form(Exp),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusMatrix {
    pub g: usize,
    /// Row-major `g x g`; empty when aborted.
    pub entries: Vec<Fe>,
    /// `(row, col, target)` for every evaluated entry.
    pub provenance: Vec<(usize, usize, Target)>,
    pub aborted: bool,
}

impl FrobeniusMatrix {
    pub fn is_zero(&self) -> bool {
        !self.aborted && self.entries.iter().all(Fe::is_zero)
    }
    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.entries[i * self.g + j]
    }
}

fn half(k: &Field) -> Result<u64> {
    if k.p() == 2 {
        return Err(Error::UnsupportedCharacteristic(2));
    }
    Ok((k.p() - 1) / 2)
}

/// Targets `x^(p i - j)`, `1 <= i, j <= g`, row-major.
fn cm_targets(g: usize, p: u64) -> Vec<(usize, usize, usize)> {
    let mut t = Vec::with_capacity(g * g);
    for i in 1..=g {
        for j in 1..=g {
            t.push((i - 1, j - 1, (p as usize) * i - j));
        }
    }
    t
}

/// Cartier–Manin matrix of `c y^2 = f(x)`: entry `(i, j)` is the
/// coefficient of `x^(p i - j)` in `f^((p-1)/2)`. The unit `c` is not
/// folded in.
pub fn cm_hyperelliptic(h: &Hyper, k: &Field) -> Result<FrobeniusMatrix> {
    cm_poly(&h.f, h.g, k)
}

pub fn cm_poly(f: &UniPoly, g: usize, k: &Field) -> Result<FrobeniusMatrix> {
    let m = half(k)?;
    let targets = cm_targets(g, k.p());
    let last = targets.iter().map(|t| t.2).max().unwrap_or(0);
    let pw = f.pow_trunc(m, last + 1, k);
    Ok(FrobeniusMatrix {
        g,
        entries: targets.iter().map(|t| pw[t.2]).collect(),
        provenance: targets.iter().map(|&(i, j, e)| (i, j, Target::Uni(e))).collect(),
        aborted: false,
    })
}

/// Early-abort variant: true iff the Cartier–Manin matrix vanishes.
pub fn cm_vanishes(f: &UniPoly, g: usize, k: &Field) -> Result<bool> {
    let m = half(k)?;
    let mut t: Vec<usize> = cm_targets(g, k.p()).into_iter().map(|t| t.2).collect();
    t.sort_unstable();
    Ok(f.targeted_power_coeffs(m, &t, true, k)?.all_zero())
}

/// Hasse invariant of `y^2 = x^3 + A x + B`: the coefficient of `x^(p-1)`
/// in `(x^3 + A x + B)^((p-1)/2)`.
pub fn hasse_invariant(a: Fe, b: Fe, k: &Field) -> Result<Fe> {
    let m = half(k)?;
    let p = k.p() as usize;
    if b.is_zero() {
        let f = UniPoly::from_coeffs(vec![b, a, k.zero(), k.one()]);
        return Ok(f.pow_trunc(m, p, k)[p - 1]);
    }
    // g = f^m satisfies f g' = m f' g, so
    // B (n+1) c_(n+1) = A (m - n) c_n + (3m - n + 2) c_(n-2)
    let mf = k.modp();
    let binv = k.inv(b)?;
    let mut c = vec![Fe::ZERO; p];
    c[0] = k.pow(b, m as u128);
    for n in 0..p - 1 {
        let mut t = k.mul(a, k.mul(c[n], k.from_u64(mf.sub(m % k.p(), n as u64 % k.p()))));
        if n >= 2 {
            let coef = mf.sub(mf.add(3 * m % k.p(), 2), n as u64 % k.p());
            t = k.add(t, k.mul(c[n - 2], k.from_u64(coef)));
        }
        let inv_n1 = mf.inv((n as u64 + 1) % k.p()).expect("n + 1 < p");
        c[n + 1] = k.mul(k.mul(t, binv), k.from_u64(inv_n1));
    }
    Ok(c[p - 1])
}

pub fn is_supersingular_elliptic(a: Fe, b: Fe, k: &Field) -> Result<bool> {
    Ok(hasse_invariant(a, b, k)?.is_zero())
}

/// Superspeciality from the full matrices, no early abort. A Howe curve
/// is superspecial exactly when `y^2 = f1`, `y^2 = f2` and `y^2 = f1 f2`
/// are.
pub fn is_superspecial(m: &CurveModel, k: &Field) -> Result<bool> {
    Ok(match m {
        CurveModel::Elliptic { a, b } => is_supersingular_elliptic(*a, *b, k)?,
        CurveModel::Hyperelliptic(h) => cm_hyperelliptic(h, k)?.is_zero(),
        CurveModel::CanonicalG4(c) => hw_canonical_g4(c, k)?.is_zero(),
        CurveModel::TrigonalQuintic(t) => hw_trigonal_g5(t, k)?.is_zero(),
        CurveModel::Howe(h) => {
            let (f1, f2) = (h.f1(k), h.f2(k));
            cm_poly(&f1, 1, k)?.is_zero() && cm_poly(&f2, 1, k)?.is_zero() && cm_poly(&f1.mul(&f2, k), 2, k)?.is_zero()
        }
    })
}

/// The four compositions of 5 into 4 positive parts.
pub const G4_INDEX: [[u8; 4]; 4] = [[2, 1, 1, 1], [1, 2, 1, 1], [1, 1, 2, 1], [1, 1, 1, 2]];
/// The five index triples of the genus-5 trigonal criterion.
pub const G5_INDEX: [[u8; 3]; 5] = [[3, 1, 1], [1, 3, 1], [2, 2, 1], [2, 1, 2], [1, 2, 2]];

fn form_targets<const N: usize>(index: &[[u8; N]], p: u64) -> Vec<(usize, usize, Exp)> {
    let mut t = Vec::new();
    for (r, a) in index.iter().enumerate() {
        for (c, b) in index.iter().enumerate() {
            let mut e = [0u8; 4];
            for v in 0..N {
                e[v] = (p as usize * a[v] as usize - b[v] as usize) as u8;
            }
            t.push((r, c, e));
        }
    }
    t
}

/// Target exponents of the genus-4 criterion in early-abort order
/// (all have the same total degree, so lexicographic).
pub fn g4_targets(p: u64) -> Vec<Exp> {
    let mut t: Vec<Exp> = form_targets(&G4_INDEX, p).into_iter().map(|x| x.2).collect();
    t.sort_unstable();
    t
}

pub fn g5_targets(p: u64) -> Vec<Exp> {
    let mut t: Vec<Exp> = form_targets(&G5_INDEX, p).into_iter().map(|x| x.2).collect();
    t.sort_unstable();
    t
}

fn check_p(k: &Field) -> Result<()> {
    if k.p() < 5 || k.p() > 51 {
        // exponents are stored in u8: p * 3 - 1 must fit
        return Err(Error::UnsupportedCharacteristic(k.p()));
    }
    Ok(())
}

fn form_matrix<const N: usize>(g: &HomogForm, index: &[[u8; N]], k: &Field) -> Result<FrobeniusMatrix> {
    check_p(k)?;
    let t = form_targets(index, k.p());
    let exps: Vec<Exp> = t.iter().map(|x| x.2).collect();
    let Targeted::Values(v) = g.pow_targeted(k.p() as usize - 1, &exps, false, k)? else {
        unreachable!("no abort requested")
    };
    Ok(FrobeniusMatrix {
        g: index.len(),
        entries: v,
        provenance: t.into_iter().map(|(r, c, e)| (r, c, Target::Form(e))).collect(),
        aborted: false,
    })
}

/// `Q P` for a canonical model.
pub fn qp(qtype: QType, p: &HomogForm, k: &Field) -> Result<HomogForm> {
    quadric(qtype, k).mul(p, k)
}

/// Hasse–Witt matrix of `V(Q, P)`: the 16 coefficients of `(QP)^(p-1)`.
pub fn hw_canonical_g4(m: &Canonical, k: &Field) -> Result<FrobeniusMatrix> {
    form_matrix(&qp(m.qtype, &m.cubic, k)?, &G4_INDEX, k)
}

pub fn hw_canonical_vanishes(m: &Canonical, k: &Field) -> Result<bool> {
    check_p(k)?;
    let g = qp(m.qtype, &m.cubic, k)?;
    Ok(g.pow_targeted(k.p() as usize - 1, &g4_targets(k.p()), true, k)?.all_zero())
}

/// Hasse–Witt matrix of a trigonal quintic: 25 coefficients of `F^(p-1)`.
pub fn hw_trigonal_g5(m: &Trigonal, k: &Field) -> Result<FrobeniusMatrix> {
    form_matrix(&m.quintic, &G5_INDEX, k)
}

pub fn hw_trigonal_vanishes(f: &HomogForm, k: &Field) -> Result<bool> {
    check_p(k)?;
    Ok(f.pow_targeted(k.p() as usize - 1, &g5_targets(k.p()), true, k)?.all_zero())
}

/// For a cubic `f`, the coefficient of `x^(p-1)` in `((x - b) f)^m`,
/// `m = (p-1)/2`, as a polynomial in `b`. Its roots are the finite `b`
/// for which `y^2 = (x - b) f(x)` is supersingular.
pub fn shifted_power_root_poly(f: &UniPoly, k: &Field) -> Result<UniPoly> {
    let m = half(k)?;
    let p = k.p() as usize;
    let fm = f.pow_trunc(m, p, k);
    let binom = crate::algebra::prime::binomial_row(k.modp(), m);
    // coefficient of b^(m - j) is C(m, j) (-1)^(m - j) [x^(p-1-j)] f^m
    let mut c = vec![Fe::ZERO; m as usize + 1];
    for j in 0..=m as usize {
        let mut v = k.mul(k.from_u64(binom[j]), fm[p - 1 - j]);
        if (m as usize - j) % 2 == 1 {
            v = k.neg(v);
        }
        c[m as usize - j] = v;
    }
    Ok(UniPoly::from_coeffs(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::form::{e3, e4};

    #[test]
    fn hasse_recurrence_matches_power() {
        for (p, d) in [(5, 1), (7, 2), (13, 2), (31, 1)] {
            let k = Field::new(p, d).unwrap();
            for i in 0..40u64 {
                let (a, b) = (k.element(i * 7 % k.q()), k.element((i * 13 + 1) % k.q()));
                let f = UniPoly::from_coeffs(vec![b, a, k.zero(), k.one()]);
                let want = f.pow_trunc((p - 1) / 2, p as usize, &k)[p as usize - 1];
                assert_eq!(hasse_invariant(a, b, &k).unwrap(), want);
            }
        }
    }

    #[test]
    fn genus_two_example() {
        let k = Field::prime(5).unwrap();
        let f = UniPoly::from_i64s(&k, &[0, -1, 0, 0, 0, 1]);
        let m = cm_poly(&f, 2, &k).unwrap();
        assert!(m.is_zero());
        assert_eq!(m.provenance.iter().map(|x| x.2).collect::<Vec<_>>(), vec![
            Target::Uni(4),
            Target::Uni(3),
            Target::Uni(9),
            Target::Uni(8)
        ]);
        assert!(cm_vanishes(&f, 2, &k).unwrap());
    }

    #[test]
    fn elliptic_examples() {
        let k5 = Field::prime(5).unwrap();
        let k7 = Field::prime(7).unwrap();
        assert!(is_supersingular_elliptic(k5.zero(), k5.one(), &k5).unwrap());
        assert!(!is_supersingular_elliptic(k5.one(), k5.one(), &k5).unwrap());
        assert_eq!(hasse_invariant(k5.one(), k5.one(), &k5).unwrap(), k5.from_u64(2));
        assert!(is_supersingular_elliptic(k7.one(), k7.zero(), &k7).unwrap());
    }

    #[test]
    fn target_degrees() {
        for p in [5u64, 7, 11, 13] {
            for t in g4_targets(p) {
                assert_eq!(t.iter().map(|&x| x as u64).sum::<u64>(), 5 * p - 5);
            }
            for t in g5_targets(p) {
                assert_eq!(t.iter().map(|&x| x as u64).sum::<u64>(), 5 * p - 5);
            }
        }
    }

    #[test]
    fn canonical_family_member() {
        let k = Field::new(5, 2).unwrap();
        let p = HomogForm::from_int_terms(4, 3, &[(e4(3, 0, 0, 0), 1), (e4(0, 3, 0, 0), 1), (e4(0, 0, 0, 3), 1)], &k).unwrap();
        let m = Canonical { qtype: QType::Dege, cubic: p };
        assert!(hw_canonical_g4(&m, &k).unwrap().is_zero());
        assert!(hw_canonical_vanishes(&m, &k).unwrap());
    }

    #[test]
    fn trigonal_representatives() {
        let k = Field::prime(11).unwrap();
        let f1 = HomogForm::from_int_terms(3, 5, &[(e3(1, 1, 3), 1), (e3(5, 0, 0), 1), (e3(0, 5, 0), 1)], &k).unwrap();
        let f4 = HomogForm::from_int_terms(
            3,
            5,
            &[(e3(2, 0, 3), 1), (e3(0, 2, 3), -2), (e3(5, 0, 0), 1), (e3(3, 2, 0), 9), (e3(1, 4, 0), 9)],
            &k,
        )
        .unwrap();
        for f in [f1, f4] {
            let t = Trigonal { case: crate::models::TrigCase::SplitNode, quintic: f.clone() };
            assert!(hw_trigonal_g5(&t, &k).unwrap().is_zero());
            assert!(hw_trigonal_vanishes(&f, &k).unwrap());
        }
        let not = HomogForm::from_int_terms(3, 5, &[(e3(1, 1, 3), 1), (e3(5, 0, 0), 1), (e3(0, 5, 0), 2), (e3(4, 1, 0), 1)], &k).unwrap();
        assert!(!hw_trigonal_vanishes(&not, &k).unwrap());
    }

    #[test]
    fn shifted_root_poly_example() {
        let k = Field::prime(5).unwrap();
        let f = UniPoly::from_i64s(&k, &[1, 0, 0, 1]);
        let b = shifted_power_root_poly(&f, &k).unwrap();
        assert_eq!(b, UniPoly::x(&k));
    }

    #[test]
    fn shifted_root_poly_matches_scan() {
        let k = Field::new(11, 2).unwrap();
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(3);
        for _ in 0..5 {
            let f = UniPoly::from_coeffs(vec![k.random(&mut rng), k.random(&mut rng), k.random(&mut rng), k.one()]);
            let bp = shifted_power_root_poly(&f, &k).unwrap();
            for b in k.elements() {
                let g = f.mul(&UniPoly::from_coeffs(vec![k.neg(b), k.one()]), &k);
                let direct = cm_poly(&g, 1, &k).unwrap().is_zero();
                assert_eq!(direct, bp.eval(b, &k).is_zero());
            }
        }
    }
}
