//! A small Buchberger engine: normal selection strategy, Buchberger's
//! coprime criterion, and a reduced final basis. Size and degree caps turn
//! runaway computations into an `Overload` error.

use crate::algebra::mpoly::{mono_deg, mono_div, mono_divides, mono_lcm, MPoly, TermOrder, MAX_VARS};
use crate::algebra::Field;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug)]
pub struct Caps {
    pub max_basis: usize,
    pub max_degree: u32,
    pub max_pairs: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_basis: 2000, max_degree: 60, max_pairs: 400_000 }
    }
}

/// Generators plus a fixed term order; `basis` is filled by [`buchberger`].
#[derive(Clone, Debug)]
pub struct GroebnerIdeal {
    pub order: TermOrder,
    pub gens: Vec<MPoly>,
}

impl GroebnerIdeal {
    pub fn new(order: TermOrder, gens: Vec<MPoly>) -> Self {
        let gens = gens.into_iter().map(|g| g.reorder(order)).filter(|g| !g.is_zero()).collect();
        GroebnerIdeal { order, gens }
    }
}

/// Full reduction of `f` modulo `g`.
pub fn normal_form(f: &MPoly, g: &[MPoly], k: &Field) -> MPoly {
    let mut p = f.clone();
    let mut rem = Vec::new();
    while !p.is_zero() {
        let (lm, lc) = (p.terms[0].0, p.terms[0].1);
        match g.iter().find(|h| mono_divides(h.lm(), &lm)) {
            Some(h) => {
                let c = k.mul(lc, k.inv(h.lc()).unwrap());
                p = p.sub_scaled(c, &mono_div(&lm, h.lm()), h, k);
            }
            None => {
                rem.push(p.terms.remove(0));
            }
        }
    }
    MPoly { order: f.order, terms: rem }
}

fn s_poly(a: &MPoly, b: &MPoly, k: &Field) -> MPoly {
    let l = mono_lcm(a.lm(), b.lm());
    let ma = mono_div(&l, a.lm());
    let mb = mono_div(&l, b.lm());
    let left = MPoly::zero(a.order).sub_scaled(k.neg(k.inv(a.lc()).unwrap()), &ma, a, k);
    left.sub_scaled(k.inv(b.lc()).unwrap(), &mb, b, k)
}

fn coprime(a: &[u8; MAX_VARS], b: &[u8; MAX_VARS]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| x == 0 || y == 0)
}

/// Reduced Groebner basis (monic, sorted by leading monomial descending).
pub fn buchberger(ideal: &GroebnerIdeal, k: &Field, caps: Caps) -> Result<Vec<MPoly>> {
    let mut basis: Vec<MPoly> = Vec::new();
    for g in &ideal.gens {
        let r = normal_form(g, &basis, k);
        if !r.is_zero() {
            if r.is_constant_nonzero() {
                return Ok(vec![MPoly::constant(k.one(), ideal.order)]);
            }
            basis.push(r.monic(k));
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    let mut processed = 0usize;
    while !pairs.is_empty() {
        // normal strategy: smallest lcm degree first
        let (best, _) = pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, &(i, j))| (mono_deg(&mono_lcm(basis[i].lm(), basis[j].lm())), i, j))
            .unwrap();
        let (i, j) = pairs.swap_remove(best);
        processed += 1;
        if processed > caps.max_pairs {
            return Err(Error::Overload(format!("more than {} S-pairs", caps.max_pairs)));
        }
        if coprime(basis[i].lm(), basis[j].lm()) {
            continue;
        }
        let s = s_poly(&basis[i], &basis[j], k);
        let r = normal_form(&s, &basis, k);
        if r.is_zero() {
            continue;
        }
        if r.is_constant_nonzero() {
            return Ok(vec![MPoly::constant(k.one(), ideal.order)]);
        }
        if r.total_degree() > caps.max_degree || basis.len() >= caps.max_basis {
            return Err(Error::Overload(format!(
                "basis size {} / degree {} exceeds caps",
                basis.len(),
                r.total_degree()
            )));
        }
        let n = basis.len();
        basis.push(r.monic(k));
        for i2 in 0..n {
            pairs.push((i2, n));
        }
    }
    Ok(reduce_basis(basis, k))
}

fn reduce_basis(mut basis: Vec<MPoly>, k: &Field) -> Vec<MPoly> {
    // drop elements whose leading monomial is divisible by another's
    let mut keep: Vec<MPoly> = Vec::new();
    basis.sort_by(|a, b| a.order.cmp(a.lm(), b.lm()));
    for g in basis {
        if keep.iter().any(|h| mono_divides(h.lm(), g.lm())) {
            continue;
        }
        keep.push(g);
    }
    let mut out = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<MPoly> = keep.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g.clone()).collect();
        out.push(normal_form(&keep[i], &others, k).monic(k));
    }
    out.sort_by(|a, b| a.order.cmp(b.lm(), a.lm()));
    out
}

/// True when the ideal is the whole ring.
pub fn contains_one(gens: Vec<MPoly>, order: TermOrder, k: &Field) -> Result<bool> {
    let basis = buchberger(&GroebnerIdeal::new(order, gens), k, Caps::default())?;
    Ok(basis.len() == 1 && basis[0].is_constant_nonzero())
}

/// Buchberger's criterion: every S-polynomial reduces to zero.
pub fn is_groebner(basis: &[MPoly], k: &Field) -> bool {
    for j in 0..basis.len() {
        for i in 0..j {
            if !normal_form(&s_poly(&basis[i], &basis[j], k), basis, k).is_zero() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Fe;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn v(i: usize, k: &Field) -> MPoly {
        MPoly::var(i, k, TermOrder::Grevlex)
    }

    #[test]
    fn unit_ideal() {
        let k = Field::prime(5).unwrap();
        let one = MPoly::constant(k.one(), TermOrder::Grevlex);
        assert!(contains_one(vec![v(0, &k), v(1, &k), one], TermOrder::Grevlex, &k).unwrap());
    }

    #[test]
    fn monomial_ideal() {
        let k = Field::prime(5).unwrap();
        let x2 = v(0, &k).mul(&v(0, &k), &k);
        let b = buchberger(&GroebnerIdeal::new(TermOrder::Grevlex, vec![x2.clone(), v(1, &k)]), &k, Caps::default()).unwrap();
        assert_eq!(b, vec![x2, v(1, &k)]);
        assert!(!contains_one(b, TermOrder::Grevlex, &k).unwrap());
    }

    #[test]
    fn principal_ideals() {
        let k = Field::new(5, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..20 {
            let terms: Vec<([u8; MAX_VARS], Fe)> = (0..5)
                .map(|_| {
                    let mut m = [0u8; MAX_VARS];
                    m[0] = rng.gen_range(0..3);
                    m[1] = rng.gen_range(0..3);
                    m[2] = rng.gen_range(0..3);
                    (m, k.random_nonzero(&mut rng))
                })
                .collect();
            let f = MPoly::from_terms(terms, TermOrder::Grevlex, Some(&k));
            if f.is_zero() {
                continue;
            }
            let b = buchberger(&GroebnerIdeal::new(TermOrder::Grevlex, vec![f.clone()]), &k, Caps::default()).unwrap();
            assert_eq!(b, vec![f.monic(&k)]);
        }
    }

    #[test]
    fn random_ideals_satisfy_criterion() {
        let k = Field::prime(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for order in [TermOrder::Grevlex, TermOrder::Lex] {
            for _ in 0..10 {
                let gens: Vec<MPoly> = (0..3)
                    .map(|_| {
                        let terms = (0..4)
                            .map(|_| {
                                let mut m = [0u8; MAX_VARS];
                                for x in m.iter_mut().take(3) {
                                    *x = rng.gen_range(0..3);
                                }
                                (m, k.random_nonzero(&mut rng))
                            })
                            .collect();
                        MPoly::from_terms(terms, order, Some(&k))
                    })
                    .collect();
                let b = buchberger(&GroebnerIdeal::new(order, gens.clone()), &k, Caps::default()).unwrap();
                assert!(is_groebner(&b, &k));
                for g in &gens {
                    assert!(normal_form(&g.reorder(order), &b, &k).is_zero());
                }
            }
        }
    }
}
