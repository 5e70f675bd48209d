use proptest::prelude::*;

use ssp_core::algebra::{factor, roots, Fe, Field, UniPoly};
use ssp_core::census::{congruence_ok, trace_p2};
use ssp_core::frobenius::{cm_poly, cm_vanishes, hasse_invariant, hw_canonical_g4, hw_canonical_vanishes, is_superspecial};
use ssp_core::isomorphy::binary_form_iso;
use ssp_core::models::{CurveModel, Hyper, QType};
use ssp_core::par::{run_chunks, NoLog, ScanConfig};
use ssp_core::richelot::{count_points, neighbours, rational_points, rosenhain_key, Codomain};

const PRIMES: [u64; 4] = [5, 7, 11, 13];

fn field() -> impl Strategy<Value = Field> {
    (prop::sample::select(&PRIMES[..]), 1usize..=3).prop_map(|(p, k)| Field::new(p, k).unwrap())
}

fn elts(k: &Field, n: usize) -> impl Strategy<Value = Vec<Fe>> {
    let k = k.clone();
    prop::collection::vec(0..k.q(), n).prop_map(move |v| v.into_iter().map(|i| k.element(i)).collect())
}

fn poly(k: &Field, deg: usize) -> impl Strategy<Value = UniPoly> {
    let k = k.clone();
    elts(&k, deg).prop_map(move |mut c| {
        c.push(k.one());
        UniPoly::from_coeffs(c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn field_axioms((k, v) in field().prop_flat_map(|k| { let s = elts(&k, 3); (Just(k), s) })) {
        let (a, b, c) = (v[0], v[1], v[2]);
        prop_assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
        prop_assert_eq!(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
        prop_assert_eq!(k.add(a, k.neg(a)), k.zero());
        if !a.is_zero() {
            prop_assert_eq!(k.mul(a, k.inv(a).unwrap()), k.one());
        }
        // Frobenius is additive and fixes exactly F_p
        prop_assert_eq!(k.frobenius(k.add(a, b)), k.add(k.frobenius(a), k.frobenius(b)));
        prop_assert_eq!(k.pow(a, k.q() as u128), a);
        prop_assert_eq!(k.parse(&k.format(a)).unwrap(), a);
    }

    #[test]
    fn factorisation_multiplies_back((k, f) in field().prop_flat_map(|k| { let f = (1usize..=7).prop_flat_map({ let k = k.clone(); move |d| poly(&k, d) }); (Just(k), f) })) {
        let fs = factor(&f, &k);
        let mut prod = UniPoly::one(&k);
        for (g, e) in &fs {
            prop_assert!(ssp_core::algebra::is_irreducible(g, &k));
            prod = prod.mul(&g.pow(*e as u64, &k), &k);
        }
        prop_assert_eq!(prod, f.monic(&k));
        for r in roots(&k, &f) {
            prop_assert!(f.eval(r, &k).is_zero());
        }
        // sorted by degree, then coefficients
        let mut again = fs.clone();
        again.sort_by(|a, b| (a.0.deg(), &a.0).cmp(&(b.0.deg(), &b.0)));
        prop_assert_eq!(again, fs);
    }

    #[test]
    fn early_abort_agrees_with_full_matrix(p in prop::sample::select(&PRIMES[..]), g in 1usize..=3, seed in any::<u64>()) {
        let k = Field::prime(p).unwrap();
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let mut c: Vec<Fe> = (0..2 * g + 2).map(|_| k.random(&mut rng)).collect();
        c.push(k.one());
        let f = UniPoly::from_coeffs(c);
        prop_assert_eq!(cm_vanishes(&f, g, &k).unwrap(), cm_poly(&f, g, &k).unwrap().is_zero());
    }

    #[test]
    fn hasse_invariant_matches_point_count(p in prop::sample::select(&[5u64, 7, 11, 13, 17, 19, 23][..]), a in 0u64..23, b in 0u64..23) {
        let k = Field::prime(p).unwrap();
        let (a, b) = (k.from_u64(a), k.from_u64(b));
        prop_assume!(CurveModel::elliptic(a, b, &k).is_ok());
        let f = UniPoly::from_coeffs(vec![b, a, k.zero(), k.one()]);
        let n = count_points(&Hyper { c: k.one(), f, g: 1 }, &k);
        // supersingular over F_p iff #E(F_p) = 1 mod p
        prop_assert_eq!(hasse_invariant(a, b, &k).unwrap().is_zero(), n % p == 1 % p);
    }

    #[test]
    fn canonical_early_abort_agrees(seed in any::<u64>(), t in 0usize..3) {
        let k = Field::prime(5).unwrap();
        let qtype = [QType::N1, QType::N2, QType::Dege][t];
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let table = ssp_core::algebra::form::MonoTable::new(4, 3);
        let cs: Vec<Fe> = (0..table.len()).map(|_| k.random(&mut rng)).collect();
        let cubic = ssp_core::algebra::form::HomogForm::from_dense(4, 3, &table, &cs);
        let m = ssp_core::models::Canonical { qtype, cubic };
        prop_assert_eq!(hw_canonical_vanishes(&m, &k).unwrap(), hw_canonical_g4(&m, &k).unwrap().is_zero());
    }

    #[test]
    fn moebius_images_are_isomorphic(seed in any::<u64>()) {
        let k = Field::prime(11).unwrap();
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let f = loop {
            let mut c: Vec<Fe> = (0..6).map(|_| k.random(&mut rng)).collect();
            c.push(k.one());
            let f = UniPoly::from_coeffs(c);
            if f.is_separable(&k) {
                break f;
            }
        };
        // x -> a x + b, then scale the curve
        let (a, b, s) = (k.random_nonzero(&mut rng), k.random(&mut rng), k.random_nonzero(&mut rng));
        let g = f.compose_affine(a, b, &k).scale(s, &k);
        let h1 = Hyper { c: k.one(), f, g: 2 };
        let h2 = Hyper { c: k.one(), f: g, g: 2 };
        prop_assert!(binary_form_iso(&h1, &h2, true, &k).unwrap().is_some());
    }

    #[test]
    fn chunking_never_changes_scan_output(total in 0u64..2000, chunk in 1u64..300, jobs in 1usize..5, m in 2u64..17) {
        let want: Vec<u64> = (0..total).filter(|i| i % m == 1).collect();
        let cfg = ScanConfig { jobs, chunk_size: chunk };
        let got = run_chunks(total, &cfg, &mut NoLog, |s, e| Ok((s..e).filter(|i| i % m == 1).collect())).unwrap();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn trace_congruence_is_a_multiple_of_2p(p in prop::sample::select(&PRIMES[..]), g in 1usize..=5, s in -1i64..=1) {
        let n = (p * p + 1) as i64 - s * 2 * g as i64 * p as i64;
        let t = trace_p2(n as u64, p, g).unwrap();
        prop_assert!(congruence_ok(t, p));
        prop_assert!(trace_p2(p * p + 1 + 2 * g as u64 * p + 1, p, g).is_err());
    }
}

#[test]
fn richelot_neighbours_stay_superspecial() {
    // every neighbour of a superspecial genus-2 curve is superspecial
    for p in [7u64, 11, 13] {
        let k = Field::new(p, 2).unwrap();
        let seed = ssp_core::richelot::glue_seed(&k).unwrap();
        let key = rosenhain_key(&rational_points(&seed.f, &k).unwrap(), &k);
        for c in neighbours(&key, &k).unwrap() {
            if let Codomain::Curve(h) = c {
                assert!(is_superspecial(&CurveModel::Hyperelliptic(h), &k).unwrap());
            }
        }
    }
}
