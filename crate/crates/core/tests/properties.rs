mod common;

use std::sync::Arc;

use chrono::{TimeZone, Utc};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use supercodim_core::algebra::{build_b2, Parity, StructureSuperalgebra, SuperElement};
use supercodim_core::codim::{CodimCache, CodimEngine, CodimRecord, CodimRequest};
use supercodim_core::numeric::{BigRat, QuadExt3, SparseMat};
use supercodim_core::perm;
use supercodim_core::poly::{parse_poly, BracketPoly, SpanningStrategy};

fn b2() -> Arc<StructureSuperalgebra> {
    Arc::new(build_b2())
}

fn rat() -> impl Strategy<Value = BigRat> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| BigRat::ratio(n, d).unwrap())
}

fn quad() -> impl Strategy<Value = QuadExt3> {
    (rat(), rat()).prop_map(|(a, b)| QuadExt3::new(a, b))
}

/// A random homogeneous element of the given parity.
fn random_element<R: Rng>(rng: &mut R, alg: &Arc<StructureSuperalgebra>, parity: Parity) -> SuperElement {
    let mut coords = vec![BigRat::zero(); alg.dim()];
    for i in alg.basis_of_parity(parity) {
        coords[i] = BigRat::from_int(rng.gen_range(-3..=3));
    }
    SuperElement::from_coords(alg, coords).unwrap()
}

fn random_basis_assignment<R: Rng>(rng: &mut R, alg: &Arc<StructureSuperalgebra>, p: &BracketPoly) -> Vec<SuperElement> {
    p.parities()
        .iter()
        .map(|&par| {
            let choices = alg.basis_of_parity(par);
            SuperElement::basis(alg, choices[rng.gen_range(0..choices.len())])
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rational_field_axioms(a in rat(), b in rat(), c in rat()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        prop_assert_eq!(&a - &a, BigRat::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * a.recip().unwrap(), BigRat::one());
        }
        let text = a.to_string();
        prop_assert_eq!(text.parse::<BigRat>().unwrap(), a);
    }

    #[test]
    fn quadratic_field_laws(x in quad(), y in quad(), z in quad()) {
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        if !x.is_zero() {
            prop_assert_eq!(&x * &x.inverse().unwrap(), QuadExt3::one());
        }
    }

    #[test]
    fn quadratic_sign_matches_float(x in quad()) {
        let f = x.approx_f64();
        // the float agrees whenever it is not too close to zero to trust
        if f.abs() > 1e-9 {
            prop_assert_eq!(x.sign(), f.partial_cmp(&0.0).unwrap());
        }
        prop_assert_eq!(x.sign() == std::cmp::Ordering::Equal, x.is_zero());
    }

    #[test]
    fn quadratic_powers(x in quad(), e in 0u32..12) {
        prop_assert_eq!(x.pow(e as i64).unwrap(), x.pow_naive(e));
    }

    #[test]
    fn rank_invariances(seed in any::<u64>(), rows in 1usize..7, cols in 1usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dense: Vec<Vec<BigRat>> = (0..rows)
            .map(|_| (0..cols).map(|_| BigRat::from_int(rng.gen_range(-2..=2))).collect())
            .collect();
        let m = SparseMat::from_dense(&dense);
        let r = m.rank();
        prop_assert!(r <= rows.min(cols));
        prop_assert_eq!(m.transpose().rank(), r);

        let mut shuffled = dense.clone();
        shuffled.reverse();
        shuffled.rotate_left(rng.gen_range(0..rows));
        prop_assert_eq!(SparseMat::from_dense(&shuffled).rank(), r);

        let scaled: Vec<Vec<BigRat>> = dense
            .iter()
            .map(|row| {
                let s = BigRat::from_int(rng.gen_range(1..=5)) * BigRat::from_int(if rng.gen() { 1 } else { -1 });
                row.iter().map(|x| x * &s).collect()
            })
            .collect();
        prop_assert_eq!(SparseMat::from_dense(&scaled).rank(), r);

        // appending a combination of existing rows leaves the rank unchanged
        let mut extended = dense.clone();
        let combo: Vec<BigRat> = (0..cols)
            .map(|c| dense.iter().map(|row| &row[c] * BigRat::from_int(2)).sum())
            .collect();
        extended.push(combo);
        prop_assert_eq!(SparseMat::from_dense(&extended).rank(), r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn evaluation_is_multilinear(seed in any::<u64>(), k in 0usize..3, l in 1usize..4) {
        let alg = b2();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = common::random_poly(&mut rng, common::context(k, l), 2);
        let mut values: Vec<SuperElement> = p
            .parities()
            .iter()
            .map(|&par| random_element(&mut rng, &alg, par))
            .collect();
        let slot = rng.gen_range(0..values.len());
        let par = p.parities()[slot];
        let (u, v) = (random_element(&mut rng, &alg, par), random_element(&mut rng, &alg, par));
        let (alpha, beta) = (BigRat::from_int(rng.gen_range(-3..=3)), BigRat::ratio(1, 2).unwrap());

        values[slot] = u.scale(&alpha).add(&v.scale(&beta)).unwrap();
        let combined = p.evaluate(&values).unwrap();
        values[slot] = u;
        let at_u = p.evaluate(&values).unwrap();
        values[slot] = v;
        let at_v = p.evaluate(&values).unwrap();
        prop_assert_eq!(combined, at_u.scale(&alpha).add(&at_v.scale(&beta)).unwrap());
    }

    #[test]
    fn alternation_with_equal_values_vanishes(seed in any::<u64>(), k in 2usize..4, l in 0usize..3) {
        let alg = b2();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = common::random_poly(&mut rng, common::context(k, l), 2).alt(&[0, 1]).unwrap();
        let mut values: Vec<SuperElement> = p
            .parities()
            .iter()
            .map(|&par| random_element(&mut rng, &alg, par))
            .collect();
        values[1] = values[0].clone();
        prop_assert!(p.evaluate(&values).unwrap().is_zero());
    }

    #[test]
    fn operators_on_disjoint_sets_commute(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = common::random_poly(&mut rng, common::context(3, 2), 2);
        let a = p.alt(&[0, 1]).unwrap().sym(&[3, 4]).unwrap();
        let b = p.sym(&[3, 4]).unwrap().alt(&[0, 1]).unwrap();
        prop_assert_eq!(a, b);
        // alternating twice multiplies by the group order
        let twice = p.alt(&[0, 1, 2]).unwrap().alt(&[0, 1, 2]).unwrap();
        prop_assert_eq!(twice, p.alt(&[0, 1, 2]).unwrap().scale(&BigRat::from_int(6)));
    }

    #[test]
    fn display_parses_back(seed in any::<u64>(), k in 0usize..3, l in 1usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = common::random_poly(&mut rng, common::context(k, l), 3);
        prop_assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn cache_roundtrip(entries in proptest::collection::vec((0usize..4, 0usize..4, 0u32..3, 0i64..2_000_000_000), 0..8)) {
        let mut cache = CodimCache::new();
        for (k, l, v, ts) in entries {
            if k + l == 0 {
                continue;
            }
            let n_rows = perm::factorial(k + l) as usize;
            cache.insert(CodimRecord {
                request: CodimRequest { algebra_id: "b2".into(), k, l },
                value: (v as usize).min(n_rows),
                n_rows,
                n_cols: 7,
                timestamp: Utc.timestamp_opt(ts, 0).unwrap(),
            });
        }
        prop_assert_eq!(CodimCache::parse(&cache.to_text()).unwrap(), cache);
    }
}

#[test]
fn left_normed_rewriting_is_sound() {
    let alg = b2();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let (k, l) = (rng.gen_range(0..4), rng.gen_range(0..4));
        if k + l < 2 {
            continue;
        }
        let p = common::random_poly(&mut rng, common::context(k, l), 1);
        let q = p.to_left_normed();
        assert!(q.terms().all(|(t, _)| t.is_left_comb()));
        for _ in 0..4 {
            let values = random_basis_assignment(&mut rng, &alg, &p);
            assert_eq!(p.evaluate(&values).unwrap(), q.evaluate(&values).unwrap(), "{p}");
        }
    }
}

#[test]
fn identity_routes_agree() {
    let alg = b2();
    let engine = CodimEngine::new(Arc::clone(&alg));
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..30 {
        let (k, l) = (rng.gen_range(0..3), rng.gen_range(1..3));
        let p = common::random_poly(&mut rng, common::context(k, l), 2);
        // mix in identities so both outcomes occur
        let p = if rng.gen() { p.alt(&(0..k.min(2)).collect::<Vec<_>>()).unwrap() } else { p };
        let fast = engine.is_graded_identity(&p).unwrap();
        let slow = engine.is_graded_identity_by_substitution(&p).unwrap();
        assert_eq!(fast.is_identity(), slow.is_identity(), "{p}");
    }
}

#[test]
fn codimension_ceilings() {
    let mut engine = CodimEngine::new(b2());
    for n in 1..=4usize {
        for k in 0..=n {
            let l = n - k;
            let c = engine.codim(k, l).unwrap();
            assert!(c as u128 <= perm::factorial(n));
            assert!(c <= 3usize.pow(k as u32) * 4usize.pow(l as u32) * 7);
            let reduced = engine.compute(k, l, SpanningStrategy::FirstVariableFixed).unwrap();
            assert_eq!(reduced.value, c);
        }
    }
}
