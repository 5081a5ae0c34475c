mod common;

use common::*;
use hepta::factor::{factorize, materialize_lu, FactorOptions};
use hepta::oracle::{cofactor_det, dense_det};
use hepta::{random_instance, Band, Field, Profile, RatFun, Rational};

fn symbolic(h: &hepta::CyclicHeptaMatrix<Rational>) -> hepta::CyclicHeptaMatrix<RatFun> {
    h.map(RatFun::from_rational)
}

/// `L·U` must equal `H + t·Σ E_ii` over the overridden pivots.
fn check_lu_identity(h: &hepta::CyclicHeptaMatrix<Rational>) -> usize {
    let hs = symbolic(h);
    let fd = factorize(&hs, &FactorOptions::default()).unwrap();
    let (l, u) = materialize_lu(&fd);
    let mut expected = hs.to_dense();
    for o in &fd.overrides {
        expected[(o.index, o.index)] = expected[(o.index, o.index)].clone() + RatFun::t();
    }
    assert_eq!(l.mul(&u).unwrap(), expected);
    fd.overrides.len()
}

#[test]
fn worked_example_first_entries() {
    let fd = factorize(&hepta10(), &FactorOptions::default()).unwrap();
    assert_eq!(fd.alpha[1], q(1));
    assert_eq!(fd.g[1], q(-1));
    assert_eq!(fd.z[1], q(1));
    assert_eq!(fd.v[1], q(-1));
    assert_eq!(fd.w[1], q(2));
    assert_eq!(fd.k[1], q(3));
    assert_eq!(fd.h[1], q(2));
    assert_eq!(fd.f[2], q(1));
    assert!(fd.overrides.is_empty());
    assert_eq!(fd.pivot_product(), q(-32715));
}

#[test]
fn worked_example_lu_identity() {
    let h = hepta10();
    let fd = factorize(&h, &FactorOptions::default()).unwrap();
    let (l, u) = materialize_lu(&fd);
    assert_eq!(l.mul(&u).unwrap(), h.to_dense());
}

#[test]
fn lu_identity_random_all_profiles() {
    let mut with_overrides = 0;
    for seed in 0..40u64 {
        for profile in Profile::ALL {
            let n = 8 + (seed as usize % 9);
            let h = random_instance(n, seed, profile).unwrap();
            if check_lu_identity(&h) > 0 {
                with_overrides += 1;
            }
        }
    }
    assert!(with_overrides >= 40, "zero-pivot profile must trigger overrides");
}

#[test]
fn determinant_matches_oracles() {
    for seed in 0..30u64 {
        for profile in Profile::ALL {
            let n = 8 + (seed as usize % 5);
            let h = random_instance(n, seed, profile).unwrap();
            let dense = h.to_dense();
            let oracle = dense_det(&dense);
            if n <= 10 {
                assert_eq!(cofactor_det(&dense), oracle);
            }
            let fd = factorize(&symbolic(&h), &FactorOptions::default()).unwrap();
            let det = fd.pivot_product().eval_at_zero().unwrap();
            assert_eq!(det, oracle, "n={n} seed={seed} {profile}");
        }
    }
}

#[test]
fn multiple_zero_pivots_share_t() {
    // d_1 = 0 and a later pivot forced to vanish.
    let h = hepta::CyclicHeptaMatrix::<Rational>::identity(11)
        .unwrap()
        .with_entry(Band::Main, 1, q(0))
        .unwrap()
        .with_entry(Band::Main, 5, q(0))
        .unwrap();
    let n_overrides = check_lu_identity(&h);
    assert_eq!(n_overrides, 2);
    let fd = factorize(&symbolic(&h), &FactorOptions::default()).unwrap();
    assert!(fd.pivot_product().eval_at_zero().unwrap().is_zero());
}
