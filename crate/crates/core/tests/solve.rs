mod common;

use common::*;
use hepta::exact::{self, ExactOptions};
use hepta::floating::{self, relative_residual};
use hepta::{random_instance, CyclicHeptaMatrix, Float, HeptaError, Profile, Rational, SolveMethod};

fn one_to_ten() -> Vec<Rational> {
    (1..=10).map(q).collect()
}

#[test]
fn worked_system_both_methods() {
    let h = hepta10();
    let r = hepta10_rhs();
    let opts = ExactOptions::default();
    let inv = exact::solve_via_inverse(&h, &r, &opts).unwrap();
    assert_eq!(inv.x, one_to_ten());
    assert_eq!(inv.method, SolveMethod::ViaInverse);
    let lu = exact::solve_via_lu(&h, &r, &opts).unwrap();
    assert_eq!(lu.x, one_to_ten());
    assert_eq!(lu.det, q(-32715));
}

#[test]
fn identity_returns_rhs() {
    let h = CyclicHeptaMatrix::<Rational>::identity(9).unwrap();
    let r: Vec<Rational> = (0..9).map(|v| qs(&format!("{v}/7"))).collect();
    let opts = ExactOptions::default();
    assert_eq!(exact::solve_via_lu(&h, &r, &opts).unwrap().x, r);
    assert_eq!(exact::solve_via_inverse(&h, &r, &opts).unwrap().x, r);
}

#[test]
fn methods_agree_and_residual_is_exact() {
    let mut solved = 0;
    for seed in 0..200u64 {
        let profile = Profile::ALL[seed as usize % 4];
        let n = 8 + (seed as usize % 13);
        let h = random_instance(n, seed, profile).unwrap();
        let r: Vec<Rational> = (0..n as i64).map(|v| q(v * v - 3 * v + 1)).collect();
        let opts = ExactOptions::default();
        match exact::solve_via_lu(&h, &r, &opts) {
            Ok(lu) => {
                assert_eq!(h.mul_vec(&lu.x).unwrap(), r, "seed {seed}");
                let inv = exact::solve_via_inverse(&h, &r, &opts).unwrap();
                assert_eq!(inv.x, lu.x, "seed {seed}");
                solved += 1;
            }
            Err(HeptaError::Singular) => {
                assert_eq!(exact::solve_via_inverse(&h, &r, &opts), Err(HeptaError::Singular));
            }
            Err(e) => panic!("seed {seed}: {e}"),
        }
    }
    assert!(solved >= 190);
}

#[test]
fn rhs_length_checked() {
    let h = hepta10();
    assert!(matches!(
        exact::solve_via_lu(&h, &[q(1)], &ExactOptions::default()),
        Err(HeptaError::DimensionMismatch { .. })
    ));
}

#[test]
fn singular_system_refused() {
    let r = vec![q(1); 10];
    assert_eq!(
        exact::solve_via_lu(&singular10(), &r, &ExactOptions::default()),
        Err(HeptaError::Singular)
    );
}

#[test]
fn float_residual_small_on_dominant_instances() {
    for (k, n) in [8usize, 17, 64, 129, 256, 512].into_iter().enumerate() {
        let h = floating::to_float(&random_instance(n, k as u64, Profile::DiagonallyDominant).unwrap());
        let r: Vec<Float> = (0..n).map(|i| Float((i as f64).sin() * 10.0)).collect();
        let rep = floating::solve_via_lu(&h, &r, 1e-12).unwrap();
        let rel = relative_residual(&h, &rep.x, &r).unwrap();
        assert!(rel <= 1e-10, "n={n} residual {rel:e}");
    }
}

#[test]
fn float_zero_pivot_is_reported() {
    let h = floating::to_float(&random_instance(9, 1, Profile::ZeroPivotProne).unwrap());
    let r = vec![Float(1.0); 9];
    assert_eq!(
        floating::solve_via_lu(&h, &r, 1e-12),
        Err(HeptaError::NearSingularPivot { index: 1 })
    );
}
