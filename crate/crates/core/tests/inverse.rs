mod common;

use common::*;
use hepta::exact::{self, ExactOptions};
use hepta::factor::{factorize, FactorOptions};
use hepta::inverse::{
    back_columns, forward_substitute, lu_solve, recur_column, seed_columns, seed_rhs,
};
use hepta::oracle::{compare, dense_inverse};
use hepta::{random_instance, Band, CyclicHeptaMatrix, DenseMatrix, Field, HeptaError, Profile, RatFun, Rational};

#[test]
fn worked_example_all_entries() {
    let h = hepta10();
    let res = exact::invert(&h, &ExactOptions::default()).unwrap();
    let expected = hepta10_inverse();
    let diff = compare(&res.inverse, &expected).unwrap();
    assert!(diff.is_equal(), "mismatches at {:?}", diff.mismatches);
    assert_eq!(res.inverse[(1, 1)], qs("-12664/32715"));
    assert_eq!(res.inverse[(7, 6)], qs("-14012/10905"));
    assert_eq!(res.inverse[(9, 6)], qs("27832/32715"));
    assert_eq!(res.inverse[(10, 10)], qs("-1643/32715"));
    // C_4 = 0 in this matrix, so the symbolic path ran.
    assert_eq!(res.c_substitutions, vec![4]);
}

#[test]
fn worked_example_seed_entries() {
    // Column seeds come straight from the factors of H(t); check S_{1,10},
    // S_{10,10} and S_{1,6}.
    let h = hepta10();
    let hs = exact::perturb(&h, &[4], &[]).unwrap();
    let fd = factorize(&hs, &FactorOptions::default()).unwrap();
    let seeds = seed_columns(&fd, false);
    let at0 = |v: &RatFun| v.eval_at_zero().unwrap();
    assert_eq!(at0(&seeds[0][9]), qs("-1643/32715"));
    assert_eq!(at0(&seeds[0][0]), qs("6316/32715"));
    // Col_6 = Col_{n-4}
    assert_eq!(at0(&seeds[4][0]), qs("-24419/32715"));
}

#[test]
fn worked_example_first_column() {
    let res = exact::invert(&hepta10(), &ExactOptions::default()).unwrap();
    let expected: Vec<Rational> = [
        "-12664/32715", "2686/32715", "5417/10905", "293/10905", "6344/32715",
        "938/3635", "1178/10905", "-6356/10905", "16382/32715", "-808/32715",
    ]
    .iter()
    .map(|s| qs(s))
    .collect();
    assert_eq!(res.inverse.column(1), expected);
}

#[test]
fn identity_inverse_through_t_path() {
    let h = CyclicHeptaMatrix::<Rational>::identity(10).unwrap();
    let res = exact::invert(&h, &ExactOptions::default()).unwrap();
    assert_eq!(res.inverse, DenseMatrix::identity(10));
    assert_eq!(res.c_substitutions, vec![1, 2, 3, 4, 5]);
}

#[test]
fn identity_seeds_are_basis_columns() {
    let h = CyclicHeptaMatrix::<Rational>::identity(12).unwrap();
    let fd = factorize(&h, &FactorOptions::default()).unwrap();
    let seeds = seed_columns(&fd, false);
    for (m, col) in seeds.iter().enumerate() {
        let mut e = vec![q(0); 12];
        e[11 - m] = q(1);
        assert_eq!(col, &e);
    }
}

#[test]
fn singular_refused() {
    assert_eq!(
        exact::invert(&singular10(), &ExactOptions::default()),
        Err(HeptaError::Singular)
    );
    let d = exact::determinant(&singular10()).unwrap();
    assert!(d.singular && d.value.is_zero());
}

#[test]
fn seed_closed_forms_match_forward_substitution() {
    for seed in 0..40 {
        let h = random_instance(8 + seed as usize % 7, seed, Profile::General).unwrap();
        let hs = h.map(RatFun::from_rational);
        let fd = factorize(&hs, &FactorOptions::default()).unwrap();
        let n = h.n();
        for m in 0..5 {
            let mut e = vec![RatFun::zero(); n];
            e[n - 1 - m] = RatFun::one();
            assert_eq!(seed_rhs(&fd, m), forward_substitute(&fd, &e), "seed {seed} m {m}");
        }
    }
}

#[test]
fn seeds_reproduce_last_identity_columns() {
    for seed in 0..20 {
        let h = random_instance(8, seed, Profile::General).unwrap();
        let hs = h.map(RatFun::from_rational);
        let fd = factorize(&hs, &FactorOptions::default()).unwrap();
        if fd.pivot_product().eval_at_zero().unwrap().is_zero() {
            continue;
        }
        let seeds = seed_columns(&fd, false);
        for (m, col) in seeds.iter().enumerate() {
            let hx: Vec<Rational> = hs
                .mul_vec(col)
                .unwrap()
                .iter()
                .map(|v| v.eval_at_zero().unwrap())
                .collect();
            let mut e = vec![q(0); 8];
            e[7 - m] = q(1);
            assert_eq!(hx, e);
        }
    }
}

#[test]
fn parallel_and_sequential_seeds_agree() {
    for seed in 0..10 {
        let h = random_instance(14, seed, Profile::ZeroPivotProne).unwrap();
        let hs = h.map(RatFun::from_rational);
        let fd = factorize(&hs, &FactorOptions::default()).unwrap();
        assert_eq!(seed_columns(&fd, true), seed_columns(&fd, false));
    }
}

#[test]
fn zero_c_without_substitution_is_contract_violation() {
    let h = CyclicHeptaMatrix::<Rational>::identity(9).unwrap();
    let fd = factorize(&h, &FactorOptions::default()).unwrap();
    assert_eq!(
        back_columns(&h, seed_columns(&fd, false)),
        Err(HeptaError::ZeroBandDivisor { index: 4 })
    );
}

#[test]
fn column_recurrence_is_local() {
    // Col_j depends only on Col_{j+1..=j+6}; scribbling over columns left of
    // j must not change it.
    let h = random_instance(12, 5, Profile::DiagonallyDominant).unwrap();
    let inv = exact::invert(&h, &ExactOptions::default()).unwrap().inverse;
    let exact_cols: Vec<Vec<Rational>> = (1..=12).map(|j| inv.column(j)).collect();
    for j in (1..=7).rev() {
        let mut cols = exact_cols.clone();
        let before = recur_column(&h, &cols, j);
        for col in &mut cols[..j - 1] {
            *col = vec![q(99); 12];
        }
        assert_eq!(recur_column(&h, &cols, j), before);
        assert_eq!(before, inv.column(j));
    }
}

#[test]
fn recurrence_and_substitution_agree_exactly() {
    for seed in 0..20 {
        let h = random_instance(8 + seed as usize % 6, seed, Profile::General).unwrap();
        if h.band(Band::Super3)[..h.n() - 5].iter().any(Field::is_zero) {
            continue;
        }
        let Ok(hepta::exact::ExactFactor::Rational(fd)) = exact::factorize_exact(&h, 64) else {
            continue;
        };
        let rec = back_columns(&h, seed_columns(&fd, false)).unwrap();
        for (j, col) in rec.iter().enumerate() {
            let mut e = vec![q(0); h.n()];
            e[j] = q(1);
            assert_eq!(col, &lu_solve(&fd, &e));
        }
    }
}

#[test]
fn b_substitution_is_harmless() {
    let mut checked = 0;
    for seed in 0..30 {
        let h = random_instance(11, seed, Profile::General).unwrap();
        let h = h.with_entry(Band::Sub2, 7, q(0)).unwrap();
        let opts = ExactOptions {
            apply_b_substitution: true,
            ..Default::default()
        };
        match exact::invert(&h, &opts) {
            Ok(res) => {
                assert!(res.b_substitutions.contains(&7));
                assert_eq!(res.inverse, dense_inverse(&h.to_dense()).unwrap());
                checked += 1;
            }
            Err(HeptaError::Singular) => {}
            Err(e) => panic!("{e}"),
        }
    }
    assert!(checked > 20);
}

#[test]
fn degree_cap_enforced() {
    let h = CyclicHeptaMatrix::<Rational>::identity(12).unwrap();
    let opts = ExactOptions {
        degree_cap: 2,
        ..Default::default()
    };
    assert!(matches!(
        exact::invert(&h, &opts),
        Err(HeptaError::DegreeCap { cap: 2, .. })
    ));
}

#[test]
fn symbolic_profiles_match_oracle() {
    for seed in 0..40u64 {
        let profile = if seed % 2 == 0 { Profile::ZeroC } else { Profile::ZeroPivotProne };
        let h = random_instance(8 + seed as usize % 9, seed, profile).unwrap();
        let dense = h.to_dense();
        match (exact::invert(&h, &ExactOptions::default()), dense_inverse(&dense)) {
            (Ok(res), Ok(oracle)) => {
                assert!(compare(&res.inverse, &oracle).unwrap().is_equal(), "seed {seed}");
            }
            (Err(HeptaError::Singular), Err(HeptaError::Singular)) => {}
            (a, b) => panic!("seed {seed}: {:?} vs {:?}", a.err(), b.err()),
        }
    }
}

#[test]
fn fractional_entries_take_the_rational_path() {
    // H/2 is not integral; its inverse must be exactly 2·H⁻¹.
    let h = hepta10();
    let half = h.map(|x| x.clone() / &q(2));
    let inv = exact::invert(&h, &ExactOptions::default()).unwrap().inverse;
    let inv_half = exact::invert(&half, &ExactOptions::default()).unwrap().inverse;
    assert_eq!(inv_half, inv.map(|x| x.clone() * &q(2)));
    let general = random_instance(13, 5, Profile::DiagonallyDominant).unwrap();
    let third = general.map(|x| x.clone() / &q(3));
    let expected = dense_inverse(&third.to_dense()).unwrap();
    let got = exact::invert(&third, &ExactOptions::default()).unwrap().inverse;
    assert!(compare(&got, &expected).unwrap().is_equal());
}
