use oracle_disc::channels::{channel_balanced_bruteforce, channel_balanced_closed};
use oracle_disc::discrimination::{
    helstrom_error, helstrom_povm, povm_error, DiscriminationProblem, Povm2,
};
use oracle_disc::linalg::{
    dephase, hermitian_eigenvalues, trace_norm, ComplexMatrix, DensityOperator,
};
use oracle_disc::oracle::{apply_oracle, apply_oracle_density, balanced_count, OracleFunction};
use oracle_disc::sampling;
use oracle_disc::thermal::{
    deviation_trace_norm, error_lower_bound, thermal_state, ThermalConfig, ThermalMode,
};
use proptest::prelude::*;
use rand::{seq::SliceRandom, Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn min_eigenvalue(rho: &DensityOperator) -> f64 {
    *hermitian_eigenvalues(rho.matrix()).unwrap().last().unwrap()
}

fn random_balanced<R: Rng>(r: &mut R, n: u32) -> OracleFunction {
    let big_n = 1usize << n;
    let mut idx: Vec<usize> = (0..big_n).collect();
    idx.shuffle(r);
    OracleFunction::from_ones(n, &idx[..big_n / 2]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn balanced_channel_is_linear_and_trace_preserving(seed: u64, n in 1u32..=4, a in 0.0f64..=1.0) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let rho = sampling::random_density(&mut r, 1 << n);
        let sigma = sampling::random_density(&mut r, 1 << n);
        let mixed = rho.mix(&sigma, a).unwrap();
        let lhs = channel_balanced_closed(&mixed).unwrap();
        let rhs = channel_balanced_closed(&rho).unwrap().mix(&channel_balanced_closed(&sigma).unwrap(), a).unwrap();
        prop_assert!(lhs.matrix().max_abs_diff(rhs.matrix()) < 1e-12);
        prop_assert!((lhs.matrix().trace().re - 1.0).abs() < 1e-12);
        prop_assert!(min_eigenvalue(&lhs) > -1e-12);
    }

    #[test]
    fn weighted_bruteforce_output_is_a_state(seed: u64, n in 1u32..=3) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let rho = sampling::random_density(&mut r, 1 << n);
        let w = sampling::random_weights(&mut r, balanced_count(n).unwrap() as usize);
        let out = channel_balanced_bruteforce(&rho, Some(&w)).unwrap().output;
        prop_assert!((out.matrix().trace().re - 1.0).abs() < 1e-12);
        prop_assert!(min_eigenvalue(&out) > -1e-12);
        // the diagonal is untouched by any phase oracle
        prop_assert!(out.matrix().diagonal_part().max_abs_diff(&rho.matrix().diagonal_part()) < 1e-12);
    }

    #[test]
    fn dephasing_is_idempotent(seed: u64, dim in 1usize..=16) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let rho = sampling::random_density(&mut r, dim);
        let once = dephase(&rho);
        prop_assert!(dephase(&once).matrix().max_abs_diff(once.matrix()) == 0.0);
    }

    #[test]
    fn trace_norm_is_unitarily_invariant(seed: u64, dim in 1usize..=12) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let h = sampling::random_hermitian(&mut r, dim);
        let v = sampling::random_unitary(&mut r, dim);
        prop_assert!((trace_norm(&h) - trace_norm(&h.conjugate_by(&v))).abs() < 1e-10);
    }

    #[test]
    fn oracle_preserves_norm_and_matches_unitary(seed: u64, n in 1u32..=4) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let table: Vec<bool> = (0..1usize << n).map(|_| r.random()).collect();
        let f = OracleFunction::new(n, table).unwrap();
        let psi = sampling::random_pure_state(&mut r, 1 << n);
        let out = apply_oracle(&f, &psi).unwrap();
        prop_assert!((out.norm_sqr() - 1.0).abs() < 1e-12);
        let rho = sampling::random_density(&mut r, 1 << n);
        let by_mask = apply_oracle_density(&f, &rho).unwrap();
        let by_unitary = rho.matrix().conjugate_by(&f.unitary());
        prop_assert!(by_mask.matrix().max_abs_diff(&by_unitary) < 1e-14);
    }

    #[test]
    fn closed_channel_is_average_of_sampled_balanced_oracles(seed: u64) {
        // n = 2: the six balanced oracles can be reached by random sampling,
        // so a large sample average must approach the closed form
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let rho = sampling::random_density(&mut r, 4);
        let mut acc = ComplexMatrix::zeros(4);
        let samples = 3000;
        for _ in 0..samples {
            let f = random_balanced(&mut r, 2);
            acc = &acc + apply_oracle_density(&f, &rho).unwrap().matrix();
        }
        let avg = acc.scale(1.0 / samples as f64);
        prop_assert!(avg.max_abs_diff(channel_balanced_closed(&rho).unwrap().matrix()) < 0.05);
    }

    #[test]
    fn no_measurement_beats_helstrom(seed: u64, n in 1u32..=3) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let dim = 1usize << n;
        let rho0 = sampling::random_density(&mut r, dim);
        let prob = DiscriminationProblem::from_initial_state(&rho0, 0.5, 0.5).unwrap();
        let best = helstrom_error(&prob);
        prop_assert!((0.0..=0.5).contains(&best));
        prop_assert!((povm_error(&prob, &helstrom_povm(&prob)).unwrap() - best).abs() < 1e-10);
        for _ in 0..25 {
            let u = sampling::random_unitary(&mut r, dim);
            let diag: Vec<f64> = (0..dim).map(|_| r.random_range(0.0..=1.0)).collect();
            let effect = ComplexMatrix::from_real_diagonal(&diag).conjugate_by(&u);
            let effect = (&effect + &effect.adjoint()).scale(0.5);
            let povm = Povm2::from_const_effect(effect).unwrap();
            prop_assert!(povm_error(&prob, &povm).unwrap() >= best - 1e-10);
        }
    }

    #[test]
    fn thermal_bounds_ignore_qubit_order(seed: u64, n in 1usize..=8) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let mut alphas: Vec<f64> = (0..n).map(|_| r.random_range(0.0..0.1)).collect();
        let before = error_lower_bound(&ThermalConfig::new(alphas.clone()).unwrap());
        alphas.shuffle(&mut r);
        let after = error_lower_bound(&ThermalConfig::new(alphas).unwrap());
        prop_assert!((before.dev_trace_norm_exact.unwrap() - after.dev_trace_norm_exact.unwrap()).abs() < 1e-15);
        prop_assert_eq!(before.epsilon, after.epsilon);
        prop_assert_eq!(before.n_required, after.n_required);
    }

    #[test]
    fn linearized_thermal_state_is_first_order(seed: u64, n in 1usize..=6) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let alphas: Vec<f64> = (0..n).map(|_| r.random_range(0.0..1e-3)).collect();
        let cfg = ThermalConfig::new(alphas).unwrap();
        let exact = thermal_state(&cfg, ThermalMode::Exact).unwrap();
        let lin = thermal_state(&cfg, ThermalMode::Linearized).unwrap();
        let a1 = cfg.alpha1();
        let gap = trace_norm(&(exact.matrix() - lin.matrix()));
        prop_assert!(gap <= (n as f64 * a1).powi(2) + 1e-15);
        // I/N minus the linearized state is rho_dev
        let dev = deviation_trace_norm(&cfg).exact.unwrap();
        let dim = 1usize << n;
        let centered = &ComplexMatrix::identity(dim).scale(1.0 / dim as f64) - lin.matrix();
        prop_assert!((trace_norm(&centered) - dev).abs() < 1e-14);
    }
}
