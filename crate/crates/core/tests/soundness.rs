//! Soundness suite: enclosure identities, precision consistency, tail
//! bounds, quadrature refinement, exact oracles and certificate checks.

mod common;

macro_rules! check {
    ($($name:ident),* $(,)?) => {
        $(
            #[test]
            fn $name() {
                if let Err(e) = common::$name() {
                    panic!("{e}");
                }
            }
        )*
    };
}

check!(
    ball_identities,
    two_precision_consistency,
    monotone_inclusion,
    certainly_less_antisymmetric,
    decimal_round_trip_widens,
    tail_bound_validity,
    terminating_series_exact,
    recursion_matches_series,
    arcsin_identity,
    f1_dual_path,
    quadrature_soundness,
    quadrature_refinement,
    qsqrt23_inverse,
    lens_wallis_matches_specfun,
    polynomial_matches_specfun,
    simons_matches_polynomial,
    corner_consistency,
    m_symmetry,
    verdict_stability,
    certificate_replay,
    determinism,
    no_false_proofs,
);
