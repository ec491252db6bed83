use proptest::prelude::*;

use wradius::eigen::spectral_norm;
use wradius::io::{parse_matrix, write_matrix};
use wradius::lab::{check_dragomir, check_kittaneh, input_digest, rotation_expansion_defect, CheckOpts};
use wradius::matrix::c;
use wradius::radius::{numerical_radius, RadiusOpts};
use wradius::CMat;

fn square(max_n: usize, range: f64) -> impl Strategy<Value = CMat> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec((-range..range, -range..range), n * n)
            .prop_map(move |v| CMat::new(n, n, v.into_iter().map(|(re, im)| c(re, im)).collect()).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn radius_lies_between_half_norm_and_norm(t in square(5, 10.0)) {
        let w = numerical_radius(&t, &RadiusOpts::default()).unwrap().value;
        let n = spectral_norm(&t);
        prop_assert!(0.5 * n - 1e-9 * n.max(1.0) <= w);
        prop_assert!(w <= n + 1e-9 * n.max(1.0));
    }

    #[test]
    fn radius_of_adjoint_and_rotation(t in square(4, 5.0), theta in 0.0..std::f64::consts::TAU) {
        let opts = RadiusOpts::default();
        let w = numerical_radius(&t, &opts).unwrap().value;
        let wa = numerical_radius(&t.adjoint(), &opts).unwrap().value;
        let wr = numerical_radius(&t.rotate(theta), &opts).unwrap().value;
        prop_assert!((w - wa).abs() <= 1e-9 * w.max(1.0));
        prop_assert!((w - wr).abs() <= 1e-9 * w.max(1.0));
    }

    #[test]
    fn matrix_text_round_trips_bit_exactly(t in square(4, 1e6)) {
        let back = parse_matrix(&write_matrix(&t)).unwrap();
        prop_assert_eq!(input_digest(&[&t]), input_digest(&[&back]));
        prop_assert_eq!(back, t);
    }

    #[test]
    fn rotation_expansion_is_exact(t in square(5, 10.0), theta in -10.0..10.0f64) {
        let scale = t.max_abs().max(1.0);
        prop_assert!(rotation_expansion_defect(&t, theta).unwrap() <= 1e-13 * scale);
    }

    #[test]
    fn kittaneh_and_dragomir_hold(t in square(4, 3.0)) {
        let opts = CheckOpts::default();
        for r in check_kittaneh(&t, &opts).unwrap().into_iter().chain(check_dragomir(&t, &opts).unwrap()) {
            prop_assert!(r.holds, "{} slack {}", r.name, r.slack);
        }
    }
}
