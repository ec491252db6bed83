use std::f64::consts::SQRT_2;

use wradius::eigen::spectral_norm;
use wradius::ensembles::{generate_matrix, EnsembleSpec};
use wradius::norms::{registry, NormSpec};
use wradius::radius::{
    alphabeta_radius, generalized_radius, numerical_radius, omega_norm, omega_radius, omega_radius_slow,
    omega_radius_slow_opts, omega_vector_lower_bound, OmegaOpts, RadiusOpts,
};
use wradius::CMat;

const EPS: f64 = 1e-9;
const KINDS: [&str; 6] = ["ginibre", "hermitian", "normal", "unitary", "nil", "contraction"];

fn sample(count: usize, seed: u64) -> Vec<CMat> {
    (0..count)
        .map(|i| {
            let kind = KINDS[i % KINDS.len()];
            let n = [2, 3, 4, 6][(i / KINDS.len()) % 4];
            generate_matrix(&EnsembleSpec::parse(&format!("{kind}:{n}"), seed + i as u64).unwrap()).unwrap()
        })
        .collect()
}

fn w(t: &CMat) -> f64 {
    numerical_radius(t, &RadiusOpts::default()).unwrap().value
}

fn cheap_norms() -> Vec<NormSpec> {
    registry().into_iter().filter(|n| n.id != "omega").collect()
}

#[test]
fn numerical_radius_sandwich() {
    for t in sample(60, 100) {
        let (r, n) = (w(&t), spectral_norm(&t));
        assert!(0.5 * n - EPS <= r && r <= n + EPS);
    }
}

#[test]
fn generalized_sandwich_parts_and_self_adjointness() {
    let opts = RadiusOpts::default();
    for t in sample(24, 200) {
        for n in cheap_norms().iter().filter(|n| n.self_adjoint) {
            let r = generalized_radius(&t, n, &opts).unwrap().value;
            let nt = n.evaluate(&t);
            assert!(0.5 * nt - EPS <= r && r <= nt + EPS, "{}", n.id);
            assert!(n.evaluate(&t.re_part().unwrap()) <= r + EPS, "{}", n.id);
            assert!(n.evaluate(&t.im_part().unwrap()) <= r + EPS, "{}", n.id);
            let ra = generalized_radius(&t.adjoint(), n, &opts).unwrap().value;
            assert!((r - ra).abs() <= EPS, "{}", n.id);
        }
    }
}

#[test]
fn radius_for_the_radius_norm_is_the_radius() {
    let wn = NormSpec::numerical_radius();
    for t in sample(18, 300) {
        let r = generalized_radius(&t, &wn, &RadiusOpts::default()).unwrap().value;
        assert!((r - w(&t)).abs() <= 1e-8);
    }
}

#[test]
fn frobenius_radius_of_elementary_nilpotent() {
    let r = generalized_radius(&CMat::unit(2, 0, 1), &NormSpec::frobenius(), &RadiusOpts::default()).unwrap();
    assert!((r.value - SQRT_2 / 2.0).abs() < 1e-12);
}

#[test]
fn alphabeta_parameterization_matches() {
    let opts = RadiusOpts::default();
    for (i, t) in sample(50, 400).iter().enumerate() {
        let n = if i % 2 == 0 { NormSpec::operator() } else { NormSpec::frobenius() };
        let a = alphabeta_radius(t, &n, &opts).unwrap();
        let g = generalized_radius(t, &n, &opts).unwrap().value;
        assert!((a - g).abs() <= 1e-9, "{i}: {a} vs {g}");
    }
    let h = generate_matrix(&EnsembleSpec::parse("hermitian:3", 1).unwrap()).unwrap();
    let a = alphabeta_radius(&h, &NormSpec::operator(), &opts).unwrap();
    assert!((a - spectral_norm(&h)).abs() <= 1e-9);
}

#[test]
fn frobenius_is_submultiplicative() {
    let f = NormSpec::frobenius();
    let ts = sample(100, 500);
    let ss = sample(100, 600);
    for (t, s) in ts.iter().zip(&ss).filter(|(t, s)| t.rows() == s.rows()) {
        assert!(f.evaluate(&(t * s)) <= f.evaluate(t) * f.evaluate(s) + 1e-10);
    }
}

#[test]
fn omega_sandwich_and_vector_lower_bound() {
    let opts = OmegaOpts::default();
    for (i, t) in sample(100, 700).iter().enumerate() {
        let om = omega_norm(t, &opts).unwrap().value;
        let n = spectral_norm(t);
        assert!(n - EPS <= om && om <= SQRT_2 * n + EPS);
        let lb = omega_vector_lower_bound(t, 200, i as u64).unwrap();
        assert!(lb <= om + 1e-9, "{i}: {lb} > {om}");
    }
}

#[test]
fn omega_of_normal_matrix() {
    let t = generate_matrix(&EnsembleSpec::parse("normal:4", 5).unwrap()).unwrap();
    let om = omega_norm(&t, &OmegaOpts::default()).unwrap().value;
    assert!((om - SQRT_2 * spectral_norm(&t)).abs() <= 1e-7);
    assert!((omega_radius(&t).unwrap() - om).abs() <= 1e-7);
}

#[test]
fn omega_is_absolutely_homogeneous() {
    let opts = OmegaOpts::default();
    for t in sample(12, 800) {
        let base = omega_norm(&t, &opts).unwrap().value;
        for z in [num_complex::Complex64::new(0.0, 2.0), num_complex::Complex64::from_polar(0.3, 1.1)] {
            let scaled = omega_norm(&t.scale(z), &opts).unwrap().value;
            assert!((scaled - z.norm() * base).abs() <= 1e-12 * z.norm() * base.max(1.0));
        }
    }
}

#[test]
fn weak_unitary_invariance_of_radius_and_omega() {
    let opts = OmegaOpts::default();
    for (i, t) in sample(24, 900).iter().enumerate() {
        let u = generate_matrix(&EnsembleSpec::parse(&format!("unitary:{}", t.rows()), 1000 + i as u64).unwrap())
            .unwrap();
        let c = &(&u.adjoint() * t) * &u;
        assert!((w(t) - w(&c)).abs() <= 1e-8);
        let (a, b) = (omega_norm(t, &opts).unwrap().value, omega_norm(&c, &opts).unwrap().value);
        assert!((a - b).abs() <= 1e-8);
    }
}

#[test]
fn slow_omega_radius_examples() {
    let opts = omega_radius_slow_opts();
    let i2 = CMat::identity(2);
    assert!((omega_radius_slow(&i2, &opts).unwrap().value - SQRT_2).abs() <= 1e-7);
    let e12 = CMat::unit(2, 0, 1);
    assert!((omega_radius_slow(&e12, &opts).unwrap().value - SQRT_2 / 2.0).abs() <= 1e-7);
}

#[test]
fn unitary_sup_is_attained_for_unitarily_invariant_norms() {
    for norm in cheap_norms() {
        for n in [2, 4] {
            let Some(sup) = norm.unitary_sup(n) else { continue };
            let best = (0..50)
                .map(|s| {
                    let u = generate_matrix(&EnsembleSpec::parse(&format!("unitary:{n}"), s).unwrap()).unwrap();
                    norm.evaluate(&u)
                })
                .fold(0.0, f64::max);
            assert!(best <= sup + 1e-9, "{} n={n}", norm.id);
            if norm.id == "op" || norm.id.starts_with('s') {
                assert!(best >= sup - 1e-6, "{} n={n}", norm.id);
            }
        }
    }
}
