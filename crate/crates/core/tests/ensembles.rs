use wradius::eigen::{is_unitary, spectral_norm};
use wradius::ensembles::{generate, generate_matrix, EnsembleKind, EnsembleSpec, Sample};
use wradius::CMat;

const DIMS: [usize; 5] = [2, 3, 4, 6, 8];
const SEEDS: u64 = 1000;

fn spec(kind: &str, n: usize, seed: u64) -> EnsembleSpec {
    EnsembleSpec::parse(&format!("{kind}:{n}"), seed).unwrap()
}

fn single(kind: &str, n: usize, seed: u64) -> CMat {
    generate_matrix(&spec(kind, n, seed)).unwrap()
}

fn pair(kind: &str, n: usize, seed: u64) -> (CMat, CMat) {
    match generate(&spec(kind, n, seed)).unwrap() {
        Sample::Pair(a, b) => (a, b),
        Sample::Single(_) => panic!("{kind} should give a pair"),
    }
}

#[test]
fn hermitian_is_exactly_hermitian() {
    for n in DIMS {
        for seed in 0..SEEDS {
            let a = single("hermitian", n, seed);
            assert_eq!(a.sub(&a.adjoint()).unwrap().frobenius_norm(), 0.0);
        }
    }
}

#[test]
fn normal_residual() {
    for n in DIMS {
        for seed in 0..SEEDS {
            let a = single("normal", n, seed);
            let f = a.frobenius_norm();
            let ad = a.adjoint();
            let r = (&a * &ad).sub(&(&ad * &a)).unwrap().frobenius_norm();
            assert!(r <= 1e-10 * f * f, "n={n} seed={seed} residual {r}");
        }
    }
}

#[test]
fn unitary_residual() {
    for n in DIMS {
        for seed in 0..SEEDS {
            let u = single("unitary", n, seed);
            let r = (&u.adjoint() * &u).sub(&CMat::identity(n)).unwrap().frobenius_norm();
            assert!(r <= 1e-10, "n={n} seed={seed} residual {r}");
            assert!(is_unitary(&u, 1e-10));
        }
    }
}

#[test]
fn square_zero_residual() {
    for n in DIMS {
        for seed in 0..SEEDS {
            let t = single("nil", n, seed);
            let f = t.frobenius_norm();
            let r = t.square().unwrap().frobenius_norm();
            assert!(r <= 1e-12 * f * f, "n={n} seed={seed} residual {r}");
        }
    }
}

#[test]
fn contraction_is_hermitian_and_in_the_unit_ball() {
    for n in DIMS {
        for seed in 0..SEEDS {
            let s = single("contraction", n, seed);
            assert_eq!(s.sub(&s.adjoint()).unwrap().frobenius_norm(), 0.0);
            assert!(spectral_norm(&s) <= 1.0, "n={n} seed={seed}");
        }
    }
}

#[test]
fn commuting_pair_residual() {
    for n in DIMS {
        for seed in 0..SEEDS {
            let (t, s) = pair("commute", n, seed);
            assert!(t.is_hermitian(0.0) && s.is_hermitian(0.0));
            let r = t.commutator(&s).unwrap().frobenius_norm();
            assert!(r <= 1e-10 * t.frobenius_norm() * s.frobenius_norm(), "n={n} seed={seed}");
        }
    }
}

#[test]
fn anticommuting_pair_residual() {
    for n in DIMS.into_iter().filter(|n| n % 2 == 0) {
        for seed in 0..SEEDS {
            let (t, s) = pair("anticommute", n, seed);
            assert!(t.is_hermitian(0.0) && s.is_hermitian(0.0));
            let r = t.anticommutator(&s).unwrap().frobenius_norm();
            assert!(r <= 1e-10 * t.frobenius_norm() * s.frobenius_norm(), "n={n} seed={seed}");
        }
    }
}

#[test]
fn every_kind_is_deterministic() {
    for kind in EnsembleKind::ALL {
        let a = generate(&EnsembleSpec::new(kind, 4, 42)).unwrap();
        let b = generate(&EnsembleSpec::new(kind, 4, 42)).unwrap();
        assert_eq!(a, b, "{}", kind.id());
    }
}

#[test]
fn haar_first_entry_has_mean_one_over_n() {
    const DRAWS: usize = 2000;
    for n in [2, 3, 5] {
        let xs: Vec<f64> = (0..DRAWS as u64).map(|s| single("unitary", n, s)[(0, 0)].norm_sqr()).collect();
        let mean = xs.iter().sum::<f64>() / DRAWS as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (DRAWS - 1) as f64;
        let se = (var / DRAWS as f64).sqrt();
        assert!((mean - 1.0 / n as f64).abs() <= 3.0 * se, "n={n} mean {mean} se {se}");
    }
}
