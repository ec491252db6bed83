//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::f64::consts::SQRT_2;
use std::time::{Duration, Instant};

use wradius::ensembles::{generate_matrix, EnsembleKind, EnsembleSpec};
use wradius::lab::{cartesian_identity_defect, check_lower_bound, trace_sup, CheckOpts};
use wradius::matrix::inner;
use wradius::norms::NormSpec;
use wradius::radius::{
    alphabeta_radius, generalized_radius, hs_radius_sq, numerical_radius, numerical_radius_oracle, omega_norm,
    omega_radius_slow, omega_radius_slow_opts, OmegaOpts, RadiusOpts,
};
use wradius::rng::SplitMix64;
use wradius::CMat;
use wradius_cli::{run, EXIT_PASS};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("wradius").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

fn field<'a>(line: &'a str, key: &str) -> &'a str {
    line.split(' ')
        .find_map(|f| f.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
        .unwrap_or("")
}

fn matrix(kind: &str, n: usize, seed: u64) -> CMat {
    generate_matrix(&EnsembleSpec::parse(&format!("{kind}:{n}"), seed).unwrap()).unwrap()
}

/// `count` seeded matrices cycling through `kinds` and dimensions `dims`.
fn sample(kinds: &[&str], dims: &[usize], count: usize, seed: u64) -> Vec<CMat> {
    (0..count)
        .map(|i| matrix(kinds[i % kinds.len()], dims[(i / kinds.len()) % dims.len()], seed + i as u64))
        .collect()
}

const SINGLE: [&str; 6] = ["ginibre", "hermitian", "normal", "unitary", "nil", "contraction"];

fn worked_example() -> Verdict {
    let start = Instant::now();
    let (code, out) = cli(&["paper-example", "--format", "machine"]);
    let elapsed = start.elapsed();
    let asserts = out.lines().filter(|l| l.starts_with("assertion ")).count();
    let worst = out
        .lines()
        .filter(|l| l.starts_with("assertion "))
        .map(|l| field(l, "deviation").parse::<f64>().unwrap())
        .fold(0.0, f64::max);
    verdict(
        code == EXIT_PASS && asserts == 7 && worst <= 1e-8 && elapsed < Duration::from_secs(5),
        format!("{asserts} assertions, worst deviation {worst:e}, {elapsed:.2?}"),
    )
}

fn omega_radius_identity() -> Verdict {
    let start = Instant::now();
    let opts = omega_radius_slow_opts();
    let mut worst: f64 = 0.0;
    for t in sample(&["ginibre", "normal", "nil"], &[2, 3, 4, 5, 6, 7, 8], 200, 7000) {
        let w = numerical_radius(&t, &RadiusOpts::default()).unwrap().value;
        let slow = omega_radius_slow(&t, &opts).unwrap().value;
        worst = worst.max((slow - SQRT_2 * w).abs() / w.max(1.0));
    }
    let elapsed = start.elapsed();
    verdict(
        worst <= 1e-7 && elapsed < Duration::from_secs(120),
        format!("200 matrices, worst scaled gap {worst:e}, {elapsed:.2?}"),
    )
}

fn oracle_equivalence() -> Verdict {
    let mut worst: f64 = 0.0;
    for t in sample(&["ginibre"], &[2, 3, 4, 5, 6, 7, 8], 100, 8000) {
        let fast = numerical_radius(&t, &RadiusOpts::default()).unwrap().value;
        let oracle = numerical_radius_oracle(&t, 200_000).unwrap();
        worst = worst.max((fast - oracle).abs() / oracle);
    }
    verdict(worst <= 1e-8, format!("100 matrices, worst relative gap {worst:e}"))
}

/// Runs the default suite once and feeds both the exit-code and the
/// equality-witness criteria.
fn full_suite() -> (Verdict, Verdict) {
    let start = Instant::now();
    let (code, out) = cli(&["verify", "--format", "machine"]);
    let elapsed = start.elapsed();
    let total = out.lines().find(|l| l.starts_with("total ")).unwrap_or("").to_string();
    let min_slack = out
        .lines()
        .filter(|l| l.starts_with("check "))
        .map(|l| field(l, "min_slack").parse::<f64>().unwrap())
        .fold(f64::INFINITY, f64::min);
    let suite = verdict(
        code == EXIT_PASS && elapsed < Duration::from_secs(600),
        format!("{total}, min slack {min_slack:e}, {elapsed:.2?}"),
    );

    let closest = |name: &str, kind: &str| -> f64 {
        out.lines()
            .filter(|l| l.starts_with("summary ") && field(l, "name") == name)
            .filter(|l| field(l, "ensemble").split(':').next() == Some(kind))
            .map(|l| field(l, "min_abs_slack").parse::<f64>().unwrap())
            .fold(f64::INFINITY, f64::min)
    };
    let lower = closest("basic_bounds.lower", EnsembleKind::SquareZero.id());
    let upper = closest("basic_bounds.upper", EnsembleKind::Normal.id());
    let omega = closest("omega_upper.bound", EnsembleKind::SquareZero.id());
    let e12 = check_lower_bound(&CMat::unit(2, 0, 1), &NormSpec::operator(), &CheckOpts::default()).unwrap();
    let refined = e12
        .iter()
        .filter(|r| r.name == "lower_bound.refined" || r.name == "lower_bound.plain")
        .map(|r| r.slack.abs())
        .fold(0.0, f64::max);
    let witnesses = verdict(
        [lower, upper, omega, refined].iter().all(|&s| s <= 1e-8),
        format!("square-zero lower {lower:e}, normal upper {upper:e}, square-zero omega {omega:e}, E12 lower bound {refined:e}"),
    );
    (suite, witnesses)
}

fn hs_identity() -> Verdict {
    let frob = NormSpec::frobenius();
    let mut worst: f64 = 0.0;
    for t in sample(&SINGLE, &[2, 3, 4, 6, 8], 200, 9000) {
        let r = generalized_radius(&t, &frob, &RadiusOpts::default()).unwrap().value;
        let hs = hs_radius_sq(&t).unwrap();
        worst = worst.max((r * r - hs).abs() / hs.max(1.0));
    }
    verdict(worst <= 1e-9, format!("200 matrices, worst scaled gap {worst:e}"))
}

fn trace_sup_closed_form() -> Verdict {
    let opts = CheckOpts::default();
    let mut worst: f64 = 0.0;
    for t in sample(&SINGLE, &[2, 3, 4, 6, 8], 200, 10_000) {
        let (sup, _) = trace_sup(&t, &opts).unwrap();
        let closed = 2.0 * t.square().unwrap().trace().unwrap().norm();
        let f = t.frobenius_norm();
        worst = worst.max((sup - closed).abs() / closed.max(f * f));
    }
    verdict(worst <= 1e-10, format!("200 matrices, worst relative gap {worst:e}"))
}

fn norm_audit() -> Verdict {
    let (code, out) = cli(&["validate-norms", "--format", "machine"]);
    let witness = out.lines().find(|l| l.starts_with("witness norm=wnum:"));
    let detail = match witness {
        Some(l) => format!(
            "exit {code}, numerical radius witness N(AB) = {} > N(A)N(B) = {}",
            field(l, "n_ab"),
            field(l, "n_a_n_b")
        ),
        None => format!("exit {code}, no numerical radius witness"),
    };
    verdict(code == EXIT_PASS && witness.is_some(), detail)
}

fn structural_sweeps() -> Verdict {
    let mut rng = SplitMix64::new(11_000);

    let mut cartesian: f64 = 0.0;
    for t in sample(&SINGLE, &[2, 3, 4, 6, 8], 200, 11_000) {
        let f2 = t.frobenius_norm().powi(2);
        for _ in 0..16 {
            let phi = rng.next_f64() * std::f64::consts::TAU;
            cartesian = cartesian.max(cartesian_identity_defect(&t, phi).unwrap() / f2.max(f64::MIN_POSITIVE));
        }
    }

    let mut alphabeta: f64 = 0.0;
    for (i, t) in sample(&SINGLE, &[2, 3, 4, 6, 8], 50, 12_000).iter().enumerate() {
        let n = if i % 2 == 0 { NormSpec::operator() } else { NormSpec::frobenius() };
        let opts = RadiusOpts::default();
        let a = alphabeta_radius(t, &n, &opts).unwrap();
        let g = generalized_radius(t, &n, &opts).unwrap().value;
        alphabeta = alphabeta.max((a - g).abs());
    }

    let mut invariance: f64 = 0.0;
    for (i, t) in sample(&SINGLE, &[2, 3, 4, 6, 8], 50, 13_000).iter().enumerate() {
        let u = matrix("unitary", t.rows(), 14_000 + i as u64);
        let conj = &(&u.adjoint() * t) * &u;
        let opts = RadiusOpts::default();
        let dw = numerical_radius(t, &opts).unwrap().value - numerical_radius(&conj, &opts).unwrap().value;
        let om = OmegaOpts::default();
        let domega = omega_norm(t, &om).unwrap().value - omega_norm(&conj, &om).unwrap().value;
        invariance = invariance.max(dw.abs()).max(domega.abs());
    }

    let mut buzano = f64::NEG_INFINITY;
    for i in 0..500 {
        let n = 1 + i % 8;
        let (a, b, c) = (rng.unit_vector(n), rng.unit_vector(n), rng.unit_vector(n));
        let lhs = inner(&a, &c).norm_sqr() + inner(&b, &c).norm_sqr();
        let rhs = 1.0 + inner(&a, &b).norm();
        buzano = buzano.max(lhs - rhs);
    }

    verdict(
        cartesian <= 1e-12 && alphabeta <= 1e-9 && invariance <= 1e-8 && buzano <= 1e-12,
        format!(
            "cartesian {cartesian:e}, alpha-beta {alphabeta:e}, unitary invariance {invariance:e}, buzano excess {buzano:e}"
        ),
    )
}

fn main() {
    let mut failed = 0;
    let mut report = |label: &str, v: Verdict| {
        println!("{} {label}: {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
        failed += usize::from(!v.pass);
    };
    report("1 worked 2x2 example", worked_example());
    report("2 omega radius equals sqrt(2) w", omega_radius_identity());
    report("3 numerical radius matches dense-grid oracle", oracle_equivalence());
    let (suite, witnesses) = full_suite();
    report("4 default inequality suite", suite);
    report("5 equality witnesses", witnesses);
    report("6 Frobenius radius identity", hs_identity());
    report("7 trace supremum closed form", trace_sup_closed_form());
    report("8 norm registry audit", norm_audit());
    report("9 structural sweeps", structural_sweeps());
    println!("acceptance: {} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
