//! Plug-in matrix norms and the audit that checks their declared properties.

use std::fmt;
use std::sync::Arc;

use crate::eigen::{operator_norm, singular_values};
use crate::ensembles::{ginibre, haar_unitary, square_zero};
use crate::error::{Error, Result};
use crate::matrix::{CMat, CScalar};
use crate::radius::{numerical_radius, omega_norm, OmegaOpts, RadiusOpts};
use crate::rng::SplitMix64;

pub type NormFn = Arc<dyn Fn(&CMat) -> f64 + Send + Sync>;
pub type UnitarySupFn = Arc<dyn Fn(usize) -> Option<f64> + Send + Sync>;

/// A norm `N` on square matrices with the structural flags inequality checks
/// rely on.
#[derive(Clone)]
pub struct NormSpec {
    pub id: String,
    evaluate: NormFn,
    /// `N(A*) = N(A)`.
    pub self_adjoint: bool,
    /// `N(AB) <= N(A) N(B)`.
    pub algebra: bool,
    /// `N(U* A U) = N(A)` for unitary `U`.
    pub weakly_unitarily_invariant: bool,
    /// `N(-A) = N(A)`; lets radius searches use half a period.
    pub symmetric: bool,
    unitary_sup: UnitarySupFn,
}

impl fmt::Debug for NormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NormSpec")
            .field("id", &self.id)
            .field("self_adjoint", &self.self_adjoint)
            .field("algebra", &self.algebra)
            .field("weakly_unitarily_invariant", &self.weakly_unitarily_invariant)
            .field("symmetric", &self.symmetric)
            .finish()
    }
}

impl NormSpec {
    /// A user-supplied norm with every flag cleared and no known unitary sup.
    pub fn custom(id: impl Into<String>, evaluate: impl Fn(&CMat) -> f64 + Send + Sync + 'static) -> Self {
        NormSpec {
            id: id.into(),
            evaluate: Arc::new(evaluate),
            self_adjoint: false,
            algebra: false,
            weakly_unitarily_invariant: false,
            symmetric: false,
            unitary_sup: Arc::new(|_| None),
        }
    }

    pub fn with_flags(mut self, self_adjoint: bool, algebra: bool, weakly_unitarily_invariant: bool) -> Self {
        self.self_adjoint = self_adjoint;
        self.algebra = algebra;
        self.weakly_unitarily_invariant = weakly_unitarily_invariant;
        self
    }

    pub fn with_symmetric(mut self, symmetric: bool) -> Self {
        self.symmetric = symmetric;
        self
    }

    pub fn with_unitary_sup(mut self, f: impl Fn(usize) -> Option<f64> + Send + Sync + 'static) -> Self {
        self.unitary_sup = Arc::new(f);
        self
    }

    #[inline]
    pub fn evaluate(&self, a: &CMat) -> f64 {
        (self.evaluate)(a)
    }

    /// `sup_U N(U)` over the unitary group in dimension `n`, when known in
    /// closed form.
    pub fn unitary_sup(&self, n: usize) -> Option<f64> {
        (self.unitary_sup)(n)
    }

    /// The usual operator norm.
    pub fn operator() -> Self {
        NormSpec::custom("op", operator_norm)
            .with_flags(true, true, true)
            .with_symmetric(true)
            .with_unitary_sup(|_| Some(1.0))
    }

    /// Schatten p-norm, `p >= 1`; `p = inf` is the operator norm.
    pub fn schatten(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidSchattenExponent(p));
        }
        let id = if p.is_infinite() {
            "schatten:inf".to_string()
        } else {
            format!("schatten:{p}")
        };
        let spec = if p.is_infinite() {
            NormSpec::custom(id, operator_norm)
        } else if p == 2.0 {
            NormSpec::custom(id, |a: &CMat| a.frobenius_norm())
        } else if p == 1.0 {
            NormSpec::custom(id, |a: &CMat| singular_values(a).iter().sum())
        } else {
            NormSpec::custom(id, move |a: &CMat| {
                let s = singular_values(a);
                let top = s.first().copied().unwrap_or(0.0);
                if top == 0.0 {
                    return 0.0;
                }
                // Factor out the largest singular value to avoid overflow.
                top * s.iter().map(|x| (x / top).powf(p)).sum::<f64>().powf(1.0 / p)
            })
        };
        Ok(spec
            .with_flags(true, true, true)
            .with_symmetric(true)
            .with_unitary_sup(move |n| Some(if p.is_infinite() { 1.0 } else { (n as f64).powf(1.0 / p) })))
    }

    /// Frobenius (Hilbert-Schmidt) norm, `schatten:2`.
    pub fn frobenius() -> Self {
        NormSpec::schatten(2.0).expect("p = 2 is valid")
    }

    /// The numerical radius `w` as a norm. Not an algebra norm.
    pub fn numerical_radius() -> Self {
        NormSpec::custom("wnum", |a: &CMat| {
            numerical_radius(a, &RadiusOpts::default()).map_or(f64::NAN, |r| r.value)
        })
        .with_flags(true, false, true)
        .with_symmetric(true)
        .with_unitary_sup(|_| Some(1.0))
    }

    /// The Omega norm, evaluated with [`OmegaOpts::inner`]. Every unitary is
    /// normal, so `Omega(U) = sqrt(2)`.
    pub fn omega() -> Self {
        NormSpec::omega_with(OmegaOpts::inner())
    }

    pub fn omega_with(opts: OmegaOpts) -> Self {
        NormSpec::custom("omega", move |a: &CMat| omega_norm(a, &opts).map_or(f64::NAN, |r| r.value))
            .with_flags(true, false, true)
            .with_symmetric(true)
            .with_unitary_sup(|_| Some(std::f64::consts::SQRT_2))
    }

    /// Parses `op`, `schatten:p` (`p` decimal or `inf`), `wnum`, `omega`.
    pub fn parse(id: &str) -> Result<Self> {
        let id = id.trim();
        match id {
            "op" => Ok(NormSpec::operator()),
            "wnum" => Ok(NormSpec::numerical_radius()),
            "omega" => Ok(NormSpec::omega()),
            _ => {
                let p = id
                    .strip_prefix("schatten:")
                    .ok_or_else(|| Error::UnknownNorm(id.to_string()))?;
                let p = if p == "inf" {
                    f64::INFINITY
                } else {
                    p.parse::<f64>().map_err(|_| Error::UnknownNorm(id.to_string()))?
                };
                NormSpec::schatten(p)
            }
        }
    }
}

/// Every shipped norm.
pub fn registry() -> Vec<NormSpec> {
    vec![
        NormSpec::operator(),
        NormSpec::schatten(1.0).expect("valid"),
        NormSpec::frobenius(),
        NormSpec::schatten(3.0).expect("valid"),
        NormSpec::schatten(f64::INFINITY).expect("valid"),
        NormSpec::numerical_radius(),
        NormSpec::omega(),
    ]
}

pub const HOMOGENEITY_TOL: f64 = 1e-12;
pub const TRIANGLE_TOL: f64 = 1e-12;
pub const SELF_ADJOINT_TOL: f64 = 1e-12;
pub const ALGEBRA_TOL: f64 = 1e-10;
pub const UNITARY_INVARIANCE_TOL: f64 = 1e-10;
pub const UNITARY_SUP_UPPER_TOL: f64 = 1e-9;
pub const UNITARY_SUP_LOWER_TOL: f64 = 1e-6;

/// Number of Haar unitaries used to probe `unitary_sup`.
const UNITARY_PROBES: usize = 50;

/// A pair witnessing `N(AB) > N(A) N(B)`.
#[derive(Debug, Clone)]
pub struct SubmultiplicativityWitness {
    pub a: CMat,
    pub b: CMat,
    pub n_ab: f64,
    pub n_a_n_b: f64,
}

/// Worst observed violation per axiom and per declared flag. Violations are
/// relative and positive when the property fails; `None` means not audited.
#[derive(Debug, Clone)]
pub struct NormAudit {
    pub id: String,
    pub dim: usize,
    pub trials: usize,
    pub zero: f64,
    pub homogeneity: f64,
    pub triangle: f64,
    pub self_adjoint: Option<f64>,
    /// Always measured; only a failure when the flag is declared.
    pub submultiplicativity: f64,
    pub submultiplicativity_witness: Option<SubmultiplicativityWitness>,
    pub algebra_declared: bool,
    pub unitary_invariance: Option<f64>,
    /// `max_U N(U) - sup`.
    pub unitary_sup_excess: Option<f64>,
    /// `sup - max_U N(U)`.
    pub unitary_sup_gap: Option<f64>,
}

impl NormAudit {
    /// `(axiom, violation, tolerance)` for every audited item that must hold.
    pub fn items(&self) -> Vec<(&'static str, f64, f64)> {
        let mut v = vec![
            ("zero", self.zero, 0.0),
            ("homogeneity", self.homogeneity, HOMOGENEITY_TOL),
            ("triangle", self.triangle, TRIANGLE_TOL),
        ];
        if let Some(x) = self.self_adjoint {
            v.push(("self_adjoint", x, SELF_ADJOINT_TOL));
        }
        if self.algebra_declared {
            v.push(("algebra", self.submultiplicativity, ALGEBRA_TOL));
        }
        if let Some(x) = self.unitary_invariance {
            v.push(("weak_unitary_invariance", x, UNITARY_INVARIANCE_TOL));
        }
        if let Some(x) = self.unitary_sup_excess {
            v.push(("unitary_sup_upper", x, UNITARY_SUP_UPPER_TOL));
        }
        if let Some(x) = self.unitary_sup_gap {
            v.push(("unitary_sup_lower", x, UNITARY_SUP_LOWER_TOL));
        }
        v
    }

    pub fn clean(&self) -> bool {
        self.items().iter().all(|&(_, v, tol)| v <= tol)
    }
}

fn rel(x: f64, scale: f64) -> f64 {
    x / scale.max(f64::MIN_POSITIVE)
}

/// Runs the axiom and flag battery on `trials` seeded random matrices of size
/// `dim`. Submultiplicativity is probed on Ginibre pairs and on `(T, T*)` with
/// `T` square-zero, where numerical-radius-like norms fail.
pub fn validate_norm(spec: &NormSpec, dim: usize, trials: usize, seed: u64) -> NormAudit {
    let mut rng = SplitMix64::new(seed);
    let n = dim;
    let eval = |a: &CMat| spec.evaluate(a);
    let mut audit = NormAudit {
        id: spec.id.clone(),
        dim,
        trials,
        zero: eval(&CMat::zeros(n, n)).abs(),
        homogeneity: 0.0,
        triangle: 0.0,
        self_adjoint: spec.self_adjoint.then_some(0.0),
        submultiplicativity: f64::NEG_INFINITY,
        submultiplicativity_witness: None,
        algebra_declared: spec.algebra,
        unitary_invariance: spec.weakly_unitarily_invariant.then_some(0.0),
        unitary_sup_excess: None,
        unitary_sup_gap: None,
    };

    for trial in 0..trials {
        let a = ginibre(n, &mut rng);
        let b = ginibre(n, &mut rng);
        let na = eval(&a);
        let nb = eval(&b);

        let z: CScalar = rng.next_complex_gaussian() * 3.0;
        let nza = eval(&a.scale(z));
        audit.homogeneity = audit.homogeneity.max(rel((nza - z.norm() * na).abs(), z.norm() * na));

        let nab_sum = eval(&(&a + &b));
        audit.triangle = audit.triangle.max(rel(nab_sum - na - nb, na + nb));

        if let Some(sa) = audit.self_adjoint.as_mut() {
            *sa = sa.max(rel((eval(&a.adjoint()) - na).abs(), na));
        }

        let (x, y) = if trial % 2 == 0 {
            (a.clone(), b.clone())
        } else {
            let t = square_zero(n, &mut rng);
            let ts = t.adjoint();
            (t, ts)
        };
        let nx = eval(&x);
        let ny = eval(&y);
        let nxy = eval(&(&x * &y));
        let excess = rel(nxy - nx * ny, (nx * ny).max(1.0));
        if excess > audit.submultiplicativity {
            audit.submultiplicativity = excess;
            audit.submultiplicativity_witness = (excess > ALGEBRA_TOL).then_some(SubmultiplicativityWitness {
                a: x,
                b: y,
                n_ab: nxy,
                n_a_n_b: nx * ny,
            });
        }

        if let Some(ui) = audit.unitary_invariance.as_mut() {
            let u = haar_unitary(n, &mut rng);
            let conj = &(&u.adjoint() * &a) * &u;
            *ui = ui.max(rel((eval(&conj) - na).abs(), na));
        }
    }
    if trials == 0 {
        audit.submultiplicativity = 0.0;
    }

    if let Some(sup) = spec.unitary_sup(n) {
        let mut max_u = f64::NEG_INFINITY;
        for _ in 0..UNITARY_PROBES {
            max_u = max_u.max(eval(&haar_unitary(n, &mut rng)));
        }
        audit.unitary_sup_excess = Some(max_u - sup);
        audit.unitary_sup_gap = Some(sup - max_u);
    }
    audit
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::c;

    fn t_example() -> CMat {
        CMat::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 0.0]]).unwrap()
    }

    #[test]
    fn operator_norm_examples() {
        let op = NormSpec::operator();
        assert!((op.evaluate(&CMat::identity(3)) - 1.0).abs() < 1e-15);
        assert_eq!(op.unitary_sup(5), Some(1.0));
        assert!((op.evaluate(&t_example()) - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn schatten_examples() {
        let s2 = NormSpec::schatten(2.0).unwrap();
        assert_eq!(s2.evaluate(&CMat::unit(2, 0, 1)), 1.0);
        let s1 = NormSpec::schatten(1.0).unwrap();
        assert!((s1.evaluate(&CMat::from_real_diag(&[1.0, -2.0, 3.0])) - 6.0).abs() < 1e-14);
        assert_eq!(s2.unitary_sup(4), Some(2.0));
        let s3 = NormSpec::schatten(3.0).unwrap();
        let want = (1.0f64 + 8.0 + 27.0).powf(1.0 / 3.0);
        assert!((s3.evaluate(&CMat::from_real_diag(&[1.0, -2.0, 3.0])) - want).abs() < 1e-14);
        assert!(matches!(NormSpec::schatten(0.5), Err(Error::InvalidSchattenExponent(_))));
    }

    #[test]
    fn numerical_radius_norm_examples() {
        let wn = NormSpec::numerical_radius();
        let h = CMat::from_rows(&[vec![c(1.0, 0.0), c(0.5, 0.5)], vec![c(0.5, -0.5), c(-2.0, 0.0)]]).unwrap();
        assert!((wn.evaluate(&h) - crate::eigen::spectral_norm(&h)).abs() < 1e-9);
        assert!((wn.evaluate(&CMat::unit(2, 0, 1)) - 0.5).abs() < 1e-12);
        assert!((wn.evaluate(&CMat::identity(2)) - 1.0).abs() < 1e-12);
        assert!(!wn.algebra);
    }

    #[test]
    fn parse_ids() {
        assert_eq!(NormSpec::parse("op").unwrap().id, "op");
        assert_eq!(NormSpec::parse("schatten:2").unwrap().id, "schatten:2");
        assert_eq!(NormSpec::parse("schatten:1.5").unwrap().id, "schatten:1.5");
        assert_eq!(NormSpec::parse("schatten:inf").unwrap().id, "schatten:inf");
        assert_eq!(NormSpec::parse("wnum").unwrap().id, "wnum");
        assert_eq!(NormSpec::parse("omega").unwrap().id, "omega");
        assert!(matches!(NormSpec::parse("frob"), Err(Error::UnknownNorm(_))));
        assert!(matches!(NormSpec::parse("schatten:x"), Err(Error::UnknownNorm(_))));
        assert!(matches!(NormSpec::parse("schatten:0.5"), Err(Error::InvalidSchattenExponent(_))));
    }

    #[test]
    fn operator_audit_is_clean() {
        let audit = validate_norm(&NormSpec::operator(), 4, 200, 1);
        for (name, v, tol) in audit.items() {
            assert!(v <= tol, "{name}: {v:e} > {tol:e}");
        }
        assert!(audit.submultiplicativity_witness.is_none());
    }

    #[test]
    fn schatten1_triangle_holds() {
        let audit = validate_norm(&NormSpec::schatten(1.0).unwrap(), 4, 200, 2);
        assert!(audit.triangle <= TRIANGLE_TOL);
        assert!(audit.clean());
    }

    #[test]
    fn numerical_radius_audit_finds_witness() {
        let audit = validate_norm(&NormSpec::numerical_radius(), 3, 10, 3);
        assert!(audit.clean(), "{:?}", audit.items());
        let wit = audit.submultiplicativity_witness.expect("witness");
        assert!(wit.n_ab > wit.n_a_n_b);
        // Flag it as an algebra norm and the audit must fail.
        let lying = NormSpec::numerical_radius().with_flags(true, true, true);
        assert!(!validate_norm(&lying, 3, 10, 3).clean());
    }
}
