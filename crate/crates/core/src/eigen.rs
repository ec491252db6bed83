//! Spectral kernels: cyclic Jacobi for Hermitian matrices, one-sided Jacobi
//! for singular values, and the spectral functions used to build unitary
//! dilations of Hermitian contractions.

use crate::error::{Error, Result};
use crate::matrix::{c, CMat, CScalar, ONE, ZERO};

/// Hermiticity acceptance tolerance, relative to `max(1, ||A||_F)`.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Off-diagonal Frobenius threshold, relative to `||A||_F`.
const OFF_DIAG_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 60;

/// Contraction slack accepted before clamping the spectrum into `[-1, 1]`.
const CONTRACTION_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct EigenResult {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors stored as columns, in eigenvalue order.
    pub eigenvectors: CMat,
    /// `max_j ||A v_j - lambda_j v_j||`.
    pub residual: f64,
}

/// Validates Hermiticity at `tol` and returns the symmetrized copy `(A + A*)/2`.
pub fn symmetrized(a: &CMat, tol: f64) -> Result<CMat> {
    let defect = a.hermitian_defect()?;
    if defect > tol * a.frobenius_norm().max(1.0) {
        return Err(Error::NonHermitianInput { defect });
    }
    a.re_part()
}

/// The rotation `J = diag(1, conj(e)) R` that annihilates the `(p, q)` entry of
/// a Hermitian matrix with diagonal `app`, `aqq` and off-diagonal `g = a_pq`.
/// Returned as `(jpp, jpq, jqp, jqq)`.
#[inline]
fn jacobi_rotation(app: f64, aqq: f64, g: CScalar) -> (CScalar, CScalar, CScalar, CScalar) {
    let ag = g.norm();
    let e = g / ag;
    let theta = (aqq - app) / (2.0 * ag);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let cs = 1.0 / (t * t + 1.0).sqrt();
    let sn = t * cs;
    let ec = e.conj();
    (c(cs, 0.0), c(sn, 0.0), -ec * sn, ec * cs)
}

/// Cyclic Jacobi on a Hermitian working copy. Returns the diagonal after
/// convergence; accumulates `V` when given.
fn jacobi_in_place(a: &mut CMat, mut v: Option<&mut CMat>) -> Vec<f64> {
    let n = a.rows();
    let scale = a.frobenius_norm();
    if scale == 0.0 {
        return vec![0.0; n];
    }
    let threshold = OFF_DIAG_TOL * scale;
    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[(p, q)].norm_sqr();
            }
        }
        if (2.0 * off).sqrt() <= threshold {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let g = a[(p, q)];
                if g == ZERO {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                // Negligible against both diagonal entries: drop it.
                if g.norm() < 1e-18 * (app.abs() + aqq.abs()) {
                    a[(p, q)] = ZERO;
                    a[(q, p)] = ZERO;
                    continue;
                }
                let (jpp, jpq, jqp, jqq) = jacobi_rotation(app, aqq, g);
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * jpp + akq * jqp;
                    a[(k, q)] = akp * jpq + akq * jqq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
                    a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)].im = 0.0;
                a[(q, q)].im = 0.0;
                if let Some(v) = v.as_deref_mut() {
                    for k in 0..n {
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = vkp * jpp + vkq * jqp;
                        v[(k, q)] = vkp * jpq + vkq * jqq;
                    }
                }
            }
        }
    }
    (0..n).map(|i| a[(i, i)].re).collect()
}

/// Full Hermitian eigendecomposition by cyclic Jacobi rotations.
///
/// `tol` is the Hermiticity acceptance tolerance; input within tolerance is
/// symmetrized before use.
pub fn hermitian_eigs(a: &CMat, tol: f64) -> Result<EigenResult> {
    let h = symmetrized(a, tol)?;
    let n = h.rows();
    let mut work = h.clone();
    let mut v = CMat::identity(n);
    let diag = jacobi_in_place(&mut work, Some(&mut v));

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut vectors = CMat::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for k in 0..n {
            vectors[(k, dst)] = v[(k, src)];
        }
    }

    let mut residual: f64 = 0.0;
    for (j, &lambda) in eigenvalues.iter().enumerate() {
        let col = vectors.column(j);
        let av = h.mat_vec(&col);
        let r: f64 = av
            .iter()
            .zip(&col)
            .map(|(x, y)| (x - y * lambda).norm_sqr())
            .sum::<f64>()
            .sqrt();
        residual = residual.max(r);
    }
    Ok(EigenResult {
        eigenvalues,
        eigenvectors: vectors,
        residual,
    })
}

/// Eigenvalues only (ascending), skipping eigenvector accumulation.
pub fn hermitian_eigvals(a: &CMat, tol: f64) -> Result<Vec<f64>> {
    let mut work = symmetrized(a, tol)?;
    let mut d = jacobi_in_place(&mut work, None);
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// Householder reduction of a Hermitian matrix to a real symmetric
/// tridiagonal `(diag, offdiag)` with the same spectrum. The off-diagonal
/// entries are the moduli of the complex ones, which is a diagonal unitary
/// similarity away.
pub(crate) fn tridiagonalize(h: &CMat) -> (Vec<f64>, Vec<f64>) {
    let n = h.rows();
    let mut a = h.clone();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n.saturating_sub(1)];
    let mut v = vec![ZERO; n];
    let mut p = vec![ZERO; n];
    for k in 0..n.saturating_sub(2) {
        let m = n - k - 1;
        let alpha = (k + 1..n).map(|i| a[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        d[k] = a[(k, k)].re;
        e[k] = alpha;
        if alpha == 0.0 {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let phase = if x0 == ZERO { ONE } else { x0 / x0.norm() };
        for i in 0..m {
            v[i] = a[(k + 1 + i, k)];
        }
        v[0] += phase * alpha;
        let vv: f64 = v[..m].iter().map(|z| z.norm_sqr()).sum();
        let tau = 2.0 / vv;
        // p = tau * A22 v
        for i in 0..m {
            let mut acc = ZERO;
            for j in 0..m {
                acc += a[(k + 1 + i, k + 1 + j)] * v[j];
            }
            p[i] = acc * tau;
        }
        // K = tau/2 * v* p; q = p - K v
        let vp: CScalar = v[..m].iter().zip(&p[..m]).map(|(x, y)| x.conj() * y).sum();
        let kk = vp * (0.5 * tau);
        for i in 0..m {
            p[i] -= kk * v[i];
        }
        for i in 0..m {
            for j in 0..m {
                a[(k + 1 + i, k + 1 + j)] -= v[i] * p[j].conj() + p[i] * v[j].conj();
            }
        }
    }
    if n >= 2 {
        d[n - 2] = a[(n - 2, n - 2)].re;
        e[n - 2] = a[(n - 1, n - 2)].norm();
    }
    d[n - 1] = a[(n - 1, n - 1)].re;
    (d, e)
}

/// Number of eigenvalues of the tridiagonal strictly below `x`.
fn sturm_count(d: &[f64], e: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..d.len() {
        let off = if i == 0 { 0.0 } else { e[i - 1] * e[i - 1] };
        q = d[i] - x - if i == 0 { 0.0 } else { off / q };
        if q == 0.0 {
            q = -f64::MIN_POSITIVE;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `k`-th smallest eigenvalue (0-based) of a symmetric tridiagonal by
/// bisection on Sturm counts.
fn tridiagonal_eigenvalue(d: &[f64], e: &[f64], k: usize) -> f64 {
    let n = d.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r = if i > 0 { e[i - 1] } else { 0.0 } + if i + 1 < n { e[i] } else { 0.0 };
        lo = lo.min(d[i] - r);
        hi = hi.max(d[i] + r);
    }
    let span = hi - lo;
    if span == 0.0 {
        return lo;
    }
    lo -= span * 1e-12 + f64::MIN_POSITIVE;
    hi += span * 1e-12 + f64::MIN_POSITIVE;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(d, e, mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `(lambda_min, lambda_max)` of a matrix already known to be Hermitian.
pub(crate) fn hermitian_extremes(h: &CMat) -> (f64, f64) {
    let (d, e) = tridiagonalize(h);
    let n = d.len();
    (
        tridiagonal_eigenvalue(&d, &e, 0),
        tridiagonal_eigenvalue(&d, &e, n - 1),
    )
}

/// Largest eigenvalue of a matrix already known to be Hermitian.
pub(crate) fn lambda_max_unchecked(h: &CMat) -> f64 {
    let (d, e) = tridiagonalize(h);
    tridiagonal_eigenvalue(&d, &e, d.len() - 1)
}

/// Operator norm of a matrix already known to be Hermitian.
pub(crate) fn hermitian_norm_unchecked(h: &CMat) -> f64 {
    let (lo, hi) = hermitian_extremes(h);
    hi.max(-lo).max(0.0)
}

/// Operator norm: `sqrt(lambda_max(A* A))`.
pub fn spectral_norm(a: &CMat) -> f64 {
    lambda_max_unchecked(&a.gram()).max(0.0).sqrt()
}

/// Operator norm that takes `max |lambda|` directly when the input is exactly
/// Hermitian, and the `A* A` route otherwise.
pub fn operator_norm(a: &CMat) -> f64 {
    if a.is_square() && (a.hermitian_defect() == Ok(0.0)) {
        hermitian_norm_unchecked(a)
    } else {
        spectral_norm(a)
    }
}

/// Operator norm of a Hermitian matrix as `max |lambda|`.
pub fn hermitian_spectral_norm(h: &CMat) -> Result<f64> {
    let d = hermitian_eigvals(h, HERMITIAN_TOL)?;
    Ok(d.iter().fold(0.0, |m: f64, x| m.max(x.abs())))
}

/// Singular values in descending order, by one-sided (Hestenes) Jacobi on
/// the columns of `A`. Small singular values keep full absolute accuracy.
pub fn singular_values(a: &CMat) -> Vec<f64> {
    let (m, n) = a.shape();
    // Work on the side with fewer columns.
    let mut w = if n > m { a.adjoint() } else { a.clone() };
    let (m, n) = w.shape();
    let eps = f64::EPSILON;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let mut alpha = 0.0;
                let mut beta = 0.0;
                let mut gamma = ZERO;
                for k in 0..m {
                    let x = w[(k, p)];
                    let y = w[(k, q)];
                    alpha += x.norm_sqr();
                    beta += y.norm_sqr();
                    gamma += x.conj() * y;
                }
                if gamma.norm() <= eps * (alpha * beta).sqrt() || gamma == ZERO {
                    continue;
                }
                rotated = true;
                let (jpp, jpq, jqp, jqq) = jacobi_rotation(alpha, beta, gamma);
                for k in 0..m {
                    let x = w[(k, p)];
                    let y = w[(k, q)];
                    w[(k, p)] = x * jpp + y * jqp;
                    w[(k, q)] = x * jpq + y * jqq;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut s: Vec<f64> = (0..n)
        .map(|j| (0..m).map(|k| w[(k, j)].norm_sqr()).sum::<f64>().sqrt())
        .collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

fn check_contraction(s: &CMat) -> Result<EigenResult> {
    let eig = hermitian_eigs(s, HERMITIAN_TOL)?;
    let norm = eig.eigenvalues.iter().fold(0.0, |m: f64, x| m.max(x.abs()));
    if norm > 1.0 + CONTRACTION_TOL {
        return Err(Error::NotAContraction { norm });
    }
    Ok(eig)
}

/// `V f(D) V*` for a Hermitian eigendecomposition.
fn spectral_map(eig: &EigenResult, f: impl Fn(f64) -> CScalar) -> CMat {
    let v = &eig.eigenvectors;
    let n = v.rows();
    let fd: Vec<CScalar> = eig.eigenvalues.iter().map(|&l| f(l)).collect();
    let mut out = CMat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut s = ZERO;
            for k in 0..n {
                s += v[(i, k)] * fd[k] * v[(j, k)].conj();
            }
            out[(i, j)] = s;
        }
    }
    out
}

/// `(I - S^2)^{1/2}` for a Hermitian contraction `S`, eigenvalues clamped
/// into `[-1, 1]` before the square root.
pub fn hermitian_sqrt_defect(s: &CMat) -> Result<CMat> {
    let eig = check_contraction(s)?;
    Ok(spectral_map(&eig, |l| {
        let l = l.clamp(-1.0, 1.0);
        c((1.0 - l * l).max(0.0).sqrt(), 0.0)
    }))
}

/// The unitary `U = S + i (I - S^2)^{1/2}` with `Re U = S`.
pub fn cayley_unitary(s: &CMat) -> Result<CMat> {
    let eig = check_contraction(s)?;
    let u = spectral_map(&eig, |l| {
        let l = l.clamp(-1.0, 1.0);
        c(l, (1.0 - l * l).max(0.0).sqrt())
    });
    let n = u.rows();
    let unitarity = (&u.adjoint() * &u).max_abs_diff(&CMat::identity(n));
    let re_defect = u.re_part()?.max_abs_diff(&symmetrized(s, HERMITIAN_TOL)?);
    debug_assert!(unitarity <= 1e-10, "U*U - I = {unitarity:e}");
    debug_assert!(re_defect <= 1e-10, "Re U - S = {re_defect:e}");
    Ok(u)
}

/// Is the matrix unitary to `tol` in max-entry deviation of `U*U` from `I`?
pub fn is_unitary(u: &CMat, tol: f64) -> bool {
    u.is_square() && (&u.adjoint() * u).max_abs_diff(&CMat::identity(u.rows())) <= tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::I;

    fn herm3() -> CMat {
        CMat::from_rows(&[
            vec![c(2.0, 0.0), c(1.0, -1.0), c(0.0, 0.5)],
            vec![c(1.0, 1.0), c(-1.0, 0.0), c(0.3, 0.0)],
            vec![c(0.0, -0.5), c(0.3, 0.0), c(0.5, 0.0)],
        ])
        .unwrap()
    }

    #[test]
    fn diagonal_spectrum_sorted() {
        let r = hermitian_eigs(&CMat::from_real_diag(&[3.0, 1.0, 2.0]), HERMITIAN_TOL).unwrap();
        assert_eq!(r.eigenvalues, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn pauli_x() {
        let sx = CMat::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let r = hermitian_eigs(&sx, HERMITIAN_TOL).unwrap();
        assert!((r.eigenvalues[0] + 1.0).abs() < 1e-15);
        assert!((r.eigenvalues[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn re_part_of_example() {
        let t = CMat::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 0.0]]).unwrap();
        let r = hermitian_eigs(&t.re_part().unwrap(), HERMITIAN_TOL).unwrap();
        let s2 = 2f64.sqrt();
        assert!((r.eigenvalues[0] - (1.0 - s2) / 2.0).abs() < 1e-14);
        assert!((r.eigenvalues[1] - (1.0 + s2) / 2.0).abs() < 1e-14);
    }

    #[test]
    fn complex_hermitian_residual_and_orthonormality() {
        let r = hermitian_eigs(&herm3(), HERMITIAN_TOL).unwrap();
        assert!(r.residual < 1e-13, "residual {}", r.residual);
        let v = &r.eigenvectors;
        let defect = (&v.adjoint() * v).max_abs_diff(&CMat::identity(3));
        assert!(defect < 1e-13);
        let tr: f64 = r.eigenvalues.iter().sum();
        assert!((tr - 1.5).abs() < 1e-13);
    }

    #[test]
    fn non_hermitian_rejected() {
        let t = CMat::unit(2, 0, 1);
        assert!(matches!(
            hermitian_eigs(&t, HERMITIAN_TOL),
            Err(Error::NonHermitianInput { .. })
        ));
    }

    #[test]
    fn spectral_norm_examples() {
        assert!((spectral_norm(&CMat::unit(2, 0, 1).scale_real(2.0)) - 2.0).abs() < 1e-15);
        let t = CMat::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!((spectral_norm(&t) - 2f64.sqrt()).abs() < 1e-15);
        let h = herm3();
        let a = spectral_norm(&h);
        let b = hermitian_spectral_norm(&h).unwrap();
        assert!((a - b).abs() <= 1e-12 * b);
    }

    #[test]
    fn singular_values_match_gram_route() {
        let t = CMat::from_rows(&[
            vec![c(1.0, 2.0), c(0.0, -1.0), c(0.5, 0.5)],
            vec![c(-1.0, 0.0), c(2.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        let s = singular_values(&t);
        assert_eq!(s.len(), 2);
        let g = hermitian_eigvals(&(&t * &t.adjoint()), HERMITIAN_TOL).unwrap();
        assert!((s[0] - g[1].sqrt()).abs() < 1e-13);
        assert!((s[1] - g[0].sqrt()).abs() < 1e-13);
        assert!((s[0] - spectral_norm(&t)).abs() < 1e-13);
    }

    #[test]
    fn singular_values_of_rank_one_are_exactly_small() {
        let u = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        let v = [c(0.0, 0.0), c(0.6, 0.0), c(0.0, 0.8)];
        let s = singular_values(&CMat::outer(&u, &v));
        assert!((s[0] - 1.0).abs() < 1e-15);
        assert!(s[1] < 1e-15 && s[2] < 1e-15);
    }

    #[test]
    fn sqrt_defect_examples() {
        let z = CMat::zeros(3, 3);
        assert!(hermitian_sqrt_defect(&z).unwrap().max_abs_diff(&CMat::identity(3)) < 1e-15);
        let s = CMat::from_real_diag(&[1.0, -1.0]);
        assert!(hermitian_sqrt_defect(&s).unwrap().max_abs() < 1e-15);
        let s = CMat::from_real_diag(&[0.6]);
        assert!((hermitian_sqrt_defect(&s).unwrap()[(0, 0)] - c(0.8, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn sqrt_defect_rejects_large_norm() {
        let s = CMat::from_real_diag(&[1.1, 0.0]);
        assert!(matches!(
            hermitian_sqrt_defect(&s),
            Err(Error::NotAContraction { .. })
        ));
        assert!(matches!(
            cayley_unitary(&CMat::unit(2, 0, 1)),
            Err(Error::NonHermitianInput { .. })
        ));
    }

    #[test]
    fn cayley_examples() {
        let u = cayley_unitary(&CMat::zeros(2, 2)).unwrap();
        assert!(u.max_abs_diff(&CMat::identity(2).scale(I)) < 1e-15);
        let u = cayley_unitary(&CMat::from_real_diag(&[1.0])).unwrap();
        assert!((u[(0, 0)] - ONE).norm() < 1e-15);
    }

    #[test]
    fn tridiagonal_extremes_agree_with_jacobi() {
        let mut rng = crate::rng::SplitMix64::new(77);
        for n in 1..=8 {
            for _ in 0..20 {
                let h = crate::ensembles::hermitian(n, &mut rng);
                let full = hermitian_eigs(&h, HERMITIAN_TOL).unwrap().eigenvalues;
                let (lo, hi) = hermitian_extremes(&h);
                let scale = h.frobenius_norm().max(1.0);
                assert!((lo - full[0]).abs() <= 1e-12 * scale, "n={n}");
                assert!((hi - full[n - 1]).abs() <= 1e-12 * scale, "n={n}");
            }
        }
    }

    #[test]
    fn spectral_norm_of_hermitian_matches_eigenvalues() {
        let mut rng = crate::rng::SplitMix64::new(78);
        for n in [2, 3, 5, 8] {
            let h = crate::ensembles::hermitian(n, &mut rng);
            let eig = hermitian_eigs(&h, HERMITIAN_TOL).unwrap().eigenvalues;
            let expected = eig[0].abs().max(eig[n - 1].abs());
            assert!((spectral_norm(&h) - expected).abs() <= 1e-12 * expected);
        }
    }

    #[test]
    fn spectral_norm_is_unitarily_invariant() {
        let mut rng = crate::rng::SplitMix64::new(79);
        for n in [2, 4, 7] {
            let a = crate::ensembles::ginibre(n, &mut rng);
            let u = crate::ensembles::haar_unitary(n, &mut rng);
            let v = crate::ensembles::haar_unitary(n, &mut rng);
            let uav = &(&u * &a) * &v;
            assert!((spectral_norm(&uav) - spectral_norm(&a)).abs() <= 1e-10);
        }
    }

    #[test]
    fn cayley_of_random_contraction_is_unitary() {
        let mut rng = crate::rng::SplitMix64::new(11);
        let s = crate::ensembles::hermitian_contraction(4, &mut rng);
        let u = cayley_unitary(&s).unwrap();
        assert!(is_unitary(&u, 1e-10));
        assert!(u.re_part().unwrap().max_abs_diff(&s) <= 1e-10);
    }
}
