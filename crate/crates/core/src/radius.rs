//! Numerical radius, generalized norm-radii and the Omega norm.
//!
//! Every radius here is a supremum of a norm of `Re(e^{i theta} T)` over the
//! rotation angle; the Omega norm is a supremum of the operator norm over the
//! complex unit sphere `|zeta|^2 + |eta|^2 = 1`.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2, TAU};

use crate::eigen::{hermitian_extremes, spectral_norm};
use crate::error::{Error, Result};
use crate::matrix::{c, inner, CMat, CScalar};
use crate::norms::NormSpec;
use crate::optimize::{maximize_periodic, GridOpts};
use crate::rng::SplitMix64;

pub type RadiusOpts = GridOpts;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiusResult {
    pub value: f64,
    /// In `[0, 2 pi)`.
    pub argmax_theta: f64,
    /// Final bracket width of the refinement.
    pub achieved_interval: f64,
    pub evaluations: usize,
}

/// Maximizes `N(Re(e^{i theta} T))` over `theta`.
///
/// Norms marked `symmetric` (`N(-A) = N(A)`) are searched over `[0, pi)` with
/// the same grid spacing, since `Re(e^{i (theta + pi)} T) = -Re(e^{i theta} T)`.
pub fn generalized_radius(t: &CMat, norm: &NormSpec, opts: &RadiusOpts) -> Result<RadiusResult> {
    t.ensure_square()?;
    let objective = |theta: f64| {
        norm.evaluate(&t.rotated_re_part(theta).expect("square checked"))
    };
    let (period, grid) = if norm.symmetric {
        (PI, (opts.grid / 2).max(3))
    } else {
        (TAU, opts.grid)
    };
    let o = maximize_periodic(objective, 0.0, period, &GridOpts { grid, ..*opts })?;
    Ok(RadiusResult {
        value: o.value,
        argmax_theta: o.arg,
        achieved_interval: o.interval,
        evaluations: o.evaluations,
    })
}

/// `lambda_max(Re(e^{i theta} T))`.
pub fn re_lambda_max(t: &CMat, theta: f64) -> Result<f64> {
    Ok(hermitian_extremes(&t.rotated_re_part(theta)?).1)
}

/// `w(T) = sup_theta lambda_max(Re(e^{i theta} T))` over `[0, 2 pi)`.
///
/// This equals the operator-norm radius because shifting `theta` by `pi`
/// negates the Hermitian part.
pub fn numerical_radius(t: &CMat, opts: &RadiusOpts) -> Result<RadiusResult> {
    t.ensure_square()?;
    let objective = |theta: f64| {
        hermitian_extremes(&t.rotated_re_part(theta).expect("square checked")).1
    };
    let o = maximize_periodic(objective, 0.0, TAU, opts)?;
    Ok(RadiusResult {
        value: o.value.max(0.0),
        argmax_theta: o.arg,
        achieved_interval: o.interval,
        evaluations: o.evaluations,
    })
}

/// `w(T)` with default options.
pub fn w(t: &CMat) -> Result<f64> {
    Ok(numerical_radius(t, &RadiusOpts::default())?.value)
}

/// Brute-force numerical radius: the maximum of `lambda_max(Re(e^{i theta} T))`
/// over a uniform grid of `grid` angles in `[0, 2 pi)`, with no refinement.
/// For even `grid` the point `theta + pi` is on the grid, so each eigen-solve
/// contributes `lambda_max` at `theta` and `-lambda_min` at `theta + pi`.
pub fn numerical_radius_oracle(t: &CMat, grid: usize) -> Result<f64> {
    t.ensure_square()?;
    let grid = grid.max(2);
    let h = TAU / grid as f64;
    let mut best = f64::NEG_INFINITY;
    if grid.is_multiple_of(2) {
        for k in 0..grid / 2 {
            let (lo, hi) = hermitian_extremes(&t.rotated_re_part(k as f64 * h)?);
            best = best.max(hi).max(-lo);
        }
    } else {
        for k in 0..grid {
            best = best.max(hermitian_extremes(&t.rotated_re_part(k as f64 * h)?).1);
        }
    }
    Ok(best.max(0.0))
}

/// `sup_{alpha^2 + beta^2 = 1} N(alpha Re T + beta Im T)`, parameterized by
/// `(alpha, beta) = (cos u, sin u)`.
pub fn alphabeta_radius(t: &CMat, norm: &NormSpec, opts: &RadiusOpts) -> Result<f64> {
    let re = t.re_part()?;
    let im = t.im_part()?;
    let objective = |u: f64| {
        let m = CMat::lin_comb(c(u.cos(), 0.0), &re, c(u.sin(), 0.0), &im).expect("same shape");
        norm.evaluate(&m)
    };
    Ok(maximize_periodic(objective, 0.0, TAU, opts)?.value)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OmegaOpts {
    pub grid_s: usize,
    pub grid_psi: usize,
    pub refine_tol: f64,
    pub top: usize,
}

impl Default for OmegaOpts {
    fn default() -> Self {
        OmegaOpts {
            grid_s: 96,
            grid_psi: 192,
            refine_tol: 1e-9,
            top: 5,
        }
    }
}

impl OmegaOpts {
    /// Coarser search used when Omega is itself the inner objective of a
    /// radius computation.
    pub fn inner() -> Self {
        OmegaOpts {
            grid_s: 12,
            grid_psi: 24,
            refine_tol: 1e-9,
            top: 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OmegaResult {
    pub value: f64,
    /// `(s, psi)` with `s` in `[0, pi/2]`, `psi` in `[0, 2 pi)`.
    pub argmax: (f64, f64),
    pub achieved_cell: f64,
    pub evaluations: usize,
}

const MAX_OMEGA_ROUNDS: usize = 100;

/// Precomputed pieces of `M(s, psi)* M(s, psi)` for
/// `M = cos s T + e^{i psi} sin s T*`:
/// `M*M = cos^2 s T*T + sin^2 s TT* + cos s sin s (e^{i psi} T*T* + e^{-i psi} TT)`.
struct OmegaObjective {
    tt_star_t: CMat,
    t_t_star: CMat,
    t_star_sq: CMat,
    t_sq: CMat,
}

impl OmegaObjective {
    fn new(t: &CMat) -> Self {
        let ts = t.adjoint();
        OmegaObjective {
            tt_star_t: &ts * t,
            t_t_star: t * &ts,
            t_star_sq: &ts * &ts,
            t_sq: t * t,
        }
    }

    fn eval(&self, s: f64, psi: f64) -> f64 {
        let (sn, cs) = s.sin_cos();
        let z = CScalar::from_polar(cs * sn, psi);
        let n = self.t_sq.rows();
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = self.tt_star_t[(i, j)] * (cs * cs)
                    + self.t_t_star[(i, j)] * (sn * sn)
                    + z * self.t_star_sq[(i, j)]
                    + z.conj() * self.t_sq[(i, j)];
                m[(i, j)] = v;
                m[(j, i)] = v.conj();
            }
            m[(i, i)].im = 0.0;
        }
        hermitian_extremes(&m).1.max(0.0).sqrt()
    }
}

/// `Omega(T) = sup { ||zeta T + eta T*|| : |zeta|^2 + |eta|^2 <= 1 }`.
///
/// The supremum is attained on the sphere and the global phase is fixed by
/// taking `zeta = cos s >= 0`, `eta = e^{i psi} sin s`. Search: a
/// `grid_s x grid_psi` grid (`s` including both ends, `psi` periodic), then
/// trust-region Newton ascent from each of the best `top` grid-local maxima
/// until the step is at most `refine_tol`.
pub fn omega_norm(t: &CMat, opts: &OmegaOpts) -> Result<OmegaResult> {
    t.ensure_square()?;
    let obj = OmegaObjective::new(t);
    let gs = opts.grid_s.max(2);
    let gp = opts.grid_psi.max(3);
    let hs = FRAC_PI_2 / (gs - 1) as f64;
    let hp = TAU / gp as f64;
    let s_at = |i: usize| if i + 1 == gs { FRAC_PI_2 } else { i as f64 * hs };

    let mut evaluations = 0usize;
    let mut values = vec![0.0; gs * gp];
    for i in 0..gs {
        for j in 0..gp {
            let v = obj.eval(s_at(i), j as f64 * hp);
            if !v.is_finite() {
                return Err(Error::NormEvaluation(format!("Omega objective is {v}")));
            }
            values[i * gp + j] = v;
        }
    }
    evaluations += gs * gp;

    // Grid-local maxima over the 8-neighbourhood; psi wraps, s does not.
    let mut peaks: Vec<usize> = (0..gs * gp)
        .filter(|&k| {
            let (i, j) = (k / gp, k % gp);
            let v = values[k];
            for di in [-1i64, 0, 1] {
                let ii = i as i64 + di;
                if ii < 0 || ii >= gs as i64 {
                    continue;
                }
                for dj in [-1i64, 0, 1] {
                    if di == 0 && dj == 0 {
                        continue;
                    }
                    let jj = (j as i64 + dj).rem_euclid(gp as i64) as usize;
                    if values[ii as usize * gp + jj] > v {
                        return false;
                    }
                }
            }
            true
        })
        .collect();
    // Ties: smaller s, then smaller psi, which is index order.
    peaks.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));
    peaks.truncate(opts.top.max(1));

    let mut best_val = f64::NEG_INFINITY;
    let mut best_arg = (0.0, 0.0);
    let mut best_cell = hs.max(hp);
    for &k in &peaks {
        let (i, j) = (k / gp, k % gp);
        let start = (s_at(i), j as f64 * hp, values[k]);
        let (s, psi, v, cell, evals) = refine_omega(&obj, start, hs, hp, opts.refine_tol)?;
        evaluations += evals;
        if v > best_val {
            best_val = v;
            best_arg = (s, psi.rem_euclid(TAU));
            best_cell = cell;
        }
    }
    Ok(OmegaResult {
        value: best_val,
        argmax: best_arg,
        achieved_cell: best_cell,
        evaluations,
    })
}

/// Trust-region Newton ascent from a grid point, with central-difference
/// derivatives. The objective is smooth and extends to the whole plane
/// (period `pi` in `s`, `2 pi` in `psi`), so steps are unconstrained and the
/// result is folded back into `[0, pi/2] x [0, 2 pi)` afterwards. Stops once
/// the trust radius or the step falls below `tol`.
fn refine_omega(
    obj: &OmegaObjective,
    (mut s, mut psi, mut val): (f64, f64, f64),
    hs0: f64,
    hp0: f64,
    tol: f64,
) -> Result<(f64, f64, f64, f64, usize)> {
    const H: f64 = 1e-4;
    let mut radius = hs0.max(hp0);
    let mut evaluations = 0;
    let mut stale = true;
    let (mut g, mut hess) = ([0.0; 2], [0.0; 3]);
    for _ in 0..MAX_OMEGA_ROUNDS {
        if stale {
            let f = |ds: f64, dp: f64| obj.eval(s + ds * H, psi + dp * H);
            let (fsp, fsm, fpp, fpm) = (f(1.0, 0.0), f(-1.0, 0.0), f(0.0, 1.0), f(0.0, -1.0));
            let (fa, fb, fc, fd) = (f(1.0, 1.0), f(1.0, -1.0), f(-1.0, 1.0), f(-1.0, -1.0));
            evaluations += 8;
            g = [(fsp - fsm) / (2.0 * H), (fpp - fpm) / (2.0 * H)];
            hess = [
                (fsp - 2.0 * val + fsm) / (H * H),
                (fa - fb - fc + fd) / (4.0 * H * H),
                (fpp - 2.0 * val + fpm) / (H * H),
            ];
            stale = false;
        }
        let [a, b, c] = hess;
        let det = a * c - b * b;
        let mut d = if a < 0.0 && det > 0.0 {
            [-(c * g[0] - b * g[1]) / det, -(a * g[1] - b * g[0]) / det]
        } else {
            let gn = g[0].hypot(g[1]);
            if gn > 0.0 {
                [g[0] / gn * radius, g[1] / gn * radius]
            } else {
                // Stationary but not a maximum: leave along the most convex direction.
                let l = 0.5 * (a + c) + (0.25 * (a - c) * (a - c) + b * b).sqrt();
                let v = if (l - a).abs() > (l - c).abs() { [b, l - a] } else { [l - c, b] };
                let vn = v[0].hypot(v[1]);
                if vn == 0.0 {
                    [radius, 0.0]
                } else {
                    [v[0] / vn * radius, v[1] / vn * radius]
                }
            }
        };
        let mut len = d[0].hypot(d[1]);
        if !len.is_finite() {
            return Err(Error::NormEvaluation("Omega refinement diverged".into()));
        }
        if len > radius {
            d = [d[0] * radius / len, d[1] * radius / len];
            len = radius;
        }
        if len <= tol {
            radius = len;
            break;
        }
        let trial = obj.eval(s + d[0], psi + d[1]);
        evaluations += 1;
        if trial > val {
            s += d[0];
            psi += d[1];
            val = trial;
            stale = true;
            radius = radius.max(2.0 * len).min(1.0);
        } else {
            radius = len / 4.0;
            if radius <= tol {
                break;
            }
        }
    }
    let (s, psi) = fold_omega_angles(s, psi);
    Ok((s, psi, val, radius, evaluations))
}

/// Maps any `(s, psi)` to the equivalent point with `s` in `[0, pi/2]`.
fn fold_omega_angles(s: f64, psi: f64) -> (f64, f64) {
    let s = s.rem_euclid(PI);
    if s > FRAC_PI_2 {
        (PI - s, psi + PI)
    } else {
        (s, psi)
    }
}

/// `||cos(s) T + e^{i psi} sin(s) T*||`, the Omega objective evaluated directly.
pub fn omega_objective(t: &CMat, s: f64, psi: f64) -> Result<f64> {
    let m = CMat::lin_comb(
        c(s.cos(), 0.0),
        t,
        CScalar::from_polar(s.sin(), psi),
        &t.adjoint(),
    )?;
    Ok(spectral_norm(&m))
}

/// Monte-Carlo lower bound for Omega:
/// `max sqrt(|<T y, x>|^2 + |<T* y, x>|^2)` over `samples` random unit pairs.
pub fn omega_vector_lower_bound(t: &CMat, samples: usize, seed: u64) -> Result<f64> {
    let n = t.ensure_square()?;
    let ts = t.adjoint();
    let mut rng = SplitMix64::new(seed);
    let mut best: f64 = 0.0;
    for _ in 0..samples {
        let x = rng.unit_vector(n);
        let y = rng.unit_vector(n);
        let a = inner(&t.mat_vec(&y), &x);
        let b = inner(&ts.mat_vec(&y), &x);
        best = best.max((a.norm_sqr() + b.norm_sqr()).sqrt());
    }
    Ok(best)
}

/// `w_Omega(T) = sqrt(2) w(T)`.
pub fn omega_radius(t: &CMat) -> Result<f64> {
    Ok(SQRT_2 * w(t)?)
}

/// Options for the direct `w_Omega` computation: every objective evaluation
/// is itself an Omega optimization, so the angle grid is coarser.
pub fn omega_radius_slow_opts() -> RadiusOpts {
    RadiusOpts {
        grid: 120,
        refine_tol: 1e-10,
        top_brackets: 3,
    }
}

/// `w_Omega(T)` computed directly as the generalized radius for the Omega norm.
pub fn omega_radius_slow(t: &CMat, opts: &RadiusOpts) -> Result<RadiusResult> {
    generalized_radius(t, &NormSpec::omega(), opts)
}

/// `(1/2) ||T||_F^2 + (1/2) |tr(T^2)|`, the square of the Frobenius-norm radius.
pub fn hs_radius_sq(t: &CMat) -> Result<f64> {
    let f = t.frobenius_norm();
    let tr = t.square()?.trace()?;
    Ok(0.5 * f * f + 0.5 * tr.norm())
}
