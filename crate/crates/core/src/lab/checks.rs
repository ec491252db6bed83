//! One predicate per inequality or identity. Each check returns a list of
//! records, one per link of the statement, or [`Error::Inapplicable`] when a
//! hypothesis fails.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2, TAU};

use crate::eigen::{cayley_unitary, spectral_norm, symmetrized, HERMITIAN_TOL};
use crate::error::{Error, Hypothesis, Result};
use crate::lab::report::{inf_over_phi, stamp, sup_over_phi, InequalityReport as R};
use crate::matrix::{c, CMat, CScalar};
use crate::norms::NormSpec;
use crate::optimize::GridOpts;
use crate::radius::{
    generalized_radius, numerical_radius, omega_norm, omega_radius_slow, omega_radius_slow_opts, OmegaOpts,
    RadiusOpts,
};

/// Relative residual below which a structural hypothesis counts as satisfied.
pub const STRUCTURE_TOL: f64 = 1e-10;
/// Operator-norm slack admitted by the contraction hypothesis.
pub const CONTRACTION_TOL: f64 = 1e-9;
pub const IDENTITY_TOL: f64 = 1e-7;
pub const CLOSED_FORM_TOL: f64 = 1e-10;
pub const CAYLEY_TOL: f64 = 1e-10;
pub const HS_TOL: f64 = 1e-9;
/// Grid used to test "for all theta" conditions.
pub const THETA_GRID: usize = 720;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckOpts {
    pub radius: RadiusOpts,
    pub omega: OmegaOpts,
    /// Options for the direct `w_Omega` computation.
    pub slow_radius: RadiusOpts,
    pub tol: f64,
}

impl Default for CheckOpts {
    fn default() -> Self {
        CheckOpts {
            radius: RadiusOpts::default(),
            omega: OmegaOpts::default(),
            slow_radius: omega_radius_slow_opts(),
            tol: 1e-9,
        }
    }
}

/// Structured input classes for the closed-form Omega identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpecialForm {
    Normal,
    SquareZero,
    SelfAdjoint,
}

impl SpecialForm {
    pub fn id(self) -> &'static str {
        match self {
            SpecialForm::Normal => "normal",
            SpecialForm::SquareZero => "square_zero",
            SpecialForm::SelfAdjoint => "self_adjoint",
        }
    }
}

fn require(ok: bool, h: Hypothesis) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Inapplicable(h))
    }
}

fn w(t: &CMat, opts: &CheckOpts) -> Result<f64> {
    Ok(numerical_radius(t, &opts.radius)?.value)
}

fn wn(t: &CMat, n: &NormSpec, opts: &CheckOpts) -> Result<f64> {
    Ok(generalized_radius(t, n, &opts.radius)?.value)
}

/// Search period and grid over the rotation angle for `n`.
fn phi_grid(n: &NormSpec, opts: &CheckOpts) -> (f64, GridOpts) {
    if n.symmetric {
        (PI, GridOpts { grid: (opts.radius.grid / 2).max(3), ..opts.radius })
    } else {
        (TAU, opts.radius)
    }
}

fn hermitian(t: &CMat) -> Result<CMat> {
    symmetrized(t, HERMITIAN_TOL).map_err(|e| match e {
        Error::NonHermitianInput { .. } => Error::Inapplicable(Hypothesis::Hermitian),
        e => e,
    })
}

fn contraction(t: &CMat) -> Result<f64> {
    let n = spectral_norm(t);
    require(n <= 1.0 + CONTRACTION_TOL, Hypothesis::Contraction)?;
    Ok(n)
}

/// `sup_U {N(U) + N(U*)}`, known in closed form for self-adjoint norms.
fn unitary_pair_sup(n: &NormSpec, dim: usize) -> Result<f64> {
    require(n.self_adjoint, Hypothesis::SelfAdjointNorm)?;
    let sup = n
        .unitary_sup(dim)
        .ok_or(Error::Inapplicable(Hypothesis::KnownUnitarySup))?;
    Ok(2.0 * sup)
}

fn same_shape(t: &CMat, s: &CMat) -> Result<usize> {
    let n = t.ensure_square()?;
    if s.shape() != t.shape() {
        return Err(Error::ShapeMismatch {
            left: t.shape(),
            right: s.shape(),
        });
    }
    Ok(n)
}

/// `||T|| / 2 <= w(T) <= ||T||`.
pub fn check_basic_bounds(t: &CMat, opts: &CheckOpts) -> Result<Vec<R>> {
    t.ensure_square()?;
    let norm = spectral_norm(t);
    let wt = w(t, opts)?;
    let terms = [("norm", norm), ("w", wt)];
    Ok(stamp(
        vec![
            R::inequality("basic_bounds", "lower", norm / 2.0, wt, opts.tol).terms(&terms),
            R::inequality("basic_bounds", "upper", wt, norm, opts.tol).terms(&terms),
        ],
        &[t],
    ))
}

/// `w(T) <= (sqrt 2 / 2) ||TT* + T*T||^{1/2}`.
pub fn check_kittaneh(t: &CMat, opts: &CheckOpts) -> Result<Vec<R>> {
    let sym = spectral_norm(&t.sym_gram()?);
    let wt = w(t, opts)?;
    let bound = FRAC_1_SQRT_2 * sym.sqrt();
    Ok(stamp(
        vec![R::inequality("kittaneh", "bound", wt, bound, opts.tol).terms(&[("w", wt), ("sym_gram_norm", sym)])],
        &[t],
    ))
}

/// `w(T) <= (sqrt 2 / 2) (||T||^2 + w(T^2))^{1/2}`.
pub fn check_dragomir(t: &CMat, opts: &CheckOpts) -> Result<Vec<R>> {
    let norm = spectral_norm(t);
    let wt = w(t, opts)?;
    let wsq = w(&t.square()?, opts)?;
    let bound = FRAC_1_SQRT_2 * (norm * norm + wsq).sqrt();
    Ok(stamp(
        vec![R::inequality("dragomir", "bound", wt, bound, opts.tol).terms(&[
            ("w", wt),
            ("norm", norm),
            ("w_square", wsq),
        ])],
        &[t],
    ))
}

/// `w_N(T) <= inf_phi (N^2(Re e^{i phi} T) + N^2(Im e^{i phi} T))^{1/2}
///  <= (N^2(Re T) + N^2(Im T))^{1/2} <= N(Re T) + N(Im T)`.
pub fn check_inf_upper(t: &CMat, n: &NormSpec, opts: &CheckOpts) -> Result<Vec<R>> {
    t.ensure_square()?;
    let wt = wn(t, n, opts)?;
    let (period, grid) = phi_grid(n, opts);
    let inf = inf_over_phi(
        |phi| {
            let re = n.evaluate(&t.rotated_re_part(phi).expect("square"));
            let im = n.evaluate(&t.rotated_im_part(phi).expect("square"));
            re.hypot(im)
        },
        period,
        &grid,
    )?;
    let re = n.evaluate(&t.re_part()?);
    let im = n.evaluate(&t.im_part()?);
    let terms = [
        ("w_n", wt),
        ("inf", inf.value),
        ("argmin_phi", inf.argmax_phi),
        ("n_re", re),
        ("n_im", im),
    ];
    Ok(stamp(
        vec![
            R::inequality("inf_upper", "radius", wt, inf.value, opts.tol).terms(&terms),
            R::inequality("inf_upper", "parts_hypot", inf.value, re.hypot(im), opts.tol).terms(&terms),
            R::inequality("inf_upper", "parts_sum", re.hypot(im), re + im, opts.tol).terms(&terms),
        ],
        &[t],
    ))
}

/// `N(TT* + T*T)/4 + (1/2) sup_phi |N^2(Re e^{i phi} T) - N^2(Im e^{i phi} T)| <= w_N(T)^2`
/// for algebra norms, together with the weaker `N(TT* + T*T)/4 <= w_N(T)^2`.
pub fn check_lower_bound(t: &CMat, n: &NormSpec, opts: &CheckOpts) -> Result<Vec<R>> {
    require(n.algebra, Hypothesis::AlgebraNorm)?;
    let sym = n.evaluate(&t.sym_gram()?);
    let (period, grid) = phi_grid(n, opts);
    let sup = sup_over_phi(
        |phi| {
            let re = n.evaluate(&t.rotated_re_part(phi).expect("square"));
            let im = n.evaluate(&t.rotated_im_part(phi).expect("square"));
            (re * re - im * im).abs()
        },
        period,
        &grid,
    )?;
    let wt = wn(t, n, opts)?;
    let lhs = sym / 4.0 + sup.value / 2.0;
    let terms = [
        ("sym_gram_norm", sym),
        ("sup_difference", sup.value),
        ("argmax_phi", sup.argmax_phi),
        ("w_n", wt),
    ];
    Ok(stamp(
        vec![
            R::inequality("lower_bound", "refined", lhs, wt * wt, opts.tol).terms(&terms),
            R::inequality("lower_bound", "plain", sym / 4.0, wt * wt, opts.tol).terms(&terms),
        ],
        &[t],
    ))
}

/// `w_N(TS) <= N(TS) <= N(T)N(S) <= 2 N(T) w_N(S) <= 4 w_N(T) w_N(S)` for
/// self-adjoint algebra norms.
pub fn check_chain(t: &CMat, s: &CMat, n: &NormSpec, opts: &CheckOpts) -> Result<Vec<R>> {
    require(n.algebra, Hypothesis::AlgebraNorm)?;
    require(n.self_adjoint, Hypothesis::SelfAdjointNorm)?;
    same_shape(t, s)?;
    let ts = t.matmul(s)?;
    let w_ts = wn(&ts, n, opts)?;
    let n_ts = n.evaluate(&ts);
    let (nt, ns) = (n.evaluate(t), n.evaluate(s));
    let (wt, ws) = (wn(t, n, opts)?, wn(s, n, opts)?);
    let links = [w_ts, n_ts, nt * ns, 2.0 * nt * ws, 4.0 * wt * ws];
    let names = ["radius_norm", "submultiplicative", "half_radius", "radius_product"];
    let terms = [("w_n_ts", w_ts), ("n_ts", n_ts), ("n_t", nt), ("n_s", ns), ("w_n_t", wt), ("w_n_s", ws)];
    let reports = names
        .iter()
        .enumerate()
        .map(|(k, name)| R::inequality("chain", name, links[k], links[k + 1], opts.tol).terms(&terms))
        .collect();
    Ok(stamp(reports, &[t, s]))
}

/// `w_N(TS +- ST*) <= w_N(S) (N(T) + N(T*))` for algebra norms, and
/// `<= 2 w_N(S) N(T)` when the norm is also self-adjoint.
pub fn check_commutator(t: &CMat, s: &CMat, n: &NormSpec, opts: &CheckOpts) -> Result<Vec<R>> {
    require(n.algebra, Hypothesis::AlgebraNorm)?;
    same_shape(t, s)?;
    let ts = t.matmul(s)?;
    let st_star = s.matmul(&t.adjoint())?;
    let minus = wn(&ts.sub(&st_star)?, n, opts)?;
    let plus = wn(&ts.add(&st_star)?, n, opts)?;
    let ws = wn(s, n, opts)?;
    let (nt, nt_star) = (n.evaluate(t), n.evaluate(&t.adjoint()));
    let bound = ws * (nt + nt_star);
    let terms = [("minus", minus), ("plus", plus), ("w_n_s", ws), ("n_t", nt), ("n_t_star", nt_star)];
    let mut reports = vec![
        R::inequality("commutator", "minus", minus, bound, opts.tol).terms(&terms),
        R::inequality("commutator", "plus", plus, bound, opts.tol).terms(&terms),
    ];
    if n.self_adjoint {
        let sa = 2.0 * ws * nt;
        reports.push(R::inequality("commutator", "minus_self_adjoint", minus, sa, opts.tol).terms(&terms));
        reports.push(R::inequality("commutator", "plus_self_adjoint", plus, sa, opts.tol).terms(&terms));
    }
    Ok(stamp(reports, &[t, s]))
}

/// For Hermitian operator-norm contractions `T`, `S` and a weakly unitarily
/// invariant self-adjoint algebra norm:
/// `w_N(TS +- ST) <= min{w_N(T), w_N(S)} sup_U {N(U) + N(U*)}` and
/// `w_N(TS +- ST) <= 2 min{N(T), N(S)} sup_U N(U)`.
/// Also verifies that `U = S + i (I - S^2)^{1/2}` is unitary with `Re U = S`.
pub fn check_unitary_commutator(t: &CMat, s: &CMat, n: &NormSpec, opts: &CheckOpts) -> Result<Vec<R>> {
    require(n.algebra, Hypothesis::AlgebraNorm)?;
    require(n.weakly_unitarily_invariant, Hypothesis::WeaklyUnitarilyInvariant)?;
    let dim = same_shape(t, s)?;
    let pair_sup = unitary_pair_sup(n, dim)?;
    let t = hermitian(t)?;
    let s = hermitian(s)?;
    contraction(&t)?;
    contraction(&s)?;

    let u = cayley_unitary(&s)?;
    let re_defect = u.re_part()?.sub(&s)?.frobenius_norm();
    let unitarity = u.gram().sub(&CMat::identity(dim))?.frobenius_norm();

    let ts = t.matmul(&s)?;
    let st = s.matmul(&t)?;
    let minus = wn(&ts.sub(&st)?, n, opts)?;
    let plus = wn(&ts.add(&st)?, n, opts)?;
    let (wt, ws) = (wn(&t, n, opts)?, wn(&s, n, opts)?);
    let (nt, ns) = (n.evaluate(&t), n.evaluate(&s));
    let bound = wt.min(ws) * pair_sup;
    let norm_bound = nt.min(ns) * pair_sup;
    let terms = [
        ("minus", minus),
        ("plus", plus),
        ("w_n_t", wt),
        ("w_n_s", ws),
        ("unitary_pair_sup", pair_sup),
        ("cayley_re_defect", re_defect),
        ("cayley_unitarity_defect", unitarity),
    ];
    Ok(stamp(
        vec![
            R::deviation("unitary_commutator", "cayley", re_defect.max(unitarity), 1.0, CAYLEY_TOL),
            R::inequality("unitary_commutator", "minus", minus, bound, opts.tol).terms(&terms),
            R::inequality("unitary_commutator", "plus", plus, bound, opts.tol).terms(&terms),
            R::inequality("unitary_commutator", "minus_norms", minus, norm_bound, opts.tol).terms(&terms),
            R::inequality("unitary_commutator", "plus_norms", plus, norm_bound, opts.tol).terms(&terms),
        ],
        &[&t, &s],
    ))
}

/// `w_N(TT* - T*T) <= 4 N(T) sup_U N(U)` for operator-norm contractions `T`.
pub fn check_self_commutator(t: &CMat, n: &NormSpec, opts: &CheckOpts) -> Result<Vec<R>> {
    require(n.algebra, Hypothesis::AlgebraNorm)?;
    require(n.weakly_unitarily_invariant, Hypothesis::WeaklyUnitarilyInvariant)?;
    let dim = t.ensure_square()?;
    let pair_sup = unitary_pair_sup(n, dim)?;
    contraction(t)?;
    let ts = t.adjoint();
    let comm = t.matmul(&ts)?.sub(&ts.matmul(t)?)?;
    let lhs = wn(&comm, n, opts)?;
    let nt = n.evaluate(t);
    let rhs = 2.0 * nt * pair_sup;
    Ok(stamp(
        vec![R::inequality("self_commutator", "bound", lhs, rhs, opts.tol).terms(&[
            ("n_t", nt),
            ("unitary_sup", pair_sup / 2.0),
        ])],
        &[t],
    ))
}

/// For self-adjoint algebra norms:
/// `w_N(TS) <= min{N(T) w_N(S) + w_N(TS +- ST*)/2, N(S) w_N(T) + w_N(TS +- S*T)/2}
///  <= 2 min{N(T) w_N(S), N(S) w_N(T)} <= 4 w_N(T) w_N(S)`.
/// Each of the four sign variants is checked on its own.
pub fn check_product(t: &CMat, s: &CMat, n: &NormSpec, opts: &CheckOpts) -> Result<Vec<R>> {
    require(n.algebra, Hypothesis::AlgebraNorm)?;
    require(n.self_adjoint, Hypothesis::SelfAdjointNorm)?;
    same_shape(t, s)?;
    let ts = t.matmul(s)?;
    let st_star = s.matmul(&t.adjoint())?;
    let s_star_t = s.adjoint().matmul(t)?;
    let w_ts = wn(&ts, n, opts)?;
    let t_minus = wn(&ts.sub(&st_star)?, n, opts)?;
    let t_plus = wn(&ts.add(&st_star)?, n, opts)?;
    let s_minus = wn(&ts.sub(&s_star_t)?, n, opts)?;
    let s_plus = wn(&ts.add(&s_star_t)?, n, opts)?;
    let (nt, ns) = (n.evaluate(t), n.evaluate(s));
    let (wt, ws) = (wn(t, n, opts)?, wn(s, n, opts)?);

    let t_branch = nt * ws;
    let s_branch = ns * wt;
    let variants = [
        ("t_minus", t_branch + t_minus / 2.0),
        ("t_plus", t_branch + t_plus / 2.0),
        ("s_minus", s_branch + s_minus / 2.0),
        ("s_plus", s_branch + s_plus / 2.0),
    ];
    // The middle term for the least favourable choice of signs.
    let middle = variants[0].1.max(variants[1].1).min(variants[2].1.max(variants[3].1));
    let upper = 2.0 * t_branch.min(s_branch);
    let outer = 4.0 * wt * ws;
    let terms = [
        ("w_n_ts", w_ts),
        ("n_t", nt),
        ("n_s", ns),
        ("w_n_t", wt),
        ("w_n_s", ws),
        ("w_n_ts_minus_st_star", t_minus),
        ("w_n_ts_plus_st_star", t_plus),
        ("w_n_ts_minus_s_star_t", s_minus),
        ("w_n_ts_plus_s_star_t", s_plus),
    ];
    let mut reports: Vec<R> = variants
        .iter()
        .map(|&(name, rhs)| R::inequality("product", name, w_ts, rhs, opts.tol).terms(&terms))
        .collect();
    reports.push(R::inequality("product", "middle", middle, upper, opts.tol).terms(&terms));
    reports.push(R::inequality("product", "outer", upper, outer, opts.tol).terms(&terms));
    Ok(stamp(reports, &[t, s]))
}

/// `w_N(TS) <= min{N(T) w_N(S), N(S) w_N(T)}` for Hermitian `T`, `S` with
/// `TS = +-ST` and a self-adjoint algebra norm.
pub fn check_commuting_product(t: &CMat, s: &CMat, n: &NormSpec, opts: &CheckOpts) -> Result<Vec<R>> {
    require(n.algebra, Hypothesis::AlgebraNorm)?;
    require(n.self_adjoint, Hypothesis::SelfAdjointNorm)?;
    same_shape(t, s)?;
    let t = hermitian(t)?;
    let s = hermitian(s)?;
    let ts = t.matmul(&s)?;
    let st = s.matmul(&t)?;
    let residual = ts.sub(&st)?.frobenius_norm().min(ts.add(&st)?.frobenius_norm());
    let scale = t.frobenius_norm() * s.frobenius_norm();
    require(residual <= STRUCTURE_TOL * scale, Hypothesis::Commutation)?;
    let w_ts = wn(&ts, n, opts)?;
    let (nt, ns) = (n.evaluate(&t), n.evaluate(&s));
    let (wt, ws) = (wn(&t, n, opts)?, wn(&s, n, opts)?);
    let rhs = (nt * ws).min(ns * wt);
    Ok(stamp(
        vec![R::inequality("commuting_product", "bound", w_ts, rhs, opts.tol).terms(&[
            ("w_n_ts", w_ts),
            ("n_t", nt),
            ("n_s", ns),
            ("w_n_t", wt),
            ("w_n_s", ws),
            ("commutation_residual", residual),
        ])],
        &[&t, &s],
    ))
}

/// The two branches `||TT* + T*T||^{1/2}` and `(||T||^2 + w(T^2))^{1/2}`.
fn omega_branches(t: &CMat, opts: &CheckOpts) -> Result<(f64, f64)> {
    let sym = spectral_norm(&t.sym_gram()?).sqrt();
    let norm = spectral_norm(t);
    let wsq = w(&t.square()?, opts)?;
    Ok((sym, (norm * norm + wsq).sqrt()))
}

/// `Omega(T) <= min{||TT* + T*T||^{1/2}, (||T||^2 + w(T^2))^{1/2}}`, with the
/// sandwich `||T|| <= Omega(T) <= sqrt 2 ||T||`.
pub fn check_omega_upper(t: &CMat, opts: &CheckOpts) -> Result<Vec<R>> {
    let om = omega_norm(t, &opts.omega)?;
    let (k, d) = omega_branches(t, opts)?;
    let norm = spectral_norm(t);
    let terms = [
        ("omega", om.value),
        ("argmax_s", om.argmax.0),
        ("argmax_psi", om.argmax.1),
        ("sym_gram_branch", k),
        ("square_branch", d),
        ("norm", norm),
    ];
    Ok(stamp(
        vec![
            R::inequality("omega_upper", "bound", om.value, k.min(d), opts.tol).terms(&terms),
            R::inequality("omega_upper", "sandwich_lower", norm, om.value, opts.tol).terms(&terms),
            R::inequality("omega_upper", "sandwich_upper", om.value, SQRT_2 * norm, opts.tol).terms(&terms),
        ],
        &[t],
    ))
}

/// `w(T) <= (sqrt 2/2) Omega(T) <= (sqrt 2/2) min{branches}`, plus the identity
/// `w_Omega(T) = sqrt 2 w(T)` with `w_Omega` computed directly.
pub fn check_w_omega_chain(t: &CMat, opts: &CheckOpts) -> Result<Vec<R>> {
    let wt = w(t, opts)?;
    let om = omega_norm(t, &opts.omega)?.value;
    let (k, d) = omega_branches(t, opts)?;
    let slow = omega_radius_slow(t, &opts.slow_radius)?.value;
    let terms = [("w", wt), ("omega", om), ("w_omega_direct", slow), ("branch_min", k.min(d))];
    Ok(stamp(
        vec![
            R::inequality("w_omega_chain", "radius", wt, FRAC_1_SQRT_2 * om, opts.tol).terms(&terms),
            R::inequality("w_omega_chain", "branches", FRAC_1_SQRT_2 * om, FRAC_1_SQRT_2 * k.min(d), opts.tol)
                .terms(&terms),
            R::deviation("w_omega_chain", "radius_identity", (SQRT_2 * wt - slow).abs(), wt.max(1.0), IDENTITY_TOL)
                .terms(&terms),
        ],
        &[t],
    ))
}

/// Equivalence of `w_Omega(T) = Omega(T)/2` and
/// `Omega(T) = 2 sqrt 2 ||Re(e^{i theta} T)||` for all `theta`, each decided at
/// relative tolerance `1e-7` (the second on a 720-point grid).
pub fn check_omega_equality(t: &CMat, opts: &CheckOpts) -> Result<Vec<R>> {
    let om = omega_norm(t, &opts.omega)?.value;
    let w_om = SQRT_2 * w(t, opts)?;
    let dev_i = (w_om - om / 2.0).abs();
    let mut dev_ii: f64 = 0.0;
    for k in 0..THETA_GRID {
        let theta = k as f64 * TAU / THETA_GRID as f64;
        let re = spectral_norm(&t.rotated_re_part(theta)?);
        dev_ii = dev_ii.max((om - 2.0 * SQRT_2 * re).abs());
    }
    let cond_i = dev_i <= IDENTITY_TOL * om;
    let cond_ii = dev_ii <= IDENTITY_TOL * om;
    let rel = |x: f64| if om > 0.0 { x / om } else { 0.0 };
    let terms = [
        ("omega", om),
        ("w_omega", w_om),
        ("condition_i_deviation", rel(dev_i)),
        ("condition_ii_deviation", rel(dev_ii)),
    ];
    Ok(stamp(
        vec![
            R::implication("omega_equality", "forward", cond_i, cond_ii).terms(&terms),
            R::implication("omega_equality", "backward", cond_ii, cond_i).terms(&terms),
        ],
        &[t],
    ))
}

/// Closed forms: normal `T` has `Omega = sqrt 2 ||T||` and `w_Omega = Omega`;
/// square-zero `T` has `Omega = ||T||` and `w_Omega = (sqrt 2/2) Omega`;
/// Hermitian `T` has `Omega = sqrt 2 ||T||`. The structure is verified first.
pub fn check_special_forms(t: &CMat, form: SpecialForm, opts: &CheckOpts) -> Result<Vec<R>> {
    t.ensure_square()?;
    let f2 = t.frobenius_norm().powi(2);
    let residual = match form {
        SpecialForm::Normal => {
            let ts = t.adjoint();
            t.matmul(&ts)?.sub(&ts.matmul(t)?)?.frobenius_norm() / f2.max(f64::MIN_POSITIVE)
        }
        SpecialForm::SquareZero => t.square()?.frobenius_norm() / f2.max(f64::MIN_POSITIVE),
        SpecialForm::SelfAdjoint => t.hermitian_defect()? / t.frobenius_norm().max(f64::MIN_POSITIVE),
    };
    require(
        residual <= STRUCTURE_TOL,
        match form {
            SpecialForm::Normal => Hypothesis::Normal,
            SpecialForm::SquareZero => Hypothesis::SquareZero,
            SpecialForm::SelfAdjoint => Hypothesis::Hermitian,
        },
    )?;
    let om = omega_norm(t, &opts.omega)?.value;
    let norm = spectral_norm(t);
    let w_om = SQRT_2 * w(t, opts)?;
    let terms = [("omega", om), ("norm", norm), ("w_omega", w_om), ("structure_residual", residual)];
    let dev = |link: &str, value: f64, target: f64| {
        R::deviation("special_forms", link, (value - target).abs(), target, IDENTITY_TOL).terms(&terms)
    };
    let reports = match form {
        SpecialForm::Normal => vec![
            dev("normal_omega", om, SQRT_2 * norm),
            dev("normal_w_omega", w_om, om),
        ],
        SpecialForm::SquareZero => vec![
            dev("square_zero_omega", om, norm),
            dev("square_zero_w_omega", w_om, FRAC_1_SQRT_2 * om),
        ],
        SpecialForm::SelfAdjoint => vec![dev("self_adjoint_omega", om, SQRT_2 * norm)],
    };
    Ok(stamp(reports, &[t]))
}

/// `sup_phi |tr((e^{i phi} T)^2 + (e^{-i phi} T*)^2)|`, searched numerically.
pub fn trace_sup(t: &CMat, opts: &CheckOpts) -> Result<(f64, f64)> {
    t.ensure_square()?;
    let sup = sup_over_phi(
        |phi| {
            let x = t.rotate(phi);
            let y = x.adjoint();
            let tr = x.square().expect("square").trace().expect("square")
                + y.square().expect("square").trace().expect("square");
            tr.norm()
        },
        TAU,
        &opts.radius,
    )?;
    Ok((sup.value, sup.argmax_phi))
}

/// Hilbert-Schmidt consequences:
/// (i) `||TT* + T*T||_2 + sup_phi |tr((e^{i phi}T)^2 + (e^{-i phi}T*)^2)| <= 2(||T||_2^2 + |tr T^2|)`,
/// with the supremum also compared against its closed form `2 |tr T^2|`;
/// (ii) `||TS||_2^2 + |tr (TS)^2| <= 4 min{||T||_2^2 (||S||_2^2 + |tr S^2|), ||S||_2^2 (||T||_2^2 + |tr T^2|)}`.
pub fn check_c2_corollary(t: &CMat, s: &CMat, opts: &CheckOpts) -> Result<Vec<R>> {
    same_shape(t, s)?;
    let hs = |a: &CMat| -> Result<(f64, f64)> {
        let f = a.frobenius_norm();
        Ok((f * f, a.square()?.trace()?.norm()))
    };
    let (t2, tr_t) = hs(t)?;
    let (s2, tr_s) = hs(s)?;
    let sym = t.sym_gram()?.frobenius_norm();
    let (sup, argmax) = trace_sup(t, opts)?;
    let closed = 2.0 * tr_t;
    let ts = t.matmul(s)?;
    let (ts2, tr_ts) = hs(&ts)?;
    let prod_rhs = 4.0 * (t2 * (s2 + tr_s)).min(s2 * (t2 + tr_t));
    let terms = [
        ("hs_t_sq", t2),
        ("abs_tr_t_sq", tr_t),
        ("hs_s_sq", s2),
        ("abs_tr_s_sq", tr_s),
        ("trace_sup", sup),
        ("trace_sup_closed_form", closed),
        ("argmax_phi", argmax),
    ];
    Ok(stamp(
        vec![
            R::inequality("c2_corollary", "trace_sup", sym + sup, 2.0 * (t2 + tr_t), opts.tol).terms(&terms),
            R::deviation("c2_corollary", "closed_form", (sup - closed).abs(), closed.max(t2), CLOSED_FORM_TOL)
                .terms(&terms),
            R::inequality("c2_corollary", "product", ts2 + tr_ts, prod_rhs, opts.tol).terms(&terms),
        ],
        &[t, s],
    ))
}

/// `w_2(T)^2 = ||T||_2^2 / 2 + |tr T^2| / 2` with `w_2` the Frobenius-norm radius.
/// The unsquared form `w_2(T) = ...` is reported as the term `unsquared_gap`.
pub fn check_hs_identity(t: &CMat, opts: &CheckOpts) -> Result<Vec<R>> {
    let w2 = generalized_radius(t, &NormSpec::frobenius(), &opts.radius)?.value;
    let hs = crate::radius::hs_radius_sq(t)?;
    Ok(stamp(
        vec![R::deviation("hs_identity", "squared", (w2 * w2 - hs).abs(), hs.max(1.0), HS_TOL).terms(&[
            ("w2", w2),
            ("hs_radius_sq", hs),
            ("unsquared_gap", hs - w2),
        ])],
        &[t],
    ))
}

/// `Re(e^{i theta} T)` expressed through `alpha Re T + beta Im T` with
/// `alpha = cos theta`, `beta = -sin theta`.
pub fn rotation_expansion_defect(t: &CMat, theta: f64) -> Result<f64> {
    let direct = t.rotate(theta).re_part()?;
    let expanded = CMat::lin_comb(c(theta.cos(), 0.0), &t.re_part()?, c(-theta.sin(), 0.0), &t.im_part()?)?;
    Ok(direct.max_abs_diff(&expanded))
}

/// `Re^2(e^{i phi} T) + Im^2(e^{i phi} T) - (TT* + T*T)/2` in Frobenius norm.
pub fn cartesian_identity_defect(t: &CMat, phi: f64) -> Result<f64> {
    let re = t.rotated_re_part(phi)?;
    let im = t.rotated_im_part(phi)?;
    let lhs = re.square()?.add(&im.square()?)?;
    let rhs = t.sym_gram()?.scale(CScalar::new(0.5, 0.0));
    Ok(lhs.sub(&rhs)?.frobenius_norm())
}
