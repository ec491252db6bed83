use std::collections::BTreeMap;

use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::matrix::CMat;
use crate::optimize::{maximize_periodic, minimize_periodic, GridOpts};

/// One inequality instance `lhs <= rhs`.
///
/// `slack` is `(rhs - lhs) / scale`, where `scale` is the normalization the
/// record was built with, so a record passes iff `slack >= -tolerance`.
#[derive(Debug, Clone, PartialEq)]
pub struct InequalityReport {
    pub name: String,
    /// The check family this record belongs to.
    pub tag: String,
    pub lhs: f64,
    pub rhs: f64,
    pub scale: f64,
    pub slack: f64,
    pub holds: bool,
    pub tolerance: f64,
    pub terms: BTreeMap<String, f64>,
    pub input_digest: String,
}

impl InequalityReport {
    /// `lhs <= rhs`, normalized by `max(1, |lhs|, |rhs|)`.
    pub fn inequality(tag: &str, link: &str, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let scale = 1f64.max(lhs.abs()).max(rhs.abs());
        Self::build(tag, link, lhs, rhs, scale, tolerance)
    }

    /// `deviation <= 0` relative to `scale`: an identity checked to `tolerance`.
    pub fn deviation(tag: &str, link: &str, deviation: f64, scale: f64, tolerance: f64) -> Self {
        Self::build(tag, link, deviation, 0.0, scale.max(f64::MIN_POSITIVE), tolerance)
    }

    /// `premise => conclusion` encoded as `[premise] <= [conclusion]`.
    pub fn implication(tag: &str, link: &str, premise: bool, conclusion: bool) -> Self {
        Self::build(tag, link, premise as u8 as f64, conclusion as u8 as f64, 1.0, 0.0)
    }

    fn build(tag: &str, link: &str, lhs: f64, rhs: f64, scale: f64, tolerance: f64) -> Self {
        let slack = (rhs - lhs) / scale;
        InequalityReport {
            name: format!("{tag}.{link}"),
            tag: tag.to_string(),
            lhs,
            rhs,
            scale,
            slack,
            holds: slack >= -tolerance,
            tolerance,
            terms: BTreeMap::new(),
            input_digest: String::new(),
        }
    }

    pub fn term(mut self, key: &str, value: f64) -> Self {
        self.terms.insert(key.to_string(), value);
        self
    }

    pub fn terms(mut self, pairs: &[(&str, f64)]) -> Self {
        for &(k, v) in pairs {
            self.terms.insert(k.to_string(), v);
        }
        self
    }

    /// Replaces `rhs` and recomputes slack and status.
    pub fn with_rhs(mut self, rhs: f64) -> Self {
        self.rhs = rhs;
        self.slack = (rhs - self.lhs) / self.scale;
        self.holds = self.slack >= -self.tolerance;
        self
    }
}

/// First 16 hex digits of SHA-256 over the shapes and entry bits of `inputs`.
pub fn input_digest(inputs: &[&CMat]) -> String {
    let mut h = Sha256::new();
    for a in inputs {
        h.update((a.rows() as u64).to_le_bytes());
        h.update((a.cols() as u64).to_le_bytes());
        for z in a.data() {
            h.update(z.re.to_bits().to_le_bytes());
            h.update(z.im.to_bits().to_le_bytes());
        }
    }
    let hex: String = h.finalize().iter().map(|b| format!("{b:02x}")).collect();
    hex[..16].to_string()
}

/// Stamps every report with the digest of `inputs`.
pub(crate) fn stamp(mut reports: Vec<InequalityReport>, inputs: &[&CMat]) -> Vec<InequalityReport> {
    let d = input_digest(inputs);
    for r in &mut reports {
        r.input_digest = d.clone();
    }
    reports
}

/// An optimum of a function of the rotation angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupOverPhi {
    pub value: f64,
    pub argmax_phi: f64,
    pub grid: usize,
    pub refine_tol: f64,
}

/// Supremum of `f` over one period starting at 0.
pub fn sup_over_phi<F: FnMut(f64) -> f64>(f: F, period: f64, opts: &GridOpts) -> Result<SupOverPhi> {
    let o = maximize_periodic(f, 0.0, period, opts)?;
    Ok(SupOverPhi {
        value: o.value,
        argmax_phi: o.arg,
        grid: opts.grid,
        refine_tol: opts.refine_tol,
    })
}

/// Infimum of `f` over one period; `argmax_phi` holds the minimizer.
pub fn inf_over_phi<F: FnMut(f64) -> f64>(f: F, period: f64, opts: &GridOpts) -> Result<SupOverPhi> {
    let o = minimize_periodic(f, 0.0, period, opts)?;
    Ok(SupOverPhi {
        value: o.value,
        argmax_phi: o.arg,
        grid: opts.grid,
        refine_tol: opts.refine_tol,
    })
}
