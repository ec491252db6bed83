//! Derivative-free global search on an interval: a uniform grid followed by
//! golden-section refinement of the best local brackets.
//!
//! Objectives here are maxima of smooth eigenvalue branches, so they are
//! Lipschitz but may have kinks where branches cross.

use crate::error::{Error, Result};

const INV_PHI: f64 = 0.618_033_988_749_894_8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridOpts {
    pub grid: usize,
    pub refine_tol: f64,
    pub top_brackets: usize,
}

impl Default for GridOpts {
    fn default() -> Self {
        GridOpts {
            grid: 720,
            refine_tol: 1e-10,
            top_brackets: 5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Optimum {
    pub arg: f64,
    pub value: f64,
    /// Width of the final bracket around `arg`.
    pub interval: f64,
    pub evaluations: usize,
}

/// Best point seen so far. Every recorded value is an actual evaluation at its
/// argument. Ties keep the earlier point.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Best {
    pub arg: f64,
    pub value: f64,
}

impl Best {
    pub fn new() -> Self {
        Best {
            arg: 0.0,
            value: f64::NEG_INFINITY,
        }
    }

    #[inline]
    pub fn offer(&mut self, arg: f64, value: f64) {
        if value > self.value {
            self.arg = arg;
            self.value = value;
        }
    }
}

/// Wraps an objective, counting calls and rejecting non-finite values.
pub(crate) struct Counted<F> {
    f: F,
    pub evaluations: usize,
}

impl<F: FnMut(f64) -> f64> Counted<F> {
    pub fn new(f: F) -> Self {
        Counted { f, evaluations: 0 }
    }

    pub fn eval(&mut self, x: f64) -> Result<f64> {
        self.evaluations += 1;
        let v = (self.f)(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NormEvaluation(format!("objective is {v} at {x}")))
        }
    }
}

/// Golden-section maximization on `[a, b]` until the bracket is at most `tol`
/// wide. Returns the final bracket width; all evaluations are offered to `best`.
pub(crate) fn golden_max<F: FnMut(f64) -> f64>(
    f: &mut Counted<F>,
    mut a: f64,
    mut b: f64,
    tol: f64,
    best: &mut Best,
) -> Result<f64> {
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f.eval(x1)?;
    let mut f2 = f.eval(x2)?;
    best.offer(x1, f1);
    best.offer(x2, f2);
    while b - a > tol {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f.eval(x1)?;
            best.offer(x1, f1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f.eval(x2)?;
            best.offer(x2, f2);
        }
    }
    Ok(b - a)
}

/// Indices of up to `top` grid-local maxima, best first, ties by index.
fn top_local_maxima(values: &[f64], periodic: bool, top: usize) -> Vec<usize> {
    let n = values.len();
    let mut peaks: Vec<usize> = (0..n)
        .filter(|&k| {
            let left = if k > 0 {
                Some(values[k - 1])
            } else if periodic {
                Some(values[n - 1])
            } else {
                None
            };
            let right = if k + 1 < n {
                Some(values[k + 1])
            } else if periodic {
                Some(values[0])
            } else {
                None
            };
            left.is_none_or(|l| values[k] >= l) && right.is_none_or(|r| values[k] >= r)
        })
        .collect();
    peaks.sort_by(|&i, &j| values[j].total_cmp(&values[i]).then(i.cmp(&j)));
    peaks.truncate(top.max(1));
    peaks
}

/// Maximizes `f` over one period `[start, start + period)`. The grid has
/// `opts.grid` points; each of the best `opts.top_brackets` local maxima is
/// refined on its two neighbouring grid cells.
pub fn maximize_periodic<F: FnMut(f64) -> f64>(
    f: F,
    start: f64,
    period: f64,
    opts: &GridOpts,
) -> Result<Optimum> {
    let grid = opts.grid.max(3);
    let h = period / grid as f64;
    let mut f = Counted::new(f);
    let mut best = Best::new();
    let mut values = Vec::with_capacity(grid);
    for k in 0..grid {
        let x = start + k as f64 * h;
        let v = f.eval(x)?;
        best.offer(x, v);
        values.push(v);
    }
    let mut interval: f64 = 0.0;
    for k in top_local_maxima(&values, true, opts.top_brackets) {
        let center = start + k as f64 * h;
        let w = golden_max(&mut f, center - h, center + h, opts.refine_tol, &mut best)?;
        interval = interval.max(w);
    }
    Ok(Optimum {
        arg: start + (best.arg - start).rem_euclid(period),
        value: best.value,
        interval,
        evaluations: f.evaluations,
    })
}

/// Minimizes `f` over one period.
pub fn minimize_periodic<F: FnMut(f64) -> f64>(
    mut f: F,
    start: f64,
    period: f64,
    opts: &GridOpts,
) -> Result<Optimum> {
    let o = maximize_periodic(|x| -f(x), start, period, opts)?;
    Ok(Optimum {
        value: -o.value,
        ..o
    })
}

/// Maximizes `f` over the closed interval `[lo, hi]`; brackets at the ends
/// are clipped to the interval.
pub fn maximize_interval<F: FnMut(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    opts: &GridOpts,
) -> Result<Optimum> {
    let grid = opts.grid.max(3);
    let h = (hi - lo) / (grid - 1) as f64;
    let mut f = Counted::new(f);
    let mut best = Best::new();
    let mut values = Vec::with_capacity(grid);
    for k in 0..grid {
        let x = if k + 1 == grid { hi } else { lo + k as f64 * h };
        let v = f.eval(x)?;
        best.offer(x, v);
        values.push(v);
    }
    let mut interval: f64 = 0.0;
    for k in top_local_maxima(&values, false, opts.top_brackets) {
        let center = lo + k as f64 * h;
        let w = golden_max(
            &mut f,
            (center - h).max(lo),
            (center + h).min(hi),
            opts.refine_tol,
            &mut best,
        )?;
        interval = interval.max(w);
    }
    Ok(Optimum {
        arg: best.arg,
        value: best.value,
        interval,
        evaluations: f.evaluations,
    })
}
