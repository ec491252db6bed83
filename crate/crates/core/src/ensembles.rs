//! Seeded random-matrix ensembles.
//!
//! Generation is a pure function of `(kind, dim, seed, scale)`: all draws come
//! from one [`SplitMix64`] stream seeded with `seed`, consumed in a fixed order.

use std::fmt;
use std::str::FromStr;

use crate::eigen::spectral_norm;
use crate::error::{Error, Result};
use crate::matrix::{c, inner, vec_norm, CMat, CScalar};
use crate::rng::SplitMix64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EnsembleKind {
    Ginibre,
    Hermitian,
    Normal,
    HaarUnitary,
    SquareZero,
    HermitianContraction,
    CommutingHermitianPair,
    AnticommutingHermitianPair,
}

impl EnsembleKind {
    pub const ALL: [EnsembleKind; 8] = [
        EnsembleKind::Ginibre,
        EnsembleKind::Hermitian,
        EnsembleKind::Normal,
        EnsembleKind::HaarUnitary,
        EnsembleKind::SquareZero,
        EnsembleKind::HermitianContraction,
        EnsembleKind::CommutingHermitianPair,
        EnsembleKind::AnticommutingHermitianPair,
    ];

    /// Short id used on the command line.
    pub fn id(self) -> &'static str {
        match self {
            EnsembleKind::Ginibre => "ginibre",
            EnsembleKind::Hermitian => "hermitian",
            EnsembleKind::Normal => "normal",
            EnsembleKind::HaarUnitary => "unitary",
            EnsembleKind::SquareZero => "nil",
            EnsembleKind::HermitianContraction => "contraction",
            EnsembleKind::CommutingHermitianPair => "commute",
            EnsembleKind::AnticommutingHermitianPair => "anticommute",
        }
    }

    pub fn is_pair(self) -> bool {
        matches!(
            self,
            EnsembleKind::CommutingHermitianPair | EnsembleKind::AnticommutingHermitianPair
        )
    }

    /// Every sample of this kind is Hermitian.
    pub fn is_hermitian(self) -> bool {
        matches!(
            self,
            EnsembleKind::Hermitian
                | EnsembleKind::HermitianContraction
                | EnsembleKind::CommutingHermitianPair
                | EnsembleKind::AnticommutingHermitianPair
        )
    }
}

impl FromStr for EnsembleKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        EnsembleKind::ALL
            .into_iter()
            .find(|k| k.id() == s)
            .ok_or_else(|| Error::UnknownEnsemble(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleSpec {
    pub kind: EnsembleKind,
    pub dim: usize,
    pub seed: u64,
    /// Ignored by the contraction kinds.
    pub scale: f64,
}

impl EnsembleSpec {
    pub fn new(kind: EnsembleKind, dim: usize, seed: u64) -> Self {
        EnsembleSpec {
            kind,
            dim,
            seed,
            scale: 1.0,
        }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        EnsembleSpec { seed, ..self.clone() }
    }

    /// `kind:n` without seed or scale.
    pub fn id(&self) -> String {
        format!("{}:{}", self.kind.id(), self.dim)
    }

    /// Parses `kind:n`; the seed is supplied separately.
    pub fn parse(id: &str, seed: u64) -> Result<Self> {
        let (kind, dim) = id
            .split_once(':')
            .ok_or_else(|| Error::UnknownEnsemble(id.to_string()))?;
        let kind: EnsembleKind = kind.trim().parse()?;
        let dim: usize = dim
            .trim()
            .parse()
            .map_err(|_| Error::UnknownEnsemble(id.to_string()))?;
        if dim == 0 {
            return Err(Error::InvalidDimension(dim));
        }
        Ok(EnsembleSpec::new(kind, dim, seed))
    }
}

impl fmt::Display for EnsembleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Sample {
    Single(CMat),
    Pair(CMat, CMat),
}

impl Sample {
    pub fn first(&self) -> &CMat {
        match self {
            Sample::Single(a) | Sample::Pair(a, _) => a,
        }
    }
}

/// Draws a sample as described by `spec`.
pub fn generate(spec: &EnsembleSpec) -> Result<Sample> {
    validate(spec)?;
    let mut rng = SplitMix64::new(spec.seed);
    draw(spec, &mut rng)
}

/// Draws a single matrix; pair kinds return their first member.
pub fn generate_matrix(spec: &EnsembleSpec) -> Result<CMat> {
    Ok(match generate(spec)? {
        Sample::Single(a) | Sample::Pair(a, _) => a,
    })
}

/// Draws two matrices. Pair kinds return their pair; single kinds return two
/// consecutive draws from the same stream.
pub fn generate_pair(spec: &EnsembleSpec) -> Result<(CMat, CMat)> {
    validate(spec)?;
    let mut rng = SplitMix64::new(spec.seed);
    match draw(spec, &mut rng)? {
        Sample::Pair(a, b) => Ok((a, b)),
        Sample::Single(a) => {
            let b = match draw(spec, &mut rng)? {
                Sample::Single(b) | Sample::Pair(b, _) => b,
            };
            Ok((a, b))
        }
    }
}

fn validate(spec: &EnsembleSpec) -> Result<()> {
    if spec.dim == 0 {
        return Err(Error::InvalidDimension(spec.dim));
    }
    if spec.kind == EnsembleKind::AnticommutingHermitianPair && !spec.dim.is_multiple_of(2) {
        return Err(Error::OddDimension {
            kind: spec.kind.id(),
            dim: spec.dim,
        });
    }
    Ok(())
}

fn draw(spec: &EnsembleSpec, rng: &mut SplitMix64) -> Result<Sample> {
    let n = spec.dim;
    let s = spec.scale;
    Ok(match spec.kind {
        EnsembleKind::Ginibre => Sample::Single(ginibre(n, rng).scale_real(s)),
        EnsembleKind::Hermitian => Sample::Single(hermitian(n, rng).scale_real(s)),
        EnsembleKind::Normal => Sample::Single(normal(n, rng).scale_real(s)),
        EnsembleKind::HaarUnitary => Sample::Single(haar_unitary(n, rng)),
        EnsembleKind::SquareZero => Sample::Single(square_zero(n, rng).scale_real(s)),
        EnsembleKind::HermitianContraction => Sample::Single(hermitian_contraction(n, rng)),
        EnsembleKind::CommutingHermitianPair => {
            let (a, b) = commuting_pair(n, rng);
            Sample::Pair(a.scale_real(s), b.scale_real(s))
        }
        EnsembleKind::AnticommutingHermitianPair => {
            let (a, b) = anticommuting_pair(n, rng);
            Sample::Pair(a.scale_real(s), b.scale_real(s))
        }
    })
}

/// i.i.d. standard complex Gaussian entries, row-major.
pub fn ginibre(n: usize, rng: &mut SplitMix64) -> CMat {
    CMat::new(n, n, rng.complex_gaussian_vec(n * n)).expect("finite gaussians")
}

/// `(G + G*) / 2`, exactly Hermitian.
pub fn hermitian(n: usize, rng: &mut SplitMix64) -> CMat {
    ginibre(n, rng).re_part().expect("square")
}

/// Q factor of a Ginibre matrix by twice-iterated modified Gram-Schmidt.
/// The implied R has a positive real diagonal, which makes Q Haar distributed.
pub fn haar_unitary(n: usize, rng: &mut SplitMix64) -> CMat {
    let g = ginibre(n, rng);
    let mut cols: Vec<Vec<CScalar>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v = g.column(j);
        for _ in 0..2 {
            for q in &cols {
                let r = inner(&v, q);
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= r * qi;
                }
            }
        }
        let norm = vec_norm(&v);
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    let mut u = CMat::zeros(n, n);
    for (j, col) in cols.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            u[(i, j)] = z;
        }
    }
    u
}

/// `U diag(d) U*` with Haar `U`.
fn conjugate_diag(u: &CMat, d: &[CScalar]) -> CMat {
    let n = u.rows();
    let mut out = CMat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = c(0.0, 0.0);
            for k in 0..n {
                acc += u[(i, k)] * d[k] * u[(j, k)].conj();
            }
            out[(i, j)] = acc;
        }
    }
    out
}

/// `U D U*` with Haar `U` and complex Gaussian diagonal `D`.
pub fn normal(n: usize, rng: &mut SplitMix64) -> CMat {
    let u = haar_unitary(n, rng);
    let d = rng.complex_gaussian_vec(n);
    conjugate_diag(&u, &d)
}

/// `u v* / n` with `v` orthogonalized against `u`.
pub fn square_zero(n: usize, rng: &mut SplitMix64) -> CMat {
    let u = rng.complex_gaussian_vec(n);
    let mut v = rng.complex_gaussian_vec(n);
    let uu = inner(&u, &u);
    for _ in 0..2 {
        let r = inner(&v, &u) / uu;
        for (vi, ui) in v.iter_mut().zip(&u) {
            *vi -= r * ui;
        }
    }
    CMat::outer(&u, &v).scale_real(1.0 / n as f64)
}

/// Hermitian scaled to operator norm `t`, `t` uniform in `(0, 1]`.
pub fn hermitian_contraction(n: usize, rng: &mut SplitMix64) -> CMat {
    let h = hermitian(n, rng);
    let t = rng.next_f64_open0();
    let norm = spectral_norm(&h);
    if norm == 0.0 {
        return h;
    }
    // Guard against the norm estimate landing one ulp low.
    h.scale_real(t / (norm * (1.0 + 4.0 * f64::EPSILON)))
}

fn real_diag(n: usize, rng: &mut SplitMix64) -> Vec<CScalar> {
    (0..n).map(|_| c(rng.next_gaussian(), 0.0)).collect()
}

/// `(U D1 U*, U D2 U*)` with real Gaussian diagonals.
pub fn commuting_pair(n: usize, rng: &mut SplitMix64) -> (CMat, CMat) {
    let u = haar_unitary(n, rng);
    let d1 = real_diag(n, rng);
    let d2 = real_diag(n, rng);
    let a = conjugate_diag(&u, &d1).re_part().expect("square");
    let b = conjugate_diag(&u, &d2).re_part().expect("square");
    (a, b)
}

/// `(sigma_x (x) A, sigma_z (x) B)` with `A`, `B` commuting Hermitian of size `n/2`.
pub fn anticommuting_pair(n: usize, rng: &mut SplitMix64) -> (CMat, CMat) {
    let (a, b) = commuting_pair(n / 2, rng);
    let sx = CMat::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).expect("2x2");
    let sz = CMat::from_real_diag(&[1.0, -1.0]);
    (sx.kron(&a), sz.kron(&b))
}
