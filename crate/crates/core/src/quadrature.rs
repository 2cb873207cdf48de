//! Two-photon quadrature algebra.
//!
//! Fields are column vectors `(a1, a2)′` of amplitude and phase quadrature
//! coefficients at one sideband frequency. Every optical element acts on them
//! as a 2×2 complex matrix.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::constants::MAX_SQUEEZE_FACTOR;
use crate::error::{Error, Result};

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Quadrature-space vector `(a1, a2)′`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexVec2(pub [C64; 2]);

impl ComplexVec2 {
    pub const fn new(a1: C64, a2: C64) -> Self {
        Self([a1, a2])
    }

    pub fn real(a1: f64, a2: f64) -> Self {
        Self([c(a1), c(a2)])
    }

    pub fn a1(&self) -> C64 {
        self.0[0]
    }

    pub fn a2(&self) -> C64 {
        self.0[1]
    }

    pub fn conj(&self) -> Self {
        Self([self.0[0].conj(), self.0[1].conj()])
    }

    /// `self† · other`
    pub fn inner(&self, other: &Self) -> C64 {
        self.0[0].conj() * other.0[0] + self.0[1].conj() * other.0[1]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0[0].norm_sqr() + self.0[1].norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, s: C64) -> Self {
        Self([self.0[0] * s, self.0[1] * s])
    }

    /// Projection onto the real homodyne direction `(cos ζ, sin ζ)`.
    pub fn project(&self, zeta: f64) -> C64 {
        self.0[0] * zeta.cos() + self.0[1] * zeta.sin()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl Index<usize> for ComplexVec2 {
    type Output = C64;
    fn index(&self, i: usize) -> &C64 {
        &self.0[i]
    }
}

impl Add for ComplexVec2 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self([self.0[0] + o.0[0], self.0[1] + o.0[1]])
    }
}

impl Sub for ComplexVec2 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self([self.0[0] - o.0[0], self.0[1] - o.0[1]])
    }
}

/// Row-major 2×2 complex matrix `[[m11, m12], [m21, m22]]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexMat2(pub [[C64; 2]; 2]);

impl ComplexMat2 {
    pub const IDENTITY: Self = Self([[ONE, ZERO], [ZERO, ONE]]);
    pub const ZERO: Self = Self([[ZERO, ZERO], [ZERO, ZERO]]);

    pub const fn new(m11: C64, m12: C64, m21: C64, m22: C64) -> Self {
        Self([[m11, m12], [m21, m22]])
    }

    pub fn real(m11: f64, m12: f64, m21: f64, m22: f64) -> Self {
        Self([[c(m11), c(m12)], [c(m21), c(m22)]])
    }

    pub fn diag(d1: C64, d2: C64) -> Self {
        Self([[d1, ZERO], [ZERO, d2]])
    }

    pub fn from_columns(c1: ComplexVec2, c2: ComplexVec2) -> Self {
        Self([[c1[0], c2[0]], [c1[1], c2[1]]])
    }

    pub fn column(&self, j: usize) -> ComplexVec2 {
        ComplexVec2([self.0[0][j], self.0[1][j]])
    }

    /// The symplectic form `J = [[0, 1], [−1, 0]]`.
    pub fn symplectic_form() -> Self {
        Self::real(0.0, 1.0, -1.0, 0.0)
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.0[i][j]
    }

    pub fn scale(&self, s: C64) -> Self {
        let m = &self.0;
        Self([[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]])
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(c(s))
    }

    pub fn transpose(&self) -> Self {
        let m = &self.0;
        Self([[m[0][0], m[1][0]], [m[0][1], m[1][1]]])
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Self([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn det(&self) -> C64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1]
    }

    /// Adjugate: `adj(M)·M = det(M)·I`.
    pub fn adjugate(&self) -> Self {
        let m = &self.0;
        Self([[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]])
    }

    /// Inverse, or `None` when the determinant vanishes.
    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d.norm() == 0.0 || !d.is_finite() {
            return None;
        }
        Some(self.adjugate().scale(d.inv()))
    }

    pub fn apply(&self, v: &ComplexVec2) -> ComplexVec2 {
        let m = &self.0;
        ComplexVec2([
            m[0][0] * v[0] + m[0][1] * v[1],
            m[1][0] * v[0] + m[1][1] * v[1],
        ])
    }

    pub fn real_part(&self) -> [[f64; 2]; 2] {
        let m = &self.0;
        [[m[0][0].re, m[0][1].re], [m[1][0].re, m[1][1].re]]
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let d = *self - *other;
        d.0.iter()
            .flat_map(|row| row.iter())
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.max_abs_diff(&Self::ZERO)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.adjoint()) <= tol * self.max_abs().max(1.0)
    }

    pub fn is_finite(&self) -> bool {
        self.0
            .iter()
            .flat_map(|row| row.iter())
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl Index<(usize, usize)> for ComplexMat2 {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.0[i][j]
    }
}

impl Mul for ComplexMat2 {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let a = &self.0;
        let b = &b.0;
        Self([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }
}

impl Mul<ComplexVec2> for ComplexMat2 {
    type Output = ComplexVec2;
    fn mul(self, v: ComplexVec2) -> ComplexVec2 {
        self.apply(&v)
    }
}

impl Add for ComplexMat2 {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        let (a, b) = (&self.0, &b.0);
        Self([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }
}

impl Sub for ComplexMat2 {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Neg for ComplexMat2 {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale_re(-1.0)
    }
}

impl fmt::Display for ComplexMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.0;
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            m[0][0], m[0][1], m[1][0], m[1][1]
        )
    }
}

/// Squeeze factor (e-folds) and squeeze angle (radians, kept in `[0, 2π)`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SqueezeParams {
    r: f64,
    theta: f64,
}

impl SqueezeParams {
    pub fn new(r: f64, theta: f64) -> Result<Self> {
        if !r.is_finite() {
            return Err(Error::param("r", "squeeze factor must be finite"));
        }
        if !theta.is_finite() {
            return Err(Error::param("theta", "squeeze angle must be finite"));
        }
        Ok(Self {
            r,
            theta: theta.rem_euclid(2.0 * PI),
        })
    }

    pub fn vacuum() -> Self {
        Self { r: 0.0, theta: 0.0 }
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn db(&self) -> f64 {
        db_from_r(self.r)
    }
}

fn finite(name: &'static str, x: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::param(name, format!("must be finite, got {x}")))
    }
}

/// Inverse cotangent on the branch `(0, π)`, so `arccot(0) = π/2`.
pub fn arccot(x: f64) -> f64 {
    FRAC_PI_2 - x.atan()
}

/// Passive-element rotation `[[cos Θ, −sin Θ], [sin Θ, cos Θ]]`.
pub fn rot_matrix(angle: f64) -> Result<ComplexMat2> {
    let angle = finite("Theta", angle)?;
    Ok(rotation(angle))
}

pub(crate) fn rotation(angle: f64) -> ComplexMat2 {
    let (s, co) = angle.sin_cos();
    ComplexMat2::real(co, -s, s, co)
}

/// Phase-sensitive squeezer `M_rot(θ)·diag(eʳ, e⁻ʳ)·M_rot(−θ)`.
///
/// `r = 1, θ = 0` amplifies the amplitude quadrature and squeezes the phase
/// quadrature by about 8.7 dB.
pub fn sqz_matrix(p: SqueezeParams) -> Result<ComplexMat2> {
    if p.r.abs() > MAX_SQUEEZE_FACTOR {
        return Err(Error::param(
            "r",
            format!("|r| = {} exceeds {MAX_SQUEEZE_FACTOR}", p.r.abs()),
        ));
    }
    // Expanded product; keeps the result exactly symmetric.
    let (s, co) = p.theta.sin_cos();
    let (g, h) = (p.r.exp(), (-p.r).exp());
    let m11 = g * co * co + h * s * s;
    let m22 = g * s * s + h * co * co;
    let m12 = (g - h) * s * co;
    Ok(ComplexMat2::real(m11, m12, m12, m22))
}

/// Radiation-pressure coupling of a free test mass, `[[1, 0], [−κ, 1]]`.
pub fn ponderomotive_matrix(kappa: f64) -> Result<ComplexMat2> {
    let kappa = finite("kappa", kappa)?;
    if kappa < 0.0 {
        return Err(Error::param("kappa", format!("must be ≥ 0, got {kappa}")));
    }
    Ok(ComplexMat2::real(1.0, 0.0, -kappa, 1.0))
}

/// Rotation-then-squeeze factorisation of the ponderomotive matrix:
/// `sqz_matrix(squeeze) · rot_matrix(phi) = ponderomotive_matrix(κ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PonderomotiveDecomposition {
    pub phi: f64,
    pub squeeze: SqueezeParams,
}

pub fn ponderomotive_decompose(kappa: f64) -> Result<PonderomotiveDecomposition> {
    let kappa = finite("kappa", kappa)?;
    if kappa <= 0.0 {
        return Err(Error::param(
            "kappa",
            format!("decomposition needs κ > 0, got {kappa}"),
        ));
    }
    let half = kappa / 2.0;
    let phi = -half.atan();
    let theta = arccot(half) / 2.0;
    let r = -half.asinh();
    Ok(PonderomotiveDecomposition {
        phi,
        squeeze: SqueezeParams::new(r, theta)?,
    })
}

/// `10·log10(e^{2r})`.
pub fn db_from_r(r: f64) -> f64 {
    20.0 * r * std::f64::consts::LOG10_E
}

pub fn r_from_db(db: f64) -> f64 {
    db / (20.0 * std::f64::consts::LOG10_E)
}

/// `M·J·Mᵀ − J`, the deviation from the real symplectic group.
pub fn symplectic_defect(m: &ComplexMat2) -> f64 {
    let j = ComplexMat2::symplectic_form();
    (*m * j * m.transpose()).max_abs_diff(&j)
}
