//! Boundary machinery: Fourier spectra, Poisson extensions, the Hilbert
//! transform, Hardy means and the S-operator.

use std::f64::consts::{PI, TAU};
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::domain::{node_angle, AlphaWeight, BoundarySignal, DiskField, DiskPoint, QuadratureSpec};
use crate::error::{DiskError, Result};
use crate::kernels::{poisson_kernel_alpha, poisson_kernel_alpha_dz};
use crate::quadrature::MAX_CIRCLE_NODES;
use crate::report::{BoundReport, BoundRow};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Largest FFT the circle sampler of [`alpha_poisson_dz_field`] will build.
pub const MAX_SAMPLER_NODES: usize = 1 << 24;

/// Tolerance used by [`conjugate_identity_check`].
pub const IDENTITY_TOL: f64 = 1e-6;

fn fft(data: &mut [Complex64], inverse: bool) {
    let mut planner = FftPlanner::new();
    let plan = if inverse {
        planner.plan_fft_inverse(data.len())
    } else {
        planner.plan_fft_forward(data.len())
    };
    plan.process(data);
}

/// Fourier coefficients `c_k`, `k in [-n/2, n/2)`, of `n` uniform samples,
/// normalised so that `psi(theta_j) = sum_k c_k e^{i k theta_j}`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierSpectrum {
    // FFT order: index j holds k = j for j < n/2 and k = j - n otherwise
    coeffs: Vec<Complex64>,
}

impl FourierSpectrum {
    pub fn of(signal: &BoundarySignal) -> Self {
        Self::from_samples(signal.samples())
    }

    pub fn from_samples(samples: &[Complex64]) -> Self {
        let n = samples.len();
        let mut coeffs = samples.to_vec();
        fft(&mut coeffs, false);
        let scale = 1.0 / n as f64;
        coeffs.iter_mut().for_each(|c| *c *= scale);
        Self { coeffs }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn index(&self, k: i64) -> Option<usize> {
        let n = self.len() as i64;
        if k < -n / 2 || k >= n / 2 {
            return None;
        }
        Some(k.rem_euclid(n) as usize)
    }

    /// `c_k`, zero outside `[-n/2, n/2)`.
    pub fn coefficient(&self, k: i64) -> Complex64 {
        self.index(k).map(|j| self.coeffs[j]).unwrap_or(ZERO)
    }

    /// Pairs `(k, c_k)` in increasing `k`.
    pub fn coefficients(&self) -> Vec<(i64, Complex64)> {
        let h = self.len() as i64 / 2;
        (-h..h).map(|k| (k, self.coefficient(k))).collect()
    }

    fn wavenumber(&self, j: usize) -> i64 {
        let n = self.len();
        if j < n / 2 {
            j as i64
        } else {
            j as i64 - n as i64
        }
    }

    /// Samples at the `n` uniform nodes.
    pub fn inverse(&self) -> Vec<Complex64> {
        let mut v = self.coeffs.clone();
        fft(&mut v, true);
        v
    }

    pub fn to_signal(&self) -> Result<BoundarySignal> {
        BoundarySignal::from_samples(self.inverse())
    }

    /// Trigonometric interpolant at `theta`; the Nyquist mode contributes as a cosine.
    pub fn eval(&self, theta: f64) -> Complex64 {
        let n = self.len();
        let h = n / 2;
        let mut acc = ZERO;
        for (j, c) in self.coeffs.iter().enumerate() {
            if j == h {
                acc += c * (h as f64 * theta).cos();
            } else {
                acc += c * Complex64::from_polar(1.0, self.wavenumber(j) as f64 * theta);
            }
        }
        acc
    }

    /// Values of the interpolant at `m` uniform nodes (`m` even).
    pub fn resample(&self, m: usize) -> Vec<Complex64> {
        let n = self.len();
        if m == n {
            return self.inverse();
        }
        if m < n && n.is_multiple_of(m) {
            let step = n / m;
            return self.inverse().into_iter().step_by(step).collect();
        }
        let mut out = vec![ZERO; m];
        let (nh, mh) = ((n / 2) as i64, (m / 2) as i64);
        for (j, &c) in self.coeffs.iter().enumerate() {
            let k = self.wavenumber(j);
            if k == -nh {
                if m > n {
                    out[(m as i64 - nh) as usize] += c * 0.5;
                    out[nh as usize] += c * 0.5;
                } else if k.abs() <= mh {
                    out[(m as i64 - mh) as usize] += c;
                }
                continue;
            }
            if m > n || (k > -mh && k < mh) {
                out[k.rem_euclid(m as i64) as usize] += c;
            } else if k.abs() == mh {
                out[(m as i64 - mh) as usize] += c;
            }
        }
        fft(&mut out, true);
        out
    }

    fn map<F: Fn(i64, Complex64) -> Complex64>(&self, f: F) -> Self {
        let h = self.len() / 2;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, &c)| if j == h { ZERO } else { f(self.wavenumber(j), c) })
            .collect();
        Self { coeffs }
    }

    /// Spectral derivative: `c_k -> i k c_k`, Nyquist mode dropped.
    pub fn derivative(&self) -> Self {
        self.map(|k, c| c * Complex64::new(0.0, k as f64))
    }

    /// Conjugate-function multiplier `c_k -> -i sgn(k) c_k`; `c_0` and the Nyquist mode vanish.
    pub fn hilbert(&self) -> Self {
        self.map(|k, c| c * Complex64::new(0.0, -(k.signum() as f64)))
    }
}

/// How [`hilbert_transform`] evaluates the transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HilbertMethod {
    /// Principal-value quadrature on the samples.
    Pv,
    /// Fourier multiplier `-i sgn(k)`.
    Multiplier,
}

/// Spectral derivative `psi'` of a sampled signal.
pub fn spectral_derivative(psi: &BoundarySignal) -> Result<BoundarySignal> {
    FourierSpectrum::of(psi).derivative().to_signal()
}

fn check_finite(psi: &BoundarySignal) -> Result<()> {
    if psi.samples().iter().any(|s| !(s.re.is_finite() && s.im.is_finite())) {
        return Err(DiskError::NonFinite("boundary samples"));
    }
    Ok(())
}

/// `H(psi)(phi) = -(1/2pi) PV int_0^pi (psi(phi + t) - psi(phi - t)) / tan(t/2) dt`,
/// so that `H(cos) = sin` and `H(sin) = -cos`.
pub fn hilbert_transform(psi: &BoundarySignal, method: HilbertMethod) -> Result<BoundarySignal> {
    check_finite(psi)?;
    match method {
        HilbertMethod::Multiplier => FourierSpectrum::of(psi).hilbert().to_signal(),
        HilbertMethod::Pv => BoundarySignal::from_samples(hilbert_pv(psi.samples())),
    }
}

// The integrand g(t) = (psi(phi+t) - psi(phi-t)) / tan(t/2) is even and
// 2pi-periodic, so the trapezoidal rule on [0, pi] is spectrally accurate once
// the removable value g(0) = 4 psi'(phi) is supplied. psi' comes from a
// sixth-order central difference on the samples.
fn hilbert_pv(s: &[Complex64]) -> Vec<Complex64> {
    let n = s.len();
    let h = TAU / n as f64;
    let at = |j: usize, m: isize| s[(j as isize + m).rem_euclid(n as isize) as usize];
    let cot: Vec<f64> = (0..=n / 2)
        .map(|m| {
            let half = 0.5 * m as f64 * h;
            half.cos() / half.sin()
        })
        .collect();
    (0..n)
        .map(|j| {
            let d = (-at(j, -3) + at(j, -2) * 9.0 - at(j, -1) * 45.0 + at(j, 1) * 45.0
                - at(j, 2) * 9.0
                + at(j, 3))
                / (60.0 * h);
            let mut acc = d * 2.0;
            for (m, c) in cot.iter().enumerate().take(n / 2).skip(1) {
                let mi = m as isize;
                acc += (at(j, mi) - at(j, -mi)) * *c;
            }
            // the t = pi term carries cot(pi/2) = 0
            -acc * h / TAU
        })
        .collect()
}

/// Node count for circle sums of a kernel peaked at `z e^{-i theta} -> 1`.
pub(crate) fn kernel_nodes(modulus: f64, spec: &QuadratureSpec) -> usize {
    let want = (40.0 / (1.0 - modulus)).ceil() as usize;
    spec.circle_nodes.max(want.next_power_of_two()).min(MAX_CIRCLE_NODES)
}

fn circle_sum<K>(psi: &BoundarySignal, z: DiskPoint, spec: &QuadratureSpec, kernel: K) -> Result<Complex64>
where
    K: Fn(f64, DiskPoint) -> Complex64,
{
    spec.validate()?;
    let n = kernel_nodes(z.modulus(), spec);
    let samples = psi.resample(n)?;
    let mut acc = ZERO;
    for (k, s) in samples.iter().enumerate() {
        let theta = node_angle(k, n);
        let zeta = DiskPoint::new_unchecked(z.z() * Complex64::from_polar(1.0, -theta));
        acc += kernel(theta, zeta) * s;
    }
    let v = acc / n as f64;
    if !(v.re.is_finite() && v.im.is_finite()) {
        return Err(DiskError::NonFinite("circle quadrature"));
    }
    Ok(v)
}

/// Classical Poisson integral `P[psi](z)`.
pub fn poisson_extend(psi: &BoundarySignal, z: DiskPoint, spec: &QuadratureSpec) -> Result<Complex64> {
    let zero = AlphaWeight::new(0.0)?;
    circle_sum(psi, z, spec, |_, zeta| poisson_kernel_alpha(zeta, zero))
}

/// `(1/2pi) int P_alpha(z e^{-i theta}) psi(theta) d theta`.
pub fn alpha_poisson_extend(
    psi: &BoundarySignal,
    z: DiskPoint,
    a: AlphaWeight,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    circle_sum(psi, z, spec, |_, zeta| poisson_kernel_alpha(zeta, a))
}

/// `d/dz P_alpha[psi](z)`, differentiating under the integral.
pub fn alpha_poisson_dz(
    psi: &BoundarySignal,
    z: DiskPoint,
    a: AlphaWeight,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    circle_sum(psi, z, spec, |theta, zeta| {
        Complex64::from_polar(1.0, -theta) * poisson_kernel_alpha_dz(zeta, a)
    })
}

/// `d/dz P_alpha[psi]` as a field. Circles are sampled by an FFT convolution
/// (the derivative is a circular convolution in the angle), which keeps
/// Hardy means close to the boundary affordable.
pub fn alpha_poisson_dz_field(psi: &BoundarySignal, a: AlphaWeight, spec: &QuadratureSpec) -> Result<DiskField> {
    spec.validate()?;
    let pointwise = psi.clone();
    let sampled = psi.clone();
    let spec = *spec;
    let field = DiskField::from_rule(move |z| {
        alpha_poisson_dz(&pointwise, z, a, &spec).unwrap_or(Complex64::new(f64::NAN, f64::NAN))
    })
    .with_circle_sampler(Arc::new(move |r, n| dz_on_circle(&sampled, a, r, n)));
    Ok(field)
}

fn dz_on_circle(psi: &BoundarySignal, a: AlphaWeight, r: f64, n: usize) -> Result<Vec<Complex64>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let want = ((32.0 / (1.0 - r)).ceil() as usize).max(psi.len()).max(n);
    let mut big = n;
    while big < want {
        big *= 2;
    }
    if big > MAX_SAMPLER_NODES {
        return Err(DiskError::Margin {
            modulus: r,
            limit: 1.0 - 32.0 / MAX_SAMPLER_NODES as f64,
        });
    }
    let mut f = if big.is_multiple_of(2) && big >= 4 {
        psi.resample(big)?
    } else {
        (0..big).map(|k| psi.eval(node_angle(k, big))).collect()
    };
    let mut kern: Vec<Complex64> = (0..big)
        .map(|m| {
            let t = node_angle(m, big);
            let e = Complex64::from_polar(1.0, t);
            e * poisson_kernel_alpha_dz(DiskPoint::new_unchecked(e * r), a)
        })
        .collect();
    fft(&mut f, false);
    fft(&mut kern, false);
    for (k, fk) in kern.iter_mut().zip(&f) {
        *k *= fk;
    }
    fft(&mut kern, true);
    let scale = 1.0 / (big as f64 * big as f64);
    let step = big / n;
    let out: Vec<Complex64> = (0..n)
        .map(|j| kern[j * step] * scale * Complex64::from_polar(1.0, -node_angle(j, n)))
        .collect();
    if out.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(DiskError::NonFinite("circle convolution"));
    }
    Ok(out)
}

/// Checks `r d/dr P[psi] = P[H(psi')]` at 16 angles on the circle of radius `r`.
/// Row `lhs` is the discrepancy, `rhs` the tolerance [`IDENTITY_TOL`].
pub fn conjugate_identity_check(psi: &BoundarySignal, r: f64, spec: &QuadratureSpec) -> Result<BoundReport> {
    if !(r > 0.0 && r < 1.0) {
        return Err(DiskError::Domain(format!("radius {r} outside (0, 1)")));
    }
    let conj = FourierSpectrum::of(psi).derivative().hilbert().to_signal()?;
    let delta = 1e-2f64.min((1.0 - r) / 4.0).min(r / 4.0);
    let mut rows = Vec::new();
    for j in 0..16 {
        let phi = node_angle(j, 16);
        let at = |rho: f64| poisson_extend(psi, DiskPoint::from_polar(rho, phi)?, spec);
        let d = (-at(r + 2.0 * delta)? + at(r + delta)? * 8.0 - at(r - delta)? * 8.0 + at(r - 2.0 * delta)?)
            / (12.0 * delta);
        let lhs = d * r;
        let rhs = poisson_extend(&conj, DiskPoint::from_polar(r, phi)?, spec)?;
        rows.push(BoundRow::new(format!("phi={phi:.6}"), (lhs - rhs).norm(), IDENTITY_TOL));
    }
    Ok(BoundReport::new("conjugate identity", rows, 1.0))
}

/// Exponent of a Hardy mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HardyExponent {
    Finite(f64),
    Infinity,
}

impl HardyExponent {
    pub fn validate(&self) -> Result<()> {
        match *self {
            HardyExponent::Finite(p) if !(p > 0.0 && p.is_finite()) => {
                Err(DiskError::Domain(format!("Hardy exponent must be positive, got {p}")))
            }
            _ => Ok(()),
        }
    }
}

fn hardy_nodes(r: f64, spec: &QuadratureSpec) -> usize {
    let want = (16.0 / (1.0 - r)).ceil() as usize;
    spec.circle_nodes
        .max(want.next_power_of_two())
        .min(MAX_SAMPLER_NODES)
}

/// `M_p(r, f) = ((1/2pi) int |f(r e^{i theta})|^p d theta)^{1/p}`; the maximum over nodes for `p = inf`.
pub fn hardy_mean(f: &DiskField, p: HardyExponent, r: f64, spec: &QuadratureSpec) -> Result<f64> {
    p.validate()?;
    spec.validate()?;
    if !(r > 0.0 && r < 1.0) {
        return Err(DiskError::Domain(format!("radius {r} outside (0, 1)")));
    }
    let n = hardy_nodes(r, spec);
    let values = f.sample_circle(r, n)?;
    let m = match p {
        HardyExponent::Infinity => values.iter().map(|v| v.norm()).fold(0.0, f64::max),
        HardyExponent::Finite(p) => {
            let s: f64 = values.iter().map(|v| v.norm().powf(p)).sum();
            (s / n as f64).powf(1.0 / p)
        }
    };
    if !m.is_finite() {
        return Err(DiskError::NonFinite("Hardy mean"));
    }
    Ok(m)
}

/// Radial grid and divergence ceiling for [`hardy_norm`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HardyConfig {
    /// Radii `r_j = 1 - 2^{-j}`, `j = 1..=levels`.
    pub levels: u32,
    pub ceiling: f64,
}

impl Default for HardyConfig {
    fn default() -> Self {
        Self {
            levels: 20,
            ceiling: 1e6,
        }
    }
}

/// Sup of the sampled Hardy means.
#[derive(Debug, Clone, PartialEq)]
pub struct HardyNorm {
    pub value: f64,
    /// `(r_j, M_p(r_j, f))`.
    pub means: Vec<(f64, f64)>,
    /// Set when some mean exceeds the ceiling.
    pub diverged: bool,
}

impl HardyNorm {
    /// Largest over smallest sampled mean.
    pub fn spread(&self) -> f64 {
        let lo = self.means.iter().map(|m| m.1).fold(f64::INFINITY, f64::min);
        self.value / lo
    }
}

pub fn hardy_norm(f: &DiskField, p: HardyExponent, cfg: &HardyConfig, spec: &QuadratureSpec) -> Result<HardyNorm> {
    if cfg.levels == 0 {
        return Err(DiskError::Domain("Hardy sweep needs at least one level".into()));
    }
    let mut means = Vec::with_capacity(cfg.levels as usize);
    for j in 1..=cfg.levels {
        let r = 1.0 - 0.5f64.powi(j as i32);
        means.push((r, hardy_mean(f, p, r, spec)?));
    }
    let value = means.iter().map(|m| m.1).fold(0.0, f64::max);
    Ok(HardyNorm {
        value,
        diverged: value > cfg.ceiling,
        means,
    })
}

/// `S[f](w) = (1/pi) int (1-|w|^2)^alpha / (1 - z conj w)^alpha * Im(w conj z) / |z - w|^2 f(z) dt`, `z = e^{it}`.
pub fn s_operator(fprime: &BoundarySignal, w: DiskPoint, a: AlphaWeight, spec: &QuadratureSpec) -> Result<Complex64> {
    spec.validate()?;
    let n = spec.circle_nodes;
    let limit = 1.0 - 10.0 * TAU / n as f64;
    if w.modulus() > limit {
        return Err(DiskError::Margin {
            modulus: w.modulus(),
            limit,
        });
    }
    let samples = fprime.resample(n)?;
    let wz = w.z();
    let dw = a.rpow(w.gap());
    let one = Complex64::new(1.0, 0.0);
    let mut acc = ZERO;
    for (k, s) in samples.iter().enumerate() {
        let z = Complex64::from_polar(1.0, node_angle(k, n));
        let weight = dw / a.cpow(one - z * wz.conj());
        let im = (wz * z.conj()).im / (z - wz).norm_sqr();
        acc += weight * im * s;
    }
    let v = acc * (TAU / n as f64) / PI;
    if !(v.re.is_finite() && v.im.is_finite()) {
        return Err(DiskError::NonFinite("S-operator"));
    }
    Ok(v)
}
