//! Dirichlet problem `-Lbar_alpha u = g`, `u = f` on the circle, solved by the
//! representation `u = v + G_alpha[g]`, with finite-difference operators for
//! residual checks.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::domain::{node_angle, AlphaWeight, BoundarySignal, DiskField, DiskPoint, QuadratureSpec};
use crate::error::{DiskError, Result};
use crate::kernels::{green_unchecked, v_kernel_at};
use crate::quadrature::integrate_disk_recentered_estimate;
use crate::transforms::kernel_nodes;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Default finite-difference step before scaling to the distance from the rim.
pub const DEFAULT_STEP: f64 = 1e-2;

/// Growth of a field toward the rim, estimated on the probe grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthProbe {
    /// Fitted `beta` in `max_theta |g(r e^{i theta})| ~ (1 - r^2)^{-beta}`.
    pub exponent: f64,
    /// `max |g(z)| (1 - |z|^2)^{beta}` over the grid for the declared `beta`, if any.
    pub weighted_max: Option<f64>,
}

const PROBE_SIZE: usize = 64;

/// Samples `g` on a 64 x 64 polar grid with radii `1 - 2^{-(i+1)/4}` and fits
/// the growth exponent from the outer half of the radii.
pub fn probe_growth(g: &DiskField) -> Result<GrowthProbe> {
    let mut xs = Vec::with_capacity(PROBE_SIZE);
    let mut ys = Vec::with_capacity(PROBE_SIZE);
    let mut weighted: f64 = 0.0;
    for i in 0..PROBE_SIZE {
        let r = 1.0 - 2f64.powf(-((i + 1) as f64) / 4.0);
        let d = (1.0 - r) * (1.0 + r);
        let mut m: f64 = 0.0;
        for j in 0..PROBE_SIZE {
            let z = DiskPoint::new_unchecked(Complex64::from_polar(r, node_angle(j, PROBE_SIZE)));
            let v = g.eval(z).norm();
            if !v.is_finite() {
                return Err(DiskError::NonFinite("field probe"));
            }
            m = m.max(v);
        }
        if let Some(beta) = g.envelope_exponent() {
            weighted = weighted.max(m * d.powf(beta));
        }
        if i >= PROBE_SIZE / 2 {
            xs.push(-d.ln());
            ys.push(m.max(f64::MIN_POSITIVE).ln());
        }
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok(GrowthProbe {
        exponent: sxy / sxx,
        weighted_max: g.envelope_exponent().map(|_| weighted),
    })
}

// slack on fitted exponents; the fit sees lower-order terms at finite radii
const FIT_SLACK: f64 = 0.05;

/// Boundary data `f`, right-hand side `g` and quadrature settings.
#[derive(Debug, Clone)]
pub struct DirichletProblem {
    alpha: AlphaWeight,
    f: BoundarySignal,
    g: DiskField,
    spec: QuadratureSpec,
    probe: GrowthProbe,
}

impl DirichletProblem {
    /// Fails with [`DiskError::Integrability`] when the probed growth of `g`
    /// reaches `alpha + 2`, and with [`DiskError::InvalidField`] when a
    /// declared envelope is contradicted by the samples.
    pub fn new(alpha: AlphaWeight, f: BoundarySignal, g: DiskField, spec: QuadratureSpec) -> Result<Self> {
        spec.validate()?;
        let probe = probe_growth(&g)?;
        let limit = alpha.value() + 2.0;
        if probe.exponent >= limit {
            return Err(DiskError::Integrability {
                estimated: probe.exponent,
                limit,
            });
        }
        if let Some(beta) = g.envelope_exponent() {
            if beta >= limit {
                return Err(DiskError::Integrability {
                    estimated: beta,
                    limit,
                });
            }
            if probe.exponent > beta + FIT_SLACK {
                return Err(DiskError::InvalidField(format!(
                    "declared envelope exponent {beta} but samples grow like (1 - |z|^2)^-{:.3}",
                    probe.exponent
                )));
            }
        }
        Ok(Self {
            alpha,
            f,
            g,
            spec,
            probe,
        })
    }

    pub fn alpha(&self) -> AlphaWeight {
        self.alpha
    }

    pub fn f(&self) -> &BoundarySignal {
        &self.f
    }

    pub fn g(&self) -> &DiskField {
        &self.g
    }

    pub fn spec(&self) -> &QuadratureSpec {
        &self.spec
    }

    pub fn probe(&self) -> GrowthProbe {
        self.probe
    }
}

/// `v(w) = (1/2pi) int (1-|w|^2)^{alpha+1} / ((1 - z conj w)(1 - conj z w)^{alpha+1}) f(z) d theta`.
pub fn boundary_part(problem: &DirichletProblem, w: DiskPoint) -> Result<Complex64> {
    let n = kernel_nodes(w.modulus(), &problem.spec);
    let samples = problem.f.resample(n)?;
    let mut acc = ZERO;
    for (k, s) in samples.iter().enumerate() {
        let zeta = Complex64::from_polar(1.0, node_angle(k, n));
        acc += v_kernel_at(w, zeta, problem.alpha) * s;
    }
    let v = acc / n as f64;
    if !(v.re.is_finite() && v.im.is_finite()) {
        return Err(DiskError::NonFinite("boundary integral"));
    }
    Ok(v)
}

/// Green potential with its quadrature disagreement.
pub fn green_potential_estimate(problem: &DirichletProblem, w: DiskPoint) -> Result<(Complex64, f64)> {
    let a = problem.alpha;
    let g = &problem.g;
    // The kernel is taken with the evaluation point in the first slot, and the
    // factor 4 converts u_{z conj z} = Delta u / 4 into the area integral.
    let est = integrate_disk_recentered_estimate(|z| green_unchecked(w, z, a) * g.eval(z), w, &problem.spec)?;
    Ok((est.value * 4.0, est.error * 4.0))
}

/// `G_alpha[g](w)`, normalised so that `-Lbar_alpha G_alpha[g] = g` with zero boundary values.
pub fn green_potential(problem: &DirichletProblem, w: DiskPoint) -> Result<Complex64> {
    green_potential_estimate(problem, w).map(|(v, _)| v)
}

/// `u(w) = v(w) + G_alpha[g](w)`.
pub fn solution_at(problem: &DirichletProblem, w: DiskPoint) -> Result<Complex64> {
    Ok(boundary_part(problem, w)? + green_potential(problem, w)?)
}

/// Values at one evaluation point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointValues {
    pub u: Complex64,
    pub v: Complex64,
    pub potential: Complex64,
    /// Fine/coarse disagreement of the potential quadrature.
    pub quadrature_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointResult {
    pub w: DiskPoint,
    pub values: std::result::Result<PointValues, DiskError>,
}

/// Finite-difference residual `-Lbar_alpha u - g` at a probe point.
#[derive(Debug, Clone, PartialEq)]
pub struct Residual {
    pub z: DiskPoint,
    pub step: f64,
    pub value: std::result::Result<ResidualValue, DiskError>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualValue {
    /// `-Lbar_alpha u(z)` from the stencil.
    pub operator: Complex64,
    pub g: Complex64,
    /// `|operator - g| / max(|g|, 1)`.
    pub relative: f64,
}

/// Settings for the residual probes of [`solve_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    /// At most this many evaluation points inside `residual_radius` are probed.
    pub residual_probes: usize,
    pub residual_radius: f64,
    pub step: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            residual_probes: 8,
            residual_radius: 0.8,
            step: DEFAULT_STEP,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub points: Vec<PointResult>,
    pub residuals: Vec<Residual>,
}

impl SolveReport {
    /// Indices and errors of points that could not be evaluated.
    pub fn failures(&self) -> Vec<(usize, &DiskError)> {
        self.points
            .iter()
            .enumerate()
            .filter_map(|(i, p)| p.values.as_ref().err().map(|e| (i, e)))
            .collect()
    }

    pub fn all_ok(&self) -> bool {
        self.points.iter().all(|p| p.values.is_ok()) && self.residuals.iter().all(|r| r.value.is_ok())
    }

    /// Largest relative residual over successful probes.
    pub fn max_relative_residual(&self) -> Option<f64> {
        self.residuals
            .iter()
            .filter_map(|r| r.value.as_ref().ok().map(|v| v.relative))
            .reduce(f64::max)
    }

    pub fn mean_relative_residual(&self) -> Option<f64> {
        let vals: Vec<f64> = self
            .residuals
            .iter()
            .filter_map(|r| r.value.as_ref().ok().map(|v| v.relative))
            .collect();
        if vals.is_empty() {
            None
        } else {
            Some(vals.iter().sum::<f64>() / vals.len() as f64)
        }
    }

    pub fn max_quadrature_error(&self) -> f64 {
        self.points
            .iter()
            .filter_map(|p| p.values.as_ref().ok().map(|v| v.quadrature_error))
            .fold(0.0, f64::max)
    }
}

pub fn solve(problem: &DirichletProblem, eval_points: &[DiskPoint]) -> SolveReport {
    solve_with(problem, eval_points, &SolveOptions::default())
}

/// Evaluates `u` at every point (in parallel, reported in input order) and
/// probes the residual at up to `opts.residual_probes` interior points.
pub fn solve_with(problem: &DirichletProblem, eval_points: &[DiskPoint], opts: &SolveOptions) -> SolveReport {
    let points: Vec<PointResult> = eval_points
        .par_iter()
        .map(|&w| PointResult {
            w,
            values: point_values(problem, w),
        })
        .collect();
    let inner: Vec<DiskPoint> = eval_points
        .iter()
        .copied()
        .filter(|w| w.modulus() <= opts.residual_radius)
        .collect();
    let probes: Vec<DiskPoint> = if inner.len() <= opts.residual_probes {
        inner
    } else {
        (0..opts.residual_probes)
            .map(|k| inner[k * inner.len() / opts.residual_probes])
            .collect()
    };
    let residuals = probes
        .par_iter()
        .map(|&z| {
            let step = scaled_step(z, opts.step);
            Residual {
                z,
                step,
                value: residual_at(problem, z, step),
            }
        })
        .collect();
    SolveReport { points, residuals }
}

fn point_values(problem: &DirichletProblem, w: DiskPoint) -> Result<PointValues> {
    let v = boundary_part(problem, w)?;
    let (potential, quadrature_error) = green_potential_estimate(problem, w)?;
    Ok(PointValues {
        u: v + potential,
        v,
        potential,
        quadrature_error,
    })
}

/// `min(step, (1 - |z|)/8)`.
pub fn scaled_step(z: DiskPoint, step: f64) -> f64 {
    step.min((1.0 - z.modulus()) / 8.0)
}

fn residual_at(problem: &DirichletProblem, z: DiskPoint, step: f64) -> Result<ResidualValue> {
    let lbar = lbar_stencil(|p| solution_at(problem, p), z, problem.alpha, step)?;
    let operator = -lbar;
    let g = problem.g.eval(z);
    Ok(ResidualValue {
        operator,
        g,
        relative: (operator - g).norm() / g.norm().max(1.0),
    })
}

struct Stencil {
    dz: Complex64,
    dzbar: Complex64,
    dzzbar: Complex64,
}

fn stencil<F>(u: F, z: DiskPoint, step: f64) -> Result<Stencil>
where
    F: Fn(DiskPoint) -> Result<Complex64>,
{
    let limit = (1.0 - z.modulus()) / 4.0;
    if !(step > 0.0 && step < limit) {
        return Err(DiskError::Step { step, limit });
    }
    let at = |d: Complex64| u(DiskPoint::new_unchecked(z.z() + d));
    let i = Complex64::i();
    let e = at(Complex64::new(step, 0.0))?;
    let west = at(Complex64::new(-step, 0.0))?;
    let n = at(Complex64::new(0.0, step))?;
    let s = at(Complex64::new(0.0, -step))?;
    let c = u(z)?;
    let ux = (e - west) / (2.0 * step);
    let uy = (n - s) / (2.0 * step);
    let lap = (e + west + n + s - c * 4.0) / (step * step);
    Ok(Stencil {
        dz: (ux - i * uy) * 0.5,
        dzbar: (ux + i * uy) * 0.5,
        dzzbar: lap * 0.25,
    })
}

fn lbar_stencil<F>(u: F, z: DiskPoint, a: AlphaWeight, step: f64) -> Result<Complex64>
where
    F: Fn(DiskPoint) -> Result<Complex64>,
{
    let s = stencil(u, z, step)?;
    let d = z.gap();
    let w = 1.0 / a.rpow(d);
    Ok(z.z() * s.dz * (a.value() * w / d) + s.dzzbar * w)
}

fn l_stencil<F>(u: F, z: DiskPoint, a: AlphaWeight, step: f64) -> Result<Complex64>
where
    F: Fn(DiskPoint) -> Result<Complex64>,
{
    let s = stencil(u, z, step)?;
    let d = z.gap();
    let w = 1.0 / a.rpow(d);
    Ok(z.z().conj() * s.dzbar * (a.value() * w / d) + s.dzzbar * w)
}

/// `Lbar_alpha u = alpha (1-|z|^2)^{-alpha-1} z u_z + (1-|z|^2)^{-alpha} u_{conj z z}`
/// by central differences with spacing `step`.
pub fn apply_lbar_alpha(u: &DiskField, z: DiskPoint, a: AlphaWeight, step: f64) -> Result<Complex64> {
    lbar_stencil(|p| Ok(u.eval(p)), z, a, step)
}

/// `L_alpha u = alpha (1-|z|^2)^{-alpha-1} conj(z) u_{conj z} + (1-|z|^2)^{-alpha} u_{conj z z}`.
pub fn apply_l_alpha(u: &DiskField, z: DiskPoint, a: AlphaWeight, step: f64) -> Result<Complex64> {
    l_stencil(|p| Ok(u.eval(p)), z, a, step)
}
