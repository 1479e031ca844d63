//! Shared domain types: the weight parameter, points of the open unit disk,
//! periodic boundary signals, fields on the disk and quadrature resolution.

use std::f64::consts::TAU;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{DiskError, Result};

/// Default node count for boundary signals built from closed-form rules.
pub const DEFAULT_SIGNAL_NODES: usize = 256;

/// The weight parameter `alpha > -1` of `(1 - |z|^2)^{-alpha}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaWeight {
    alpha: f64,
    integer: Option<i32>,
}

impl AlphaWeight {
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= -1.0 {
            return Err(DiskError::Domain(format!(
                "alpha must be a finite real > -1, got {alpha}"
            )));
        }
        let integer = if alpha.fract() == 0.0 && alpha <= i32::MAX as f64 {
            Some(alpha as i32)
        } else {
            None
        };
        Ok(Self { alpha, integer })
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.alpha
    }

    /// True iff `alpha > 0`, the regime of the derivative bounds.
    #[inline]
    pub fn positive(&self) -> bool {
        self.alpha > 0.0
    }

    /// `Some(k)` when alpha is the non-negative integer `k`.
    #[inline]
    pub fn as_integer(&self) -> Option<i32> {
        self.integer
    }

    /// Principal-branch power `base^alpha`.
    #[inline]
    pub fn cpow(&self, base: Complex64) -> Complex64 {
        match self.integer {
            Some(0) => Complex64::new(1.0, 0.0),
            Some(1) => base,
            Some(k) => base.powi(k),
            None => base.powf(self.alpha),
        }
    }

    /// Real power `x^alpha` for `x > 0`.
    #[inline]
    pub fn rpow(&self, x: f64) -> f64 {
        match self.integer {
            Some(0) => 1.0,
            Some(1) => x,
            Some(k) => x.powi(k),
            None => x.powf(self.alpha),
        }
    }
}

impl fmt::Display for AlphaWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.alpha)
    }
}

/// Checks `x > -1` and wraps it.
pub fn validate_alpha(x: f64) -> Result<AlphaWeight> {
    AlphaWeight::new(x)
}

/// `rho_alpha(z) = (1 - |z|^2)^{-alpha}`.
pub fn weight_rho(z: DiskPoint, a: AlphaWeight) -> f64 {
    a.rpow(z.gap()).recip()
}

/// A point of the open unit disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint {
    re: f64,
    im: f64,
}

impl DiskPoint {
    pub const ORIGIN: DiskPoint = DiskPoint { re: 0.0, im: 0.0 };

    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !(re.is_finite() && im.is_finite()) {
            return Err(DiskError::Domain(format!("non-finite point ({re}, {im})")));
        }
        if re * re + im * im >= 1.0 {
            return Err(DiskError::Domain(format!(
                "point ({re}, {im}) is not inside the open unit disk"
            )));
        }
        Ok(Self { re, im })
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        Self::new(z.re, z.im)
    }

    pub fn from_polar(r: f64, theta: f64) -> Result<Self> {
        Self::from_complex(Complex64::from_polar(r, theta))
    }

    /// Callers guarantee `|z| < 1`.
    #[inline]
    pub(crate) fn new_unchecked(z: Complex64) -> Self {
        debug_assert!(z.norm_sqr() < 1.0, "point {z} outside the disk");
        Self { re: z.re, im: z.im }
    }

    #[inline]
    pub fn re(&self) -> f64 {
        self.re
    }

    #[inline]
    pub fn im(&self) -> f64 {
        self.im
    }

    #[inline]
    pub fn z(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    #[inline]
    pub fn modulus(&self) -> f64 {
        self.re.hypot(self.im)
    }

    #[inline]
    pub fn norm_sqr(&self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    /// `d(z) = 1 - |z|^2`.
    #[inline]
    pub fn gap(&self) -> f64 {
        1.0 - self.norm_sqr()
    }

    #[inline]
    pub fn conj(&self) -> Self {
        Self {
            re: self.re,
            im: -self.im,
        }
    }

    /// Rotation by `e^{i phi}`.
    pub fn rotate(&self, phi: f64) -> Self {
        Self::new_unchecked(self.z() * Complex64::from_polar(1.0, phi))
    }
}

impl fmt::Display for DiskPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.re, self.im)
    }
}

/// An angle on the unit circle, normalized to `[0, 2pi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryAngle(f64);

impl BoundaryAngle {
    pub fn new(theta: f64) -> Self {
        let t = theta.rem_euclid(TAU);
        // rem_euclid can round up to TAU itself
        Self(if t >= TAU { 0.0 } else { t })
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.0
    }

    /// `e^{i theta}`.
    #[inline]
    pub fn point(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.0)
    }
}

pub type SignalRule = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

/// A 2pi-periodic function given by uniform samples at `theta_k = 2 pi k / n`,
/// optionally backed by a closed-form rule.
#[derive(Clone)]
pub struct BoundarySignal {
    samples: Vec<Complex64>,
    rule: Option<SignalRule>,
}

impl fmt::Debug for BoundarySignal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoundarySignal")
            .field("n", &self.samples.len())
            .field("has_rule", &self.rule.is_some())
            .finish()
    }
}

fn check_node_count(n: usize) -> Result<()> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(DiskError::InvalidSignal(format!(
            "node count must be even and at least 4, got {n}"
        )));
    }
    Ok(())
}

impl BoundarySignal {
    pub fn from_samples(samples: Vec<Complex64>) -> Result<Self> {
        check_node_count(samples.len())?;
        if samples.iter().any(|s| !(s.re.is_finite() && s.im.is_finite())) {
            return Err(DiskError::NonFinite("boundary samples"));
        }
        Ok(Self {
            samples,
            rule: None,
        })
    }

    pub fn from_real_samples(samples: &[f64]) -> Result<Self> {
        Self::from_samples(samples.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Samples `rule` at `n` uniform nodes and keeps the rule for off-node evaluation.
    pub fn from_rule<F>(n: usize, rule: F) -> Result<Self>
    where
        F: Fn(f64) -> Complex64 + Send + Sync + 'static,
    {
        check_node_count(n)?;
        let samples: Vec<Complex64> = (0..n).map(|k| rule(node_angle(k, n))).collect();
        if samples.iter().any(|s| !(s.re.is_finite() && s.im.is_finite())) {
            return Err(DiskError::NonFinite("boundary rule"));
        }
        Ok(Self {
            samples,
            rule: Some(Arc::new(rule)),
        })
    }

    pub fn from_real_rule<F>(n: usize, rule: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::from_rule(n, move |t| Complex64::new(rule(t), 0.0))
    }

    /// Pairs explicit samples with a rule; they must agree at the nodes within `tol`.
    pub fn with_samples_and_rule(
        samples: Vec<Complex64>,
        rule: SignalRule,
        tol: f64,
    ) -> Result<Self> {
        let signal = Self::from_samples(samples)?;
        let n = signal.len();
        for (k, s) in signal.samples.iter().enumerate() {
            let d = (rule(node_angle(k, n)) - s).norm();
            if !(d <= tol) {
                return Err(DiskError::InvalidSignal(format!(
                    "sample {k} differs from the rule by {d:e} (tolerance {tol:e})"
                )));
            }
        }
        Ok(Self {
            rule: Some(rule),
            ..signal
        })
    }

    pub fn constant(n: usize, c: Complex64) -> Result<Self> {
        Self::from_rule(n, move |_| c)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    #[inline]
    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn rule(&self) -> Option<&SignalRule> {
        self.rule.as_ref()
    }

    #[inline]
    pub fn node(&self, k: usize) -> f64 {
        node_angle(k, self.len())
    }

    pub fn mean(&self) -> Complex64 {
        self.samples.iter().sum::<Complex64>() / self.len() as f64
    }

    /// Values at `m` uniform nodes: the rule when present, otherwise
    /// trigonometric interpolation of the samples.
    pub fn resample(&self, m: usize) -> Result<Vec<Complex64>> {
        check_node_count(m)?;
        if m == self.len() {
            return Ok(self.samples.clone());
        }
        match &self.rule {
            Some(rule) => Ok((0..m).map(|k| rule(node_angle(k, m))).collect()),
            None => Ok(crate::transforms::FourierSpectrum::of(self).resample(m)),
        }
    }

    /// Value at an arbitrary angle (rule, or trigonometric interpolation).
    pub fn eval(&self, theta: f64) -> Complex64 {
        match &self.rule {
            Some(rule) => rule(theta),
            None => crate::transforms::FourierSpectrum::of(self).eval(theta),
        }
    }
}

#[inline]
pub(crate) fn node_angle(k: usize, n: usize) -> f64 {
    TAU * k as f64 / n as f64
}

pub type FieldRule = Arc<dyn Fn(DiskPoint) -> Complex64 + Send + Sync>;
pub type CircleSampler = Arc<dyn Fn(f64, usize) -> Result<Vec<Complex64>> + Send + Sync>;

/// Samples of a field on a tensor polar grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarGrid {
    radii: Vec<f64>,
    n_theta: usize,
    /// Row-major: `values[i * n_theta + j]` sits at `radii[i] e^{2 pi i j / n_theta}`.
    values: Vec<Complex64>,
}

impl PolarGrid {
    pub fn new(radii: Vec<f64>, n_theta: usize, values: Vec<Complex64>) -> Result<Self> {
        if radii.is_empty() || n_theta == 0 {
            return Err(DiskError::InvalidField("empty polar grid".into()));
        }
        if radii.iter().any(|&r| !(0.0..1.0).contains(&r)) {
            return Err(DiskError::InvalidField("radii must lie in [0, 1)".into()));
        }
        if radii.windows(2).any(|w| w[0] >= w[1]) {
            return Err(DiskError::InvalidField(
                "radii must be strictly increasing".into(),
            ));
        }
        if values.len() != radii.len() * n_theta {
            return Err(DiskError::InvalidField(format!(
                "expected {} grid values, got {}",
                radii.len() * n_theta,
                values.len()
            )));
        }
        if values.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(DiskError::NonFinite("polar grid values"));
        }
        Ok(Self {
            radii,
            n_theta,
            values,
        })
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    fn at(&self, i: usize, j: usize) -> Complex64 {
        self.values[i * self.n_theta + (j % self.n_theta)]
    }

    /// Bilinear interpolation in `(r, theta)`, periodic in theta and clamped in r.
    pub fn interpolate(&self, z: DiskPoint) -> Complex64 {
        let r = z.modulus();
        let theta = BoundaryAngle::new(z.im().atan2(z.re())).value();
        let s = theta / TAU * self.n_theta as f64;
        let j0 = (s.floor() as usize) % self.n_theta;
        let ft = s - s.floor();

        let (i0, i1, fr) = if r <= self.radii[0] {
            (0, 0, 0.0)
        } else if r >= *self.radii.last().unwrap() {
            let last = self.radii.len() - 1;
            (last, last, 0.0)
        } else {
            let i1 = self.radii.partition_point(|&x| x <= r);
            let i0 = i1 - 1;
            (i0, i1, (r - self.radii[i0]) / (self.radii[i1] - self.radii[i0]))
        };
        let lerp = |i: usize| self.at(i, j0) * (1.0 - ft) + self.at(i, j0 + 1) * ft;
        lerp(i0) * (1.0 - fr) + lerp(i1) * fr
    }
}

#[derive(Clone)]
enum FieldSource {
    Rule(FieldRule),
    Grid(PolarGrid),
}

/// A complex function on the open disk with an optional growth envelope:
/// `|g(z)| (1 - |z|^2)^beta` is claimed bounded when `envelope_exponent = Some(beta)`.
#[derive(Clone)]
pub struct DiskField {
    source: FieldSource,
    circle: Option<CircleSampler>,
    envelope_exponent: Option<f64>,
}

impl fmt::Debug for DiskField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.source {
            FieldSource::Rule(_) => "rule",
            FieldSource::Grid(_) => "grid",
        };
        f.debug_struct("DiskField")
            .field("source", &kind)
            .field("circle_sampler", &self.circle.is_some())
            .field("envelope_exponent", &self.envelope_exponent)
            .finish()
    }
}

impl DiskField {
    pub fn from_rule<F>(rule: F) -> Self
    where
        F: Fn(DiskPoint) -> Complex64 + Send + Sync + 'static,
    {
        Self {
            source: FieldSource::Rule(Arc::new(rule)),
            circle: None,
            envelope_exponent: None,
        }
    }

    pub fn from_grid(grid: PolarGrid) -> Self {
        Self {
            source: FieldSource::Grid(grid),
            circle: None,
            envelope_exponent: None,
        }
    }

    pub fn zero() -> Self {
        Self::from_rule(|_| Complex64::new(0.0, 0.0)).with_envelope(0.0)
    }

    pub fn constant(c: Complex64) -> Self {
        Self::from_rule(move |_| c).with_envelope(0.0)
    }

    /// `(1 - |z|^2)^{-beta}`, declared with envelope exponent `beta`.
    pub fn envelope_power(beta: f64) -> Self {
        Self::from_rule(move |z| Complex64::new(z.gap().powf(-beta), 0.0)).with_envelope(beta)
    }

    pub fn with_envelope(mut self, beta: f64) -> Self {
        self.envelope_exponent = Some(beta);
        self
    }

    /// Attaches a fast sampler returning values at `r e^{2 pi i k / n}`, `k < n`.
    /// It must agree with the pointwise rule.
    pub fn with_circle_sampler(mut self, sampler: CircleSampler) -> Self {
        self.circle = Some(sampler);
        self
    }

    pub fn envelope_exponent(&self) -> Option<f64> {
        self.envelope_exponent
    }

    pub fn grid(&self) -> Option<&PolarGrid> {
        match &self.source {
            FieldSource::Grid(g) => Some(g),
            FieldSource::Rule(_) => None,
        }
    }

    #[inline]
    pub fn eval(&self, z: DiskPoint) -> Complex64 {
        match &self.source {
            FieldSource::Rule(f) => f(z),
            FieldSource::Grid(g) => g.interpolate(z),
        }
    }

    /// Values on the circle of radius `r` at `n` uniform angles.
    pub fn sample_circle(&self, r: f64, n: usize) -> Result<Vec<Complex64>> {
        if !(0.0..1.0).contains(&r) {
            return Err(DiskError::Domain(format!("radius {r} outside [0, 1)")));
        }
        if let Some(sampler) = &self.circle {
            let v = sampler(r, n)?;
            if v.len() != n {
                return Err(DiskError::InvalidField(format!(
                    "circle sampler returned {} values, expected {n}",
                    v.len()
                )));
            }
            return Ok(v);
        }
        Ok((0..n)
            .map(|k| self.eval(DiskPoint::new_unchecked(Complex64::from_polar(r, node_angle(k, n)))))
            .collect())
    }
}

/// Quadrature resolution and tolerances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub circle_nodes: usize,
    /// Gauss-Legendre nodes per radial segment.
    pub radial_nodes: usize,
    pub singular_ring_levels: usize,
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            circle_nodes: 256,
            radial_nodes: 16,
            singular_ring_levels: 8,
            abs_tol: 1e-8,
            rel_tol: 1e-6,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.circle_nodes < 4 || self.radial_nodes < 4 || self.singular_ring_levels < 4 {
            return Err(DiskError::InvalidSpec(format!(
                "node counts and ring levels must be >= 4: {self:?}"
            )));
        }
        if !self.circle_nodes.is_multiple_of(2) {
            return Err(DiskError::InvalidSpec(format!(
                "circle_nodes must be even, got {}",
                self.circle_nodes
            )));
        }
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(DiskError::InvalidSpec("tolerances must be positive".into()));
        }
        Ok(())
    }

    pub fn with_circle_nodes(mut self, n: usize) -> Self {
        self.circle_nodes = n;
        self
    }

    pub fn with_radial_nodes(mut self, n: usize) -> Self {
        self.radial_nodes = n;
        self
    }

    pub fn with_ring_levels(mut self, n: usize) -> Self {
        self.singular_ring_levels = n;
        self
    }

    pub fn with_tolerances(mut self, abs_tol: f64, rel_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self.rel_tol = rel_tol;
        self
    }

    /// Doubles circle and radial node counts.
    pub fn refined(&self) -> Self {
        Self {
            circle_nodes: self.circle_nodes * 2,
            radial_nodes: self.radial_nodes * 2,
            ..*self
        }
    }

    /// `max(abs_tol, rel_tol |value|)`.
    #[inline]
    pub fn allowed(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}
