//! Numerical checks of the integral estimates and derivative bounds behind
//! Lipschitz continuity of Green potentials.

use std::collections::HashMap;
use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::domain::{node_angle, AlphaWeight, BoundarySignal, DiskField, DiskPoint, QuadratureSpec};
use crate::error::{DiskError, Result};
use crate::kernels::{green_dw_bound, green_dwbar_bound, green_unchecked, GreenEvalConfig};
use crate::quadrature::{integrate_circle_adaptive, integrate_disk_adaptive, integrate_disk_recentered};
use crate::report::{BoundReport, BoundRow};
use crate::solver::{green_potential, probe_growth, DirichletProblem};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn check_unit_interval(name: &str, x: f64) -> Result<()> {
    if !(x > 0.0 && x < 1.0) {
        return Err(DiskError::Domain(format!("{name} = {x} outside (0, 1)")));
    }
    Ok(())
}

/// `int_0^{2pi} |1 - r rho e^{it}|^{-beta} dt`.
pub fn circle_power_integral(r: f64, rho: f64, beta: f64, spec: &QuadratureSpec) -> Result<f64> {
    check_unit_interval("r", r)?;
    check_unit_interval("rho", rho)?;
    if !(beta > 1.0) {
        return Err(DiskError::Domain(format!("exponent beta = {beta} must exceed 1")));
    }
    spec.validate()?;
    let s = r * rho;
    let n0 = spec
        .circle_nodes
        .max(((8.0 / (1.0 - s)).ceil() as usize).next_power_of_two());
    let v = integrate_circle_adaptive(
        |t| Complex64::new((ONE - Complex64::from_polar(s, t)).norm().powf(-beta), 0.0),
        n0,
        |v| spec.allowed(v),
    )?;
    Ok(v.re)
}

/// `circle_power_integral * (1 - r rho)^{beta - 1}`.
pub fn circle_power_ratio(r: f64, rho: f64, beta: f64, spec: &QuadratureSpec) -> Result<f64> {
    Ok(circle_power_integral(r, rho, beta, spec)? * (1.0 - r * rho).powf(beta - 1.0))
}

/// Ratio table over `points x points` grid values of `(r, rho)`; passes when
/// the largest ratio is at most `ceiling` times the smallest.
pub fn circle_power_sweep(beta: f64, points: &[f64], ceiling: f64, spec: &QuadratureSpec) -> Result<BoundReport> {
    let cells: Vec<(f64, f64)> = points
        .iter()
        .flat_map(|&r| points.iter().map(move |&rho| (r, rho)))
        .collect();
    let ratios = cells
        .par_iter()
        .map(|&(r, rho)| circle_power_ratio(r, rho, beta, spec))
        .collect::<Result<Vec<f64>>>()?;
    let min = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let rows = cells
        .iter()
        .zip(&ratios)
        .map(|(&(r, rho), &v)| BoundRow::new(format!("beta={beta} r={r:.6} rho={rho:.6}"), v, min))
        .collect();
    Ok(BoundReport::new(format!("circle power beta={beta}"), rows, ceiling).with_diagnostic("min ratio", min))
}

/// `M_1(r) = iint_D dA / |z - r|`.
pub fn compute_m1(r: f64, spec: &QuadratureSpec) -> Result<f64> {
    check_unit_interval("r", r)?;
    let w = DiskPoint::new(r, 0.0)?;
    let v = integrate_disk_recentered(|z| Complex64::new(1.0 / (z.z() - w.z()).norm(), 0.0), w, spec)?;
    Ok(v.re)
}

/// `M_1(r) <= 4 pi` over the given radii.
pub fn m1_sweep(radii: &[f64], spec: &QuadratureSpec) -> Result<BoundReport> {
    let values = radii
        .par_iter()
        .map(|&r| compute_m1(r, spec))
        .collect::<Result<Vec<f64>>>()?;
    let rows = radii
        .iter()
        .zip(&values)
        .map(|(&r, &v)| BoundRow::new(format!("r={r}"), v, 4.0 * PI))
        .collect();
    Ok(BoundReport::new("M1 <= 4 pi", rows, 1.0))
}

fn require_nonnegative(a: AlphaWeight) -> Result<()> {
    if a.value() < 0.0 {
        return Err(DiskError::Domain(format!("alpha = {a} must be nonnegative here")));
    }
    Ok(())
}

/// `I_1(w) = iint (1-|z|^2)^{alpha+1} (1-|w|^2)^alpha / (2 |1 - conj z w|^{alpha+1} |z - w|) dA(z)`.
pub fn compute_i1(w: DiskPoint, a: AlphaWeight, spec: &QuadratureSpec) -> Result<f64> {
    require_nonnegative(a)?;
    let dw = a.rpow(w.gap());
    let v = integrate_disk_recentered(
        |z| {
            let dz = z.gap();
            let m = (ONE - z.z().conj() * w.z()).norm();
            let val = dz * a.rpow(dz) * dw / (2.0 * m * a.rpow(m) * (z.z() - w.z()).norm());
            Complex64::new(val, 0.0)
        },
        w,
        spec,
    )?;
    Ok(v.re)
}

/// `I_2(w)` evaluated after the substitution `z = phi_w(zeta)`:
/// `iint (1-|w|^2)^{alpha+1} (1-|zeta|^2)^{alpha+1} |1 - conj w zeta|^{-(alpha+3)} (1 - log |zeta|^2) dA(zeta)`.
pub fn compute_i2(w: DiskPoint, a: AlphaWeight, spec: &QuadratureSpec) -> Result<f64> {
    if !a.positive() {
        return Err(DiskError::Domain(format!("alpha = {a} must be positive here")));
    }
    let alpha = a.value();
    let dw = w.gap();
    let front = dw * a.rpow(dw);
    let v = integrate_disk_adaptive(
        |zeta| {
            let dz = zeta.gap();
            let m = (ONE - w.z().conj() * zeta.z()).norm();
            let val = front * dz * a.rpow(dz) * m.powf(-(alpha + 3.0)) * (1.0 - zeta.norm_sqr().ln());
            Complex64::new(val, 0.0)
        },
        spec,
    )?;
    Ok(v.re)
}

/// Which area integral a lemma sweep evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lemma {
    I1,
    I2,
}

/// `I(w) / (1 - |w|^2)^alpha`.
pub fn lemma_ratio(lemma: Lemma, w: DiskPoint, a: AlphaWeight, spec: &QuadratureSpec) -> Result<f64> {
    let v = match lemma {
        Lemma::I1 => compute_i1(w, a, spec)?,
        Lemma::I2 => compute_i2(w, a, spec)?,
    };
    Ok(v / a.rpow(w.gap()))
}

/// Lemma ratios on real `w` at the given moduli. Each row compares the ratio
/// with the one at the first modulus; the sweep passes when none exceeds it by
/// more than `ceiling`. The spread (max/min) is recorded as a diagnostic.
pub fn lemma_sweep(
    lemma: Lemma,
    a: AlphaWeight,
    moduli: &[f64],
    ceiling: f64,
    spec: &QuadratureSpec,
) -> Result<BoundReport> {
    if moduli.is_empty() {
        return Err(DiskError::Domain("empty modulus list".into()));
    }
    let ratios = moduli
        .par_iter()
        .map(|&m| lemma_ratio(lemma, DiskPoint::new(m, 0.0)?, a, spec))
        .collect::<Result<Vec<f64>>>()?;
    let base = ratios[0];
    let max = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let rows = moduli
        .iter()
        .zip(&ratios)
        .map(|(&m, &v)| BoundRow::new(format!("|w|={m}"), v, base))
        .collect();
    let name = match lemma {
        Lemma::I1 => "I1",
        Lemma::I2 => "I2",
    };
    Ok(BoundReport::new(format!("{name} ratio alpha={a}"), rows, ceiling).with_diagnostic("max/min", max / min))
}

fn fd4<F: Fn(f64) -> Result<Complex64>>(f: F, h: f64) -> Result<Complex64> {
    Ok((-f(2.0 * h)? + f(h)? * 8.0 - f(-h)? * 8.0 + f(-2.0 * h)?) / (12.0 * h))
}

/// `(d/dw, d/dconj w)` of `u` at `w` by fourth-order central differences.
pub fn wirtinger_fd<F>(u: F, w: DiskPoint, h: f64) -> Result<(Complex64, Complex64)>
where
    F: Fn(DiskPoint) -> Result<Complex64>,
{
    let limit = (1.0 - w.modulus()) / 4.0;
    if !(h > 0.0 && h < limit) {
        return Err(DiskError::Step { step: h, limit });
    }
    let ux = fd4(|t| u(DiskPoint::new_unchecked(w.z() + t)), h)?;
    let uy = fd4(|t| u(DiskPoint::new_unchecked(w.z() + Complex64::new(0.0, t))), h)?;
    let i = Complex64::i();
    Ok(((ux - i * uy) * 0.5, (ux + i * uy) * 0.5))
}

/// Compares finite-difference `d/dw G_alpha(z, w)` and `d/dconj w G_alpha(z, w)`
/// with their majorants. Rows are labelled `dw` and `dwbar`; the ceiling is `1 + 1e-3`.
pub fn verify_green_derivative_bounds(
    z: DiskPoint,
    w: DiskPoint,
    a: AlphaWeight,
    cfg: GreenEvalConfig,
    step: f64,
) -> Result<BoundReport> {
    let sep = (z.z() - w.z()).norm();
    if !(sep > 10.0 * step) {
        return Err(DiskError::Step {
            step,
            limit: sep / 10.0,
        });
    }
    let (dw, dwbar) = wirtinger_fd(|p| Ok(green_unchecked(z, p, a)), w, step)?;
    let rows = vec![
        BoundRow::new("dw", dw.norm(), green_dw_bound(z, w, a, cfg)?),
        BoundRow::new("dwbar", dwbar.norm(), green_dwbar_bound(z, w, a)?),
    ];
    Ok(BoundReport::new("Green derivative bounds", rows, 1.0 + 1e-3))
}

fn key(p: DiskPoint) -> (u64, u64) {
    (p.re().to_bits(), p.im().to_bits())
}

/// `max |u(z1) - u(z2)| / |z1 - z2|` over the pairs; each distinct point is evaluated once.
pub fn lipschitz_quotient<F>(field: F, pairs: &[(DiskPoint, DiskPoint)]) -> Result<f64>
where
    F: Fn(DiskPoint) -> Result<Complex64> + Sync,
{
    let mut index: HashMap<(u64, u64), usize> = HashMap::new();
    let mut points = Vec::new();
    for (i, (p, q)) in pairs.iter().enumerate() {
        if p.z() == q.z() {
            return Err(DiskError::DegeneratePair(i));
        }
        for x in [p, q] {
            index.entry(key(*x)).or_insert_with(|| {
                points.push(*x);
                points.len() - 1
            });
        }
    }
    let values = points.par_iter().map(|&p| field(p)).collect::<Result<Vec<Complex64>>>()?;
    let mut best: f64 = 0.0;
    for (p, q) in pairs {
        let (a, b) = (values[index[&key(*p)]], values[index[&key(*q)]]);
        best = best.max((a - b).norm() / (p.z() - q.z()).norm());
    }
    Ok(best)
}

/// [`lipschitz_quotient`] for a [`DiskField`].
pub fn lipschitz_quotient_field(field: &DiskField, pairs: &[(DiskPoint, DiskPoint)]) -> Result<f64> {
    lipschitz_quotient(|p| Ok(field.eval(p)), pairs)
}

/// All pairs of a point set (`n (n - 1) / 2` of them).
pub fn all_pairs(points: &[DiskPoint]) -> Vec<(DiskPoint, DiskPoint)> {
    let mut out = Vec::with_capacity(points.len() * points.len().saturating_sub(1) / 2);
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            out.push((points[i], points[j]));
        }
    }
    out
}

/// `rays` rays of `per_ray` points with radii `r_max (1 - (1 - k/per_ray)^2)`,
/// `k = 1..=per_ray`, clustered toward the rim.
pub fn ray_samples(rays: usize, per_ray: usize, r_max: f64) -> Vec<DiskPoint> {
    let mut out = Vec::with_capacity(rays * per_ray);
    for j in 0..rays {
        let phi = node_angle(j, rays) + 0.1;
        for k in 1..=per_ray {
            let t = 1.0 - k as f64 / per_ray as f64;
            let r = r_max * (1.0 - t * t);
            out.push(DiskPoint::new_unchecked(Complex64::from_polar(r, phi)));
        }
    }
    out
}

/// Largest sampled `|d/dw G[g]|` and `|d/dconj w G[g]|` on one circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleDerivatives {
    pub r: f64,
    pub dw: f64,
    pub dwbar: f64,
}

/// Derivatives of `G_alpha[g]` on 8 points of each circle. Rows compare the
/// largest radius against the maximum over the intermediate radii; the sweep
/// passes when the ratio is at most 2.
pub fn grin_lip_sweep(a: AlphaWeight, g: &DiskField, radii: &[f64], spec: &QuadratureSpec) -> Result<BoundReport> {
    let (report, _) = grin_lip_sweep_detailed(a, g, radii, spec)?;
    Ok(report)
}

pub fn grin_lip_sweep_detailed(
    a: AlphaWeight,
    g: &DiskField,
    radii: &[f64],
    spec: &QuadratureSpec,
) -> Result<(BoundReport, Vec<CircleDerivatives>)> {
    if !a.positive() {
        return Err(DiskError::Domain(format!("alpha = {a} must be positive here")));
    }
    if radii.len() < 2 {
        return Err(DiskError::Domain("need at least two radii".into()));
    }
    for &r in radii {
        check_unit_interval("radius", r)?;
    }
    let probe = probe_growth(g)?;
    let declared = g.envelope_exponent().unwrap_or(probe.exponent);
    let estimated = probe.exponent.max(declared);
    if estimated > a.value() + 0.05 {
        return Err(DiskError::Envelope {
            estimated,
            alpha: a.value(),
        });
    }
    let zero = BoundarySignal::constant(crate::domain::DEFAULT_SIGNAL_NODES, Complex64::new(0.0, 0.0))?;
    let problem = DirichletProblem::new(a, zero, g.clone(), *spec)?;
    let samples: Vec<(usize, DiskPoint)> = radii
        .iter()
        .enumerate()
        .flat_map(|(i, &r)| (0..8).map(move |j| (i, DiskPoint::new_unchecked(Complex64::from_polar(r, node_angle(j, 8) + 0.3)))))
        .collect();
    let derivs = samples
        .par_iter()
        .map(|&(_, w)| wirtinger_fd(|p| green_potential(&problem, p), w, (1.0 - w.modulus()) / 16.0))
        .collect::<Result<Vec<_>>>()?;
    let mut circles: Vec<CircleDerivatives> = radii
        .iter()
        .map(|&r| CircleDerivatives {
            r,
            dw: 0.0,
            dwbar: 0.0,
        })
        .collect();
    for (&(i, _), (dw, dwbar)) in samples.iter().zip(&derivs) {
        circles[i].dw = circles[i].dw.max(dw.norm());
        circles[i].dwbar = circles[i].dwbar.max(dwbar.norm());
    }
    let last = circles[circles.len() - 1];
    let mid = if circles.len() > 2 {
        &circles[1..circles.len() - 1]
    } else {
        &circles[..1]
    };
    let mid_dw = mid.iter().map(|c| c.dw).fold(0.0, f64::max);
    let mid_dwbar = mid.iter().map(|c| c.dwbar).fold(0.0, f64::max);
    let row = |label: &str, lhs: f64, rhs: f64| BoundRow {
        label: label.into(),
        lhs,
        rhs,
        ratio: if lhs == 0.0 { 0.0 } else { lhs / rhs },
    };
    let rows = vec![row("dw", last.dw, mid_dw), row("dwbar", last.dwbar, mid_dwbar)];
    let mut report = BoundReport::new("Green potential derivatives", rows, 2.0).with_diagnostic("growth exponent", probe.exponent);
    for c in &circles {
        report = report
            .with_diagnostic(format!("max |dw| at r={}", c.r), c.dw)
            .with_diagnostic(format!("max |dwbar| at r={}", c.r), c.dwbar);
    }
    Ok((report, circles))
}

/// `n` radii from `first` to `last` with `1 - r` spaced geometrically.
pub fn rim_grid(first: f64, last: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![first];
    }
    let ratio = (1.0 - last) / (1.0 - first);
    (0..n)
        .map(|k| {
            if k == 0 {
                first
            } else if k == n - 1 {
                last
            } else {
                1.0 - (1.0 - first) * ratio.powf(k as f64 / (n - 1) as f64)
            }
        })
        .collect()
}

/// Closed form of the circle power integral at `beta = 2`.
pub fn circle_power_closed_form_beta2(r: f64, rho: f64) -> f64 {
    let s = r * rho;
    TAU / (1.0 - s * s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::adaptive_gk;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    fn alpha(x: f64) -> AlphaWeight {
        AlphaWeight::new(x).unwrap()
    }

    // complete elliptic integral of the second kind with modulus k, by the AGM
    fn elliptic_e(k: f64) -> f64 {
        let (mut a, mut b) = (1.0f64, (1.0 - k * k).sqrt());
        let mut c = k;
        let mut sum = 0.5 * c * c;
        let mut pow = 0.5;
        for _ in 0..40 {
            let an = 0.5 * (a + b);
            let bn = (a * b).sqrt();
            c = 0.5 * (a - b);
            pow *= 2.0;
            sum += pow * c * c;
            a = an;
            b = bn;
        }
        PI / (2.0 * a) * (1.0 - sum)
    }

    #[test]
    fn circle_power_examples() {
        let s = spec();
        let tiny = circle_power_ratio(1e-4, 1e-4, 3.0, &s).unwrap();
        assert!((tiny - TAU).abs() < 1e-6);
        for (r, rho) in [(0.3, 0.4), (0.9, 0.95), (0.999, 0.999)] {
            let v = circle_power_integral(r, rho, 2.0, &s).unwrap();
            let want = circle_power_closed_form_beta2(r, rho);
            assert!((v - want).abs() < 1e-8 * want, "{r} {rho}");
            let ratio = circle_power_ratio(r, rho, 2.0, &s).unwrap();
            assert!((ratio - TAU / (1.0 + r * rho)).abs() < 1e-8);
        }
        let hi = circle_power_ratio(0.99, 0.99, 4.0, &s).unwrap();
        let lo = circle_power_ratio(0.9, 0.9, 4.0, &s).unwrap();
        assert!(hi <= 2.0 * lo && lo <= 2.0 * hi);
        assert!(circle_power_integral(0.5, 0.5, 1.0, &s).is_err());
    }

    #[test]
    fn m1_examples() {
        let s = spec();
        assert!(compute_m1(0.001, &s).unwrap() < 4.0 * PI);
        for r in [0.001, 0.3, 0.5, 0.9, 0.99, 0.999] {
            let v = compute_m1(r, &s).unwrap();
            assert!((v - 4.0 * elliptic_e(r)).abs() < 1e-9, "{r}: {v}");
            assert!(v <= 4.0 * PI);
        }
    }

    #[test]
    fn rim_grid_endpoints() {
        let g = rim_grid(0.1, 0.999, 20);
        assert_eq!(g.len(), 20);
        assert_eq!((g[0], g[19]), (0.1, 0.999));
        assert!(g.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn elliptic_oracle_sane() {
        assert!((elliptic_e(0.0) - PI / 2.0).abs() < 1e-15);
        assert!((elliptic_e(0.5) - 1.467_462_209_339_427).abs() < 1e-13);
    }

    #[test]
    fn i1_closed_forms_at_origin() {
        let s = spec();
        let v = compute_i1(DiskPoint::ORIGIN, alpha(0.0), &s).unwrap();
        assert!((v - 2.0 * PI / 3.0).abs() < 1e-9);
        let v = compute_i1(DiskPoint::ORIGIN, alpha(1.0), &s).unwrap();
        assert!((v - 8.0 * PI / 15.0).abs() < 1e-9);
    }

    #[test]
    fn i2_at_origin_matches_radial_integral() {
        let s = spec();
        for al in [0.5, 1.0, 2.0] {
            let oracle = TAU
                * adaptive_gk(
                    |r: f64| r * (1.0 - r * r).powf(al + 1.0) * (1.0 - 2.0 * r.ln()),
                    0.0,
                    1.0,
                    1e-13,
                    2000,
                )
                .unwrap();
            let v = compute_i2(DiskPoint::ORIGIN, alpha(al), &s).unwrap();
            assert!((v - oracle).abs() < 1e-8 * oracle, "{al}: {v} vs {oracle}");
        }
    }

    #[test]
    fn lemma_integrals_rotation_invariant() {
        let s = spec();
        let a = alpha(1.0);
        let r = 0.7;
        let w = DiskPoint::from_polar(r, 2.1).unwrap();
        let real = DiskPoint::new(r, 0.0).unwrap();
        for (x, y) in [
            (compute_i1(w, a, &s).unwrap(), compute_i1(real, a, &s).unwrap()),
            (compute_i2(w, a, &s).unwrap(), compute_i2(real, a, &s).unwrap()),
        ] {
            assert!((x - y).abs() < 1e-6 * x.abs(), "{x} vs {y}");
        }
    }

    #[test]
    fn green_bounds_at_alpha_zero_match_closed_form() {
        let z = DiskPoint::new(0.1, -0.3).unwrap();
        let w = DiskPoint::new(0.4, 0.2).unwrap();
        let a = alpha(0.0);
        // d/dconj w of -(1/4pi) log(|z-w|^2/|1-conj w z|^2)
        let exact = -(1.0 / (2.0 * TAU))
            * ((w.z() - z.z()).conj().inv() + z.z() / (ONE - w.z().conj() * z.z()));
        let rep = verify_green_derivative_bounds(z, w, a, GreenEvalConfig::default(), 1e-4).unwrap();
        let dwbar = rep.rows.iter().find(|r| r.label == "dwbar").unwrap();
        assert!((dwbar.lhs - exact.norm()).abs() < 1e-9, "{} vs {}", dwbar.lhs, exact.norm());
        assert!(rep.pass, "{rep:?}");
    }

    #[test]
    fn green_bounds_near_rim() {
        let a = alpha(1.0);
        let z = DiskPoint::from_polar(0.99, 0.8).unwrap();
        let w = DiskPoint::new(0.1, 0.2).unwrap();
        let rep = verify_green_derivative_bounds(z, w, a, GreenEvalConfig::default(), 1e-4).unwrap();
        assert!(rep.pass);
        for row in &rep.rows {
            assert!(row.lhs < 1e-2 && row.lhs <= row.rhs);
        }
        assert!(matches!(
            verify_green_derivative_bounds(w, w, a, GreenEvalConfig::default(), 1e-4),
            Err(DiskError::Step { .. })
        ));
    }

    #[test]
    fn lipschitz_examples() {
        let pts = ray_samples(4, 10, 0.999);
        let pairs = all_pairs(&pts);
        assert_eq!(pairs.len(), 40 * 39 / 2);
        let id = DiskField::from_rule(|z| z.z());
        assert!((lipschitz_quotient_field(&id, &pairs).unwrap() - 1.0).abs() < 1e-12);
        let bump = DiskField::from_rule(|z| Complex64::new(z.gap(), 0.0));
        assert!(lipschitz_quotient_field(&bump, &pairs).unwrap() <= 2.0);
        let p = DiskPoint::new(0.1, 0.1).unwrap();
        assert!(matches!(
            lipschitz_quotient_field(&id, &[(p, DiskPoint::ORIGIN), (p, p)]),
            Err(DiskError::DegeneratePair(1))
        ));
    }

    #[test]
    fn grin_lip_gates_and_zero_field() {
        let s = spec();
        let a = alpha(1.0);
        let rep = grin_lip_sweep(a, &DiskField::zero(), &[0.5, 0.9], &s).unwrap();
        assert!(rep.pass && rep.max_ratio == 0.0);
        assert!(matches!(
            grin_lip_sweep(a, &DiskField::envelope_power(2.0), &[0.5, 0.9], &s),
            Err(DiskError::Envelope { .. })
        ));
        assert!(grin_lip_sweep(alpha(0.0), &DiskField::zero(), &[0.5, 0.9], &s).is_err());
    }
}
