//! The verification sweeps behind `alpha-disk verify`.

use std::f64::consts::TAU;

use alpha_disk::estimates::{
    all_pairs, circle_power_closed_form_beta2, circle_power_sweep, compute_m1, grin_lip_sweep_detailed, lemma_sweep,
    lipschitz_quotient, m1_sweep, ray_samples, rim_grid, verify_green_derivative_bounds, Lemma,
};
use alpha_disk::kernels::GreenEvalConfig;
use alpha_disk::solver::{green_potential, DirichletProblem};
use alpha_disk::transforms::{conjugate_identity_check, hilbert_transform, FourierSpectrum, HilbertMethod};
use alpha_disk::{
    validate_alpha, AlphaWeight, BoundReport, BoundRow, BoundarySignal, DiskField, DiskPoint, QuadratureSpec,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::args::{Sweep, VerifyArgs};
use crate::{inputs, CliError};

pub const LEMMA_MODULI: [f64; 4] = [0.5, 0.9, 0.99, 0.999];
pub const LEMMA_CEILING: f64 = 2.0;
pub const CIRCLE_POWER_BETAS: [f64; 3] = [2.0, 3.0, 4.0];
pub const CIRCLE_POWER_CEILING: f64 = 10.0;
pub const CLOSED_FORM_TOL: f64 = 1e-8;
pub const GRIN_LIP_RADII: [f64; 3] = [0.5, 0.9, 0.99];
pub const LIPSCHITZ_RAYS: usize = 8;
pub const LIPSCHITZ_RADIUS: f64 = 0.99;
pub const LIPSCHITZ_DRIFT: f64 = 0.05;
pub const MULTIPLIER_TOL: f64 = 1e-10;
pub const PV_TOL: f64 = 1e-4;
pub const SPECTRAL_TOL: f64 = 1e-14;
pub const SIGNAL_NODES: usize = 256;

pub fn m1_radii() -> Vec<f64> {
    rim_grid(0.1, 0.999, 20)
}

pub fn circle_power_points() -> Vec<f64> {
    rim_grid(0.05, 0.999, 20)
}

pub fn run(args: &VerifyArgs, spec: &QuadratureSpec) -> Result<Vec<BoundReport>, CliError> {
    let alpha = || validate_alpha(args.alpha).map_err(|e| CliError::Usage(e.to_string()));
    match args.sweep {
        Sweep::M1 => Ok(vec![m1(spec)?]),
        Sweep::CirclePower => Ok(circle_power(spec)?),
        Sweep::I1 => Ok(vec![lemma_sweep(Lemma::I1, alpha()?, &LEMMA_MODULI, LEMMA_CEILING, spec)?]),
        Sweep::I2 => Ok(vec![lemma_sweep(Lemma::I2, alpha()?, &LEMMA_MODULI, LEMMA_CEILING, spec)?]),
        Sweep::GreenBounds => {
            let cfg = GreenEvalConfig::new(args.c_alpha).map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(green_bounds(alpha()?, cfg, args.pairs, args.seed)?)
        }
        Sweep::GrinLip => {
            let a = alpha()?;
            let g = match &args.g {
                Some(s) => inputs::field(s, None)?,
                None => DiskField::envelope_power(a.value()),
            };
            Ok(grin_lip(a, &g, args.lipschitz_points, spec)?)
        }
        Sweep::Hilbert => {
            if args.nodes < 8 || !args.nodes.is_multiple_of(2) {
                return Err(CliError::Usage(format!("--nodes must be even and >= 8, got {}", args.nodes)));
            }
            Ok(hilbert(args.nodes)?)
        }
        Sweep::ConjugateIdentity => {
            if !(args.radius > 0.0 && args.radius < 1.0) {
                return Err(CliError::Usage(format!("--radius must lie in (0, 1), got {}", args.radius)));
            }
            Ok(conjugate_identity(args.radius, spec)?)
        }
    }
}

/// `M_1(r) <= 4 pi` on the rim grid; the value at `r = 0.001` is reported as a diagnostic.
pub fn m1(spec: &QuadratureSpec) -> Result<BoundReport, alpha_disk::DiskError> {
    let near_origin = compute_m1(1e-3, spec)?;
    Ok(m1_sweep(&m1_radii(), spec)?
        .with_diagnostic("M1(0.001)", near_origin)
        .with_diagnostic("M1(0.001) - 2 pi", near_origin - TAU))
}

/// Ratio spread for each exponent plus the closed form at `beta = 2`.
pub fn circle_power(spec: &QuadratureSpec) -> Result<Vec<BoundReport>, alpha_disk::DiskError> {
    let points = circle_power_points();
    let mut reports = Vec::new();
    for beta in CIRCLE_POWER_BETAS {
        let report = circle_power_sweep(beta, &points, CIRCLE_POWER_CEILING, spec)?;
        if beta == 2.0 {
            let cells = points.iter().flat_map(|&r| points.iter().map(move |&rho| (r, rho)));
            let rows = cells
                .zip(&report.rows)
                .map(|((r, rho), row)| {
                    let exact = circle_power_closed_form_beta2(r, rho) * (1.0 - r * rho);
                    BoundRow::new(row.label.clone(), (row.lhs - exact).abs(), CLOSED_FORM_TOL)
                })
                .collect();
            reports.push(report);
            reports.push(BoundReport::new("circle power closed form beta=2", rows, 1.0));
        } else {
            reports.push(report);
        }
    }
    Ok(reports)
}

/// Admissible random pairs: `|w| <= 0.95`, `|z| < 0.99`, `|z - w| >= 0.02`.
pub fn green_pairs(count: usize, seed: u64) -> Vec<(DiskPoint, DiskPoint, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let w = DiskPoint::from_polar(0.95 * rng.gen::<f64>().sqrt(), TAU * rng.gen::<f64>());
        let z = DiskPoint::from_polar(0.99 * rng.gen::<f64>().sqrt(), TAU * rng.gen::<f64>());
        let (Ok(w), Ok(z)) = (w, z) else { continue };
        let sep = (z.z() - w.z()).norm();
        if sep < 0.02 {
            continue;
        }
        out.push((z, w, 1e-2 * sep.min(1.0 - w.modulus())));
    }
    out
}

pub fn green_bounds(
    a: AlphaWeight,
    cfg: GreenEvalConfig,
    count: usize,
    seed: u64,
) -> Result<Vec<BoundReport>, alpha_disk::DiskError> {
    let pairs = green_pairs(count, seed);
    let reports = pairs
        .par_iter()
        .map(|&(z, w, step)| verify_green_derivative_bounds(z, w, a, cfg, step))
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = Vec::new();
    for (idx, name) in ["dw", "dwbar"].iter().enumerate() {
        let rows: Vec<BoundRow> = reports
            .iter()
            .zip(&pairs)
            .map(|(rep, (z, w, _))| {
                let r = &rep.rows[idx];
                let label = format!("z=({:.6},{:.6}) w=({:.6},{:.6})", z.re(), z.im(), w.re(), w.im());
                BoundRow { label, ..r.clone() }
            })
            .collect();
        let ceiling = reports.first().map_or(1.0 + 1e-3, |r| r.ceiling);
        out.push(BoundReport::new(format!("Green {name} bound alpha={a}"), rows, ceiling));
    }
    Ok(out)
}

/// Circle derivative verdict, then the Lipschitz quotient under sample doubling.
pub fn grin_lip(
    a: AlphaWeight,
    g: &DiskField,
    lipschitz_points: usize,
    spec: &QuadratureSpec,
) -> Result<Vec<BoundReport>, alpha_disk::DiskError> {
    let (report, _) = grin_lip_sweep_detailed(a, g, &GRIN_LIP_RADII, spec)?;
    let mut out = vec![report];
    if lipschitz_points > 0 {
        let zero = BoundarySignal::constant(SIGNAL_NODES, Complex64::new(0.0, 0.0))?;
        let problem = DirichletProblem::new(a, zero, g.clone(), *spec)?;
        let field = |p: DiskPoint| green_potential(&problem, p);
        let coarse = all_pairs(&ray_samples(LIPSCHITZ_RAYS, lipschitz_points, LIPSCHITZ_RADIUS));
        let fine_points = ((lipschitz_points as f64) * 2f64.sqrt()).round() as usize;
        let fine = all_pairs(&ray_samples(LIPSCHITZ_RAYS, fine_points, LIPSCHITZ_RADIUS));
        let q1 = lipschitz_quotient(field, &coarse)?;
        let q2 = lipschitz_quotient(field, &fine)?;
        let drift = (q2 - q1).abs() / q1;
        out.push(
            BoundReport::new(
                "Lipschitz quotient under sample doubling",
                vec![BoundRow::new("relative drift", drift, LIPSCHITZ_DRIFT)],
                1.0,
            )
            .with_diagnostic(format!("quotient over {} pairs", coarse.len()), q1)
            .with_diagnostic(format!("quotient over {} pairs", fine.len()), q2),
        );
    }
    Ok(out)
}

fn max_diff(a: &BoundarySignal, b: &[Complex64]) -> f64 {
    a.samples()
        .iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Closed forms under both transform methods and `H o H = -(id - mean)` on spectra.
pub fn hilbert(n: usize) -> Result<Vec<BoundReport>, alpha_disk::DiskError> {
    type Case = (&'static str, BoundarySignal, fn(f64) -> f64);
    let cases: [Case; 3] = [
        ("H(cos) = sin", BoundarySignal::from_real_rule(n, f64::cos)?, f64::sin),
        ("H(sin) = -cos", BoundarySignal::from_real_rule(n, f64::sin)?, |t| -t.cos()),
        ("H(1) = 0", BoundarySignal::constant(n, Complex64::new(1.0, 0.0))?, |_| 0.0),
    ];
    let mut out = Vec::new();
    for (method, tol, name) in [
        (HilbertMethod::Multiplier, MULTIPLIER_TOL, "multiplier"),
        (HilbertMethod::Pv, PV_TOL, "principal value"),
    ] {
        let mut rows = Vec::new();
        for (label, psi, expect) in &cases {
            let h = hilbert_transform(psi, method)?;
            let want: Vec<Complex64> = (0..n).map(|k| Complex64::new(expect(psi.node(k)), 0.0)).collect();
            rows.push(BoundRow::new(*label, max_diff(&h, &want), tol));
        }
        out.push(BoundReport::new(format!("Hilbert {name} n={n}"), rows, 1.0));
    }
    let mixed = BoundarySignal::from_rule(n, |t| {
        Complex64::new(0.25 + t.cos() + 0.5 * (3.0 * t).sin(), (5.0 * t).cos() - 0.75)
    })?;
    let mut rows = Vec::new();
    for (label, psi) in [("cos", &cases[0].1), ("sin", &cases[1].1), ("mixed", &mixed)] {
        let spectrum = FourierSpectrum::of(psi);
        let twice = spectrum.hilbert().hilbert();
        let err = spectrum
            .coefficients()
            .iter()
            .filter(|&&(k, _)| k.unsigned_abs() as usize != n / 2)
            .map(|&(k, c)| {
                let want = if k == 0 { Complex64::new(0.0, 0.0) } else { -c };
                (twice.coefficient(k) - want).norm()
            })
            .fold(0.0, f64::max);
        rows.push(BoundRow::new(format!("H(H({label})) = -({label} - mean)"), err, SPECTRAL_TOL));
    }
    out.push(BoundReport::new("Hilbert involution on spectra", rows, 1.0));
    Ok(out)
}

pub fn conjugate_identity(r: f64, spec: &QuadratureSpec) -> Result<Vec<BoundReport>, alpha_disk::DiskError> {
    let cases = [
        ("cos", BoundarySignal::from_real_rule(SIGNAL_NODES, f64::cos)?),
        ("sin 3theta", BoundarySignal::from_real_rule(SIGNAL_NODES, |t| (3.0 * t).sin())?),
    ];
    cases
        .iter()
        .map(|(name, psi)| {
            let mut rep = conjugate_identity_check(psi, r, spec)?;
            rep.title = format!("conjugate identity psi={name} r={r}");
            Ok(rep)
        })
        .collect()
}
