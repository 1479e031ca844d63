use std::f64::consts::TAU;

use alpha_disk::kernels::{green_alpha, h_alpha, poisson_kernel_alpha, pseudo_hyperbolic, v_kernel};
use alpha_disk::solver::{solve_with, DirichletProblem, SolveOptions, SolveReport};
use alpha_disk::{validate_alpha, AlphaWeight, BoundReport, BoundaryAngle, DiskPoint, QuadratureSpec};
use serde_json::{json, Value};

use crate::args::{Cli, Command, GridSize, KernelArgs, SolveArgs, VerifyArgs};
use crate::output::{emit, float_value, Cell, Table};
use crate::{inputs, quadrature_spec, CliError, EXIT_BOUND, EXIT_OK};

const DEFAULT_KERNEL_GRID: GridSize = GridSize { radial: 8, angular: 16 };

pub fn run(cli: &Cli) -> Result<i32, CliError> {
    let spec = quadrature_spec(&cli.common)?;
    match &cli.command {
        Command::Kernel(k) => kernel(cli, k, &spec),
        Command::Solve(s) => solve(cli, s, &spec),
        Command::Verify(v) => verify(cli, v, &spec),
    }
}

fn usage_alpha(alpha: f64) -> Result<AlphaWeight, CliError> {
    validate_alpha(alpha).map_err(|e| CliError::Usage(e.to_string()))
}

fn point(pair: &[f64], what: &str) -> Result<DiskPoint, CliError> {
    DiskPoint::new(pair[0], pair[1]).map_err(|e| CliError::Usage(format!("{what}: {e}")))
}

fn metadata(command: &str, alpha: f64, spec: &QuadratureSpec, extra: Value) -> Value {
    json!({
        "command": command,
        "alpha": float_value(alpha),
        "spec": {
            "circle_nodes": spec.circle_nodes,
            "radial_nodes": spec.radial_nodes,
            "singular_ring_levels": spec.singular_ring_levels,
            "abs_tol": float_value(spec.abs_tol),
            "rel_tol": float_value(spec.rel_tol),
        },
        "versions": {
            "alpha-disk": alpha_disk::VERSION,
            "alpha-disk-cli": env!("CARGO_PKG_VERSION"),
        },
        "parameters": extra,
    })
}

fn kernel(cli: &Cli, args: &KernelArgs, spec: &QuadratureSpec) -> Result<i32, CliError> {
    let a = usage_alpha(args.alpha)?;
    let partner = match &args.partner {
        Some(p) => point(p, "--partner")?,
        None => DiskPoint::ORIGIN,
    };
    let points = match (&args.point, args.grid) {
        (Some(p), _) => vec![point(p, "--point")?],
        (None, grid) => {
            let g = grid.unwrap_or(DEFAULT_KERNEL_GRID);
            let mut pts = Vec::with_capacity(g.radial * g.angular);
            for i in 0..g.radial {
                let r = (i + 1) as f64 / (g.radial + 1) as f64;
                for j in 0..g.angular {
                    pts.push(DiskPoint::from_polar(r, TAU * j as f64 / g.angular as f64)?);
                }
            }
            pts
        }
    };
    let theta = BoundaryAngle::new(args.theta);
    let mut table = Table::new(&[
        "z_re", "z_im", "partner_re", "partner_im", "theta", "q", "h", "p_re", "p_im", "v_re", "v_im", "g_re", "g_im",
    ]);
    for z in points {
        let q = pseudo_hyperbolic(z, partner);
        let h = h_alpha(q, a)?;
        let p = poisson_kernel_alpha(z, a);
        let v = v_kernel(z, theta, a);
        let g = green_alpha(z, partner, a)?;
        table.push(
            [z.re(), z.im(), partner.re(), partner.im(), theta.value(), q, h, p.re, p.im, v.re, v.im, g.re, g.im]
                .into_iter()
                .map(Cell::Num)
                .collect(),
        );
    }
    let meta = metadata(
        "kernel",
        args.alpha,
        spec,
        json!({ "partner": [float_value(partner.re()), float_value(partner.im())], "theta": float_value(theta.value()) }),
    );
    emit(&table, meta, cli.common.format, cli.common.output.as_deref())?;
    Ok(EXIT_OK)
}

fn solve_points(args: &SolveArgs) -> Result<Vec<DiskPoint>, CliError> {
    if let Some(path) = &args.points {
        return inputs::points(path);
    }
    if !(args.r_max > 0.0 && args.r_max < 1.0) {
        return Err(CliError::Usage(format!("--r-max must lie in (0, 1), got {}", args.r_max)));
    }
    let g = args.grid;
    let mut pts = Vec::with_capacity(g.radial * g.angular);
    for i in 0..g.radial {
        let r = args.r_max * (i + 1) as f64 / g.radial as f64;
        for j in 0..g.angular {
            pts.push(DiskPoint::from_polar(r, TAU * j as f64 / g.angular as f64)?);
        }
    }
    Ok(pts)
}

fn solve_table(report: &SolveReport) -> Table {
    let mut table = Table::new(&[
        "w_re",
        "w_im",
        "u_re",
        "u_im",
        "v_re",
        "v_im",
        "potential_re",
        "potential_im",
        "quad_error",
        "residual",
        "status",
    ]);
    for p in &report.points {
        let residual = report
            .residuals
            .iter()
            .find(|r| r.z == p.w)
            .and_then(|r| r.value.as_ref().ok())
            .map(|v| v.relative);
        let mut row = vec![Cell::Num(p.w.re()), Cell::Num(p.w.im())];
        match &p.values {
            Ok(v) => {
                for x in [v.u.re, v.u.im, v.v.re, v.v.im, v.potential.re, v.potential.im, v.quadrature_error] {
                    row.push(Cell::Num(x));
                }
                row.push(residual.into());
                row.push("ok".into());
            }
            Err(e) => {
                row.extend(std::iter::repeat_n(Cell::Empty, 8));
                row.push(Cell::Text(e.to_string()));
            }
        }
        table.push(row);
    }
    table
}

fn solve(cli: &Cli, args: &SolveArgs, spec: &QuadratureSpec) -> Result<i32, CliError> {
    let a = usage_alpha(args.alpha)?;
    if args.signal_nodes < 2 {
        return Err(CliError::Usage("--signal-nodes must be at least 2".into()));
    }
    let f = inputs::signal(&args.f, args.signal_nodes)?;
    let g = inputs::field(&args.g, args.g_envelope)?;
    let points = solve_points(args)?;
    let problem = DirichletProblem::new(a, f, g, *spec).map_err(|e| match e {
        alpha_disk::DiskError::Integrability { .. } | alpha_disk::DiskError::InvalidField(_) => {
            CliError::Usage(e.to_string())
        }
        other => CliError::Numerical(other),
    })?;
    let opts = SolveOptions {
        residual_probes: args.residual_probes,
        ..SolveOptions::default()
    };
    let report = solve_with(&problem, &points, &opts);
    let meta = metadata(
        "solve",
        args.alpha,
        spec,
        json!({
            "f": args.f,
            "g": args.g,
            "points": points.len(),
            "max_relative_residual": report.max_relative_residual().map(float_value),
        }),
    );
    emit(&solve_table(&report), meta, cli.common.format, cli.common.output.as_deref())?;
    let mut failures: Vec<String> = report
        .failures()
        .iter()
        .map(|(i, e)| format!("point {i} ({}, {}): {e}", points[*i].re(), points[*i].im()))
        .collect();
    failures.extend(
        report
            .residuals
            .iter()
            .filter_map(|r| r.value.as_ref().err().map(|e| format!("residual probe ({}, {}): {e}", r.z.re(), r.z.im()))),
    );
    if !failures.is_empty() {
        return Err(CliError::Failures(format!(
            "{} evaluation(s) failed\n{}",
            failures.len(),
            failures.join("\n")
        )));
    }
    Ok(EXIT_OK)
}

/// One row per bound, one per diagnostic and a summary row per report.
pub fn report_table(reports: &[BoundReport]) -> Table {
    let mut table = Table::new(&["report", "kind", "label", "lhs", "rhs", "ratio", "ceiling", "pass"]);
    for rep in reports {
        for r in &rep.rows {
            table.push(vec![
                rep.title.clone().into(),
                "bound".into(),
                r.label.clone().into(),
                Cell::Num(r.lhs),
                Cell::Num(r.rhs),
                Cell::Num(r.ratio),
                Cell::Num(rep.ceiling),
                (r.ratio.is_finite() && r.ratio <= rep.ceiling).into(),
            ]);
        }
        for (name, value) in &rep.diagnostics {
            table.push(vec![
                rep.title.clone().into(),
                "diagnostic".into(),
                name.clone().into(),
                Cell::Num(*value),
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
            ]);
        }
        table.push(vec![
            rep.title.clone().into(),
            "summary".into(),
            "max ratio".into(),
            Cell::Empty,
            Cell::Empty,
            Cell::Num(rep.max_ratio),
            Cell::Num(rep.ceiling),
            rep.pass.into(),
        ]);
    }
    table
}

fn verify(cli: &Cli, args: &VerifyArgs, spec: &QuadratureSpec) -> Result<i32, CliError> {
    let reports = crate::sweeps::run(args, spec)?;
    let sweep = clap::ValueEnum::to_possible_value(&args.sweep)
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    let meta = metadata(
        "verify",
        args.alpha,
        spec,
        json!({ "sweep": sweep, "pass": reports.iter().all(|r| r.pass) }),
    );
    emit(&report_table(&reports), meta, cli.common.format, cli.common.output.as_deref())?;
    let failed: Vec<&str> = reports.iter().filter(|r| !r.pass).map(|r| r.title.as_str()).collect();
    if failed.is_empty() {
        Ok(EXIT_OK)
    } else {
        eprintln!("alpha-disk: bound failed: {}", failed.join("; "));
        Ok(EXIT_BOUND)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alpha_disk::BoundRow;

    #[test]
    fn report_table_layout() {
        let rep = BoundReport::new("t", vec![BoundRow::new("a", 1.0, 2.0), BoundRow::new("b", 3.0, 1.0)], 2.0)
            .with_diagnostic("d", 7.0);
        let t = report_table(&[rep]);
        assert_eq!(t.rows.len(), 4);
        assert_eq!(t.rows[0][7], Cell::Bool(true));
        assert_eq!(t.rows[1][7], Cell::Bool(false));
        assert_eq!(t.rows[2][1], Cell::Text("diagnostic".into()));
        assert_eq!(t.rows[3][7], Cell::Bool(false));
    }
}
