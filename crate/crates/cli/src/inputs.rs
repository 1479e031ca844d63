//! Built-in signals and fields, and CSV readers for sampled ones.

use std::f64::consts::TAU;
use std::path::Path;

use alpha_disk::{BoundarySignal, DiskField, DiskPoint, PolarGrid};
use num_complex::Complex64;

use crate::CliError;

const NODE_TOL: f64 = 1e-9;

/// `zero`, `one`, `cos`, `sin`, `cosk:<k>`, `abs-sin`, or a CSV path with columns `theta,re,im`.
pub fn signal(spec: &str, n: usize) -> Result<BoundarySignal, CliError> {
    let built = match spec {
        "zero" => Some(BoundarySignal::constant(n, Complex64::new(0.0, 0.0))),
        "one" => Some(BoundarySignal::constant(n, Complex64::new(1.0, 0.0))),
        "cos" => Some(BoundarySignal::from_real_rule(n, f64::cos)),
        "sin" => Some(BoundarySignal::from_real_rule(n, f64::sin)),
        "abs-sin" => Some(BoundarySignal::from_real_rule(n, |t| t.sin().abs())),
        _ => None,
    };
    if let Some(s) = built {
        return s.map_err(|e| CliError::Usage(e.to_string()));
    }
    if let Some(k) = spec.strip_prefix("cosk:") {
        let k: f64 = k
            .parse()
            .map_err(|_| CliError::Usage(format!("bad wave number in '{spec}'")))?;
        return BoundarySignal::from_real_rule(n, move |t| (k * t).cos()).map_err(|e| CliError::Usage(e.to_string()));
    }
    if Path::new(spec).is_file() {
        return signal_from_csv(Path::new(spec));
    }
    Err(CliError::Usage(format!("unknown signal '{spec}' (not a built-in or a file)")))
}

/// `zero`, `one`, `manufactured1`, `envelope:<beta>`, or a CSV path with columns `r,theta,re,im`.
pub fn field(spec: &str, envelope: Option<f64>) -> Result<DiskField, CliError> {
    let built = match spec {
        "zero" => Some(DiskField::zero()),
        "one" => Some(DiskField::constant(Complex64::new(1.0, 0.0))),
        "manufactured1" => Some(DiskField::envelope_power(2.0)),
        _ => None,
    };
    let f = if let Some(f) = built {
        f
    } else if let Some(b) = spec.strip_prefix("envelope:") {
        let beta: f64 = b
            .parse()
            .map_err(|_| CliError::Usage(format!("bad exponent in '{spec}'")))?;
        DiskField::envelope_power(beta)
    } else if Path::new(spec).is_file() {
        field_from_csv(Path::new(spec))?
    } else {
        return Err(CliError::Usage(format!("unknown field '{spec}' (not a built-in or a file)")));
    };
    Ok(match envelope {
        Some(beta) => f.with_envelope(beta),
        None => f,
    })
}

fn records(path: &Path, columns: &[&str]) -> Result<Vec<Vec<f64>>, CliError> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let headers = reader
        .headers()
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
        .clone();
    let found: Vec<&str> = headers.iter().map(str::trim).collect();
    if found != columns {
        return Err(CliError::Usage(format!(
            "{}: expected header {}, found {}",
            path.display(),
            columns.join(","),
            found.join(",")
        )));
    }
    let mut out = Vec::new();
    for (line, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        let row = rec
            .iter()
            .map(|s| s.trim().parse::<f64>())
            .collect::<Result<Vec<f64>, _>>()
            .map_err(|_| CliError::Usage(format!("{}: non-numeric value on data row {}", path.display(), line + 1)))?;
        out.push(row);
    }
    Ok(out)
}

fn signal_from_csv(path: &Path) -> Result<BoundarySignal, CliError> {
    let rows = records(path, &["theta", "re", "im"])?;
    let n = rows.len();
    for (k, r) in rows.iter().enumerate() {
        let want = TAU * k as f64 / n as f64;
        if (r[0] - want).abs() > NODE_TOL {
            return Err(CliError::Usage(format!(
                "{}: row {} has theta {} but uniform nodes need {}",
                path.display(),
                k + 1,
                r[0],
                want
            )));
        }
    }
    BoundarySignal::from_samples(rows.iter().map(|r| Complex64::new(r[1], r[2])).collect())
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn field_from_csv(path: &Path) -> Result<DiskField, CliError> {
    let rows = records(path, &["r", "theta", "re", "im"])?;
    let mut radii: Vec<f64> = Vec::new();
    for r in &rows {
        if radii.last() != Some(&r[0]) {
            radii.push(r[0]);
        }
    }
    if radii.is_empty() || rows.len() % radii.len() != 0 {
        return Err(CliError::Usage(format!("{}: rows do not form a polar grid", path.display())));
    }
    let n_theta = rows.len() / radii.len();
    for (idx, r) in rows.iter().enumerate() {
        let (i, j) = (idx / n_theta, idx % n_theta);
        let want = TAU * j as f64 / n_theta as f64;
        if r[0] != radii[i] || (r[1] - want).abs() > NODE_TOL {
            return Err(CliError::Usage(format!(
                "{}: row {} is out of grid order (expected r = {}, theta = {want})",
                path.display(),
                idx + 1,
                radii[i]
            )));
        }
    }
    let values = rows.iter().map(|r| Complex64::new(r[2], r[3])).collect();
    let grid = PolarGrid::new(radii, n_theta, values).map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(DiskField::from_grid(grid))
}

/// Evaluation points from a CSV file with columns `re,im`.
pub fn points(path: &Path) -> Result<Vec<DiskPoint>, CliError> {
    records(path, &["re", "im"])?
        .iter()
        .map(|r| DiskPoint::new(r[0], r[1]).map_err(|e| CliError::Usage(e.to_string())))
        .collect()
}
