//! Records of numerically checked inequalities.

/// One checked sample: `lhs` against `rhs`, with `ratio = lhs / rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundRow {
    pub label: String,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
}

impl BoundRow {
    pub fn new(label: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        Self {
            label: label.into(),
            lhs,
            rhs,
            ratio: lhs / rhs,
        }
    }
}

/// A verified inequality over a sample set. `pass` holds iff every ratio is
/// finite and the largest one is at most `ceiling`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub title: String,
    pub rows: Vec<BoundRow>,
    pub ceiling: f64,
    pub max_ratio: f64,
    pub pass: bool,
    /// Free-form numeric diagnostics (largest quadrature disagreement, constants, ...).
    pub diagnostics: Vec<(String, f64)>,
}

impl BoundReport {
    pub fn new(title: impl Into<String>, rows: Vec<BoundRow>, ceiling: f64) -> Self {
        let all_finite = rows.iter().all(|r| r.ratio.is_finite());
        let max_ratio = rows
            .iter()
            .map(|r| r.ratio)
            .fold(f64::NEG_INFINITY, f64::max);
        let pass = all_finite && !rows.is_empty() && max_ratio <= ceiling;
        Self {
            title: title.into(),
            rows,
            ceiling,
            max_ratio,
            pass,
            diagnostics: Vec::new(),
        }
    }

    pub fn with_diagnostic(mut self, name: impl Into<String>, value: f64) -> Self {
        self.diagnostics.push((name.into(), value));
        self
    }

    pub fn min_ratio(&self) -> f64 {
        self.rows.iter().map(|r| r.ratio).fold(f64::INFINITY, f64::min)
    }

    /// Combines several reports; passes only if all of them pass.
    pub fn merge(title: impl Into<String>, parts: Vec<BoundReport>) -> Self {
        let pass = parts.iter().all(|p| p.pass);
        let mut rows = Vec::new();
        let mut diagnostics = Vec::new();
        for p in parts {
            // normalise each part to its own ceiling so a merged ceiling of 1 is meaningful
            for r in p.rows {
                rows.push(BoundRow {
                    label: format!("{}: {}", p.title, r.label),
                    lhs: r.lhs,
                    rhs: r.rhs,
                    ratio: r.ratio / p.ceiling,
                });
            }
            diagnostics.extend(p.diagnostics.into_iter().map(|(k, v)| (format!("{}: {k}", p.title), v)));
        }
        let mut merged = Self::new(title, rows, 1.0);
        merged.pass = pass && merged.pass;
        merged.diagnostics = diagnostics;
        merged
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_flag_tracks_ceiling() {
        let rows = vec![BoundRow::new("a", 1.0, 2.0), BoundRow::new("b", 3.0, 2.0)];
        let r = BoundReport::new("t", rows.clone(), 1.5);
        assert!(r.pass);
        assert_eq!(r.max_ratio, 1.5);
        assert!(!BoundReport::new("t", rows, 1.4).pass);
        let nan = vec![BoundRow::new("n", f64::NAN, 1.0)];
        assert!(!BoundReport::new("t", nan, 10.0).pass);
        assert!(!BoundReport::new("t", vec![], 10.0).pass);
    }

    #[test]
    fn merge_normalises_ratios() {
        let a = BoundReport::new("a", vec![BoundRow::new("x", 2.0, 1.0)], 4.0);
        let b = BoundReport::new("b", vec![BoundRow::new("y", 1.0, 1.0)], 0.5);
        let m = BoundReport::merge("m", vec![a, b]);
        assert!(!m.pass);
        assert_eq!(m.rows[0].ratio, 0.5);
        assert_eq!(m.rows[1].ratio, 2.0);
    }
}
