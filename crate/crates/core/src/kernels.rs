//! Pointwise kernels: the radial profile `h`, the pseudo-hyperbolic distance,
//! the disk automorphism, the alpha-Poisson kernel and its conjugate boundary
//! kernel, the Green function and the two Green-derivative majorants.

use std::f64::consts::{LN_2, TAU};

use num_complex::Complex64;

use crate::domain::{AlphaWeight, BoundaryAngle, DiskPoint};
use crate::error::{DiskError, Result};
use crate::gauss::adaptive_gk;

/// Separation below which the Green function is treated as singular.
pub const SINGULAR_SEPARATION: f64 = 1e-14;

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Constant of the first Green-derivative majorant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenEvalConfig {
    c_alpha: f64,
}

impl Default for GreenEvalConfig {
    fn default() -> Self {
        Self { c_alpha: 1.0 }
    }
}

impl GreenEvalConfig {
    pub fn new(c_alpha: f64) -> Result<Self> {
        if !(c_alpha > 0.0 && c_alpha.is_finite()) {
            return Err(DiskError::Domain(format!(
                "C_alpha must be a positive finite constant, got {c_alpha}"
            )));
        }
        Ok(Self { c_alpha })
    }

    pub fn c_alpha(&self) -> f64 {
        self.c_alpha
    }
}

/// `q(z, w) = |z - w| / |1 - conj(w) z|`.
pub fn pseudo_hyperbolic(z: DiskPoint, w: DiskPoint) -> f64 {
    let (z, w) = (z.z(), w.z());
    (z - w).norm() / (ONE - w.conj() * z).norm()
}

/// `1 - q(z, w)^2`, evaluated without cancellation near the rim.
pub fn pseudo_hyperbolic_gap(z: DiskPoint, w: DiskPoint) -> f64 {
    z.gap() * w.gap() / (ONE - w.z().conj() * z.z()).norm_sqr()
}

/// The involutive disk automorphism `phi_w(z) = (w - z) / (1 - conj(w) z)`.
pub fn mobius(w: DiskPoint, z: DiskPoint) -> DiskPoint {
    let (wz, zz) = (w.z(), z.z());
    let zeta = (wz - zz) / (ONE - wz.conj() * zz);
    let n = zeta.norm_sqr();
    if n < 1.0 {
        DiskPoint::new_unchecked(zeta)
    } else {
        // rounding pushed an image of a near-rim point onto the circle
        DiskPoint::new_unchecked(zeta * ((1.0 - f64::EPSILON) / n.sqrt()))
    }
}

/// `sum_{k >= 0} x^{k+s} / (k+s)` for `0 <= x <= 1/2`, `s > 0`.
fn power_log_series(x: f64, s: f64, xs: f64) -> f64 {
    let mut p = xs;
    let mut sum = 0.0;
    let mut k = 0.0;
    loop {
        let term = p / (k + s);
        sum += term;
        if term <= 1e-17 * sum || p == 0.0 {
            return sum;
        }
        p *= x;
        k += 1.0;
    }
}

/// `R(x) = int_0^x (t^alpha - 1) / (1 - t) dt` for `1/2 <= x < 1`.
fn log_split_remainder(x: f64, a: AlphaWeight) -> f64 {
    if let Some(k) = a.as_integer() {
        let mut p = 1.0;
        let mut sum = 0.0;
        for j in 1..=k {
            p *= x;
            sum += p / j as f64;
        }
        return -sum;
    }
    let alpha = a.value();
    let head = power_log_series(0.5, alpha + 1.0, 0.5f64.powf(alpha + 1.0)) - LN_2;
    let integrand = |t: f64| (alpha * (t - 1.0).ln_1p()).exp_m1() / (1.0 - t);
    // analytic on [1/2, 1]: a single panel normally suffices
    let tail = adaptive_gk(integrand, 0.5, x, 1e-15, 64)
        .expect("bounded analytic integrand on [1/2, x] converges");
    head + tail
}

/// `h` evaluated from `r` together with `x = 1 - r^2` (kept separately so
/// callers can supply a cancellation-free gap).
pub(crate) fn h_from_parts(r: f64, x: f64, a: AlphaWeight) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x <= 0.5 {
        let s = a.value() + 1.0;
        let xs = match a.as_integer() {
            Some(k) => x.powi(k + 1),
            None => x.powf(s),
        };
        0.5 * power_log_series(x, s, xs)
    } else {
        -r.ln() + 0.5 * log_split_remainder(x, a)
    }
}

/// `h(r) = (1/2) int_0^{1 - r^2} t^alpha / (1 - t) dt` for `r in (0, 1]`.
///
/// Near `r = 1` the integral is summed as a power series in `1 - r^2`; away
/// from it the logarithm `-log r` is split off and only the bounded remainder
/// `(t^alpha - 1) / (1 - t)` is integrated.
pub fn h_alpha(r: f64, a: AlphaWeight) -> Result<f64> {
    if !(r > 0.0 && r <= 1.0) {
        return Err(DiskError::Domain(format!(
            "h(r) is defined for r in (0, 1], got {r}"
        )));
    }
    Ok(h_from_parts(r, (1.0 - r) * (1.0 + r), a))
}

/// `P_alpha(z) = (1 - |z|^2)^{alpha+1} / ((1 - z)(1 - conj z)^{alpha+1})`.
pub fn poisson_kernel_alpha(z: DiskPoint, a: AlphaWeight) -> Complex64 {
    let zz = z.z();
    let d = z.gap();
    let num = d * a.rpow(d);
    let den = (ONE - zz) * (ONE - zz.conj()) * a.cpow(ONE - zz.conj());
    num / den
}

/// Wirtinger derivative `d/dzeta` of `P_alpha` at `zeta`.
pub fn poisson_kernel_alpha_dz(zeta: DiskPoint, a: AlphaWeight) -> Complex64 {
    let z = zeta.z();
    let d = zeta.gap();
    let alpha = a.value();
    let one_minus = ONE - z;
    let front = a.rpow(d) / ((ONE - z.conj()) * a.cpow(ONE - z.conj()) * one_minus);
    front * (-(alpha + 1.0) * z.conj() + d / one_minus)
}

/// Kernel of the boundary integral for `v`:
/// `(1 - |w|^2)^{alpha+1} / ((1 - z conj w)(1 - conj z w)^{alpha+1})` with `z = e^{i theta}`.
pub fn v_kernel(w: DiskPoint, theta: BoundaryAngle, a: AlphaWeight) -> Complex64 {
    v_kernel_at(w, theta.point(), a)
}

#[inline]
pub(crate) fn v_kernel_at(w: DiskPoint, zeta: Complex64, a: AlphaWeight) -> Complex64 {
    let wz = w.z();
    let d = w.gap();
    let base = ONE - zeta.conj() * wz;
    d * a.rpow(d) / ((ONE - zeta * wz.conj()) * base * a.cpow(base))
}

fn check_separation(z: DiskPoint, w: DiskPoint) -> Result<f64> {
    let sep = (z.z() - w.z()).norm();
    if sep < SINGULAR_SEPARATION {
        return Err(DiskError::Singularity {
            separation: sep,
            threshold: SINGULAR_SEPARATION,
        });
    }
    Ok(sep)
}

/// Green function value without the diagonal check.
#[inline]
pub(crate) fn green_unchecked(z: DiskPoint, w: DiskPoint, a: AlphaWeight) -> Complex64 {
    let (zz, wz) = (z.z(), w.z());
    let denom = ONE - wz.conj() * zz;
    let q = (zz - wz).norm() / denom.norm();
    let x = z.gap() * w.gap() / denom.norm_sqr();
    let h = h_from_parts(q, x, a);
    a.cpow(ONE - zz.conj() * wz) * (h / TAU)
}

/// `G_alpha(z, w) = (1 - conj(z) w)^alpha h(q(z, w)) / (2 pi)` (principal branch).
pub fn green_alpha(z: DiskPoint, w: DiskPoint, a: AlphaWeight) -> Result<Complex64> {
    check_separation(z, w)?;
    Ok(green_unchecked(z, w, a))
}

fn dwbar_rhs(z: DiskPoint, w: DiskPoint, a: AlphaWeight, sep: f64) -> f64 {
    let m = (ONE - z.z() * w.z().conj()).norm();
    let zd = z.gap();
    let wd = w.gap();
    zd * a.rpow(zd) * a.rpow(wd) / (2.0 * m * a.rpow(m) * sep)
}

/// Right-hand side of the `d/dw` majorant divided by `2 pi`.
pub fn green_dw_bound(
    z: DiskPoint,
    w: DiskPoint,
    a: AlphaWeight,
    cfg: GreenEvalConfig,
) -> Result<f64> {
    if a.value() < 0.0 {
        return Err(DiskError::Domain(format!(
            "the d/dw majorant needs alpha >= 0, got {a}"
        )));
    }
    let sep = check_separation(z, w)?;
    let alpha = a.value();
    let first = if alpha == 0.0 {
        0.0
    } else {
        let m = (ONE - z.z().conj() * w.z()).norm();
        let x = pseudo_hyperbolic_gap(z, w);
        let q = pseudo_hyperbolic(z, w);
        alpha * cfg.c_alpha * m.powf(alpha - 1.0) * x * a.rpow(x) * (1.0 - 2.0 * q.ln())
    };
    Ok((first + dwbar_rhs(z, w, a, sep)) / TAU)
}

/// Right-hand side of the `d/d(conj w)` majorant divided by `2 pi`.
pub fn green_dwbar_bound(z: DiskPoint, w: DiskPoint, a: AlphaWeight) -> Result<f64> {
    let sep = check_separation(z, w)?;
    Ok(dwbar_rhs(z, w, a, sep) / TAU)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::validate_alpha;
    use proptest::prelude::*;

    fn p(re: f64, im: f64) -> DiskPoint {
        DiskPoint::new(re, im).unwrap()
    }

    fn alpha(x: f64) -> AlphaWeight {
        validate_alpha(x).unwrap()
    }

    /// Brute-force oracle: composite Simpson after `t = x u^m`, which flattens
    /// `t^alpha` at the origin.
    fn h_oracle(r: f64, a: f64) -> f64 {
        let x = 1.0 - r * r;
        let n = 200_000;
        let f = |t: f64| t.powf(a) / (1.0 - t);
        let m = 4.0 / (a + 1.0);
        let g = |u: f64| {
            if u == 0.0 {
                return 0.0;
            }
            let t = x * u.powf(m);
            f(t) * x * m * u.powf(m - 1.0)
        };
        let hstep = 1.0 / n as f64;
        let mut s = g(0.0) + g(1.0);
        for i in 1..n {
            let u = i as f64 * hstep;
            s += if i % 2 == 1 { 4.0 } else { 2.0 } * g(u);
        }
        0.5 * s * hstep / 3.0
    }

    #[test]
    fn q_examples() {
        let a = p(0.3, 0.1);
        assert_eq!(pseudo_hyperbolic(a, a), 0.0);
        assert!((pseudo_hyperbolic(DiskPoint::ORIGIN, p(0.7, 0.0)) - 0.7).abs() < 1e-15);
        assert!((pseudo_hyperbolic(p(0.5, 0.0), p(-0.5, 0.0)) - 0.8).abs() < 1e-15);
    }

    #[test]
    fn mobius_examples() {
        let w = p(0.5, 0.0);
        assert!(mobius(w, w).z().norm() < 1e-16);
        assert_eq!(mobius(w, DiskPoint::ORIGIN), w);
        let z = mobius(w, p(0.2, 0.0));
        assert!((z.re() - 1.0 / 3.0).abs() < 1e-15 && z.im() == 0.0);
    }

    #[test]
    fn h_examples() {
        for a in [-0.5, 0.0, 0.5, 1.0, 3.0] {
            assert_eq!(h_alpha(1.0, alpha(a)).unwrap(), 0.0);
        }
        assert!((h_alpha(0.5, alpha(0.0)).unwrap() - 2f64.ln()).abs() < 1e-15);
        let expected = 0.5 * (-0.75 - 0.25f64.ln());
        assert!((h_alpha(0.5, alpha(1.0)).unwrap() - expected).abs() < 1e-15);
        assert!((expected - 0.318_147_2).abs() < 1e-7);
        assert!(matches!(h_alpha(0.0, alpha(1.0)), Err(DiskError::Domain(_))));
        assert!(h_alpha(1.1, alpha(1.0)).is_err());
    }

    #[test]
    fn h_matches_brute_force_oracle() {
        for a in [-0.6, -0.2, 0.3, 0.5, 1.5, 2.7] {
            for r in [0.05, 0.3, 0.6, 0.7, 0.8, 0.95, 0.999] {
                let got = h_alpha(r, alpha(a)).unwrap();
                let want = h_oracle(r, a);
                assert!(
                    (got - want).abs() <= 1e-9 * want.abs().max(1e-3),
                    "a={a} r={r}: {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn h_continuous_across_branch_switch() {
        let r = 0.5f64.sqrt();
        for a in [0.0, 0.5, 1.0, 2.5] {
            let lo = h_alpha(r - 1e-12, alpha(a)).unwrap();
            let hi = h_alpha(r + 1e-12, alpha(a)).unwrap();
            assert!((lo - hi).abs() < 1e-11, "alpha {a}: {lo} vs {hi}");
        }
    }

    #[test]
    fn h_decreasing_and_log_split_bounded() {
        for a in [0.0, 0.5, 2.0] {
            let aw = alpha(a);
            let mut prev = f64::INFINITY;
            for k in 1..=400 {
                let r = k as f64 / 400.0;
                let h = h_alpha(r, aw).unwrap();
                assert!(h < prev);
                prev = h;
            }
            // h(r) + log r tends to a constant as r -> 0
            let rem: Vec<f64> = [1e-8, 1e-6, 1e-4, 1e-2, 0.3]
                .iter()
                .map(|&r| h_alpha(r, aw).unwrap() + r.ln())
                .collect();
            let spread = rem.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
                - rem.iter().cloned().fold(f64::INFINITY, f64::min);
            assert!(spread < 1.0, "remainder spread {spread}");
        }
    }

    #[test]
    fn poisson_kernel_examples() {
        for a in [0.0, 0.5, 3.0] {
            let v = poisson_kernel_alpha(DiskPoint::ORIGIN, alpha(a));
            assert!((v - ONE).norm() < 1e-15);
        }
        let v = poisson_kernel_alpha(p(0.5, 0.0), alpha(0.0));
        assert!((v - Complex64::new(3.0, 0.0)).norm() < 1e-14);
        // independent arithmetic for alpha = 1, z = i/2
        let z = Complex64::new(0.0, 0.5);
        let expected = Complex64::new(0.5625, 0.0)
            / ((ONE - z) * (ONE + Complex64::new(0.0, 0.5)) * (ONE + Complex64::new(0.0, 0.5)));
        let v = poisson_kernel_alpha(p(0.0, 0.5), alpha(1.0));
        assert!((v - expected).norm() < 1e-14);
    }

    #[test]
    fn poisson_dz_matches_finite_differences() {
        let a = alpha(0.7);
        let z0 = p(0.3, -0.4);
        let h = 1e-5;
        let f = |dz: Complex64| poisson_kernel_alpha(DiskPoint::from_complex(z0.z() + dz).unwrap(), a);
        let ux = (f(Complex64::new(h, 0.0)) - f(Complex64::new(-h, 0.0))) / (2.0 * h);
        let uy = (f(Complex64::new(0.0, h)) - f(Complex64::new(0.0, -h))) / (2.0 * h);
        let fd = (ux - Complex64::i() * uy) * 0.5;
        assert!((fd - poisson_kernel_alpha_dz(z0, a)).norm() < 1e-8);
    }

    #[test]
    fn v_kernel_examples() {
        for t in [0.0, 1.0, 4.0] {
            let v = v_kernel(DiskPoint::ORIGIN, BoundaryAngle::new(t), alpha(1.3));
            assert!((v - ONE).norm() < 1e-15);
        }
        let v = v_kernel(p(0.5, 0.0), BoundaryAngle::new(0.0), alpha(1.0));
        assert!((v - Complex64::new(4.5, 0.0)).norm() < 1e-13);
        // alpha = 0 reduces to the classical kernel P(w e^{-i theta})
        let w = p(0.3, 0.55);
        for t in [0.2, 2.0, 5.5] {
            let zeta = DiskPoint::from_complex(w.z() * Complex64::from_polar(1.0, -t)).unwrap();
            let classical = poisson_kernel_alpha(zeta, alpha(0.0));
            let v = v_kernel(w, BoundaryAngle::new(t), alpha(0.0));
            assert!((v - classical).norm() < 1e-13);
        }
    }

    #[test]
    fn green_examples() {
        let a0 = alpha(0.0);
        let z = p(0.1, 0.6);
        let w = p(-0.3, 0.2);
        let g = green_alpha(z, w, a0).unwrap();
        let q = pseudo_hyperbolic(z, w);
        assert!((g.re - (1.0 / q).ln() / TAU).abs() < 1e-15 && g.im == 0.0);
        let same = p(0.5, 0.0);
        assert!(matches!(
            green_alpha(same, same, a0),
            Err(DiskError::Singularity { .. })
        ));
        let g1 = green_alpha(DiskPoint::ORIGIN, p(0.5, 0.0), alpha(1.0)).unwrap();
        assert!((g1.re - 0.318_147_2 / TAU).abs() < 1e-8);
        assert!((g1.re - 0.050_634_7).abs() < 1e-7);
    }

    #[test]
    fn green_vanishes_toward_rim() {
        let w = p(0.2, -0.1);
        let a = alpha(1.5);
        let mut prev = f64::INFINITY;
        for k in 1..8 {
            let r = 1.0 - 10f64.powi(-k);
            let g = green_alpha(p(0.0, r), w, a).unwrap().norm();
            assert!(g < prev);
            prev = g;
        }
        assert!(prev < 1e-12);
    }

    #[test]
    fn derivative_bound_examples() {
        let z = DiskPoint::ORIGIN;
        let w = p(0.5, 0.0);
        let cfg = GreenEvalConfig::default();
        // alpha = 0: only the second summand survives
        let z2 = p(0.2, 0.3);
        let a0 = alpha(0.0);
        let want = z2.gap()
            / (2.0 * TAU * (ONE - z2.z() * w.z().conj()).norm() * (z2.z() - w.z()).norm());
        assert!((green_dw_bound(z2, w, a0, cfg).unwrap() - want).abs() < 1e-15);
        // alpha = 1, C = 1: 0.75^2 (1 - log 0.25) + 0.75, over 2 pi
        let a1 = alpha(1.0);
        let want = (0.5625 * (1.0 - 0.25f64.ln()) + 0.75) / TAU;
        assert!((green_dw_bound(z, w, a1, cfg).unwrap() - want).abs() < 1e-14);
        let want = 0.75 / TAU;
        assert!((green_dwbar_bound(z, w, a1).unwrap() - want).abs() < 1e-15);
        assert!((want - 0.119_366_2).abs() < 1e-7);
        assert!(green_dwbar_bound(w, w, a1).is_err());
        assert!(green_dw_bound(z, w, alpha(-0.5), cfg).is_err());
        assert!(GreenEvalConfig::new(0.0).is_err());
    }

    #[test]
    fn majorants_vanish_near_rim() {
        let w = p(0.1, 0.1);
        let a = alpha(1.0);
        let cfg = GreenEvalConfig::default();
        let near = p(0.0, 0.999_999);
        assert!(green_dwbar_bound(near, w, a).unwrap() < 1e-10);
        let x = pseudo_hyperbolic_gap(near, w);
        assert!(x < 1e-5);
        assert!(green_dw_bound(near, w, a, cfg).unwrap() < 1e-8);
    }

    fn disk_point() -> impl Strategy<Value = DiskPoint> {
        (0.0f64..0.98, 0.0f64..TAU).prop_map(|(r, t)| DiskPoint::from_polar(r, t).unwrap())
    }

    proptest! {
        #[test]
        fn q_is_mobius_invariant(a in disk_point(), z in disk_point(), w in disk_point()) {
            let q0 = pseudo_hyperbolic(z, w);
            let q1 = pseudo_hyperbolic(mobius(a, z), mobius(a, w));
            prop_assert!((q0 - q1).abs() < 1e-9);
        }

        #[test]
        fn mobius_is_involution(w in disk_point(), z in disk_point()) {
            let back = mobius(w, mobius(w, z));
            prop_assert!((back.z() - z.z()).norm() < 1e-9);
        }

        #[test]
        fn change_of_variable_identities(w in disk_point(), zeta in disk_point()) {
            let (wz, zt) = (w.z(), zeta.z());
            let z = mobius(w, zeta);
            let zz = z.z();
            let den = ONE - wz.conj() * zt;
            prop_assert!((zz - (wz - zt) / den).norm() < 1e-9);
            let lhs = ONE - wz.conj() * zz;
            let rhs = w.gap() / den;
            prop_assert!((lhs - rhs).norm() <= 1e-9 * rhs.norm().max(1.0));
            prop_assert!((z.gap() - zeta.gap() * w.gap() / den.norm_sqr()).abs() < 1e-9);
            prop_assert!(den.norm() >= 1.0 - w.modulus() - 1e-15);
            prop_assert!(den.norm() >= 1.0 - zeta.modulus() - 1e-15);
        }

        #[test]
        fn jacobian_matches_numerical_derivative(w in disk_point(), zeta in (0.0f64..0.8, 0.0f64..TAU)) {
            let zeta = DiskPoint::from_polar(zeta.0, zeta.1).unwrap();
            let h = 1e-6;
            let map = |dx: f64, dy: f64| {
                mobius(w, DiskPoint::new(zeta.re() + dx, zeta.im() + dy).unwrap()).z()
            };
            let dx = (map(h, 0.0) - map(-h, 0.0)) / (2.0 * h);
            let dy = (map(0.0, h) - map(0.0, -h)) / (2.0 * h);
            let jac = dx.re * dy.im - dx.im * dy.re;
            let expected = w.gap().powi(2) / (ONE - w.z().conj() * zeta.z()).norm_sqr().powi(2);
            prop_assert!((jac.abs() - expected).abs() <= 1e-5 * expected.max(1.0));
        }

        #[test]
        fn green_zero_alpha_is_log(z in disk_point(), w in disk_point()) {
            let q = pseudo_hyperbolic(z, w);
            prop_assume!(q > 1e-6);
            let g = green_alpha(z, w, alpha(0.0)).unwrap();
            prop_assert!(g.im == 0.0);
            prop_assert!((g.re - (1.0 / q).ln() / TAU).abs() < 1e-12);
        }
    }
}
