use crate::error::{Result, RisError};
use crate::geometry::law_of_cosines_angle;

/// Relative slack on the triangle inequality before a distance triple is rejected.
const TRIANGLE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalOrientation {
    /// Angle `θ₀` at the panel between the directions to T and R.
    pub theta_0: f64,
    pub theta_t: f64,
    pub theta_r: f64,
    /// Pattern product at the specular orientation, `cos^k θ_t · cos^k θ_r`.
    pub f_star: f64,
}

fn check_triangle(d_ti: f64, d_ir: f64, d_tr: f64) -> Result<()> {
    let ok = [d_ti, d_ir, d_tr].iter().all(|d| *d > 0.0 && d.is_finite());
    let scale = d_ti.max(d_ir).max(d_tr);
    let slack = TRIANGLE_TOL * scale;
    if !ok || d_ti > d_ir + d_tr + slack || d_ir > d_ti + d_tr + slack || d_tr > d_ti + d_ir + slack {
        return Err(RisError::DegenerateTriangle { d_ti, d_ir, d_tr });
    }
    Ok(())
}

/// Pattern base `(d_TI² + d_IR² - d_TR²)/(4 d_TI d_IR) + 1/2`, which equals
/// `cos²(θ₀/2)`, clamped to `[0, 1]`.
fn pattern_base(d_ti: f64, d_ir: f64, d_tr: f64) -> f64 {
    ((d_ti * d_ti + d_ir * d_ir - d_tr * d_tr) / (4.0 * (d_ti * d_ir)) + 0.5).clamp(0.0, 1.0)
}

/// Specular orientation: incidence and departure elevations both `θ₀/2`.
pub fn optimal_orientation(d_ti: f64, d_ir: f64, d_tr: f64, k: f64) -> Result<OptimalOrientation> {
    check_triangle(d_ti, d_ir, d_tr)?;
    if !(k >= 0.0 && k.is_finite()) {
        return Err(RisError::InvalidParameter(format!("pattern exponent must be nonnegative, got {k}")));
    }
    let theta_0 = law_of_cosines_angle(d_ti, d_ir, d_tr);
    Ok(OptimalOrientation {
        theta_0,
        theta_t: theta_0 / 2.0,
        theta_r: theta_0 / 2.0,
        f_star: pattern_base(d_ti, d_ir, d_tr).powf(k),
    })
}

/// Position-only factor of the received power at the specular orientation,
/// `F* / (d_TI² d_IR²)`.
pub fn f_object(d_ti: f64, d_ir: f64, d_tr: f64, k: f64) -> Result<f64> {
    for d in [d_ti, d_ir] {
        if !(d > 0.0 && d.is_finite()) {
            return Err(RisError::Domain { value: d, domain: "(0, ∞)" });
        }
    }
    let product = d_ti * d_ir;
    Ok(pattern_base(d_ti, d_ir, d_tr).powf(k) / (product * product))
}

/// Which side of the triangle is held fixed in a quasi-convexity scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixedSide {
    /// Hold `d_TI`, vary `d_IR`.
    Ti,
    /// Hold `d_IR`, vary `d_TI`.
    Ir,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuasiconvexityReport {
    /// Scanned interval of the free distance (open geometric range, log-spaced).
    pub domain: (f64, f64),
    pub samples: usize,
    /// Interior samples strictly above both neighbors.
    pub interior_maxima: usize,
    /// Interior samples strictly below both neighbors.
    pub interior_minima: usize,
    /// Every step decreases strictly.
    pub strictly_decreasing: bool,
    /// No interior strict local maximum: a quasi-convex function on an interval
    /// peaks only at the ends.
    pub quasiconvex: bool,
}

/// Relative step below which neighboring samples count as equal.
const FLAT_TOL: f64 = 1e-12;

/// Scans `f_object` along the free distance over the range where the triangle
/// closes, `(|d_fixed - d_TR|, d_fixed + d_TR)`, at `samples` log-spaced points.
pub fn quasiconvexity_report(
    d_tr: f64,
    k: f64,
    d_fixed: f64,
    which: FixedSide,
    samples: usize,
) -> Result<QuasiconvexityReport> {
    if samples < 3 {
        return Err(RisError::InvalidParameter(format!("need at least 3 samples, got {samples}")));
    }
    if !(d_tr > 0.0 && d_fixed > 0.0) || d_fixed == d_tr {
        return Err(RisError::InvalidParameter(format!(
            "scan needs positive, unequal distances (d_TR = {d_tr}, fixed = {d_fixed})"
        )));
    }
    let span = d_fixed + d_tr;
    let lo = (d_fixed - d_tr).abs() * (1.0 + 1e-9);
    let hi = span * (1.0 - 1e-9);
    let (llo, lhi) = (lo.ln(), hi.ln());
    let values = (0..samples)
        .map(|i| {
            let x = (llo + (lhi - llo) * i as f64 / (samples - 1) as f64).exp();
            match which {
                FixedSide::Ti => f_object(d_fixed, x, d_tr, k),
                FixedSide::Ir => f_object(x, d_fixed, d_tr, k),
            }
        })
        .collect::<Result<Vec<_>>>()?;

    let above = |a: f64, b: f64| a > b * (1.0 + FLAT_TOL);
    let mut interior_maxima = 0;
    let mut interior_minima = 0;
    for w in values.windows(3) {
        if above(w[1], w[0]) && above(w[1], w[2]) {
            interior_maxima += 1;
        }
        if above(w[0], w[1]) && above(w[2], w[1]) {
            interior_minima += 1;
        }
    }
    let strictly_decreasing = values.windows(2).all(|w| w[1] < w[0]);
    Ok(QuasiconvexityReport {
        domain: (lo, hi),
        samples,
        interior_maxima,
        interior_minima,
        strictly_decreasing,
        quasiconvex: interior_maxima == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn zero_exponent_has_unit_pattern() {
        let o = optimal_orientation(3.0, 4.0, 6.0, 0.0).unwrap();
        assert_eq!(o.f_star, 1.0);
        assert!((f_object(3.0, 4.0, 6.0, 0.0).unwrap() - 1.0 / 144.0).abs() < 1e-18);
    }

    #[test]
    fn right_angle_gives_half_power_base() {
        for k in [1.0, 2.0, 3.5] {
            let o = optimal_orientation(3.0, 4.0, 5.0, k).unwrap();
            assert!((o.f_star - 0.5f64.powf(k)).abs() < 1e-15);
            assert!((o.theta_0 - PI / 2.0).abs() < 1e-12);
            assert_eq!(o.theta_t, o.theta_r);
        }
    }

    #[test]
    fn f_star_is_specular_pattern_product() {
        let o = optimal_orientation(7.0, 11.0, 9.0, 3.0).unwrap();
        let half = o.theta_0 / 2.0;
        assert!((o.f_star - (half.cos().powi(3) * half.cos().powi(3))).abs() < 1e-14);
    }

    #[test]
    fn grid_over_split_never_beats_specular() {
        let o = optimal_orientation(5.0, 8.0, 10.0, 2.0).unwrap();
        let mut best = (0.0, f64::NEG_INFINITY);
        for i in 0..=10_000 {
            let t = o.theta_0 * i as f64 / 10_000.0;
            let v = t.cos().powf(2.0) * (o.theta_0 - t).cos().powf(2.0);
            if v > best.1 {
                best = (t, v);
            }
        }
        assert!(best.1 <= o.f_star + 1e-12);
        assert!((best.0 - o.theta_0 / 2.0).abs() <= o.theta_0 / 10_000.0);
    }

    #[test]
    fn triangle_violation_rejected() {
        assert!(matches!(optimal_orientation(1.0, 1.0, 3.0, 1.0), Err(RisError::DegenerateTriangle { .. })));
        assert!(matches!(optimal_orientation(0.0, 1.0, 1.0, 1.0), Err(RisError::DegenerateTriangle { .. })));
        // a flat triangle is allowed
        assert!(optimal_orientation(1.0, 2.0, 3.0, 1.0).is_ok());
    }

    #[test]
    fn f_object_domain_and_symmetry() {
        assert!(matches!(f_object(0.0, 1.0, 1.0, 1.0), Err(RisError::Domain { .. })));
        assert!(matches!(f_object(1.0, -2.0, 1.0, 1.0), Err(RisError::Domain { .. })));
        let a = f_object(13.0, 29.0, 20.0, 3.0).unwrap();
        let b = f_object(29.0, 13.0, 20.0, 3.0).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn k_zero_scan_is_decreasing() {
        let r = quasiconvexity_report(200.0, 0.0, 50.0, FixedSide::Ti, 10_000).unwrap();
        assert!(r.strictly_decreasing);
        assert!(r.quasiconvex);
    }

    #[test]
    fn scans_have_no_interior_peak() {
        for k in [1.0, 3.0] {
            for which in [FixedSide::Ti, FixedSide::Ir] {
                let r = quasiconvexity_report(200.0, k, 400.0, which, 10_000).unwrap();
                assert_eq!(r.interior_maxima, 0, "k = {k}");
            }
        }
    }
}
