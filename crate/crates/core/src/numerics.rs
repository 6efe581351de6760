//! Quadrature and null-space solvers used by the physics modules.
//!
//! Integration is globally adaptive Gauss-Kronrod (7/15 point pair): the
//! subinterval with the largest error estimate is bisected until the summed
//! estimate drops below the requested tolerance.

use nalgebra::{ComplexField, DMatrix, DVector};

use crate::error::{Error, Result};

/// Default absolute tolerance for quadratures.
pub const DEFAULT_QUAD_TOL: f64 = 1e-8;

const MAX_SUBDIVISIONS: usize = 4000;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Result of an adaptive quadrature: value plus error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
}

fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).abs();
    (value, error)
}

/// Adaptive integral of `f` over the finite interval `[a, b]` to absolute
/// tolerance `tol`.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> Result<Integral> {
    integrate_with_breaks(&mut f, &[a, b], tol)
}

/// Adaptive integral over `[points[0], points[last]]`, with the sorted
/// interior points used as initial subdivision boundaries (kinks, edges,
/// integrable singularities sitting on a node are never evaluated because
/// Kronrod nodes are interior).
pub fn integrate_with_breaks<F: FnMut(f64) -> f64>(
    f: &mut F,
    points: &[f64],
    tol: f64,
) -> Result<Integral> {
    if points.len() < 2 {
        return Ok(Integral { value: 0.0, error: 0.0 });
    }
    let mut pts: Vec<f64> = points.to_vec();
    pts.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    pts.dedup();
    if pts.iter().any(|p| !p.is_finite()) {
        return Err(Error::Domain("integration limits must be finite".into()));
    }

    // (a, b, value, error)
    let mut segments: Vec<(f64, f64, f64, f64)> = pts
        .windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| {
            let (v, e) = gk15(f, w[0], w[1]);
            (w[0], w[1], v, e)
        })
        .collect();

    let mut splits = 0;
    loop {
        let total: f64 = segments.iter().map(|s| s.2).sum();
        let err: f64 = segments.iter().map(|s| s.3).sum();
        if !total.is_finite() || !err.is_finite() {
            return Err(Error::Accuracy {
                what: "integrand produced non-finite values".into(),
                estimate: total,
                error: err,
            });
        }
        if err <= tol {
            return Ok(Integral { value: total, error: err });
        }
        if splits >= MAX_SUBDIVISIONS {
            return Err(Error::Accuracy {
                what: "adaptive quadrature did not converge".into(),
                estimate: total,
                error: err,
            });
        }
        let (worst, _) = segments
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.partial_cmp(&y.1 .3).unwrap_or(std::cmp::Ordering::Equal))
            .expect("at least one segment");
        let (a, b, _, _) = segments.swap_remove(worst);
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            // interval collapsed to machine precision; accept what we have
            let (v, e) = gk15(f, a, b);
            segments.push((a, b, v, e.min(f64::EPSILON * v.abs())));
            splits += 1;
            continue;
        }
        let (v1, e1) = gk15(f, a, mid);
        let (v2, e2) = gk15(f, mid, b);
        segments.push((a, mid, v1, e1));
        segments.push((mid, b, v2, e2));
        splits += 1;
    }
}

/// Integral of `f` over `[a, ∞)` through the exponential map
/// `x = a − scale·ln(1 − t)`, `t ∈ [0, 1)`.
///
/// `scale` should be the decay length of the integrand; an integrand decaying
/// like `exp(−(x−a)/scale)` becomes constant in `t`.
pub fn integrate_semi_infinite<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    scale: f64,
    tol: f64,
) -> Result<Integral> {
    if !(scale > 0.0) {
        return Err(Error::Domain("semi-infinite map needs a positive scale".into()));
    }
    let mut g = |t: f64| {
        let one_minus = 1.0 - t;
        if one_minus <= 0.0 {
            return 0.0;
        }
        let x = a - scale * one_minus.ln();
        let jac = scale / one_minus;
        let v = f(x) * jac;
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    integrate_with_breaks(&mut g, &[0.0, 0.5, 0.9, 0.99, 1.0], tol)
}

/// Integral of `f` over `[a, ∞)` through the algebraic map
/// `x = a + scale·u/(1 − u)`, suited to integrands with power-law tails
/// decaying faster than `1/x`.
pub fn integrate_semi_infinite_algebraic<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    scale: f64,
    tol: f64,
) -> Result<Integral> {
    if !(scale > 0.0) {
        return Err(Error::Domain("semi-infinite map needs a positive scale".into()));
    }
    let mut g = |u: f64| {
        let one_minus = 1.0 - u;
        if one_minus <= 0.0 {
            return 0.0;
        }
        let x = a + scale * u / one_minus;
        let v = f(x) * scale / (one_minus * one_minus);
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    integrate_with_breaks(&mut g, &[0.0, 0.5, 0.9, 0.99, 1.0], tol)
}

/// Normalized null vector of a square matrix, provided the null space is
/// exactly one-dimensional at relative threshold `rel_tol` on the singular
/// values.
pub fn unique_null_vector<T>(m: &DMatrix<T>, rel_tol: f64) -> Result<DVector<T>>
where
    T: ComplexField<RealField = f64>,
{
    let n = m.nrows();
    if n != m.ncols() {
        return Err(Error::NotSquare { rows: n, cols: m.ncols() });
    }
    let svd = m.clone().svd(false, true);
    let v_t = svd.v_t.as_ref().expect("requested V^H");
    let smax = svd.singular_values.iter().cloned().fold(0.0_f64, f64::max);
    let threshold = rel_tol * smax.max(1e-300);
    let null: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] <= threshold)
        .collect();
    if null.len() != 1 {
        return Err(Error::AmbiguousSteadyState(null.len()));
    }
    Ok(v_t.row(null[0]).adjoint())
}
