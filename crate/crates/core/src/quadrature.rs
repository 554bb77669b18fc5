//! Adaptive one-dimensional integration with a 10/21-point Gauss-Kronrod pair.
//!
//! Panels are refined globally: the panel with the largest error estimate is
//! bisected until the summed estimate falls below
//! `max(rel_tol * |value|, abs_tol)` or the subdivision budget runs out.
//! Ties between panels are broken by position, so the refinement sequence and
//! the final sum are fully deterministic.
//!
//! Vector-valued integrands (`[f64; N]`) share one subdivision path, which is
//! what the Lifshitz integral uses to carry both polarizations at once.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use thiserror::Error;

/// Tolerances and budgets shared by every integral in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Target relative accuracy.
    pub rel_tol: f64,
    /// Absolute accuracy floor.
    pub abs_tol: f64,
    /// Maximum number of panels in one adaptive integral.
    pub max_subdivisions: usize,
    /// Multiplier of the physical scale at which exponentially damped
    /// integrands are truncated.
    pub tail_cutoff_scale: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-6,
            abs_tol: 1e-12,
            max_subdivisions: 2000,
            tail_cutoff_scale: 50.0,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<(), QuadratureError> {
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(QuadratureError::InvalidConfig(format!(
                "rel_tol must be positive and finite, got {}",
                self.rel_tol
            )));
        }
        if !(self.abs_tol >= 0.0 && self.abs_tol.is_finite()) {
            return Err(QuadratureError::InvalidConfig(format!(
                "abs_tol must be non-negative and finite, got {}",
                self.abs_tol
            )));
        }
        if self.max_subdivisions < 1 {
            return Err(QuadratureError::InvalidConfig(
                "max_subdivisions must be at least 1".into(),
            ));
        }
        if !(self.tail_cutoff_scale > 0.0 && self.tail_cutoff_scale.is_finite()) {
            return Err(QuadratureError::InvalidConfig(format!(
                "tail_cutoff_scale must be positive and finite, got {}",
                self.tail_cutoff_scale
            )));
        }
        Ok(())
    }

    /// Same budget with the relative tolerance scaled by `factor`.
    pub fn with_rel_tol_scaled(&self, factor: f64) -> Self {
        Self {
            rel_tol: self.rel_tol * factor,
            ..*self
        }
    }
}

/// Value and error estimate of a scalar integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// Outcome of a vector-valued integral. `converged` is false when the
/// subdivision budget ran out before the tolerance was met; the values are
/// then the best available estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultiResult<const N: usize> {
    pub value: [f64; N],
    pub error_estimate: [f64; N],
    pub evaluations: usize,
    pub converged: bool,
}

impl<const N: usize> MultiResult<N> {
    pub fn total_value(&self) -> f64 {
        self.value.iter().sum()
    }

    pub fn total_error(&self) -> f64 {
        self.error_estimate.iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadratureError {
    #[error("invalid quadrature configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid integration interval [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },
    #[error("integrand is not finite at x = {x}")]
    NonFinite { x: f64 },
    #[error(
        "integral did not converge: best value {} with error estimate {}",
        best.value,
        best.error_estimate
    )]
    NotConverged { best: QuadratureResult },
}

// Tables are kept at their published precision.
// Kronrod abscissae on [-1, 1] (positive half, descending). Odd indices are
// the Gauss 10-point nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

const GK_POINTS: usize = 21;

#[derive(Debug, Clone, Copy)]
struct Panel<const N: usize> {
    a: f64,
    b: f64,
    value: [f64; N],
    error: [f64; N],
}

impl<const N: usize> Panel<N> {
    fn total_error(&self) -> f64 {
        self.error.iter().sum()
    }
}

// Max-heap key: largest error first, leftmost panel on ties.
struct HeapEntry<const N: usize>(Panel<N>);

impl<const N: usize> PartialEq for HeapEntry<N> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<const N: usize> Eq for HeapEntry<N> {}

impl<const N: usize> PartialOrd for HeapEntry<N> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<const N: usize> Ord for HeapEntry<N> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .total_error()
            .total_cmp(&other.0.total_error())
            .then_with(|| other.0.a.total_cmp(&self.0.a))
    }
}

/// QUADPACK-style rescaling of the raw Kronrod-Gauss difference.
fn rescale_error(raw: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut err = raw.abs();
    if res_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / res_asc).powf(1.5);
        err = if scale < 1.0 {
            res_asc * scale
        } else {
            res_asc
        };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    err
}

fn gk21<const N: usize, F>(f: &F, a: f64, b: f64) -> Result<Panel<N>, QuadratureError>
where
    F: Fn(f64) -> [f64; N],
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let mut fv = [[0.0; N]; GK_POINTS];
    let eval = |x: f64| -> Result<[f64; N], QuadratureError> {
        let y = f(x);
        if y.iter().all(|v| v.is_finite()) {
            Ok(y)
        } else {
            Err(QuadratureError::NonFinite { x })
        }
    };
    // Layout: fv[0] is the center, then pairs (center - dx, center + dx).
    fv[0] = eval(center)?;
    for j in 0..10 {
        let dx = half * XGK[j];
        fv[1 + 2 * j] = eval(center - dx)?;
        fv[2 + 2 * j] = eval(center + dx)?;
    }

    let mut value = [0.0; N];
    let mut error = [0.0; N];
    for c in 0..N {
        // Sums are taken relative to the center value; both weight sets add
        // up to exactly 2 on paper, so constants integrate without round-off.
        let fc = fv[0][c];
        let mut res_k = 2.0 * fc;
        let mut res_g = 2.0 * fc;
        let mut res_abs = WGK[10] * fc.abs();
        for j in 0..10 {
            let (lo, hi) = (fv[1 + 2 * j][c], fv[2 + 2 * j][c]);
            res_k += WGK[j] * ((lo - fc) + (hi - fc));
            res_abs += WGK[j] * (lo.abs() + hi.abs());
            if j % 2 == 1 {
                res_g += WG[j / 2] * ((lo - fc) + (hi - fc));
            }
        }
        let mean = 0.5 * res_k;
        let mut res_asc = WGK[10] * (fc - mean).abs();
        for j in 0..10 {
            res_asc += WGK[j] * ((fv[1 + 2 * j][c] - mean).abs() + (fv[2 + 2 * j][c] - mean).abs());
        }
        let scale = half.abs();
        value[c] = res_k * half;
        error[c] = rescale_error((res_k - res_g) * half, res_abs * scale, res_asc * scale);
    }
    Ok(Panel { a, b, value, error })
}

/// Adaptive integration of a vector-valued integrand over `[a, b]`.
///
/// Non-convergence is reported through [`MultiResult::converged`] rather than
/// as an error so callers can keep the best estimate.
pub fn integrate_finite_multi<const N: usize, F>(
    f: F,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<MultiResult<N>, QuadratureError>
where
    F: Fn(f64) -> [f64; N],
{
    cfg.validate()?;
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(QuadratureError::InvalidInterval { a, b });
    }

    let first = gk21(&f, a, b)?;
    let mut evaluations = GK_POINTS;
    let mut heap = BinaryHeap::new();
    heap.push(HeapEntry(first));

    // Running totals drive the stopping test; the reported sum is recomputed
    // in positional order at the end.
    let mut run_value = first.value;
    let mut run_error = first.error;
    let mut converged;
    loop {
        let magnitude: f64 = run_value.iter().map(|v| v.abs()).sum();
        let err: f64 = run_error.iter().map(|e| e.max(0.0)).sum();
        converged = err <= (cfg.rel_tol * magnitude).max(cfg.abs_tol);
        if converged || heap.len() >= cfg.max_subdivisions {
            break;
        }
        let worst = heap.pop().expect("heap holds at least one panel").0;
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            // Panel cannot be split further in floating point.
            heap.push(HeapEntry(worst));
            break;
        }
        let left = gk21(&f, worst.a, mid)?;
        let right = gk21(&f, mid, worst.b)?;
        evaluations += 2 * GK_POINTS;
        for c in 0..N {
            run_value[c] += left.value[c] + right.value[c] - worst.value[c];
            run_error[c] += left.error[c] + right.error[c] - worst.error[c];
        }
        heap.push(HeapEntry(left));
        heap.push(HeapEntry(right));
    }

    let (value, error_estimate) = summed(&heap);
    Ok(MultiResult {
        value,
        error_estimate,
        evaluations,
        converged,
    })
}

// Sums panels left to right so the result does not depend on heap layout.
fn summed<const N: usize>(panels: &BinaryHeap<HeapEntry<N>>) -> ([f64; N], [f64; N]) {
    let mut ordered: Vec<&Panel<N>> = panels.iter().map(|e| &e.0).collect();
    ordered.sort_by(|x, y| x.a.total_cmp(&y.a));
    let mut value = [0.0; N];
    let mut error = [0.0; N];
    for p in ordered {
        for c in 0..N {
            value[c] += p.value[c];
            error[c] += p.error[c];
        }
    }
    (value, error)
}

fn scalar(result: MultiResult<1>) -> Result<QuadratureResult, QuadratureError> {
    let best = QuadratureResult {
        value: result.value[0],
        error_estimate: result.error_estimate[0],
        evaluations: result.evaluations,
    };
    if result.converged {
        Ok(best)
    } else {
        Err(QuadratureError::NotConverged { best })
    }
}

/// Adaptive integral of `f` over the finite interval `[a, b]`.
pub fn integrate_finite<F>(
    f: F,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult, QuadratureError>
where
    F: Fn(f64) -> f64,
{
    scalar(integrate_finite_multi(|x| [f(x)], a, b, cfg)?)
}

/// Integral of `f` over `[a, inf)` via the map `x = a + scale * t / (1 - t)`.
///
/// `scale` should be the length over which `f` decays.
pub fn integrate_semi_infinite<F>(
    f: F,
    a: f64,
    scale: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult, QuadratureError>
where
    F: Fn(f64) -> f64,
{
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(QuadratureError::InvalidConfig(format!(
            "semi-infinite scale must be positive and finite, got {scale}"
        )));
    }
    scalar(integrate_finite_multi(
        |t| [mapped(&f, a, scale, t)],
        0.0,
        1.0,
        cfg,
    )?)
}

fn mapped<F: Fn(f64) -> f64>(f: &F, a: f64, scale: f64, t: f64) -> f64 {
    let one_minus = 1.0 - t;
    let x = a + scale * t / one_minus;
    let y = f(x);
    if y == 0.0 {
        return 0.0;
    }
    y * scale / (one_minus * one_minus)
}

/// Integral over `[a, a + tail_cutoff_scale * scale]` for integrands known
/// to decay at least like `exp(-(x - a) / scale)`.
pub fn integrate_damped_multi<const N: usize, F>(
    f: F,
    a: f64,
    scale: f64,
    cfg: &QuadratureConfig,
) -> Result<MultiResult<N>, QuadratureError>
where
    F: Fn(f64) -> [f64; N],
{
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(QuadratureError::InvalidConfig(format!(
            "damping scale must be positive and finite, got {scale}"
        )));
    }
    integrate_finite_multi(f, a, a + cfg.tail_cutoff_scale * scale, cfg)
}
