//! One-dimensional quadrature.
//!
//! Everything here is built on adaptive Simpson with Richardson correction.
//! [`integrate`] adds breakpoint handling and geometric pre-splitting for
//! integrands that live on very different scales across a long interval
//! (heavy-tailed cdfs), and [`integrate_tail`] covers `[t0, ∞)` by doubling
//! chunks until the contributions vanish. [`GaussLegendre`] is a fixed rule
//! for callers that need the result to depend smoothly on the limits.

use super::sum::KahanSum;

/// Default absolute tolerance used across the crate.
pub const DEFAULT_TOL: f64 = 1e-11;

const MAX_DEPTH: u32 = 48;
const MIN_DEPTH: u32 = 3;
const REL_FLOOR: f64 = 1e-14;
/// Leaves stop refining once their error estimate is below this fraction of
/// the magnitude of the whole integral. Without it, integrands that are a
/// difference of nearly equal terms would refine rounding noise forever.
const NOISE_FLOOR: f64 = 1e-15;

/// Adaptive Simpson on `[a, b]`. Reversed limits flip the sign.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    simpson_with_floor(f, a, b, tol, None)
}

/// `(b − a)/6 · (|f(a)| + 4|f(m)| + |f(b)|)`: rough size of `∫ |f|`.
fn magnitude<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    (b - a).abs() / 6.0 * (f(a).abs() + 4.0 * f(0.5 * (a + b)).abs() + f(b).abs())
}

fn simpson_with_floor<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, floor: Option<f64>) -> f64 {
    if a == b {
        return 0.0;
    }
    if b < a {
        return -simpson_with_floor(f, b, a, tol, floor);
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let floor = floor.unwrap_or_else(|| {
        NOISE_FLOOR * (b - a) / 6.0 * (fa.abs() + 4.0 * fm.abs() + fb.abs())
    });
    step(f, a, b, fa, fm, fb, whole, tol, floor, 0)
}

#[allow(clippy::too_many_arguments)]
fn step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    floor: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let refined = left + right;
    let delta = refined - whole;
    let threshold = 15.0 * tol.max(REL_FLOOR * (left.abs() + right.abs())).max(floor);
    let exhausted = depth >= MAX_DEPTH || !(lm > a && rm < b && m > lm && rm > m);
    if exhausted || (depth >= MIN_DEPTH && delta.abs() <= threshold) {
        return refined + delta / 15.0;
    }
    step(f, a, m, fa, flm, fm, left, 0.5 * tol, floor, depth + 1)
        + step(f, m, b, fm, frm, fb, right, 0.5 * tol, floor, depth + 1)
}

/// Integrates over `[a, b]`, splitting at every breakpoint strictly inside
/// the interval and pre-splitting geometrically when the interval is long
/// compared to the magnitude of its left end.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, breaks: &[f64], tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    if b < a {
        return -integrate(f, b, a, breaks, tol);
    }
    let mut points = vec![a];
    points.extend(breaks.iter().copied().filter(|&x| x > a && x < b));
    points.push(b);
    points.sort_by(f64::total_cmp);
    points.dedup();

    let mut pieces = Vec::new();
    for w in points.windows(2) {
        geometric_split(w[0], w[1], &mut pieces);
    }
    let share = tol / pieces.len() as f64;
    let size: KahanSum = pieces.iter().map(|&(lo, hi)| magnitude(f, lo, hi)).collect();
    let floor = NOISE_FLOOR * size.value();
    pieces
        .iter()
        .map(|&(lo, hi)| simpson_with_floor(f, lo, hi, share, Some(floor)))
        .collect::<KahanSum>()
        .value()
}

fn geometric_split(a: f64, b: f64, out: &mut Vec<(f64, f64)>) {
    let scale = 1.0 + a.abs();
    let width = b - a;
    if width <= 16.0 * scale || !width.is_finite() {
        out.push((a, b));
        return;
    }
    let levels = ((width / scale).log2().ceil() as i32).min(1000);
    let mut lo = a;
    for k in (1..=levels).rev() {
        let hi = a + width * 0.5f64.powi(k);
        if hi > lo {
            out.push((lo, hi));
            lo = hi;
        }
    }
    out.push((lo, b));
}

/// Integrates `f` over `[t0, t_max]` where `f` decays toward `t_max`,
/// using chunks of doubling width and stopping once two consecutive chunks
/// contribute less than `tol / 1000`.
pub fn integrate_tail<F: Fn(f64) -> f64>(f: &F, t0: f64, t_max: f64, tol: f64) -> f64 {
    let mut total = KahanSum::new();
    let mut lo = t0;
    let mut width = 1.0;
    let mut quiet = 0;
    while lo < t_max {
        let hi = (lo + width).min(t_max);
        let part = adaptive_simpson(f, lo, hi, tol / 32.0);
        total.add(part);
        if width >= 8.0 && part.abs() <= tol * 1e-3 {
            quiet += 1;
            if quiet >= 2 {
                break;
            }
        } else {
            quiet = 0;
        }
        lo = hi;
        width *= 2.0;
    }
    total.value()
}

/// Fixed Gauss-Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(order: usize) -> Self {
        assert!(order >= 1);
        let mut nodes = vec![0.0; order];
        let mut weights = vec![0.0; order];
        let n = order as f64;
        for i in 0..order.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(order, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(order, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[order - 1 - i] = x;
            weights[i] = w;
            weights[order - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    /// Composite rule with `panels` equal sub-intervals.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: &F, a: f64, b: f64, panels: usize) -> f64 {
        let h = (b - a) / panels as f64;
        let mut acc = KahanSum::new();
        for k in 0..panels {
            let lo = a + h * k as f64;
            let mid = lo + 0.5 * h;
            for (x, w) in self.nodes.iter().zip(&self.weights) {
                acc.add(w * f(mid + 0.5 * h * x));
            }
        }
        0.5 * h * acc.value()
    }
}

fn legendre(order: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=order {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let n = order as f64;
    let d = n * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}
