//! Distortion risk measures `ρ(F) = ∫ ES_p(F) μ(dp)` over finite signed
//! measures, their spectral form `∫ F⁻¹(u) φ(u) du`, and estimators.
//!
//! A [`SignedMeasure`] is a finite list of atoms plus piecewise-constant
//! density bands. Its spectral weight is
//! `φ(u) = ∫_{[0,u]} (1 − p)⁻¹ μ(dp)`: an atom `(p, w)` adds the step
//! `w/(1−p)·1{u ≥ p}` and a band `[a, b]` of height `h` adds
//! `h·ln((1−a)/(1−min(u,b)))` for `u ≥ a`.
//!
//! Bands must end strictly below 1 for `ρ` to be evaluated. Weights with
//! mass accumulating at 1, such as the linear weight of the Gini shortfall,
//! are approximated by truncating the band at some `b < 1`.

use std::fmt;

use serde::Serialize;

use crate::distributions::Model;
use crate::empirical::{ceil_index, EmpiricalDistribution};
use crate::error::{check_open_unit, Error, Result};
use crate::inference::{InferenceResult, SMALL_SAMPLE_WARNING};
use crate::numeric::{adaptive_simpson, integrate, GaussLegendre, KahanSum, DEFAULT_TOL};

pub const SUPPORT_WARNING: &str = "measure support outside [1/n, 1 - 1/n]";

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Atom {
    pub p: f64,
    pub weight: f64,
}

/// Constant density `height` on `[a, b]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Band {
    pub a: f64,
    pub b: f64,
    pub height: f64,
}

/// Finite signed measure on `(0, 1)`.
///
/// Bands may end at exactly 1 so that such measures can be represented and
/// rejected with a finiteness error when evaluated.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SignedMeasure {
    atoms: Vec<Atom>,
    bands: Vec<Band>,
}

fn bad(name: &str, position: usize, value: f64, reason: &str) -> Error {
    Error::Parameter {
        name: name.to_string(),
        position,
        value: value.to_string(),
        reason: reason.to_string(),
    }
}

impl SignedMeasure {
    pub fn new(mut atoms: Vec<Atom>, mut bands: Vec<Band>) -> Result<Self> {
        for (i, atom) in atoms.iter().enumerate() {
            if !(atom.p > 0.0 && atom.p < 1.0) {
                return Err(bad("atom.p", i + 1, atom.p, "must lie in (0, 1)"));
            }
            if !atom.weight.is_finite() {
                return Err(bad("atom.weight", i + 1, atom.weight, "must be finite"));
            }
        }
        for (i, band) in bands.iter().enumerate() {
            if !(band.a > 0.0 && band.a < band.b && band.b <= 1.0) {
                return Err(bad("band.b", i + 1, band.b, "need 0 < a < b ≤ 1"));
            }
            if !band.height.is_finite() {
                return Err(bad("band.height", i + 1, band.height, "must be finite"));
            }
        }
        atoms.sort_by(|x, y| x.p.total_cmp(&y.p));
        if let Some(w) = atoms.windows(2).find(|w| w[0].p == w[1].p) {
            return Err(bad("atom.p", 0, w[1].p, "atom locations must be distinct"));
        }
        bands.sort_by(|x, y| x.a.total_cmp(&y.a));
        if let Some(w) = bands.windows(2).find(|w| w[0].b > w[1].a) {
            return Err(bad("band.a", 0, w[1].a, "bands must not overlap"));
        }
        Ok(Self { atoms, bands })
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// Unit point mass at `p`; `ρ` is then `ES_p`.
    pub fn atom(p: f64) -> Result<Self> {
        Self::new(vec![Atom { p, weight: 1.0 }], Vec::new())
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn bands(&self) -> &[Band] {
        &self.bands
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.iter().all(|a| a.weight == 0.0) && self.bands.iter().all(|b| b.height == 0.0)
    }

    pub fn total_variation(&self) -> f64 {
        let atoms = self.atoms.iter().map(|a| a.weight.abs());
        let bands = self.bands.iter().map(|b| b.height.abs() * (b.b - b.a));
        atoms.chain(bands).collect::<KahanSum>().value()
    }

    /// Smallest and largest point of the support, if any.
    pub fn support(&self) -> Option<(f64, f64)> {
        let points = self
            .atoms
            .iter()
            .filter(|a| a.weight != 0.0)
            .map(|a| (a.p, a.p))
            .chain(self.bands.iter().filter(|b| b.height != 0.0).map(|b| (b.a, b.b)));
        points.fold(None, |acc, (lo, hi)| match acc {
            None => Some((lo, hi)),
            Some((l, h)) => Some((l.min(lo), h.max(hi))),
        })
    }

    fn check_finite(&self) -> Result<()> {
        match self.bands.iter().find(|b| b.b >= 1.0 && b.height != 0.0) {
            Some(b) => Err(Error::Finiteness(format!(
                "band [{}, {}] reaches 1",
                b.a, b.b
            ))),
            None => Ok(()),
        }
    }
}

impl fmt::Display for SignedMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| {
            let s = if first { "" } else { ";" };
            first = false;
            f.write_str(s)
        };
        for a in &self.atoms {
            sep(f)?;
            write!(f, "atom:{},{}", a.p, a.weight)?;
        }
        for b in &self.bands {
            sep(f)?;
            write!(f, "band:{},{},{}", b.a, b.b, b.height)?;
        }
        Ok(())
    }
}

/// Parses `atom:p,w;band:a,b,h;…`. The empty string is the zero measure.
pub fn parse_measure_spec(text: &str) -> Result<SignedMeasure> {
    let mut atoms = Vec::new();
    let mut bands = Vec::new();
    for (i, term) in text.split(';').map(str::trim).enumerate() {
        if term.is_empty() {
            continue;
        }
        let (kind, rest) = term.split_once(':').ok_or_else(|| Error::Parse {
            token: term.to_string(),
            reason: "expected 'atom:p,w' or 'band:a,b,h'".into(),
        })?;
        let arity = match kind.trim() {
            "atom" => 2,
            "band" => 3,
            other => {
                return Err(Error::Parse {
                    token: other.to_string(),
                    reason: "unknown term (expected atom or band)".into(),
                })
            }
        };
        let values = rest
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| Error::Parse {
                        token: tok.to_string(),
                        reason: format!("term {} needs finite numbers", i + 1),
                    })
            })
            .collect::<Result<Vec<f64>>>()?;
        if values.len() != arity {
            return Err(Error::Parse {
                token: term.to_string(),
                reason: format!("expected {arity} numbers, got {}", values.len()),
            });
        }
        if arity == 2 {
            atoms.push(Atom { p: values[0], weight: values[1] });
        } else {
            bands.push(Band { a: values[0], b: values[1], height: values[2] });
        }
    }
    SignedMeasure::new(atoms, bands)
}

/// `ES_p = (1/(1−p)) ∫_p^1 F⁻¹(u) du`.
pub fn es<M: Model + ?Sized>(model: &M, p: f64) -> Result<f64> {
    Ok(model.integrated_upper_quantile(p)? / (1.0 - p))
}

/// `ES_q − ES_p`.
pub fn inter_es<M: Model + ?Sized>(model: &M, p: f64, q: f64) -> Result<f64> {
    Ok(es(model, q)? - es(model, p)?)
}

/// `∫ ES_p μ(dp)`, band pieces by quadrature in `p`.
pub fn distortion_risk<M: Model + ?Sized>(model: &M, mu: &SignedMeasure) -> Result<f64> {
    if !model.moment_class().finite_upper_first {
        return Err(Error::Moment("distortion risk needs a finite upper first moment".into()));
    }
    mu.check_finite()?;
    let mut acc = KahanSum::new();
    for atom in &mu.atoms {
        acc.add(atom.weight * model.upper_integral(atom.p) / (1.0 - atom.p));
    }
    for band in mu.bands.iter().filter(|b| b.height != 0.0) {
        let es_p = |p: f64| model.upper_integral(p) / (1.0 - p);
        acc.add(band.height * integrate(&es_p, band.a, band.b, &[], DEFAULT_TOL));
    }
    Ok(acc.value())
}

/// `(1/(q−p)) ∫_p^q F⁻¹(u) du`.
pub fn rvar<M: Model + ?Sized>(model: &M, p: f64, q: f64) -> Result<f64> {
    check_open_unit("p", p)?;
    check_open_unit("q", q)?;
    if p >= q {
        return Err(Error::Domain {
            name: "q",
            value: q,
            expected: "(p, 1)",
        });
    }
    let mass = if model.moment_class().finite_upper_first {
        model.upper_integral(p) - model.upper_integral(q)
    } else {
        // u = 1 − e^{−t}
        let f = |t: f64| {
            let s = (-t).exp();
            model.upper_quantile(s) * s
        };
        adaptive_simpson(&f, -(-p).ln_1p(), -(-q).ln_1p(), DEFAULT_TOL)
    };
    Ok(mass / (q - p))
}

/// `∫_0^p F⁻¹(u) du`.
pub fn lower_integrated_quantile<M: Model + ?Sized>(model: &M, p: f64) -> Result<f64> {
    model.integrated_lower_quantile(p)
}

/// Spectral weight `φ` of a signed measure.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralWeight {
    measure: SignedMeasure,
}

pub fn spectral_weight_from_measure(mu: &SignedMeasure) -> SpectralWeight {
    SpectralWeight { measure: mu.clone() }
}

/// `(1−u)·ln((1−u)/(1−a)) + (u − a)`, i.e. `∫_a^u ln((1−a)/(1−v)) dv`.
fn log_ramp(a: f64, u: f64) -> f64 {
    let s = 1.0 - u;
    let tail = if s == 0.0 { 0.0 } else { s * ((-u).ln_1p() - (-a).ln_1p()) };
    tail + (u - a)
}

impl SpectralWeight {
    /// Sorted points where `φ` changes form.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut pts: Vec<f64> = self.measure.atoms.iter().map(|a| a.p).collect();
        for b in &self.measure.bands {
            pts.extend([b.a, b.b]);
        }
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        pts
    }

    pub fn value(&self, u: f64) -> f64 {
        let mut acc = KahanSum::new();
        for a in self.measure.atoms.iter().filter(|a| u >= a.p) {
            acc.add(a.weight / (1.0 - a.p));
        }
        for b in self.measure.bands.iter().filter(|b| u >= b.a) {
            acc.add(b.height * ((-b.a).ln_1p() - (-u.min(b.b)).ln_1p()));
        }
        acc.value()
    }

    /// `Φ(u) = ∫_0^u φ(v) dv`, exact.
    pub fn antiderivative(&self, u: f64) -> f64 {
        let mut acc = KahanSum::new();
        for a in self.measure.atoms.iter().filter(|a| u > a.p) {
            acc.add(a.weight * (u - a.p) / (1.0 - a.p));
        }
        for b in self.measure.bands.iter().filter(|b| u > b.a) {
            let inside = log_ramp(b.a, u.min(b.b));
            let beyond = if u > b.b {
                (u - b.b) * ((-b.a).ln_1p() - (-b.b).ln_1p())
            } else {
                0.0
            };
            acc.add(b.height * (inside + beyond));
        }
        acc.value()
    }

    /// `∫_0^1 F⁻¹(u) φ(u) du`.
    ///
    /// Between breakpoints `φ` is `c + H·(−ln(1−u))`; the constant part uses
    /// the model's upper integrals and the logarithmic part is integrated
    /// numerically.
    pub fn integrate_quantile<M: Model + ?Sized>(&self, model: &M) -> Result<f64> {
        if !model.moment_class().finite_upper_first {
            return Err(Error::Moment("spectral integral needs a finite upper first moment".into()));
        }
        self.measure.check_finite()?;
        let pts = self.breakpoints();
        let mut acc = KahanSum::new();
        for (j, &lo) in pts.iter().enumerate() {
            let hi = pts.get(j + 1).copied();
            let mid = hi.map_or(lo, |h| 0.5 * (lo + h));
            let slope: f64 = self
                .measure
                .bands
                .iter()
                .filter(|b| b.a <= lo && mid < b.b)
                .map(|b| b.height)
                .sum();
            // φ(u) = c − slope·ln(1−u) on [lo, hi)
            let c = self.value(lo) + slope * (-lo).ln_1p();
            let upper_lo = model.upper_integral(lo);
            match hi {
                None => acc.add(c * upper_lo),
                Some(hi) => {
                    acc.add(c * (upper_lo - model.upper_integral(hi)));
                    if slope != 0.0 {
                        let g = |u: f64| -model.quantile(u) * (-u).ln_1p();
                        acc.add(slope * integrate(&g, lo, hi, &[], DEFAULT_TOL));
                    }
                }
            }
        }
        Ok(acc.value())
    }
}

/// Plug-in `ρ(F_n) = Σ x₍ᵢ₎ ∫_{(i−1)/n}^{i/n} φ` with a normal interval.
///
/// The standard error is the sample standard deviation of
/// `gᵢ = ∫ (Xᵢ − F_n⁻¹(p))₊ (1−p)⁻¹ μ(dp)` over `√n`; band integrals are
/// evaluated exactly with prefix sums over the order statistics.
pub fn distortion_estimate(sample: &[f64], mu: &SignedMeasure, level: f64) -> Result<InferenceResult> {
    check_open_unit("level", level)?;
    mu.check_finite()?;
    let emp = EmpiricalDistribution::new(sample)?;
    let n = emp.len();
    let nf = n as f64;
    let x = emp.sorted_values();

    let mut warnings = Vec::new();
    if n < 30 {
        warnings.push(SMALL_SAMPLE_WARNING.to_string());
    }
    if let Some((lo, hi)) = mu.support() {
        if lo < 1.0 / nf || hi > 1.0 - 1.0 / nf {
            warnings.push(SUPPORT_WARNING.to_string());
        }
    }

    let phi = spectral_weight_from_measure(mu);
    let mut estimate = KahanSum::new();
    let mut prev = 0.0;
    for (i, &xi) in x.iter().enumerate() {
        let next = phi.antiderivative((i + 1) as f64 / nf);
        estimate.add(xi * (next - prev));
        prev = next;
    }

    let bands: Vec<BandSums> = mu
        .bands
        .iter()
        .filter(|b| b.height != 0.0)
        .map(|b| BandSums::new(&emp, b))
        .collect();
    let g: Vec<f64> = x
        .iter()
        .map(|&xi| {
            let mut acc = KahanSum::new();
            for a in &mu.atoms {
                let x_p = emp.quantile(a.p);
                acc.add(a.weight * (xi - x_p).max(0.0) / (1.0 - a.p));
            }
            for b in &bands {
                acc.add(b.eval(x, xi));
            }
            acc.value()
        })
        .collect();
    let variance = if n < 2 {
        0.0
    } else {
        let mean = g.iter().copied().collect::<KahanSum>().value() / nf;
        let ss = g.iter().map(|v| (v - mean).powi(2)).collect::<KahanSum>().value();
        ss / (nf - 1.0)
    };
    Ok(InferenceResult::normal(
        estimate.value(),
        variance.sqrt() / nf.sqrt(),
        level,
        n,
        warnings,
    ))
}

/// Prefix sums for `h ∫_a^b (x − x₍⌈np⌉₎)₊ / (1−p) dp`.
///
/// On the cell `((k−1)/n, k/n] ∩ [a, b]` the quantile is `x₍ₖ₎`, so the
/// integral is `h Σ_k (x − x₍ₖ₎)₊ L_k` with `L_k = ln((1−lo_k)/(1−hi_k))`.
/// Order statistics are sorted, so the positive terms are a prefix in `k`.
struct BandSums {
    height: f64,
    k_lo: usize,
    /// `Σ_{j<m} L`, `Σ_{j<m} x L` over cells `k_lo..`.
    l_prefix: Vec<f64>,
    xl_prefix: Vec<f64>,
}

impl BandSums {
    fn new(emp: &EmpiricalDistribution, band: &Band) -> Self {
        let n = emp.len();
        let nf = n as f64;
        let x = emp.sorted_values();
        let k_lo = ceil_index(n, band.a);
        let k_hi = ceil_index(n, band.b);
        let mut l_prefix = vec![0.0];
        let mut xl_prefix = vec![0.0];
        let (mut l_acc, mut xl_acc) = (KahanSum::new(), KahanSum::new());
        for k in k_lo..=k_hi {
            let lo = band.a.max((k - 1) as f64 / nf);
            let hi = band.b.min(k as f64 / nf);
            let l = if hi > lo { (-lo).ln_1p() - (-hi).ln_1p() } else { 0.0 };
            l_acc.add(l);
            xl_acc.add(x[k - 1] * l);
            l_prefix.push(l_acc.value());
            xl_prefix.push(xl_acc.value());
        }
        Self {
            height: band.height,
            k_lo,
            l_prefix,
            xl_prefix,
        }
    }

    fn eval(&self, sorted: &[f64], xi: f64) -> f64 {
        let cells = self.l_prefix.len() - 1;
        let below = sorted.partition_point(|&v| v < xi);
        // cells k_lo..=k_lo+m−1 have x₍ₖ₎ < xi
        let m = below.saturating_sub(self.k_lo - 1).min(cells);
        self.height * (xi * self.l_prefix[m] - self.xl_prefix[m])
    }
}

/// Result of minimising `m(y) = (1−p)y + E[(X − y)₊]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RuCrossCheck {
    pub minimizer: f64,
    pub min_value: f64,
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

fn golden_section<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if hi - lo <= 4.0 * f64::EPSILON * lo.abs().max(hi.abs()).max(1.0) {
            break;
        }
        if fc <= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = f(d);
        }
    }
    if fc <= fd {
        c
    } else {
        d
    }
}

/// Minimises `m(y)` by golden-section search and reports `m` at the minimiser.
///
/// The search runs on `m(y) − m(anchor) = ∫_anchor^y (F(x) − p) dx`, using a
/// fixed Gauss-Legendre rule for continuous models so the objective is smooth
/// in `y`, and the exact step integral otherwise.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub fn ru_es_crosscheck<M: Model + ?Sized>(model: &M, p: f64) -> Result<RuCrossCheck> {
    check_open_unit("p", p)?;
    if !model.moment_class().finite_upper_first {
        return Err(Error::Moment("the ES minimisation needs a finite upper first moment".into()));
    }
    let continuous = model.is_continuous_at(model.quantile(p));
    let gl = GaussLegendre::new(16);
    let mut lo = model.quantile((p - 0.2).max(0.5 * p));
    let mut hi = model.quantile((p + 0.2).min(0.5 * (1.0 + p)));
    if !(hi > lo) {
        let s = lo.abs().max(1.0);
        lo -= s;
        hi += s;
    }
    let mut y = lo;
    for _ in 0..64 {
        let anchor = lo;
        let objective = |y: f64| {
            if continuous {
                gl.integrate(&|x| model.cdf(x) - p, anchor, y, 8)
            } else {
                -model.level_gap_integral(anchor, y, p)
            }
        };
        y = golden_section(objective, lo, hi);
        let width = hi - lo;
        let edge = 1e-9 * width;
        if y - lo <= edge {
            lo -= width;
        } else if hi - y <= edge {
            hi += width;
        } else {
            break;
        }
    }
    Ok(RuCrossCheck {
        minimizer: y,
        min_value: (1.0 - p) * y + model.upper_partial_moment(y),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::{parse_dist_spec, Exponential, Lomax, Uniform};
    use crate::inference::{es_confidence_interval, VarianceSource};
    use proptest::prelude::*;

    fn atoms(list: &[(f64, f64)]) -> SignedMeasure {
        SignedMeasure::new(
            list.iter().map(|&(p, weight)| Atom { p, weight }).collect(),
            Vec::new(),
        )
        .unwrap()
    }

    #[test]
    fn es_examples() {
        let lomax = Lomax::new(2.0, 1.0).unwrap();
        assert!((es(&lomax, 0.75).unwrap() - 3.0).abs() < 1e-12);
        let e = Exponential::new(1.0).unwrap();
        assert!((es(&e, 1.0 - (-1.0f64).exp()).unwrap() - 2.0).abs() < 1e-12);
        let u = Uniform::new(0.0, 1.0).unwrap();
        assert!((es(&u, 0.5).unwrap() - 0.75).abs() < 1e-15);
        assert!(matches!(es(&Lomax::new(1.0, 1.0).unwrap(), 0.5), Err(Error::Moment(_))));
    }

    #[test]
    fn distortion_specialisations() {
        let m = Lomax::new(3.0, 1.0).unwrap();
        let direct = es(&m, 0.9).unwrap();
        let rho = distortion_risk(&m, &SignedMeasure::atom(0.9).unwrap()).unwrap();
        assert!((rho - direct).abs() < 1e-10);
        let inter = distortion_risk(&m, &atoms(&[(0.95, 1.0), (0.9, -1.0)])).unwrap();
        assert!((inter - inter_es(&m, 0.9, 0.95).unwrap()).abs() < 1e-10);
        assert_eq!(distortion_risk(&m, &SignedMeasure::zero()).unwrap(), 0.0);
    }

    #[test]
    fn band_to_one_is_not_finite() {
        let mu = parse_measure_spec("band:0.5,1,1").unwrap();
        let m = Uniform::new(0.0, 1.0).unwrap();
        assert!(matches!(distortion_risk(&m, &mu), Err(Error::Finiteness(_))));
        assert!(matches!(distortion_estimate(&[1.0, 2.0], &mu, 0.9), Err(Error::Finiteness(_))));
    }

    #[test]
    fn uniform_band_closed_form() {
        // ES_p = (1+p)/2 for U(0,1), so ∫_a^b ES_p dp = (b−a)/2 + (b²−a²)/4
        let m = Uniform::new(0.0, 1.0).unwrap();
        let mu = parse_measure_spec("band:0.2,0.7,2").unwrap();
        let exact = 2.0 * (0.25 + (0.49 - 0.04) / 4.0);
        assert!((distortion_risk(&m, &mu).unwrap() - exact).abs() < 1e-10);
        let phi = spectral_weight_from_measure(&mu);
        assert!((phi.integrate_quantile(&m).unwrap() - exact).abs() < 1e-10);
    }

    #[test]
    fn spectral_weight_examples() {
        let phi = spectral_weight_from_measure(&SignedMeasure::atom(0.8).unwrap());
        assert_eq!(phi.value(0.5), 0.0);
        assert!((phi.value(0.8) - 5.0).abs() < 1e-12);
        assert!((phi.value(0.95) - 5.0).abs() < 1e-12);
        let zero = spectral_weight_from_measure(&SignedMeasure::zero());
        assert_eq!(zero.value(0.3), 0.0);
        assert!(zero.breakpoints().is_empty());

        let mu = atoms(&[(0.9, 0.5), (0.95, 0.5)]);
        let m = Lomax::new(3.0, 1.0).unwrap();
        let spectral = spectral_weight_from_measure(&mu).integrate_quantile(&m).unwrap();
        assert!((spectral - distortion_risk(&m, &mu).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn antiderivative_matches_quadrature() {
        let mu = parse_measure_spec("atom:0.3,0.7;band:0.4,0.6,1.5;band:0.7,0.9,-2").unwrap();
        let phi = spectral_weight_from_measure(&mu);
        let gl = GaussLegendre::new(20);
        let mut pts = vec![0.0];
        pts.extend(phi.breakpoints());
        pts.push(0.97);
        let mut acc = 0.0;
        for w in pts.windows(2) {
            acc += gl.integrate(&|u| phi.value(u), w[0], w[1], 4);
            assert!((phi.antiderivative(w[1]) - acc).abs() < 1e-12, "at {}", w[1]);
        }
    }

    #[test]
    fn rvar_examples() {
        let u = Uniform::new(0.0, 1.0).unwrap();
        assert!((rvar(&u, 0.2, 0.8).unwrap() - 0.5).abs() < 1e-12);
        assert!((rvar(&u, 0.5, 1.0 - 1e-8).unwrap() - es(&u, 0.5).unwrap()).abs() < 1e-4);
        assert!(rvar(&u, 0.8, 0.2).is_err());
        // heavy tail: falls back to direct quadrature
        let heavy = Lomax::new(0.8, 1.0).unwrap();
        let q = |v: f64| (1.0 - v).powf(-1.0 / 0.8) - 1.0;
        let direct = GaussLegendre::new(20).integrate(&q, 0.5, 0.75, 8) / 0.25;
        assert!((rvar(&heavy, 0.5, 0.75).unwrap() - direct).abs() < 1e-9);
    }

    #[test]
    fn lower_examples() {
        let u = Uniform::new(0.0, 1.0).unwrap();
        assert!((lower_integrated_quantile(&u, 0.5).unwrap() - 0.125).abs() < 1e-15);
        let e = EmpiricalDistribution::new(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(lower_integrated_quantile(&e, 0.5).unwrap(), 0.75);
    }

    #[test]
    fn ru_examples() {
        let m = Lomax::new(2.0, 1.0).unwrap();
        let r = ru_es_crosscheck(&m, 0.75).unwrap();
        assert!((r.min_value - 0.75).abs() < 1e-7);
        assert!((r.minimizer - 1.0).abs() < 1e-5);
        let u = Uniform::new(0.0, 1.0).unwrap();
        assert!((ru_es_crosscheck(&u, 0.5).unwrap().min_value - 0.375).abs() < 1e-7);
        let e = parse_dist_spec("exp:1").unwrap();
        let r = ru_es_crosscheck(&e, 0.9).unwrap();
        assert!((r.min_value - 0.1 * (1.0 + 10f64.ln())).abs() < 1e-7);
        let emp = EmpiricalDistribution::new(&[2.0; 5]).unwrap();
        let r = ru_es_crosscheck(&emp, 0.5).unwrap();
        assert!((r.min_value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn estimate_matches_es_interval() {
        let m = Lomax::new(3.0, 1.0).unwrap();
        let sample = m.sample(9, 500);
        let a = distortion_estimate(&sample, &SignedMeasure::atom(0.9).unwrap(), 0.95).unwrap();
        let b = es_confidence_interval(&sample, 0.9, 0.95, VarianceSource::PlugIn).unwrap();
        assert!((a.estimate - b.estimate).abs() < 1e-12 * b.estimate.abs());
        assert!((a.std_error - b.std_error).abs() < 1e-12 * b.std_error);
        let z = distortion_estimate(&sample, &SignedMeasure::zero(), 0.95).unwrap();
        assert_eq!((z.estimate, z.width()), (0.0, 0.0));
    }

    #[test]
    fn band_scores_match_quadrature() {
        let sample = [0.3, 1.2, 1.2, 2.5, 4.0, 7.5, 0.9, 3.3];
        let mu = parse_measure_spec("band:0.3,0.8,1.7").unwrap();
        let emp = EmpiricalDistribution::new(&sample).unwrap();
        let sums = BandSums::new(&emp, &mu.bands()[0]);
        for &xi in &sample {
            let f = |p: f64| (xi - emp.quantile(p)).max(0.0) / (1.0 - p);
            let mut brk: Vec<f64> = (1..8).map(|k| k as f64 / 8.0).filter(|&t| t > 0.3 && t < 0.8).collect();
            brk.insert(0, 0.3);
            brk.push(0.8);
            let gl = GaussLegendre::new(10);
            let direct: f64 = brk.windows(2).map(|w| gl.integrate(&f, w[0] + 1e-15, w[1], 1)).sum();
            assert!((sums.eval(emp.sorted_values(), xi) - 1.7 * direct).abs() < 1e-9, "x={xi}");
        }
    }

    #[test]
    fn measure_validation_and_parsing() {
        assert!(parse_measure_spec("").unwrap().is_zero());
        let mu = parse_measure_spec("atom:0.9,0.5; atom:0.95,0.5").unwrap();
        assert!((mu.total_variation() - 1.0).abs() < 1e-15);
        assert!(matches!(parse_measure_spec("spike:0.5,1"), Err(Error::Parse { .. })));
        assert!(parse_measure_spec("atom:0.5").is_err());
        assert!(parse_measure_spec("atom:1.5,1").is_err());
        assert!(parse_measure_spec("atom:0.5,1;atom:0.5,2").is_err());
        assert!(parse_measure_spec("band:0.2,0.5,1;band:0.4,0.6,1").is_err());
        assert!(parse_measure_spec("band:0.5,0.2,1").is_err());
        let tv = parse_measure_spec("atom:0.3,-2;band:0.4,0.6,-1").unwrap().total_variation();
        assert!((tv - 2.2).abs() < 1e-15);
    }

    fn measure_strategy() -> impl Strategy<Value = SignedMeasure> {
        (
            prop::collection::vec((0.01f64..0.99, -3.0f64..3.0), 0..4),
            prop::collection::vec((0.01f64..0.97, 0.005f64..0.2, -3.0f64..3.0), 0..3),
        )
            .prop_filter_map("valid measure", |(a, b)| {
                let atoms = a.into_iter().map(|(p, weight)| Atom { p, weight }).collect();
                let mut start = 0.0;
                let mut bands = Vec::new();
                for (a, w, height) in b {
                    let a = a.max(start + 1e-3);
                    let b = (a + w).min(0.98);
                    if a < b {
                        bands.push(Band { a, b, height });
                        start = b;
                    }
                }
                SignedMeasure::new(atoms, bands).ok()
            })
    }

    proptest! {
        #[test]
        fn spec_round_trips(mu in measure_strategy()) {
            prop_assert_eq!(parse_measure_spec(&mu.to_string()).unwrap(), mu);
        }

        #[test]
        fn parser_never_panics(s in "\\PC{0,40}") {
            let _ = parse_measure_spec(&s);
        }

        #[test]
        fn rvar_additivity(p in 0.01f64..0.3, q in 0.35f64..0.6, r in 0.65f64..0.99) {
            let m = Lomax::new(3.0, 1.0).unwrap();
            let lhs = (q - p) * rvar(&m, p, q).unwrap() + (r - q) * rvar(&m, q, r).unwrap();
            prop_assert!((lhs - (r - p) * rvar(&m, p, r).unwrap()).abs() < 1e-9);
        }

        #[test]
        fn empirical_estimate_is_spectral_integral(
            mu in measure_strategy(),
            sample in prop::collection::vec(-5.0f64..5.0, 1..40),
        ) {
            let emp = EmpiricalDistribution::new(&sample).unwrap();
            let exact = distortion_risk(&emp, &mu);
            let est = distortion_estimate(&sample, &mu, 0.9).unwrap().estimate;
            let scale = 1.0 + mu.total_variation() * 5.0 / 0.02;
            prop_assert!((exact.unwrap() - est).abs() < 1e-7 * scale);
        }
    }
}
