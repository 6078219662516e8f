//! Numerical verification of the Calderon condition on the frequency side:
//! discrete sums over integer powers of the generators, continuous integrals
//! in exponential coordinates, and the averaging construction that turns a
//! window for a connected group into one for a cocompact discrete subgroup.
//!
//! The dual action is the right action on row vectors, `omega -> omega h`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{self, Matrix};
use crate::scalar::field::{Field, RealFloat};

#[derive(Debug, Error)]
pub enum CalderonError {
    #[error("truncation insufficient: {0}")]
    TruncationInsufficient(String),
    #[error("quadrature unstable: {0}")]
    QuadratureUnstable(String),
    #[error("invalid input: {0}")]
    BadInput(String),
}

/// Coordinate chart for one axis of a window grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Chart {
    /// the frequency coordinate itself
    Linear,
    /// log2 of a positive coordinate (zero window for nonpositive values)
    Log2Pos,
    /// log2 of the absolute value
    Log2Abs,
    /// ratio against another coordinate: `omega[i] / omega[k]`
    RatioOver(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub chart: Chart,
    pub origin: f64,
    pub spacing: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum WindowDescriptor {
    /// product of per-axis half-open intervals in chart coordinates
    IndicatorBox {
        #[serde(default)]
        charts: Vec<Chart>,
        lower: Vec<f64>,
        upper: Vec<f64>,
    },
    /// `r0 <= |omega| < r1`
    IndicatorAnnulus { r0: f64, r1: f64 },
    /// multilinear interpolation on a chart grid; zero outside
    Tabulated { axes: Vec<Axis>, values: Vec<f64> },
}

/// Squared Fourier-side window `|psi-hat|^2 = normalization * shape`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralWindow {
    pub descriptor: WindowDescriptor,
    pub normalization: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencySample {
    pub omega: Vec<f64>,
    pub weight: f64,
}

fn chart_coord(chart: Chart, omega: &[f64], i: usize) -> Option<f64> {
    match chart {
        Chart::Linear => Some(omega[i]),
        Chart::Log2Pos => (omega[i] > 0.0).then(|| omega[i].log2()),
        Chart::Log2Abs => (omega[i] != 0.0).then(|| omega[i].abs().log2()),
        Chart::RatioOver(k) => (omega[k] != 0.0).then(|| omega[i] / omega[k]),
    }
}

impl SpectralWindow {
    pub fn indicator_box(lower: Vec<f64>, upper: Vec<f64>, normalization: f64) -> Self {
        SpectralWindow {
            descriptor: WindowDescriptor::IndicatorBox {
                charts: vec![Chart::Linear; lower.len()],
                lower,
                upper,
            },
            normalization,
        }
    }

    pub fn annulus(r0: f64, r1: f64, normalization: f64) -> Self {
        SpectralWindow {
            descriptor: WindowDescriptor::IndicatorAnnulus { r0, r1 },
            normalization,
        }
    }

    /// `|psi-hat(omega)|^2`.
    pub fn power(&self, omega: &[f64]) -> f64 {
        self.normalization * self.shape(omega)
    }

    fn shape(&self, omega: &[f64]) -> f64 {
        match &self.descriptor {
            WindowDescriptor::IndicatorBox { charts, lower, upper } => {
                for i in 0..lower.len() {
                    let chart = charts.get(i).copied().unwrap_or(Chart::Linear);
                    match chart_coord(chart, omega, i) {
                        Some(c) if lower[i] <= c && c < upper[i] => {}
                        _ => return 0.0,
                    }
                }
                1.0
            }
            WindowDescriptor::IndicatorAnnulus { r0, r1 } => {
                let r = omega.iter().map(|x| x * x).sum::<f64>().sqrt();
                if *r0 <= r && r < *r1 {
                    1.0
                } else {
                    0.0
                }
            }
            WindowDescriptor::Tabulated { axes, values } => {
                let mut coords = Vec::with_capacity(axes.len());
                for (i, ax) in axes.iter().enumerate() {
                    match chart_coord(ax.chart, omega, i) {
                        Some(c) => coords.push((c - ax.origin) / ax.spacing),
                        None => return 0.0,
                    }
                }
                multilinear(axes, values, &coords)
            }
        }
    }
}

fn multilinear(axes: &[Axis], values: &[f64], coords: &[f64]) -> f64 {
    // cell-relative interpolation; zero outside the grid
    let ndim = axes.len();
    let mut base = Vec::with_capacity(ndim);
    let mut frac = Vec::with_capacity(ndim);
    for (ax, &c) in axes.iter().zip(coords) {
        if c < 0.0 || c > (ax.count - 1) as f64 {
            return 0.0;
        }
        let i = (c.floor() as usize).min(ax.count - 2.max(1) - 0);
        let i = i.min(ax.count.saturating_sub(2));
        base.push(i);
        frac.push(c - i as f64);
    }
    let strides: Vec<usize> = {
        let mut s = vec![1usize; ndim];
        for i in (0..ndim.saturating_sub(1)).rev() {
            s[i] = s[i + 1] * axes[i + 1].count;
        }
        s
    };
    let mut acc = 0.0;
    for corner in 0..(1usize << ndim) {
        let mut weight = 1.0;
        let mut idx = 0usize;
        for d in 0..ndim {
            let hi = (corner >> d) & 1 == 1;
            let f = frac[d];
            weight *= if hi { f } else { 1.0 - f };
            let pos = base[d] + usize::from(hi);
            idx += pos.min(axes[d].count - 1) * strides[d];
        }
        if weight != 0.0 {
            acc += weight * values[idx];
        }
    }
    acc
}

/// Seeded pseudo-random frequency samples, bounded away from zero.
pub fn seeded_samples(dim: usize, count: usize, seed: u64) -> Vec<FrequencySample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let omega: Vec<f64> = (0..dim).map(|_| rng.gen_range(-4.0..4.0)).collect();
        let norm = omega.iter().map(|x| x.abs()).fold(0.0, f64::max);
        if norm < 0.25 {
            continue;
        }
        out.push(FrequencySample { omega, weight: 1.0 });
    }
    out
}

type FMat = Matrix<RealFloat>;

pub fn fmat(rows: &[&[f64]]) -> FMat {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&v| RealFloat::with_default_eps(v)).collect())
            .collect(),
    )
}

/// Row-vector right action `omega * h`.
pub fn dual_apply(omega: &[f64], h: &FMat) -> Vec<f64> {
    let n = h.cols();
    (0..n)
        .map(|j| {
            (0..h.rows())
                .map(|i| omega[i] * h.get(i, j).value)
                .sum::<f64>()
        })
        .collect()
}

/// Matrix exponential by scaling and squaring with a Taylor series.
pub fn expm(a: &FMat) -> FMat {
    let n = a.rows();
    let norm = (0..n)
        .map(|i| (0..n).map(|j| a.get(i, j).value.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let s = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scale = RealFloat::with_default_eps(1.0 / 2f64.powi(s as i32));
    let t = a.scale(&scale);
    let mut term = FMat::identity(n);
    let mut acc = FMat::identity(n);
    for k in 1..=20 {
        term = term.matmul(&t).scale(&RealFloat::with_default_eps(1.0 / k as f64));
        acc = acc.add(&term);
    }
    for _ in 0..s {
        acc = acc.matmul(&acc);
    }
    acc
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiscreteResidual {
    pub per_sample: Vec<f64>,
    pub max_residual: f64,
}

/// Max over samples of `|sum_{|m|_inf <= M} power(omega A^{-m}) - 1|`.
/// Fails when the outermost shell still contributes (the truncation would
/// then miss mass).
pub fn discrete_calderon_residual(
    generators: &[FMat],
    window: &SpectralWindow,
    samples: &[FrequencySample],
    truncation: usize,
) -> Result<DiscreteResidual, CalderonError> {
    let k = generators.len();
    if k == 0 {
        return Err(CalderonError::BadInput("no generators".into()));
    }
    let m = truncation as i64;
    let width = 2 * truncation + 1;
    if width.pow(k as u32) > 2_000_000 {
        return Err(CalderonError::BadInput(
            "truncation lattice too large".into(),
        ));
    }
    for s in samples {
        if s.omega.iter().all(|&x| x == 0.0) {
            return Err(CalderonError::BadInput("zero frequency sample".into()));
        }
    }
    // cache powers A_i^{-j}, j in [-M, M]
    let mut powers: Vec<Vec<FMat>> = Vec::with_capacity(k);
    for g in generators {
        let inv = linalg::inverse(g)
            .map_err(|_| CalderonError::BadInput("generator is singular".into()))?;
        let n = g.rows();
        let mut per = vec![FMat::identity(n); width];
        for j in 1..=m {
            per[(m + j) as usize] = per[(m + j - 1) as usize].matmul(&inv);
            per[(m - j) as usize] = per[(m - j + 1) as usize].matmul(g);
        }
        powers.push(per);
    }
    let mut per_sample = Vec::with_capacity(samples.len());
    let mut max_residual: f64 = 0.0;
    let mut lattice = vec![0i64; k];
    for s in samples {
        let mut sum = 0.0;
        let mut boundary_hit = false;
        loop {
            // omega * prod A_i^{-m_i}
            let mut w = s.omega.clone();
            for (i, &mi) in lattice.iter().enumerate() {
                w = dual_apply(&w, &powers[i][(m + mi) as usize]);
            }
            let p = window.power(&w);
            if p > 0.0 && lattice.iter().any(|&mi| mi.abs() == m) {
                boundary_hit = true;
            }
            sum += p;
            // advance the lattice counter
            let mut d = 0;
            loop {
                if d == k {
                    break;
                }
                lattice[d] += 1;
                if lattice[d] <= m {
                    break;
                }
                lattice[d] = -m;
                d += 1;
            }
            if d == k {
                break;
            }
        }
        if boundary_hit {
            return Err(CalderonError::TruncationInsufficient(format!(
                "window mass on the truncation shell |m| = {truncation} at omega = {:?}",
                s.omega
            )));
        }
        let r = (sum - 1.0).abs();
        per_sample.push(r);
        max_residual = max_residual.max(r);
    }
    Ok(DiscreteResidual {
        per_sample,
        max_residual,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ContinuousResidual {
    /// estimated orbit constant (mean of the nonvanishing sample integrals)
    pub constant: f64,
    pub per_sample: Vec<f64>,
    pub max_residual: f64,
}

#[derive(Debug, Clone)]
pub struct QuadratureSpec {
    pub points_per_axis: usize,
    pub half_width: f64,
    /// integrand mass at the box boundary must stay below this fraction of
    /// the bulk maximum
    pub boundary_fraction: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            points_per_axis: 257,
            half_width: 12.0,
            boundary_fraction: 1e-3,
        }
    }
}

fn scalar_generator(b: &FMat) -> Option<f64> {
    let n = b.rows();
    let v = b.get(0, 0).value;
    for i in 0..n {
        for j in 0..n {
            let want = if i == j { v } else { 0.0 };
            if (b.get(i, j).value - want).abs() > 1e-12 {
                return None;
            }
        }
    }
    (v != 0.0).then_some(v)
}

/// Exact orbit integral for one-parameter scalar dilations and an indicator
/// window: the overlap is an interval in the dilation parameter.
fn scalar_orbit_integral(b: f64, window: &SpectralWindow, omega: &[f64]) -> Option<f64> {
    // omega * exp(-t b I) = e^{-tb} omega; find the t-interval where the
    // scaled vector lies in the support, whose indicator has unit shape
    let gamma_interval = match &window.descriptor {
        WindowDescriptor::IndicatorBox { charts, lower, upper } => {
            if charts.iter().any(|c| *c != Chart::Linear) {
                return None;
            }
            // per axis: lower_i <= g*omega_i < upper_i
            let mut lo = 0.0_f64;
            let mut hi = f64::INFINITY;
            for i in 0..lower.len() {
                let w = omega[i];
                if w == 0.0 {
                    if lower[i] <= 0.0 && 0.0 < upper[i] {
                        continue;
                    }
                    return Some(0.0);
                }
                let (a, b2) = if w > 0.0 {
                    (lower[i] / w, upper[i] / w)
                } else {
                    (upper[i] / w, lower[i] / w)
                };
                lo = lo.max(a.max(0.0));
                hi = hi.min(b2);
            }
            (lo, hi)
        }
        WindowDescriptor::IndicatorAnnulus { r0, r1 } => {
            let r = omega.iter().map(|x| x * x).sum::<f64>().sqrt();
            if r == 0.0 {
                return Some(0.0);
            }
            (r0 / r, r1 / r)
        }
        WindowDescriptor::Tabulated { .. } => return None,
    };
    let (glo, ghi) = gamma_interval;
    if !(glo < ghi) || ghi <= 0.0 {
        return Some(0.0);
    }
    let glo = glo.max(f64::MIN_POSITIVE);
    // gamma = e^{-tb}: the t-length of the gamma interval is |ln(ghi/glo)/b|
    Some(window.normalization * (ghi.ln() - glo.ln()).abs() / b.abs())
}

/// Max over samples of `|integral - c|`, integrating `power(omega exp(-sum
/// t_i B_i))` over a parameter box (Haar measure = Lebesgue in exponential
/// coordinates). `c` is estimated as the mean of the nonvanishing sample
/// integrals; a window admissible for the group makes every integral equal.
pub fn continuous_calderon_residual(
    h_basis: &[FMat],
    window: &SpectralWindow,
    samples: &[FrequencySample],
    quad: &QuadratureSpec,
) -> Result<ContinuousResidual, CalderonError> {
    let k = h_basis.len();
    if k == 0 {
        return Err(CalderonError::BadInput("empty Lie algebra basis".into()));
    }
    let scalar = if k == 1 { scalar_generator(&h_basis[0]) } else { None };

    let mut integrals = Vec::with_capacity(samples.len());
    for s in samples {
        if let Some(b) = scalar {
            if let Some(v) = scalar_orbit_integral(b, window, &s.omega) {
                integrals.push(v);
                continue;
            }
        }
        integrals.push(quadrature_integral(h_basis, window, &s.omega, quad)?);
    }

    let nonzero: Vec<f64> = integrals.iter().copied().filter(|v| *v > 0.0).collect();
    let constant = if nonzero.is_empty() {
        0.0
    } else {
        nonzero.iter().sum::<f64>() / nonzero.len() as f64
    };
    let per_sample: Vec<f64> = integrals.iter().map(|v| (v - constant).abs()).collect();
    let max_residual = per_sample.iter().copied().fold(0.0, f64::max);
    Ok(ContinuousResidual {
        constant,
        per_sample,
        max_residual,
    })
}

fn quadrature_integral(
    h_basis: &[FMat],
    window: &SpectralWindow,
    omega: &[f64],
    quad: &QuadratureSpec,
) -> Result<f64, CalderonError> {
    let k = h_basis.len();
    let n_pts = quad.points_per_axis.max(3);
    if n_pts.pow(k as u32) > 5_000_000 {
        return Err(CalderonError::BadInput("quadrature grid too large".into()));
    }
    let mut half = quad.half_width;
    for _attempt in 0..4 {
        let step = 2.0 * half / n_pts as f64;
        let eval = |t: &[i64]| -> f64 {
            let mut x = Matrix::zero(h_basis[0].rows(), h_basis[0].cols());
            for (bi, &ti) in h_basis.iter().zip(t.iter()) {
                let coord = -half + (ti as f64 + 0.5) * step;
                x = x.add(&bi.scale(&RealFloat::with_default_eps(-coord)));
            }
            window.power(&dual_apply(omega, &expm(&x)))
        };
        let mut bulk_max: f64 = 0.0;
        let mut boundary_max: f64 = 0.0;
        let mut sum = 0.0;
        let mut idx = vec![0i64; k];
        loop {
            let v = eval(&idx);
            sum += v;
            let on_boundary = idx
                .iter()
                .any(|&i| i == 0 || i == n_pts as i64 - 1);
            if on_boundary {
                boundary_max = boundary_max.max(v);
            } else {
                bulk_max = bulk_max.max(v);
            }
            let mut d = 0;
            loop {
                if d == k {
                    break;
                }
                idx[d] += 1;
                if idx[d] < n_pts as i64 {
                    break;
                }
                idx[d] = 0;
                d += 1;
            }
            if d == k {
                break;
            }
        }
        if boundary_max <= quad.boundary_fraction * bulk_max.max(f64::MIN_POSITIVE) {
            return Ok(sum * step.powi(k as i32));
        }
        half *= 2.0;
    }
    Err(CalderonError::QuadratureUnstable(
        "integrand is not negligible at the parameter box boundary".into(),
    ))
}

/// Output grid for [`discretize_window`].
#[derive(Debug, Clone)]
pub struct DiscretizeSpec {
    pub axes: Vec<Axis>,
    pub quadrature_points: usize,
}

/// Average a window admissible for the connected group `exp(span(h_basis))`
/// over a fundamental domain `C` (a box in exponential coordinates) of the
/// quotient by a discrete cocompact subgroup:
/// `power_0(omega) = integral_C power_1(omega exp(-t)) dt`. The result,
/// tabulated on the requested chart grid, satisfies the discrete Calderon
/// condition for the subgroup.
pub fn discretize_window(
    window: &SpectralWindow,
    c_box: &[(f64, f64)],
    h_basis: &[FMat],
    spec: &DiscretizeSpec,
) -> Result<SpectralWindow, CalderonError> {
    let k = h_basis.len();
    if c_box.len() != k {
        return Err(CalderonError::BadInput(
            "fundamental domain box must have one interval per basis element".into(),
        ));
    }
    let volume: f64 = c_box.iter().map(|(a, b)| b - a).product();
    if volume <= 0.0 {
        return Err(CalderonError::QuadratureUnstable(
            "fundamental domain has zero volume".into(),
        ));
    }
    let scalar = if k == 1 { scalar_generator(&h_basis[0]) } else { None };
    let n_pts = spec.quadrature_points.max(2);
    if n_pts.pow(k as u32) > 5_000_000 {
        return Err(CalderonError::BadInput("quadrature grid too large".into()));
    }

    // enumerate output nodes, reconstruct a representative frequency from the
    // chart coordinates, and integrate over the box
    let counts: Vec<usize> = spec.axes.iter().map(|a| a.count).collect();
    let total: usize = counts.iter().product();
    if total > 50_000_000 {
        return Err(CalderonError::BadInput("output grid too large".into()));
    }
    let mut values = vec![0.0; total];
    let mut idx = vec![0usize; spec.axes.len()];
    for flat in 0..total {
        // chart coords -> omega; ratio charts resolved after their base axis
        let coords: Vec<f64> = spec
            .axes
            .iter()
            .zip(&idx)
            .map(|(ax, &i)| ax.origin + ax.spacing * i as f64)
            .collect();
        let mut omega = vec![f64::NAN; spec.axes.len()];
        for (i, ax) in spec.axes.iter().enumerate() {
            match ax.chart {
                Chart::Linear => omega[i] = coords[i],
                Chart::Log2Pos | Chart::Log2Abs => omega[i] = 2f64.powf(coords[i]),
                Chart::RatioOver(_) => {}
            }
        }
        for (i, ax) in spec.axes.iter().enumerate() {
            if let Chart::RatioOver(base) = ax.chart {
                if omega[base].is_nan() {
                    return Err(CalderonError::BadInput(
                        "ratio chart must reference a resolved axis".into(),
                    ));
                }
                omega[i] = coords[i] * omega[base];
            }
        }

        values[flat] = match scalar {
            Some(b) => scalar_box_integral(b, window, &omega, c_box[0])
                .unwrap_or_else(|| midpoint_box_integral(h_basis, window, &omega, c_box, n_pts)),
            None => midpoint_box_integral(h_basis, window, &omega, c_box, n_pts),
        };

        let mut d = spec.axes.len();
        while d > 0 {
            d -= 1;
            idx[d] += 1;
            if idx[d] < counts[d] {
                break;
            }
            idx[d] = 0;
        }
    }
    Ok(SpectralWindow {
        descriptor: WindowDescriptor::Tabulated {
            axes: spec.axes.clone(),
            values,
        },
        normalization: 1.0,
    })
}

/// Exact `integral_{c0}^{c1} power(omega e^{-t b}) dt` for indicator windows.
fn scalar_box_integral(
    b: f64,
    window: &SpectralWindow,
    omega: &[f64],
    c: (f64, f64),
) -> Option<f64> {
    let gamma_interval = match &window.descriptor {
        WindowDescriptor::IndicatorBox { charts, lower, upper } => {
            if charts.iter().any(|ch| *ch != Chart::Linear) {
                return None;
            }
            let mut lo = 0.0_f64;
            let mut hi = f64::INFINITY;
            for i in 0..lower.len() {
                let w = omega[i];
                if w == 0.0 {
                    if lower[i] <= 0.0 && 0.0 < upper[i] {
                        continue;
                    }
                    return Some(0.0);
                }
                let (a, b2) = if w > 0.0 {
                    (lower[i] / w, upper[i] / w)
                } else {
                    (upper[i] / w, lower[i] / w)
                };
                lo = lo.max(a);
                hi = hi.min(b2);
            }
            (lo, hi)
        }
        WindowDescriptor::IndicatorAnnulus { r0, r1 } => {
            let r = omega.iter().map(|x| x * x).sum::<f64>().sqrt();
            if r == 0.0 {
                return Some(0.0);
            }
            (r0 / r, r1 / r)
        }
        WindowDescriptor::Tabulated { .. } => return None,
    };
    let (glo, ghi) = gamma_interval;
    if !(glo < ghi) || ghi <= 0.0 {
        return Some(0.0);
    }
    let glo = glo.max(f64::MIN_POSITIVE);
    // gamma = e^{-tb} in [glo, ghi) <=> t in the corresponding interval
    let (t_lo, t_hi) = if b > 0.0 {
        (-(ghi.ln()) / b, -(glo.ln()) / b)
    } else {
        (-(glo.ln()) / b, -(ghi.ln()) / b)
    };
    let lo = t_lo.max(c.0);
    let hi = t_hi.min(c.1);
    Some(window.normalization * (hi - lo).max(0.0))
}

fn midpoint_box_integral(
    h_basis: &[FMat],
    window: &SpectralWindow,
    omega: &[f64],
    c_box: &[(f64, f64)],
    n_pts: usize,
) -> f64 {
    let k = h_basis.len();
    let steps: Vec<f64> = c_box.iter().map(|(a, b)| (b - a) / n_pts as f64).collect();
    let cell: f64 = steps.iter().product();
    let mut sum = 0.0;
    let mut idx = vec![0usize; k];
    loop {
        let mut x = Matrix::zero(h_basis[0].rows(), h_basis[0].cols());
        for (d, bi) in h_basis.iter().enumerate() {
            let t = c_box[d].0 + (idx[d] as f64 + 0.5) * steps[d];
            x = x.add(&bi.scale(&RealFloat::with_default_eps(-t)));
        }
        sum += window.power(&dual_apply(omega, &expm(&x)));
        let mut d = 0;
        loop {
            if d == k {
                return sum * cell;
            }
            idx[d] += 1;
            if idx[d] < n_pts {
                break;
            }
            idx[d] = 0;
            d += 1;
        }
    }
}
