//! Cross-checks between the closed forms and the particle-by-particle boost.
//!
//! Every suite compares two independently computed quantities and reports
//! the worst deviation it saw. Random samples come from a seeded ChaCha
//! stream, so a report is reproducible from its seed.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cooper::{
    self, boost_pair, closed_form, decompose, gamma_big, gamma_big_printed, initial_pair,
    ultrarelativistic_limit, SpinKind, VelocityParity,
};
use crate::error::{Error, Result};
use crate::kinematics::{wigner_pair, BoostGeometry, Speed};
use crate::qmath::{c, Complex, StateVector, HERMITIAN_TOL, ONE};
use crate::single_particle::{
    boost_single, boost_single_oracle, entanglement_entropy, reduced_velocity_density,
    SpinOrientation,
};

pub const SCHEMA_VERSION: u32 = 1;

/// Speed used for the numerical ultrarelativistic checks.
pub const NEAR_LIGHT_BETA: f64 = 1.0 - 1e-8;

pub const SINGLE_EQUIVALENCE_TOL: f64 = 1e-12;
pub const PAIR_EQUIVALENCE_TOL: f64 = 1e-10;
pub const WEIGHT_LAW_TOL: f64 = 1e-10;
pub const DECOUPLING_TOL: f64 = 1e-12;
pub const NORM_TOL: f64 = 1e-12;
pub const ETA_TOL: f64 = 1e-12;
pub const SWAP_OVERLAP_TOL: f64 = 1e-6;
pub const LIMIT_TOL: f64 = 5e-4;
pub const SLOPE_TOL: f64 = 0.01;
pub const MIN_R_SQUARED: f64 = 0.9999;

/// Slack allowed when checking that a convergence tail is non-increasing,
/// so deviations already at roundoff level do not register as growth.
pub const MONOTONE_SLACK: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub max_abs_deviation: f64,
    /// Phase applied to the second state to align it with the first.
    pub aligned_phase: Complex,
    pub pass: bool,
    pub tolerance: f64,
}

/// Compare two kets up to a global phase.
///
/// Both states are rotated so the component with the largest combined
/// modulus `|a_k|² + |b_k|²` is real and positive, then the largest
/// component-wise difference is reported. The choice of `k` is symmetric in
/// the arguments, so swapping them gives the same deviation.
pub fn compare_states(a: &StateVector, b: &StateVector, tol: f64) -> Result<ComparisonReport> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let mut pivot = 0;
    let mut best = -1.0;
    for (k, (x, y)) in a.amps().iter().zip(b.amps()).enumerate() {
        let m = x.norm_sqr() + y.norm_sqr();
        if m > best {
            best = m;
            pivot = k;
        }
    }
    let unit = |z: Complex| if z.norm() > 0.0 { z / z.norm() } else { ONE };
    let pa = unit(a[pivot]).conj();
    let pb = unit(b[pivot]).conj();
    let deviation = a
        .amps()
        .iter()
        .zip(b.amps())
        .map(|(x, y)| (x * pa - y * pb).norm())
        .fold(0.0, f64::max);
    Ok(ComparisonReport {
        max_abs_deviation: deviation,
        aligned_phase: pb / pa,
        pass: deviation <= tol,
        tolerance: tol,
    })
}

/// Least-squares line through `(x, y)` pairs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExponentFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub samples: usize,
}

pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Result<ExponentFit> {
    let n = xs.len();
    if n != ys.len() {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: ys.len(),
        });
    }
    if n < 8 {
        return Err(Error::DegenerateGrid(format!(
            "need at least 8 points, got {n}"
        )));
    }
    if xs.iter().chain(ys).any(|v| !v.is_finite()) {
        return Err(Error::DegenerateGrid("non-finite sample".into()));
    }
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    if sxx <= 0.0 {
        return Err(Error::DegenerateGrid("all abscissae coincide".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        ((sxy * sxy) / (sxx * syy)).clamp(0.0, 1.0)
    };
    Ok(ExponentFit {
        slope,
        intercept,
        r_squared,
        samples: n,
    })
}

fn check_theta_grid(theta_grid: &[f64]) -> Result<()> {
    if theta_grid.len() < 8 {
        return Err(Error::DegenerateGrid(format!(
            "theta grid needs at least 8 points, got {}",
            theta_grid.len()
        )));
    }
    if let Some(t) = theta_grid.iter().find(|&&t| !(t > 0.0 && t <= FRAC_PI_2)) {
        return Err(Error::DegenerateGrid(format!(
            "theta {t} outside (0, pi/2]"
        )));
    }
    Ok(())
}

/// Γ recovered from the singlet weight of a particle-by-particle boost,
/// `Γ = (1 - w) / w`.
pub fn measured_gamma(g: &BoostGeometry) -> f64 {
    let s = SpinOrientation::along_z();
    let boosted = boost_pair(g, &initial_pair(SpinKind::Singlet, s));
    let w = decompose(&boosted, s).weight(VelocityParity::Symmetric, SpinKind::Singlet);
    (1.0 - w) / w
}

/// Fit `log Γ` against `log sin θ` at fixed speeds, with Γ measured from
/// the boosted singlet weight.
pub fn fit_gamma_exponent(v1: Speed, v2: Speed, theta_grid: &[f64]) -> Result<ExponentFit> {
    check_theta_grid(theta_grid)?;
    if v1.is_zero() || v2.is_zero() {
        return Err(Error::DegenerateGrid("zero speed gives Γ = 0".into()));
    }
    let mut xs = Vec::with_capacity(theta_grid.len());
    let mut ys = Vec::with_capacity(theta_grid.len());
    for &theta in theta_grid {
        let g = BoostGeometry::new(v1, v2, theta)?;
        xs.push(theta.sin().ln());
        ys.push(measured_gamma(&g).ln());
    }
    linear_fit(&xs, &ys)
}

/// The same fit applied to the single-power `sin θ` form of Γ.
pub fn fit_printed_gamma_exponent(
    v1: Speed,
    v2: Speed,
    theta_grid: &[f64],
) -> Result<ExponentFit> {
    check_theta_grid(theta_grid)?;
    let mut xs = Vec::with_capacity(theta_grid.len());
    let mut ys = Vec::with_capacity(theta_grid.len());
    for &theta in theta_grid {
        let g = BoostGeometry::new(v1, v2, theta)?;
        xs.push(theta.sin().ln());
        ys.push(gamma_big_printed(&g).value.ln());
    }
    linear_fit(&xs, &ys)
}

#[derive(Debug, Clone, Serialize)]
pub struct GammaExponentDiagnostic {
    pub beta1: f64,
    pub beta2: f64,
    pub theta_grid_deg: Vec<f64>,
    /// Fit to Γ measured from the boosted singlet.
    pub measured: ExponentFit,
    /// Fit to the single-power `sin θ` expression.
    pub printed_form: ExponentFit,
    pub printed_form_slope_mismatch: f64,
    pub note: String,
    pub pass: bool,
}

/// θ from 10° to 80° in 10° steps.
pub fn default_exponent_grid() -> Vec<f64> {
    (1..=8).map(|k| (10.0 * k as f64).to_radians()).collect()
}

pub fn gamma_exponent_diagnostic(v1: Speed, v2: Speed) -> Result<GammaExponentDiagnostic> {
    let grid = default_exponent_grid();
    let measured = fit_gamma_exponent(v1, v2, &grid)?;
    let printed = fit_printed_gamma_exponent(v1, v2, &grid)?;
    let mismatch = measured.slope - printed.slope;
    let pass = (measured.slope - 2.0).abs() <= SLOPE_TOL && measured.r_squared >= MIN_R_SQUARED;
    Ok(GammaExponentDiagnostic {
        beta1: v1.beta(),
        beta2: v2.beta(),
        theta_grid_deg: grid.iter().map(|t| t.to_degrees()).collect(),
        measured,
        printed_form: printed,
        printed_form_slope_mismatch: mismatch,
        note: format!(
            "boosted singlet weight gives Gamma ~ sin^{:.4}(theta); the single-power \
             sin(theta) expression fits sin^{:.4}(theta); Gamma = tan^2(omega+ + omega-) \
             carries sin^2(theta)",
            measured.slope, printed.slope
        ),
        pass,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergencePoint {
    pub beta: f64,
    pub deviation: f64,
}

/// Deviation between the finite-speed closed form (both speeds β) and the
/// ultrarelativistic limit state, for each β in the grid.
pub fn convergence_scan(
    kind: SpinKind,
    s: SpinOrientation,
    theta: f64,
    beta_grid: &[f64],
) -> Result<Vec<ConvergencePoint>> {
    if beta_grid.windows(2).any(|w| w[1].partial_cmp(&w[0]) != Some(std::cmp::Ordering::Greater)) {
        return Err(Error::DegenerateGrid(
            "beta grid must be strictly increasing".into(),
        ));
    }
    let limit = ultrarelativistic_limit(kind, theta, s)?;
    beta_grid
        .iter()
        .map(|&beta| {
            let g = BoostGeometry::from_betas(beta, beta, theta)?;
            let finite = closed_form(kind, &g, s);
            let report = compare_states(&finite.amps, &limit.amps, LIMIT_TOL)?;
            Ok(ConvergencePoint {
                beta,
                deviation: report.max_abs_deviation,
            })
        })
        .collect()
}

/// `1 - 10^-k` for `k = 1..=8`; ends at [`NEAR_LIGHT_BETA`].
pub fn default_beta_grid() -> Vec<f64> {
    (1..=8).map(|k| 1.0 - 10f64.powi(-k)).collect()
}

/// True when each deviation is at most the previous one plus
/// [`MONOTONE_SLACK`].
pub fn is_non_increasing(points: &[ConvergencePoint]) -> bool {
    points
        .windows(2)
        .all(|w| w[1].deviation <= w[0].deviation + MONOTONE_SLACK)
}

/// Seeded sampler over non-degenerate geometries and spin orientations.
pub struct GeometrySampler {
    rng: ChaCha8Rng,
}

impl GeometrySampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn sample(&mut self) -> (BoostGeometry, SpinOrientation) {
        let b1 = self.rng.gen_range(0.05..0.95);
        let b2 = self.rng.gen_range(0.05..0.95);
        let theta = self.rng.gen_range(0.05..PI - 0.05);
        let phi = self.rng.gen_range(0.0..=PI);
        let eta = self.rng.gen_range(0.0..TAU);
        (
            BoostGeometry::from_betas(b1, b2, theta).expect("sampled speeds are valid"),
            SpinOrientation::new(phi, eta).expect("finite angles"),
        )
    }

    pub fn take(seed: u64, n: usize) -> Vec<(BoostGeometry, SpinOrientation)> {
        let mut s = Self::new(seed);
        (0..n).map(|_| s.sample()).collect()
    }
}

/// Inputs for [`run_verification`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub samples: usize,
    pub seed: u64,
    /// Added to the first amplitude of every closed-form state before it is
    /// compared with the oracle. Zero for a normal run; non-zero values
    /// exercise the failure path.
    pub perturbation: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            samples: 1000,
            seed: 20_100_517,
            perturbation: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub detail: String,
}

impl SuiteResult {
    fn at_most(name: &str, max_deviation: f64, tolerance: f64, detail: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            max_deviation,
            tolerance,
            pass: max_deviation <= tolerance,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub seed: u64,
    pub samples: usize,
    pub perturbation: f64,
    pub suites: Vec<SuiteResult>,
    pub gamma_exponent: GammaExponentDiagnostic,
    pub pass: bool,
}

fn perturb(psi: &StateVector, eps: f64) -> StateVector {
    if eps == 0.0 {
        return psi.clone();
    }
    let mut amps = psi.amps().to_vec();
    amps[0] += c(eps, 0.0);
    StateVector::from_vec(amps)
}

fn max_of(values: impl Iterator<Item = f64>) -> f64 {
    values.fold(0.0, f64::max)
}

/// Per-sample measurements, computed in parallel and reduced in sample order.
#[derive(Debug, Clone, Copy, Default)]
struct SampleMetrics {
    single_equivalence: f64,
    pair_equivalence: f64,
    weight_law: f64,
    decoupling: f64,
    antisymmetry: f64,
    norm: f64,
    density: f64,
    eta_spread: f64,
}

const ETA_GRID_POINTS: usize = 8;

fn eta_grid() -> [f64; ETA_GRID_POINTS] {
    std::array::from_fn(|k| k as f64 * PI / 4.0)
}

/// Entropy and all 32 decomposition weights, the magnitudes that must not
/// depend on η.
fn eta_sensitive_magnitudes(g: &BoostGeometry, phi: f64, eta: f64) -> Vec<f64> {
    let s = SpinOrientation::new(phi, eta).expect("finite angles");
    let mut out = vec![entanglement_entropy(&boost_single(g, s))];
    for kind in SpinKind::ALL {
        let d = decompose(&boost_pair(g, &initial_pair(kind, s)), s);
        out.extend(d.weights().into_iter().map(|(_, _, w)| w));
    }
    out
}

/// Largest spread of any reported magnitude over the 8-point η grid.
pub fn eta_spread(g: &BoostGeometry, phi: f64) -> f64 {
    let rows: Vec<Vec<f64>> = eta_grid()
        .iter()
        .map(|&eta| eta_sensitive_magnitudes(g, phi, eta))
        .collect();
    let mut worst = 0.0f64;
    for j in 0..rows[0].len() {
        let (lo, hi) = rows.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| {
            (lo.min(r[j]), hi.max(r[j]))
        });
        worst = worst.max(hi - lo);
    }
    worst
}

fn density_defect(rho: &crate::qmath::DensityMatrix) -> f64 {
    let tr = rho.trace();
    let min_eig = rho.eigenvalues().first().copied().unwrap_or(0.0);
    rho.hermiticity_defect()
        .max((tr.re - 1.0).abs())
        .max(tr.im.abs())
        .max(-min_eig)
}

fn measure_sample(g: &BoostGeometry, s: SpinOrientation, eps: f64) -> SampleMetrics {
    let mut m = SampleMetrics::default();

    let closed = boost_single(g, s);
    let oracle = boost_single_oracle(g, s);
    m.single_equivalence = perturb(&closed.amps, eps)
        .max_abs_diff(&oracle.amps)
        .expect("equal dims");
    m.norm = (closed.amps.norm_sqr() - 1.0)
        .abs()
        .max((oracle.amps.norm_sqr() - 1.0).abs());
    m.density = density_defect(&reduced_velocity_density(&closed));

    let angles = wigner_pair(g);
    for kind in SpinKind::ALL {
        let start = initial_pair(kind, s);
        let boosted = boost_pair(g, &start);
        let formula = closed_form(kind, g, s);
        let cmp = compare_states(&perturb(&formula.amps, eps), &boosted.amps, PAIR_EQUIVALENCE_TOL)
            .expect("equal dims");
        m.pair_equivalence = m.pair_equivalence.max(cmp.max_abs_deviation);
        m.norm = m
            .norm
            .max((boosted.amps.norm_sqr() - 1.0).abs())
            .max((formula.amps.norm_sqr() - 1.0).abs());
        m.antisymmetry = m.antisymmetry.max(boosted.exchange_antisymmetry_defect());

        let d = decompose(&boosted, s);
        match kind {
            SpinKind::Singlet => {
                let w = d.weight(VelocityParity::Symmetric, SpinKind::Singlet);
                let by_angle = angles.sum().cos().powi(2);
                let by_gamma = 1.0 / (1.0 + gamma_big(g).value);
                m.weight_law = (w - by_angle).abs().max((w - by_gamma).abs());
                let tplus = VelocityParity::ALL
                    .iter()
                    .map(|&p| d.coefficient(p, SpinKind::TPlus).norm());
                m.decoupling = m.decoupling.max(max_of(tplus));
            }
            SpinKind::TPlus => {
                let singlet = VelocityParity::ALL
                    .iter()
                    .map(|&p| d.coefficient(p, SpinKind::Singlet).norm());
                m.decoupling = m.decoupling.max(max_of(singlet));
            }
            _ => {}
        }
    }

    m.eta_spread = eta_spread(g, s.phi);
    m
}

/// The four spin-swap checks near c: `(initial, φ, expected parity, expected spin)`.
pub const SWAP_CASES: [(SpinKind, f64, VelocityParity, SpinKind); 4] = [
    (SpinKind::Singlet, 0.0, VelocityParity::Antisymmetric, SpinKind::T0),
    (SpinKind::T0, 0.0, VelocityParity::Symmetric, SpinKind::Singlet),
    (SpinKind::Singlet, FRAC_PI_2, VelocityParity::Antisymmetric, SpinKind::TMinus),
    (SpinKind::TMinus, FRAC_PI_2, VelocityParity::Symmetric, SpinKind::Singlet),
];

/// Opening angles (degrees) for the near-c swap and conversion checks.
pub const NEAR_LIGHT_THETAS_DEG: [f64; 4] = [30.0, 60.0, 90.0, 120.0];

/// `|⟨target|boost(initial)⟩|²` at both speeds [`NEAR_LIGHT_BETA`].
pub fn swap_overlap(
    initial: SpinKind,
    phi: f64,
    parity: VelocityParity,
    target: SpinKind,
    theta: f64,
) -> f64 {
    let g = BoostGeometry::from_betas(NEAR_LIGHT_BETA, NEAR_LIGHT_BETA, theta)
        .expect("valid speed");
    let s = SpinOrientation::new(phi, 0.0).expect("finite angles");
    let boosted = boost_pair(&g, &initial_pair(initial, s));
    decompose(&boosted, s).weight(parity, target)
}

fn swap_suite() -> SuiteResult {
    let mut worst = 0.0f64;
    for &(kind, phi, parity, target) in &SWAP_CASES {
        for deg in NEAR_LIGHT_THETAS_DEG {
            let overlap = swap_overlap(kind, phi, parity, target, deg.to_radians());
            worst = worst.max(1.0 - overlap);
        }
    }
    SuiteResult::at_most(
        "symmetry_swaps",
        worst,
        SWAP_OVERLAP_TOL,
        "1 - overlap^2 for S<->T0 at phi=0 and S<->T- at phi=pi/2, beta = 1-1e-8, \
         theta in {30,60,90,120} deg",
    )
}

/// Opening angles (degrees) for the limit-convergence scans. The residual
/// at β = 1-1e-8 scales as 1/(γ sin θ), which exceeds the tolerance below
/// θ ≈ 34°.
pub const CONVERGENCE_THETAS_DEG: [f64; 3] = [60.0, 90.0, 120.0];

fn convergence_phis() -> Vec<f64> {
    (0..=6).map(|k| k as f64 * PI / 6.0).collect()
}

fn convergence_suite() -> Result<SuiteResult> {
    let grid = default_beta_grid();
    let mut worst_final = 0.0f64;
    let mut monotone = true;
    for kind in SpinKind::ALL {
        for deg in CONVERGENCE_THETAS_DEG {
            for phi in convergence_phis() {
                let s = SpinOrientation::new(phi, 0.0)?;
                let scan = convergence_scan(kind, s, deg.to_radians(), &grid)?;
                monotone &= is_non_increasing(&scan);
                worst_final = worst_final.max(scan.last().map_or(0.0, |p| p.deviation));
            }
        }
    }
    let mut r = SuiteResult::at_most(
        "limit_convergence",
        worst_final,
        LIMIT_TOL,
        format!(
            "closed forms vs ultrarelativistic limits, beta = 1-10^-k (k=1..8), \
             theta in {{60,90,120}} deg, 7 phi values; tail non-increasing: {monotone}"
        ),
    );
    r.pass &= monotone;
    Ok(r)
}

/// Run every oracle suite.
pub fn run_verification(cfg: &VerifyConfig) -> Result<VerifyReport> {
    if cfg.samples == 0 {
        return Err(Error::DegenerateGrid("samples must be positive".into()));
    }
    let draws = GeometrySampler::take(cfg.seed, cfg.samples);
    let metrics: Vec<SampleMetrics> = draws
        .par_iter()
        .map(|(g, s)| measure_sample(g, *s, cfg.perturbation))
        .collect();
    let worst = |f: fn(&SampleMetrics) -> f64| max_of(metrics.iter().map(f));

    let n = cfg.samples;
    let mut suites = vec![
        SuiteResult::at_most(
            "single_oracle_equivalence",
            worst(|m| m.single_equivalence),
            SINGLE_EQUIVALENCE_TOL,
            format!("closed-form single-particle state vs SU(2) branch rotation, {n} samples"),
        ),
        SuiteResult::at_most(
            "pair_oracle_equivalence",
            worst(|m| m.pair_equivalence),
            PAIR_EQUIVALENCE_TOL,
            format!("S/T0/T+/T- closed forms vs particle-by-particle boost, phase aligned, {n} samples"),
        ),
        SuiteResult::at_most(
            "singlet_weight_law",
            worst(|m| m.weight_law),
            WEIGHT_LAW_TOL,
            "boosted singlet weight vs cos^2(omega+ + omega-) and 1/(1+Gamma)",
        ),
        SuiteResult::at_most(
            "t_plus_singlet_decoupling",
            worst(|m| m.decoupling),
            DECOUPLING_TOL,
            "|T+| in boosted singlet and |S| in boosted T+",
        ),
        SuiteResult::at_most(
            "exchange_antisymmetry",
            worst(|m| m.antisymmetry),
            NORM_TOL,
            "max |psi + P psi| of boosted pairs",
        ),
        SuiteResult::at_most(
            "normalization",
            worst(|m| m.norm),
            NORM_TOL,
            "| |psi|^2 - 1 | over all boosted states",
        ),
        SuiteResult::at_most(
            "density_invariants",
            worst(|m| m.density),
            HERMITIAN_TOL,
            "Hermiticity, trace and positivity of reduced velocity densities",
        ),
        SuiteResult::at_most(
            "eta_independence",
            worst(|m| m.eta_spread),
            ETA_TOL,
            "spread of entropy and pair weights over an 8-point eta grid",
        ),
        swap_suite(),
        convergence_suite()?,
    ];

    let v = Speed::new(0.8)?;
    let gamma_exponent = gamma_exponent_diagnostic(v, v)?;
    suites.push(SuiteResult {
        name: "gamma_exponent".into(),
        max_deviation: (gamma_exponent.measured.slope - 2.0).abs(),
        tolerance: SLOPE_TOL,
        pass: gamma_exponent.pass,
        detail: format!(
            "slope {:.6}, r^2 {:.8}; single-power sin(theta) form has slope {:.6}",
            gamma_exponent.measured.slope,
            gamma_exponent.measured.r_squared,
            gamma_exponent.printed_form.slope
        ),
    });

    let pass = suites.iter().all(|s| s.pass);
    Ok(VerifyReport {
        schema_version: SCHEMA_VERSION,
        seed: cfg.seed,
        samples: cfg.samples,
        perturbation: cfg.perturbation,
        suites,
        gamma_exponent,
        pass,
    })
}

/// Weight left on the singlet after boosting a singlet at both speeds β.
pub fn residual_singlet_weight(beta: f64, theta: f64, phi: f64) -> Result<f64> {
    let g = BoostGeometry::from_betas(beta, beta, theta)?;
    let s = SpinOrientation::new(phi, 0.0)?;
    let boosted = boost_pair(&g, &cooper::initial_pair(SpinKind::Singlet, s));
    Ok(decompose(&boosted, s).spin_weight(SpinKind::Singlet))
}
