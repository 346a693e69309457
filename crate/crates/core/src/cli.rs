//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 bad input, 3 I/O
//! failure. Angles accept a `deg` or `rad` suffix; bare numbers follow
//! `--units` (radians by default). CSV numbers carry 17 significant digits.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cooper::{
    boost_pair, closed_form, decompose, gamma_big, gamma_big_printed, initial_pair, SpinKind,
    VelocityParity,
};
use crate::kinematics::{
    branch_velocities, d_factor, gamma, wigner_pair, BoostGeometry, Speed,
};
use crate::oracle::{self, compare_states, VerifyConfig, PAIR_EQUIVALENCE_TOL, SCHEMA_VERSION};
use crate::qmath::Complex;
use crate::single_particle::{
    boost_single, entanglement_entropy, entropy_limit_formula, reduced_velocity_density,
    SpinOrientation,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Upper bound on the number of sweep grid points.
pub const MAX_GRID_POINTS: u64 = 10_000_000;

pub const DEFAULT_SEED: u64 = 20_100_517;
pub const DEFAULT_CURVE_ROWS: usize = 181;

#[derive(Debug, Parser)]
#[command(
    name = "relboost",
    version,
    about = "Wigner rotations of spin-velocity states and Cooper pairs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Gamma factors, D factor, Wigner angles and boosted velocities.
    Wigner(CommonArgs),
    /// Boosted single-particle state, reduced density and entropy.
    Single(CommonArgs),
    /// Ultrarelativistic entropy as a function of spin inclination.
    EntropyCurve(CommonArgs),
    /// Singlet/triplet decomposition of a boosted Cooper pair.
    Cooper(CooperArgs),
    /// Evaluate a grid over any of v1, v2, theta, phi, eta (`start:stop:steps`).
    Sweep(SweepArgs),
    /// Run every closed-form-vs-oracle suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Units {
    Deg,
    Rad,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepMode {
    Single,
    Cooper,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Speed of the first boost as a fraction of c.
    #[arg(long, default_value = "0.5", allow_hyphen_values = true)]
    pub v1: String,
    /// Speed of the second boost as a fraction of c.
    #[arg(long, default_value = "0.5", allow_hyphen_values = true)]
    pub v2: String,
    /// Angle between the two boosts.
    #[arg(long, default_value = "90deg", allow_hyphen_values = true)]
    pub theta: String,
    /// Spin inclination from the z axis.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub phi: String,
    /// Spin azimuth.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub eta: String,
    /// Unit for angles given without a suffix.
    #[arg(long, value_enum, default_value_t = Units::Rad)]
    pub units: Units,
    /// Random samples (verify) or rows (entropy-curve).
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Args)]
pub struct CooperArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Initial pair spin state: S, T0, T+ or T-.
    #[arg(long, default_value = "S", value_parser = parse_kind)]
    pub kind: SpinKind,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, value_enum, default_value_t = SweepMode::Single)]
    pub mode: SweepMode,
    /// Initial pair spin state for cooper mode.
    #[arg(long, default_value = "S", value_parser = parse_kind)]
    pub kind: SpinKind,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Add this offset to every closed-form state before comparison.
    #[arg(long, default_value_t = 0.0, hide = true)]
    pub perturb: f64,
}

fn parse_kind(s: &str) -> Result<SpinKind, String> {
    s.parse()
}

/// A failure carrying its process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_BAD_INPUT,
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_IO,
            message: message.into(),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

type CliResult<T> = Result<T, CliError>;

/// Parse an angle, honoring a `deg`/`°`/`rad` suffix.
pub fn parse_angle(raw: &str, units: Units) -> Result<f64, String> {
    let s = raw.trim();
    let (number, unit) = if let Some(n) = s.strip_suffix("deg").or_else(|| s.strip_suffix('°')) {
        (n, Units::Deg)
    } else if let Some(n) = s.strip_suffix("rad") {
        (n, Units::Rad)
    } else {
        (s, units)
    };
    let value: f64 = number
        .trim()
        .parse()
        .map_err(|_| format!("cannot parse angle '{raw}'"))?;
    if !value.is_finite() {
        return Err(format!("angle '{raw}' is not finite"));
    }
    Ok(match unit {
        Units::Deg => value.to_radians(),
        Units::Rad => value,
    })
}

fn parse_speed_value(raw: &str) -> Result<f64, String> {
    raw.trim()
        .parse::<f64>()
        .map_err(|_| format!("cannot parse speed '{raw}'"))
}

/// Validated single-point inputs shared by all commands.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub geometry: BoostGeometry,
    pub spin: SpinOrientation,
    pub samples: Option<usize>,
    pub seed: u64,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
}

fn reject_range(flag: &str, raw: &str) -> CliResult<()> {
    if raw.contains(':') {
        return Err(CliError::input(format!(
            "--{flag}: ranges are only accepted by the sweep command"
        )));
    }
    Ok(())
}

fn speed_flag(flag: &str, beta: f64) -> CliResult<Speed> {
    Speed::new(beta).map_err(|e| CliError::input(format!("--{flag}: {e}")))
}

impl RunConfig {
    pub fn from_args(a: &CommonArgs) -> CliResult<Self> {
        for (flag, raw) in [
            ("v1", &a.v1),
            ("v2", &a.v2),
            ("theta", &a.theta),
            ("phi", &a.phi),
            ("eta", &a.eta),
        ] {
            reject_range(flag, raw)?;
        }
        let values = ParamValues {
            v1: parse_speed_value(&a.v1).map_err(|e| CliError::input(format!("--v1: {e}")))?,
            v2: parse_speed_value(&a.v2).map_err(|e| CliError::input(format!("--v2: {e}")))?,
            theta: parse_angle(&a.theta, a.units)
                .map_err(|e| CliError::input(format!("--theta: {e}")))?,
            phi: parse_angle(&a.phi, a.units)
                .map_err(|e| CliError::input(format!("--phi: {e}")))?,
            eta: parse_angle(&a.eta, a.units)
                .map_err(|e| CliError::input(format!("--eta: {e}")))?,
        };
        let (geometry, spin) = values.validate()?;
        Ok(Self {
            geometry,
            spin,
            samples: a.samples,
            seed: a.seed,
            output: a.output.clone(),
            format: a.format,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct ParamValues {
    v1: f64,
    v2: f64,
    theta: f64,
    phi: f64,
    eta: f64,
}

impl ParamValues {
    fn validate(&self) -> CliResult<(BoostGeometry, SpinOrientation)> {
        let v1 = speed_flag("v1", self.v1)?;
        let v2 = speed_flag("v2", self.v2)?;
        let geometry =
            BoostGeometry::new(v1, v2, self.theta).map_err(|e| CliError::input(format!("--theta: {e}")))?;
        let spin = SpinOrientation::new(self.phi, self.eta)
            .map_err(|e| CliError::input(format!("--phi/--eta: {e}")))?;
        Ok((geometry, spin))
    }
}

/// `(start, stop, steps)` for one swept parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl Axis {
    pub fn point(value: f64) -> Self {
        Self {
            start: value,
            stop: value,
            steps: 1,
        }
    }

    pub fn value(&self, k: usize) -> f64 {
        if self.steps == 1 || k == 0 {
            self.start
        } else if k + 1 == self.steps {
            self.stop
        } else {
            self.start + (self.stop - self.start) * (k as f64) / ((self.steps - 1) as f64)
        }
    }
}

/// Grid over `(v1, v2, theta, phi, eta)`; `v1` varies slowest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepGrid {
    pub v1: Axis,
    pub v2: Axis,
    pub theta: Axis,
    pub phi: Axis,
    pub eta: Axis,
}

impl SweepGrid {
    fn axes(&self) -> [Axis; 5] {
        [self.v1, self.v2, self.theta, self.phi, self.eta]
    }

    /// Number of grid points, `None` on overflow.
    pub fn size(&self) -> Option<u64> {
        self.axes()
            .iter()
            .try_fold(1u64, |acc, a| acc.checked_mul(a.steps as u64))
    }

    fn point(&self, mut index: usize) -> ParamValues {
        let axes = self.axes();
        let mut ks = [0usize; 5];
        for i in (0..5).rev() {
            ks[i] = index % axes[i].steps;
            index /= axes[i].steps;
        }
        ParamValues {
            v1: axes[0].value(ks[0]),
            v2: axes[1].value(ks[1]),
            theta: axes[2].value(ks[2]),
            phi: axes[3].value(ks[3]),
            eta: axes[4].value(ks[4]),
        }
    }

    pub fn from_args(a: &CommonArgs) -> CliResult<Self> {
        let speed = |flag: &str, raw: &str| {
            parse_axis(raw, parse_speed_value).map_err(|e| CliError::input(format!("--{flag}: {e}")))
        };
        let angle = |flag: &str, raw: &str| {
            parse_axis(raw, |s| parse_angle(s, a.units))
                .map_err(|e| CliError::input(format!("--{flag}: {e}")))
        };
        let grid = Self {
            v1: speed("v1", &a.v1)?,
            v2: speed("v2", &a.v2)?,
            theta: angle("theta", &a.theta)?,
            phi: angle("phi", &a.phi)?,
            eta: angle("eta", &a.eta)?,
        };
        match grid.size() {
            Some(n) if n <= MAX_GRID_POINTS => {}
            Some(n) => {
                return Err(CliError::input(format!(
                    "sweep grid has {n} points, limit is {MAX_GRID_POINTS}"
                )))
            }
            None => {
                return Err(CliError::input(format!(
                    "sweep grid size overflows, limit is {MAX_GRID_POINTS}"
                )))
            }
        }
        // endpoints carry the extreme values, so checking them validates every point
        for flag_speed in [("v1", grid.v1), ("v2", grid.v2)] {
            speed_flag(flag_speed.0, flag_speed.1.start)?;
            speed_flag(flag_speed.0, flag_speed.1.stop)?;
        }
        Ok(grid)
    }
}

fn parse_axis(raw: &str, scalar: impl Fn(&str) -> Result<f64, String>) -> Result<Axis, String> {
    let parts: Vec<&str> = raw.split(':').collect();
    match parts.as_slice() {
        [one] => Ok(Axis::point(scalar(one)?)),
        [start, stop, steps] => {
            let start = scalar(start)?;
            let stop = scalar(stop)?;
            let steps: usize = steps
                .trim()
                .parse()
                .map_err(|_| format!("cannot parse step count '{steps}'"))?;
            if steps == 0 {
                return Err("step count must be at least 1".into());
            }
            if start > stop {
                return Err(format!("range start {start} exceeds stop {stop}"));
            }
            Ok(Axis { start, stop, steps })
        }
        _ => Err(format!("expected a value or start:stop:steps, got '{raw}'")),
    }
}

/// Format a float with 17 significant digits.
pub fn fmt_num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

fn csv_line(fields: &[String]) -> String {
    let mut line = fields.join(",");
    line.push('\n');
    line
}

fn complex_json(z: Complex) -> Value {
    json!([z.re, z.im])
}

fn finite_or_null(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

fn geometry_json(g: &BoostGeometry) -> Value {
    json!({ "v1": g.v1.beta(), "v2": g.v2.beta(), "theta": g.theta })
}

fn spin_json(s: &SpinOrientation) -> Value {
    json!({ "phi": s.phi, "eta": s.eta })
}

fn to_json_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn d_or_infinity(g: &BoostGeometry) -> f64 {
    d_factor(gamma(g.v1), gamma(g.v2)).unwrap_or(f64::INFINITY)
}

pub fn cmd_wigner(cfg: &RunConfig) -> String {
    let g = &cfg.geometry;
    let w = wigner_pair(g);
    let (vp, vm) = branch_velocities(g);
    let d = d_or_infinity(g);
    match cfg.format.unwrap_or(Format::Json) {
        Format::Json => to_json_string(&json!({
            "schema_version": SCHEMA_VERSION,
            "command": "wigner",
            "geometry": geometry_json(g),
            "gamma1": gamma(g.v1),
            "gamma2": gamma(g.v2),
            "d_factor": finite_or_null(d),
            "omega_plus": w.omega_plus,
            "omega_minus": w.omega_minus,
            "omega_sum": w.sum(),
            "v_plus": vp.components(),
            "v_minus": vm.components(),
        })),
        Format::Csv => {
            let header = "v1,v2,theta_rad,gamma1,gamma2,d_factor,omega_plus,omega_minus,omega_sum,\
                          v_plus_x,v_plus_y,v_plus_z,v_minus_x,v_minus_y,v_minus_z\n";
            let mut row = vec![
                g.v1.beta(),
                g.v2.beta(),
                g.theta,
                gamma(g.v1),
                gamma(g.v2),
                d,
                w.omega_plus,
                w.omega_minus,
                w.sum(),
            ];
            row.extend(vp.components());
            row.extend(vm.components());
            let fields: Vec<String> = row.into_iter().map(fmt_num).collect();
            format!("{header}{}", csv_line(&fields))
        }
    }
}

const SINGLE_AMP_LABELS: [&str; 4] = ["vplus_up", "vplus_down", "vminus_up", "vminus_down"];

pub fn cmd_single(cfg: &RunConfig) -> CliResult<String> {
    let st = boost_single(&cfg.geometry, cfg.spin);
    let rho = reduced_velocity_density(&st);
    let entropy = entanglement_entropy(&st);
    Ok(match cfg.format.unwrap_or(Format::Json) {
        Format::Json => {
            let amps: Vec<Value> = st.amps.amps().iter().map(|&z| complex_json(z)).collect();
            let density: Vec<Value> = (0..2)
                .map(|i| json!([complex_json(rho.get(i, 0)), complex_json(rho.get(i, 1))]))
                .collect();
            to_json_string(&json!({
                "schema_version": SCHEMA_VERSION,
                "command": "single",
                "geometry": geometry_json(&cfg.geometry),
                "spin": spin_json(&cfg.spin),
                "omega_plus": st.angles.omega_plus,
                "omega_minus": st.angles.omega_minus,
                "amp_order": SINGLE_AMP_LABELS,
                "amps": amps,
                "density": density,
                "eigenvalues": rho.eigenvalues(),
                "entropy_bits": entropy,
                "entropy_limit_bits": entropy_limit_formula(cfg.spin.phi),
            }))
        }
        Format::Csv => {
            let mut header = String::from("v1,v2,theta_rad,phi_rad,eta_rad,omega_plus,omega_minus");
            for l in SINGLE_AMP_LABELS {
                let _ = write!(header, ",{l}_re,{l}_im");
            }
            header.push_str(",entropy_bits\n");
            let g = &cfg.geometry;
            let mut row = vec![
                g.v1.beta(),
                g.v2.beta(),
                g.theta,
                cfg.spin.phi,
                cfg.spin.eta,
                st.angles.omega_plus,
                st.angles.omega_minus,
            ];
            for z in st.amps.amps() {
                row.push(z.re);
                row.push(z.im);
            }
            row.push(entropy);
            let fields: Vec<String> = row.into_iter().map(fmt_num).collect();
            format!("{header}{}", csv_line(&fields))
        }
    })
}

/// `(φ, S(φ))` rows from 0 to π inclusive.
pub fn entropy_curve_rows(rows: usize) -> CliResult<Vec<(f64, f64)>> {
    if rows < 2 {
        return Err(CliError::input("--samples: entropy curve needs at least 2 rows"));
    }
    let last = (rows - 1) as f64;
    Ok((0..rows)
        .map(|i| {
            let phi = std::f64::consts::PI * (i as f64) / last;
            (phi, entropy_limit_formula(phi))
        })
        .collect())
}

pub fn cmd_entropy_curve(cfg: &RunConfig) -> CliResult<String> {
    let rows = entropy_curve_rows(cfg.samples.unwrap_or(DEFAULT_CURVE_ROWS))?;
    Ok(match cfg.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut out = String::from("phi_rad,entropy_bits\n");
            for (phi, s) in rows {
                out.push_str(&csv_line(&[fmt_num(phi), fmt_num(s)]));
            }
            out
        }
        Format::Json => to_json_string(&json!({
            "schema_version": SCHEMA_VERSION,
            "command": "entropy-curve",
            "columns": ["phi_rad", "entropy_bits"],
            "rows": rows.iter().map(|&(p, s)| json!([p, s])).collect::<Vec<_>>(),
        })),
    })
}

fn weight_columns() -> Vec<String> {
    VelocityParity::ALL
        .iter()
        .flat_map(|p| SpinKind::ALL.iter().map(move |k| format!("{}_{}", p.slug(), k.slug())))
        .collect()
}

pub fn cmd_cooper(cfg: &RunConfig, kind: SpinKind) -> CliResult<String> {
    let g = &cfg.geometry;
    let s = cfg.spin;
    let oracle_state = boost_pair(g, &initial_pair(kind, s));
    let formula = closed_form(kind, g, s);
    let cmp = compare_states(&formula.amps, &oracle_state.amps, PAIR_EQUIVALENCE_TOL)
        .map_err(|e| CliError::input(e.to_string()))?;
    let d = decompose(&oracle_state, s);
    let weights: Vec<(String, f64)> = weight_columns()
        .into_iter()
        .zip(d.weights().into_iter().map(|(_, _, w)| w))
        .collect();
    let singlet = d.spin_weight(SpinKind::Singlet);
    let triplet: f64 = SpinKind::TRIPLETS.iter().map(|&k| d.spin_weight(k)).sum();
    let mix = gamma_big(g);
    let printed = gamma_big_printed(g);
    let w = wigner_pair(g);
    Ok(match cfg.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut wmap = serde_json::Map::new();
            for (name, value) in &weights {
                wmap.insert(name.clone(), json!(value));
            }
            to_json_string(&json!({
                "schema_version": SCHEMA_VERSION,
                "command": "cooper",
                "kind": kind.label(),
                "geometry": geometry_json(g),
                "spin": spin_json(&s),
                "omega_plus": w.omega_plus,
                "omega_minus": w.omega_minus,
                "weights": Value::Object(wmap),
                "singlet_weight": singlet,
                "triplet_weight": triplet,
                "gamma": {
                    "tan2_form": finite_or_null(mix.value),
                    "sin_theta_form": finite_or_null(printed.value),
                    "divergent": mix.divergent,
                    "note": "tan2_form = tan^2(omega+ + omega-) carries sin^2(theta); \
                             sin_theta_form uses a single power of sin(theta)",
                },
                "oracle": {
                    "max_abs_deviation": cmp.max_abs_deviation,
                    "aligned_phase": complex_json(cmp.aligned_phase),
                    "tolerance": cmp.tolerance,
                    "pass": cmp.pass,
                },
            }))
        }
        Format::Csv => {
            let mut header =
                String::from("kind,v1,v2,theta_rad,phi_rad,eta_rad,omega_plus,omega_minus");
            for (name, _) in &weights {
                let _ = write!(header, ",{name}");
            }
            header.push_str(
                ",singlet_weight,triplet_weight,gamma_tan2,gamma_sin_theta,oracle_max_deviation,oracle_pass\n",
            );
            let mut fields = vec![kind.slug().to_string()];
            let nums = [g.v1.beta(), g.v2.beta(), g.theta, s.phi, s.eta, w.omega_plus, w.omega_minus];
            fields.extend(nums.into_iter().map(fmt_num));
            fields.extend(weights.iter().map(|(_, v)| fmt_num(*v)));
            fields.extend(
                [singlet, triplet, mix.value, printed.value, cmp.max_abs_deviation]
                    .into_iter()
                    .map(fmt_num),
            );
            fields.push(cmp.pass.to_string());
            format!("{header}{}", csv_line(&fields))
        }
    })
}

fn sweep_row(mode: SweepMode, kind: SpinKind, p: ParamValues) -> CliResult<Vec<f64>> {
    let (g, s) = p.validate()?;
    let w = wigner_pair(&g);
    let mut row = vec![g.v1.beta(), g.v2.beta(), g.theta, s.phi, s.eta, w.omega_plus, w.omega_minus];
    match mode {
        SweepMode::Single => row.push(entanglement_entropy(&boost_single(&g, s))),
        SweepMode::Cooper => {
            let d = decompose(&boost_pair(&g, &initial_pair(kind, s)), s);
            row.extend(d.weights().into_iter().map(|(_, _, w)| w));
        }
    }
    Ok(row)
}

pub fn sweep_columns(mode: SweepMode) -> Vec<String> {
    let mut cols: Vec<String> = ["v1", "v2", "theta_rad", "phi_rad", "eta_rad", "omega_plus", "omega_minus"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    match mode {
        SweepMode::Single => cols.push("entropy_bits".into()),
        SweepMode::Cooper => cols.extend(weight_columns()),
    }
    cols
}

/// Evaluate every grid point, in parallel, returning rows in grid order.
pub fn sweep_rows(grid: &SweepGrid, mode: SweepMode, kind: SpinKind) -> CliResult<Vec<Vec<f64>>> {
    let n = grid.size().expect("checked at construction") as usize;
    (0..n)
        .into_par_iter()
        .map(|i| sweep_row(mode, kind, grid.point(i)))
        .collect()
}

pub fn cmd_sweep(
    cfg: &CommonArgs,
    grid: &SweepGrid,
    mode: SweepMode,
    kind: SpinKind,
) -> CliResult<String> {
    let rows = sweep_rows(grid, mode, kind)?;
    let cols = sweep_columns(mode);
    Ok(match cfg.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut out = csv_line(&cols);
            for row in rows {
                let fields: Vec<String> = row.into_iter().map(fmt_num).collect();
                out.push_str(&csv_line(&fields));
            }
            out
        }
        Format::Json => to_json_string(&json!({
            "schema_version": SCHEMA_VERSION,
            "command": "sweep",
            "mode": match mode { SweepMode::Single => "single", SweepMode::Cooper => "cooper" },
            "kind": kind.label(),
            "columns": cols,
            "rows": rows,
        })),
    })
}

/// Render the verification report; the flag is true when every suite passed.
pub fn cmd_verify(cfg: &RunConfig, perturbation: f64) -> CliResult<(String, bool)> {
    let vcfg = VerifyConfig {
        samples: cfg.samples.unwrap_or(VerifyConfig::default().samples),
        seed: cfg.seed,
        perturbation,
    };
    let report = oracle::run_verification(&vcfg).map_err(|e| CliError::input(e.to_string()))?;
    let body = match cfg.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report).expect("serializable");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut out = String::from("suite,max_deviation,tolerance,pass\n");
            for suite in &report.suites {
                out.push_str(&csv_line(&[
                    suite.name.clone(),
                    fmt_num(suite.max_deviation),
                    fmt_num(suite.tolerance),
                    suite.pass.to_string(),
                ]));
            }
            out
        }
    };
    Ok((body, report.pass))
}

fn emit(body: &str, output: Option<&PathBuf>, stdout: &mut dyn Write) -> CliResult<()> {
    match output {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| CliError::io(format!("cannot write {}: {e}", path.display()))),
        None => stdout
            .write_all(body.as_bytes())
            .and_then(|_| stdout.flush())
            .map_err(|e| CliError::io(format!("cannot write to stdout: {e}"))),
    }
}

fn dispatch(cli: Cli, stdout: &mut dyn Write) -> CliResult<i32> {
    match cli.command {
        Command::Wigner(a) => {
            let cfg = RunConfig::from_args(&a)?;
            emit(&cmd_wigner(&cfg), cfg.output.as_ref(), stdout)?;
        }
        Command::Single(a) => {
            let cfg = RunConfig::from_args(&a)?;
            emit(&cmd_single(&cfg)?, cfg.output.as_ref(), stdout)?;
        }
        Command::EntropyCurve(a) => {
            let cfg = RunConfig::from_args(&a)?;
            emit(&cmd_entropy_curve(&cfg)?, cfg.output.as_ref(), stdout)?;
        }
        Command::Cooper(a) => {
            let cfg = RunConfig::from_args(&a.common)?;
            emit(&cmd_cooper(&cfg, a.kind)?, cfg.output.as_ref(), stdout)?;
        }
        Command::Sweep(a) => {
            let grid = SweepGrid::from_args(&a.common)?;
            let body = cmd_sweep(&a.common, &grid, a.mode, a.kind)?;
            emit(&body, a.common.output.as_ref(), stdout)?;
        }
        Command::Verify(a) => {
            let cfg = RunConfig::from_args(&a.common)?;
            let (body, pass) = cmd_verify(&cfg, a.perturb)?;
            emit(&body, cfg.output.as_ref(), stdout)?;
            if !pass {
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
    }
    Ok(EXIT_OK)
}

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_BAD_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match dispatch(cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.code
        }
    }
}
