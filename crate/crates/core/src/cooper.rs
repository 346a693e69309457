//! Two-electron pair states under the second boost.
//!
//! A [`PairState`] holds 16 amplitudes ordered `velA ⊗ velB ⊗ spinA ⊗ spinB`
//! (index `8·velA + 4·velB + 2·spinA + spinB`). Velocity index 0 is the
//! `+v1` branch (`v₊` after the boost), index 1 is `-v1` (`v₋`). Spin index
//! 0 is `↑̃`, 1 is `↓̃`, both in the tilde frame of the pair's
//! [`SpinOrientation`].

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::kinematics::{gamma, normalize_opening_angle, wigner_pair, BoostGeometry, WignerPair};
use crate::qmath::{c, tensor_product, Complex, StateVector, Unitary2, ONE, ZERO};
use crate::single_particle::{
    rotation_in_tilde_basis, tilde_basis, tilde_frame, SpinOrientation, MINUS_Z_AXIS, Z_AXIS,
};

pub const PAIR_DIM: usize = 16;

/// Singlet and the three triplets built on the tilde basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpinKind {
    Singlet,
    T0,
    TPlus,
    TMinus,
}

impl SpinKind {
    pub const ALL: [SpinKind; 4] = [SpinKind::Singlet, SpinKind::T0, SpinKind::TPlus, SpinKind::TMinus];
    pub const TRIPLETS: [SpinKind; 3] = [SpinKind::T0, SpinKind::TPlus, SpinKind::TMinus];

    pub fn index(self) -> usize {
        match self {
            SpinKind::Singlet => 0,
            SpinKind::T0 => 1,
            SpinKind::TPlus => 2,
            SpinKind::TMinus => 3,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            SpinKind::Singlet => "S",
            SpinKind::T0 => "T0",
            SpinKind::TPlus => "T+",
            SpinKind::TMinus => "T-",
        }
    }

    /// Short identifier usable in CSV headers.
    pub fn slug(self) -> &'static str {
        match self {
            SpinKind::Singlet => "s",
            SpinKind::T0 => "t0",
            SpinKind::TPlus => "tplus",
            SpinKind::TMinus => "tminus",
        }
    }

    /// Velocity parity that keeps the pair antisymmetric under exchange.
    pub fn partner_parity(self) -> VelocityParity {
        match self {
            SpinKind::Singlet => VelocityParity::Symmetric,
            _ => VelocityParity::Antisymmetric,
        }
    }

    /// Coordinates in the `(↑̃↑̃, ↑̃↓̃, ↓̃↑̃, ↓̃↓̃)` basis.
    pub fn tilde_coordinates(self) -> [Complex; 4] {
        let h = c(FRAC_1_SQRT_2, 0.0);
        match self {
            SpinKind::Singlet => [ZERO, h, -h, ZERO],
            SpinKind::T0 => [ZERO, h, h, ZERO],
            SpinKind::TPlus => [h, ZERO, ZERO, h],
            SpinKind::TMinus => [h, ZERO, ZERO, -h],
        }
    }
}

impl std::str::FromStr for SpinKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "s" | "singlet" => Ok(SpinKind::Singlet),
            "t0" => Ok(SpinKind::T0),
            "t+" | "tplus" | "tp" => Ok(SpinKind::TPlus),
            "t-" | "tminus" | "tm" => Ok(SpinKind::TMinus),
            other => Err(format!("unknown spin state '{other}' (expected S, T0, T+ or T-)")),
        }
    }
}

/// `(|v₊,v₋⟩ ± |v₋,v₊⟩)/√2`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VelocityParity {
    Symmetric,
    Antisymmetric,
}

impl VelocityParity {
    pub const ALL: [VelocityParity; 2] = [VelocityParity::Symmetric, VelocityParity::Antisymmetric];

    pub fn index(self) -> usize {
        match self {
            VelocityParity::Symmetric => 0,
            VelocityParity::Antisymmetric => 1,
        }
    }

    pub fn slug(self) -> &'static str {
        match self {
            VelocityParity::Symmetric => "sym",
            VelocityParity::Antisymmetric => "anti",
        }
    }

    /// Coordinates over `(velA, velB) ∈ {++, +-, -+, --}`.
    pub fn coordinates(self) -> [Complex; 4] {
        let h = c(FRAC_1_SQRT_2, 0.0);
        match self {
            VelocityParity::Symmetric => [ZERO, h, h, ZERO],
            VelocityParity::Antisymmetric => [ZERO, h, -h, ZERO],
        }
    }
}

/// The four pair spin states written out in the `z` basis
/// `(↑↑, ↑↓, ↓↑, ↓↓)` for a given orientation.
#[derive(Debug, Clone, PartialEq)]
pub struct PairSpinBasis {
    pub orientation: SpinOrientation,
    vectors: [StateVector; 4],
}

impl PairSpinBasis {
    pub fn get(&self, kind: SpinKind) -> &StateVector {
        &self.vectors[kind.index()]
    }

    /// Largest deviation of the Gram matrix from the identity.
    pub fn gram_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, a) in self.vectors.iter().enumerate() {
            for (j, b) in self.vectors.iter().enumerate() {
                let target = if i == j { ONE } else { ZERO };
                let ip = a.inner(b).expect("equal dims");
                worst = worst.max((ip - target).norm());
            }
        }
        worst
    }
}

pub fn pair_basis(s: SpinOrientation) -> PairSpinBasis {
    let (up, down) = tilde_basis(s);
    let up = StateVector::from_vec(up.to_vec());
    let down = StateVector::from_vec(down.to_vec());
    let uu = tensor_product(&up, &up);
    let ud = tensor_product(&up, &down);
    let du = tensor_product(&down, &up);
    let dd = tensor_product(&down, &down);
    let h = c(FRAC_1_SQRT_2, 0.0);
    let combo = |a: &StateVector, b: &StateVector, sign: f64| {
        let mut v = a.scaled(h);
        v.axpy(h * sign, b).expect("equal dims");
        v
    };
    PairSpinBasis {
        orientation: s,
        vectors: [
            combo(&ud, &du, -1.0),
            combo(&ud, &du, 1.0),
            combo(&uu, &dd, 1.0),
            combo(&uu, &dd, -1.0),
        ],
    }
}

/// Basis vector `(parity) ⊗ (kind)` in pair coordinates.
pub fn combination_vector(parity: VelocityParity, kind: SpinKind) -> StateVector {
    let vel = StateVector::from_vec(parity.coordinates().to_vec());
    let spin = StateVector::from_vec(kind.tilde_coordinates().to_vec());
    tensor_product(&vel, &spin)
}

/// A normalized two-particle spin-velocity state.
#[derive(Debug, Clone, PartialEq)]
pub struct PairState {
    pub amps: StateVector,
    /// The applied second boost; `None` before boosting.
    pub geometry: Option<BoostGeometry>,
    pub spin: SpinOrientation,
}

impl PairState {
    pub fn norm(&self) -> f64 {
        self.amps.norm()
    }

    /// `max |ψ + P ψ|` where `P` swaps both particle labels; zero for an
    /// exchange-antisymmetric state.
    pub fn exchange_antisymmetry_defect(&self) -> f64 {
        let swapped = exchanged(&self.amps);
        self.amps
            .amps()
            .iter()
            .zip(swapped.amps())
            .map(|(a, b)| (a + b).norm())
            .fold(0.0, f64::max)
    }
}

fn pair_index(vel_a: usize, vel_b: usize, spin_a: usize, spin_b: usize) -> usize {
    8 * vel_a + 4 * vel_b + 2 * spin_a + spin_b
}

/// Swap particle A and B (both velocity and spin labels).
pub fn exchanged(psi: &StateVector) -> StateVector {
    assert_eq!(psi.dim(), PAIR_DIM);
    let mut out = vec![ZERO; PAIR_DIM];
    for va in 0..2 {
        for vb in 0..2 {
            for sa in 0..2 {
                for sb in 0..2 {
                    out[pair_index(vb, va, sb, sa)] = psi[pair_index(va, vb, sa, sb)];
                }
            }
        }
    }
    StateVector::from_vec(out)
}

/// Singlet with the velocity-symmetric part, triplets with the
/// velocity-antisymmetric part.
pub fn initial_pair(kind: SpinKind, s: SpinOrientation) -> PairState {
    PairState {
        amps: combination_vector(kind.partner_parity(), kind),
        geometry: None,
        spin: s,
    }
}

/// Apply `a ⊗ b` to a 4-component two-spin vector.
fn apply_kron(a: &Unitary2, b: &Unitary2, v: [Complex; 4]) -> [Complex; 4] {
    let mut out = [ZERO; 4];
    for i in 0..2 {
        for j in 0..2 {
            let mut acc = ZERO;
            for k in 0..2 {
                for l in 0..2 {
                    acc += a.get(i, k) * b.get(j, l) * v[2 * k + l];
                }
            }
            out[2 * i + j] = acc;
        }
    }
    out
}

/// Boost a pair particle by particle: whichever particle sits on the `+v1`
/// branch is rotated by `ω₊` about `+z`, one on `-v1` by `ω₋` about `-z`.
pub fn boost_pair(g: &BoostGeometry, st: &PairState) -> PairState {
    let angles = wigner_pair(g);
    let plus = rotation_in_tilde_basis(angles.omega_plus, Z_AXIS, st.spin);
    let minus = rotation_in_tilde_basis(angles.omega_minus, MINUS_Z_AXIS, st.spin);
    let branch = |v: usize| if v == 0 { &plus } else { &minus };
    let mut out = vec![ZERO; PAIR_DIM];
    for va in 0..2 {
        for vb in 0..2 {
            let base = pair_index(va, vb, 0, 0);
            let block: [Complex; 4] = std::array::from_fn(|k| st.amps[base + k]);
            let rotated = apply_kron(branch(va), branch(vb), block);
            out[base..base + 4].copy_from_slice(&rotated);
        }
    }
    PairState {
        amps: StateVector::from_vec(out),
        geometry: Some(*g),
        spin: st.spin,
    }
}

/// Coefficients on `{sym, anti} × {S, T0, T+, T-}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairDecomposition {
    pub coeffs: [[Complex; 4]; 2],
}

impl PairDecomposition {
    pub fn zero() -> Self {
        Self {
            coeffs: [[ZERO; 4]; 2],
        }
    }

    pub fn coefficient(&self, parity: VelocityParity, kind: SpinKind) -> Complex {
        self.coeffs[parity.index()][kind.index()]
    }

    pub fn set(&mut self, parity: VelocityParity, kind: SpinKind, value: Complex) {
        self.coeffs[parity.index()][kind.index()] = value;
    }

    pub fn weight(&self, parity: VelocityParity, kind: SpinKind) -> f64 {
        self.coefficient(parity, kind).norm_sqr()
    }

    /// Total weight on a spin state, summed over both velocity parities.
    pub fn spin_weight(&self, kind: SpinKind) -> f64 {
        VelocityParity::ALL.iter().map(|&p| self.weight(p, kind)).sum()
    }

    pub fn total_weight(&self) -> f64 {
        self.coeffs.iter().flatten().map(|z| z.norm_sqr()).sum()
    }

    /// `(parity, kind, weight)` in fixed order: sym then anti, S, T0, T+, T-.
    pub fn weights(&self) -> Vec<(VelocityParity, SpinKind, f64)> {
        VelocityParity::ALL
            .iter()
            .flat_map(|&p| SpinKind::ALL.iter().map(move |&k| (p, k)))
            .map(|(p, k)| (p, k, self.weight(p, k)))
            .collect()
    }

    /// `Σ c_jk |parity_j⟩|kind_k⟩` in pair coordinates.
    pub fn reconstruct(&self) -> StateVector {
        let mut out = StateVector::zeros(PAIR_DIM);
        for p in VelocityParity::ALL {
            for k in SpinKind::ALL {
                let coeff = self.coefficient(p, k);
                if coeff != ZERO {
                    out.axpy(coeff, &combination_vector(p, k)).expect("equal dims");
                }
            }
        }
        out
    }
}

/// Two-spin frame change from the tilde frame of `from` to that of `to`.
fn reframe(psi: &StateVector, from: SpinOrientation, to: SpinOrientation) -> StateVector {
    if from == to {
        return psi.clone();
    }
    let v = tilde_frame(to).dagger().mul(&tilde_frame(from));
    let mut out = vec![ZERO; PAIR_DIM];
    for base in (0..PAIR_DIM).step_by(4) {
        let block: [Complex; 4] = std::array::from_fn(|k| psi[base + k]);
        out[base..base + 4].copy_from_slice(&apply_kron(&v, &v, block));
    }
    StateVector::from_vec(out)
}

/// Project a pair state onto the singlet/triplet frame defined by `s`.
pub fn decompose(st: &PairState, s: SpinOrientation) -> PairDecomposition {
    let psi = reframe(&st.amps, st.spin, s);
    let mut d = PairDecomposition::zero();
    for p in VelocityParity::ALL {
        for k in SpinKind::ALL {
            let ip = combination_vector(p, k).inner(&psi).expect("equal dims");
            d.set(p, k, ip);
        }
    }
    d
}

/// Singlet-triplet mixing parameter of a boosted singlet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixingParameter {
    /// `Γ = tan²(ω₊+ω₋)`, `+∞` when the boost saturates at `ω₊+ω₋ = π/2`.
    pub value: f64,
    pub divergent: bool,
}

/// `Γ = (γ1²-1)(γ2²-1) sin²θ / (γ1+γ2)²`, equal to `tan²(ω₊+ω₋)`.
pub fn gamma_big(g: &BoostGeometry) -> MixingParameter {
    let value = mixing_with_sine_power(g, 2);
    finite_or_divergent(value)
}

/// The mixing parameter with a single power of `sin θ`, kept for the
/// exponent diagnostic in the verification report.
pub fn gamma_big_printed(g: &BoostGeometry) -> MixingParameter {
    finite_or_divergent(mixing_with_sine_power(g, 1))
}

fn finite_or_divergent(value: f64) -> MixingParameter {
    if value.is_finite() {
        MixingParameter {
            value,
            divergent: false,
        }
    } else {
        MixingParameter {
            value: f64::INFINITY,
            divergent: true,
        }
    }
}

fn mixing_with_sine_power(g: &BoostGeometry, power: i32) -> f64 {
    if g.is_trivial() {
        return 0.0;
    }
    let (g1, g2) = (gamma(g.v1), gamma(g.v2));
    // γ² - 1 = β²γ² avoids cancellation at small β
    let a = (g.v1.beta() * g1).powi(2);
    let b = (g.v2.beta() * g2).powi(2);
    a * b * g.theta.sin().powi(power) / (g1 + g2).powi(2)
}

fn pair_from(d: &PairDecomposition, g: Option<BoostGeometry>, s: SpinOrientation) -> PairState {
    PairState {
        amps: d.reconstruct().normalized(),
        geometry: g,
        spin: s,
    }
}

/// `[(sym)|S⟩ - i√Γ (anti)(sin φ|T-⟩ + cos φ|T0⟩)] / √(1+Γ)`
pub fn singlet_closed_form(g: &BoostGeometry, s: SpinOrientation) -> PairState {
    let mix = gamma_big(g);
    if mix.divergent {
        let mut limit = ultrarelativistic_limit(SpinKind::Singlet, g.theta, s)
            .expect("non-degenerate theta");
        limit.geometry = Some(*g);
        return limit;
    }
    let (sp, cp) = s.phi.sin_cos();
    let norm = 1.0 / (1.0 + mix.value).sqrt();
    let t = mix.value.sqrt() * norm;
    let mut d = PairDecomposition::zero();
    d.set(VelocityParity::Symmetric, SpinKind::Singlet, c(norm, 0.0));
    d.set(VelocityParity::Antisymmetric, SpinKind::TMinus, c(0.0, -t * sp));
    d.set(VelocityParity::Antisymmetric, SpinKind::T0, c(0.0, -t * cp));
    pair_from(&d, Some(*g), s)
}

/// Decomposition of a boosted triplet in terms of the branch angles.
fn triplet_coefficients(kind: SpinKind, w: WignerPair, phi: f64) -> Result<PairDecomposition> {
    use SpinKind::*;
    use VelocityParity::*;
    let (sp, cp) = phi.sin_cos();
    let (s1, c1) = w.omega_plus.sin_cos();
    let (s2, c2) = w.omega_minus.sin_cos();
    let (sd, cd) = w.difference().sin_cos();
    let ss = w.sum().sin();
    let cos2 = (2.0 * phi).cos();
    let mixed = -2.0 * s1 * s2 * sp * cp;
    let mut d = PairDecomposition::zero();
    match kind {
        TPlus => {
            d.set(Antisymmetric, TPlus, c(cd, 0.0));
            d.set(Antisymmetric, T0, c(0.0, sd * sp));
            d.set(Antisymmetric, TMinus, c(0.0, -sd * cp));
        }
        TMinus => {
            d.set(Antisymmetric, TMinus, c(c1 * c2 + s1 * s2 * cos2, 0.0));
            d.set(Antisymmetric, TPlus, c(0.0, -sd * cp));
            d.set(Antisymmetric, T0, c(mixed, 0.0));
            d.set(Symmetric, Singlet, c(0.0, -ss * sp));
        }
        T0 => {
            d.set(Antisymmetric, T0, c(c1 * c2 - s1 * s2 * cos2, 0.0));
            d.set(Antisymmetric, TPlus, c(0.0, sd * sp));
            d.set(Antisymmetric, TMinus, c(mixed, 0.0));
            d.set(Symmetric, Singlet, c(0.0, -ss * cp));
        }
        Singlet => return Err(Error::NotATriplet(kind)),
    }
    Ok(d)
}

/// Closed-form image of `(anti)|T⟩` under the second boost.
pub fn triplet_closed_form(
    kind: SpinKind,
    g: &BoostGeometry,
    s: SpinOrientation,
) -> Result<PairState> {
    let d = triplet_coefficients(kind, wigner_pair(g), s.phi)?;
    Ok(pair_from(&d, Some(*g), s))
}

/// Closed form for any of the four initial states.
pub fn closed_form(kind: SpinKind, g: &BoostGeometry, s: SpinOrientation) -> PairState {
    match kind {
        SpinKind::Singlet => singlet_closed_form(g, s),
        _ => triplet_closed_form(kind, g, s).expect("triplet"),
    }
}

/// The boosted state as both speeds approach c, written in `θ` and `φ`.
///
/// The singlet carries the `-i` phase of the finite-speed form so the two
/// can be compared without alignment.
pub fn ultrarelativistic_limit(
    kind: SpinKind,
    theta: f64,
    s: SpinOrientation,
) -> Result<PairState> {
    use SpinKind::*;
    use VelocityParity::*;
    let theta_n = normalize_opening_angle(theta);
    if theta_n == 0.0 || theta_n == std::f64::consts::PI {
        return Err(Error::DegenerateGeometry { theta });
    }
    let (st, ct) = theta_n.sin_cos();
    let (sp, cp) = s.phi.sin_cos();
    let half_sin_2phi = 0.5 * (2.0 * s.phi).sin();
    let mut d = PairDecomposition::zero();
    match kind {
        Singlet => {
            d.set(Antisymmetric, TMinus, c(0.0, -sp));
            d.set(Antisymmetric, T0, c(0.0, -cp));
        }
        TPlus => {
            d.set(Antisymmetric, TPlus, c(st, 0.0));
            d.set(Antisymmetric, TMinus, c(0.0, ct * cp));
            d.set(Antisymmetric, T0, c(0.0, -ct * sp));
        }
        TMinus => {
            d.set(Antisymmetric, TMinus, c(st * cp * cp, 0.0));
            d.set(Antisymmetric, TPlus, c(0.0, ct * cp));
            d.set(Antisymmetric, T0, c(-st * half_sin_2phi, 0.0));
            d.set(Symmetric, Singlet, c(0.0, -sp));
        }
        T0 => {
            d.set(Antisymmetric, T0, c(st * sp * sp, 0.0));
            d.set(Antisymmetric, TPlus, c(0.0, -ct * sp));
            d.set(Antisymmetric, TMinus, c(-st * half_sin_2phi, 0.0));
            d.set(Symmetric, Singlet, c(0.0, -cp));
        }
    }
    Ok(pair_from(&d, None, s))
}
