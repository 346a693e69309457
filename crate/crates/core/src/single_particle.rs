//! One spin-1/2 particle in a superposition of two opposite velocities.
//!
//! Amplitudes of a [`SingleState`] are ordered `(v₊↑̃, v₊↓̃, v₋↑̃, v₋↓̃)`, where
//! `v±` are the boosted images of `±v1` and `↑̃/↓̃` is the spin basis tilted
//! to inclination `φ` and azimuth `η`.

use std::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kinematics::{wigner_pair, BoostGeometry, WignerPair};
use crate::qmath::{
    c, partial_trace, su2_rotation, tensor_product, von_neumann_entropy, Complex, DensityMatrix,
    StateVector, Subsystem, Unitary2,
};

pub const Z_AXIS: [f64; 3] = [0.0, 0.0, 1.0];
pub const MINUS_Z_AXIS: [f64; 3] = [0.0, 0.0, -1.0];

/// Direction of the spin quantization axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpinOrientation {
    /// Inclination from `+z`, in `[0, π]`.
    pub phi: f64,
    /// Azimuth, in `[0, 2π)`.
    pub eta: f64,
}

impl SpinOrientation {
    /// Folds `φ` into `[0, π]` (shifting `η` by π when the fold crosses a
    /// pole, so the direction is unchanged) and wraps `η` into `[0, 2π)`.
    pub fn new(phi: f64, eta: f64) -> Result<Self> {
        if !phi.is_finite() || !eta.is_finite() {
            return Err(Error::NonFinite("spin orientation"));
        }
        let mut p = phi.rem_euclid(TAU);
        let mut e = eta;
        if p > PI {
            p = TAU - p;
            e += PI;
        }
        let mut e = e.rem_euclid(TAU);
        if e >= TAU {
            e = 0.0;
        }
        Ok(Self { phi: p, eta: e })
    }

    pub const fn along_z() -> Self {
        Self { phi: 0.0, eta: 0.0 }
    }
}

/// `|↑̃⟩` and `|↓̃⟩` in `z`-basis components:
/// `|↑̃⟩ = cos(φ/2)|↑⟩ + i e^{-iη} sin(φ/2)|↓⟩`,
/// `|↓̃⟩ = -sin(φ/2)|↑⟩ + i e^{-iη} cos(φ/2)|↓⟩`.
pub fn tilde_basis(s: SpinOrientation) -> ([Complex; 2], [Complex; 2]) {
    let (sh, ch) = (0.5 * s.phi).sin_cos();
    let phase = c(0.0, 1.0) * Complex::from_polar(1.0, -s.eta);
    ([c(ch, 0.0), phase * sh], [c(-sh, 0.0), phase * ch])
}

/// Change of basis from tilde coordinates to `z` coordinates (columns are
/// `|↑̃⟩`, `|↓̃⟩`).
pub fn tilde_frame(s: SpinOrientation) -> Unitary2 {
    let (up, down) = tilde_basis(s);
    Unitary2::from_columns(up, down).expect("tilde basis is orthonormal")
}

/// A Wigner rotation about `axis` written in the tilde basis, `W† U W`.
pub fn rotation_in_tilde_basis(omega: f64, axis: [f64; 3], s: SpinOrientation) -> Unitary2 {
    let w = tilde_frame(s);
    let u = su2_rotation(omega, axis).expect("unit axis");
    w.dagger().mul(&u).mul(&w)
}

/// The boosted single-particle state.
#[derive(Debug, Clone, PartialEq)]
pub struct SingleState {
    pub amps: StateVector,
    pub geometry: BoostGeometry,
    pub spin: SpinOrientation,
    pub angles: WignerPair,
}

/// Closed-form image of `(|v1⟩ + |-v1⟩)|↑̃⟩/√2` under the second boost.
pub fn boost_single(g: &BoostGeometry, s: SpinOrientation) -> SingleState {
    let angles = wigner_pair(g);
    let (sp, cp) = s.phi.sin_cos();
    let (s1, c1) = angles.omega_plus.sin_cos();
    let (s2, c2) = angles.omega_minus.sin_cos();
    let k = FRAC_1_SQRT_2;
    let amps = vec![
        c(c1, -s1 * cp) * k,
        c(0.0, s1 * sp) * k,
        c(c2, s2 * cp) * k,
        c(0.0, -s2 * sp) * k,
    ];
    SingleState {
        amps: StateVector::from_vec(amps),
        geometry: *g,
        spin: s,
        angles,
    }
}

/// Builds the same state from the rotation matrices: the `+v1` branch is
/// rotated by `ω₊` about `+z`, the `-v1` branch by `ω₋` about `-z`, both in
/// the `z` basis, then projected back onto the tilde basis.
pub fn boost_single_oracle(g: &BoostGeometry, s: SpinOrientation) -> SingleState {
    let angles = wigner_pair(g);
    let (up, _) = tilde_basis(s);
    let frame = tilde_frame(s);
    let branch = |omega: f64, axis: [f64; 3]| {
        let u = su2_rotation(omega, axis).expect("unit axis");
        frame.dagger().apply(u.apply(up))
    };
    let plus = branch(angles.omega_plus, Z_AXIS);
    let minus = branch(angles.omega_minus, MINUS_Z_AXIS);
    let vel = StateVector::from_real(&[FRAC_1_SQRT_2, 0.0]).expect("non-empty");
    let vel_minus = StateVector::from_real(&[0.0, FRAC_1_SQRT_2]).expect("non-empty");
    let mut amps = tensor_product(&vel, &StateVector::from_vec(plus.to_vec()));
    amps.axpy(
        c(1.0, 0.0),
        &tensor_product(&vel_minus, &StateVector::from_vec(minus.to_vec())),
    )
    .expect("equal dims");
    SingleState {
        amps,
        geometry: *g,
        spin: s,
        angles,
    }
}

/// Reduced state of the velocity degree of freedom, spin traced out.
pub fn reduced_velocity_density(st: &SingleState) -> DensityMatrix {
    let rho = DensityMatrix::from_pure(&st.amps).expect("boosted state is non-zero");
    partial_trace(&rho, (2, 2), Subsystem::A).expect("2x2 bipartition")
}

/// Spin-velocity entanglement entropy in bits.
pub fn entanglement_entropy(st: &SingleState) -> f64 {
    von_neumann_entropy(&reduced_velocity_density(st)).expect("valid density matrix")
}

/// Entropy in the limit of both boosts approaching c:
/// `1 - ½(1+cos φ)log₂(1+cos φ) - ½(1-cos φ)log₂(1-cos φ)`.
pub fn entropy_limit_formula(phi: f64) -> f64 {
    let cp = phi.cos();
    let term = |x: f64| if x > 0.0 { 0.5 * x * x.log2() } else { 0.0 };
    (1.0 - term(1.0 + cp) - term(1.0 - cp)).clamp(0.0, 1.0)
}

/// Closed-form eigenvalues of the reduced velocity density,
/// `½ ± ½ sqrt(1 - sin²φ sin²(ω₊+ω₋))`.
pub fn reduced_density_eigenvalues(angles: WignerPair, phi: f64) -> [f64; 2] {
    let x = phi.sin() * angles.sum().sin();
    let r = 0.5 * (1.0 - x * x).max(0.0).sqrt();
    [0.5 - r, 0.5 + r]
}

/// Off-diagonal `⟨v₊|ρ|v₋⟩ = [cos(ω₊+ω₋) - i cos φ sin(ω₊+ω₋)] / 2`.
pub fn reduced_density_coherence(angles: WignerPair, phi: f64) -> Complex {
    let (s, co) = angles.sum().sin_cos();
    c(0.5 * co, -0.5 * phi.cos() * s)
}
