//! Boost geometry and Wigner angles.
//!
//! Speeds are dimensionless (`β = v/c`). The first boost `v1` lies along
//! `+y`, the second boost `v2` lies in the `x-y` plane at angle `θ` from
//! `v1`, so the rotation axis `v̂2 × v̂1` is `+z` for the `+v1` branch and
//! `-z` for the `-v1` branch.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::Serialize;

use crate::error::{Error, Result};

/// Boost speed as a fraction of c, `0 <= β < 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Speed(f64);

impl Speed {
    pub fn new(beta: f64) -> Result<Self> {
        if !beta.is_finite() || !(0.0..1.0).contains(&beta) {
            return Err(Error::SpeedOutOfRange { beta });
        }
        Ok(Self(beta))
    }

    pub const fn zero() -> Self {
        Self(0.0)
    }

    pub fn beta(self) -> f64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0.0
    }
}

/// Lorentz factor `(1 - β²)^(-1/2)`.
pub fn gamma(v: Speed) -> f64 {
    let b = v.0;
    // (1-β)(1+β) keeps precision as β → 1
    1.0 / ((1.0 - b) * (1.0 + b)).sqrt()
}

/// Lorentz factor of a raw β; fails for `β >= 1`.
pub fn gamma_of_beta(beta: f64) -> Result<f64> {
    Speed::new(beta).map(gamma)
}

/// Normalize an angle between two directions into `[0, π]`.
pub fn normalize_opening_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t > PI {
        TAU - t
    } else {
        t
    }
}

/// Two boost speeds and the angle between the boosts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoostGeometry {
    pub v1: Speed,
    pub v2: Speed,
    /// Angle between `v1` and `v2`, in `[0, π]`.
    pub theta: f64,
}

impl BoostGeometry {
    pub fn new(v1: Speed, v2: Speed, theta: f64) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::NonFinite("theta"));
        }
        Ok(Self {
            v1,
            v2,
            theta: normalize_opening_angle(theta),
        })
    }

    pub fn from_betas(beta1: f64, beta2: f64, theta: f64) -> Result<Self> {
        Self::new(Speed::new(beta1)?, Speed::new(beta2)?, theta)
    }

    /// True when no Wigner rotation occurs: a zero speed or collinear boosts.
    pub fn is_trivial(&self) -> bool {
        self.v1.is_zero() || self.v2.is_zero() || self.theta == 0.0 || self.theta == PI
    }
}

/// Rotation angles picked up by the `+v1` and `-v1` velocity branches.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WignerPair {
    pub omega_plus: f64,
    pub omega_minus: f64,
}

impl WignerPair {
    pub const ZERO: Self = Self {
        omega_plus: 0.0,
        omega_minus: 0.0,
    };

    pub fn sum(&self) -> f64 {
        self.omega_plus + self.omega_minus
    }

    pub fn difference(&self) -> f64 {
        self.omega_plus - self.omega_minus
    }
}

/// `D = sqrt((γ1+1)/(γ1-1) · (γ2+1)/(γ2-1))`
pub fn d_factor(g1: f64, g2: f64) -> Result<f64> {
    for g in [g1, g2] {
        if g.partial_cmp(&1.0) != Some(std::cmp::Ordering::Greater) || !g.is_finite() {
            return Err(Error::SingularKinematics { gamma: g });
        }
    }
    Ok((((g1 + 1.0) / (g1 - 1.0)) * ((g2 + 1.0) / (g2 - 1.0))).sqrt())
}

/// D computed from speeds. `(γ+1)/(γ-1) = (1 + sqrt(1-β²))² / β²`, which
/// avoids the cancellation in `γ - 1` for small β.
fn d_from_speeds(v1: Speed, v2: Speed) -> f64 {
    let ratio = |b: f64| {
        let r = (1.0 + ((1.0 - b) * (1.0 + b)).sqrt()) / b;
        r * r
    };
    (ratio(v1.0) * ratio(v2.0)).sqrt()
}

/// Wigner angle `ω` with `tan ω = sin θ / (cos θ + D)`.
pub fn wigner_angle(v1: Speed, v2: Speed, theta: f64) -> f64 {
    let theta = normalize_opening_angle(theta);
    if v1.is_zero() || v2.is_zero() || theta == 0.0 || theta == PI {
        return 0.0;
    }
    let d = d_from_speeds(v1, v2);
    theta.sin().atan2(theta.cos() + d)
}

/// `ω₊` from the opening angle θ; `ω₋` is the same angle for the `-v1`
/// branch, which subtends `π - θ` with `v2`: `tan ω₋ = sin θ / (D - cos θ)`.
pub fn wigner_pair(g: &BoostGeometry) -> WignerPair {
    if g.is_trivial() {
        return WignerPair::ZERO;
    }
    WignerPair {
        omega_plus: wigner_angle(g.v1, g.v2, g.theta),
        omega_minus: wigner_angle(g.v1, g.v2, PI - g.theta),
    }
}

/// `lim_{β1,β2→1} (ω₊ + ω₋)`, evaluated at `D = 1`.
pub fn omega_sum_limit(theta: f64) -> Result<f64> {
    let theta = normalize_opening_angle(theta);
    if theta == 0.0 || theta == PI {
        return Err(Error::DegenerateGeometry { theta });
    }
    let (s, c) = theta.sin_cos();
    Ok(s.atan2(1.0 + c) + s.atan2(1.0 - c))
}

/// Limits of the individual branch angles, `(θ/2, π/2 - θ/2)`.
pub fn wigner_pair_limit(theta: f64) -> Result<WignerPair> {
    let theta = normalize_opening_angle(theta);
    if theta == 0.0 || theta == PI {
        return Err(Error::DegenerateGeometry { theta });
    }
    Ok(WignerPair {
        omega_plus: 0.5 * theta,
        omega_minus: FRAC_PI_2 - 0.5 * theta,
    })
}

/// Three-velocity in units of c.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Velocity3([f64; 3]);

impl Velocity3 {
    pub fn new(components: [f64; 3]) -> Result<Self> {
        if components.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("velocity"));
        }
        let v = Self(components);
        let magnitude = v.magnitude();
        if magnitude >= 1.0 {
            return Err(Error::VelocityOutOfRange { magnitude });
        }
        Ok(v)
    }

    pub fn along(direction: [f64; 3], speed: Speed) -> Result<Self> {
        let n = norm(direction);
        if n == 0.0 {
            return Ok(Self([0.0; 3]));
        }
        Self::new(direction.map(|x| x * speed.beta() / n))
    }

    pub fn components(&self) -> [f64; 3] {
        self.0
    }

    pub fn magnitude(&self) -> f64 {
        norm(self.0)
    }
}

fn norm(v: [f64; 3]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a.iter().zip(&b).map(|(x, y)| x * y).sum()
}

/// Velocity of a particle moving at `u` after a boost by `v`:
/// `(v + u/γv + (γv/(1+γv)) (v·u) v) / (1 + v·u)`.
pub fn compose_velocities(u: Velocity3, v: Velocity3) -> Velocity3 {
    let (u, v) = (u.0, v.0);
    let v2 = dot(v, v);
    if v2 == 0.0 {
        return Velocity3(u);
    }
    let gv = 1.0 / ((1.0 - v2).sqrt());
    let vu = dot(v, u);
    let k = gv / (1.0 + gv) * vu;
    let denom = 1.0 + vu;
    let mut out = [0.0; 3];
    for i in 0..3 {
        out[i] = (v[i] + u[i] / gv + k * v[i]) / denom;
    }
    // roundoff can only push the result onto the light cone when both
    // inputs are already within a few ulps of it
    let m = norm(out);
    if m >= 1.0 {
        let shrink = (1.0 - f64::EPSILON) / m;
        out.iter_mut().for_each(|x| *x *= shrink);
    }
    Velocity3(out)
}

/// The two post-boost velocity labels `v±`, the images of `±v1` under `v2`.
pub fn branch_velocities(g: &BoostGeometry) -> (Velocity3, Velocity3) {
    let (s, c) = g.theta.sin_cos();
    let b1 = g.v1.beta();
    let boost = Velocity3([g.v2.beta() * s, g.v2.beta() * c, 0.0]);
    let plus = compose_velocities(Velocity3([0.0, b1, 0.0]), boost);
    let minus = compose_velocities(Velocity3([0.0, -b1, 0.0]), boost);
    (plus, minus)
}
