use std::f64::consts::PI;

use proptest::prelude::*;
use relboost::cooper::{boost_pair, closed_form, decompose, initial_pair, SpinKind, VelocityParity};
use relboost::kinematics::{
    compose_velocities, gamma_of_beta, wigner_pair, BoostGeometry, Speed, Velocity3, WignerPair,
};
use relboost::oracle::{compare_states, fit_gamma_exponent, linear_fit};
use relboost::qmath::{
    partial_trace, su2_rotation, tensor_product, von_neumann_entropy, Complex, DensityMatrix,
    StateVector, Subsystem,
};
use relboost::single_particle::{
    boost_single, boost_single_oracle, entanglement_entropy, reduced_density_eigenvalues,
    SpinOrientation,
};

fn state(dim: usize) -> impl Strategy<Value = StateVector> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim)
        .prop_filter("non-zero", |v| v.iter().any(|(a, b)| a.abs() + b.abs() > 1e-3))
        .prop_map(|v| {
            StateVector::new(v.into_iter().map(|(a, b)| Complex::new(a, b)).collect())
                .unwrap()
                .normalized()
        })
}

fn axis() -> impl Strategy<Value = [f64; 3]> {
    (0.0f64..PI, 0.0f64..2.0 * PI)
        .prop_map(|(t, p)| [t.sin() * p.cos(), t.sin() * p.sin(), t.cos()])
}

fn geometry() -> impl Strategy<Value = BoostGeometry> {
    (0.01f64..0.99, 0.01f64..0.99, 0.01f64..PI - 0.01)
        .prop_map(|(a, b, t)| BoostGeometry::from_betas(a, b, t).unwrap())
}

fn spin() -> impl Strategy<Value = SpinOrientation> {
    (0.0f64..=PI, 0.0f64..2.0 * PI).prop_map(|(p, e)| SpinOrientation::new(p, e).unwrap())
}

fn kind() -> impl Strategy<Value = SpinKind> {
    prop::sample::select(SpinKind::ALL.to_vec())
}

fn velocity() -> impl Strategy<Value = Velocity3> {
    (axis(), 0.0f64..0.999_999).prop_map(|(d, b)| Velocity3::along(d, Speed::new(b).unwrap()).unwrap())
}

proptest! {
    #[test]
    fn rotations_are_special_unitary(omega in -10.0f64..10.0, n in axis()) {
        let u = su2_rotation(omega, n).unwrap();
        prop_assert!(u.unitarity_defect() < 1e-14);
        prop_assert!((u.det() - Complex::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn partial_traces_are_valid_densities(psi in state(8), keep_a in any::<bool>()) {
        let rho = DensityMatrix::from_pure(&psi).unwrap();
        let keep = if keep_a { Subsystem::A } else { Subsystem::B };
        let (dims, kept) = if keep_a { ((2, 4), 2) } else { ((2, 4), 4) };
        let red = partial_trace(&rho, dims, keep).unwrap();
        prop_assert_eq!(red.dim(), kept);
        prop_assert!(red.check_invariants().is_ok());
    }

    #[test]
    fn entropy_is_invariant_under_unitary_conjugation(psi in state(4), omega in -3.0f64..3.0, n in axis()) {
        let rho = partial_trace(&DensityMatrix::from_pure(&psi).unwrap(), (2, 2), Subsystem::A).unwrap();
        let u = su2_rotation(omega, n).unwrap().entries();
        let flat = [u[0][0], u[0][1], u[1][0], u[1][1]];
        let rotated = rho.conjugated(&flat).unwrap();
        let a = von_neumann_entropy(&rho).unwrap();
        let b = von_neumann_entropy(&rotated).unwrap();
        prop_assert!((a - b).abs() < 1e-9, "{} vs {}", a, b);
    }

    #[test]
    fn tensor_norm_is_multiplicative(a in state(3), b in state(2), sa in 0.1f64..3.0, sb in 0.1f64..3.0) {
        let a = a.scaled(Complex::new(sa, 0.0));
        let b = b.scaled(Complex::new(0.0, sb));
        let ab = tensor_product(&a, &b);
        prop_assert!((ab.norm() - a.norm() * b.norm()).abs() < 1e-12 * ab.norm().max(1.0));
    }

    #[test]
    fn composed_velocities_stay_subluminal(u in velocity(), v in velocity()) {
        let w = compose_velocities(u, v);
        prop_assert!(w.magnitude() < 1.0);
    }

    #[test]
    fn composition_multiplies_gamma_factors(u in velocity(), v in velocity()) {
        // γ_w = γ_u γ_v (1 + u·v), checked away from the light cone
        prop_assume!(u.magnitude() < 0.99 && v.magnitude() < 0.99);
        let w = compose_velocities(u, v);
        let dot: f64 = u.components().iter().zip(v.components()).map(|(a, b)| a * b).sum();
        let expected = gamma_of_beta(u.magnitude()).unwrap() * gamma_of_beta(v.magnitude()).unwrap() * (1.0 + dot);
        let got = gamma_of_beta(w.magnitude()).unwrap();
        prop_assert!((got - expected).abs() < 1e-9 * expected, "{} vs {}", got, expected);
    }

    #[test]
    fn comparison_is_symmetric(a in state(16), b in state(16)) {
        let ab = compare_states(&a, &b, 1e-10).unwrap();
        let ba = compare_states(&b, &a, 1e-10).unwrap();
        prop_assert_eq!(ab.max_abs_deviation, ba.max_abs_deviation);
        prop_assert_eq!(ab.pass, ba.pass);
    }

    #[test]
    fn global_phase_never_matters(a in state(16), phase in 0.0f64..2.0 * PI) {
        let r = compare_states(&a, &a.scaled(Complex::from_polar(1.0, phase)), 1e-12).unwrap();
        prop_assert!(r.pass);
    }

    #[test]
    fn fit_slope_ignores_rescaling(scale in 1e-3f64..1e3, slope in 0.5f64..3.0) {
        let xs: Vec<f64> = (1..=8).map(|k| ((10 * k) as f64).to_radians().sin().ln()).collect();
        let ys: Vec<f64> = xs.iter().map(|x| slope * x).collect();
        let shifted: Vec<f64> = ys.iter().map(|y| y + scale.ln()).collect();
        let a = linear_fit(&xs, &ys).unwrap();
        let b = linear_fit(&xs, &shifted).unwrap();
        prop_assert!((a.slope - b.slope).abs() < 1e-10);
        prop_assert!((b.intercept - a.intercept - scale.ln()).abs() < 1e-10);
    }

    #[test]
    fn mixing_exponent_is_two_at_any_speed(b1 in 0.05f64..0.99, b2 in 0.05f64..0.99) {
        let grid: Vec<f64> = (1..=8).map(|k| ((10 * k) as f64).to_radians()).collect();
        let fit = fit_gamma_exponent(Speed::new(b1).unwrap(), Speed::new(b2).unwrap(), &grid).unwrap();
        prop_assert!((fit.slope - 2.0).abs() < 0.01, "slope {}", fit.slope);
    }

    #[test]
    fn single_closed_form_matches_oracle(g in geometry(), s in spin()) {
        let d = boost_single(&g, s).amps.max_abs_diff(&boost_single_oracle(&g, s).amps).unwrap();
        prop_assert!(d < 1e-12);
    }

    #[test]
    fn pair_closed_forms_match_oracle(g in geometry(), s in spin(), k in kind()) {
        let oracle = boost_pair(&g, &initial_pair(k, s));
        let r = compare_states(&closed_form(k, &g, s).amps, &oracle.amps, 1e-10).unwrap();
        prop_assert!(r.pass, "{:?}: {}", k, r.max_abs_deviation);
    }

    #[test]
    fn boosted_pairs_stay_antisymmetric_and_complete(g in geometry(), s in spin(), k in kind()) {
        let boosted = boost_pair(&g, &initial_pair(k, s));
        prop_assert!(boosted.exchange_antisymmetry_defect() < 1e-12);
        let d = decompose(&boosted, s);
        prop_assert!((d.total_weight() - 1.0).abs() < 1e-12);
        prop_assert!(d.reconstruct().max_abs_diff(&boosted.amps).unwrap() < 1e-12);
    }

    #[test]
    fn spin_kind_fixes_velocity_parity(g in geometry(), s in spin(), k in kind()) {
        // antisymmetric spin pairs with symmetric velocity and vice versa
        let d = decompose(&boost_pair(&g, &initial_pair(k, s)), s);
        for p in VelocityParity::ALL {
            for spin_kind in SpinKind::ALL {
                if spin_kind.partner_parity() != p {
                    prop_assert!(d.coefficient(p, spin_kind).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn entropy_is_reflection_symmetric(g in geometry(), phi in 0.0f64..=PI, eta in 0.0f64..6.0) {
        let a = entanglement_entropy(&boost_single(&g, SpinOrientation::new(phi, eta).unwrap()));
        let b = entanglement_entropy(&boost_single(&g, SpinOrientation::new(PI - phi, eta).unwrap()));
        prop_assert!((a - b).abs() < 1e-12);
        prop_assert!((-1e-15..=1.0 + 1e-12).contains(&a));
    }

    #[test]
    fn spectrum_depends_only_on_angle_sum(sum in 0.0f64..PI, split in -2.0f64..2.0, phi in 0.0f64..=PI) {
        let a = WignerPair { omega_plus: sum / 2.0, omega_minus: sum / 2.0 };
        let b = WignerPair { omega_plus: sum / 2.0 + split, omega_minus: sum / 2.0 - split };
        let ea = reduced_density_eigenvalues(a, phi);
        let eb = reduced_density_eigenvalues(b, phi);
        prop_assert!((ea[0] - eb[0]).abs() < 1e-12 && (ea[1] - eb[1]).abs() < 1e-12);
    }

    #[test]
    fn angle_sum_grows_with_speed(b in 0.01f64..0.98, db in 0.001f64..0.019, other in 0.01f64..0.99, theta in 0.01f64..PI - 0.01) {
        let slow = wigner_pair(&BoostGeometry::from_betas(b, other, theta).unwrap());
        let fast = wigner_pair(&BoostGeometry::from_betas(b + db, other, theta).unwrap());
        prop_assert!(fast.omega_plus >= slow.omega_plus);
        prop_assert!(fast.omega_minus >= slow.omega_minus);
        prop_assert!(fast.sum() <= PI / 2.0 + 1e-12);
    }
}
