use dpo_core::analytic::correlation::g2;
use dpo_core::analytic::moments::{
    mean_photon_cavity, mean_photon_fluorescent, mean_photon_signal,
};
use dpo_core::analytic::spectrum::{half_width, spectral_density, spectrum, LightKind};
use dpo_core::analytic::{reduced_atomic_ode, steady_state_atom, variances, AtomicState};
use dpo_core::{SystemParams, UniformGrid};
use num_complex::Complex64;
use proptest::prelude::*;

fn params() -> impl Strategy<Value = SystemParams> {
    (0.0..0.45f64, 0.001..0.05f64).prop_map(|(e, gc)| SystemParams::new(e, gc).unwrap())
}

proptest! {
    #[test]
    fn spectra_are_even_and_positive(p in params(), w in -5.0..5.0f64) {
        for kind in LightKind::ALL {
            let a = spectral_density(kind, &p, w);
            let b = spectral_density(kind, &p, -w);
            prop_assert!(a > 0.0);
            prop_assert!((a - b).abs() <= 1e-15 * a.max(1.0));
        }
    }

    #[test]
    fn half_width_is_where_density_halves(p in params()) {
        for kind in LightKind::ALL {
            let hw = half_width(kind, &p).unwrap();
            let peak = spectral_density(kind, &p, 0.0);
            let at = spectral_density(kind, &p, hw);
            prop_assert!((at / peak - 0.5).abs() < 1e-6);
        }
    }

    #[test]
    fn photon_numbers_add_up(p in params()) {
        let sum = mean_photon_signal(&p) + mean_photon_fluorescent(&p);
        prop_assert!((sum - mean_photon_cavity(&p)).abs() < 1e-12);
    }

    #[test]
    fn variances_straddle_vacuum(e in 0.001..0.45f64, gc in 0.001..0.05f64) {
        let p = SystemParams::new(e, gc).unwrap();
        for kind in LightKind::ALL {
            let v = variances(kind, &p);
            prop_assert!(v.plus > 1.0 && v.minus < 1.0, "{kind}: {v:?}");
        }
    }

    #[test]
    fn g2_rises_monotonically_to_one(p in params()) {
        let tau: Vec<f64> = (0..200).map(|k| k as f64 * 5.0).collect();
        let s = g2(&p.rates(), &tau).unwrap();
        prop_assert_eq!(s.values[0], 0.0);
        for w in s.values.windows(2) {
            prop_assert!(w[1] >= w[0] && w[1] <= 1.0);
        }
    }

    #[test]
    fn atom_relaxes_to_steady_state(p in params(), re in -0.4..0.4f64, im in -0.4..0.4f64, sz in -0.2..0.2f64) {
        let rates = p.rates();
        let start = AtomicState::new(Complex64::new(re, im), sz).unwrap();
        let late = reduced_atomic_ode(&p, &rates, &start, &[1e6]).unwrap();
        let ss = steady_state_atom(&rates);
        let end = late.last().unwrap();
        prop_assert!((end.sigma_z - ss.sigma_z).abs() < 1e-9);
        prop_assert!(end.sigma_minus.norm() < 1e-9);
    }

    #[test]
    fn signal_spectrum_ignores_atom(e in 0.0..0.45f64, g1 in 0.0..0.05f64, g2 in 0.0..0.05f64) {
        let a = SystemParams::new(e, g1).unwrap();
        let b = SystemParams::new(e, g2).unwrap();
        let omegas = UniformGrid::symmetric(2.0, 41).unwrap().values();
        let sa = spectrum(LightKind::Signal, &a, &omegas).unwrap();
        let sb = spectrum(LightKind::Signal, &b, &omegas).unwrap();
        prop_assert_eq!(sa.values, sb.values);
    }
}
