use nonrecip::model::{build_drift_matrix, SystemParams, DIM};
use nonrecip::oracle::{time_domain_transfer, ProbeOptions};
use nonrecip::spectra::{scattering_probabilities, transfer_rows};
use num_complex::Complex64;
use rand::{rngs::StdRng, Rng, SeedableRng};
use rayon::prelude::*;

fn relative(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

#[test]
fn random_probes_match_frequency_domain() {
    let d = build_drift_matrix(&SystemParams::default()).unwrap();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let samples: Vec<(usize, f64)> = (0..24)
        .map(|_| (rng.gen_range(0..DIM), rng.gen_range(-40e6..40e6)))
        .collect();
    let worst: Vec<(usize, f64, f64)> = samples
        .par_iter()
        .map(|&(channel, omega)| {
            let run = time_domain_transfer(&d, channel, omega, &ProbeOptions::default()).unwrap();
            let rows = transfer_rows(&d, omega).unwrap();
            let err =
                relative(run.amplitude_out[0], rows.fl[channel]).max(relative(run.amplitude_out[1], rows.fr[channel]));
            (channel, omega, err)
        })
        .collect();
    for (channel, omega, err) in &worst {
        println!("channel {} omega {omega:+.4e}: {err:.2e}", channel + 1);
    }
    for (channel, omega, err) in worst {
        assert!(err <= 1e-6, "channel {} at {omega:e}: {err:e}", channel + 1);
    }
}

#[test]
fn transmitted_probability_at_photon_center() {
    let d = build_drift_matrix(&SystemParams::default()).unwrap();
    let run = time_domain_transfer(&d, 1, 0.0, &ProbeOptions::default()).unwrap();
    let (_, fr) = scattering_probabilities(&transfer_rows(&d, 0.0).unwrap());
    let got = run.amplitude_out[1].norm_sqr();
    assert!((got - fr[1]).abs() <= 1e-6 * fr[1], "{got} vs {}", fr[1]);
}

#[test]
fn halving_the_step_converges() {
    let d = build_drift_matrix(&SystemParams::default()).unwrap();
    for (channel, omega) in [(0, 3e6), (2, -12e6), (4, 20e6)] {
        let coarse = time_domain_transfer(&d, channel, omega, &ProbeOptions::default()).unwrap();
        let fine = time_domain_transfer(
            &d,
            channel,
            omega,
            &ProbeOptions {
                steps_per_rate: 100.0,
                ..Default::default()
            },
        )
        .unwrap();
        assert!((fine.step / coarse.step - 0.5).abs() < 1e-3);
        for k in 0..2 {
            let rel = relative(coarse.amplitude_out[k], fine.amplitude_out[k]);
            assert!(rel < 1e-8, "channel {} port {k}: {rel:e}", channel + 1);
        }
    }
}
