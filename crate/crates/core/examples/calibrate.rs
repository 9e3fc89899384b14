//! Fits the constants frozen in `calib.rs` on the calibration seed and on
//! grid points interleaved with (never equal to) the verification grids.
//!
//! cargo run --release --example calibrate

use rayon::prelude::*;
use spmoments::battery::{decay_x_grid, spectral_cases, spectral_terms, u_grid, weight_grid, Split};
use spmoments::calib::CALIBRATION_SEED;
use spmoments::coeffs::{bundled_dataset_path, load_dataset};
use spmoments::sieve::{oscillatory_ratio, sweep_case};
use spmoments::weights::{decay_profile, hat_envelope, w_ab, w_ab_hat_closed, WeightParams};

fn main() -> spmoments::Result<()> {
    let sieve = (0..1000u64)
        .into_par_iter()
        .map(|case| {
            let c = sweep_case(CALIBRATION_SEED, case);
            let f = c.phase.build(&c.seq)?;
            oscillatory_ratio(&c.seq, c.big_b, c.t, &f)
        })
        .collect::<spmoments::Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    println!("oscillatory sieve: max ratio {sieve:.6}, C_SIEVE = {:.6}", 2.0 * sieve);

    let mut hat: f64 = 0.0;
    let mut decay = [0.0f64; 5];
    for (a, b) in weight_grid() {
        let p = WeightParams::new(a, b)?;
        for up in u_grid(Split::Calibration) {
            let v = w_ab_hat_closed(up / a, &p, 1e-13)?.norm() / a;
            hat = hat.max(v / hat_envelope(up, &p));
        }
        for x in decay_x_grid(a, b, Split::Calibration) {
            let w = w_ab(x, &p, 1e-13)?.norm();
            for (k, d) in decay.iter_mut().enumerate() {
                *d = d.max(w / decay_profile(x, &p, k as u32));
            }
        }
    }
    println!("hat envelope: max ratio {hat:.6}, C_HAT = {:.6}", 2.0 * hat);
    println!("decay: max ratios {decay:?}, C_DECAY = {:?}", decay.map(|d| 2.0 * d));

    let ds = load_dataset(bundled_dataset_path())?;
    let cases = spectral_cases(CALIBRATION_SEED, 8)?;
    let worst = cases
        .par_iter()
        .map(|c| spectral_terms(&ds, c).map(|(s, s1, env)| (s - s1) / env))
        .collect::<spmoments::Result<Vec<f64>>>()?
        .into_iter()
        .fold(f64::NEG_INFINITY, f64::max);
    println!("spectral sieve: max (S - s1)/envelope {worst:.6e}, C_S1_ENVELOPE = {:.6e}", 2.0 * worst.max(0.0));
    Ok(())
}
