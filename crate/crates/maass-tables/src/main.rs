//! Generates `data/maass.jsonl`: every even and odd Hecke-Maass cusp form on
//! SL2(Z) with spectral parameter below `--t-max`, with Hecke eigenvalues
//! `lambda(1..=n_max)` and the harmonic weight `|rho(1)|^2 / cosh(pi t)`.
//!
//! Usage: `maass-tables [--t-max 40] [--n-max 2000] [--out data/maass.jsonl]`

mod expand;
mod hejhal;
mod kbessel;

use hejhal::{refine, Parity, Probe};
use serde_json::json;
use std::io::Write;

const STEP: f64 = 0.002;

fn scan(parity: Parity, t_lo: f64, t_hi: f64) -> Vec<f64> {
    // Two independent height pairs; a root is kept if either probe finds it and
    // the refined point passes the cross-height and Hecke checks.
    let probes = [Probe { y: [0.45, 0.38], eps: 1e-15 }, Probe { y: [0.41, 0.33], eps: 1e-15 }];
    let mut roots: Vec<f64> = Vec::new();
    for p in &probes {
        let mut prev: Option<f64> = None;
        let mut r = t_lo;
        while r < t_hi {
            let d = p.defect(r, parity).map(|d| d[0]);
            if let (Some(a), Some(b)) = (prev, d) {
                if a.signum() != b.signum() {
                    if let Some(root) = refine(p, parity, r - STEP, r) {
                        if accept(p, parity, root) && !roots.iter().any(|x| (x - root).abs() < 1e-7) {
                            roots.push(root);
                        }
                    }
                }
            }
            prev = d;
            r += STEP;
        }
    }
    roots.sort_by(f64::total_cmp);
    roots
}

fn accept(p: &Probe, parity: Parity, r: f64) -> bool {
    let Some(d) = p.defect(r, parity) else { return false };
    if d.iter().any(|x| x.abs() > 1e-8) {
        return false;
    }
    let f = expand::Form::new(r, parity);
    let c = &f.low;
    (c[1] * c[2] - c[5]).abs() < 1e-8 && (c[1] * c[1] - c[3] - 1.0).abs() < 1e-8
}

fn hecke_defect(c: &[f64]) -> f64 {
    let n_max = c.len();
    let mut worst: f64 = 0.0;
    for m in 1..=n_max {
        for n in m..=n_max / m {
            let mut s = 0.0;
            for d in 1..=m {
                if m % d == 0 && n % d == 0 {
                    s += c[m * n / (d * d) - 1];
                }
            }
            worst = worst.max((c[m - 1] * c[n - 1] - s).abs());
        }
    }
    worst
}

fn arg<T: std::str::FromStr>(args: &[String], name: &str, default: T) -> T {
    args.iter()
        .position(|a| a == name)
        .and_then(|i| args.get(i + 1))
        .map(|v| v.parse().unwrap_or_else(|_| panic!("bad value for {name}")))
        .unwrap_or(default)
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let t_max: f64 = arg(&args, "--t-max", 40.0);
    let n_max: usize = arg(&args, "--n-max", 2000);
    let out: String = arg(&args, "--out", "data/maass.jsonl".to_string());

    let mut forms = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        for r in scan(parity, 3.0, t_max) {
            forms.push((r, parity));
        }
    }
    forms.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut f = std::fs::File::create(&out).expect("cannot create output");
    writeln!(f, "{}", json!({"t_max_complete": t_max, "n_max": n_max})).unwrap();
    for (r, parity) in forms {
        let form = expand::Form::new(r, parity);
        let mut lambda = form.coefficients(n_max);
        let l1 = lambda[0];
        lambda.iter_mut().for_each(|x| *x /= l1);
        let defect = hecke_defect(&lambda);
        let alpha = form.alpha();
        eprintln!("{parity:?} t={r:.12} alpha={alpha:.10} hecke={defect:.1e}");
        assert!(defect < 1e-7, "Hecke check failed at t = {r}");
        let lambda: Vec<f64> = lambda.iter().map(|x| format!("{x:.14e}").parse().unwrap()).collect();
        let rec = json!({
            "t": r,
            "parity": if parity == Parity::Even { "even" } else { "odd" },
            "alpha": alpha,
            "lambda": lambda,
        });
        writeln!(f, "{rec}").unwrap();
    }
}
