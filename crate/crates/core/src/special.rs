//! Complex log-gamma and the Riemann zeta function.

use crate::Complex64;
use std::f64::consts::PI;

/// `B_{2k} / (2k (2k-1))` for the Stirling series.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
];

/// `log Gamma(z)`. For `Re z >= 1/2` this is the branch continuous from the
/// positive axis; left of that line it is correct modulo `2 pi i`, which is
/// all that exponentiated products of gamma factors need.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Reflection: lnG(z) = ln(pi) - ln(sin(pi z)) - lnG(1 - z), with the
        // branch of ln sin chosen continuously in the upper/lower half plane.
        let lg = ln_gamma(Complex64::new(1.0, 0.0) - z);
        return Complex64::new(PI.ln(), 0.0) - ln_sin_pi(z) - lg;
    }
    // Shift to Re z >= 15 so the Stirling series is accurate to ~1e-16.
    let mut shift = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.norm() < 15.0 {
        shift += w.ln();
        w += 1.0;
    }
    let mut s = (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln();
    let w2 = w * w;
    let mut wp = w;
    for c in STIRLING {
        s += c / wp;
        wp *= w2;
    }
    s - shift
}

/// `log sin(pi z)` modulo `2 pi i`, without overflow for large `|Im z|`.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    // sin(pi z) = (e^{-i pi z} - e^{i pi z}) / (-2i); factor out the dominant exponential.
    let iz = Complex64::new(0.0, PI) * z;
    let half_i = Complex64::new(0.0, PI / 2.0);
    if z.im >= 0.0 {
        -iz + (1.0 - (2.0 * iz).exp()).ln() - 2f64.ln() + half_i
    } else {
        iz + (1.0 - (-2.0 * iz).exp()).ln() - 2f64.ln() - half_i
    }
}

pub fn gamma(z: Complex64) -> Complex64 {
    ln_gamma(z).exp()
}

/// Riemann zeta by Euler-Maclaurin, valid for `Re s > -10`, `s != 1`.
pub fn zeta(s: Complex64) -> Complex64 {
    let n = (s.norm() / 2.0).ceil().max(20.0) as usize;
    let one = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    for k in (1..n).rev() {
        sum += (-s * (k as f64).ln()).exp();
    }
    let nf = n as f64;
    let nms = (-s * nf.ln()).exp();
    sum += nms * nf / (s - one) + 0.5 * nms;
    // Bernoulli terms: B_{2j}/(2j)! * s(s+1)...(s+2j-2) N^{-s-2j+1}
    const B: [f64; 12] = [
        1.0 / 6.0,
        -1.0 / 30.0,
        1.0 / 42.0,
        -1.0 / 30.0,
        5.0 / 66.0,
        -691.0 / 2730.0,
        7.0 / 6.0,
        -3617.0 / 510.0,
        43867.0 / 798.0,
        -174611.0 / 330.0,
        854513.0 / 138.0,
        -236364091.0 / 2730.0,
    ];
    let mut poch = s; // s (s+1) ... (s+2j-2)
    let mut fact = 2.0; // (2j)!
    let mut npow = nms / nf; // N^{-s-1}
    for (j, b) in B.iter().enumerate() {
        let term = poch * npow * (*b / fact);
        sum += term;
        let j2 = 2.0 * (j + 1) as f64;
        poch *= (s + j2 - 1.0) * (s + j2);
        fact *= (j2 + 1.0) * (j2 + 2.0);
        npow /= nf * nf;
    }
    sum
}
