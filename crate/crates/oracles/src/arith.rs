//! Arithmetic functions by direct enumeration.

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Mobius function by trial division.
pub fn mobius(n: u64) -> i64 {
    assert!(n > 0);
    let mut m = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// Number of ordered triples `(a, b, c)` with `abc = n`.
pub fn d3(n: u64) -> u64 {
    let mut count = 0;
    for a in 1..=n {
        if !n.is_multiple_of(a) {
            continue;
        }
        let m = n / a;
        for b in 1..=m {
            if m.is_multiple_of(b) {
                count += 1;
            }
        }
    }
    count
}

pub fn divisor_count(n: u64) -> u64 {
    (1..=n).filter(|d| n.is_multiple_of(*d)).count() as u64
}

/// Dirichlet convolution of `f` and `g` on `1..=len` (index `n - 1`).
pub fn convolve(f: &[f64], g: &[f64]) -> Vec<f64> {
    let len = f.len().min(g.len());
    let mut h = vec![0.0; len];
    for a in 1..=len {
        for b in 1..=len / a {
            h[a * b - 1] += f[a - 1] * g[b - 1];
        }
    }
    h
}

/// Dirichlet coefficients of `L(s)^3` for `L(s) = sum lambda(n) n^{-s}`.
pub fn cube_lhs(lambda: &[f64]) -> Vec<f64> {
    convolve(&convolve(lambda, lambda), lambda)
}

/// Dirichlet coefficients of
/// `sum_{a,b} mu(a) d3(b) (ab)^{-2s} sum_n d3(n) lambda(an) (an)^{-s}` up to `lambda.len()`.
pub fn cube_rhs(lambda: &[f64]) -> Vec<f64> {
    let len = lambda.len();
    let mut out = vec![0.0; len];
    for a in 1..=len {
        let mu = mobius(a as u64) as f64;
        if mu == 0.0 {
            continue;
        }
        for b in 1..=len {
            let ab2 = (a * b).saturating_mul(a * b);
            if ab2 > len {
                break;
            }
            let db = d3(b as u64) as f64;
            // (ab)^{2s} (an)^s = (a^3 b^2 n)^s
            for n in 1.. {
                let idx = a * a * a * b * b * n;
                if idx > len {
                    break;
                }
                out[idx - 1] += mu * db * d3(n as u64) as f64 * lambda[a * n - 1];
            }
        }
    }
    out
}

fn valuation(mut n: u64, p: u64) -> u32 {
    let mut k = 0;
    while n.is_multiple_of(p) {
        n /= p;
        k += 1;
    }
    k
}

/// `A(m, n)` of the minimal-parabolic Eisenstein series with trivial
/// parameters: multiplicative, and at `(p^a, p^b)` the dimension of the GL(3)
/// representation of highest weight `(a+b, b, 0)`, `(a+1)(b+1)(a+b+2)/2`.
pub fn gl3_trivial_eisenstein(m: u64, n: u64) -> u64 {
    let mut out = 1;
    for p in 2..=m.max(n) {
        if (!m.is_multiple_of(p) && !n.is_multiple_of(p)) || (2..p).any(|q| p % q == 0) {
            continue;
        }
        let (a, b) = (valuation(m, p) as u64, valuation(n, p) as u64);
        out *= (a + 1) * (b + 1) * (a + b + 2) / 2;
    }
    out
}
