//! Elementary arithmetic: multiplicative functions, modular inverses and
//! additive characters.

use crate::{invalid, Complex64, Error, Result};
use std::f64::consts::TAU;
use std::sync::OnceLock;

/// Primes up to 2^16, enough to factor any `n < 2^32` by trial division.
fn small_primes() -> &'static [u64] {
    static P: OnceLock<Vec<u64>> = OnceLock::new();
    P.get_or_init(|| {
        let n = 1usize << 16;
        let mut comp = vec![false; n + 1];
        let mut out = Vec::new();
        for i in 2..=n {
            if !comp[i] {
                out.push(i as u64);
                let mut j = i * i;
                while j <= n {
                    comp[j] = true;
                    j += i;
                }
            }
        }
        out
    })
}

/// Prime factorisation as `(p, e)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for &p in small_primes() {
        if p * p > n {
            break;
        }
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn gcd_i(a: i64, b: i64) -> u64 {
    gcd(a.unsigned_abs(), b.unsigned_abs())
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

pub fn mobius(n: u64) -> Result<i8> {
    if n == 0 {
        return invalid("mobius(0)");
    }
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        Ok(0)
    } else if f.len().is_multiple_of(2) {
        Ok(1)
    } else {
        Ok(-1)
    }
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// Ordinary divisor count `d(n)`.
pub fn divisor_count(n: u64) -> u64 {
    factorize(n).iter().map(|&(_, e)| e as u64 + 1).product()
}

/// Number of ordered triples `(a, b, c)` with `abc = n`.
pub fn d3(n: u64) -> Result<u64> {
    if n == 0 {
        return invalid("d3(0)");
    }
    // d3(p^e) = (e+1)(e+2)/2
    Ok(factorize(n).iter().map(|&(_, e)| (e as u64 + 1) * (e as u64 + 2) / 2).product())
}

/// All positive divisors of `n`, unsorted.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out
}

/// `y` in `[0, c)` with `x y = 1 (mod c)`.
pub fn inv_mod(x: i64, c: u64) -> Result<u64> {
    if c == 0 {
        return invalid("modulus 0");
    }
    let xr = x.rem_euclid(c as i64) as i128;
    let (mut r0, mut r1) = (c as i128, xr);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return Err(Error::NotInvertible { x, c });
    }
    Ok(s0.rem_euclid(c as i128) as u64)
}

/// `exp(2 pi i x)` for real `x`, reduced to `[0, 1)` first.
pub fn e(x: f64) -> Complex64 {
    let f = x - x.floor();
    let (s, c) = (TAU * f).sin_cos();
    Complex64::new(c, s)
}

/// `exp(2 pi i a / c)`. Exact at multiples of a quarter turn.
pub fn additive_character(a: i64, c: u64) -> Result<Complex64> {
    if c == 0 {
        return invalid("modulus 0");
    }
    let a = a.rem_euclid(c as i64) as u64;
    if (4 * a).is_multiple_of(c) {
        return Ok(match 4 * a / c {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        });
    }
    let (s, co) = (TAU * a as f64 / c as f64).sin_cos();
    Ok(Complex64::new(co, s))
}

/// Table of `e(j/c)` for `j = 0..c`.
pub fn character_table(c: u64) -> Vec<Complex64> {
    (0..c as i64).map(|j| additive_character(j, c).unwrap()).collect()
}

/// A fraction `numerator / modulus` with `0 <= numerator < modulus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FareyFraction {
    pub numerator: u64,
    pub modulus: u64,
}

impl FareyFraction {
    pub fn new(numerator: u64, modulus: u64) -> Result<Self> {
        if modulus == 0 || numerator >= modulus {
            return invalid(format!("{numerator}/{modulus} is not reduced into [0, 1)"));
        }
        Ok(Self { numerator, modulus })
    }

    pub fn is_primitive(&self) -> bool {
        gcd(self.numerator, self.modulus) == 1
    }

    /// `e(numerator * m / modulus)`.
    pub fn character(&self, m: i64) -> Complex64 {
        let a = (self.numerator as i128 * m as i128).rem_euclid(self.modulus as i128) as i64;
        additive_character(a, self.modulus).unwrap()
    }
}

/// Compensated complex accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub struct KahanSum {
    sum: Complex64,
    comp: Complex64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: Complex64) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> Complex64 {
        self.sum
    }
}

impl std::iter::FromIterator<Complex64> for KahanSum {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        let mut k = KahanSum::new();
        for x in iter {
            k.add(x);
        }
        k
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(mobius(1).unwrap(), 1);
        assert_eq!(mobius(6).unwrap(), 1);
        assert_eq!(mobius(12).unwrap(), 0);
        assert!(mobius(0).is_err());
        assert_eq!(d3(1).unwrap(), 1);
        assert_eq!(d3(2).unwrap(), 3);
        assert_eq!(d3(4).unwrap(), 6);
        assert!(d3(0).is_err());
        assert_eq!(inv_mod(1, 5).unwrap(), 1);
        assert_eq!(inv_mod(3, 7).unwrap(), 5);
        assert_eq!(inv_mod(2, 4), Err(Error::NotInvertible { x: 2, c: 4 }));
        assert_eq!(additive_character(0, 7).unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(additive_character(1, 2).unwrap(), Complex64::new(-1.0, 0.0));
        assert_eq!(additive_character(1, 4).unwrap(), Complex64::new(0.0, 1.0));
        assert!(additive_character(1, 0).is_err());
    }

    #[test]
    fn mobius_multiplicative() {
        for m in 1..=100u64 {
            for n in 1..=100u64 {
                if gcd(m, n) == 1 {
                    assert_eq!(mobius(m * n).unwrap(), mobius(m).unwrap() * mobius(n).unwrap());
                }
            }
        }
    }

    #[test]
    fn d3_is_divisor_sum_of_d() {
        for n in 1..=10_000u64 {
            let s: u64 = divisors(n).iter().map(|&d| divisor_count(n / d)).sum();
            assert_eq!(d3(n).unwrap(), s, "n = {n}");
        }
    }

    #[test]
    fn inverses_up_to_1000() {
        for c in 1..=1000u64 {
            for x in 0..c {
                if gcd(x, c) == 1 {
                    assert_eq!((x * inv_mod(x as i64, c).unwrap()) % c, 1 % c);
                }
            }
        }
    }

    #[test]
    fn factorize_roundtrip() {
        for n in 1..5000u64 {
            assert_eq!(factorize(n).iter().map(|&(p, e)| p.pow(e)).product::<u64>(), n);
        }
        assert_eq!(factorize(4_294_967_291), vec![(4_294_967_291, 1)]);
    }

    proptest! {
        #[test]
        fn character_unit_modulus_and_periodic(a in -1_000_000i64..1_000_000, c in 1u64..5000) {
            let z = additive_character(a, c).unwrap();
            prop_assert!((z.norm() - 1.0).abs() < 1e-12);
            let w = additive_character(a + 17 * c as i64, c).unwrap();
            prop_assert_eq!(z, w);
        }

        #[test]
        fn inverse_of_negative(x in -10_000i64..10_000, c in 2u64..2000) {
            match inv_mod(x, c) {
                Ok(y) => prop_assert_eq!((x.rem_euclid(c as i64) as u64 * y) % c, 1),
                Err(_) => prop_assert!(gcd_i(x, c as i64) > 1),
            }
        }
    }
}
