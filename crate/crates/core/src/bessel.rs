//! Bessel functions needed by the commutator closed forms.
//!
//! `K₀`, `K₁` use the ascending series for `z ≤ 2` and Temme's continued
//! fraction (Steed's algorithm) above. `J₁`, `Y₁` use the ascending series up
//! to `z = 12` and the Hankel expansion beyond.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const SERIES_LIMIT: f64 = 2.0;
const OSC_SERIES_LIMIT: f64 = 12.0;

/// Modified Bessel function of the second kind, orders 0 and 1.
pub fn bessel_k(order: u8, z: f64) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::Domain(format!("K_{order} needs a positive finite argument, got {z}")));
    }
    match order {
        0 => Ok(k0_unchecked(z)),
        1 => Ok(k1_unchecked(z)),
        _ => Err(Error::Domain(format!("only orders 0 and 1 are provided, got {order}"))),
    }
}

pub(crate) fn k0_unchecked(z: f64) -> f64 {
    if z <= SERIES_LIMIT {
        k_series(z).0
    } else {
        k_continued_fraction(z).0
    }
}

pub(crate) fn k1_unchecked(z: f64) -> f64 {
    if z <= SERIES_LIMIT {
        k_series(z).1
    } else {
        k_continued_fraction(z).1
    }
}

/// Ascending series for `(K₀, K₁)`.
fn k_series(z: f64) -> (f64, f64) {
    let q = z * z / 4.0;
    let log_half = (z / 2.0).ln();
    let (i0, i1) = (bessel_i0(z), bessel_i1(z));
    // K₀ = −(ln(z/2) + γ) I₀ + Σ_{k≥1} H_k q^k/(k!)²
    let mut k0 = -(log_half + EULER_GAMMA) * i0;
    let mut term = 1.0;
    let mut harmonic = 0.0;
    for k in 1..60 {
        let kf = k as f64;
        term *= q / (kf * kf);
        harmonic += 1.0 / kf;
        let add = term * harmonic;
        k0 += add;
        if add.abs() < 1e-18 * k0.abs() {
            break;
        }
    }
    // K₁ = 1/z + ln(z/2) I₁ − (z/4) Σ_{k≥0} [ψ(k+1) + ψ(k+2)] q^k/(k!(k+1)!)
    let mut k1 = 1.0 / z + log_half * i1;
    let mut term = 1.0;
    let mut psi1 = -EULER_GAMMA;
    let mut psi2 = 1.0 - EULER_GAMMA;
    let mut acc = psi1 + psi2;
    for k in 1..60 {
        let kf = k as f64;
        term *= q / (kf * (kf + 1.0));
        psi1 += 1.0 / kf;
        psi2 += 1.0 / (kf + 1.0);
        let add = term * (psi1 + psi2);
        acc += add;
        if add.abs() < 1e-18 * acc.abs() {
            break;
        }
    }
    k1 -= z / 4.0 * acc;
    (k0, k1)
}

/// Temme's continued fraction for `(K₀, K₁)`, accurate for `z ≳ 2`.
fn k_continued_fraction(z: f64) -> (f64, f64) {
    let mut b = 2.0 * (1.0 + z);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..10_000 {
        a -= (2 * (i - 1)) as f64;
        c = -a * c / i as f64;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-17 {
            break;
        }
    }
    h *= a1;
    let k0 = (PI / (2.0 * z)).sqrt() * (-z).exp() / s;
    let k1 = k0 * (z + 0.5 - h) / z;
    (k0, k1)
}

/// Modified Bessel function of the first kind, order 0.
pub fn bessel_i0(z: f64) -> f64 {
    let q = z * z / 4.0;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..500 {
        let kf = k as f64;
        term *= q / (kf * kf);
        sum += term;
        if term < 1e-18 * sum {
            break;
        }
    }
    sum
}

/// Modified Bessel function of the first kind, order 1.
pub fn bessel_i1(z: f64) -> f64 {
    let q = z * z / 4.0;
    let mut term = z / 2.0;
    let mut sum = term;
    for k in 1..500 {
        let kf = k as f64;
        term *= q / (kf * (kf + 1.0));
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// `K₀` on the principal branch, extended to negative real arguments by
/// `K₀(−x) = K₀(x) − iπ I₀(x)`.
pub fn bessel_k0_principal(z: f64) -> Result<Complex64> {
    if z > 0.0 {
        Ok(Complex64::new(bessel_k(0, z)?, 0.0))
    } else if z < 0.0 {
        let x = -z;
        Ok(Complex64::new(bessel_k(0, x)?, -PI * bessel_i0(x)))
    } else {
        Err(Error::Domain("K_0 is singular at 0".into()))
    }
}

/// `K₁` on the principal branch, extended to negative real arguments by
/// `K₁(−x) = −K₁(x) − iπ I₁(x)`.
pub fn bessel_k1_principal(z: f64) -> Result<Complex64> {
    if z > 0.0 {
        Ok(Complex64::new(bessel_k(1, z)?, 0.0))
    } else if z < 0.0 {
        let x = -z;
        Ok(Complex64::new(-bessel_k(1, x)?, -PI * bessel_i1(x)))
    } else {
        Err(Error::Domain("K_1 is singular at 0".into()))
    }
}

/// Hankel asymptotic factors `(P, Q)` for order 1.
fn hankel_pq(z: f64) -> (f64, f64) {
    let mu = 4.0;
    let mut p = 0.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut prev = f64::INFINITY;
    for k in 0..60 {
        if k > 0 {
            let odd = (2 * k - 1) as f64;
            term *= (mu - odd * odd) / (k as f64 * 8.0 * z);
        }
        if term.abs() > prev {
            break;
        }
        prev = term.abs();
        match k % 4 {
            0 => p += term,
            1 => q += term,
            2 => p -= term,
            _ => q -= term,
        }
        if term.abs() < 1e-17 {
            break;
        }
    }
    (p, q)
}

/// Bessel function of the first kind, order 1.
pub fn bessel_j1(z: f64) -> f64 {
    if z < 0.0 {
        return -bessel_j1(-z);
    }
    if z <= OSC_SERIES_LIMIT {
        let q = z * z / 4.0;
        let mut term = z / 2.0;
        let mut sum = term;
        for k in 1..200 {
            let kf = k as f64;
            term *= -q / (kf * (kf + 1.0));
            sum += term;
            if term.abs() < 1e-18 {
                break;
            }
        }
        sum
    } else {
        let (p, q) = hankel_pq(z);
        let chi = z - 3.0 * FRAC_PI_4;
        (2.0 / (PI * z)).sqrt() * (p * chi.cos() - q * chi.sin())
    }
}

/// Bessel function of the second kind, order 1.
pub fn bessel_y1(z: f64) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::Domain(format!("Y_1 needs a positive finite argument, got {z}")));
    }
    if z <= OSC_SERIES_LIMIT {
        let q = z * z / 4.0;
        let mut term = z / 2.0;
        let mut psi1 = -EULER_GAMMA;
        let mut psi2 = 1.0 - EULER_GAMMA;
        let mut acc = term * (psi1 + psi2);
        for k in 1..200 {
            let kf = k as f64;
            term *= -q / (kf * (kf + 1.0));
            psi1 += 1.0 / kf;
            psi2 += 1.0 / (kf + 1.0);
            let add = term * (psi1 + psi2);
            acc += add;
            if add.abs() < 1e-18 {
                break;
            }
        }
        Ok(2.0 / PI * bessel_j1(z) * (z / 2.0).ln() - 2.0 / (PI * z) - acc / PI)
    } else {
        let (p, q) = hankel_pq(z);
        let chi = z - 3.0 * FRAC_PI_4;
        Ok((2.0 / (PI * z)).sqrt() * (p * chi.sin() + q * chi.cos()))
    }
}
