//! Regularized momentum-space quadrature for `[Ω(x), Π(x')]` and for the
//! commutators of the `1/√ω`-weighted fields.
//!
//! The integrands can grow like `|k|`, so the integral is damped by `e^{−εk²}`
//! and the damped values for a halving sequence of `ε` are extrapolated to
//! `ε → 0` with a Richardson table in powers of `ε`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dispersion::FieldParams;
use crate::error::{Error, Result};
use crate::numerics::{exact_sum, gauss_legendre, richardson_table};
use crate::operators::{CommutationTable, Species};
use crate::ring::Bicomplex;

/// Exponent at which the Gaussian regulator is treated as zero.
const TAIL_EXPONENT: f64 = 45.0;
const CAUCHY_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    /// Largest regulator `ε₀`; level `n` uses `ε₀ / 2ⁿ`.
    pub regulator_epsilon: f64,
    pub k_max: f64,
    /// Gauss–Legendre nodes per panel.
    pub samples: usize,
    pub extrapolation_steps: usize,
}

impl QuadratureSpec {
    /// `ε₀ = Δ²/400` with six levels, so the smoothing width stays far
    /// below `|Δ|`; at `Δ = 0` a fixed `ε₀ = 10⁻²` is used.
    pub fn for_separation(delta_x: f64) -> Self {
        let eps0 = if delta_x == 0.0 { 1e-2 } else { delta_x * delta_x / 400.0 };
        let steps = 6;
        let eps_min = eps0 / f64::powi(2.0, steps as i32 - 1);
        Self {
            regulator_epsilon: eps0,
            k_max: (TAIL_EXPONENT / eps_min).sqrt(),
            samples: 16,
            extrapolation_steps: steps,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.regulator_epsilon > 0.0 && self.regulator_epsilon.is_finite()) {
            return Err(Error::Domain("regulator epsilon must be positive".into()));
        }
        if !(self.k_max > 0.0) {
            return Err(Error::Domain("k_max must be positive".into()));
        }
        if self.samples == 0 {
            return Err(Error::Domain("samples must be positive".into()));
        }
        if self.extrapolation_steps < 2 {
            return Err(Error::Domain("at least two extrapolation steps are needed".into()));
        }
        Ok(())
    }

    pub fn epsilons(&self) -> Vec<f64> {
        (0..self.extrapolation_steps)
            .map(|n| self.regulator_epsilon / f64::powi(2.0, n as i32))
            .collect()
    }
}

/// Mode density of `[Ω(x), Π(x + Δ)]` at momentum `k`:
/// `−iω_k [(J⁺ρ₁ + J⁻ρ̄₁) e^{ikΔ} + (J⁺ρ̄₄ + J⁻ρ₄) e^{−ikΔ}]`.
pub fn omega_pi_integrand(k: f64, delta_x: f64, params: &FieldParams, table: &CommutationTable) -> Result<Bicomplex> {
    let w = params.omega(k)?;
    let (c_plus, c_minus) = sector_rhos(k, table);
    let forward = Complex64::from_polar(1.0, k * delta_x);
    let bracket = c_plus * forward + c_minus * forward.conj();
    Ok(bracket * Complex64::new(0.0, -w))
}

/// Commutators that have a regular momentum integral.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Integrand {
    OmegaPi,
    WeightedOmegaOmega,
    WeightedPiPi,
}

/// `(J⁺ρ₁ + J⁻ρ̄₁, J⁺ρ̄₄ + J⁻ρ₄)` at momentum `k`.
fn sector_rhos(k: f64, table: &CommutationTable) -> (Bicomplex, Bicomplex) {
    let rho1 = table.rho_for(Species::A1, Species::B1, k, k);
    let rho4 = table.rho_for(Species::A2, Species::B2, k, k);
    (
        Bicomplex::J_PLUS * rho1 + Bicomplex::J_MINUS * rho1.conj_bar(),
        Bicomplex::J_PLUS * rho4.conj_bar() + Bicomplex::J_MINUS * rho4,
    )
}

/// Mode density of the chosen commutator at momentum `k`. The weighted
/// densities are `ω⁻¹[c₊e^{ikΔ} − c₋e^{−ikΔ}]` for `[Ω, Ω†]` and
/// `−ω[c₊e^{ikΔ} − c₋e^{−ikΔ}]` for `[Π, Π†]`.
pub fn integrand(which: Integrand, k: f64, delta_x: f64, params: &FieldParams, table: &CommutationTable) -> Result<Bicomplex> {
    match which {
        Integrand::OmegaPi => omega_pi_integrand(k, delta_x, params, table),
        Integrand::WeightedOmegaOmega | Integrand::WeightedPiPi => {
            let w = params.omega(k)?;
            let (c_plus, c_minus) = sector_rhos(k, table);
            let forward = Complex64::from_polar(1.0, k * delta_x);
            let bracket = c_plus * forward - c_minus * forward.conj();
            Ok(if which == Integrand::WeightedOmegaOmega { bracket * (1.0 / w) } else { bracket * (-w) })
        }
    }
}

/// Panel boundaries on `[lo, hi]` with width at most `h`, refined
/// geometrically towards `lo` down to `fine`.
fn panels(lo: f64, hi: f64, h: f64, fine: f64) -> Vec<f64> {
    let mut edges = vec![lo];
    if fine > 0.0 && fine < h {
        let mut w = fine;
        while w < h && lo + w < hi {
            edges.push(lo + w);
            w *= 2.0;
        }
    }
    let start = *edges.last().unwrap();
    let n = ((hi - start) / h).ceil().max(1.0) as usize;
    for i in 1..=n {
        edges.push(start + (hi - start) * i as f64 / n as f64);
    }
    edges
}

struct Rule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl Rule {
    /// Adds `∫_a^b f` to the four component accumulators.
    fn integrate<F: Fn(f64) -> Result<Bicomplex>>(&self, a: f64, b: f64, f: &F, acc: &mut [Vec<f64>; 4]) -> Result<()> {
        let (mid, half) = ((a + b) / 2.0, (b - a) / 2.0);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            let v = f(mid + half * x)? * (w * half);
            acc[0].push(v.x);
            acc[1].push(v.y);
            acc[2].push(v.u);
            acc[3].push(v.v);
        }
        Ok(())
    }
}

/// `∫ f(k) e^{−εk²} dk` over the allowed region `|k| ≥ k_c`, evaluating
/// `f(k) + f(−k)` on the half line.
fn regularized_integral(which: Integrand, delta_x: f64, params: &FieldParams, table: &CommutationTable, eps: f64, spec: &QuadratureSpec, rule: &Rule) -> Result<Bicomplex> {
    let kc = params.ir_cutoff();
    let k_end = spec.k_max.min((TAIL_EXPONENT / eps).sqrt());
    let h = if delta_x == 0.0 { 0.5 } else { 0.5f64.min(1.0 / delta_x.abs()) };
    let symmetric = |k: f64| -> Result<Bicomplex> {
        let damp = (-eps * k * k).exp();
        Ok((integrand(which, k, delta_x, params, table)? + integrand(which, -k, delta_x, params, table)?) * damp)
    };
    let mut acc: [Vec<f64>; 4] = Default::default();
    let mut start = 0.0;
    if kc > 0.0 {
        // k = k_c + s² removes the square-root edge of ω at the cutoff.
        let s_end = 1.0f64.min((k_end - kc).max(0.0).sqrt());
        let edges = panels(0.0, s_end, 0.125, 0.0);
        let mapped = |s: f64| -> Result<Bicomplex> { Ok(symmetric(kc + s * s)? * (2.0 * s)) };
        for w in edges.windows(2) {
            rule.integrate(w[0], w[1], &mapped, &mut acc)?;
        }
        start = kc + s_end * s_end;
    }
    if k_end > start {
        let fine = if kc == 0.0 { params.modified_mass_squared().max(0.0).sqrt() / 8.0 } else { 0.0 };
        let edges = panels(start, k_end, h, fine);
        for w in edges.windows(2) {
            rule.integrate(w[0], w[1], &symmetric, &mut acc)?;
        }
    }
    Ok(Bicomplex::new(exact_sum(&acc[0]), exact_sum(&acc[1]), exact_sum(&acc[2]), exact_sum(&acc[3])))
}

/// The damped integral at a single regulator value `ε`.
pub fn omega_pi_regularized(delta_x: f64, params: &FieldParams, eps: f64, spec: &QuadratureSpec, table: &CommutationTable) -> Result<Bicomplex> {
    spec.validate()?;
    let (nodes, weights) = gauss_legendre(spec.samples);
    regularized_integral(Integrand::OmegaPi, delta_x, params, table, eps, spec, &Rule { nodes, weights })
}

/// Outcome of the extrapolation with its diagnostics.
#[derive(Clone, Debug)]
pub struct QuadratureOutcome {
    pub value: Bicomplex,
    /// Regularized values for each `ε` level.
    pub levels: Vec<Bicomplex>,
    /// Difference between the last two diagonal Richardson entries.
    pub cauchy_gap: f64,
}

pub fn omega_pi_quadrature_detailed(delta_x: f64, params: &FieldParams, spec: &QuadratureSpec, table: &CommutationTable) -> Result<QuadratureOutcome> {
    quadrature_detailed(Integrand::OmegaPi, delta_x, params, spec, table)
}

pub fn quadrature_detailed(which: Integrand, delta_x: f64, params: &FieldParams, spec: &QuadratureSpec, table: &CommutationTable) -> Result<QuadratureOutcome> {
    if params.dim != 1 {
        return Err(Error::Domain("the quadrature oracle is one-dimensional".into()));
    }
    spec.validate()?;
    let (nodes, weights) = gauss_legendre(spec.samples);
    let rule = Rule { nodes, weights };
    let levels = spec
        .epsilons()
        .into_iter()
        .map(|eps| regularized_integral(which, delta_x, params, table, eps, spec, &rule))
        .collect::<Result<Vec<_>>>()?;
    let component = |f: fn(&Bicomplex) -> f64| {
        let t = richardson_table(&levels.iter().map(f).collect::<Vec<_>>());
        let n = t.len();
        (t[n - 1][n - 1], t[n - 2][n - 2])
    };
    let parts = [component(|b| b.x), component(|b| b.y), component(|b| b.u), component(|b| b.v)];
    let value = Bicomplex::new(parts[0].0, parts[1].0, parts[2].0, parts[3].0);
    let previous = Bicomplex::new(parts[0].1, parts[1].1, parts[2].1, parts[3].1);
    let cauchy_gap = (value - previous).norm();
    if !(cauchy_gap <= CAUCHY_TOLERANCE * value.norm()) {
        return Err(Error::NonConvergent(format!(
            "extrapolation at dx = {delta_x} changed by {cauchy_gap:e} against a value of size {:e}",
            value.norm()
        )));
    }
    Ok(QuadratureOutcome {
        value,
        levels,
        cauchy_gap,
    })
}

/// Regularized quadrature value of `[Ω(x), Π(x + Δ)]` in one dimension.
pub fn commutator_omega_pi_quadrature(delta_x: f64, params: &FieldParams, spec: &QuadratureSpec, table: &CommutationTable) -> Result<Bicomplex> {
    omega_pi_quadrature_detailed(delta_x, params, spec, table).map(|o| o.value)
}

/// Regularized quadrature value of any of the regular commutators.
pub fn commutator_quadrature(which: Integrand, delta_x: f64, params: &FieldParams, spec: &QuadratureSpec, table: &CommutationTable) -> Result<Bicomplex> {
    quadrature_detailed(which, delta_x, params, spec, table).map(|o| o.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bessel::{bessel_k, bessel_y1};
    use crate::operators::Lattice;
    use std::f64::consts::PI;

    fn table() -> CommutationTable {
        CommutationTable::standard(Lattice::new(0.1, 32, false).unwrap())
    }

    #[test]
    fn fourier_transform_of_omega() {
        // ∫ √(k² + M²) e^{ikΔ} dk = −2M K₁(M|Δ|)/|Δ| (frozen against mpmath).
        let p = FieldParams::new(1.0, 0.0, 1).unwrap();
        for d in [0.5, 1.0, 2.5, 5.0] {
            let v = commutator_omega_pi_quadrature(d, &p, &QuadratureSpec::for_separation(d), &table()).unwrap();
            let expect = 2.0 * bessel_k(1, d).unwrap() / d;
            assert!((v.y - expect).abs() < 1e-7 * expect, "dx = {d}: {} vs {expect}", v.y);
            assert!(v.x.abs() < 1e-9 * expect && v.u.abs() < 1e-9 * expect && v.v.abs() < 1e-9 * expect);
        }
        let v1 = commutator_omega_pi_quadrature(1.0, &p, &QuadratureSpec::for_separation(1.0), &table()).unwrap();
        assert!((v1.y - 1.203_814_460_394_469).abs() < 1e-7);
    }

    #[test]
    fn cutoff_transform_is_bessel_y() {
        // 2∫_a^∞ √(k² − a²) cos(kΔ) dk = π a Y₁(aΔ)/Δ.
        let p = FieldParams::new(0.0, 1.0, 1).unwrap();
        let a = 0.5;
        for d in [1.0, 3.0, 6.0] {
            let v = commutator_omega_pi_quadrature(d, &p, &QuadratureSpec::for_separation(d), &table()).unwrap();
            let expect = -PI * a * bessel_y1(a * d).unwrap() / d;
            assert!((v.y - expect).abs() < 1e-6 * expect.abs().max(1e-3), "dx = {d}: {} vs {expect}", v.y);
        }
    }

    #[test]
    fn zero_separation_does_not_converge() {
        let p = FieldParams::new(1.0, 0.5, 1).unwrap();
        let r = commutator_omega_pi_quadrature(0.0, &p, &QuadratureSpec::for_separation(0.0), &table());
        assert!(matches!(r, Err(Error::NonConvergent(_))));
    }

    #[test]
    fn integrand_requires_real_frequency() {
        let p = FieldParams::new(0.0, 1.0, 1).unwrap();
        assert!(matches!(omega_pi_integrand(0.1, 1.0, &p, &table()), Err(Error::ImaginaryFrequency { .. })));
    }

    #[test]
    fn spec_validation() {
        let mut s = QuadratureSpec::for_separation(1.0);
        s.extrapolation_steps = 1;
        assert!(s.validate().is_err());
        let e = QuadratureSpec::for_separation(1.0).epsilons();
        assert!(e.windows(2).all(|w| w[1] < w[0]));
    }
}
