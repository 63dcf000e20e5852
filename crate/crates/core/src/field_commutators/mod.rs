//! Equal-time field commutators: distributional kernels, Bessel closed forms
//! in one spatial dimension, the small-mass limit, the `1/√ω` weighted
//! variants and CSV sweeps.
//!
//! Closed forms come in two conventions. [`Convention::Oracle`] is the form
//! reproduced by the regularized quadrature in [`quadrature`];
//! [`Convention::Printed`] keeps the alternative published typography for
//! comparison plots.

pub mod lattice;
pub mod quadrature;

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bessel::{bessel_k, bessel_k0_principal, bessel_k1_principal, bessel_y1};
use crate::dispersion::FieldParams;
use crate::error::{Error, Result};
use crate::operators::CommutationTable;
use crate::ring::Bicomplex;

pub use lattice::{hermiticity_defect, LatticeCommutator, Measure};
pub use quadrature::{commutator_omega_pi_quadrature, commutator_quadrature, Integrand, QuadratureSpec};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    #[default]
    Oracle,
    Printed,
}

/// Spatial profile multiplying a commutator coefficient.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Kernel {
    /// `δ(Δ)`.
    Delta,
    /// `δ''(Δ) − M² δ(Δ)`.
    DeltaSecondMinusM2Delta { m2: f64 },
    /// `(mass/Δ) K₁(argument·Δ)`; the oracle uses `|Δ|` throughout.
    BesselK1OverDx { mass: f64, argument: f64 },
    /// `K₀(argument·Δ)`.
    BesselK0 { argument: f64 },
    Divergent,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CommutatorResult {
    pub coefficient: Bicomplex,
    pub kernel: Kernel,
    pub convention: Convention,
}

impl CommutatorResult {
    /// Pointwise value at separation `Δ = x' − x`. Distributional kernels
    /// vanish away from the origin and have no value at it.
    pub fn value_at(&self, delta_x: f64) -> Result<Bicomplex> {
        let printed = self.convention == Convention::Printed;
        match self.kernel {
            Kernel::Delta | Kernel::DeltaSecondMinusM2Delta { .. } => {
                if delta_x == 0.0 {
                    Err(Error::Domain("a distributional kernel has no value at the origin".into()))
                } else {
                    Ok(Bicomplex::ZERO)
                }
            }
            Kernel::BesselK1OverDx { mass, argument } => {
                if delta_x == 0.0 {
                    return Err(Error::Domain("the commutator diverges at zero separation".into()));
                }
                if printed {
                    let k = bessel_k1_principal(argument * delta_x)?;
                    Ok(self.coefficient * (k * (mass / delta_x)))
                } else {
                    let d = delta_x.abs();
                    Ok(self.coefficient * (mass / d * bessel_k(1, argument * d)?))
                }
            }
            Kernel::BesselK0 { argument } => {
                if delta_x == 0.0 {
                    return Err(Error::Domain("the commutator diverges at zero separation".into()));
                }
                if printed {
                    Ok(self.coefficient * bessel_k0_principal(argument * delta_x)?)
                } else {
                    Ok(self.coefficient * bessel_k(0, argument * delta_x.abs())?)
                }
            }
            Kernel::Divergent => Err(Error::Domain("divergent commutator".into())),
        }
    }

    /// Coefficients `(c_δ, c_δ'')` of a distributional kernel.
    pub fn delta_coefficients(&self) -> Option<(Bicomplex, Bicomplex)> {
        match self.kernel {
            Kernel::Delta => Some((self.coefficient, Bicomplex::ZERO)),
            Kernel::DeltaSecondMinusM2Delta { m2 } => Some((-self.coefficient * m2, self.coefficient)),
            _ => None,
        }
    }
}

/// `J⁺(ρ₁ − ρ̄₄) + J⁻(ρ̄₁ − ρ₄)`.
pub fn bracket(table: &CommutationTable) -> Result<Bicomplex> {
    let r = table.constant_rho()?;
    Ok(Bicomplex::J_PLUS * (r[0] - r[3].conj_bar()) + Bicomplex::J_MINUS * (r[0].conj_bar() - r[3]))
}

/// `J⁺(ρ₁ + ρ̄₄) + J⁻(ρ̄₁ + ρ₄)`, the bracket multiplying `[Ω, Π]`.
pub fn bracket_sum(table: &CommutationTable) -> Result<Bicomplex> {
    let r = table.constant_rho()?;
    Ok(Bicomplex::J_PLUS * (r[0] + r[3].conj_bar()) + Bicomplex::J_MINUS * (r[0].conj_bar() + r[3]))
}

fn two_pi_pow(dim: u32) -> f64 {
    (2.0 * PI).powi(dim as i32)
}

/// `[Ω(x), Ω†(x')] = (2π)ⁿ B δ(x' − x)`.
pub fn commutator_omega_omegadagger(table: &CommutationTable, dim: u32) -> Result<CommutatorResult> {
    Ok(CommutatorResult {
        coefficient: bracket(table)? * two_pi_pow(dim),
        kernel: Kernel::Delta,
        convention: Convention::Oracle,
    })
}

/// `[Π(x), Π†(x')] = (2π)ⁿ B (δ'' − M² δ)`.
pub fn commutator_pi_pidagger(table: &CommutationTable, params: &FieldParams) -> Result<CommutatorResult> {
    Ok(CommutatorResult {
        coefficient: bracket(table)? * two_pi_pow(params.dim),
        kernel: Kernel::DeltaSecondMinusM2Delta {
            m2: params.modified_mass_squared(),
        },
        convention: Convention::Oracle,
    })
}

fn bessel_preconditions(params: &FieldParams) -> Result<f64> {
    if params.dim != 1 {
        return Err(Error::Domain("Bessel closed forms are one-dimensional".into()));
    }
    let m2 = params.modified_mass_squared();
    if !(m2 > 0.0) {
        return Err(Error::Domain(format!("the closed form needs M^2 > 0, got {m2}")));
    }
    Ok(m2)
}

/// Closed form of `[Ω(x), Π(x')]` for `M² > 0` in one dimension.
pub fn omega_pi_closed_result(params: &FieldParams, table: &CommutationTable, convention: Convention) -> Result<CommutatorResult> {
    let m2 = bessel_preconditions(params)?;
    let m = m2.sqrt();
    let (coefficient, kernel) = match convention {
        Convention::Oracle => (bracket_sum(table)? * Complex64::new(0.0, 2.0), Kernel::BesselK1OverDx { mass: m, argument: m }),
        Convention::Printed => (bracket(table)? * Complex64::new(0.0, -2.0), Kernel::BesselK1OverDx { mass: m, argument: m2.abs() }),
    };
    Ok(CommutatorResult {
        coefficient,
        kernel,
        convention,
    })
}

/// `[Ω(x), Π(x + Δ)]`; the oracle form is `2i B₊ (M/|Δ|) K₁(M|Δ|)` with
/// `B₊ = J⁺(ρ₁ + ρ̄₄) + J⁻(ρ̄₁ + ρ₄)`.
pub fn commutator_omega_pi_closed(delta_x: f64, params: &FieldParams, table: &CommutationTable, convention: Convention) -> Result<Bicomplex> {
    if delta_x == 0.0 {
        return Err(Error::Domain("[Omega, Pi] diverges at zero separation".into()));
    }
    omega_pi_closed_result(params, table, convention)?.value_at(delta_x)
}

/// `[Ω, Π]` at `m = 0`, where only `|k| ≥ γ/2` carries real frequencies.
///
/// The oracle form is `−iπ B₊ k_c Y₁(k_c|Δ|)/|Δ|` with `k_c = γ/2`; the
/// printed form is `B |γ| K₁(γ⁴Δ/16)`.
pub fn commutator_omega_pi_m0_limit(delta_x: f64, gamma: f64, table: &CommutationTable, convention: Convention) -> Result<Bicomplex> {
    if delta_x == 0.0 {
        return Err(Error::Domain("[Omega, Pi] diverges at zero separation".into()));
    }
    if !(gamma > 0.0) {
        return Err(Error::Domain(format!("the m -> 0 form needs gamma > 0, got {gamma}")));
    }
    match convention {
        Convention::Oracle => {
            let kc = gamma / 2.0;
            let d = delta_x.abs();
            let scale = -PI * kc * bessel_y1(kc * d)? / d;
            Ok(bracket_sum(table)? * Complex64::new(0.0, scale))
        }
        Convention::Printed => {
            let k = bessel_k1_principal(gamma.powi(4) / 16.0 * delta_x)?;
            Ok(bracket(table)? * (k * gamma.abs()))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WeightedKind {
    OmegaOmega,
    PiPi,
    OmegaPi,
}

/// Commutators with the extra `1/√ω_k` weight in both mode expansions.
pub fn weighted_commutators(which: WeightedKind, params: &FieldParams, table: &CommutationTable, convention: Convention) -> Result<CommutatorResult> {
    let b = bracket(table)?;
    let (coefficient, kernel) = match (which, convention) {
        (WeightedKind::OmegaPi, Convention::Oracle) => (bracket_sum(table)? * Complex64::new(0.0, -two_pi_pow(params.dim)), Kernel::Delta),
        (WeightedKind::OmegaPi, Convention::Printed) => (b * Complex64::new(0.0, 1.0), Kernel::Delta),
        (WeightedKind::OmegaOmega, conv) => {
            let m2 = bessel_preconditions(params)?;
            let argument = if conv == Convention::Oracle { m2.sqrt() } else { m2.abs() };
            (b * 2.0, Kernel::BesselK0 { argument })
        }
        (WeightedKind::PiPi, conv) => {
            let m2 = bessel_preconditions(params)?;
            let m = m2.sqrt();
            if conv == Convention::Oracle {
                (b * 2.0, Kernel::BesselK1OverDx { mass: m, argument: m })
            } else {
                (b * -2.0, Kernel::BesselK1OverDx { mass: m, argument: m2.abs() })
            }
        }
    };
    Ok(CommutatorResult {
        coefficient,
        kernel,
        convention,
    })
}

/// Which commutator a sweep evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CommutatorKind {
    OmegaOmega,
    PiPi,
    OmegaPi,
    WeightedOmegaOmega,
    WeightedPiPi,
    WeightedOmegaPi,
}

impl CommutatorKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::OmegaOmega => "omega-omega",
            Self::PiPi => "pi-pi",
            Self::OmegaPi => "omega-pi",
            Self::WeightedOmegaOmega => "w-omega-omega",
            Self::WeightedPiPi => "w-pi-pi",
            Self::WeightedOmegaPi => "w-omega-pi",
        }
    }

    /// Kinds whose continuum kernel is a distribution; sweeps report their
    /// lattice sum instead.
    pub fn is_distributional(self) -> bool {
        matches!(self, Self::OmegaOmega | Self::PiPi | Self::WeightedOmegaPi)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Grid {
    pub fn new(min: f64, max: f64, steps: usize) -> Result<Self> {
        if !(min.is_finite() && max.is_finite()) || steps == 0 || (steps > 1 && !(max > min)) {
            return Err(Error::Domain(format!("invalid grid [{min}, {max}] with {steps} steps")));
        }
        Ok(Self { min, max, steps })
    }

    /// Ascending, evenly spaced points including both ends.
    pub fn points(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.min];
        }
        let n = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| if i + 1 == self.steps { self.max } else { self.min + (self.max - self.min) * i as f64 / n })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Sweep {
    /// Vary `Δ = x' − x` at the given parameters.
    Separation(Grid),
    /// Vary the modified mass `M` at fixed `Δ` and `γ`.
    Mass { grid: Grid, delta_x: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FigureRow {
    pub x: f64,
    pub re: f64,
    pub im: f64,
}

/// Evaluates one commutator at separation `Δ`. Distributional kinds are
/// reported as their lattice sum at `t = 0` on the table's lattice.
pub fn commutator_value(kind: CommutatorKind, delta_x: f64, params: &FieldParams, table: &CommutationTable, convention: Convention) -> Result<Bicomplex> {
    use CommutatorKind::*;
    match kind {
        OmegaOmega => Ok(lattice::omega_omegadagger_lattice(params, table, Measure::Plain).evaluate(0.0, delta_x, 0.0)),
        PiPi => Ok(lattice::pi_pidagger_lattice(params, table, Measure::Plain).evaluate(0.0, delta_x, 0.0)),
        WeightedOmegaPi => Ok(lattice::omega_pi_lattice(params, table, Measure::InverseSqrtOmega).evaluate(0.0, delta_x, 0.0)),
        OmegaPi => commutator_omega_pi_closed(delta_x, params, table, convention),
        WeightedOmegaOmega => weighted_commutators(WeightedKind::OmegaOmega, params, table, convention)?.value_at(delta_x),
        WeightedPiPi => weighted_commutators(WeightedKind::PiPi, params, table, convention)?.value_at(delta_x),
    }
}

fn row(x: f64, value: Bicomplex) -> FigureRow {
    let (plus, _) = value.idempotent_decompose();
    FigureRow {
        x,
        re: plus.re + 0.0,
        im: plus.im + 0.0,
    }
}

/// Sweeps a commutator; each row carries the `J⁺` sector as a complex
/// number. Points are evaluated in parallel and returned in ascending order.
pub fn sweep(kind: CommutatorKind, sweep: Sweep, params: &FieldParams, table: &CommutationTable, convention: Convention) -> Result<Vec<FigureRow>> {
    match sweep {
        Sweep::Separation(grid) => grid
            .points()
            .into_par_iter()
            .map(|d| commutator_value(kind, d, params, table, convention).map(|v| row(d, v)))
            .collect(),
        Sweep::Mass { grid, delta_x } => grid
            .points()
            .into_par_iter()
            .map(|m| {
                if !(m > 0.0) {
                    return Err(Error::Domain(format!("mass sweep needs M > 0, got {m}")));
                }
                let p = FieldParams::from_modified_mass_squared(m * m, params.gamma, params.dim)?;
                commutator_value(kind, delta_x, &p, table, convention).map(|v| row(m, v))
            })
            .collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Figure {
    Fig1,
    Fig2,
    Fig6a,
    Fig6b,
    Fig7a,
    Fig7b,
}

/// Separation used by the mass sweeps.
pub const FIGURE_SEPARATION: f64 = 1.0;

impl Figure {
    pub fn kind(self) -> CommutatorKind {
        match self {
            Figure::Fig1 | Figure::Fig2 => CommutatorKind::OmegaPi,
            Figure::Fig6a | Figure::Fig6b => CommutatorKind::WeightedOmegaOmega,
            Figure::Fig7a | Figure::Fig7b => CommutatorKind::WeightedPiPi,
        }
    }

    pub fn sweeps_mass(self) -> bool {
        matches!(self, Figure::Fig2 | Figure::Fig6b | Figure::Fig7b)
    }
}

/// Data behind each figure: separation sweeps at fixed parameters, or mass
/// sweeps at `Δ = FIGURE_SEPARATION`.
pub fn figure_data(figure: Figure, grid: Grid, params: &FieldParams, table: &CommutationTable, convention: Convention) -> Result<Vec<FigureRow>> {
    let s = if figure.sweeps_mass() {
        Sweep::Mass {
            grid,
            delta_x: FIGURE_SEPARATION,
        }
    } else {
        Sweep::Separation(grid)
    };
    sweep(figure.kind(), s, params, table, convention)
}

/// Writes rows as `x,re,im` in plain decimal notation.
pub fn write_csv<W: Write>(rows: &[FigureRow], mut out: W) -> std::io::Result<()> {
    writeln!(out, "x,re,im")?;
    for r in rows {
        writeln!(out, "{},{},{}", r.x, r.re, r.im)?;
    }
    Ok(())
}

pub fn to_csv(rows: &[FigureRow]) -> String {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::Lattice;

    fn lattice() -> Lattice {
        Lattice::new(0.1, 32, false).unwrap()
    }

    fn standard() -> CommutationTable {
        CommutationTable::standard(lattice())
    }

    fn generic() -> CommutationTable {
        CommutationTable::constant(
            [
                Bicomplex::new(1.0, 0.3, -0.2, 0.1),
                Bicomplex::ZERO,
                Bicomplex::ZERO,
                Bicomplex::new(0.2, -0.1, 0.6, 0.3),
            ],
            lattice(),
        )
    }

    #[test]
    fn omega_omegadagger_coefficient() {
        let c = commutator_omega_omegadagger(&standard(), 1).unwrap();
        assert_eq!(c.kernel, Kernel::Delta);
        assert_eq!(c.coefficient, Bicomplex::real(2.0 * PI));
        let cancel = CommutationTable::constant([Bicomplex::ONE, Bicomplex::ZERO, Bicomplex::ZERO, Bicomplex::ONE], lattice());
        assert_eq!(commutator_omega_omegadagger(&cancel, 1).unwrap().coefficient, Bicomplex::ZERO);
        let abelian = CommutationTable::constant([Bicomplex::ZERO; 4], lattice());
        assert_eq!(commutator_omega_omegadagger(&abelian, 3).unwrap().coefficient, Bicomplex::ZERO);
        assert_eq!(commutator_omega_omegadagger(&standard(), 3).unwrap().coefficient, Bicomplex::real((2.0 * PI).powi(3)));
    }

    #[test]
    fn pi_pidagger_limits() {
        let zero_mass = FieldParams::from_modified_mass_squared(0.0, 0.5, 1).unwrap();
        let c = commutator_pi_pidagger(&generic(), &zero_mass).unwrap();
        let (d0, d2) = c.delta_coefficients().unwrap();
        assert_eq!(d0, Bicomplex::ZERO);
        assert_eq!(d2, commutator_omega_omegadagger(&generic(), 1).unwrap().coefficient);

        let massless = FieldParams::new(0.0, 2.0, 1).unwrap();
        let (d0, d2) = commutator_pi_pidagger(&standard(), &massless).unwrap().delta_coefficients().unwrap();
        assert_eq!(d0, d2);
        assert_eq!(d2, Bicomplex::real(2.0 * PI));
    }

    #[test]
    fn closed_form_matches_oracle_on_grid() {
        for (m, gamma) in [(1.0, 0.5), (2.0, 1.0)] {
            let p = FieldParams::new(m, gamma, 1).unwrap();
            let mass = p.modified_mass().unwrap();
            for i in 0..20 {
                let md = 0.5 + 4.5 * i as f64 / 19.0;
                let d = md / mass;
                let closed = commutator_omega_pi_closed(d, &p, &generic(), Convention::Oracle).unwrap();
                let quad = commutator_omega_pi_quadrature(d, &p, &QuadratureSpec::for_separation(d), &generic()).unwrap();
                assert!((closed - quad).norm() <= 1e-6 * closed.norm(), "M dx = {md}");
            }
        }
    }

    #[test]
    fn weighted_closed_forms_match_quadrature_on_grid() {
        let p = FieldParams::new(1.0, 0.5, 1).unwrap();
        let mass = p.modified_mass().unwrap();
        let oo = weighted_commutators(WeightedKind::OmegaOmega, &p, &generic(), Convention::Oracle).unwrap();
        let pp = weighted_commutators(WeightedKind::PiPi, &p, &generic(), Convention::Oracle).unwrap();
        for i in 0..20 {
            let d = (0.5 + 4.5 * i as f64 / 19.0) / mass;
            let spec = QuadratureSpec::for_separation(d);
            let q_oo = commutator_quadrature(Integrand::WeightedOmegaOmega, d, &p, &spec, &generic()).unwrap();
            let q_pp = commutator_quadrature(Integrand::WeightedPiPi, d, &p, &spec, &generic()).unwrap();
            let c_oo = oo.value_at(d).unwrap();
            let c_pp = pp.value_at(d).unwrap();
            assert!((c_oo - q_oo).norm() <= 1e-6 * c_oo.norm(), "dx = {d}");
            assert!((c_pp - q_pp).norm() <= 1e-6 * c_pp.norm(), "dx = {d}");
        }
    }

    #[test]
    fn closed_form_examples() {
        let p = FieldParams::new(1.0, 0.0, 1).unwrap();
        let v = commutator_omega_pi_closed(1.0, &p, &standard(), Convention::Oracle).unwrap();
        assert!((v - Bicomplex::I * (2.0 * 0.601_907_230_197_234_6)).norm() < 1e-12);
        let printed = commutator_omega_pi_closed(1.0, &p, &standard(), Convention::Printed).unwrap();
        assert!((printed + v).norm() < 1e-12);
        assert!(commutator_omega_pi_closed(0.0, &p, &standard(), Convention::Oracle).is_err());
        let tachyonic = FieldParams::new(0.1, 1.0, 1).unwrap();
        assert!(commutator_omega_pi_closed(1.0, &tachyonic, &standard(), Convention::Oracle).is_err());
    }

    #[test]
    fn decays_with_mass_and_separation() {
        let at = |m: f64, d: f64| {
            let p = FieldParams::new(m, 0.0, 1).unwrap();
            commutator_omega_pi_closed(d, &p, &standard(), Convention::Oracle).unwrap().norm()
        };
        assert!(at(30.0, 1.0) < 1e-8);
        assert!(at(1.0, 30.0) < 1e-8);
        let mut prev = f64::INFINITY;
        for i in 0..40 {
            let v = at(5.0 + i as f64, 1.0);
            assert!(v < prev);
            prev = v;
        }
        for d in [5.0, 8.0, 13.0, 21.0] {
            assert!(at(1.0, d) <= 3.0 * (-d).exp() / d.sqrt());
        }
    }

    #[test]
    fn m0_limit_matches_quadrature() {
        for gamma in [0.5, 1.0, 2.0] {
            let p = FieldParams::new(0.0, gamma, 1).unwrap();
            for d in [1.0, 2.5, 7.0] {
                let closed = commutator_omega_pi_m0_limit(d, gamma, &generic(), Convention::Oracle).unwrap();
                let quad = commutator_omega_pi_quadrature(d, &p, &QuadratureSpec::for_separation(d), &generic()).unwrap();
                assert!((closed - quad).norm() <= 1e-4 * closed.norm().max(1e-3), "gamma {gamma} dx {d}");
            }
        }
    }

    #[test]
    fn m0_limit_behaviour_as_gamma_vanishes() {
        let d = 1.5;
        let massless = 2.0 / (d * d);
        let oracle = commutator_omega_pi_m0_limit(d, 1e-4, &standard(), Convention::Oracle).unwrap();
        assert!((oracle.y - massless).abs() < 1e-6 * massless);
        let p1 = commutator_omega_pi_m0_limit(d, 0.1, &standard(), Convention::Printed).unwrap().norm();
        let p2 = commutator_omega_pi_m0_limit(d, 0.01, &standard(), Convention::Printed).unwrap().norm();
        assert!(p2 > 100.0 * p1);
        for conv in [Convention::Oracle, Convention::Printed] {
            assert!(commutator_omega_pi_m0_limit(0.0, 1.0, &standard(), conv).is_err());
        }
        let far = commutator_omega_pi_m0_limit(1e4, 1.0, &standard(), Convention::Oracle).unwrap();
        assert!(far.norm() < 1e-5);
    }

    #[test]
    fn weighted_forms() {
        let p = FieldParams::from_modified_mass_squared(1.0, 0.5, 1).unwrap();
        let t = standard();
        let oo = weighted_commutators(WeightedKind::OmegaOmega, &p, &t, Convention::Oracle).unwrap();
        assert!((oo.value_at(1.0).unwrap() - Bicomplex::real(2.0 * 0.421_024_438_240_708_3)).norm() < 1e-12);
        let op = weighted_commutators(WeightedKind::OmegaPi, &p, &t, Convention::Oracle).unwrap();
        assert_eq!(op.kernel, Kernel::Delta);
        let printed = weighted_commutators(WeightedKind::OmegaPi, &p, &t, Convention::Printed).unwrap();
        assert_eq!(printed.coefficient, Bicomplex::I);
        // Weighted [Π, Π†] coincides with −i times the unweighted [Ω, Π].
        let pp = weighted_commutators(WeightedKind::PiPi, &p, &t, Convention::Oracle).unwrap();
        for d in [0.4, 1.0, 3.0] {
            let lhs = pp.value_at(d).unwrap();
            let rhs = commutator_omega_pi_closed(d, &p, &t, Convention::Oracle).unwrap() * Complex64::new(0.0, -1.0);
            assert!((lhs - rhs).norm() < 1e-13 * lhs.norm());
        }
    }

    #[test]
    fn printed_branch_for_negative_separation() {
        let p = FieldParams::new(1.0, 0.0, 1).unwrap();
        let v = commutator_omega_pi_closed(-1.0, &p, &standard(), Convention::Printed).unwrap();
        let (plus, _) = v.idempotent_decompose();
        assert!(plus.re.abs() > 1.0);
        let o = commutator_omega_pi_closed(-1.0, &p, &standard(), Convention::Oracle).unwrap();
        assert_eq!(o, commutator_omega_pi_closed(1.0, &p, &standard(), Convention::Oracle).unwrap());
    }

    #[test]
    fn figure_shapes() {
        let p = FieldParams::new(1.0, 0.5, 1).unwrap();
        let t = standard();
        let fig1 = figure_data(Figure::Fig1, Grid::new(0.01, 20.0, 200).unwrap(), &p, &t, Convention::Oracle).unwrap();
        assert!(fig1.windows(2).all(|w| w[0].x < w[1].x));
        let mag = |r: &FigureRow| r.re.hypot(r.im);
        assert!(mag(&fig1[0]) > 1e3);
        assert!(mag(fig1.last().unwrap()) < 1e-7);
        let fig2 = figure_data(Figure::Fig2, Grid::new(0.05, 5.0, 200).unwrap(), &p, &t, Convention::Oracle).unwrap();
        let max_jump = fig2.windows(2).map(|w| (mag(&w[1]) - mag(&w[0])).abs()).fold(0.0, f64::max);
        assert!(max_jump < 0.1);
        assert!(figure_data(Figure::Fig2, Grid::new(0.0, 1.0, 3).unwrap(), &p, &t, Convention::Oracle).is_err());
    }

    #[test]
    fn lattice_sweep_peaks_at_origin() {
        let p = FieldParams::new(1.0, 0.5, 1).unwrap();
        let rows = sweep(CommutatorKind::OmegaOmega, Sweep::Separation(Grid::new(-3.0, 3.0, 61).unwrap()), &p, &standard(), Convention::Oracle).unwrap();
        let peak = rows.iter().max_by(|a, b| a.re.partial_cmp(&b.re).unwrap()).unwrap();
        assert!(peak.x.abs() < 1e-12);
        assert!((peak.re - 65.0 * 0.1).abs() < 1e-12);
    }

    #[test]
    fn csv_layout() {
        let rows = vec![FigureRow { x: 0.5, re: -0.0 + 0.0, im: 1e-20 }, FigureRow { x: 1.0, re: 2.0, im: -3.25 }];
        let s = to_csv(&rows);
        assert_eq!(s, "x,re,im\n0.5,0,0.00000000000000000001\n1,2,-3.25\n");
    }
}
