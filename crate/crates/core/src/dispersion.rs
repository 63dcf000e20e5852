//! Classical layer: field parameters, the damped dispersion relation and
//! plane-wave mode solutions of `(∂ₜ² − ∇² + jγ∂ₜ + m²) Ω = 0`.
//!
//! On the `J⁺` sector `j` acts as `+1` and on `J⁻` as `−1`, so the two
//! sectors carry damping `e^{−γt/2}` and growth `e^{+γt/2}` respectively.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::Bicomplex;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldParams {
    pub m: f64,
    pub gamma: f64,
    pub dim: u32,
    m2_mod: f64,
}

impl FieldParams {
    pub fn new(m: f64, gamma: f64, dim: u32) -> Result<Self> {
        if !(m.is_finite() && m >= 0.0) {
            return Err(Error::Domain(format!("mass must be finite and >= 0, got {m}")));
        }
        if !(gamma.is_finite() && gamma >= 0.0) {
            return Err(Error::Domain(format!("gamma must be finite and >= 0, got {gamma}")));
        }
        if dim == 0 {
            return Err(Error::Domain("spatial dimension must be positive".into()));
        }
        Ok(Self {
            m,
            gamma,
            dim,
            m2_mod: m * m - gamma * gamma / 4.0,
        })
    }

    /// Builds parameters from `M²` directly so that `M²` is stored exactly.
    pub fn from_modified_mass_squared(m2_mod: f64, gamma: f64, dim: u32) -> Result<Self> {
        let m2 = m2_mod + gamma * gamma / 4.0;
        if m2 < 0.0 {
            return Err(Error::Domain(format!("m^2 = {m2} would be negative")));
        }
        let mut p = Self::new(m2.sqrt(), gamma, dim)?;
        p.m2_mod = m2_mod;
        Ok(p)
    }

    /// `M² = m² − γ²/4`.
    pub fn modified_mass_squared(&self) -> f64 {
        self.m2_mod
    }

    /// `M = √(M²)`, or an error when `M² < 0`.
    pub fn modified_mass(&self) -> Result<f64> {
        if self.m2_mod < 0.0 {
            Err(Error::Domain(format!("M^2 = {} is negative", self.m2_mod)))
        } else {
            Ok(self.m2_mod.sqrt())
        }
    }

    /// `ω(k) = √(k² + M²)` for a scalar momentum.
    pub fn omega(&self, k: f64) -> Result<f64> {
        omega_from_k2(k * k, self)
    }

    /// Infrared cutoff `√(−M²)` when `M² < 0`, else zero.
    pub fn ir_cutoff(&self) -> f64 {
        if self.m2_mod < 0.0 {
            (-self.m2_mod).sqrt()
        } else {
            0.0
        }
    }
}

/// Returns `(Γ₁, Γ₂) = (−γ/2, +γ/2)`.
pub fn dissipative_coefficients(params: &FieldParams) -> (f64, f64) {
    (-params.gamma / 2.0, params.gamma / 2.0)
}

fn omega_from_k2(k2: f64, params: &FieldParams) -> Result<f64> {
    let radicand = k2 + params.m2_mod;
    if radicand < 0.0 {
        return Err(Error::ImaginaryFrequency { radicand });
    }
    Ok(radicand.sqrt())
}

/// Positive frequency root `ω = √(k·k + M²)`.
pub fn omega(k: &[f64], params: &FieldParams) -> Result<f64> {
    omega_from_k2(k.iter().map(|c| c * c).sum(), params)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn projector(self) -> Bicomplex {
        match self {
            Branch::Plus => Bicomplex::J_PLUS,
            Branch::Minus => Bicomplex::J_MINUS,
        }
    }

    pub fn swapped(self) -> Self {
        match self {
            Branch::Plus => Branch::Minus,
            Branch::Minus => Branch::Plus,
        }
    }
}

/// `J± e^{Γt} [A e^{iθ} + B e^{−iθ}]` with `θ = ωt − k·x`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModeSolution {
    pub branch: Branch,
    /// Coefficient of `e^{iθ}`.
    pub coeff_a: Bicomplex,
    /// Coefficient of `e^{−iθ}`.
    pub coeff_b: Bicomplex,
    pub k: Vec<f64>,
    pub omega: f64,
    pub gamma_coef: f64,
    /// Set for conjugated modes, which solve the equation with `−jγ∂ₜ`.
    pub conjugate: bool,
}

impl ModeSolution {
    pub fn new(
        branch: Branch,
        coeff_a: Bicomplex,
        coeff_b: Bicomplex,
        k: Vec<f64>,
        params: &FieldParams,
    ) -> Result<Self> {
        if k.len() != params.dim as usize {
            return Err(Error::Domain(format!(
                "momentum has {} components, expected {}",
                k.len(),
                params.dim
            )));
        }
        let w = omega(&k, params)?;
        let (g1, g2) = dissipative_coefficients(params);
        Ok(Self {
            branch,
            coeff_a,
            coeff_b,
            k,
            omega: w,
            gamma_coef: match branch {
                Branch::Plus => g1,
                Branch::Minus => g2,
            },
            conjugate: false,
        })
    }

    /// Subsystem mode `J⁺ e^{−γt/2}[a₁ e^{iθ} + ā₂ e^{−iθ}]`.
    pub fn system(a1: Bicomplex, a2: Bicomplex, k: Vec<f64>, params: &FieldParams) -> Result<Self> {
        Self::new(Branch::Plus, a1, a2.conj_bar(), k, params)
    }

    /// Environment mode `J⁻ e^{γt/2}[b̄₁ e^{iθ} + b₂ e^{−iθ}]`.
    pub fn environment(b1: Bicomplex, b2: Bicomplex, k: Vec<f64>, params: &FieldParams) -> Result<Self> {
        Self::new(Branch::Minus, b1.conj_bar(), b2, k, params)
    }

    /// The mode whose value is the ring conjugate of this one.
    pub fn conjugated(&self) -> Self {
        Self {
            branch: self.branch.swapped(),
            coeff_a: self.coeff_b.conj_bar(),
            coeff_b: self.coeff_a.conj_bar(),
            k: self.k.clone(),
            omega: self.omega,
            gamma_coef: self.gamma_coef,
            conjugate: !self.conjugate,
        }
    }

    fn phase(&self, x: &[f64], t: f64) -> f64 {
        let kx: f64 = self.k.iter().zip(x).map(|(k, x)| k * x).sum();
        self.omega * t - kx
    }

    /// Value and its analytic derivatives at `(x, t)`.
    pub fn jet(&self, x: &[f64], t: f64) -> ModeJet {
        let theta = self.phase(x, t);
        let e_plus = Bicomplex::from_complex(Complex64::from_polar(1.0, theta));
        let e_minus = Bicomplex::from_complex(Complex64::from_polar(1.0, -theta));
        let damp = (self.gamma_coef * t).exp();
        let p = self.branch.projector();
        let a = p * self.coeff_a * e_plus * damp;
        let b = p * self.coeff_b * e_minus * damp;
        let i = Bicomplex::I;
        let g = Bicomplex::real(self.gamma_coef);
        let dt_a = g + i * self.omega;
        let dt_b = g - i * self.omega;
        let k2: f64 = self.k.iter().map(|k| k * k).sum();
        let dx_a: Vec<Bicomplex> = self.k.iter().map(|k| i * (-k)).collect();
        ModeJet {
            value: a + b,
            dt: a * dt_a + b * dt_b,
            dtt: a * dt_a * dt_a + b * dt_b * dt_b,
            dx: dx_a.iter().map(|d| a * *d - b * *d).collect(),
            laplacian: (a + b) * (-k2),
        }
    }
}

/// A field value together with its first and second derivatives.
#[derive(Clone, Debug, PartialEq)]
pub struct ModeJet {
    pub value: Bicomplex,
    pub dt: Bicomplex,
    pub dtt: Bicomplex,
    pub dx: Vec<Bicomplex>,
    pub laplacian: Bicomplex,
}

impl ModeJet {
    fn accumulate(&mut self, o: &ModeJet) {
        self.value += o.value;
        self.dt += o.dt;
        self.dtt += o.dtt;
        for (a, b) in self.dx.iter_mut().zip(&o.dx) {
            *a += *b;
        }
        self.laplacian += o.laplacian;
    }
}

/// Residual of `∂ₜ²Ω − ∇²Ω + jγ∂ₜΩ + m²Ω` for a single mode.
pub fn eom_residual(mode: &ModeSolution, params: &FieldParams, x: &[f64], t: f64) -> Bicomplex {
    let jet = mode.jet(x, t);
    let sign = if mode.conjugate { -1.0 } else { 1.0 };
    jet.dtt - jet.laplacian + Bicomplex::J * jet.dt * (sign * params.gamma) + jet.value * (params.m * params.m)
}

/// Sum of the modes' values and derivatives.
pub fn field_jet(modes: &[ModeSolution], x: &[f64], t: f64) -> ModeJet {
    let mut total = ModeJet {
        value: Bicomplex::ZERO,
        dt: Bicomplex::ZERO,
        dtt: Bicomplex::ZERO,
        dx: vec![Bicomplex::ZERO; x.len()],
        laplacian: Bicomplex::ZERO,
    };
    for m in modes {
        total.accumulate(&m.jet(x, t));
    }
    total
}

/// `Ω(x, t)` as the sum of the given modes.
pub fn field_value(modes: &[ModeSolution], x: &[f64], t: f64) -> Bicomplex {
    field_jet(modes, x, t).value
}
