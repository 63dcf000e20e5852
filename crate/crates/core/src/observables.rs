//! Hamiltonian and charge operators, the geometry kernel, vacuum expectation
//! values and the conservation law of the hypercomplex current.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dispersion::{field_jet, FieldParams, ModeSolution};
use crate::error::{Error, Result};
use crate::operators::{
    anticommutator, pair_minus, pair_plus, vev, CommutationTable, ModeOp, Monomial, OperatorPoly, PolyBuilder,
    Species, VacuumRules,
};
use crate::ring::Bicomplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeometryKind {
    InfiniteLine,
    FiniteInterval,
}

/// One-dimensional region occupied by the system and its environment.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeometrySpec {
    pub kind: GeometryKind,
    pub l1: f64,
    pub l2: f64,
}

impl GeometrySpec {
    pub fn infinite() -> Self {
        Self {
            kind: GeometryKind::InfiniteLine,
            l1: f64::NEG_INFINITY,
            l2: f64::INFINITY,
        }
    }

    pub fn finite(l1: f64, l2: f64) -> Result<Self> {
        let g = Self {
            kind: GeometryKind::FiniteInterval,
            l1,
            l2,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.kind == GeometryKind::FiniteInterval && !(self.l1.is_finite() && self.l2.is_finite() && self.l2 > self.l1)
        {
            return Err(Error::Domain(format!(
                "finite interval needs finite L1 < L2, got L1 = {}, L2 = {}",
                self.l1, self.l2
            )));
        }
        Ok(())
    }

    /// `L₂ − L₁` for a finite interval.
    pub fn length(&self) -> Option<f64> {
        match self.kind {
            GeometryKind::FiniteInterval => Some(self.l2 - self.l1),
            GeometryKind::InfiniteLine => None,
        }
    }
}

/// `H_γ(k, k') = 2ω'ω + ½k'k + (iγ/2)(ω' + ω) + ½M²`.
pub fn h_gamma(k: f64, kp: f64, params: &FieldParams) -> Result<Complex64> {
    let w = params.omega(k)?;
    let wp = params.omega(kp)?;
    Ok(Complex64::new(
        2.0 * wp * w + 0.5 * kp * k + 0.5 * params.modified_mass_squared(),
        0.5 * params.gamma * (wp + w),
    ))
}

/// `I(q) = ∫ e^{−iqx} dx` over the geometry.
///
/// On the infinite line the integral is `2πδ(q)`; with lattice spacing `delta_k`
/// the delta is realized as `1/Δk` on the diagonal `q = 0` and zero elsewhere.
pub fn geometry_kernel(q: f64, geom: &GeometrySpec, delta_k: f64) -> Complex64 {
    match geom.kind {
        GeometryKind::InfiniteLine => {
            if q == 0.0 {
                Complex64::new(2.0 * PI / delta_k, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }
        GeometryKind::FiniteInterval => {
            let len = geom.l2 - geom.l1;
            if (q * len).abs() < 1e-6 {
                // Taylor expansion around q = 0 avoids the cancellation in the
                // closed form: I(q) = e^{−iqc} · L · (1 − (qL)²/24 + …).
                let c = 0.5 * (geom.l1 + geom.l2);
                let ql = q * len;
                Complex64::from_polar(len * (1.0 - ql * ql / 24.0), -q * c)
            } else {
                let e1 = Complex64::from_polar(1.0, -q * geom.l1);
                let e2 = Complex64::from_polar(1.0, -q * geom.l2);
                (e1 - e2) / Complex64::new(0.0, q)
            }
        }
    }
}

/// `G(k, k'; t) = e^{i(ω_k − ω_k')t} I(k − k')`.
pub fn g_kernel(k: f64, kp: f64, params: &FieldParams, geom: &GeometrySpec, delta_k: f64, t: f64) -> Result<Complex64> {
    let phase = (params.omega(k)? - params.omega(kp)?) * t;
    Ok(Complex64::from_polar(1.0, phase) * geometry_kernel(k - kp, geom, delta_k))
}

/// Lattice sites whose frequency is real.
fn physical_sites(params: &FieldParams, table: &CommutationTable) -> Vec<i32> {
    table
        .lattice
        .indices()
        .filter(|&i| params.omega(table.lattice.momentum(i)).is_ok())
        .collect()
}

/// Annihilation block `Σ c(k,k') [J⁺{a₁(k), b₁(k')} + J⁻{b₂(k'), a₂(k)}]`.
fn annihilation_block(params: &FieldParams, geom: &GeometrySpec, table: &CommutationTable, t: f64) -> OperatorPoly {
    let lattice = &table.lattice;
    let dk = lattice.delta_k;
    let sites = physical_sites(params, table);
    let pairs: Vec<(i32, i32)> = match geom.kind {
        GeometryKind::InfiniteLine => sites.iter().map(|&i| (i, i)).collect(),
        GeometryKind::FiniteInterval => sites.iter().flat_map(|&i| sites.iter().map(move |&j| (i, j))).collect(),
    };
    let terms: Vec<(Monomial, Bicomplex)> = pairs
        .par_iter()
        .flat_map_iter(|&(i, j)| {
            let k = lattice.momentum(i);
            let kp = lattice.momentum(j);
            let hg = h_gamma(k, kp, params).expect("physical sites have real frequencies")
                * g_kernel(k, kp, params, geom, dk, t).expect("physical sites have real frequencies");
            let c = Bicomplex::from_complex(hg * (dk * dk));
            let block = pair_plus(i, j).add(&pair_minus(i, j)).scale(c);
            block.terms().clone().into_iter()
        })
        .collect();
    let mut b = PolyBuilder::default();
    for (w, c) in terms {
        b.push(w, c);
    }
    b.finish()
}

/// Lattice Hamiltonian: the `Δk²`-weighted double sum of
/// `H_γ G [J⁺{a₁, b₁} + J⁻{b₂, a₂}]` plus its adjoint.
///
/// On the infinite line only `k' = k` survives and the sum becomes
/// `2πΔk Σ_k H_γ(k, k)[…] + h.c.`, with no time dependence.
pub fn hamiltonian_poly(params: &FieldParams, geom: &GeometrySpec, table: &CommutationTable, t: f64) -> OperatorPoly {
    let a = annihilation_block(params, geom, table, t);
    a.add(&a.adjoint())
}

/// The creation-only part of `iHt`, which is what acts on the vacuum once
/// the annihilation pairs have zero eigenvalue.
pub fn evolution_exponent(params: &FieldParams, geom: &GeometrySpec, table: &CommutationTable, t: f64) -> OperatorPoly {
    let creation = annihilation_block(params, geom, table, t).adjoint();
    creation.scale(Bicomplex::I * t)
}

/// Charge operator on the infinite line:
/// `−2iΔk Σ ω_k [J⁺{a₁,b₁} + J⁻{a₁†,b₁†} − J⁺{b₂†,a₂†} − J⁻{b₂,a₂}]`.
pub fn charge_poly(params: &FieldParams, table: &CommutationTable) -> OperatorPoly {
    let dk = table.lattice.delta_k;
    let mut b = PolyBuilder::default();
    for i in physical_sites(params, table) {
        let w = params.omega(table.lattice.momentum(i)).expect("physical site");
        let c = Bicomplex::I * (-2.0 * dk * w);
        let a1d = ModeOp::dag(Species::A1, i);
        let b1d = ModeOp::dag(Species::B1, i);
        let a2d = ModeOp::dag(Species::A2, i);
        let b2d = ModeOp::dag(Species::B2, i);
        b.push_poly(&pair_plus(i, i), c);
        b.push_poly(&anticommutator(a1d, b1d), c * Bicomplex::J_MINUS);
        b.push_poly(&anticommutator(b2d, a2d), -(c * Bicomplex::J_PLUS));
        b.push_poly(&pair_minus(i, i), -c);
    }
    b.finish()
}

/// Four real components of a field and their time derivatives, with
/// `Ω = φ₁ + iφ₂ + jψ₁ + ijψ₂`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct FieldComponents {
    pub phi1: f64,
    pub phi2: f64,
    pub psi1: f64,
    pub psi2: f64,
    pub dphi1: f64,
    pub dphi2: f64,
    pub dpsi1: f64,
    pub dpsi2: f64,
}

impl FieldComponents {
    pub fn from_field(value: Bicomplex, dt: Bicomplex) -> Self {
        Self {
            phi1: value.x,
            phi2: value.y,
            psi1: value.u,
            psi2: value.v,
            dphi1: dt.x,
            dphi2: dt.y,
            dpsi1: dt.u,
            dpsi2: dt.v,
        }
    }
}

/// `i(φ̇₂φ₁ − φ̇₁φ₂ + ψ̇₁ψ₂ − ψ̇₂ψ₁) + j(ψ̇₁φ₁ + ψ̇₂φ₂ − φ̇₁ψ₁ − φ̇₂ψ₂)`.
pub fn charge_density_classical(f: &FieldComponents) -> Bicomplex {
    let i_part = f.dphi2 * f.phi1 - f.dphi1 * f.phi2 + f.dpsi1 * f.psi2 - f.dpsi2 * f.psi1;
    let j_part = f.dpsi1 * f.phi1 + f.dpsi2 * f.phi2 - f.dphi1 * f.psi1 - f.dphi2 * f.psi2;
    Bicomplex::new(0.0, i_part, j_part, 0.0)
}

/// `j₀ = Ω̄Ω̇ − ΩΩ̄̇ + jγΩΩ̄`.
pub fn charge_density(modes: &[ModeSolution], params: &FieldParams, x: f64, t: f64) -> Bicomplex {
    let jet = field_jet(modes, &[x], t);
    let w = jet.value;
    let wb = w.conj_bar();
    wb * jet.dt - w * jet.dt.conj_bar() + Bicomplex::J * (w * wb) * params.gamma
}

/// `Ω̄∂ₓΩ − Ω∂ₓΩ̄`.
pub fn current_density(modes: &[ModeSolution], x: f64, t: f64) -> Bicomplex {
    let jet = field_jet(modes, &[x], t);
    let w = jet.value;
    let dx = jet.dx[0];
    w.conj_bar() * dx - w * dx.conj_bar()
}

/// Central-difference estimate of `∂ₜj₀ + ∂ᵢjⁱ` with `∂ⁱ = −∂ᵢ`; the error is
/// `O(h²)` for fields that solve the equation of motion.
pub fn noether_residual(modes: &[ModeSolution], params: &FieldParams, x: f64, t: f64, h: f64) -> Bicomplex {
    let dt_j0 = (charge_density(modes, params, x, t + h) - charge_density(modes, params, x, t - h)) * (0.5 / h);
    let dx_j1 = (current_density(modes, x + h, t) - current_density(modes, x - h, t)) * (0.5 / h);
    dt_j0 - dx_j1
}

/// `⟨0|H|0⟩` on the lattice, evaluated at `t = 0`.
pub fn vev_hamiltonian(
    params: &FieldParams,
    geom: &GeometrySpec,
    table: &CommutationTable,
    rules: &VacuumRules,
) -> Result<Bicomplex> {
    vev(&hamiltonian_poly(params, geom, table, 0.0), rules, table)
}

/// `⟨0|Q|0⟩` on the lattice.
pub fn vev_charge(params: &FieldParams, table: &CommutationTable, rules: &VacuumRules) -> Result<Bicomplex> {
    vev(&charge_poly(params, table), rules, table)
}
