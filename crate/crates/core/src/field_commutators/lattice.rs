//! Symbolic evaluation of equal-time field commutators on a momentum
//! lattice.
//!
//! Each field is a list of ladder operators with a constant coefficient, a
//! damping exponent (units of `γt/2`) and a plane-wave sign `s` in
//! `e^{is(ω_k t − kx)}`. Because every commutator of two ladder operators is
//! central, the commutator of two fields is a sum of constants times those
//! exponentials. Time dependence is cancelled symbolically, so a commutator
//! with no surviving damping or frequency exponent evaluates bit-identically
//! at every time.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;

use crate::dispersion::FieldParams;
use crate::error::Result;
use crate::operators::{commutator, CommutationTable, Lattice, ModeOp, Species};
use crate::ring::Bicomplex;

/// Integration measure of the mode expansion.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Measure {
    #[default]
    Plain,
    /// Extra weight `1/√ω_k` on every mode.
    InverseSqrtOmega,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FieldTerm {
    pub op: ModeOp,
    pub coeff: Bicomplex,
    pub damping: i32,
    pub phase: i32,
}

#[derive(Clone, Debug)]
pub struct LatticeField {
    pub terms: Vec<FieldTerm>,
    lattice: Lattice,
}

/// Lattice sites with a real frequency, i.e. `k² ≥ −M²`.
fn physical_sites(params: &FieldParams, lattice: &Lattice) -> Vec<(i32, f64)> {
    lattice
        .indices()
        .filter_map(|i| params.omega(lattice.momentum(i)).ok().map(|w| (i, w)))
        .collect()
}

fn weight(measure: Measure, dk: f64, w: f64) -> f64 {
    match measure {
        Measure::Plain => dk,
        Measure::InverseSqrtOmega => dk / w.sqrt(),
    }
}

impl LatticeField {
    /// `Ω(x, t)` with `a₁, a₂†` on `J⁺ e^{−γt/2}` and `b₁†, b₂` on `J⁻ e^{γt/2}`.
    pub fn omega(params: &FieldParams, lattice: &Lattice, measure: Measure) -> Self {
        use Species::*;
        let mut terms = Vec::new();
        for (i, w) in physical_sites(params, lattice) {
            let c = weight(measure, lattice.delta_k, w);
            let (p, m) = (Bicomplex::J_PLUS * c, Bicomplex::J_MINUS * c);
            terms.push(FieldTerm { op: ModeOp::new(A1, i), coeff: p, damping: -1, phase: 1 });
            terms.push(FieldTerm { op: ModeOp::dag(A2, i), coeff: p, damping: -1, phase: -1 });
            terms.push(FieldTerm { op: ModeOp::dag(B1, i), coeff: m, damping: 1, phase: 1 });
            terms.push(FieldTerm { op: ModeOp::new(B2, i), coeff: m, damping: 1, phase: -1 });
        }
        Self { terms, lattice: *lattice }
    }

    /// The conjugate momentum `Π(x, t)`, with `−iω b₁, +iω b₂†` on
    /// `J⁺ e^{γt/2}` and `−iω a₁†, +iω a₂` on `J⁻ e^{−γt/2}`.
    pub fn pi(params: &FieldParams, lattice: &Lattice, measure: Measure) -> Self {
        use Species::*;
        let mut terms = Vec::new();
        for (i, w) in physical_sites(params, lattice) {
            let c = weight(measure, lattice.delta_k, w);
            let minus_i_w = Complex64::new(0.0, -w * c);
            let p = Bicomplex::J_PLUS * minus_i_w;
            let m = Bicomplex::J_MINUS * minus_i_w;
            terms.push(FieldTerm { op: ModeOp::new(B1, i), coeff: p, damping: 1, phase: -1 });
            terms.push(FieldTerm { op: ModeOp::dag(B2, i), coeff: -p, damping: 1, phase: 1 });
            terms.push(FieldTerm { op: ModeOp::dag(A1, i), coeff: m, damping: -1, phase: -1 });
            terms.push(FieldTerm { op: ModeOp::new(A2, i), coeff: -m, damping: -1, phase: 1 });
        }
        Self { terms, lattice: *lattice }
    }

    pub fn adjoint(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| FieldTerm {
                    op: t.op.adjoint(),
                    coeff: t.coeff.conj_bar(),
                    damping: t.damping,
                    phase: -t.phase,
                })
                .collect(),
            lattice: self.lattice,
        }
    }
}

/// One surviving term of a field commutator:
/// `coeff · e^{damping·γt/2} · e^{i Σ n·ω t} · e^{i(kx·x + kxp·x')}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CommutatorTerm {
    /// Momentum index of the left field's operator.
    pub mode: i32,
    pub coeff: Bicomplex,
    pub damping: i32,
    /// Net frequency multiplicities keyed by `|k|` site.
    pub frequencies: Vec<(i32, i32)>,
    pub kx: f64,
    pub kxp: f64,
}

#[derive(Clone, Debug)]
pub struct LatticeCommutator {
    pub terms: Vec<CommutatorTerm>,
    gamma: f64,
    omegas: BTreeMap<i32, f64>,
}

impl LatticeCommutator {
    pub fn is_time_independent(&self) -> bool {
        self.terms.iter().all(|t| t.damping == 0 && t.frequencies.is_empty())
    }

    pub fn modes(&self) -> BTreeSet<i32> {
        self.terms.iter().map(|t| t.mode).collect()
    }

    fn term_value(&self, term: &CommutatorTerm, x: f64, xp: f64, t: f64) -> Bicomplex {
        let mut v = term.coeff * Complex64::from_polar(1.0, term.kx * x + term.kxp * xp);
        if term.damping != 0 {
            v = v * (term.damping as f64 * self.gamma * t / 2.0).exp();
        }
        if !term.frequencies.is_empty() {
            let phase: f64 = term.frequencies.iter().map(|(s, n)| *n as f64 * self.omegas[s] * t).sum();
            v = v * Complex64::from_polar(1.0, phase);
        }
        v
    }

    /// `[A(x, t), B(x', t)]` as a ring element.
    pub fn evaluate(&self, x: f64, xp: f64, t: f64) -> Bicomplex {
        Bicomplex::exact_sum(self.terms.iter().map(|term| self.term_value(term, x, xp, t)))
    }

    /// Contribution of the left field's mode `mode` only.
    pub fn evaluate_mode(&self, mode: i32, x: f64, xp: f64, t: f64) -> Bicomplex {
        Bicomplex::exact_sum(
            self.terms
                .iter()
                .filter(|term| term.mode == mode)
                .map(|term| self.term_value(term, x, xp, t)),
        )
    }
}

fn frequency_site(lattice: &Lattice, i: i32) -> i32 {
    i.min(lattice.mirror(i))
}

/// Symbolic `[A(x, t), B(x', t)]`.
pub fn field_commutator(a: &LatticeField, b: &LatticeField, params: &FieldParams, table: &CommutationTable) -> LatticeCommutator {
    let lattice = &table.lattice;
    let mut terms = Vec::new();
    for ta in &a.terms {
        for tb in &b.terms {
            let c = commutator(ta.op, tb.op, table);
            if c.is_zero() {
                continue;
            }
            let mut freq: BTreeMap<i32, i32> = BTreeMap::new();
            *freq.entry(frequency_site(lattice, ta.op.momentum_index)).or_default() += ta.phase;
            *freq.entry(frequency_site(lattice, tb.op.momentum_index)).or_default() += tb.phase;
            let coeff = ta.coeff * tb.coeff * c;
            if coeff.is_zero() {
                continue;
            }
            terms.push(CommutatorTerm {
                mode: ta.op.momentum_index,
                coeff,
                damping: ta.damping + tb.damping,
                frequencies: freq.into_iter().filter(|(_, n)| *n != 0).collect(),
                kx: -(ta.phase as f64) * lattice.momentum(ta.op.momentum_index),
                kxp: -(tb.phase as f64) * lattice.momentum(tb.op.momentum_index),
            });
        }
    }
    let omegas = lattice
        .indices()
        .filter_map(|i| params.omega(lattice.momentum(i)).ok().map(|w| (frequency_site(lattice, i), w)))
        .collect();
    LatticeCommutator {
        terms,
        gamma: params.gamma,
        omegas,
    }
}

/// `[Ω(x), Ω†(x')]` on the table's lattice.
pub fn omega_omegadagger_lattice(params: &FieldParams, table: &CommutationTable, measure: Measure) -> LatticeCommutator {
    let omega = LatticeField::omega(params, &table.lattice, measure);
    field_commutator(&omega, &omega.adjoint(), params, table)
}

/// `[Π(x), Π†(x')]` on the table's lattice.
pub fn pi_pidagger_lattice(params: &FieldParams, table: &CommutationTable, measure: Measure) -> LatticeCommutator {
    let pi = LatticeField::pi(params, &table.lattice, measure);
    field_commutator(&pi, &pi.adjoint(), params, table)
}

/// `[Ω(x), Π(x')]` on the table's lattice.
pub fn omega_pi_lattice(params: &FieldParams, table: &CommutationTable, measure: Measure) -> LatticeCommutator {
    let omega = LatticeField::omega(params, &table.lattice, measure);
    let pi = LatticeField::pi(params, &table.lattice, measure);
    field_commutator(&omega, &pi, params, table)
}

/// Largest violation, over the modes of `Ω`, of
/// `C_k(x, x') = conj(C_k(x', x))` for `C = [Ω(x), Ω†(x')]`.
pub fn hermiticity_defect(params: &FieldParams, table: &CommutationTable, x: f64, xp: f64, t: f64) -> Result<f64> {
    let c = omega_omegadagger_lattice(params, table, Measure::Plain);
    Ok(c.modes()
        .into_iter()
        .map(|k| (c.evaluate_mode(k, x, xp, t) - c.evaluate_mode(k, xp, x, t).conj_bar()).norm())
        .fold(0.0, f64::max))
}
