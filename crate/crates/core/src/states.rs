//! Evolved and asymptotic vacuum states on a truncated pair basis.
//!
//! A basis ket is a multiset of ordered creation pairs such as
//! `b2†(k) a2†(k')`, acting on the vacuum. Pairs are treated as commuting
//! labels and kets with distinct labels are orthonormal.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::Write;
use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dispersion::FieldParams;
use crate::error::{Error, Result};
use crate::observables::{evolution_exponent, geometry_kernel, h_gamma, vev_hamiltonian, GeometrySpec};
use crate::operators::{CommutationTable, ModeOp, OperatorPoly, Species, VacuumRules};
use crate::ring::Bicomplex;

/// Largest basis built unless the caller raises it.
pub const DEFAULT_BASIS_CAP: usize = 200_000;

/// Two creators applied in this order.
pub type PairWord = [ModeOp; 2];

/// Sorted multiset of creation pairs; the empty ket is the vacuum.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ket(Vec<PairWord>);

impl Ket {
    pub fn vacuum() -> Self {
        Self(Vec::new())
    }

    pub fn from_pairs(mut pairs: Vec<PairWord>) -> Self {
        pairs.sort();
        Self(pairs)
    }

    pub fn pairs(&self) -> &[PairWord] {
        &self.0
    }

    pub fn is_vacuum(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of pairs.
    pub fn order(&self) -> usize {
        self.0.len()
    }

    fn with(&self, p: PairWord) -> Self {
        let mut v = self.0.clone();
        let pos = v.partition_point(|q| *q <= p);
        v.insert(pos, p);
        Self(v)
    }

    fn species(&self) -> impl Iterator<Item = Species> + '_ {
        self.0.iter().flat_map(|p| p.iter().map(|op| op.species))
    }
}

impl fmt::Display for Ket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        for (n, p) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}{}", p[0], p[1])?;
        }
        Ok(())
    }
}

/// Truncated state with ring-valued amplitudes.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    pub amplitudes: BTreeMap<Ket, Bicomplex>,
    pub truncation_order: u32,
}

impl StateVector {
    pub fn vacuum() -> Self {
        Self {
            amplitudes: BTreeMap::from([(Ket::vacuum(), Bicomplex::ONE)]),
            truncation_order: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn amplitude(&self, ket: &Ket) -> Bicomplex {
        self.amplitudes.get(ket).copied().unwrap_or(Bicomplex::ZERO)
    }

    /// Ring-valued inner product `Σ conj(a) b` over the orthonormal basis.
    pub fn inner(&self, other: &Self) -> Bicomplex {
        Bicomplex::exact_sum(
            self.amplitudes
                .iter()
                .filter_map(|(k, a)| other.amplitudes.get(k).map(|b| a.conj_bar() * *b)),
        )
    }

    /// Euclidean norm of all amplitude components.
    pub fn euclidean_norm(&self) -> f64 {
        self.amplitudes.values().map(|a| a.norm().powi(2)).sum::<f64>().sqrt()
    }

    /// Ring sum of the amplitudes of kets with exactly `order` pairs.
    pub fn order_sum(&self, order: usize) -> Bicomplex {
        Bicomplex::exact_sum(
            self.amplitudes
                .iter()
                .filter(|(k, _)| k.order() == order)
                .map(|(_, a)| *a),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.amplitudes.clone();
        for (k, a) in &other.amplitudes {
            *out.entry(k.clone()).or_insert(Bicomplex::ZERO) += *a;
        }
        out.retain(|_, a| !a.is_zero());
        Self {
            amplitudes: out,
            truncation_order: self.truncation_order.max(other.truncation_order),
        }
    }

    /// Ket label to `[1, i, j, ij]` components, keys sorted.
    pub fn to_json_map(&self) -> BTreeMap<String, [f64; 4]> {
        self.amplitudes
            .iter()
            .map(|(k, a)| (k.to_string(), [a.x, a.y, a.u, a.v]))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_map()).expect("string keys and finite floats serialize")
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        let io = |source| Error::Io {
            path: path.to_path_buf(),
            source,
        };
        let mut f = std::fs::File::create(path).map_err(io)?;
        f.write_all(self.to_json().as_bytes()).map_err(io)?;
        f.write_all(b"\n").map_err(io)
    }
}

/// Linear combination of creation pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct PairExponent {
    pub terms: Vec<(PairWord, Bicomplex)>,
}

impl PairExponent {
    /// Reads the two-creator words of `poly`; anything else is rejected.
    pub fn from_poly(poly: &OperatorPoly) -> Result<Self> {
        let mut terms = Vec::with_capacity(poly.len());
        for (w, c) in poly.terms() {
            match w.as_slice() {
                [x, y] if x.dagger && y.dagger => terms.push(([*x, *y], *c)),
                _ => {
                    return Err(Error::Domain(format!(
                        "exponent word of length {} is not a creation pair",
                        w.len()
                    )))
                }
            }
        }
        Ok(Self { terms })
    }

    /// Sum of the Euclidean norms of the coefficients.
    pub fn norm(&self) -> f64 {
        self.terms.iter().map(|(_, c)| c.norm()).sum::<f64>() + 0.0
    }

    /// Number of kets of `e^X|0⟩` truncated at `order`, counting each sector
    /// separately since cross-sector products vanish.
    pub fn basis_size(&self, order: u32) -> usize {
        let mut plus = 0usize;
        let mut minus = 0usize;
        for (_, c) in &self.terms {
            let (p, m) = c.idempotent_decompose();
            plus += (p.norm_sqr() != 0.0) as usize;
            minus += (m.norm_sqr() != 0.0) as usize;
        }
        let multisets = |n: usize| -> usize {
            // Σ_{r=1..order} C(n + r − 1, r), saturating.
            let mut total = 0usize;
            let mut c = 1u128;
            for r in 1..=order as u128 {
                c = c * (n as u128 + r - 1) / r;
                total = total.saturating_add(usize::try_from(c).unwrap_or(usize::MAX));
            }
            total
        };
        1usize.saturating_add(multisets(plus)).saturating_add(multisets(minus))
    }

    /// `Σ_{n ≤ order} Xⁿ/n! |0⟩`.
    pub fn apply_exp(&self, order: u32, basis_cap: usize) -> Result<StateVector> {
        let size = self.basis_size(order);
        if size > basis_cap {
            return Err(Error::TruncationOrderTooLarge { size, cap: basis_cap });
        }
        let mut state = StateVector::vacuum();
        let mut level: BTreeMap<Ket, Bicomplex> = BTreeMap::from([(Ket::vacuum(), Bicomplex::ONE)]);
        for n in 1..=order {
            let inv_n = 1.0 / n as f64;
            let contributions: Vec<Vec<(Ket, Bicomplex)>> = level
                .par_iter()
                .map(|(ket, a)| {
                    self.terms
                        .iter()
                        .filter_map(|(p, c)| {
                            let v = *c * *a * inv_n;
                            (!v.is_zero()).then(|| (ket.with(*p), v))
                        })
                        .collect()
                })
                .collect();
            let mut next: BTreeMap<Ket, Bicomplex> = BTreeMap::new();
            for (k, v) in contributions.into_iter().flatten() {
                *next.entry(k).or_insert(Bicomplex::ZERO) += v;
            }
            next.retain(|_, a| !a.is_zero());
            state.amplitudes.extend(next.iter().map(|(k, a)| (k.clone(), *a)));
            level = next;
        }
        state.truncation_order = order;
        Ok(state)
    }
}

/// Exponent of `e^{iHt}|0⟩` once the annihilation pairs are dropped.
pub fn evolution_pairs(
    t: f64,
    params: &FieldParams,
    geom: &GeometrySpec,
    table: &CommutationTable,
) -> Result<PairExponent> {
    PairExponent::from_poly(&evolution_exponent(params, geom, table, t))
}

fn require_constrained(rules: &VacuumRules) -> Result<()> {
    if !rules.satisfies_constraints() {
        return Err(Error::Domain(
            "state evolution needs constrained vacuum rules (J+ lambda1 = J- lambda2 = 0)".into(),
        ));
    }
    Ok(())
}

/// Truncated `e^{iHt}|0⟩`.
pub fn evolve_vacuum(
    t: f64,
    order: u32,
    params: &FieldParams,
    geom: &GeometrySpec,
    table: &CommutationTable,
    rules: &VacuumRules,
    basis_cap: usize,
) -> Result<StateVector> {
    require_constrained(rules)?;
    if t == 0.0 {
        return Ok(StateVector::vacuum());
    }
    evolution_pairs(t, params, geom, table)?.apply_exp(order, basis_cap)
}

/// Elliptic and hyperbolic phases of `⟨0|0(t)⟩ = e^{iα} e^{jβ}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhasePair {
    pub alpha: f64,
    pub beta: f64,
}

/// The exponent `it⟨0|H|0⟩` of the vacuum overlap.
fn overlap_exponent(
    t: f64,
    params: &FieldParams,
    geom: &GeometrySpec,
    table: &CommutationTable,
    rules: &VacuumRules,
) -> Result<Bicomplex> {
    if t == 0.0 {
        return Ok(Bicomplex::ZERO);
    }
    Ok(Bicomplex::I * vev_hamiltonian(params, geom, table, rules)? * t)
}

pub fn overlap_phases(
    t: f64,
    params: &FieldParams,
    geom: &GeometrySpec,
    table: &CommutationTable,
    rules: &VacuumRules,
) -> Result<PhasePair> {
    let z = overlap_exponent(t, params, geom, table, rules)?;
    Ok(PhasePair { alpha: z.y, beta: z.u })
}

/// `⟨0|0(t)⟩ = exp(it⟨0|H|0⟩)`.
pub fn overlap_with_vacuum(
    t: f64,
    params: &FieldParams,
    geom: &GeometrySpec,
    table: &CommutationTable,
    rules: &VacuumRules,
) -> Result<Bicomplex> {
    Ok(overlap_exponent(t, params, geom, table, rules)?.exp())
}

/// `|⟨0(t)|0(t)⟩ − 1|` on the truncated state.
pub fn norm_preservation(state: &StateVector) -> f64 {
    (state.inner(state) - Bicomplex::ONE).norm()
}

/// Bound on the Euclidean norm of the omitted tail `Σ_{n > order} Xⁿ/n!|0⟩`.
pub fn truncation_remainder(exponent: &PairExponent, order: u32) -> f64 {
    let x = exponent.norm();
    let mut term = 1.0;
    let mut partial = 1.0;
    for n in 1..=order {
        term *= x / n as f64;
        partial += term;
    }
    (x.exp() - partial).max(0.0)
}

/// Choice of the frequency-diagonal kernel of the finite-interval state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AsymptoticKernel {
    /// `5L η_k` with `η_k = ω³/k − 2iω²γ/k`.
    Printed,
    /// `L (ω/k) H̄_γ(k, k)` from the delta-sequence contraction; with
    /// `cross_term` the `k' = −k` branch weighted by `I(2k)` is added.
    Contracted { cross_term: bool },
}

/// `η_k = ω³/k − 2iω²γ/k`.
pub fn eta(k: f64, params: &FieldParams) -> Result<Complex64> {
    if k == 0.0 {
        return Err(Error::PoleAtZeroMomentum);
    }
    let w = params.omega(k)?;
    Ok(Complex64::new(w * w * w / k, -2.0 * w * w * params.gamma / k))
}

/// Creation pairs of `Ŵ(k, k') = J⁺{b₂†(k'), a₂†(k)} + J⁻{a₁†(k), b₁†(k')}`
/// scaled by `c`.
fn push_w(terms: &mut Vec<(PairWord, Bicomplex)>, i: i32, j: i32, c: Complex64) {
    let plus = Bicomplex::plus_times(c);
    let minus = Bicomplex::minus_times(c);
    let b2 = ModeOp::dag(Species::B2, j);
    let a2 = ModeOp::dag(Species::A2, i);
    let a1 = ModeOp::dag(Species::A1, i);
    let b1 = ModeOp::dag(Species::B1, j);
    terms.push(([b2, a2], plus));
    terms.push(([a2, b2], plus));
    terms.push(([a1, b1], minus));
    terms.push(([b1, a1], minus));
}

/// Exponent of the `t → ∞` state on `[L₁, L₂]`.
pub fn asymptotic_exponent_finite(
    params: &FieldParams,
    geom: &GeometrySpec,
    table: &CommutationTable,
    kernel: AsymptoticKernel,
) -> Result<PairExponent> {
    geom.validate()?;
    let len = geom
        .length()
        .ok_or_else(|| Error::Domain("asymptotic finite state needs a finite interval".into()))?;
    let lattice = &table.lattice;
    if lattice.contains_zero() {
        return Err(Error::PoleAtZeroMomentum);
    }
    let dk = lattice.delta_k;
    let mut terms = Vec::new();
    for i in lattice.indices() {
        let k = lattice.momentum(i);
        if params.omega(k).is_err() {
            continue;
        }
        match kernel {
            AsymptoticKernel::Printed => push_w(&mut terms, i, i, eta(k, params)? * (5.0 * len * dk)),
            AsymptoticKernel::Contracted { cross_term } => {
                let w = params.omega(k)?;
                let jac = w / k;
                push_w(&mut terms, i, i, h_gamma(k, k, params)?.conj() * (jac * len * dk));
                let mirror = lattice.mirror(i);
                if cross_term && lattice.contains(mirror) {
                    let kp = lattice.momentum(mirror);
                    let c = (h_gamma(k, kp, params)? * geometry_kernel(k - kp, geom, dk)).conj() * (jac * dk);
                    push_w(&mut terms, i, mirror, c);
                }
            }
        }
    }
    Ok(PairExponent { terms })
}

/// Truncated `t → ∞` state for a finite interval.
pub fn asymptotic_state_finite(
    order: u32,
    params: &FieldParams,
    geom: &GeometrySpec,
    table: &CommutationTable,
    kernel: AsymptoticKernel,
    basis_cap: usize,
) -> Result<StateVector> {
    asymptotic_exponent_finite(params, geom, table, kernel)?.apply_exp(order, basis_cap)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Plus,
    Minus,
}

/// Multiplies every amplitude by `J⁺` or `J⁻` and drops the vanishing ones.
pub fn project_view(state: &StateVector, side: Side) -> StateVector {
    let p = match side {
        Side::Plus => Bicomplex::J_PLUS,
        Side::Minus => Bicomplex::J_MINUS,
    };
    StateVector {
        amplitudes: state
            .amplitudes
            .iter()
            .map(|(k, a)| (k.clone(), p * *a))
            .filter(|(_, a)| !a.is_zero())
            .collect(),
        truncation_order: state.truncation_order,
    }
}

/// Species content of the excited kets: `(has superscript 1, has superscript 2)`.
pub fn species_content(state: &StateVector) -> (bool, bool) {
    let mut one = false;
    let mut two = false;
    for k in state.amplitudes.keys() {
        for s in k.species() {
            match s {
                Species::A1 | Species::B1 => one = true,
                Species::A2 | Species::B2 => two = true,
            }
        }
    }
    (one, two)
}

/// Per-time behavior of the infinite-line state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InfiniteDiagnostics {
    pub t: f64,
    /// `|F(t)|` of the generating factor `F(t) = exp(Σ_k c_k(t))`.
    pub modulus: f64,
    pub phase: f64,
    /// `ln|F(t)|/t`, zero at `t = 0`.
    pub modulus_growth_rate: f64,
    pub is_cyclostationary: bool,
    pub divergent: bool,
}

/// `Σ_k` of the `J⁺` coefficients of `b₂†(k)a₂†(k)` in the infinite-line
/// evolution exponent at time `t`.
fn infinite_exponent_sum(t: f64, params: &FieldParams, table: &CommutationTable) -> Complex64 {
    let poly = evolution_exponent(params, &GeometrySpec::infinite(), table, t);
    poly.terms()
        .iter()
        .filter(|(w, _)| w.len() == 2 && w[0].species == Species::B2 && w[1].species == Species::A2)
        .map(|(_, c)| c.idempotent_decompose().0)
        .sum()
}

/// Closed-form growth rate `2πγΔk Σ_k ω_k` of the infinite-line factor.
pub fn infinite_growth_rate(params: &FieldParams, table: &CommutationTable) -> f64 {
    let dk = table.lattice.delta_k;
    table
        .lattice
        .indices()
        .filter_map(|i| params.omega(table.lattice.momentum(i)).ok())
        .map(|w| 2.0 * std::f64::consts::PI * params.gamma * dk * w)
        .sum()
}

/// Modulus and phase of the per-time generating factor on the infinite line.
pub fn asymptotic_state_infinite(
    t_values: &[f64],
    params: &FieldParams,
    table: &CommutationTable,
) -> Vec<InfiniteDiagnostics> {
    let mut out: Vec<InfiniteDiagnostics> = t_values
        .par_iter()
        .map(|&t| {
            let s = if t == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                infinite_exponent_sum(t, params, table)
            };
            let f = s.exp();
            InfiniteDiagnostics {
                t,
                modulus: f.norm(),
                phase: f.arg(),
                modulus_growth_rate: if t == 0.0 { 0.0 } else { s.re / t },
                is_cyclostationary: false,
                divergent: false,
            }
        })
        .collect();
    let max_drift = out.iter().map(|d| (d.modulus - 1.0).abs()).fold(0.0, f64::max);
    let cyclo = max_drift < 1e-12;
    for d in &mut out {
        d.is_cyclostationary = cyclo;
        d.divergent = d.modulus_growth_rate > 0.0;
    }
    out
}

/// Modes on one side of a bipartition, as `(species, momentum index)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Partition {
    pub modes: BTreeSet<(Species, i32)>,
}

impl Partition {
    /// Every species at the given momentum indices.
    pub fn momenta<I: IntoIterator<Item = i32>>(indices: I) -> Self {
        Self {
            modes: indices
                .into_iter()
                .flat_map(|i| Species::ALL.into_iter().map(move |s| (s, i)))
                .collect(),
        }
    }

    fn contains(&self, op: &ModeOp) -> bool {
        self.modes.contains(&(op.species, op.momentum_index))
    }

    /// Restricts each pair to its operators in (`inside`) or outside the partition.
    fn split(&self, ket: &Ket) -> (Vec<Vec<ModeOp>>, Vec<Vec<ModeOp>>) {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for p in ket.pairs() {
            let (ins, outs): (Vec<ModeOp>, Vec<ModeOp>) = p.iter().partition(|op| self.contains(op));
            if !ins.is_empty() {
                a.push(ins);
            }
            if !outs.is_empty() {
                b.push(outs);
            }
        }
        a.sort();
        b.sort();
        (a, b)
    }
}

fn complex_rank(m: DMatrix<Complex64>) -> usize {
    let sv = m.singular_values();
    let max = sv.iter().copied().fold(0.0, f64::max);
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > 1e-10 * max).count()
}

/// Schmidt rank across `partition`: the larger of the `J⁺` and `J⁻` sector
/// ranks of the amplitude matrix.
pub fn schmidt_rank(state: &StateVector, partition: &Partition) -> usize {
    let mut rows: BTreeMap<Vec<Vec<ModeOp>>, usize> = BTreeMap::new();
    let mut cols: BTreeMap<Vec<Vec<ModeOp>>, usize> = BTreeMap::new();
    let mut entries = Vec::with_capacity(state.len());
    for (k, a) in &state.amplitudes {
        let (r, c) = partition.split(k);
        let nr = rows.len();
        let ri = *rows.entry(r).or_insert(nr);
        let nc = cols.len();
        let ci = *cols.entry(c).or_insert(nc);
        entries.push((ri, ci, *a));
    }
    let mut plus = DMatrix::<Complex64>::zeros(rows.len(), cols.len());
    let mut minus = plus.clone();
    for (r, c, a) in entries {
        let (p, m) = a.idempotent_decompose();
        plus[(r, c)] += p;
        minus[(r, c)] += m;
    }
    complex_rank(plus).max(complex_rank(minus))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::Lattice;
    use std::f64::consts::PI;

    fn params(m: f64, g: f64) -> FieldParams {
        FieldParams::new(m, g, 1).unwrap()
    }

    fn staggered(dk: f64, n: u32) -> CommutationTable {
        CommutationTable::standard(Lattice::new(dk, n, true).unwrap())
    }

    fn rules() -> VacuumRules {
        VacuumRules::constrained(Bicomplex::new(0.4, 1.0, -0.2, 0.3), Bicomplex::new(-1.0, 0.2, 0.6, 0.1))
    }

    fn finite() -> GeometrySpec {
        GeometrySpec::finite(-1.0, 1.5).unwrap()
    }

    #[test]
    fn zero_time_is_the_vacuum() {
        let tb = staggered(0.4, 2);
        for g in [GeometrySpec::infinite(), finite()] {
            let s = evolve_vacuum(0.0, 3, &params(1.0, 0.5), &g, &tb, &rules(), DEFAULT_BASIS_CAP).unwrap();
            assert_eq!(s, StateVector::vacuum());
        }
        let s = evolve_vacuum(2.0, 0, &params(1.0, 0.5), &finite(), &tb, &rules(), DEFAULT_BASIS_CAP).unwrap();
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn evolution_needs_constrained_rules() {
        let tb = staggered(0.4, 2);
        let bad = VacuumRules::unconstrained(Bicomplex::ONE, Bicomplex::ONE);
        assert!(evolve_vacuum(1.0, 1, &params(1.0, 0.5), &finite(), &tb, &bad, DEFAULT_BASIS_CAP).is_err());
    }

    #[test]
    fn first_order_amplitudes_follow_the_hamiltonian_weights() {
        let p = params(1.0, 0.5);
        let tb = staggered(0.4, 2);
        let t = 0.7;
        let s = evolve_vacuum(t, 1, &p, &GeometrySpec::infinite(), &tb, &rules(), DEFAULT_BASIS_CAP).unwrap();
        for i in tb.lattice.indices() {
            let k = tb.lattice.momentum(i);
            let expect = Complex64::new(0.0, t) * h_gamma(k, k, &p).unwrap().conj() * (2.0 * PI * 0.4);
            let env = Ket::from_pairs(vec![[ModeOp::dag(Species::B2, i), ModeOp::dag(Species::A2, i)]]);
            let sys = Ket::from_pairs(vec![[ModeOp::dag(Species::A1, i), ModeOp::dag(Species::B1, i)]]);
            let a = s.amplitude(&env);
            let b = s.amplitude(&sys);
            assert!((a - Bicomplex::plus_times(expect)).norm() < 1e-12);
            assert!((b - Bicomplex::minus_times(expect)).norm() < 1e-12);
        }
        // Four kets per momentum plus the vacuum.
        assert_eq!(s.len(), 1 + 4 * tb.lattice.len());
    }

    #[test]
    fn finite_first_order_state_spans_momentum_pairs() {
        let p = params(1.0, 0.5);
        let tb = staggered(0.4, 2);
        let s = evolve_vacuum(0.5, 1, &p, &finite(), &tb, &rules(), DEFAULT_BASIS_CAP).unwrap();
        let n = tb.lattice.len();
        assert_eq!(s.len(), 1 + 4 * n * n);
    }

    #[test]
    fn second_order_amplitude_matches_the_multiset_formula() {
        let p = params(1.0, 0.5);
        let tb = staggered(0.4, 1);
        let x = evolution_pairs(0.3, &p, &GeometrySpec::infinite(), &tb).unwrap();
        let s = x.apply_exp(2, DEFAULT_BASIS_CAP).unwrap();
        let (pw, c) = x.terms[0];
        let (qw, d) = x.terms.iter().find(|(w, c2)| *w != pw && !(*c2 * c).is_zero()).copied().unwrap();
        let doubled = Ket::from_pairs(vec![pw, pw]);
        let mixed = Ket::from_pairs(vec![pw, qw]);
        assert!((s.amplitude(&doubled) - c * c * 0.5).norm() < 1e-14);
        assert!((s.amplitude(&mixed) - c * d).norm() < 1e-14);
    }

    #[test]
    fn first_order_sum_converges_under_refinement() {
        let p = params(1.0, 0.5);
        let rel = |g: &GeometrySpec| {
            let coarse = evolve_vacuum(0.2, 1, &p, g, &staggered(0.2, 10), &rules(), DEFAULT_BASIS_CAP).unwrap();
            let fine = evolve_vacuum(0.2, 1, &p, g, &staggered(0.1, 20), &rules(), DEFAULT_BASIS_CAP).unwrap();
            let a = coarse.order_sum(1).norm();
            let b = fine.order_sum(1).norm();
            (a - b).abs() / b
        };
        assert!(rel(&GeometrySpec::infinite()) < 0.01);
        assert!(rel(&GeometrySpec::finite(-0.5, 0.5).unwrap()) < 0.01);
    }

    #[test]
    fn basis_cap_is_enforced() {
        let tb = staggered(0.4, 3);
        let err = evolve_vacuum(1.0, 4, &params(1.0, 0.5), &finite(), &tb, &rules(), 1000).unwrap_err();
        assert!(matches!(err, Error::TruncationOrderTooLarge { cap: 1000, .. }));
    }

    #[test]
    fn basis_size_counts_kets() {
        let tb = staggered(0.4, 2);
        let x = evolution_pairs(0.5, &params(1.0, 0.5), &finite(), &tb).unwrap();
        for order in 0..=3 {
            assert_eq!(x.apply_exp(order, usize::MAX).unwrap().len(), x.basis_size(order));
        }
    }

    #[test]
    fn overlap_is_one_under_constraints() {
        let p = params(1.0, 0.5);
        let tb = staggered(0.4, 3);
        for g in [GeometrySpec::infinite(), finite()] {
            for t in [0.1, 1.0, 10.0, 100.0] {
                assert_eq!(overlap_with_vacuum(t, &p, &g, &tb, &rules()).unwrap(), Bicomplex::ONE);
                let ph = overlap_phases(t, &p, &g, &tb, &rules()).unwrap();
                assert_eq!((ph.alpha, ph.beta), (0.0, 0.0));
            }
        }
    }

    #[test]
    fn unconstrained_overlap_is_a_bicomplex_phase() {
        let p = params(1.0, 0.5);
        let tb = staggered(0.4, 2);
        let r = VacuumRules::unconstrained(Bicomplex::ONE, Bicomplex::ZERO);
        let t = 0.05;
        let o = overlap_with_vacuum(t, &p, &GeometrySpec::infinite(), &tb, &r).unwrap();
        let ph = overlap_phases(t, &p, &GeometrySpec::infinite(), &tb, &r).unwrap();
        assert!((o - crate::ring::exp_bicomplex(ph.alpha, ph.beta)).norm() < 1e-12);
        assert!(ph.alpha != 0.0 && ph.beta != 0.0);
        assert!(!o.is_zero());
        assert_eq!(overlap_with_vacuum(0.0, &p, &GeometrySpec::infinite(), &tb, &r).unwrap(), Bicomplex::ONE);
    }

    #[test]
    fn norm_is_preserved_and_remainder_shrinks() {
        let p = params(1.0, 0.5);
        let tb = staggered(0.4, 2);
        let g = GeometrySpec::infinite();
        let unit = evolution_pairs(1.0, &p, &g, &tb).unwrap().norm();
        let t = 0.1 / unit;
        let x = evolution_pairs(t, &p, &g, &tb).unwrap();
        assert!((x.norm() - 0.1).abs() < 1e-12);
        let mut prev = f64::INFINITY;
        for order in 0..=4 {
            let s = x.apply_exp(order, DEFAULT_BASIS_CAP).unwrap();
            assert_eq!(norm_preservation(&s), 0.0);
            let r = truncation_remainder(&x, order);
            assert!(r < prev);
            if order > 0 {
                assert!(r <= 0.5 * prev, "not geometric: {r} after {prev}");
            }
            prev = r;
        }
        assert!(prev <= 1e-4);
    }

    #[test]
    fn remainder_bound_covers_the_next_term() {
        let p = params(1.0, 0.5);
        let tb = staggered(0.4, 1);
        let x = evolution_pairs(0.02, &p, &GeometrySpec::infinite(), &tb).unwrap();
        for order in 0..3 {
            let lo = x.apply_exp(order, DEFAULT_BASIS_CAP).unwrap();
            let hi = x.apply_exp(order + 1, DEFAULT_BASIS_CAP).unwrap();
            let diff = hi.add(&StateVector {
                amplitudes: lo.amplitudes.iter().map(|(k, a)| (k.clone(), -*a)).collect(),
                truncation_order: order,
            });
            assert!(diff.euclidean_norm() <= truncation_remainder(&x, order));
        }
    }

    #[test]
    fn eta_examples() {
        let p0 = params(1.3, 0.0);
        let k = 0.7;
        let e = eta(k, &p0).unwrap();
        assert!((e.re - (k * k + 1.69f64).powf(1.5) / k).abs() < 1e-13);
        assert_eq!(e.im, 0.0);
        assert!(matches!(eta(0.0, &p0), Err(Error::PoleAtZeroMomentum)));
        let p = params(1.0, 0.5);
        let w = p.omega(-0.9).unwrap();
        let e = eta(-0.9, &p).unwrap();
        assert!((e - Complex64::new(w.powi(3) / -0.9, -2.0 * w * w * 0.5 / -0.9)).norm() < 1e-13);
    }

    #[test]
    fn asymptotic_state_rejects_k_zero() {
        let tb = CommutationTable::standard(Lattice::new(0.4, 2, false).unwrap());
        let err = asymptotic_state_finite(1, &params(1.0, 0.5), &finite(), &tb, AsymptoticKernel::Printed, 100);
        assert!(matches!(err, Err(Error::PoleAtZeroMomentum)));
    }

    #[test]
    fn asymptotic_first_order_matches_direct_sum() {
        let p = params(1.0, 0.5);
        let tb = staggered(0.3, 4);
        let s = asymptotic_state_finite(1, &p, &finite(), &tb, AsymptoticKernel::Printed, 1000).unwrap();
        // Independent evaluation: 5 L Δk Σ η_k over both orderings of each pair.
        let len = 2.5;
        let mut direct = Complex64::new(0.0, 0.0);
        for i in -4..4 {
            let k = (i as f64 + 0.5) * 0.3;
            let w = (k * k + 1.0 - 0.0625f64).sqrt();
            direct += Complex64::new(w.powi(3) / k, -2.0 * w * w * 0.5 / k) * (5.0 * len * 0.3);
        }
        let sum = s.order_sum(1);
        assert!((sum - Bicomplex::from_complex(direct * 2.0)).norm() < 1e-12 * direct.norm().max(1.0));
        assert_eq!(asymptotic_state_finite(0, &p, &finite(), &tb, AsymptoticKernel::Printed, 10).unwrap(), StateVector::vacuum());
    }

    #[test]
    fn contracted_kernel_ratios() {
        let p = params(1.0, 0.5);
        let tb = staggered(0.3, 3);
        let pr = asymptotic_exponent_finite(&p, &finite(), &tb, AsymptoticKernel::Printed).unwrap();
        let ct = asymptotic_exponent_finite(&p, &finite(), &tb, AsymptoticKernel::Contracted { cross_term: false }).unwrap();
        for ((w1, a), (w2, b)) in pr.terms.iter().zip(&ct.terms) {
            assert_eq!(w1, w2);
            let (a, _) = a.idempotent_decompose();
            let (b, _) = b.idempotent_decompose();
            if a.norm() == 0.0 {
                continue;
            }
            assert!((a.re / b.re - 2.0).abs() < 1e-12);
            assert!((a.im / b.im - 10.0).abs() < 1e-12);
        }
        let cross = asymptotic_exponent_finite(&p, &finite(), &tb, AsymptoticKernel::Contracted { cross_term: true }).unwrap();
        assert_eq!(cross.terms.len(), 2 * ct.terms.len());
    }

    #[test]
    fn projections_split_by_species_and_recompose() {
        let tb = staggered(0.3, 3);
        for g in [0.5, 0.0] {
            let s = asymptotic_state_finite(2, &params(1.0, g), &finite(), &tb, AsymptoticKernel::Printed, 10_000).unwrap();
            let plus = project_view(&s, Side::Plus);
            let minus = project_view(&s, Side::Minus);
            assert_eq!(species_content(&plus), (false, true));
            assert_eq!(species_content(&minus), (true, false));
            let excited = |v: &StateVector| v.amplitudes.keys().filter(|k| !k.is_vacuum()).cloned().collect::<BTreeSet<_>>();
            assert!(excited(&plus).is_disjoint(&excited(&minus)));
            assert_eq!(plus.add(&minus), s);
        }
    }

    #[test]
    fn schmidt_rank_examples() {
        let tb = staggered(0.3, 3);
        let part = Partition::momenta([0]);
        assert_eq!(schmidt_rank(&StateVector::vacuum(), &part), 1);
        for g in [0.5, 0.0] {
            let s = asymptotic_state_finite(1, &params(1.0, g), &finite(), &tb, AsymptoticKernel::Printed, 1000).unwrap();
            assert!(schmidt_rank(&s, &part) >= 2);
        }
        let single = CommutationTable::standard(Lattice::new(0.3, 1, true).unwrap());
        let s = evolve_vacuum(0.4, 1, &params(1.0, 0.5), &GeometrySpec::infinite(), &single, &rules(), 100).unwrap();
        let one_k = Partition::momenta([-1]);
        let lone = StateVector {
            amplitudes: s
                .amplitudes
                .into_iter()
                .filter(|(k, _)| k.pairs().iter().all(|p| p[0].momentum_index == -1))
                .collect(),
            truncation_order: 1,
        };
        assert_eq!(schmidt_rank(&lone, &one_k), 1);
    }

    #[test]
    fn schmidt_rank_matches_explicit_svd() {
        // |0⟩ + c₀|p₀⟩ + c₁|p₁⟩ with p₀ in the partition: amplitude matrix
        // [[1, c₁], [c₀, 0]] has rank 2 whenever c₀c₁ ≠ 0.
        let p0 = [ModeOp::dag(Species::A1, 0), ModeOp::dag(Species::B1, 0)];
        let p1 = [ModeOp::dag(Species::A1, 1), ModeOp::dag(Species::B1, 1)];
        let mut s = StateVector::vacuum();
        s.amplitudes.insert(Ket::from_pairs(vec![p0]), Bicomplex::real(0.3));
        s.amplitudes.insert(Ket::from_pairs(vec![p1]), Bicomplex::real(0.2));
        assert_eq!(schmidt_rank(&s, &Partition::momenta([0])), 2);
        // A product state (1 + c₀|p₀⟩)(1 + c₁|p₁⟩) has rank 1.
        s.amplitudes.insert(Ket::from_pairs(vec![p0, p1]), Bicomplex::real(0.06));
        assert_eq!(schmidt_rank(&s, &Partition::momenta([0])), 1);
    }

    #[test]
    fn infinite_geometry_diagnostics() {
        let tb = staggered(0.4, 3);
        let ts: Vec<f64> = (0..=100).map(|n| n as f64).collect();
        let still = asymptotic_state_infinite(&ts, &params(1.0, 0.0), &tb);
        assert!(still.iter().all(|d| d.is_cyclostationary && !d.divergent));
        assert!(still.iter().all(|d| (d.modulus - 1.0).abs() < 1e-12));
        assert_eq!(still[0].modulus, 1.0);

        let p = params(1.0, 0.3);
        let ts = [0.0, 0.5, 1.0, 2.0];
        let grow = asymptotic_state_infinite(&ts, &p, &tb);
        let expect = infinite_growth_rate(&p, &tb);
        assert!(expect > 0.0);
        for d in &grow[1..] {
            assert!(d.divergent && !d.is_cyclostationary);
            assert!((d.modulus_growth_rate - expect).abs() <= 0.01 * expect);
        }
        assert_eq!(grow[0].modulus, 1.0);
    }

    #[test]
    fn json_dump_is_sorted_and_stable() {
        let tb = staggered(0.4, 1);
        let s = asymptotic_state_finite(2, &params(1.0, 0.5), &finite(), &tb, AsymptoticKernel::Printed, 1000).unwrap();
        let a = s.to_json();
        assert_eq!(a, s.clone().to_json());
        let map: BTreeMap<String, [f64; 4]> = serde_json::from_str(&a).unwrap();
        assert_eq!(map.len(), s.len());
        assert_eq!(map["∅"], [1.0, 0.0, 0.0, 0.0]);
        let keys: Vec<&String> = map.keys().collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }
}
