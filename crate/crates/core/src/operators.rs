//! Ladder operators on a momentum lattice, the noncanonical commutation
//! table, normal ordering and vacuum expectation values.
//!
//! The Dirac delta is realized as `δ_{kk'}/Δk` and `∫dk` as `Δk Σ`. All
//! commutators are central, so normal ordering terminates.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::Bicomplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Species {
    A1,
    B1,
    A2,
    B2,
}

impl Species {
    pub const ALL: [Species; 4] = [Species::A1, Species::B1, Species::A2, Species::B2];

    fn rank(self) -> u8 {
        match self {
            Species::B1 => 0,
            Species::A1 => 1,
            Species::B2 => 2,
            Species::A2 => 3,
        }
    }

    fn is_a(self) -> bool {
        matches!(self, Species::A1 | Species::A2)
    }

    fn index(self) -> usize {
        match self {
            Species::A1 | Species::B1 => 0,
            Species::A2 | Species::B2 => 1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Species::A1 => "a1",
            Species::B1 => "b1",
            Species::A2 => "a2",
            Species::B2 => "b2",
        }
    }
}

/// A single ladder operator `s(k)` or `s†(k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModeOp {
    pub species: Species,
    pub momentum_index: i32,
    pub dagger: bool,
}

impl ModeOp {
    pub fn new(species: Species, momentum_index: i32) -> Self {
        Self {
            species,
            momentum_index,
            dagger: false,
        }
    }

    pub fn dag(species: Species, momentum_index: i32) -> Self {
        Self {
            species,
            momentum_index,
            dagger: true,
        }
    }

    pub fn adjoint(self) -> Self {
        Self {
            dagger: !self.dagger,
            ..self
        }
    }

    /// Canonical position: creators first, then species `b1 < a1 < b2 < a2`,
    /// then ascending momentum.
    pub fn sort_key(&self) -> (u8, u8, i32) {
        (u8::from(!self.dagger), self.species.rank(), self.momentum_index)
    }
}

impl fmt::Display for ModeOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = if self.dagger { "†" } else { "" };
        write!(f, "{}{}({})", self.species.label(), d, self.momentum_index)
    }
}

/// Uniform momentum lattice of half-width `N`.
///
/// Unstaggered sites are `k = iΔk` for `i ∈ [−N, N]`; staggered sites are
/// `k = (i + ½)Δk` for `i ∈ [−N, N−1]`, which excludes `k = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Lattice {
    pub delta_k: f64,
    pub half_width: u32,
    pub staggered: bool,
}

impl Lattice {
    pub fn new(delta_k: f64, half_width: u32, staggered: bool) -> Result<Self> {
        if !(delta_k.is_finite() && delta_k > 0.0) {
            return Err(Error::Domain(format!("lattice spacing must be positive, got {delta_k}")));
        }
        if half_width == 0 {
            return Err(Error::Domain("lattice half-width must be positive".into()));
        }
        Ok(Self {
            delta_k,
            half_width,
            staggered,
        })
    }

    pub fn indices(&self) -> std::ops::RangeInclusive<i32> {
        let n = self.half_width as i32;
        if self.staggered {
            -n..=n - 1
        } else {
            -n..=n
        }
    }

    pub fn len(&self) -> usize {
        self.indices().count()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn momentum(&self, index: i32) -> f64 {
        if self.staggered {
            (index as f64 + 0.5) * self.delta_k
        } else {
            index as f64 * self.delta_k
        }
    }

    /// Index of the site at `−k`.
    pub fn mirror(&self, index: i32) -> i32 {
        if self.staggered {
            -index - 1
        } else {
            -index
        }
    }

    pub fn contains(&self, index: i32) -> bool {
        self.indices().contains(&index)
    }

    pub fn contains_zero(&self) -> bool {
        !self.staggered
    }

    /// Lattice delta `δ_{ij}/Δk`.
    pub fn delta(&self, i: i32, j: i32) -> f64 {
        if i == j {
            1.0 / self.delta_k
        } else {
            0.0
        }
    }
}

pub type RhoFn = Arc<dyn Fn(f64, f64) -> Bicomplex + Send + Sync>;

/// A commutation coefficient, constant or a function of `(k, k')`.
#[derive(Clone)]
pub enum Rho {
    Constant(Bicomplex),
    Function(RhoFn),
}

impl Rho {
    pub fn at(&self, k: f64, kp: f64) -> Bicomplex {
        match self {
            Rho::Constant(c) => *c,
            Rho::Function(f) => f(k, kp),
        }
    }
}

impl fmt::Debug for Rho {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rho::Constant(c) => write!(f, "Constant({c})"),
            Rho::Function(_) => write!(f, "Function(..)"),
        }
    }
}

/// `[a_i(k), b_j(k')] = ρ_{ij} δ(k − k')`, `[a_i(k), b_j†(k')] = σ_{ij} δ(k + k')`
/// with `(1,1) → 1, (1,2) → 2, (2,1) → 3, (2,2) → 4`; every other commutator
/// is zero.
#[derive(Clone, Debug)]
pub struct CommutationTable {
    pub rho: [Rho; 4],
    pub sigma: [Bicomplex; 4],
    pub lattice: Lattice,
}

fn table_slot(a: Species, b: Species) -> usize {
    2 * a.index() + b.index()
}

impl CommutationTable {
    /// `ρ₁ = 1`, the remaining coefficients zero.
    pub fn standard(lattice: Lattice) -> Self {
        Self::constant(
            [Bicomplex::ONE, Bicomplex::ZERO, Bicomplex::ZERO, Bicomplex::ZERO],
            lattice,
        )
    }

    pub fn constant(rho: [Bicomplex; 4], lattice: Lattice) -> Self {
        Self {
            rho: rho.map(Rho::Constant),
            sigma: [Bicomplex::ZERO; 4],
            lattice,
        }
    }

    pub fn with_sigma(mut self, sigma: [Bicomplex; 4]) -> Self {
        self.sigma = sigma;
        self
    }

    /// The four `ρ` values when they are constants.
    pub fn constant_rho(&self) -> Result<[Bicomplex; 4]> {
        let mut out = [Bicomplex::ZERO; 4];
        for (slot, r) in out.iter_mut().zip(&self.rho) {
            match r {
                Rho::Constant(c) => *slot = *c,
                Rho::Function(_) => return Err(Error::MomentumDependentRho),
            }
        }
        Ok(out)
    }

    /// `ρ` for the pair `(a_i(k), b_j(k'))`.
    pub fn rho_for(&self, a: Species, b: Species, k: f64, kp: f64) -> Bicomplex {
        self.rho[table_slot(a, b)].at(k, kp)
    }

    pub fn sigma_for(&self, a: Species, b: Species) -> Bicomplex {
        self.sigma[table_slot(a, b)]
    }
}

/// The central element `[op1, op2]`.
pub fn commutator(op1: ModeOp, op2: ModeOp, table: &CommutationTable) -> Bicomplex {
    if op1.species.is_a() == op2.species.is_a() {
        return Bicomplex::ZERO;
    }
    let (a, b, sign) = if op1.species.is_a() {
        (op1, op2, 1.0)
    } else {
        (op2, op1, -1.0)
    };
    let lat = &table.lattice;
    let (ka, kb) = (lat.momentum(a.momentum_index), lat.momentum(b.momentum_index));
    let value = match (a.dagger, b.dagger) {
        // [a, b] = ρ δ(k − k')
        (false, false) => table.rho_for(a.species, b.species, ka, kb) * lat.delta(a.momentum_index, b.momentum_index),
        // [b†, a†] = ρ̄ δ(k − k'), so [a†, b†] = −ρ̄ δ
        (true, true) => {
            -table.rho_for(a.species, b.species, ka, kb).conj_bar()
                * lat.delta(a.momentum_index, b.momentum_index)
        }
        // [a, b†] = σ δ(k + k')
        (false, true) => {
            table.sigma_for(a.species, b.species) * lat.delta(lat.mirror(a.momentum_index), b.momentum_index)
        }
        // [b, a†] = σ̄ δ(k + k'), so [a†, b] = −σ̄ δ
        (true, false) => {
            -table.sigma_for(a.species, b.species).conj_bar()
                * lat.delta(lat.mirror(a.momentum_index), b.momentum_index)
        }
    };
    value * sign
}

pub type Monomial = Vec<ModeOp>;

/// A finite sum of operator words with ring coefficients.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct OperatorPoly {
    terms: BTreeMap<Monomial, Bicomplex>,
}

/// Collects contributions per word and merges them with exactly rounded sums.
#[derive(Default)]
pub struct PolyBuilder {
    pending: BTreeMap<Monomial, Vec<Bicomplex>>,
}

impl PolyBuilder {
    pub fn push(&mut self, word: Monomial, coeff: Bicomplex) {
        if !coeff.is_zero() {
            self.pending.entry(word).or_default().push(coeff);
        }
    }

    pub fn push_poly(&mut self, poly: &OperatorPoly, scale: Bicomplex) {
        for (w, c) in &poly.terms {
            self.push(w.clone(), *c * scale);
        }
    }

    pub fn finish(self) -> OperatorPoly {
        let terms = self
            .pending
            .into_iter()
            .filter_map(|(w, cs)| {
                let s = Bicomplex::exact_sum(cs);
                (!s.is_zero()).then_some((w, s))
            })
            .collect();
        OperatorPoly { terms }
    }
}

impl OperatorPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scalar(c: Bicomplex) -> Self {
        Self::monomial(c, Vec::new())
    }

    pub fn monomial(c: Bicomplex, word: Monomial) -> Self {
        let mut b = PolyBuilder::default();
        b.push(word, c);
        b.finish()
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Bicomplex)>>(terms: I) -> Self {
        let mut b = PolyBuilder::default();
        for (w, c) in terms {
            b.push(w, c);
        }
        b.finish()
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Bicomplex> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, word: &[ModeOp]) -> Bicomplex {
        self.terms.get(word).copied().unwrap_or(Bicomplex::ZERO)
    }

    pub fn scale(&self, c: Bicomplex) -> Self {
        let mut b = PolyBuilder::default();
        b.push_poly(self, c);
        b.finish()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut b = PolyBuilder::default();
        b.push_poly(self, Bicomplex::ONE);
        b.push_poly(other, Bicomplex::ONE);
        b.finish()
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut b = PolyBuilder::default();
        b.push_poly(self, Bicomplex::ONE);
        b.push_poly(other, -Bicomplex::ONE);
        b.finish()
    }

    /// Product with words concatenated in order.
    pub fn mul(&self, other: &Self) -> Self {
        let mut b = PolyBuilder::default();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                b.push(w, *c1 * *c2);
            }
        }
        b.finish()
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Adjoint: reversed words, daggers flipped, coefficients conjugated.
    pub fn adjoint(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| {
            (w.iter().rev().map(|o| o.adjoint()).collect(), c.conj_bar())
        }))
    }

    pub fn is_canonical(&self) -> bool {
        self.terms.keys().all(|w| is_canonical_word(w))
    }
}

impl fmt::Display for OperatorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (w, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for o in w {
                write!(f, " {o}")?;
            }
        }
        Ok(())
    }
}

pub fn is_canonical_word(word: &[ModeOp]) -> bool {
    word.windows(2).all(|p| p[0].sort_key() <= p[1].sort_key())
}

/// `op1 op2 + op2 op1`.
pub fn anticommutator(op1: ModeOp, op2: ModeOp) -> OperatorPoly {
    OperatorPoly::from_terms([(vec![op1, op2], Bicomplex::ONE), (vec![op2, op1], Bicomplex::ONE)])
}

fn normal_order_word(word: Monomial, coeff: Bicomplex, table: &CommutationTable, out: &mut PolyBuilder) {
    let pos = word.windows(2).position(|p| p[0].sort_key() > p[1].sort_key());
    let Some(i) = pos else {
        out.push(word, coeff);
        return;
    };
    let c = commutator(word[i], word[i + 1], table);
    if !c.is_zero() {
        let mut reduced = word.clone();
        reduced.drain(i..i + 2);
        normal_order_word(reduced, coeff * c, table, out);
    }
    let mut swapped = word;
    swapped.swap(i, i + 1);
    normal_order_word(swapped, coeff, table, out);
}

/// Rewrites every word into canonical order using `xy = yx + [x, y]`.
pub fn normal_order(poly: &OperatorPoly, table: &CommutationTable) -> OperatorPoly {
    let mut out = PolyBuilder::default();
    for (w, c) in poly.terms() {
        normal_order_word(w.clone(), *c, table, &mut out);
    }
    out.finish()
}

/// Eigenvalues of the pair-coherent vacuum:
/// `J⁺{a₁, b₁}|0⟩ = J⁺λ₁|0⟩` and `J⁻{b₂, a₂}|0⟩ = J⁻λ₂|0⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VacuumRules {
    pub lambda1: Bicomplex,
    pub lambda2: Bicomplex,
    pub constrained: bool,
}

impl VacuumRules {
    pub fn unconstrained(lambda1: Bicomplex, lambda2: Bicomplex) -> Self {
        Self {
            lambda1,
            lambda2,
            constrained: false,
        }
    }

    /// Projects `λ₁ → J⁻λ₁` and `λ₂ → J⁺λ₂`, so that `J⁺λ₁ = J⁻λ₂ = 0`.
    pub fn constrained(lambda1: Bicomplex, lambda2: Bicomplex) -> Self {
        Self {
            lambda1: lambda1.minus_part(),
            lambda2: lambda2.plus_part(),
            constrained: true,
        }
    }

    pub fn satisfies_constraints(&self) -> bool {
        (Bicomplex::J_PLUS * self.lambda1).is_zero() && (Bicomplex::J_MINUS * self.lambda2).is_zero()
    }

    /// Ket eigenvalue of the annihilation pair of each sector.
    fn ket_value(&self, plus: bool) -> Complex64 {
        if plus {
            self.lambda1.idempotent_decompose().0
        } else {
            self.lambda2.idempotent_decompose().1
        }
    }

    /// Bra eigenvalue of the creation pair of each sector, the adjoint of the
    /// other sector's ket rule.
    fn bra_value(&self, plus: bool) -> Complex64 {
        if plus {
            self.lambda2.idempotent_decompose().1.conj()
        } else {
            self.lambda1.idempotent_decompose().0.conj()
        }
    }
}

fn sector(c: Bicomplex, plus: bool) -> Complex64 {
    let (p, m) = c.idempotent_decompose();
    if plus {
        p
    } else {
        m
    }
}

struct SectorEval<'a> {
    plus: bool,
    rules: &'a VacuumRules,
    table: &'a CommutationTable,
    ket: (Species, Species),
    bra: (Species, Species),
}

impl SectorEval<'_> {
    fn comm(&self, x: ModeOp, y: ModeOp) -> Complex64 {
        sector(commutator(x, y, self.table), self.plus)
    }

    fn undetermined(&self, word: &[ModeOp]) -> Error {
        let rest: Vec<String> = word.iter().map(|o| o.to_string()).collect();
        Error::UndeterminedByAxioms(format!(
            "{} sector leaves [{}]",
            if self.plus { "J+" } else { "J-" },
            rest.join(" ")
        ))
    }

    /// Moves `word[from]` to `word[to]` by adjacent swaps, returning the
    /// reordered word and every central term emitted on the way.
    fn eval_after_move(&self, word: &[ModeOp], from: usize, to: usize) -> Result<(Vec<ModeOp>, Complex64)> {
        let mut w = word.to_vec();
        let mut extra = Complex64::new(0.0, 0.0);
        let mut pos = from;
        while pos != to {
            let next = if to > pos { pos + 1 } else { pos - 1 };
            let (l, r) = (pos.min(next), pos.max(next));
            let c = self.comm(w[l], w[r]);
            if c.norm_sqr() != 0.0 {
                let mut reduced = w.clone();
                reduced.drain(l..=r);
                extra += c * self.eval(&reduced)?;
            }
            w.swap(l, r);
            pos = next;
        }
        Ok((w, extra))
    }

    fn eval(&self, word: &[ModeOp]) -> Result<Complex64> {
        if word.is_empty() {
            return Ok(Complex64::new(1.0, 0.0));
        }
        // Creators to the left of annihilators first.
        if let Some(i) = word.windows(2).position(|p| !p[0].dagger && p[1].dagger) {
            let (w, extra) = self.eval_after_move(word, i + 1, i)?;
            return Ok(self.eval(&w)? + extra);
        }
        let n = word.len();
        if n < 2 {
            return Err(self.undetermined(word));
        }
        let last = word[n - 1];
        if !last.dagger {
            let partner = if last.species == self.ket.0 {
                self.ket.1
            } else if last.species == self.ket.1 {
                self.ket.0
            } else {
                return Err(self.undetermined(word));
            };
            let Some(j) = (0..n - 1).rev().find(|&j| !word[j].dagger && word[j].species == partner) else {
                return Err(self.undetermined(word));
            };
            let (w, extra) = self.eval_after_move(word, j, n - 2)?;
            let pair = (self.rules.ket_value(self.plus) + self.comm(w[n - 2], w[n - 1])) * 0.5;
            return Ok(pair * self.eval(&w[..n - 2])? + extra);
        }
        let first = word[0];
        let partner = if first.species == self.bra.0 {
            self.bra.1
        } else if first.species == self.bra.1 {
            self.bra.0
        } else {
            return Err(self.undetermined(word));
        };
        let Some(j) = (1..n).find(|&j| word[j].species == partner) else {
            return Err(self.undetermined(word));
        };
        let (w, extra) = self.eval_after_move(word, j, 1)?;
        let pair = (self.rules.bra_value(self.plus) + self.comm(w[0], w[1])) * 0.5;
        Ok(pair * self.eval(&w[2..])? + extra)
    }
}

fn sector_vev(word: &[ModeOp], plus: bool, rules: &VacuumRules, table: &CommutationTable) -> Result<Complex64> {
    let (ket, bra) = if plus {
        ((Species::A1, Species::B1), (Species::A2, Species::B2))
    } else {
        ((Species::B2, Species::A2), (Species::A1, Species::B1))
    };
    SectorEval {
        plus,
        rules,
        table,
        ket,
        bra,
    }
    .eval(word)
}

/// Vacuum expectation value `⟨0|poly|0⟩` with `⟨0|0⟩ = 1`.
///
/// Each coefficient is split into its `J⁺` and `J⁻` sectors. In the `J⁺`
/// sector adjacent `{a₁, b₁}` pairs are absorbed into the ket and
/// `{a₂†, b₂†}` pairs into the bra; in the `J⁻` sector `{b₂, a₂}` and
/// `{a₁†, b₁†}`. An ordered pair `xy` is valued `(λ + [x, y])/2`, so the
/// anticommutator reproduces `λ`. Creators are first moved left and each
/// outermost operator is brought next to its nearest partner; every swap
/// contributes its central commutator.
pub fn vev(poly: &OperatorPoly, rules: &VacuumRules, table: &CommutationTable) -> Result<Bicomplex> {
    let mut parts = Vec::with_capacity(poly.len());
    for (w, c) in poly.terms() {
        let (cp, cm) = c.idempotent_decompose();
        let vp = if cp.norm_sqr() != 0.0 {
            cp * sector_vev(w, true, rules, table)?
        } else {
            Complex64::new(0.0, 0.0)
        };
        let vm = if cm.norm_sqr() != 0.0 {
            cm * sector_vev(w, false, rules, table)?
        } else {
            Complex64::new(0.0, 0.0)
        };
        parts.push(Bicomplex::from_idempotent(vp, vm));
    }
    Ok(Bicomplex::exact_sum(parts))
}

/// True when every annihilator–creator commutator of the table vanishes on
/// the lattice, so that pair generators of the two blocks commute.
pub fn pair_commutation_check(table: &CommutationTable) -> bool {
    let sites: Vec<i32> = table.lattice.indices().collect();
    for s1 in Species::ALL {
        for s2 in Species::ALL {
            for &i in &sites {
                for &j in &sites {
                    if !commutator(ModeOp::new(s1, i), ModeOp::dag(s2, j), table).is_zero() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// `J⁺{a₁(k), b₁(k')}`.
pub fn pair_plus(k: i32, kp: i32) -> OperatorPoly {
    anticommutator(ModeOp::new(Species::A1, k), ModeOp::new(Species::B1, kp)).scale(Bicomplex::J_PLUS)
}

/// `J⁻{b₂(k'), a₂(k)}`.
pub fn pair_minus(k: i32, kp: i32) -> OperatorPoly {
    anticommutator(ModeOp::new(Species::B2, kp), ModeOp::new(Species::A2, k)).scale(Bicomplex::J_MINUS)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lattice() -> Lattice {
        Lattice::new(0.5, 4, false).unwrap()
    }

    fn table() -> CommutationTable {
        CommutationTable::constant(
            [
                Bicomplex::new(1.0, 0.5, 0.0, 0.0),
                Bicomplex::new(0.0, 0.0, 0.3, 0.0),
                Bicomplex::new(0.2, 0.0, 0.0, -0.1),
                Bicomplex::new(0.7, 0.0, 0.0, 0.4),
            ],
            lattice(),
        )
    }

    use Species::*;

    #[test]
    fn table_examples() {
        let t = table();
        let dk = t.lattice.delta_k;
        let rho1 = t.constant_rho().unwrap()[0];
        assert_eq!(commutator(ModeOp::new(A1, 2), ModeOp::new(B1, 2), &t), rho1 / dk);
        assert_eq!(commutator(ModeOp::new(A1, 2), ModeOp::new(B1, 1), &t), Bicomplex::ZERO);
        assert_eq!(commutator(ModeOp::new(A1, 2), ModeOp::dag(B2, -2), &t), Bicomplex::ZERO);
        assert_eq!(commutator(ModeOp::new(A1, 2), ModeOp::dag(A1, 2), &t), Bicomplex::ZERO);
        assert_eq!(commutator(ModeOp::new(B1, 1), ModeOp::new(B2, 1), &t), Bicomplex::ZERO);
        let rho = t.constant_rho().unwrap();
        assert_eq!(commutator(ModeOp::new(A1, 0), ModeOp::new(B2, 0), &t), rho[1] / dk);
        assert_eq!(commutator(ModeOp::new(A2, 0), ModeOp::new(B1, 0), &t), rho[2] / dk);
        assert_eq!(commutator(ModeOp::new(A2, 0), ModeOp::new(B2, 0), &t), rho[3] / dk);
        assert_eq!(commutator(ModeOp::dag(B2, 1), ModeOp::dag(A2, 1), &t), rho[3].conj_bar() / dk);
    }

    #[test]
    fn sigma_entries_pair_opposite_momenta() {
        let s = Bicomplex::new(0.0, 1.0, 0.0, 0.0);
        let t = table().with_sigma([s, Bicomplex::ZERO, Bicomplex::ZERO, Bicomplex::ZERO]);
        let dk = t.lattice.delta_k;
        assert_eq!(commutator(ModeOp::new(A1, 2), ModeOp::dag(B1, -2), &t), s / dk);
        assert_eq!(commutator(ModeOp::new(B1, -2), ModeOp::dag(A1, 2), &t), s.conj_bar() / dk);
        assert_eq!(commutator(ModeOp::new(A1, 2), ModeOp::dag(B1, 2), &t), Bicomplex::ZERO);
        let st = Lattice::new(0.5, 4, true).unwrap();
        let ts = CommutationTable::standard(st).with_sigma([s; 4]);
        assert_eq!(commutator(ModeOp::new(A1, 0), ModeOp::dag(B1, -1), &ts), s / 0.5);
    }

    #[test]
    fn adjoint_consistency_of_table() {
        let s = Bicomplex::new(0.3, 1.0, -0.2, 0.5);
        let t = table().with_sigma([s, s * 2.0, Bicomplex::ZERO, s]);
        let sites: Vec<i32> = t.lattice.indices().collect();
        for x in Species::ALL {
            for y in Species::ALL {
                for &i in &sites {
                    for &j in &sites {
                        for (dx, dy) in [(false, false), (true, true), (false, true), (true, false)] {
                            let o1 = ModeOp { species: x, momentum_index: i, dagger: dx };
                            let o2 = ModeOp { species: y, momentum_index: j, dagger: dy };
                            // [o1, o2]† = [o2†, o1†]
                            let lhs = commutator(o1, o2, &t).conj_bar();
                            let rhs = commutator(o2.adjoint(), o1.adjoint(), &t);
                            assert_eq!(lhs, rhs, "{o1} {o2}");
                            assert_eq!(commutator(o1, o2, &t), -commutator(o2, o1, &t));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn normal_order_examples() {
        let t = table();
        let dk = t.lattice.delta_k;
        let rho1 = t.constant_rho().unwrap()[0];
        let p = OperatorPoly::monomial(Bicomplex::ONE, vec![ModeOp::new(A1, 1), ModeOp::new(B1, 2)]);
        let n = normal_order(&p, &t);
        assert_eq!(n.len(), 1);
        assert_eq!(n.coefficient(&[ModeOp::new(B1, 2), ModeOp::new(A1, 1)]), Bicomplex::ONE);

        let p = OperatorPoly::monomial(Bicomplex::ONE, vec![ModeOp::new(A1, 1), ModeOp::new(B1, 1)]);
        let n = normal_order(&p, &t);
        assert_eq!(n.coefficient(&[ModeOp::new(B1, 1), ModeOp::new(A1, 1)]), Bicomplex::ONE);
        assert_eq!(n.coefficient(&[]), rho1 / dk);

        let ordered = OperatorPoly::monomial(Bicomplex::J, vec![ModeOp::dag(A2, 0), ModeOp::new(B1, 1), ModeOp::new(A1, 1)]);
        assert_eq!(normal_order(&ordered, &t), ordered);
    }

    #[test]
    fn anticommutator_examples() {
        let t = table();
        let dk = t.lattice.delta_k;
        let rho1 = t.constant_rho().unwrap()[0];
        let (a, b) = (ModeOp::new(A1, 1), ModeOp::new(B1, 1));
        let ac = anticommutator(a, b);
        assert_eq!(ac.coefficient(&[a, b]), Bicomplex::ONE);
        assert_eq!(ac.coefficient(&[b, a]), Bicomplex::ONE);
        let n = normal_order(&ac, &t);
        assert_eq!(n.coefficient(&[b, a]), Bicomplex::real(2.0));
        assert_eq!(n.coefficient(&[]), rho1 / dk);
        assert_eq!(anticommutator(a, a).coefficient(&[a, a]), Bicomplex::real(2.0));
    }

    #[test]
    fn vev_examples() {
        let t = table();
        let l1 = Bicomplex::new(0.3, -1.2, 0.8, 0.1);
        let l2 = Bicomplex::new(-0.4, 0.2, 0.5, 0.9);
        let rules = VacuumRules::unconstrained(l1, l2);
        for (k, kp) in [(1, 1), (0, 3), (-2, 2)] {
            assert!((vev(&pair_plus(k, kp), &rules, &t).unwrap() - Bicomplex::J_PLUS * l1).norm() < 1e-15);
            let v = vev(&pair_minus(k, kp), &rules, &t).unwrap();
            assert!((v - Bicomplex::J_MINUS * l2).norm() < 1e-15);
        }
        assert_eq!(vev(&OperatorPoly::scalar(Bicomplex::ONE), &rules, &t).unwrap(), Bicomplex::ONE);

        let c = VacuumRules::constrained(l1, l2);
        assert!(c.satisfies_constraints());
        let p = pair_plus(1, 1);
        let with_cc = p.add(&p.adjoint());
        assert_eq!(vev(&with_cc, &c, &t).unwrap(), Bicomplex::ZERO);
        // Unconstrained: J⁺λ₁ + its conjugate.
        let v = vev(&with_cc, &rules, &t).unwrap();
        let expected = Bicomplex::J_PLUS * l1 + (Bicomplex::J_PLUS * l1).conj_bar();
        assert!((v - expected).norm() < 1e-15);
    }

    #[test]
    fn vev_outside_fragment_is_undetermined() {
        let t = table();
        let rules = VacuumRules::unconstrained(Bicomplex::ONE, Bicomplex::ONE);
        let single = OperatorPoly::monomial(Bicomplex::ONE, vec![ModeOp::new(A1, 0)]);
        assert!(matches!(vev(&single, &rules, &t), Err(Error::UndeterminedByAxioms(_))));
        let wrong_sector = OperatorPoly::monomial(Bicomplex::J_MINUS, vec![ModeOp::new(A1, 0), ModeOp::new(B1, 0)]);
        assert!(matches!(vev(&wrong_sector, &rules, &t), Err(Error::UndeterminedByAxioms(_))));
        // A J⁺ coefficient makes the J⁻ rule irrelevant.
        let fine = OperatorPoly::monomial(Bicomplex::J_PLUS, vec![ModeOp::new(A1, 0), ModeOp::new(B1, 0)]);
        assert!(vev(&fine, &rules, &t).is_ok());
    }

    #[test]
    fn projector_annihilates_constrained_lambda() {
        let c = Bicomplex::new(0.4, -2.0, 1.0, 3.0);
        let l1 = Bicomplex::J_MINUS * c;
        assert_eq!(Bicomplex::J_PLUS * l1, Bicomplex::ZERO);
        let rules = VacuumRules::unconstrained(l1, Bicomplex::ZERO);
        assert_eq!(vev(&pair_plus(0, 0), &rules, &table()).unwrap(), Bicomplex::ZERO);
    }

    #[test]
    fn pair_commutation_examples() {
        let t = table();
        assert!(pair_commutation_check(&t));
        let bad = table().with_sigma([Bicomplex::ONE, Bicomplex::ZERO, Bicomplex::ZERO, Bicomplex::ZERO]);
        assert!(!pair_commutation_check(&bad));
        let abelian = CommutationTable::constant([Bicomplex::ZERO; 4], lattice());
        assert!(pair_commutation_check(&abelian));
    }

    #[test]
    fn lattice_refinement_converges() {
        // Δk² Σ_{k,k'} f(k) g(k') [a₁(k), b₁(k')] → ∫ f g ρ₁ dk over a span of 12.
        let f = |k: f64| (-k * k / 2.0).exp();
        let g = |k: f64| 1.0 / (1.0 + k * k);
        let sum = |dk: f64| {
            let lat = Lattice::new(dk, (6.0 / dk).round() as u32, true).unwrap();
            let t = CommutationTable::standard(lat);
            let mut acc = Bicomplex::ZERO;
            for i in lat.indices() {
                for j in [i - 1, i, i + 1] {
                    let c = commutator(ModeOp::new(A1, i), ModeOp::new(B1, j), &t);
                    acc += c * (dk * dk * f(lat.momentum(i)) * g(lat.momentum(j)));
                }
            }
            acc.x
        };
        let coarse = sum(0.4);
        let fine = sum(0.2);
        assert!(((fine - coarse) / fine).abs() < 0.01);
    }

    fn arb_op() -> impl Strategy<Value = ModeOp> {
        (0usize..4, -3i32..=3, any::<bool>()).prop_map(|(s, k, d)| ModeOp {
            species: Species::ALL[s],
            momentum_index: k,
            dagger: d,
        })
    }

    /// Random polynomials built from pair generators whose constituents have
    /// pairwise disjoint momenta, so the vacuum axioms apply unambiguously.
    fn arb_evaluable() -> impl Strategy<Value = OperatorPoly> {
        let gen = (0usize..4, -3i32..=3, -3i32..=3, -2.0..2.0f64, -2.0..2.0f64);
        proptest::collection::vec((gen.clone(), proptest::option::of(gen), -2.0..2.0f64), 1..5).prop_map(|items| {
            let mut total = OperatorPoly::zero();
            for (g1, g2, s) in items {
                let mk = |(kind, k, kp, re, im): (usize, i32, i32, f64, f64), shift: i32| {
                    let c = Bicomplex::new(re, im, 0.0, 0.0);
                    let (k, kp) = (k + shift, kp + shift);
                    match kind {
                        0 => pair_plus(k, kp).scale(c),
                        1 => pair_minus(k, kp).scale(c),
                        2 => pair_plus(k, kp).adjoint().scale(c),
                        _ => pair_minus(k, kp).adjoint().scale(c),
                    }
                };
                let mut term = mk(g1, 0);
                if let Some(g2) = g2 {
                    term = term.mul(&mk(g2, 20));
                }
                total = total.add(&term).add(&OperatorPoly::scalar(Bicomplex::real(s)));
            }
            total
        })
    }

    proptest! {
        #[test]
        fn jacobi_identity(x in arb_op(), y in arb_op(), z in arb_op()) {
            let t = table();
            let p = |o: ModeOp| OperatorPoly::monomial(Bicomplex::ONE, vec![o]);
            let (px, py, pz) = (p(x), p(y), p(z));
            let j = px.commutator(&py.commutator(&pz))
                .add(&py.commutator(&pz.commutator(&px)))
                .add(&pz.commutator(&px.commutator(&py)));
            prop_assert!(normal_order(&j, &t).is_empty());
            let lit = commutator(x, y, &t);
            let via_poly = normal_order(&px.commutator(&py), &t);
            prop_assert_eq!(via_poly.coefficient(&[]), lit);
        }

        #[test]
        fn normal_order_is_canonical_and_idempotent(ops in proptest::collection::vec(arb_op(), 0..5)) {
            let t = table();
            let p = OperatorPoly::monomial(Bicomplex::new(1.0, 2.0, 0.5, -1.0), ops);
            let n = normal_order(&p, &t);
            prop_assert!(n.is_canonical());
            prop_assert_eq!(normal_order(&n, &t), n);
        }

        #[test]
        fn normal_order_preserves_vev(poly in arb_evaluable(),
                                      l1 in (-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64),
                                      l2 in (-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64)) {
            let lat = Lattice::new(0.5, 30, false).unwrap();
            let t = CommutationTable::constant(table().constant_rho().unwrap(), lat);
            let rules = VacuumRules::unconstrained(
                Bicomplex::new(l1.0, l1.1, l1.2, l1.3),
                Bicomplex::new(l2.0, l2.1, l2.2, l2.3),
            );
            let direct = vev(&poly, &rules, &t).unwrap();
            let ordered = vev(&normal_order(&poly, &t), &rules, &t).unwrap();
            prop_assert!((direct - ordered).norm() <= 1e-12 * (1.0 + direct.norm()));
        }
    }
}
