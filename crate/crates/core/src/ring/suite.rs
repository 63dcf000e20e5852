//! Randomized property suite for the ring, run in exact rational arithmetic.
//!
//! The multiplication is driven by a [`UnitTable`] so that a deliberately
//! broken table can be injected to check that the suite catches it.

use std::time::{Duration, Instant};

use num_complex::Complex;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Bicomplex;

pub type Rational = Ratio<i64>;
pub type Q = Bicomplex<Rational>;

/// Product of two basis units: `e_a e_b = sign · e_unit`, units indexed
/// `0 = 1, 1 = i, 2 = j, 3 = ij`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnitProduct {
    pub sign: i8,
    pub unit: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitTable {
    pub entries: [[UnitProduct; 4]; 4],
}

impl UnitTable {
    pub fn standard() -> Self {
        let p = |sign, unit| UnitProduct { sign, unit };
        Self {
            entries: [
                [p(1, 0), p(1, 1), p(1, 2), p(1, 3)],
                [p(1, 1), p(-1, 0), p(1, 3), p(-1, 2)],
                [p(1, 2), p(1, 3), p(1, 0), p(1, 1)],
                [p(1, 3), p(-1, 2), p(1, 1), p(-1, 0)],
            ],
        }
    }

    /// The standard table with `j² = -1`, which is not associative together
    /// with the remaining entries.
    pub fn with_bad_j_square() -> Self {
        let mut t = Self::standard();
        t.entries[2][2] = UnitProduct { sign: -1, unit: 0 };
        t
    }

    pub fn mul(&self, a: &Q, b: &Q) -> Q {
        let ac = [a.x, a.y, a.u, a.v];
        let bc = [b.x, b.y, b.u, b.v];
        let mut out = [Rational::from_integer(0); 4];
        for (ia, ca) in ac.iter().enumerate() {
            for (ib, cb) in bc.iter().enumerate() {
                let e = self.entries[ia][ib];
                let term = *ca * *cb;
                if e.sign > 0 {
                    out[e.unit] += term;
                } else {
                    out[e.unit] -= term;
                }
            }
        }
        Bicomplex::new(out[0], out[1], out[2], out[3])
    }
}

#[derive(Clone, Debug)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub properties: Vec<PropertyOutcome>,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(|p| p.failures == 0)
    }

    pub fn first_failure(&self) -> Option<&PropertyOutcome> {
        self.properties.iter().find(|p| p.failures > 0)
    }

    pub fn total_cases(&self) -> usize {
        self.properties.iter().map(|p| p.cases).sum()
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=9))
}

pub fn random_element(rng: &mut ChaCha8Rng) -> Q {
    Bicomplex::new(
        random_rational(rng),
        random_rational(rng),
        random_rational(rng),
        random_rational(rng),
    )
}

struct Tally {
    outcomes: Vec<PropertyOutcome>,
}

impl Tally {
    fn record(&mut self, name: &'static str, ok: bool) {
        let slot = match self.outcomes.iter_mut().find(|o| o.name == name) {
            Some(s) => s,
            None => {
                self.outcomes.push(PropertyOutcome {
                    name,
                    cases: 0,
                    failures: 0,
                });
                self.outcomes.last_mut().unwrap()
            }
        };
        slot.cases += 1;
        if !ok {
            slot.failures += 1;
        }
    }
}

/// Runs `cases` random triples through every ring property using `table`.
pub fn run_suite(table: &UnitTable, cases: usize, seed: u64) -> SuiteReport {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally { outcomes: Vec::new() };
    let mul = |a: &Q, b: &Q| table.mul(a, b);

    let (jp, jm, one, j) = (Q::j_plus(), Q::j_minus(), Q::one(), Q::j());
    tally.record("idempotent J+J+ = J+", mul(&jp, &jp) == jp);
    tally.record("idempotent J-J- = J-", mul(&jm, &jm) == jm);
    tally.record("orthogonality J+J- = 0", mul(&jp, &jm) == Q::zero());
    tally.record("completeness J+ + J- = 1", jp + jm == one);
    tally.record("difference J+ - J- = j", jp - jm == j);
    tally.record("conjugate J+ = J-", jp.conj_bar() == jm);

    for _ in 0..cases {
        let a = random_element(&mut rng);
        let b = random_element(&mut rng);
        let c = random_element(&mut rng);
        tally.record(
            "associativity",
            mul(&mul(&a, &b), &c) == mul(&a, &mul(&b, &c)),
        );
        tally.record("commutativity", mul(&a, &b) == mul(&b, &a));
        tally.record(
            "distributivity",
            mul(&a, &(b + c)) == mul(&a, &b) + mul(&a, &c),
        );
        tally.record("unit", mul(&one, &a) == a);
        tally.record(
            "conjugation homomorphism",
            mul(&a, &b).conj_bar() == mul(&a.conj_bar(), &b.conj_bar()),
        );
        tally.record("conjugation involution", a.conj_bar().conj_bar() == a);
        let m = mul(&a, &a.conj_bar());
        tally.record(
            "modulus has no i or j part",
            m.y == Rational::from_integer(0) && m.u == Rational::from_integer(0),
        );
        let (ap, am) = a.idempotent_decompose();
        let (bp, bm) = b.idempotent_decompose();
        let (cp, cm) = mul(&a, &b).idempotent_decompose();
        tally.record(
            "idempotent decomposition is multiplicative",
            cp == ap * bp && cm == am * bm,
        );
        let back = mul(&jp, &Bicomplex::from_complex(ap)) + mul(&jm, &Bicomplex::from_complex(am));
        tally.record("idempotent recomposition", back == a);
        let (cbp, cbm) = a.conj_bar().idempotent_decompose();
        tally.record(
            "conjugation swaps sectors",
            cbp == Complex::new(am.re, -am.im) && cbm == Complex::new(ap.re, -ap.im),
        );
    }
    SuiteReport {
        properties: tally.outcomes,
        elapsed: start.elapsed(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_multiplication_matches_operator() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let t = UnitTable::standard();
        for _ in 0..200 {
            let a = random_element(&mut rng);
            let b = random_element(&mut rng);
            assert_eq!(t.mul(&a, &b), a * b);
        }
    }

    #[test]
    fn standard_table_passes() {
        let r = run_suite(&UnitTable::standard(), 500, 11);
        assert!(r.passed(), "{:?}", r.first_failure());
        assert_eq!(r.properties.len(), 16);
    }

    #[test]
    fn bad_table_is_caught() {
        let r = run_suite(&UnitTable::with_bad_j_square(), 50, 11);
        assert!(!r.passed());
        assert_eq!(r.first_failure().unwrap().name, "idempotent J+J+ = J+");
    }
}
