//! The commutative ring of bicomplex numbers with units `1, i, j, ij`.
//!
//! `i² = -1`, `j² = 1`, `(ij)² = -1` and all units commute. The idempotents
//! `J± = (1 ± j)/2` split the ring into two copies of the complex numbers,
//! which is how inverses, exponentials and square roots are computed.

pub mod suite;

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::{Complex, Complex64};
use num_traits::{Num, One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `x + i y + j u + ij v`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bicomplex<T = f64> {
    pub x: T,
    pub y: T,
    pub u: T,
    pub v: T,
}

/// The two idempotent projectors of the ring.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IdempotentPair<T = f64> {
    pub plus: Bicomplex<T>,
    pub minus: Bicomplex<T>,
}

impl<T> Bicomplex<T> {
    pub const fn new(x: T, y: T, u: T, v: T) -> Self {
        Self { x, y, u, v }
    }
}

impl<T: Num + Copy> Bicomplex<T> {
    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::zero())
    }

    pub fn one() -> Self {
        Self::new(T::one(), T::zero(), T::zero(), T::zero())
    }

    pub fn i() -> Self {
        Self::new(T::zero(), T::one(), T::zero(), T::zero())
    }

    pub fn j() -> Self {
        Self::new(T::zero(), T::zero(), T::one(), T::zero())
    }

    pub fn ij() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::one())
    }

    pub fn real(x: T) -> Self {
        Self::new(x, T::zero(), T::zero(), T::zero())
    }

    /// Embeds a standard complex number `re + i im`.
    pub fn from_complex(c: Complex<T>) -> Self {
        Self::new(c.re, c.im, T::zero(), T::zero())
    }

    /// `J⁺ = (1 + j)/2`.
    pub fn j_plus() -> Self {
        let half = T::one() / (T::one() + T::one());
        Self::new(half, T::zero(), half, T::zero())
    }

    /// `J⁻ = (1 - j)/2`.
    pub fn j_minus() -> Self {
        let half = T::one() / (T::one() + T::one());
        Self::new(half, T::zero(), T::zero() - half, T::zero())
    }

    pub fn idempotents() -> IdempotentPair<T> {
        IdempotentPair {
            plus: Self::j_plus(),
            minus: Self::j_minus(),
        }
    }

    /// `x - i y - j u + ij v`: flips `i` and `j`, keeps `ij`.
    pub fn conj_bar(self) -> Self {
        Self::new(self.x, T::zero() - self.y, T::zero() - self.u, self.v)
    }

    /// `ξ ξ̄ = x² + y² - u² - v² + 2 ij (x v - y u)`.
    pub fn modulus(self) -> Self {
        self * self.conj_bar()
    }

    pub fn scale(self, s: T) -> Self {
        Self::new(self.x * s, self.y * s, self.u * s, self.v * s)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.u.is_zero() && self.v.is_zero()
    }

    /// `(ξ⁺, ξ⁻)` with `ξ = J⁺ξ⁺ + J⁻ξ⁻`.
    pub fn idempotent_decompose(self) -> (Complex<T>, Complex<T>) {
        (
            Complex::new(self.x + self.u, self.y + self.v),
            Complex::new(self.x - self.u, self.y - self.v),
        )
    }

    /// Inverse of [`Bicomplex::idempotent_decompose`].
    pub fn from_idempotent(plus: Complex<T>, minus: Complex<T>) -> Self {
        let two = T::one() + T::one();
        Self::new(
            (plus.re + minus.re) / two,
            (plus.im + minus.im) / two,
            (plus.re - minus.re) / two,
            (plus.im - minus.im) / two,
        )
    }

    /// Projection onto the `J⁺` sector, i.e. `J⁺ · self`.
    pub fn plus_part(self) -> Self {
        let (p, _) = self.idempotent_decompose();
        Self::from_idempotent(p, Complex::new(T::zero(), T::zero()))
    }

    /// Projection onto the `J⁻` sector, i.e. `J⁻ · self`.
    pub fn minus_part(self) -> Self {
        let (_, m) = self.idempotent_decompose();
        Self::from_idempotent(Complex::new(T::zero(), T::zero()), m)
    }
}

impl Bicomplex<f64> {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const IJ: Self = Self::new(0.0, 0.0, 0.0, 1.0);
    pub const J_PLUS: Self = Self::new(0.5, 0.0, 0.5, 0.0);
    pub const J_MINUS: Self = Self::new(0.5, 0.0, -0.5, 0.0);

    /// Euclidean norm of the four components.
    pub fn norm(self) -> f64 {
        (self.x * self.x + self.y * self.y + self.u * self.u + self.v * self.v).sqrt()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.u.is_finite() && self.v.is_finite()
    }

    /// Multiplicative inverse, defined when both idempotent components are nonzero.
    pub fn inverse(self) -> Result<Self> {
        let (p, m) = self.idempotent_decompose();
        if p.norm_sqr() == 0.0 || m.norm_sqr() == 0.0 {
            return Err(Error::NotInvertible);
        }
        Ok(Self::from_idempotent(p.inv(), m.inv()))
    }

    /// Ring exponential, computed sector by sector.
    pub fn exp(self) -> Self {
        let (p, m) = self.idempotent_decompose();
        Self::from_idempotent(p.exp(), m.exp())
    }

    /// `J⁺ c + J⁻ c` written through its sectors; shorthand for `J⁺ c`.
    pub fn plus_times(c: Complex64) -> Self {
        Self::from_idempotent(c, Complex64::new(0.0, 0.0))
    }

    /// Shorthand for `J⁻ c`.
    pub fn minus_times(c: Complex64) -> Self {
        Self::from_idempotent(Complex64::new(0.0, 0.0), c)
    }

    /// Exactly-rounded sum of a collection of ring elements, independent of
    /// the order of the terms.
    pub fn exact_sum<I: IntoIterator<Item = Self>>(items: I) -> Self {
        let mut acc = [
            crate::numerics::ExactSum::default(),
            crate::numerics::ExactSum::default(),
            crate::numerics::ExactSum::default(),
            crate::numerics::ExactSum::default(),
        ];
        for b in items {
            acc[0].add(b.x);
            acc[1].add(b.y);
            acc[2].add(b.u);
            acc[3].add(b.v);
        }
        Self::new(acc[0].total(), acc[1].total(), acc[2].total(), acc[3].total())
    }
}

/// `e^{iα} e^{jβ} = (cos α cosh β, sin α cosh β, cos α sinh β, sin α sinh β)`.
pub fn exp_bicomplex(alpha: f64, beta: f64) -> Bicomplex {
    let (s, c) = alpha.sin_cos();
    let (ch, sh) = (beta.cosh(), beta.sinh());
    Bicomplex::new(c * ch, s * ch, c * sh, s * sh)
}

/// `e^{jχ} = e^{χ} J⁺ + e^{-χ} J⁻`.
pub fn exp_hyperbolic_split(chi: f64) -> Bicomplex {
    Bicomplex::J_PLUS.scale(chi.exp()) + Bicomplex::J_MINUS.scale((-chi).exp())
}

impl<T: Num + Copy> Add for Bicomplex<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.u + o.u, self.v + o.v)
    }
}

impl<T: Num + Copy> Sub for Bicomplex<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.u - o.u, self.v - o.v)
    }
}

impl<T: Num + Copy> Neg for Bicomplex<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::zero() - self
    }
}

impl<T: Num + Copy> Mul for Bicomplex<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (a, b) = (self, o);
        Self::new(
            (a.x * b.x + a.u * b.u) - (a.y * b.y + a.v * b.v),
            (a.x * b.y + a.u * b.v) + (a.y * b.x + a.v * b.u),
            (a.x * b.u + a.u * b.x) - (a.y * b.v + a.v * b.y),
            (a.x * b.v + a.u * b.y) + (a.y * b.u + a.v * b.x),
        )
    }
}

impl Mul<f64> for Bicomplex<f64> {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        self.scale(s)
    }
}

impl Mul<Complex64> for Bicomplex<f64> {
    type Output = Self;
    fn mul(self, c: Complex64) -> Self {
        self * Bicomplex::from_complex(c)
    }
}

impl Div<f64> for Bicomplex<f64> {
    type Output = Self;
    fn div(self, s: f64) -> Self {
        Self::new(self.x / s, self.y / s, self.u / s, self.v / s)
    }
}

impl<T: Num + Copy> AddAssign for Bicomplex<T> {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<T: Num + Copy> SubAssign for Bicomplex<T> {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl<T: Num + Copy> MulAssign for Bicomplex<T> {
    fn mul_assign(&mut self, o: Self) {
        *self = *self * o;
    }
}

impl<T: Num + Copy> Zero for Bicomplex<T> {
    fn zero() -> Self {
        Bicomplex::zero()
    }
    fn is_zero(&self) -> bool {
        Bicomplex::is_zero(self)
    }
}

impl<T: Num + Copy> One for Bicomplex<T> {
    fn one() -> Self {
        Bicomplex::one()
    }
}

impl From<Complex64> for Bicomplex<f64> {
    fn from(c: Complex64) -> Self {
        Bicomplex::from_complex(c)
    }
}

impl From<f64> for Bicomplex<f64> {
    fn from(x: f64) -> Self {
        Bicomplex::real(x)
    }
}

impl fmt::Display for Bicomplex<f64> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i + {}j + {}ij", self.x, self.y, self.u, self.v)
    }
}
