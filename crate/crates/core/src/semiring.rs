//! Semirings over which every multiply in this crate is evaluated.
//!
//! Kernels only ever combine values through [`Semiring::add`] and
//! [`Semiring::multiply`]; they never assume `multiply(zero, x) == zero`, so
//! non-numeric semirings such as (min, select2nd) are safe to use.

use std::fmt::Debug;
use std::marker::PhantomData;
use std::ops::{Add, Mul};

/// Values that can live inside a sparse matrix.
pub trait Scalar: Copy + Send + Sync + Debug + PartialEq + 'static {}

impl<T: Copy + Send + Sync + Debug + PartialEq + 'static> Scalar for T {}

/// Scalars that have a fixed 8-byte wire encoding, required for anything
/// that crosses the process-grid transport.
pub trait WireScalar: Scalar {
    fn to_wire(self) -> u64;
    fn from_wire(bits: u64) -> Self;
}

impl WireScalar for f64 {
    fn to_wire(self) -> u64 {
        self.to_bits()
    }
    fn from_wire(bits: u64) -> Self {
        f64::from_bits(bits)
    }
}

impl WireScalar for i64 {
    fn to_wire(self) -> u64 {
        self as u64
    }
    fn from_wire(bits: u64) -> Self {
        bits as i64
    }
}

impl WireScalar for u64 {
    fn to_wire(self) -> u64 {
        self
    }
    fn from_wire(bits: u64) -> Self {
        bits
    }
}

/// A (add, multiply) pair with identities `zero` and `one`.
///
/// `add` must be associative and commutative with identity `zero`.
pub trait Semiring: Clone + Send + Sync + 'static {
    type Scalar: Scalar;

    fn zero(&self) -> Self::Scalar;
    fn one(&self) -> Self::Scalar;
    fn add(&self, a: Self::Scalar, b: Self::Scalar) -> Self::Scalar;
    fn multiply(&self, a: Self::Scalar, b: Self::Scalar) -> Self::Scalar;
}

/// Scalars with an additive identity and a multiplicative identity.
pub trait Numeric: Scalar + Add<Output = Self> + Mul<Output = Self> {
    const ZERO: Self;
    const ONE: Self;
}

impl Numeric for f64 {
    const ZERO: Self = 0.0;
    const ONE: Self = 1.0;
}

impl Numeric for i64 {
    const ZERO: Self = 0;
    const ONE: Self = 1;
}

impl Numeric for u64 {
    const ZERO: Self = 0;
    const ONE: Self = 1;
}

/// The ordinary (+, ×) semiring.
pub struct PlusTimes<T>(PhantomData<fn() -> T>);

impl<T> PlusTimes<T> {
    pub const fn new() -> Self {
        PlusTimes(PhantomData)
    }
}

impl<T> Default for PlusTimes<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T> Clone for PlusTimes<T> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<T> Copy for PlusTimes<T> {}

impl<T> Debug for PlusTimes<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("PlusTimes")
    }
}

impl<T: Numeric> Semiring for PlusTimes<T> {
    type Scalar = T;

    fn zero(&self) -> T {
        T::ZERO
    }
    fn one(&self) -> T {
        T::ONE
    }
    #[inline]
    fn add(&self, a: T, b: T) -> T {
        a + b
    }
    #[inline]
    fn multiply(&self, a: T, b: T) -> T {
        a * b
    }
}

/// Ordered scalars with a greatest element, the identity of `min`.
pub trait Bounded: Scalar + PartialOrd {
    fn max_value() -> Self;
}

impl Bounded for f64 {
    fn max_value() -> Self {
        f64::INFINITY
    }
}

impl Bounded for i64 {
    fn max_value() -> Self {
        i64::MAX
    }
}

impl Bounded for u64 {
    fn max_value() -> Self {
        u64::MAX
    }
}

impl Bounded for usize {
    fn max_value() -> Self {
        usize::MAX
    }
}

/// (min, select2nd): `add` keeps the smaller operand, `multiply` returns its
/// second operand. Multiplying a matrix by a vector under this semiring
/// yields, per row, the smallest vector value among that row's neighbors.
///
/// `one` is only a left identity; select2nd has no right identity.
pub struct MinSelect2nd<T>(PhantomData<fn() -> T>);

impl<T> MinSelect2nd<T> {
    pub const fn new() -> Self {
        MinSelect2nd(PhantomData)
    }
}

impl<T> Default for MinSelect2nd<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T> Clone for MinSelect2nd<T> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<T> Copy for MinSelect2nd<T> {}

impl<T> Debug for MinSelect2nd<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("MinSelect2nd")
    }
}

impl<T: Bounded> Semiring for MinSelect2nd<T> {
    type Scalar = T;

    fn zero(&self) -> T {
        T::max_value()
    }
    fn one(&self) -> T {
        T::max_value()
    }
    #[inline]
    fn add(&self, a: T, b: T) -> T {
        if b < a {
            b
        } else {
            a
        }
    }
    #[inline]
    fn multiply(&self, _a: T, b: T) -> T {
        b
    }
}
