//! Exact scalars and exact sparse linear algebra.
//!
//! Three concrete fields are provided:
//!
//! * [`RatFunc`]: rational functions in `q` over the rationals (the generic regime),
//! * [`Cyclotomic`]: `Q[q]/Phi_l(q)` for odd `l >= 3` (the root-of-unity regime),
//! * [`BigRational`](num_rational::BigRational): plain rationals, used by oracles and tests.
//!
//! Everything above this module is written against the [`Field`] and [`QField`]
//! traits, so the same code path runs in both regimes.

mod cyclotomic;
mod matrix;
mod poly;
mod rational;
mod ratfunc;

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

pub use cyclotomic::{cyclotomic_polynomial, Cyclotomic};
pub use matrix::{
    canonical_sparse, dense_inverse, sparse_axpby, CoordinateMap, Echelon, RankKernelImage,
    SparseMatrix, SparseVec,
};
pub use poly::ZPoly;
pub use ratfunc::RatFunc;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("root of unity order must be odd and at least 3, got {0}")]
    BadOrder(u32),
    #[error("scalar regime mismatch: {0}")]
    RegimeMismatch(String),
    #[error("cannot parse scalar {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// The two scalar regimes in which `q` can live.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Regime {
    /// `q` transcendental over the rationals.
    Generic,
    /// `q` a primitive `l`-th root of unity.
    RootOfUnity { l: u32 },
}

impl Regime {
    pub fn root_of_unity(l: u32) -> Result<Self, ArithError> {
        if l < 3 || l % 2 == 0 {
            return Err(ArithError::BadOrder(l));
        }
        Ok(Regime::RootOfUnity { l })
    }

    pub fn order(&self) -> Option<u32> {
        match self {
            Regime::Generic => None,
            Regime::RootOfUnity { l } => Some(*l),
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regime::Generic => write!(f, "generic"),
            Regime::RootOfUnity { l } => write!(f, "root_of_unity(l={l})"),
        }
    }
}

/// An exact field of characteristic zero.
///
/// Values are always kept in a canonical form, so `==` is mathematical equality.
pub trait Field:
    Clone
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    /// Multiplicative inverse. Panics on zero: dividing by zero is a caller bug.
    fn inv(&self) -> Self;

    fn from_i64(n: i64) -> Self;

    /// Parses the canonical string form produced by `Display`.
    fn parse(s: &str) -> Result<Self, ArithError>;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    /// Rescales a vector by a nonzero scalar into a "small" representative.
    ///
    /// Fraction-free elimination calls this after every row update; the span of
    /// the vector is unchanged. The default makes the first entry equal to one.
    fn normalize_vector(entries: &mut [Self]) {
        if let Some(first) = entries.iter().find(|x| !x.is_zero()) {
            if first.is_one() {
                return;
            }
            let inv = first.inv();
            for e in entries.iter_mut() {
                if !e.is_zero() {
                    *e = e.clone() * &inv;
                }
            }
        }
    }
}

/// A field containing a distinguished element `q`.
pub trait QField: Field {
    /// `q^k` in canonical form for the given regime.
    fn qpow(regime: Regime, k: i64) -> Result<Self, ArithError>;

    /// Regime this value is bound to, if the value pins one down.
    fn regime_hint(&self) -> Option<Regime>;
}

/// Cached powers of `q` for one regime.
#[derive(Debug, Clone)]
pub struct QPowers<F> {
    regime: Regime,
    offset: i64,
    table: Vec<F>,
}

impl<F: QField> QPowers<F> {
    pub fn new(regime: Regime, radius: i64) -> Result<Self, ArithError> {
        let table = (-radius..=radius)
            .map(|k| F::qpow(regime, k))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(QPowers {
            regime,
            offset: radius,
            table,
        })
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn get(&self, k: i64) -> F {
        let idx = k + self.offset;
        if idx >= 0 && (idx as usize) < self.table.len() {
            self.table[idx as usize].clone()
        } else {
            F::qpow(self.regime, k).expect("regime validated at construction")
        }
    }
}

pub(crate) fn parse_error(input: &str, reason: impl Into<String>) -> ArithError {
    ArithError::Parse {
        input: input.to_string(),
        reason: reason.into(),
    }
}
