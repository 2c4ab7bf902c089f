//! Quantum shuffle algebras of diagonal type: exact bases, coinvariants and
//! (co)Hochschild and Koszul homology, in generic and root-of-unity regimes.

pub mod arith;
pub mod bimodule;
pub mod braid;
pub mod cartan;
pub mod homology;

pub use arith::{Cyclotomic, Field, QField, RatFunc, Regime};
pub use bimodule::BasisStore;
pub use braid::{Braiding, Content, LinComb, Letter, Word};
pub use cartan::{CartanDatum, RootSystem, WeightSpec};

/// Scalars for generic `q`: rational functions in `q` over `Q`.
pub type Generic = RatFunc;
/// Scalars at a primitive odd root of unity: `Q[q]/Phi_l(q)`.
pub type AtRootOfUnity = Cyclotomic;
/// Rational numbers, used for `q`-free linear algebra.
pub type Rational = num_rational::BigRational;

pub type GenericStore = BasisStore<Generic>;
pub type RootOfUnityStore = BasisStore<AtRootOfUnity>;
