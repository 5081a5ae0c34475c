//! Determinants, inverses and linear solves for cyclic heptadiagonal matrices.
//!
//! The exact backend ([`exact`]) never breaks down: zero pivots and zero
//! band divisors are replaced by an indeterminate `t`, and results are
//! evaluated at `t = 0`. The floating backend ([`floating`]) is the fast
//! path for well-conditioned inputs. [`oracle`] is an independent dense
//! reference used throughout the tests.

pub mod dense;
pub mod error;
pub mod exact;
pub mod factor;
pub mod floating;
pub mod hepta;
pub mod indexed;
pub mod inverse;
pub mod io;
pub mod oracle;
pub mod random;
pub mod scalar;
pub mod solve;

pub use dense::DenseMatrix;
pub use error::{HeptaError, Result};
pub use factor::{factorize, materialize_lu, DetResult, FactorData, FactorOptions};
pub use hepta::{Band, CyclicHeptaMatrix};
pub use inverse::{ColumnStrategy, InverseResult};
pub use random::{random_instance, Profile};
pub use scalar::{Field, Float, Poly, RatFun, Rational};
pub use solve::{Backend, SolveMethod, SolveReport};
