//! Exact symbolic engine for a one-parameter family of Jordanian Drinfeld
//! twists on the solvable Lie algebra `[D, P] = -P`, together with the
//! machinery needed to machine-check the algebraic identities the family
//! satisfies: 2-cocycle and counitality conditions, twisted Hopf structure,
//! kappa-Minkowski realizations, star products, R-matrices, and the binomial
//! identity behind the cocycle proof.
//!
//! All arithmetic is exact (Gaussian rationals, sparse polynomials, truncated
//! formal series); every verification residual is compared against zero with
//! no tolerance.
//!
//! ```
//! use jtwist_core::{hopfcheck, twists, GeneratorContext, UMode};
//!
//! let ctx = GeneratorContext::standard();
//! let twist_inv = twists::fgz_inv(&ctx, &UMode::Symbolic, 3);
//! let residual = hopfcheck::cocycle_residual(&twist_inv).unwrap();
//! assert!(residual.is_zero());
//! ```

pub mod binomid;
pub mod error;
pub mod exactmath;
pub mod hopfcheck;
pub mod pbw;
pub mod report;
pub mod starprod;
pub mod tensorcalc;
pub mod twists;
pub mod weylreal;

pub use error::{Error, Result};
pub use exactmath::{scalar, scalar_ctx, GaussianRational, Poly, PolyOp, Scalar, VarContext};
pub use hopfcheck::HopfGen;
pub use pbw::{AlgElem, GeneratorContext, PbwMono};
pub use report::Report;
pub use starprod::PlaneWave;
pub use tensorcalc::{coproduct0, log_onebody, LegMap, TensorElem, TruncationOrder};
pub use twists::{TwistFamily, UMode};
pub use weylreal::{PolyFunction, SpaceConfig, WeylElem};
