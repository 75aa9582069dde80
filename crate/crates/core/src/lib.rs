//! Canonical ideals of Harbater-Katz-Gabber curve towers in odd characteristic.
//!
//! A tower is given by its Artin-Schreier type steps ([`TowerSpec`]). From it
//! the crate derives the Weierstrass semigroup at the ramified point, the
//! monomial basis of holomorphic differentials ([`Lattice`]), and a quadratic
//! generating set of the canonical ideal ([`relations::assemble_j`]). The
//! [`oracle`] module certifies a generating set by exact linear algebra over
//! F_p, independently of how it was built.
//!
//! ```
//! use hkg_core::{relations, Lattice, Tower, TowerSpec};
//!
//! let tower = Tower::new(TowerSpec::artin_schreier(7, 1, 4))?;
//! assert_eq!(tower.genus(), 9);
//! let lattice = Lattice::new(tower)?;
//! let ideal = relations::assemble_j(&lattice, relations::G0Mode::AllPairs)?;
//! assert_eq!(ideal.len(), 26);
//! # Ok::<(), hkg_core::Error>(())
//! ```

pub mod cli;
pub mod error;
pub mod field;
pub mod function_field;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod oracle;
pub mod order;
pub mod quad;
pub mod relations;
pub mod tower;

pub use error::{Error, Result, Rule};
pub use field::{PrimeField, Scalar};
pub use lattice::{ExpTuple, Lattice, NormClass};
pub use quad::{QuadForm, QuadMonomial};
pub use tower::{PetriReport, Tower, TowerSpec, TowerStep};
