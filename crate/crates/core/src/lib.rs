//! Exact computation of the Milnor fiber monodromy of complex projective line
//! arrangements that have only double and triple points.
//!
//! The eigenvalue-`epsilon` part of `H^1(F)` is computed as the superabundance
//! of the triple point set with respect to forms of degree `2m - 3`. All
//! arithmetic is exact over the sixth cyclotomic field `Q(w)`.

pub mod arrangement;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod exactfield;
pub mod monodromy;
pub mod pencil;
pub mod polygeom;

pub use arrangement::{Arrangement, IntersectionLattice, TripleOnlyCertificate};
pub use error::{Error, Result};
pub use exactfield::{FieldElement, Rational};
pub use monodromy::{MonodromyReport, TheoremBranch, TheoremPrediction};
pub use pencil::{PencilStructure, SubarrangementProfile};
pub use polygeom::{Conic, HomogeneousPolynomial, Matrix, Monomial, ProjectiveLine, ProjectivePoint};
