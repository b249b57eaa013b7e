//! Homogeneous forms in `x, y, z`, projective points and lines, exact linear
//! algebra, and the incidence predicates built on top of them.

pub mod geom;
pub mod linalg;
mod modular;
pub mod poly;

pub use geom::{
    collinear, conic_is_smooth, conic_through, evaluation_matrix, evaluation_matrix_raw,
    imposes_independent_conditions, line_meet, max_collinear, Conic, ProjectiveLine, ProjectivePoint,
};
pub use linalg::{det3, Matrix};
pub use poly::{dim_s, monomials, HomogeneousPolynomial, Monomial};
