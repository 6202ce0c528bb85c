//! Exact linear algebra over `Q`, `F_p` and `Z`.

pub mod matrix;
pub mod scalar;
pub mod smith;
pub mod solve;
pub mod subobject;

pub use matrix::ConcreteMatrix;
pub use scalar::{int, parse_scalar, Scalar, ScalarRing};
pub use smith::{smith_normal_form, SmithForm};
pub use solve::{echelon_form, kernel_basis, rank, solve, LinearSolver, Solution};
pub use subobject::{Ambient, GroupHom, PresentedGroup, QuotientCoords, QuotientInvariants, SubobjectData};
