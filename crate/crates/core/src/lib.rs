//! Bigraded integer cohomology of multigraphs whose graded Euler
//! characteristic is a specialization of the Tutte polynomial.

pub mod bipoly;
pub mod coeff;
pub mod complex;
pub mod error;
pub mod graph;
pub mod homology;
pub mod matrix;
pub mod theorems;

pub use bipoly::{
    chromatic_state_sum, recover_tutte, tutte_deletion_contraction, tutte_hat, tutte_state_sum, BiPoly,
};
pub use coeff::{Bidegree, CoefficientSystem};
pub use complex::{build_complex, build_loop_tensor_complex, ChainBasisElement, ChainComplex};
pub use error::{Error, Result};
pub use graph::{generate_family, EdgeKind, EdgeSubset, Family, Girth, Graph};
pub use homology::{homology, smith_normal_form, BigradedHomology, HomologyGroup, SmithForm};
pub use matrix::SparseIntMatrix;
pub use theorems::{CheckKind, CheckReport, Verdict};
