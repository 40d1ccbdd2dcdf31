//! Homogeneous forms and numerical subspaces of forms.
//!
//! Coefficient vectors always follow the graded-lexicographic monomial order
//! returned by [`monomials`], so vectors from different modules can be
//! compared directly.

mod form;
mod subspace;

pub use form::{binomial, monomials, HomogeneousForm, Monomial, MonomialBasis};
pub use subspace::{
    containment_defect, intersection, multiplication_map, nullspace, row_space, subspace_distance, FormSubspace,
    SvdSplit, DEFAULT_REL_TOL, MIN_CERTIFIED_GAP,
};
