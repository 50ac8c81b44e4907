//! Ideals in graded polynomial rings: reduced Groebner bases, certified
//! normal forms, membership, kernels of ring maps and colon ideals, plus an
//! independent linear-algebra membership oracle.

mod basis;
mod engine;
mod maps;
mod oracle;
mod order;
mod quotient;

pub use basis::{
    global_degree_cap, groebner_basis, groebner_basis_with, ideal_equal, is_member, normal_form, set_global_degree_cap,
    Certificate, GbOptions, GroebnerBasis, Ideal, InclusionReport, MembershipReport,
};
pub use maps::{kernel_of_map, MapGraph};
pub use oracle::{member_linear_oracle, LinearSpan};
pub use order::MonomialOrder;
pub use quotient::{divide_in_quotient, ideal_quotient, is_nonzerodivisor};

use crate::poly::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroebnerError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("generator {index} is not homogeneous")]
    NotHomogeneous { index: usize },
    #[error("input polynomial is not homogeneous")]
    InhomogeneousInput,
    #[error("degree cap {cap} exceeded")]
    DegreeCapExceeded { cap: u32 },
    #[error("basis is valid through degree {valid} but degree {needed} was requested")]
    TruncatedBasis { valid: u32, needed: u32 },
    #[error("not divisible: {0}")]
    NotDivisible(String),
}
