//! Group cohomology engines for explicit finite groups.
//!
//! The module is organized around a single concrete representation — the
//! finite multiplication table ([`group::GroupTable`]) — on top of which two
//! independent engines compute low-degree cohomology with trivial
//! coefficients:
//!
//! * [`brute`] — a streamed linear-algebra engine: degree one directly from
//!   the abelianization, degree two through the coinduced-module shift that
//!   turns 2-cocycles into crossed homomorphisms determined by their values
//!   on a generating set.
//! * [`pc`] — a polycyclic engine: a consistent power-conjugate presentation
//!   is read off a chief series, and central extensions by `Z/p` are
//!   parameterized by relation tails subject to consistency, modulo tail
//!   changes induced by redefining the generators.
//!
//! [`maps`] implements the connecting machinery between cohomology of a
//! group, a central subgroup and the quotient (restriction, inflation,
//! transgression, the commutator pairing θ), plus the two subspace
//! operations used to pass from a Sylow subgroup to the whole group:
//! averaging over a coprime automorphism group and the double-coset
//! stability conditions.
//!
//! [`natural`] treats non-trivial coefficients: the module is the abelian
//! p-group on which its automorphism group acts, and both degrees are
//! computed over `Z/p^e` by Howell-form linear algebra.
//!
//! [`cochains`] constructs the standard explicit cochains on the Sylow
//! subgroup (digit cochains `w_s`, their coboundaries `v_s`, the product
//! cocycles `u_t`) and the distinguished invariant classes on the named
//! coordinate groups.

pub mod brute;
pub mod cochains;
mod fp8;
pub mod group;
pub mod maps;
pub mod natural;
pub mod pc;

pub use brute::{h1_dim, h2_brute, h2_brute_naive, is_coboundary, verify_cocycle, CohomologySpace};
pub use cochains::{carry_cocycle, cyclic_class_sum, inflation_decomposition_check, SampleMode};
pub use group::{GroupTable, MatrixGroup};
pub use maps::{
    hs_exactness, invariant_subspace, pc_invariant_subspace, stable_subspace, ClassSpace,
    HsReport, InvariantClasses, StableClasses,
};
pub use natural::{scalar_annihilator, CohomologyInvariants, NaturalAction};
pub use pc::{h2_pc, pc_from_chief_series, PcCohomology, PcGroup, PcPresentation};
