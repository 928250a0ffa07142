//! Cohomology rings H*(M; Z_p) of Seifert fibered 3-manifolds, computed two
//! independent ways — from an explicit Δ-simplicial decomposition with
//! Alexander–Whitney cup products, and from closed-form tables — and
//! cross-verified.

pub mod cellular;
pub mod closedform;
pub mod cup;
pub mod invariants;
pub mod linalg;
pub mod report;
pub mod simplicial;
pub mod transfer;
pub mod words;
