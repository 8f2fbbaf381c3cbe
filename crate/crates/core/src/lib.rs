//! Exact computation in the quantum K-theory ring QK(Gr(m, n)) of a
//! Grassmannian.
//!
//! Products of Schubert structure sheaves are computed by expressing one
//! factor as a polynomial in the special classes `O_1, ..., O_k` (Giambelli)
//! and letting it act through the quantum K-theoretic Pieri rule. On top of
//! that sit the K-theoretic Gromov-Witten invariants and the dual basis.
//!
//! Two independent oracles, [`qh_oracle`] (quantum cohomology) and
//! [`k0_oracle`] (stable Grothendieck polynomials), check the main path;
//! [`verify`] packages every identity as a deterministic report.

pub mod error;
pub mod giambelli;
pub mod invariants;
pub mod k0_oracle;
pub mod partition;
pub mod pieri;
pub mod qh_oracle;
pub mod qring;
pub mod verify;

pub use error::{Error, Result};
pub use giambelli::{GiambelliExpr, QkRing};
pub use partition::{GrassCtx, Partition};
pub use qring::{QKElement, QPoly};
