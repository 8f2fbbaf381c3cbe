//! Exact coefficient arithmetic: polynomials in `q` and finite combinations
//! of Schubert classes over them.

mod element;
mod qpoly;

pub use element::{filtration_grade, QKElement, TermRecord};
pub use qpoly::QPoly;
