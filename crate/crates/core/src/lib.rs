//! Signed ribbon graphs of link diagrams in real projective space and of
//! virtual link diagrams.
//!
//! The crate covers arrow presentations and their surfaces, partial
//! duality and join-summand moves, diagrams in projective space with their
//! states, Tait graphs and one-vertex reduction, Gauss diagrams, and the
//! Kauffman bracket together with its Bollobás–Riordan expression.

pub mod cli;
pub mod duality;
pub mod enumerate;
pub mod error;
pub mod poly;
pub mod proj;
pub mod ribbon;
pub mod skeleton;
pub mod virtual_diagram;

pub use error::{Error, Result, Violation};
pub use ribbon::{
    validate, Arrow, ArrowPresentation, CanonicalCode, Direction, LabelledArrow, RibbonStats, Sign,
    SignedRibbonGraph, SubsetStats, SurfaceClass,
};
pub use poly::{bracket_via_br, br_polynomial, kauffman_bracket, BrPoly, LaurentPoly, RationalExpr};
pub use proj::ProjDiagram;
pub use virtual_diagram::GaussDiagram;
