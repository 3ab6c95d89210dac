//! Kauffman bracket of links in `S^1 x S^2` from annular diagrams, the
//! diagram predicates that control its breadth, and checks of the breadth
//! bounds on concrete diagrams.

pub mod analysis;
pub mod corpus;
pub mod diagram;
pub mod generate;
pub mod laurent;
pub mod recipe;
pub mod skein;
pub mod theorems;

pub use diagram::AnnularDiagram;
pub use laurent::LaurentPoly;
