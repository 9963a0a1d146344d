//! Plane curves over finite fields: point counts, singularities and their
//! branches, Frobenius nonclassicality, genus and rational-point bounds.

pub mod corpus;
pub mod curve;
pub mod error;
pub mod frobclass;
pub mod gf;
pub mod invariants;
pub mod mpoly;
pub mod par;
pub mod report;
pub mod resolve;
pub mod search;
pub mod upoly;

pub use error::{Error, Result};
pub use gf::{Elem, ElemStyle, Embedding, FieldElement, Gf};
pub use curve::{Intersection, PlaneCurve, ProjPoint, SingularLocus, SingularOrbit};
pub use mpoly::{parse_poly, resultant_in, Chart, Monomial, MultiPoly};
pub use upoly::UPoly;
