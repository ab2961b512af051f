//! Exact Hochschild cohomology of monomial path algebras `kQ/I`.
//!
//! The crate builds Bardzell's minimal resolution and the bar resolution,
//! the comparison morphisms `F` and `G` between them, and evaluates the cup
//! product, the `∘ᵢ` products and the Gerstenhaber bracket on cochains of the
//! minimal resolution by transport through `F` and `G`.

pub mod algebra;
pub mod bar;
pub mod cochain;
pub mod cohomology;
pub mod comparison;
pub mod corpus;
pub mod error;
pub mod field;
pub mod gerstenhaber;
pub mod input;
pub mod linalg;
pub mod lincomb;
pub mod quiver;
pub mod report;
pub mod resolution;
pub mod verify;

pub use algebra::{AlgebraElement, BasisId, MonomialAlgebra};
pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use input::{format_input, parse_input, QuiverInput};
pub use quiver::{Path, Quiver};
pub use resolution::BardzellResolution;

/// Parses a quiver file and builds its algebra with the default length cap.
pub fn algebra_from_text(text: &str) -> Result<MonomialAlgebra> {
    let inp = parse_input(text)?;
    MonomialAlgebra::new(inp.quiver, inp.relations)
}
