//! Exact arithmetic in `Q(ζ_N)` and in formal extensions `K[λ]/(λ² − c)`.

mod context;
mod element;
mod json;
mod literal;
mod poly;

pub use context::{cyclotomic_polynomial, FieldContext};
pub use element::{root_of_unity, FieldElement};
pub use json::{context_from_json, context_to_json, element_in};
pub use literal::{parse_element, parse_rational, parse_triple, rational_str};
pub use poly::UniPoly;
