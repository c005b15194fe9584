//! Exact arithmetic, substitution rules and rendering for 7-fold rhombic
//! tilings built from the three unit rhombs with angles π/7, 2π/7, 3π/7.
//!
//! Arithmetic is generic over the scalar type; the aliases below fix the
//! common choices.

pub mod cyclo;
pub mod error;
pub mod geometry;
pub mod matrix;
pub mod patch;
pub mod phi;
pub mod report;
pub mod rules;
pub mod scalar;
pub mod search;
pub mod svg;
pub mod tile;

pub use cyclo::{Cyclo, RigidMotion};
pub use error::{Error, Result};
pub use matrix::{build_matrix, inflation_factor, inflation_factor_sq, tile_count, Seed, SubstMatrix};
pub use patch::Patch;
pub use phi::PhiNum;
pub use rules::{generate, substitute, verify_rule, SubstRuleSet, VerifiedRules};
pub use search::{search_decomposition, SearchConfig, SearchOutcome, SearchStatus};
pub use svg::{render_mandala, render_patch, RenderStyle};
pub use tile::{HalfTile, Split, TileType};

/// Exact elements of Q(Φ).
pub type Phi = PhiNum<num_rational::BigRational>;
/// Floating elements of Q(Φ), for quick numerics.
pub type PhiF64 = PhiNum<f64>;
pub use cyclo::{CycloBig, CycloInt};
