//! Homologies preserving a curve: deciding `|G[P]|`, G-pairs, orbit expansion and census.

mod census;
mod decide;
mod homology;
mod pairs;

pub use census::{
    census, census_with, certify, check_invariants, default_seeds, fixed_locus_disjointness,
    generator_distinctness, inner_tangency, orbit_expand, quartic_pencil, standard_frame,
    CensusOptions, CensusReport, CensusSummary, Certification, PointEntry, DEFAULT_CAP,
};
pub use decide::{
    axis_diagnostics, decide_gp, polar_vanishes_on, projection_degree, solve_homology,
    AxisDiagnostics, Locus, QGRecord,
};
pub use homology::{homology_from_matrix, Homology};
pub use pairs::{
    binomial_form_check, find_pairs_and_triples, is_g_pair, normalize_g_pair,
    sextactic_shape_check, GPair, PairGraph,
};
