//! Proper 4-colourings of the tiling: forcing, exact enumeration,
//! seed classification and perfect-seed search.

mod classify;
mod color;
mod propagate;
mod sat;
mod search;
mod solver;

pub use classify::{
    classify, forced_within, propagate_with_margin, ClassificationReport, ClassifyError, Verdict,
    PROPAGATION_MARGIN,
};
pub use color::{
    validate_seed, Color, ColorPermutation, ColorSet, ParseColorError, PartialColoring, Seed,
};
pub use propagate::{propagate, propagate_rounds, Propagation, WindowGraph};
pub use search::{
    canonical_seed, class_set, search_perfect_seeds, SearchBudget, SearchError, SearchOutcome,
};
pub use solver::{enumerate, exact_candidates, field, find_coloring, CandidateMap, Enumeration, FieldError};
