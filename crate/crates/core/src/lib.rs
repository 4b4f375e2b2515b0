//! Tools for multi-layer annotated Thai corpora in the LST20 conventions:
//! word, POS, named-entity, clause and sentence layers.

pub mod cli;
pub mod format;
pub mod frames;
pub mod schema;
pub mod segment;
pub mod stats;
pub mod validate;
