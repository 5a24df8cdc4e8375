//! Linguistic cue extraction and classical classification for fake-news detection.
//!
//! The crate is organised as a staged pipeline:
//!
//! * [`corpus`] loads labelled news corpora, remaps stance-labelled data and splits it.
//! * [`text`] tokenizes, removes stopwords, stems (Porter2), tags and scores sentiment.
//! * [`features`] turns analyzed documents into the named feature sets `fset1` / `fset2`.
//! * [`selection`] ranks features with correlation and covariance merits, filters them
//!   with a wrapper learner and verifies the result with entropy weights and TOPSIS.
//! * [`classifiers`] holds six from-scratch binary learners and a grid search.
//! * [`evaluation`] computes precision-recall AUC and F1 and runs the comparison grid.
//! * [`synthetic`] generates seeded corpora with a planted signal for tests and demos.

pub mod classifiers;
pub mod corpus;
pub mod evaluation;
pub mod features;
pub mod selection;
pub mod synthetic;
pub mod text;

mod atomic;
mod rng;

pub use atomic::write_atomic;
pub use corpus::{Corpus, Label, NewsItem};
pub use features::{FeatureMatrix, FeatureSet};
