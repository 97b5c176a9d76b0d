//! Numerical kernels for testing whether contextual embeddings separate the
//! homonym groups of a word.
//!
//! The crate is `no_std` (it needs `alloc`) and does no IO. It covers:
//!
//! * [`corpus`]: sense-tagged instances, the sense index, the homonym
//!   inventory, group assignment and the multi-group filter.
//! * [`embed`]: context windowing and per-sense averaging of embeddings.
//! * [`cluster`]: Ward agglomerative clustering, flat-kernel mean shift and
//!   DBSCAN, none of which need the number of clusters up front.
//! * [`dimred`]: PCA, metric MDS (SMACOF) and exact t-SNE projections.
//! * [`eval`]: label alignment, adjusted Rand index, the homonym verdict and
//!   corpus-level summaries.
//!
//! Points are passed as slices of `Vec<f64>`, one vector per point. Every
//! routine is deterministic given its inputs (and seed, where one exists).
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![no_std]

extern crate alloc;

pub mod cluster;
pub mod corpus;
pub mod dimred;
pub mod embed;
pub mod eval;
pub mod geometry;

pub use cluster::{ClusterParams, ClusterResult, NOISE};
pub use corpus::{PartOfSpeech, WordKey};
