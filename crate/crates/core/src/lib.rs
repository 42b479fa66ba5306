//! Feature reduction for KDD-99 style intrusion-detection data.
//!
//! The crate scores features by the variance of their per-class means
//! ([`ffr`]) and compares that against three similarity-clustering selectors
//! ([`similarity`], [`clustering`]) by cross-validating KNN and naive Bayes
//! classifiers on the reduced data ([`evaluation`]).
//!
//! ```no_run
//! use kdd_ffr::dataset::{load_kdd, CategoryMap};
//! use kdd_ffr::ffr::ffr_select;
//!
//! let data = load_kdd("kddcup.data_10_percent.gz".as_ref(), &CategoryMap::default())?;
//! let picked = ffr_select(&data, 10, true)?;
//! println!("{:?} in {:.4}s", picked.kept, picked.elapsed_seconds);
//! # Ok::<(), kdd_ffr::Error>(())
//! ```

pub mod classifiers;
pub mod cli;
pub mod clustering;
pub mod dataset;
mod error;
pub mod evaluation;
pub mod ffr;
pub mod selection;
pub mod similarity;

pub use error::{Error, Result};
