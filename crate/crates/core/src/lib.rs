//! Online-backpropagation multilayer perceptron and its fuzzy-input variant.
//!
//! Both models are the same one-hidden-layer sigmoid network with a single
//! output unit, trained pattern by pattern with momentum. The fuzzy-MLP maps
//! each attribute through an S-shaped spline membership function fitted to
//! the attribute's observed range before training, and reads class
//! decisions off the scalar output by nearest encoded target.
//!
//! - [`math`]: sigmoid and S-membership functions
//! - [`network`]: weights, forward pass, backpropagation, training loop
//! - [`fuzzifier`]: membership fitting, fuzzification, defuzzification
//! - [`data`]: UCI-style CSV loading, target encoding, dataset catalog
//! - [`bench`]: learning-rate sweeps, convergence gain, CSV reports

pub mod bench;
pub mod data;
pub mod error;
pub mod fuzzifier;
pub mod math;
pub mod network;

pub use error::{Error, Result};
