//! Query-model simulation of quantum algorithms for largest empty segments,
//! squares and rectangles.

pub mod error;
pub mod instances;
pub mod qcore;
pub mod window;
pub mod baseline;
pub mod algos;
pub mod harness;
