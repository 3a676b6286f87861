//! Integral Khovanov homology of link diagrams.

pub mod alexander;
pub mod cli;
pub mod complex;
pub mod diagram;
pub mod homology;
pub mod khovanov;
pub mod par;
pub mod poly;
pub mod states;
