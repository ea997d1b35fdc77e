//! Polytope and PBW models of Kirillov-Reshetikhin crystals `B^{r,s}` for the
//! minuscule nodes of E6 (r = 1, 6) and E7 (r = 7).
//!
//! Elements are Lusztig data `c` over the roots of the nilradical, cut out by
//! a path statistic `eps_star(c) <= s`. A second, independent statistic built
//! from walks in the minuscule crystal serves as an oracle.

pub mod affine_kr;
pub mod exec;
pub mod export;
pub mod fixtures;
pub mod hw_oracle;
pub mod model;
pub mod path_statistic;
pub mod pbw_crystal;
pub mod root_system;
pub mod suites;
pub mod trail_oracle;
pub mod word_engine;

pub use model::{Model, ModelData};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("letter {0} is not a node")]
    BadLetter(usize),
    #[error("word {0:?} is not reduced")]
    NotReduced(Vec<usize>),
    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i32>),
    #[error("inadmissible move: {0}")]
    BadMove(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Mismatch(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
