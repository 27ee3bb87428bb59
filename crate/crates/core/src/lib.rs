pub mod ccf;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod norms;
pub mod rng;
pub mod sets;
pub mod solver;
pub mod vecops;
