pub mod alexander;
pub mod braid;
pub mod cli;
pub mod commutator;
pub mod dehn;
pub mod perm;
pub mod presentation;
pub mod report;
pub mod word;
