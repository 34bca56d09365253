//! Adaptive logics, default assumptions, assumption-based argumentation and
//! ASPIC+, with translations between them and seeded differential checks
//! that the translations preserve consequence.

pub mod aba;
pub mod adaptive;
pub mod aspic;
pub mod check;
pub mod cli;
pub mod dung;
pub mod error;
pub mod logic;
pub mod problem;
pub mod translate;

pub use error::{Error, Result};
