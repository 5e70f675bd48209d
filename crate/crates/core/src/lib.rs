//! Enumeration and classification of superspecial curves of genus 1 to 5
//! over small finite fields.

pub mod algebra;
pub mod census;
pub mod error;
pub mod formulas;
pub mod frobenius;
pub mod isomorphy;
pub mod models;
pub mod par;
pub mod richelot;

pub use error::{Error, InvalidReason, Result};
