//! Exact construction and verification of generated t-conorms
//! `T(x,y) = f⁽⁻¹⁾(T*(f(x), f(y)))`.
pub mod cli;
pub mod conditions;
pub mod conorm;
pub mod fixtures;
pub mod generator;
pub mod genop;
pub mod numeric;
pub mod oracle;
pub mod rangeset;
pub mod spec;
