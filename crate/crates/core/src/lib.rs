pub mod arith;
pub mod classify;
pub mod error;
pub mod forms;
pub mod geometry;
pub mod group;
pub mod problem;
pub mod report;
