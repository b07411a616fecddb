pub mod harness;
pub mod mesh;
pub mod models;
pub mod quadrature;
pub mod rd;
pub mod solver;
