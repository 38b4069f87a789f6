pub mod cli;
pub mod constructions;
pub mod ledger;
pub mod linalg;
pub mod linear_systems;
pub mod nodal;
pub mod poly;
