pub mod bridges;
pub mod exact;
pub mod cli;
pub mod hull_oracle;
pub mod permcore;
pub mod plabic;
pub mod polytope;
pub mod verify;
