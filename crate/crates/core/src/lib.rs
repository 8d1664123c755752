pub mod cli;
pub mod coeffs;
pub mod elliptic;
pub mod error;
pub mod hermite;
pub mod kernel;
pub mod lattice;
pub mod pseudochar;
pub mod sum;
pub mod zeros;
pub mod verify;
