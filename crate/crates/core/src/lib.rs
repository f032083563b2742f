pub mod cli;
pub mod gamma;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod ring;
pub mod semiring;
