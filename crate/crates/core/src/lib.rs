pub mod algebras;
pub mod kernel;
pub mod laws;
pub mod monads;
pub mod report;
pub mod gallery;
pub mod iterate;
pub mod splitting;
pub mod suites;
pub mod winter;
