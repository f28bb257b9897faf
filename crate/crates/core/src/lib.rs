pub mod diagnostics;
pub mod error;
pub mod family;
pub mod linalg;
pub mod process;
pub mod qubit_demo;
pub mod sud;
pub mod tol;
pub mod verify;

pub use error::{Error, Result};
