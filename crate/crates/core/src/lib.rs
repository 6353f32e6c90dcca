pub mod case;
pub mod character;
pub mod criterion;
pub mod error;
pub mod help;
pub mod multiplicities;
pub mod tableaux;

pub use error::{Error, Result};
