pub mod cohomology;
pub mod error;
pub mod fuscat;
pub mod group;
pub mod interpolate;
pub mod json;
pub mod linalg;
pub mod orbisheaf;
pub mod phase;
pub mod quadform;
pub mod snf;
pub mod twistedrep;

pub use error::{Error, Result};
pub use phase::{FValue, Phase};
