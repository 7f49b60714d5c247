pub mod apolar;
pub mod error;
pub mod linalg;
pub mod pipeline;
pub mod poly;
pub mod surfaces;

pub use error::{Error, Result};
