pub mod analysis;
pub mod bouquet;
pub mod error;
pub mod exactla;
pub mod glm;
pub mod io;
pub mod graver;
pub mod markov;
pub mod oracle;
pub mod selfdual;

pub use error::{Result, ToricError};
pub use exactla::IntMat;
pub use graver::{KernelVector, MultisetConfig};
