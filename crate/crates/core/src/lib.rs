//! Isosceles three-body periodic orbit in regularized coordinates and its
//! linear stability under the reduced monodromy.

pub mod dynamics;
pub mod error;
pub mod integrate;
pub mod orbit;
pub mod roots;
pub mod stability;
pub mod sweep;
pub mod transforms;
pub mod verify;

pub use dynamics::{MassParams, Mat4, Mat8, Phase, RegState};
pub use error::{Error, Result};
