//! Finite L-topological spaces over finite frames.
//!
//! The crate builds frames, L-topologies, the Sierpinski space, T₀
//! reflections and sobrifications, and checks their categorical properties
//! by exhaustive enumeration over finite universes of spaces.

pub mod doc;
pub mod error;
pub mod fixtures;
pub mod frame;
pub mod limits;
pub mod sober;
pub mod space;
pub mod verify;

pub use error::{Error, Result};
pub use frame::{enumerate_frame_maps, generate_subframe, is_frame_map, Elem, Frame, FrameError, FrameMap};
pub use limits::Limits;
pub use space::{Check, LSet, MapKind, MapWitness, Space, StructuredMap};
