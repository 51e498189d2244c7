pub mod attractors;
pub mod color;
pub mod simulate;
pub mod transport;
pub mod verify;
