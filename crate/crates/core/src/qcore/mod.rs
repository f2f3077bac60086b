//! Pauli algebra, the gate set, the circuit representation and byproduct
//! frames shared by the simulators and protocol builders.

pub mod circuit;
pub mod frame;
pub mod gate;
pub mod pauli;

pub use circuit::{Basis, Circuit, Instruction};
pub use frame::ByproductFrame;
pub use gate::Gate;
pub use pauli::{Pauli, PauliString, Phase};
