use bitvec::prelude::*;

use super::gate::Gate;
use super::pauli::{Bits, Pauli, PauliString};
use crate::error::{Error, Result};

/// Classical record of outstanding Pauli byproducts, one `(x, z)` bit pair per
/// qubit. The physical state equals `frame · ideal` up to global phase.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ByproductFrame {
    x: Bits,
    z: Bits,
}

impl ByproductFrame {
    pub fn new(n: usize) -> Self {
        ByproductFrame { x: bitvec![u64, Lsb0; 0; n], z: bitvec![u64, Lsb0; 0; n] }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self, q: usize) -> bool {
        self.x[q]
    }

    pub fn z(&self, q: usize) -> bool {
        self.z[q]
    }

    pub fn toggle_x(&mut self, q: usize) {
        let v = self.x[q];
        self.x.set(q, !v);
    }

    pub fn toggle_z(&mut self, q: usize) {
        let v = self.z[q];
        self.z.set(q, !v);
    }

    pub fn is_clean(&self) -> bool {
        self.x.not_any() && self.z.not_any()
    }

    /// Group operation on bit pairs (XOR).
    pub fn compose(&self, other: &ByproductFrame) -> Result<ByproductFrame> {
        if self.n() != other.n() {
            return Err(Error::LengthMismatch(self.n(), other.n()));
        }
        Ok(ByproductFrame { x: self.x.clone() ^ other.x.clone(), z: self.z.clone() ^ other.z.clone() })
    }

    /// Multiplies a Pauli (phase dropped) into the frame.
    pub fn record(&mut self, p: &PauliString) -> Result<()> {
        if p.n() != self.n() {
            return Err(Error::LengthMismatch(p.n(), self.n()));
        }
        self.x ^= p.x_bits().clone();
        self.z ^= p.z_bits().clone();
        Ok(())
    }

    /// Pushes the frame through a Clifford gate applied after it.
    pub fn conjugate(&mut self, g: &Gate) -> Result<()> {
        let p = self.to_pauli().conjugate(g)?;
        self.x = p.x_bits().clone();
        self.z = p.z_bits().clone();
        Ok(())
    }

    pub fn get(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x[q], self.z[q])
    }

    pub fn to_pauli(&self) -> PauliString {
        PauliString::from_bits(self.x.clone(), self.z.clone(), Default::default())
            .expect("frame halves share a length")
    }

    /// Restriction to `qubits`, in that order.
    pub fn restrict(&self, qubits: &[usize]) -> ByproductFrame {
        let mut out = ByproductFrame::new(qubits.len());
        for (i, &q) in qubits.iter().enumerate() {
            out.x.set(i, self.x[q]);
            out.z.set(i, self.z[q]);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frame_through_cz() {
        let mut f = ByproductFrame::new(2);
        f.toggle_x(0);
        f.conjugate(&Gate::Cz(0, 1)).unwrap();
        assert_eq!(f.get(0), Pauli::X);
        assert_eq!(f.get(1), Pauli::Z);
    }
}
