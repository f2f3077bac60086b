//! Signed Pauli strings in the symplectic (x, z) representation.
//!
//! A [`PauliString`] is `i^k · σ_0 ⊗ σ_1 ⊗ … ⊗ σ_{n-1}` where each `σ_q` is one
//! of the Hermitian Paulis `I, X, Y, Z` selected by the bit pair `(x_q, z_q)`:
//! `(0,0)=I, (1,0)=X, (0,1)=Z, (1,1)=Y`. The phase `k` is the exponent of `i`
//! in front of that Hermitian product, so `"+XZIIY"` has `k = 0`.
//!
//! Internally products are computed in the `X^x Z^z` ordering, where
//! `Y = i·XZ`, which turns the phase bookkeeping into one popcount.

use std::fmt;
use std::str::FromStr;

use bitvec::prelude::*;

use super::gate::Gate;
use crate::error::{Error, Result};

pub type Bits = BitVec<u64, Lsb0>;

/// Element of `{+1, +i, -1, -i}`, stored as the exponent of `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_exponent(k: i64) -> Self {
        Phase(k.rem_euclid(4) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn is_real(self) -> bool {
        self.0.is_multiple_of(2)
    }

    pub fn to_complex(self) -> num_complex::Complex64 {
        use num_complex::Complex64 as C;
        match self.0 {
            0 => C::new(1.0, 0.0),
            1 => C::new(0.0, 1.0),
            2 => C::new(-1.0, 0.0),
            _ => C::new(0.0, -1.0),
        }
    }
}

impl std::ops::Mul for Phase {
    type Output = Phase;
    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

/// Single-qubit Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl serde::Serialize for Pauli {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_char(self.letter())
    }
}

impl Pauli {
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c {
            'I' | '_' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    x: Bits,
    z: Bits,
    phase: Phase,
}

fn and_popcount(a: &Bits, b: &Bits) -> u32 {
    a.as_raw_slice()
        .iter()
        .zip(b.as_raw_slice())
        .map(|(p, q)| (p & q).count_ones())
        .sum()
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        PauliString {
            x: bitvec![u64, Lsb0; 0; n],
            z: bitvec![u64, Lsb0; 0; n],
            phase: Phase::ONE,
        }
    }

    /// `p` acting on qubit `q` of an `n`-qubit register.
    pub fn single(n: usize, q: usize, p: Pauli) -> Self {
        let mut s = Self::identity(n);
        s.set(q, p);
        s
    }

    pub fn from_paulis(paulis: &[Pauli]) -> Self {
        let mut s = Self::identity(paulis.len());
        for (q, &p) in paulis.iter().enumerate() {
            s.set(q, p);
        }
        s
    }

    /// `p` on every qubit in `qubits`, e.g. the transversal logical operators.
    pub fn on_qubits(n: usize, qubits: impl IntoIterator<Item = usize>, p: Pauli) -> Self {
        let mut s = Self::identity(n);
        for q in qubits {
            s.set(q, p);
        }
        s
    }

    pub fn from_bits(x: Bits, z: Bits, phase: Phase) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::LengthMismatch(x.len(), z.len()));
        }
        Ok(PauliString { x, z, phase })
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn x_bits(&self) -> &Bits {
        &self.x
    }

    pub fn z_bits(&self) -> &Bits {
        &self.z
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn with_phase(mut self, phase: Phase) -> Self {
        self.phase = phase;
        self
    }

    pub fn get(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x[q], self.z[q])
    }

    pub fn set(&mut self, q: usize, p: Pauli) {
        let (x, z) = p.bits();
        self.x.set(q, x);
        self.z.set(q, z);
    }

    pub fn weight(&self) -> usize {
        (self.x.clone() | self.z.clone()).count_ones()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.n()).filter(|&q| self.x[q] || self.z[q]).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.x.not_any() && self.z.not_any()
    }

    /// Equal as operators up to an overall phase.
    pub fn eq_up_to_phase(&self, other: &PauliString) -> bool {
        self.x == other.x && self.z == other.z
    }

    fn y_count(&self) -> u32 {
        and_popcount(&self.x, &self.z)
    }

    /// Operator product `self · other`.
    pub fn compose(&self, other: &PauliString) -> Result<PauliString> {
        if self.n() != other.n() {
            return Err(Error::LengthMismatch(self.n(), other.n()));
        }
        // Move to X^x Z^z form, multiply, move back.
        let e1 = self.phase.0 as i64 + self.y_count() as i64;
        let e2 = other.phase.0 as i64 + other.y_count() as i64;
        let swap = 2 * and_popcount(&self.z, &other.x) as i64;
        let mut out = PauliString {
            x: self.x.clone() ^ other.x.clone(),
            z: self.z.clone() ^ other.z.clone(),
            phase: Phase::ONE,
        };
        out.phase = Phase::from_exponent(e1 + e2 + swap - out.y_count() as i64);
        Ok(out)
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        (and_popcount(&self.x, &other.z) + and_popcount(&self.z, &other.x)).is_multiple_of(2)
    }

    /// Conjugation `g · self · g†` by a Clifford gate.
    pub fn conjugate(&self, g: &Gate) -> Result<PauliString> {
        let mut out = self.clone();
        out.conjugate_in_place(g)?;
        Ok(out)
    }

    pub fn conjugate_in_place(&mut self, g: &Gate) -> Result<()> {
        g.check_targets(self.n())?;
        // Work with the X^x Z^z exponent while touching bits.
        let mut e = self.phase.0 as i64 + self.y_count() as i64;
        match *g {
            Gate::H(q) => {
                let (x, z) = (self.x[q], self.z[q]);
                // X^x Z^z -> Z^x X^z = (-1)^{xz} X^z Z^x
                if x && z {
                    e += 2;
                }
                self.x.set(q, z);
                self.z.set(q, x);
            }
            Gate::X(q) => {
                if self.z[q] {
                    e += 2;
                }
            }
            Gate::Z(q) => {
                if self.x[q] {
                    e += 2;
                }
            }
            Gate::Y(q) => {
                if self.x[q] ^ self.z[q] {
                    e += 2;
                }
            }
            Gate::S(q) => self.conjugate_phase_power(q, 1, &mut e),
            Gate::Rz(q, xi) => {
                let k = g.rz_quarter_turns().ok_or(Error::NonClifford(xi))?;
                self.conjugate_phase_power(q, k, &mut e);
            }
            Gate::Cz(a, b) => {
                let (xa, xb) = (self.x[a], self.x[b]);
                if xa && xb {
                    e += 2;
                }
                if xb {
                    let za = self.z[a];
                    self.z.set(a, !za);
                }
                if xa {
                    let zb = self.z[b];
                    self.z.set(b, !zb);
                }
            }
        }
        self.phase = Phase::from_exponent(e - self.y_count() as i64);
        Ok(())
    }

    /// Conjugation by `S^k`.
    fn conjugate_phase_power(&mut self, q: usize, k: u8, e: &mut i64) {
        for _ in 0..k {
            // S X^x Z^z S† = i^x X^x Z^{x+z}
            if self.x[q] {
                *e += 1;
                let z = self.z[q];
                self.z.set(q, !z);
            }
        }
    }

    /// Dense `2^n × 2^n` matrix, qubit 0 most significant. Only for small `n`.
    pub fn to_matrix(&self) -> Vec<Vec<num_complex::Complex64>> {
        use num_complex::Complex64 as C;
        let n = self.n();
        let dim = 1usize << n;
        let mut m = vec![vec![C::new(0.0, 0.0); dim]; dim];
        #[allow(clippy::needless_range_loop)]
        for col in 0..dim {
            let (row, amp) = self.apply_to_basis(col);
            m[row][col] = amp;
        }
        m
    }

    /// Image of computational basis state `index` as `(new_index, amplitude)`.
    pub fn apply_to_basis(&self, index: usize) -> (usize, num_complex::Complex64) {
        let n = self.n();
        let mut row = index;
        let mut k = self.phase.0 as u32;
        for q in 0..n {
            let bit = n - 1 - q;
            let b = (index >> bit) & 1;
            match self.get(q) {
                Pauli::I => {}
                Pauli::X => row ^= 1 << bit,
                Pauli::Z => k += 2 * b as u32,
                // Y|0> = i|1>, Y|1> = -i|0>
                Pauli::Y => {
                    row ^= 1 << bit;
                    k += if b == 0 { 1 } else { 3 };
                }
            }
        }
        (row, Phase::from_exponent(k as i64).to_complex())
    }

}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.phase.0 {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        };
        write!(f, "{sign}")?;
        for q in 0..self.n() {
            write!(f, "{}", self.get(q).letter())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (phase, rest) = if let Some(r) = s.strip_prefix("+i") {
            (Phase::I, r)
        } else if let Some(r) = s.strip_prefix("-i") {
            (Phase::MINUS_I, r)
        } else if let Some(r) = s.strip_prefix('i') {
            (Phase::I, r)
        } else if let Some(r) = s.strip_prefix('+') {
            (Phase::ONE, r)
        } else if let Some(r) = s.strip_prefix('-') {
            (Phase::MINUS_ONE, r)
        } else {
            (Phase::ONE, s)
        };
        let paulis = rest
            .chars()
            .map(|c| Pauli::from_letter(c).ok_or_else(|| Error::Parse(format!("bad Pauli letter {c:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(PauliString::from_paulis(&paulis).with_phase(phase))
    }
}

impl serde::Serialize for PauliString {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for PauliString {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn self_inverse() {
        let a = p("+XI");
        assert_eq!(a.compose(&a).unwrap(), p("+II"));
    }

    #[test]
    fn xz_squared_is_minus_identity() {
        let xz = p("X").compose(&p("Z")).unwrap();
        // XZ = -iY
        assert_eq!(xz, p("-iY"));
        let sq = xz.compose(&xz).unwrap();
        assert_eq!(sq, p("-I"));
    }

    #[test]
    fn length_mismatch_is_an_error() {
        assert!(matches!(p("XX").compose(&p("X")), Err(Error::LengthMismatch(2, 1))));
    }

    #[test]
    fn display_round_trip() {
        for s in ["+XZIIY", "-YYZ", "+iX", "-iIZ"] {
            assert_eq!(p(s).to_string(), s);
        }
    }

    #[test]
    fn hadamard_exchanges_x_and_z() {
        assert_eq!(p("X").conjugate(&Gate::H(0)).unwrap(), p("Z"));
        assert_eq!(p("Y").conjugate(&Gate::H(0)).unwrap(), p("-Y"));
    }

    #[test]
    fn cz_conjugation() {
        assert_eq!(p("XI").conjugate(&Gate::Cz(0, 1)).unwrap(), p("XZ"));
        assert_eq!(p("ZI").conjugate(&Gate::Cz(0, 1)).unwrap(), p("ZI"));
        assert_eq!(p("XX").conjugate(&Gate::Cz(0, 1)).unwrap(), p("YY"));
    }

    #[test]
    fn non_clifford_rz_rejected() {
        assert!(matches!(p("X").conjugate(&Gate::Rz(0, 0.3)), Err(Error::NonClifford(_))));
        assert_eq!(
            p("X").conjugate(&Gate::Rz(0, std::f64::consts::FRAC_PI_2)).unwrap(),
            p("Y")
        );
    }
}
