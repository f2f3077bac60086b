//! The five-qubit perfect code in its pentagon graph-state form.
//!
//! Physical qubits of one logical register are indexed 0..5 here; the
//! conventional labels 1–5 map to indices 0–4. The information qubit of the
//! encoder is index 0 and the syndrome is read from indices 1–4.
//!
//! | label | index | role                       |
//! |-------|-------|----------------------------|
//! | 1     | 0     | information / teleport out |
//! | 2–5   | 1–4   | syndrome bits a, b, c, d   |

use std::fmt;

use num_complex::Complex64 as C;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qcore::{Basis, Circuit, Gate, Pauli, PauliString};
use crate::svsim::{Outcome, StateVector};

/// Signed basis-state expansion of `|0_L⟩` (each amplitude ±1/4).
pub const LOGICAL_ZERO_TERMS: [(i8, &str); 16] = [
    (1, "00000"),
    (1, "10010"),
    (1, "01001"),
    (1, "10100"),
    (1, "01010"),
    (-1, "11011"),
    (-1, "00110"),
    (-1, "11000"),
    (-1, "11101"),
    (-1, "00011"),
    (-1, "11110"),
    (-1, "01111"),
    (-1, "10001"),
    (-1, "01100"),
    (-1, "10111"),
    (1, "00101"),
];

/// Where the five physical qubits of one logical qubit live in a larger
/// register.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LogicalRegister {
    pub qubits: [usize; 5],
}

impl LogicalRegister {
    /// Register occupying `offset..offset + 5`.
    pub const fn at(offset: usize) -> Self {
        LogicalRegister { qubits: [offset, offset + 1, offset + 2, offset + 3, offset + 4] }
    }

    pub fn info_qubit(&self) -> usize {
        self.qubits[0]
    }

    pub fn logical_x(&self, n: usize) -> PauliString {
        PauliString::on_qubits(n, self.qubits, Pauli::X)
    }

    pub fn logical_z(&self, n: usize) -> PauliString {
        PauliString::on_qubits(n, self.qubits, Pauli::Z)
    }

    pub fn encoder(&self, n: usize) -> Circuit {
        encoder().embed(n, &self.qubits).expect("register fits")
    }

    pub fn decoder(&self, n: usize) -> Circuit {
        decoder().embed(n, &self.qubits).expect("register fits")
    }

    pub fn pentagon(&self, n: usize) -> Circuit {
        build_e2().embed(n, &self.qubits).expect("register fits")
    }
}

fn state_from_terms(terms: impl IntoIterator<Item = (f64, usize)>, n: usize) -> StateVector {
    let mut amps = vec![C::new(0.0, 0.0); 1 << n];
    for (a, i) in terms {
        amps[i] += C::new(a, 0.0);
    }
    StateVector::normalized(amps).expect("nonzero")
}

pub fn logical_zero() -> StateVector {
    let terms = LOGICAL_ZERO_TERMS
        .iter()
        .map(|&(s, bits)| (s as f64 / 4.0, usize::from_str_radix(bits, 2).expect("binary literal")));
    state_from_terms(terms, 5)
}

/// `X^{⊗5} |0_L⟩`.
pub fn logical_one() -> StateVector {
    let mut s = logical_zero();
    s.apply_pauli(&LogicalRegister::at(0).logical_x(5)).expect("5 qubits");
    s
}

fn combine(a: &StateVector, b: &StateVector, sign: f64) -> StateVector {
    let amps = a.amplitudes().iter().zip(b.amplitudes()).map(|(x, y)| x + y * sign).collect();
    StateVector::normalized(amps).expect("nonzero")
}

pub fn logical_plus() -> StateVector {
    combine(&logical_zero(), &logical_one(), 1.0)
}

pub fn logical_minus() -> StateVector {
    combine(&logical_zero(), &logical_one(), -1.0)
}

/// `α|0_L⟩ + β|1_L⟩` assembled from the amplitude table.
pub fn logical_state(psi: [C; 2]) -> StateVector {
    let (z, o) = (logical_zero(), logical_one());
    let amps = z.amplitudes().iter().zip(o.amplitudes()).map(|(a, b)| psi[0] * a + psi[1] * b).collect();
    StateVector::normalized(amps).expect("nonzero")
}

/// Pentagon operator `CZ_{1,2} CZ_{2,3} CZ_{3,4} CZ_{4,5} CZ_{5,1}`; this is E2.
pub fn build_e2() -> Circuit {
    Circuit::from_gates(5, (0..5).map(|a| Gate::Cz(a, (a + 1) % 5))).expect("valid")
}

/// First encoder stage: `|ψ⟩|0000⟩ ↦ [(α−β)|+⟩^5 + (α+β)|−⟩^5]/√2`.
///
/// `Z` then `H` on the information qubit, `H` on 2–5, the four GHZ-type CZ
/// gates from qubit 1, and a final `H` on qubit 1.
pub fn build_e1() -> Circuit {
    let mut gates = vec![Gate::Z(0), Gate::H(0)];
    gates.extend((1..5).map(Gate::H));
    gates.extend((1..5).map(|q| Gate::Cz(0, q)));
    gates.push(Gate::H(0));
    Circuit::from_gates(5, gates).expect("valid")
}

/// `E2 · E1`.
pub fn encoder() -> Circuit {
    let mut c = build_e1();
    c.append(&build_e2()).expect("same size");
    c
}

/// `E1† E2†`.
pub fn decoder() -> Circuit {
    encoder().inverse().expect("gate-only")
}

/// `|K_5⟩`, the complete-graph state on five qubits.
pub fn k5_state() -> StateVector {
    let mut s = StateVector::zeros(5).expect("5 qubits");
    let gates = crate::stabsim::Graph::complete(5).state_circuit().gate_list().expect("gate-only");
    s.apply_gates(&gates).expect("valid");
    s
}

/// The local operations taking `|K_5⟩` to `|0_L⟩` up to sign:
/// `H_1 X^{⊗4}_{2-5} CZ_{2,3} CZ_{2,5} CZ_{4,5}`.
pub fn k5_to_zero_gates() -> Vec<Gate> {
    let mut g = vec![Gate::Cz(1, 2), Gate::Cz(1, 4), Gate::Cz(3, 4)];
    g.extend((1..5).map(Gate::X));
    g.push(Gate::H(0));
    g
}

pub fn logical_zero_from_k5() -> StateVector {
    let mut s = k5_state();
    s.apply_gates(&k5_to_zero_gates()).expect("valid");
    s
}

/// Encodes a single-qubit state with `E2 E1`.
pub fn encode(psi: [C; 2]) -> Result<StateVector> {
    let zero = [C::new(1.0, 0.0), C::new(0.0, 0.0)];
    let mut s = StateVector::product(&[psi, zero, zero, zero, zero])?;
    s.apply_gates(&encoder().gate_list()?)?;
    Ok(s)
}

/// Four weight-4 stabilizer generators `K_a K_{a+1}` of the code, built from
/// the pentagon graph-state stabilizers `K_a = Z_{a-1} X_a Z_{a+1}`.
pub fn code_stabilizers() -> [PauliString; 4] {
    let g = crate::stabsim::Graph::cycle(5);
    std::array::from_fn(|a| g.stabilizer(a).compose(&g.stabilizer(a + 1)).expect("same n"))
}

/// Four syndrome bits `(a, b, c, d)` read from qubits 2, 3, 4, 5.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syndrome(u8);

impl Syndrome {
    pub const NONE: Syndrome = Syndrome(0);

    pub fn from_bits(bits: [u8; 4]) -> Self {
        Syndrome(bits.iter().fold(0, |acc, &b| (acc << 1) | (b & 1)))
    }

    pub fn from_value(v: u8) -> Result<Self> {
        if v > 0b1111 {
            return Err(Error::Parse(format!("syndrome value {v} exceeds 4 bits")));
        }
        Ok(Syndrome(v))
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn bits(self) -> [u8; 4] {
        std::array::from_fn(|i| (self.0 >> (3 - i)) & 1)
    }

    pub fn all() -> impl Iterator<Item = Syndrome> {
        (0..16).map(Syndrome)
    }
}

impl fmt::Display for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04b}", self.0)
    }
}

impl std::str::FromStr for Syndrome {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s.len() != 4 {
            return Err(Error::Parse(format!("syndrome {s:?} must have 4 bits")));
        }
        u8::from_str_radix(s, 2).map(Syndrome).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl Serialize for Syndrome {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Operation left on the decoded information qubit, i.e. the correction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Correction {
    I,
    X,
    XZ,
    Z,
}

impl Correction {
    /// As a one-qubit Pauli string, `XZ` carrying its phase (`XZ = -iY`).
    pub fn pauli(self) -> PauliString {
        let p = |s: &str| s.parse::<PauliString>().expect("literal");
        match self {
            Correction::I => p("I"),
            Correction::X => p("X"),
            Correction::XZ => p("X").compose(&p("Z")).expect("same n"),
            Correction::Z => p("Z"),
        }
    }

    /// The same operator on qubit `q` of an `n`-qubit register.
    pub fn on(self, n: usize, q: usize) -> PauliString {
        let one = self.pauli();
        PauliString::single(n, q, one.get(0)).with_phase(one.phase())
    }

    pub fn label(self) -> &'static str {
        match self {
            Correction::I => "|psi>",
            Correction::X => "X|psi>",
            Correction::XZ => "XZ|psi>",
            Correction::Z => "Z|psi>",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SyndromeRow {
    /// Error label, e.g. `"X3Z3"`; `"None"` for the clean row.
    pub error: &'static str,
    pub syndrome: &'static str,
    pub outcome: Correction,
}

/// Error-correction table: error, syndrome on qubits 2–5, decoded outcome.
pub const SYNDROME_TABLE: [SyndromeRow; 16] = {
    use Correction::*;
    const fn row(error: &'static str, syndrome: &'static str, outcome: Correction) -> SyndromeRow {
        SyndromeRow { error, syndrome, outcome }
    }
    [
        row("None", "0000", I),
        row("Z2", "1000", I),
        row("Z3", "0100", I),
        row("Z4", "0010", I),
        row("Z5", "0001", I),
        row("X1", "1001", X),
        row("X3", "1010", X),
        row("X4", "0101", X),
        row("X3Z3", "1110", X),
        row("X4Z4", "0111", X),
        row("X1Z1", "0110", XZ),
        row("X2", "1011", XZ),
        row("X5", "1101", XZ),
        row("X2Z2", "0011", XZ),
        row("X5Z5", "1100", XZ),
        row("Z1", "1111", Z),
    ]
};

impl SyndromeRow {
    /// The error as an operator on a 5-qubit register (`X_kZ_k` composed
    /// in that order).
    pub fn error_operator(&self) -> PauliString {
        parse_error_label(self.error, 5).expect("table labels are well formed")
    }

    pub fn syndrome(&self) -> Syndrome {
        self.syndrome.parse().expect("table syndromes are 4 bits")
    }
}

/// Parses labels like `"X3"`, `"X3Z3"`, `"Z1"`, `"None"` (1-based qubits) on
/// an `n`-qubit register.
pub fn parse_error_label(label: &str, n: usize) -> Result<PauliString> {
    let mut p = PauliString::identity(n);
    if label == "None" {
        return Ok(p);
    }
    let mut chars = label.chars().peekable();
    while let Some(c) = chars.next() {
        let pauli = Pauli::from_letter(c).ok_or_else(|| Error::Parse(format!("bad error label {label:?}")))?;
        let mut digits = String::new();
        while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
            digits.push(*d);
            chars.next();
        }
        let q: usize = digits.parse().map_err(|_| Error::Parse(format!("bad error label {label:?}")))?;
        if q == 0 || q > n {
            return Err(Error::QubitOutOfRange { qubit: q.wrapping_sub(1), n });
        }
        p = p.compose(&PauliString::single(n, q - 1, pauli))?;
    }
    Ok(p)
}

/// Correction for a syndrome; total over all 16 values.
pub fn correction_for(s: Syndrome) -> Correction {
    SYNDROME_TABLE
        .iter()
        .find(|r| r.syndrome() == s)
        .map(|r| r.outcome)
        .expect("every syndrome appears in the table")
}

/// Decodes (`E1† E2†`), reads qubits 2–5 in Z and returns the syndrome and
/// the collapsed information-qubit state. Deterministic syndromes do not
/// consume randomness.
pub fn decode_and_syndrome(state: &StateVector, outcome_rng: &mut dyn rand::RngCore) -> Result<(Syndrome, StateVector)> {
    if state.n() != 5 {
        return Err(Error::LengthMismatch(state.n(), 5));
    }
    let mut s = state.clone();
    s.apply_gates(&decoder().gate_list()?)?;
    let mut bits = [0u8; 4];
    for (i, q) in (1..5).enumerate() {
        bits[i] = s.measure(q, Basis::Z, Outcome::Sample(&mut *outcome_rng))?.outcome;
    }
    let out = s.extract(&[0])?;
    Ok((Syndrome::from_bits(bits), out))
}
