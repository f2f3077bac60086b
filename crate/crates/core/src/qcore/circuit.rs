use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::gate::Gate;
use super::pauli::PauliString;
use crate::error::{Error, Result};

/// Single-qubit measurement basis.
///
/// `XY(ξ)` measures in `{|±_ξ⟩ = (|0⟩ ± e^{iξ}|1⟩)/√2}`; outcome 0 is `|+_ξ⟩`.
/// `X` is `XY(0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Basis {
    Z,
    X,
    XY(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Instruction {
    Gate(Gate),
    Measure { qubit: usize, basis: Basis, slot: usize },
    /// Apply `pauli` iff the bit stored in `slot` is 1.
    CorrectIf { slot: usize, pauli: PauliString },
}

/// Ordered instruction list over `n` qubits.
///
/// Construction validates targets and that every result slot is written
/// exactly once before it is read.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(try_from = "RawCircuit", into = "RawCircuit")]
pub struct Circuit {
    n: usize,
    ops: Vec<Instruction>,
    #[serde(skip)]
    written: HashSet<usize>,
}

impl Circuit {
    pub fn new(n: usize) -> Self {
        Circuit { n, ops: Vec::new(), written: HashSet::new() }
    }

    pub fn from_gates(n: usize, gates: impl IntoIterator<Item = Gate>) -> Result<Self> {
        let mut c = Circuit::new(n);
        for g in gates {
            c.push(Instruction::Gate(g))?;
        }
        Ok(c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn instructions(&self) -> &[Instruction] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn push(&mut self, op: Instruction) -> Result<()> {
        match &op {
            Instruction::Gate(g) => g.check_targets(self.n)?,
            Instruction::Measure { qubit, basis, slot } => {
                if *qubit >= self.n {
                    return Err(Error::QubitOutOfRange { qubit: *qubit, n: self.n });
                }
                if let Basis::XY(xi) = basis {
                    if !xi.is_finite() {
                        return Err(Error::Parse(format!("measurement angle {xi} is not finite")));
                    }
                }
                if self.written.contains(slot) {
                    return Err(Error::Slot(*slot, "written twice"));
                }
                self.written.insert(*slot);
            }
            Instruction::CorrectIf { slot, pauli } => {
                if pauli.n() != self.n {
                    return Err(Error::LengthMismatch(pauli.n(), self.n));
                }
                if !self.written.contains(slot) {
                    return Err(Error::Slot(*slot, "read before written"));
                }
            }
        }
        self.ops.push(op);
        Ok(())
    }

    pub fn gate(&mut self, g: Gate) -> Result<&mut Self> {
        self.push(Instruction::Gate(g))?;
        Ok(self)
    }

    pub fn gates(&mut self, gs: impl IntoIterator<Item = Gate>) -> Result<&mut Self> {
        for g in gs {
            self.push(Instruction::Gate(g))?;
        }
        Ok(self)
    }

    /// Appends `other`, which must act on the same register size.
    pub fn append(&mut self, other: &Circuit) -> Result<&mut Self> {
        if other.n != self.n {
            return Err(Error::LengthMismatch(self.n, other.n));
        }
        for op in &other.ops {
            self.push(op.clone())?;
        }
        Ok(self)
    }

    /// Relabels qubit `q` to `map[q]` on a register of `n` qubits.
    /// Only gate-only circuits can be embedded.
    pub fn embed(&self, n: usize, map: &[usize]) -> Result<Circuit> {
        if map.len() != self.n {
            return Err(Error::LengthMismatch(map.len(), self.n));
        }
        let gates = self.gate_list()?;
        Circuit::from_gates(n, gates.iter().map(|g| g.map_qubits(|q| map[q])))
    }

    /// Embeds this circuit onto qubits `offset..offset+self.n` of `n`.
    pub fn shifted(&self, n: usize, offset: usize) -> Result<Circuit> {
        let map: Vec<usize> = (offset..offset + self.n).collect();
        self.embed(n, &map)
    }

    /// Adjoint (up to global phase) of a gate-only circuit.
    pub fn inverse(&self) -> Result<Circuit> {
        let gates = self.gate_list()?;
        Circuit::from_gates(self.n, gates.iter().rev().map(Gate::inverse))
    }

    pub fn gate_list(&self) -> Result<Vec<Gate>> {
        self.ops
            .iter()
            .map(|op| match op {
                Instruction::Gate(g) => Ok(*g),
                _ => Err(Error::InvalidGate("circuit contains non-gate instructions".into())),
            })
            .collect()
    }

    pub fn two_qubit_gate_count(&self) -> usize {
        self.ops
            .iter()
            .filter(|op| matches!(op, Instruction::Gate(g) if g.is_two_qubit()))
            .count()
    }

    pub fn is_clifford(&self) -> bool {
        self.ops.iter().all(|op| match op {
            Instruction::Gate(g) => g.is_clifford(),
            Instruction::Measure { basis, .. } => !matches!(basis, Basis::XY(_)),
            Instruction::CorrectIf { .. } => true,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

#[derive(Serialize, Deserialize)]
struct RawCircuit {
    n: usize,
    ops: Vec<RawOp>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawOp {
    Gate {
        g: String,
        t: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        xi: Option<f64>,
    },
    Measure {
        m: RawMeasure,
    },
    CorrectIf {
        cif: RawCif,
    },
}

#[derive(Serialize, Deserialize)]
struct RawMeasure {
    q: usize,
    basis: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    xi: Option<f64>,
    slot: usize,
}

#[derive(Serialize, Deserialize)]
struct RawCif {
    slot: usize,
    pauli: PauliString,
}

impl From<Circuit> for RawCircuit {
    fn from(c: Circuit) -> Self {
        let ops = c
            .ops
            .into_iter()
            .map(|op| match op {
                Instruction::Gate(g) => RawOp::Gate {
                    g: g.name().to_string(),
                    t: g.targets(),
                    xi: match g {
                        Gate::Rz(_, xi) => Some(xi),
                        _ => None,
                    },
                },
                Instruction::Measure { qubit, basis, slot } => {
                    let (basis, xi) = match basis {
                        Basis::Z => ("Z", None),
                        Basis::X => ("X", None),
                        Basis::XY(xi) => ("XY", Some(xi)),
                    };
                    RawOp::Measure { m: RawMeasure { q: qubit, basis: basis.into(), xi, slot } }
                }
                Instruction::CorrectIf { slot, pauli } => RawOp::CorrectIf { cif: RawCif { slot, pauli } },
            })
            .collect();
        RawCircuit { n: c.n, ops }
    }
}

impl TryFrom<RawCircuit> for Circuit {
    type Error = Error;

    fn try_from(raw: RawCircuit) -> Result<Self> {
        let mut c = Circuit::new(raw.n);
        for op in raw.ops {
            let op = match op {
                RawOp::Gate { g, t, xi } => {
                    let one = |t: &[usize]| -> Result<usize> {
                        match t {
                            [q] => Ok(*q),
                            _ => Err(Error::Parse(format!("gate {g} needs one target, got {t:?}"))),
                        }
                    };
                    let gate = match g.as_str() {
                        "H" => Gate::H(one(&t)?),
                        "X" => Gate::X(one(&t)?),
                        "Y" => Gate::Y(one(&t)?),
                        "Z" => Gate::Z(one(&t)?),
                        "S" => Gate::S(one(&t)?),
                        "RZ" => Gate::Rz(
                            one(&t)?,
                            xi.ok_or_else(|| Error::Parse("RZ without xi".into()))?,
                        ),
                        "CZ" => match t.as_slice() {
                            [a, b] => Gate::Cz(*a, *b),
                            _ => return Err(Error::Parse(format!("CZ needs two targets, got {t:?}"))),
                        },
                        other => return Err(Error::Parse(format!("unknown gate {other:?}"))),
                    };
                    Instruction::Gate(gate)
                }
                RawOp::Measure { m } => {
                    let basis = match (m.basis.as_str(), m.xi) {
                        ("Z", _) => Basis::Z,
                        ("X", _) => Basis::X,
                        ("XY", Some(xi)) => Basis::XY(xi),
                        ("XY", None) => return Err(Error::Parse("XY measurement without xi".into())),
                        (b, _) => return Err(Error::Parse(format!("unknown basis {b:?}"))),
                    };
                    Instruction::Measure { qubit: m.q, basis, slot: m.slot }
                }
                RawOp::CorrectIf { cif } => Instruction::CorrectIf { slot: cif.slot, pauli: cif.pauli },
            };
            c.push(op)?;
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_circuit_has_no_two_qubit_gates() {
        assert_eq!(Circuit::new(3).two_qubit_gate_count(), 0);
    }

    #[test]
    fn slots_must_be_written_before_read_and_only_once() {
        let mut c = Circuit::new(2);
        let fix: PauliString = "+XI".parse().unwrap();
        assert!(c.push(Instruction::CorrectIf { slot: 0, pauli: fix.clone() }).is_err());
        c.push(Instruction::Measure { qubit: 1, basis: Basis::X, slot: 0 }).unwrap();
        c.push(Instruction::CorrectIf { slot: 0, pauli: fix }).unwrap();
        assert!(c.push(Instruction::Measure { qubit: 0, basis: Basis::Z, slot: 0 }).is_err());
    }

    #[test]
    fn json_shape() {
        let mut c = Circuit::from_gates(2, [Gate::H(0), Gate::Rz(1, 0.5), Gate::Cz(0, 1)]).unwrap();
        c.push(Instruction::Measure { qubit: 0, basis: Basis::XY(0.25), slot: 3 }).unwrap();
        c.push(Instruction::CorrectIf { slot: 3, pauli: "+IX".parse().unwrap() }).unwrap();
        let js = c.to_json().unwrap();
        assert_eq!(
            js,
            r#"{"n":2,"ops":[{"g":"H","t":[0]},{"g":"RZ","t":[1],"xi":0.5},{"g":"CZ","t":[0,1]},{"m":{"q":0,"basis":"XY","xi":0.25,"slot":3}},{"cif":{"slot":3,"pauli":"+IX"}}]}"#
        );
        assert_eq!(Circuit::from_json(&js).unwrap(), c);
    }

    #[test]
    fn json_rejects_invalid_targets() {
        assert!(Circuit::from_json(r#"{"n":2,"ops":[{"g":"CZ","t":[0,0]}]}"#).is_err());
        assert!(Circuit::from_json(r#"{"n":2,"ops":[{"g":"H","t":[2]}]}"#).is_err());
    }

    #[test]
    fn inverse_reverses_and_inverts() {
        let c = Circuit::from_gates(2, [Gate::S(0), Gate::Cz(0, 1), Gate::H(1)]).unwrap();
        let inv = c.inverse().unwrap();
        assert_eq!(
            inv.gate_list().unwrap(),
            vec![Gate::H(1), Gate::Cz(0, 1), Gate::Rz(0, -std::f64::consts::FRAC_PI_2)]
        );
    }
}
