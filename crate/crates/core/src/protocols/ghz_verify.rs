//! Stabilizer checks of a five-qubit logical state through a four-qubit cat
//! ancilla. Each round measures one weight-4 code generator: the cat
//! controls the generator's Pauli on each of its four data qubits, and the
//! parity of the cat's X readouts is the generator's eigenvalue bit. A fifth
//! ancilla checks the cat's end-to-end ZZ parity before use.
//!
//! Layout: data 0–4, cat 5–8, verifier 9.

use rand::RngCore;
use serde::Serialize;
use std::f64::consts::FRAC_PI_2;

use crate::code5::code_stabilizers;
use crate::error::{Error, Result};
use crate::qcore::{Basis, Gate, Pauli, PauliString};
use crate::svsim::{Outcome, StateVector};

pub const DEFAULT_ROUNDS: usize = 4;
const CAT: [usize; 4] = [5, 6, 7, 8];
const VERIFIER: usize = 9;

fn cnot(c: usize, t: usize) -> [Gate; 3] {
    [Gate::H(t), Gate::Cz(c, t), Gate::H(t)]
}

fn controlled(c: usize, t: usize, p: Pauli) -> Vec<Gate> {
    match p {
        Pauli::I => vec![],
        Pauli::Z => vec![Gate::Cz(c, t)],
        Pauli::X => cnot(c, t).to_vec(),
        // S X S† = Y
        Pauli::Y => {
            let mut g = vec![Gate::Rz(t, -FRAC_PI_2)];
            g.extend(cnot(c, t));
            g.push(Gate::S(t));
            g
        }
    }
}

/// A Pauli applied to one cat qubit right after the cat is prepared, to
/// exercise the ancilla check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AncillaFault {
    pub round: usize,
    /// Cat position 0–3.
    pub cat_qubit: usize,
    pub pauli: Pauli,
}

#[derive(Debug, Clone, Serialize)]
pub struct RoundResult {
    pub generator: usize,
    pub stabilizer: PauliString,
    /// Cat ZZ check tripped; the round's parity is not trusted.
    pub ancilla_failed: bool,
    /// Parity of the cat X readouts (1 = the data looks wrong).
    pub parity: u8,
}

#[derive(Debug, Clone, Serialize)]
pub struct GhzVerifyReport {
    pub rounds: Vec<RoundResult>,
    /// Rounds flagging the data with a verified ancilla.
    pub data_flags: usize,
    pub ancilla_failures: usize,
    pub passed: bool,
}

/// Runs `rounds` verification rounds; round `r` measures generator `r mod 4`.
pub fn ghz_verify_logical(
    state: &StateVector,
    rounds: usize,
    fault: Option<AncillaFault>,
    rng: &mut dyn RngCore,
) -> Result<GhzVerifyReport> {
    if state.n() != 5 {
        return Err(Error::LengthMismatch(state.n(), 5));
    }
    if rounds == 0 {
        return Err(Error::Parse("rounds must be at least 1".into()));
    }
    let gens = code_stabilizers();
    let mut data = state.clone();
    let mut out = Vec::with_capacity(rounds);
    for r in 0..rounds {
        let k = r % gens.len();
        let g = &gens[k];
        let mut s = data.tensor(&StateVector::zeros(5)?)?;

        s.apply(&Gate::H(CAT[0]))?;
        for w in CAT.windows(2) {
            s.apply_gates(&cnot(w[0], w[1]))?;
        }
        if let Some(f) = fault.filter(|f| f.round == r) {
            s.apply_pauli(&PauliString::single(10, CAT[f.cat_qubit], f.pauli))?;
        }
        s.apply_gates(&cnot(CAT[0], VERIFIER))?;
        s.apply_gates(&cnot(CAT[3], VERIFIER))?;
        let ancilla_failed = s.measure(VERIFIER, Basis::Z, Outcome::Sample(&mut *rng))?.outcome == 1;

        for (&c, t) in CAT.iter().zip(g.support()) {
            s.apply_gates(&controlled(c, t, g.get(t)))?;
        }
        let mut parity = 0;
        for &c in &CAT {
            parity ^= s.measure(c, Basis::X, Outcome::Sample(&mut *rng))?.outcome;
        }
        data = s.extract(&[0, 1, 2, 3, 4])?;
        out.push(RoundResult { generator: k, stabilizer: g.clone(), ancilla_failed, parity });
    }
    let data_flags = out.iter().filter(|r| !r.ancilla_failed && r.parity == 1).count();
    let ancilla_failures = out.iter().filter(|r| r.ancilla_failed).count();
    Ok(GhzVerifyReport { passed: data_flags == 0 && ancilla_failures == 0, rounds: out, data_flags, ancilla_failures })
}
