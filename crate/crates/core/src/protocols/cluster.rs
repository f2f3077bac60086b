//! Logical cluster states: the ten-qubit two-logical-qubit state, the
//! logical-physical state, and the push-through identity relating the
//! sequential and graph constructions.

use num_complex::Complex64 as C;
use rand::Rng;
use serde::Serialize;

use crate::code5::{self, LogicalRegister};
use crate::error::Result;
use crate::qcore::{Circuit, Gate, PauliString};
use crate::stabsim::Graph;
use crate::svsim::{fidelity, StateVector, Symbol, STATE_EQ_TOL};

pub const REG_A: LogicalRegister = LogicalRegister::at(0);
pub const REG_B: LogicalRegister = LogicalRegister::at(5);

/// Every CZ between two five-qubit registers; acts as `CZ^L` on the code
/// space since the two codewords have opposite parity.
pub fn cross_cz(a: &LogicalRegister, b: &LogicalRegister) -> Vec<Gate> {
    a.qubits.iter().flat_map(|&m| b.qubits.iter().map(move |&n| Gate::Cz(m, n))).collect()
}

/// Hub-and-spokes CZs from every qubit of `reg` to `hub`.
pub fn ghz_fan(reg: &LogicalRegister, hub: usize) -> Vec<Gate> {
    reg.qubits.iter().map(|&q| Gate::Cz(q, hub)).collect()
}

/// Two pentagons joined by all 25 cross edges; every vertex has degree 7.
pub fn lcs2_graph() -> Graph {
    let mut g = Graph::cycle(5).disjoint_union(&Graph::cycle(5));
    for (m, n) in cross_cz(&REG_A, &REG_B).iter().map(|g| match *g {
        Gate::Cz(m, n) => (m, n),
        _ => unreachable!(),
    }) {
        g.add_edge(m, n).expect("distinct registers");
    }
    g
}

/// The graph-state circuit of [`lcs2_graph`] in pentagon-first order:
/// `H^{⊗10}`, the two pentagons, then the cross edges.
pub fn lcs2_circuit() -> Circuit {
    let mut c = Circuit::from_gates(10, (0..10).map(Gate::H)).expect("valid");
    c.append(&REG_A.pentagon(10)).expect("same n");
    c.append(&REG_B.pentagon(10)).expect("same n");
    c.gates(cross_cz(&REG_A, &REG_B)).expect("valid");
    c
}

/// Two-logical-qubit cluster state from the graph circuit.
pub fn build_lcs2() -> Result<(Circuit, StateVector, Graph)> {
    let c = lcs2_circuit();
    let mut s = StateVector::zeros(10)?;
    s.apply_gates(&c.gate_list()?)?;
    Ok((c, s, lcs2_graph()))
}

/// Sum of two two-register product terms, normalized.
pub fn two_register_sum(terms: &[(f64, &StateVector, &StateVector)]) -> Result<StateVector> {
    let mut amps = vec![C::new(0.0, 0.0); 1 << 10];
    for (w, a, b) in terms {
        let t = a.tensor(b)?;
        for (acc, x) in amps.iter_mut().zip(t.amplitudes()) {
            *acc += x * *w;
        }
    }
    StateVector::normalized(amps)
}

/// `CZ^L |−^L⟩|−^L⟩ = (|0^L⟩|−^L⟩ − |1^L⟩|+^L⟩)/√2`, the state the graph
/// circuit produces.
pub fn lcs2_reference() -> Result<StateVector> {
    let (z, o, p, m) = (code5::logical_zero(), code5::logical_one(), code5::logical_plus(), code5::logical_minus());
    two_register_sum(&[(1.0, &z, &m), (-1.0, &o, &p)])
}

/// `(|−^L⟩|0^L⟩ + |+^L⟩|1^L⟩)/√2`; equals [`lcs2_reference`] after `Z^L` on B.
pub fn lcs2_symmetric_form() -> Result<StateVector> {
    let (z, o, p, m) = (code5::logical_zero(), code5::logical_one(), code5::logical_plus(), code5::logical_minus());
    two_register_sum(&[(1.0, &m, &z), (1.0, &p, &o)])
}

/// The sequential (encode, fan, encode) preparation on 10 qubits for an input on
/// qubit 0: `E2E1(A)`, `H_6`, GHZ fan A→6, `E2E1(B)`. 23 CZ gates.
pub fn sequential_lcs2_circuit() -> Circuit {
    let mut c = REG_A.encoder(10);
    c.gate(Gate::H(REG_B.info_qubit())).expect("valid");
    c.gates(ghz_fan(&REG_A, REG_B.info_qubit())).expect("valid");
    c.append(&REG_B.encoder(10)).expect("same n");
    c
}

/// Pauli taking the graph-circuit state to the sequential one at `ψ = |+⟩`.
pub fn lcs2_frame_correction() -> PauliString {
    REG_A.logical_z(10).compose(&REG_B.logical_z(10)).expect("same n")
}

/// `α|0^L⟩|+⟩ + β|1^L⟩|−⟩` on six qubits: encode, `H_6`, fan to qubit 6.
pub fn build_logical_physical(psi: [C; 2]) -> Result<StateVector> {
    let zero = [C::new(1.0, 0.0), C::new(0.0, 0.0)];
    let mut s = StateVector::product(&[psi, zero, zero, zero, zero, zero])?;
    s.apply_gates(&REG_A.encoder(6).gate_list()?)?;
    s.apply(&Gate::H(5))?;
    s.apply_gates(&ghz_fan(&REG_A, 5))?;
    Ok(s)
}

/// `C^⌂_{1-5}` on the six-qubit GHZ state: `(|−^L⟩|0⟩ + |+^L⟩|1⟩)/√2`.
/// Equals `Z^L_A` times [`build_logical_physical`] at `ψ = |+⟩`.
pub fn graph_logical_physical() -> Result<StateVector> {
    let mut s = ghz6_state()?;
    s.apply_gates(&REG_A.pentagon(6).gate_list()?)?;
    Ok(s)
}

/// `∏_n CZ_{n,6} |+⟩^{⊗6}`.
pub fn ghz6_state() -> Result<StateVector> {
    let mut s = StateVector::init(&[Symbol::Plus; 6])?;
    s.apply_gates(&ghz_fan(&REG_A, 5))?;
    Ok(s)
}

#[derive(Debug, Clone, Serialize)]
pub struct PushThroughReport {
    pub fidelities: Vec<f64>,
    pub min_fidelity: f64,
    /// Minimum fidelity with the `Z^L` factor dropped.
    pub negative_control_min: f64,
    pub holds: bool,
    pub negative_control_fails: bool,
}

/// Sequential side: `E2E1(B) · fan(A→6) · H_6` with B starting in `|0⟩^5`.
fn push_lhs(input: &StateVector) -> Result<StateVector> {
    let mut s = input.tensor(&StateVector::zeros(5)?)?;
    s.apply(&Gate::H(REG_B.info_qubit()))?;
    s.apply_gates(&ghz_fan(&REG_A, REG_B.info_qubit()))?;
    s.apply_gates(&REG_B.encoder(10).gate_list()?)?;
    Ok(s)
}

/// Graph side: `[Z^L_B] C^⌂_B ∏∏ CZ` with B starting in `|+⟩^5`.
fn push_rhs(input: &StateVector, with_logical_z: bool) -> Result<StateVector> {
    let mut s = input.tensor(&StateVector::init(&[Symbol::Plus; 5])?)?;
    s.apply_gates(&cross_cz(&REG_A, &REG_B))?;
    s.apply_gates(&REG_B.pentagon(10).gate_list()?)?;
    if with_logical_z {
        s.apply_pauli(&REG_B.logical_z(10))?;
    }
    Ok(s)
}

/// Checks the push-through identity on `|+⟩^{⊗5}` and on `random_inputs`
/// Haar-ish random five-qubit states for register A.
pub fn push_through_check(random_inputs: usize, rng: &mut impl Rng) -> Result<PushThroughReport> {
    let mut inputs = vec![StateVector::init(&[Symbol::Plus; 5])?];
    for _ in 0..random_inputs {
        inputs.push(StateVector::random(5, rng)?);
    }
    let mut fidelities = Vec::with_capacity(inputs.len());
    let mut neg = Vec::with_capacity(inputs.len());
    for input in &inputs {
        let lhs = push_lhs(input)?;
        fidelities.push(fidelity(&lhs, &push_rhs(input, true)?)?);
        neg.push(fidelity(&lhs, &push_rhs(input, false)?)?);
    }
    let min_fidelity = fidelities.iter().copied().fold(1.0, f64::min);
    let negative_control_min = neg.iter().copied().fold(1.0, f64::min);
    Ok(PushThroughReport {
        holds: min_fidelity >= 1.0 - STATE_EQ_TOL,
        negative_control_fails: negative_control_min < 1.0 - STATE_EQ_TOL,
        fidelities,
        min_fidelity,
        negative_control_min,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::svsim::random_qubit;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn close(a: &StateVector, b: &StateVector) -> bool {
        fidelity(a, b).unwrap() > 1.0 - 1e-10
    }

    #[test]
    fn lcs2_matches_logical_form() {
        let (c, s, g) = build_lcs2().unwrap();
        assert_eq!(c.two_qubit_gate_count(), 35);
        assert!(g.degrees().iter().all(|&d| d == 7));
        assert!(close(&s, &lcs2_reference().unwrap()));
        let mut zb = s.clone();
        zb.apply_pauli(&REG_B.logical_z(10)).unwrap();
        assert!(close(&zb, &lcs2_symmetric_form().unwrap()));
        assert!(fidelity(&s, &lcs2_symmetric_form().unwrap()).unwrap() < 1e-9);
    }

    #[test]
    fn logical_z_on_a_swaps_labels() {
        let (_, mut s, _) = build_lcs2().unwrap();
        s.apply_pauli(&REG_A.logical_z(10)).unwrap();
        let (z, o, p, m) = (code5::logical_zero(), code5::logical_one(), code5::logical_plus(), code5::logical_minus());
        // CZ^L |+^L⟩|−^L⟩
        let want = two_register_sum(&[(1.0, &z, &m), (1.0, &o, &p)]).unwrap();
        assert!(close(&s, &want));
    }

    #[test]
    fn cz_order_irrelevant() {
        let (c, s, _) = build_lcs2().unwrap();
        let mut gates = c.gate_list().unwrap();
        gates[10..].reverse();
        let mut t = StateVector::zeros(10).unwrap();
        t.apply_gates(&gates).unwrap();
        assert!(close(&s, &t));
    }

    #[test]
    fn sequential_and_graph_agree_after_frame() {
        let c = sequential_lcs2_circuit();
        assert_eq!(c.two_qubit_gate_count(), 23);
        let mut seq = StateVector::init(&Symbol::parse_all("+000000000").unwrap()).unwrap();
        seq.apply_gates(&c.gate_list().unwrap()).unwrap();
        let (_, mut graph, _) = build_lcs2().unwrap();
        graph.apply_pauli(&lcs2_frame_correction()).unwrap();
        assert!(close(&seq, &graph));
        let (z, o, p, m) = (code5::logical_zero(), code5::logical_one(), code5::logical_plus(), code5::logical_minus());
        assert!(close(&seq, &two_register_sum(&[(1.0, &z, &p), (1.0, &o, &m)]).unwrap()));
    }

    #[test]
    fn logical_physical_states() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut s = build_logical_physical([C::new(h, 0.0), C::new(h, 0.0)]).unwrap();
        s.apply_pauli(&REG_A.logical_z(6)).unwrap();
        assert!(close(&s, &graph_logical_physical().unwrap()));
        let s = graph_logical_physical().unwrap();
        let zero = StateVector::init(&[Symbol::Zero]).unwrap();
        let one = StateVector::init(&[Symbol::One]).unwrap();
        let a = code5::logical_minus().tensor(&zero).unwrap();
        let b = code5::logical_plus().tensor(&one).unwrap();
        let want =
            StateVector::normalized(a.amplitudes().iter().zip(b.amplitudes()).map(|(x, y)| x + y).collect()).unwrap();
        assert!(close(&s, &want));

        let s = build_logical_physical([C::new(1.0, 0.0), C::new(0.0, 0.0)]).unwrap();
        let want = code5::logical_zero().tensor(&StateVector::init(&[Symbol::Plus]).unwrap()).unwrap();
        assert!(close(&s, &want));

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let psi = random_qubit(&mut rng);
        let s = build_logical_physical(psi).unwrap();
        let plus = StateVector::init(&[Symbol::Plus]).unwrap();
        let minus = StateVector::init(&[Symbol::Minus]).unwrap();
        let a = code5::logical_zero().tensor(&plus).unwrap();
        let b = code5::logical_one().tensor(&minus).unwrap();
        let want = StateVector::normalized(
            a.amplitudes().iter().zip(b.amplitudes()).map(|(x, y)| psi[0] * x + psi[1] * y).collect(),
        )
        .unwrap();
        assert!(close(&s, &want));
    }

    #[test]
    fn ghz6() {
        let s = ghz6_state().unwrap();
        let a = StateVector::init(&Symbol::parse_all("+++++0").unwrap()).unwrap();
        let b = StateVector::init(&Symbol::parse_all("-----1").unwrap()).unwrap();
        let want =
            StateVector::normalized(a.amplitudes().iter().zip(b.amplitudes()).map(|(x, y)| x + y).collect()).unwrap();
        assert!(close(&s, &want));
    }

    #[test]
    fn push_through() {
        let mut rng = ChaCha8Rng::seed_from_u64(20);
        let r = push_through_check(20, &mut rng).unwrap();
        assert_eq!(r.fidelities.len(), 21);
        assert!(r.holds, "{}", r.min_fidelity);
        assert!(r.negative_control_fails);
    }
}
