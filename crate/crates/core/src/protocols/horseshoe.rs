//! Four-logical-qubit horseshoe `CZ^L_AB CZ^L_BC CZ^L_CD |ψ^L⟩|+^L⟩|+^L⟩|φ^L⟩`.
//!
//! Registers A, B, C, D occupy qubits 0–4, 5–9, 10–14, 15–19; ψ enters on
//! qubit 0, φ on qubit 15, and B, C grow from qubits 5 and 10.

use std::fmt;

use num_complex::Complex64 as C;
use serde::Serialize;

use super::cluster::{cross_cz, ghz_fan};
use crate::code5::{self, LogicalRegister};
use crate::error::{Error, Result};
use crate::qcore::{Circuit, Gate};
use crate::stabsim::{first_difference, stab_equal, tableau_to_graph, Graph, Tableau};
use crate::svsim::{fidelity, StateVector, Symbol, STATE_EQ_TOL};

pub const REGS: [LogicalRegister; 4] =
    [LogicalRegister::at(0), LogicalRegister::at(5), LogicalRegister::at(10), LogicalRegister::at(15)];
const N: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    /// A→B by fan, then B and D both fan into qubit 11 before C is encoded.
    /// 51 two-qubit gates.
    Chained,
    /// Qubits 6 and 11 are linked first, then A and D fan into them.
    /// 47 two-qubit gates.
    Bridged,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Tableau,
    Dense,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tableau" => Ok(Mode::Tableau),
            "dense" => Ok(Mode::Dense),
            _ => Err(Error::Parse(format!("unknown mode {s:?}"))),
        }
    }
}

impl std::str::FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "chained" => Ok(Route::Chained),
            "bridged" => Ok(Route::Bridged),
            _ => Err(Error::Parse(format!("unknown route {s:?}"))),
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Chained => "chained",
            Route::Bridged => "bridged",
        })
    }
}

/// Gate sequence from `|ψ⟩_0 |φ⟩_15` and `|0⟩` elsewhere.
pub fn horseshoe_circuit(route: Route) -> Circuit {
    let [a, b, c, d] = REGS;
    let (hb, hc) = (b.info_qubit(), c.info_qubit());
    let mut circ = a.encoder(N);
    circ.append(&d.encoder(N)).expect("same n");
    circ.gates([Gate::H(hb), Gate::H(hc)]).expect("valid");
    match route {
        Route::Chained => {
            circ.gates(ghz_fan(&a, hb)).expect("valid");
            circ.append(&b.encoder(N)).expect("same n");
            circ.gates(ghz_fan(&b, hc)).expect("valid");
            circ.gates(ghz_fan(&d, hc)).expect("valid");
            circ.append(&c.encoder(N)).expect("same n");
        }
        Route::Bridged => {
            circ.gate(Gate::Cz(hb, hc)).expect("valid");
            circ.gates(ghz_fan(&a, hb)).expect("valid");
            circ.gates(ghz_fan(&d, hc)).expect("valid");
            circ.append(&b.encoder(N)).expect("same n");
            circ.append(&c.encoder(N)).expect("same n");
        }
    }
    circ
}

/// Four pentagons with complete bipartite links A–B, B–C, C–D.
pub fn horseshoe_graph() -> Graph {
    let c5 = Graph::cycle(5);
    let mut g = c5.disjoint_union(&c5).disjoint_union(&c5).disjoint_union(&c5);
    for w in REGS.windows(2) {
        for gate in cross_cz(&w[0], &w[1]) {
            if let Gate::Cz(m, n) = gate {
                g.add_edge(m, n).expect("distinct registers");
            }
        }
    }
    g
}

fn link_gates() -> Vec<Gate> {
    REGS.windows(2).flat_map(|w| cross_cz(&w[0], &w[1])).collect()
}

/// Identifies `|0⟩, |1⟩, |+⟩, |−⟩` (up to phase) so tableau mode can take
/// amplitude inputs.
pub fn as_symbol(psi: [C; 2]) -> Option<Symbol> {
    [Symbol::Zero, Symbol::One, Symbol::Plus, Symbol::Minus].into_iter().find(|s| {
        let a = s.amplitudes();
        (a[0].conj() * psi[0] + a[1].conj() * psi[1]).norm() > 1.0 - 1e-12
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct HorseshoeReport {
    pub route: Route,
    pub mode: Mode,
    pub two_qubit_gates: usize,
    pub verified: bool,
    /// Dense mode only.
    pub fidelity: Option<f64>,
    pub endpoint_degrees: Vec<usize>,
    pub interior_degrees: Vec<usize>,
    /// Tableau mode: first canonical generator that differs, if any.
    pub diagnostic: Option<String>,
}

/// Builds the horseshoe and checks it against an independent construction
/// (each register encoded on its own, then 75 cross CZs).
pub fn build_horseshoe_logical(psi: [C; 2], phi: [C; 2], route: Route, mode: Mode) -> Result<HorseshoeReport> {
    let circ = horseshoe_circuit(route);
    let gates = circ.gate_list()?;
    let g = horseshoe_graph();
    let deg = |regs: &[LogicalRegister]| regs.iter().flat_map(|r| r.qubits).map(|q| g.degree(q)).collect();
    let mut report = HorseshoeReport {
        route,
        mode,
        two_qubit_gates: circ.two_qubit_gate_count(),
        verified: false,
        fidelity: None,
        endpoint_degrees: deg(&[REGS[0], REGS[3]]),
        interior_degrees: deg(&[REGS[1], REGS[2]]),
        diagnostic: None,
    };
    match mode {
        Mode::Tableau => {
            let (s, t) = match (as_symbol(psi), as_symbol(phi)) {
                (Some(s), Some(t)) => (s, t),
                _ => return Err(Error::UnsupportedBasis("tableau mode needs inputs in {0,1,+,-}".into())),
            };
            let mut init = [Symbol::Zero; N];
            init[REGS[0].info_qubit()] = s;
            init[REGS[3].info_qubit()] = t;
            let mut built = Tableau::init(&init);
            built.apply_gates(&gates)?;
            init[REGS[1].info_qubit()] = Symbol::Plus;
            init[REGS[2].info_qubit()] = Symbol::Plus;
            let mut want = Tableau::init(&init);
            for r in REGS {
                want.apply_gates(&r.encoder(N).gate_list()?)?;
            }
            want.apply_gates(&link_gates())?;
            report.verified = stab_equal(&built, &want);
            report.diagnostic = first_difference(&built, &want).map(|(a, b)| {
                let show = |p: Option<crate::qcore::PauliString>| p.map_or("-".to_string(), |p| p.to_string());
                format!("built {} vs target {}", show(a), show(b))
            });
        }
        Mode::Dense => {
            let zero = [C::new(1.0, 0.0), C::new(0.0, 0.0)];
            let mut locals = [zero; N];
            locals[REGS[0].info_qubit()] = psi;
            locals[REGS[3].info_qubit()] = phi;
            let mut built = StateVector::product(&locals)?;
            built.apply_gates(&gates)?;
            let plus = code5::logical_plus();
            let mut want = code5::logical_state(psi).tensor(&plus)?.tensor(&plus)?.tensor(&code5::logical_state(phi))?;
            want.apply_gates(&link_gates())?;
            let f = fidelity(&built, &want)?;
            report.fidelity = Some(f);
            report.verified = f >= 1.0 - STATE_EQ_TOL;
        }
    }
    Ok(report)
}

/// For `ψ = φ = |+⟩` the horseshoe is the graph state of [`horseshoe_graph`]
/// up to `Z` on every qubit; returns the graph read back from the tableau and
/// the local layer.
pub fn horseshoe_graph_from_tableau(route: Route) -> Result<(Graph, Vec<Gate>)> {
    let mut init = [Symbol::Zero; N];
    init[REGS[0].info_qubit()] = Symbol::Plus;
    init[REGS[3].info_qubit()] = Symbol::Plus;
    let mut t = Tableau::init(&init);
    t.apply_gates(&horseshoe_circuit(route).gate_list()?)?;
    Ok(tableau_to_graph(&t))
}

/// Twelve-qubit slice `A, 6, 11, D` after encoding A and D and linking
/// qubits 6 and 11, with its reference
/// `|ψ^L⟩_A (|0⟩_6|+⟩_11 + |1⟩_6|−⟩_11)/√2 |φ^L⟩_D`.
pub fn horseshoe_intermediate(psi: [C; 2], phi: [C; 2]) -> Result<(StateVector, StateVector)> {
    let a = LogicalRegister::at(0);
    let d = LogicalRegister::at(7);
    let zero = [C::new(1.0, 0.0), C::new(0.0, 0.0)];
    let mut locals = [zero; 12];
    locals[a.info_qubit()] = psi;
    locals[d.info_qubit()] = phi;
    let mut s = StateVector::product(&locals)?;
    s.apply_gates(&a.encoder(12).gate_list()?)?;
    s.apply_gates(&d.encoder(12).gate_list()?)?;
    s.apply_gates(&[Gate::H(5), Gate::H(6), Gate::Cz(5, 6)])?;

    let pair = {
        let x = StateVector::init(&Symbol::parse_all("0+")?)?;
        let y = StateVector::init(&Symbol::parse_all("1-")?)?;
        StateVector::normalized(x.amplitudes().iter().zip(y.amplitudes()).map(|(p, q)| p + q).collect())?
    };
    let want = code5::logical_state(psi).tensor(&pair)?.tensor(&code5::logical_state(phi))?;
    Ok((s, want))
}
