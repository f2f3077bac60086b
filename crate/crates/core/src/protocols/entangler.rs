//! Two five-qubit stars joined by one edge: nine CZ gates, local-Clifford
//! equivalent to the `K_{5,5}` graph state (25 CZ gates).

use serde::Serialize;

use crate::error::Result;
use crate::qcore::{Circuit, Gate};
use crate::stabsim::{graph_to_tableau, stab_equal, Graph};

/// Edges `0–5`, `0–{1..4}`, `5–{6..9}`.
pub fn nine_gate_graph() -> Graph {
    let edges = std::iter::once((0, 5)).chain((1..5).map(|i| (0, i))).chain((6..10).map(|j| (5, j)));
    Graph::from_edges(10, edges).expect("valid")
}

pub fn k55_graph() -> Graph {
    Graph::complete_bipartite(5, 5)
}

pub fn nine_gate_entangler() -> (Circuit, usize) {
    let c = nine_gate_graph().state_circuit();
    let n = c.two_qubit_gate_count();
    (c, n)
}

#[derive(Debug, Clone, Serialize)]
pub struct EntanglerReport {
    pub entangling_gates: usize,
    pub k55_edges: usize,
    /// `pivot(K_{5,5}, (0,5))` is exactly the nine-gate graph.
    pub pivot_matches: bool,
    /// Local Cliffords taking `|K_{5,5}⟩` to `|g'⟩`.
    pub certificate: Vec<Gate>,
    /// The certificate checked on tableaux.
    pub certificate_valid: bool,
}

pub fn entangler_report() -> Result<EntanglerReport> {
    let (_, entangling_gates) = nine_gate_entangler();
    let k = k55_graph();
    let pivoted = k.pivot(0, 5)?;
    let certificate = k.pivot_layer(0, 5)?;
    let mut t = graph_to_tableau(&k);
    t.apply_gates(&certificate)?;
    Ok(EntanglerReport {
        entangling_gates,
        k55_edges: k.edge_count(),
        pivot_matches: pivoted == nine_gate_graph(),
        certificate_valid: stab_equal(&t, &graph_to_tableau(&nine_gate_graph())),
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_gates_and_certificate() {
        let r = entangler_report().unwrap();
        assert_eq!(r.entangling_gates, 9);
        assert_eq!(r.k55_edges, 25);
        assert!(r.pivot_matches);
        assert!(r.certificate_valid);
        assert!(r.certificate.iter().all(|g| !g.is_two_qubit()));
    }
}
