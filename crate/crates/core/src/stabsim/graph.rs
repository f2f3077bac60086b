//! Simple undirected graphs, graph states, local complementation and pivot.

use std::collections::BTreeSet;
use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use super::tableau::{row_reduce, Tableau};
use crate::error::{Error, Result};
use crate::qcore::{Circuit, Gate, Pauli, PauliString, Phase};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph", into = "RawGraph")]
pub struct Graph {
    adj: Vec<BTreeSet<usize>>,
}

#[derive(Serialize, Deserialize)]
struct RawGraph {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<RawGraph> for Graph {
    type Error = Error;
    fn try_from(raw: RawGraph) -> Result<Self> {
        Graph::from_edges(raw.n, raw.edges.iter().map(|&[u, v]| (u, v)))
    }
}

impl From<Graph> for RawGraph {
    fn from(g: Graph) -> Self {
        RawGraph { n: g.n(), edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect() }
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![BTreeSet::new(); n] }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, edges).expect("valid edges")
    }

    pub fn cycle(n: usize) -> Self {
        Graph::from_edges(n, (0..n).map(|u| (u, (u + 1) % n))).expect("valid edges")
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|u| (u - 1, u))).expect("valid edges")
    }

    /// Complete bipartite graph between `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
        Graph::from_edges(a + b, edges).expect("valid edges")
    }

    /// Row-major `rows × cols` nearest-neighbour grid.
    pub fn grid(rows: usize, cols: usize) -> Self {
        let mut g = Graph::empty(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    g.add_edge(v, v + 1).expect("valid edge");
                }
                if r + 1 < rows {
                    g.add_edge(v, v + cols).expect("valid edge");
                }
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n() {
            return Err(Error::Graph(format!("vertex {v} out of range for {} vertices", self.n())));
        }
        Ok(())
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Graph(format!("self-loop at {u}")));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn toggle_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if self.has_edge(u, v) {
            self.adj[u].remove(&v);
            self.adj[v].remove(&u);
            Ok(())
        } else {
            self.add_edge(u, v)
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u).is_some_and(|s| s.contains(&v))
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n()).map(|v| self.degree(v)).collect()
    }

    /// Sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, s)| s.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    /// Disjoint union, `other`'s vertices shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let mut g = Graph::empty(off + other.n());
        for (u, v) in self.edges() {
            g.add_edge(u, v).expect("valid edge");
        }
        for (u, v) in other.edges() {
            g.add_edge(u + off, v + off).expect("valid edge");
        }
        g
    }

    /// Toggles every edge inside the neighbourhood of `v`.
    pub fn local_complement(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        let mut g = self.clone();
        let nb: Vec<usize> = self.adj[v].iter().copied().collect();
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                g.toggle_edge(a, b)?;
            }
        }
        Ok(g)
    }

    /// Edge complementation along `(u, v)`: local complements at `u`, `v`, `u`.
    pub fn pivot(&self, u: usize, v: usize) -> Result<Graph> {
        if !self.has_edge(u, v) {
            return Err(Error::Graph(format!("pivot needs an edge, ({u}, {v}) is not one")));
        }
        self.local_complement(u)?.local_complement(v)?.local_complement(u)
    }

    /// Local Clifford gates `U` with `U |G⟩ = |τ_v(G)⟩` (up to global phase):
    /// `√X†` on `v` and `√Z` on each neighbour.
    pub fn local_complement_layer(&self, v: usize) -> Result<Vec<Gate>> {
        self.check_vertex(v)?;
        let mut gates = vec![Gate::H(v), Gate::Rz(v, -FRAC_PI_2), Gate::H(v)];
        gates.extend(self.adj[v].iter().map(|&w| Gate::S(w)));
        Ok(gates)
    }

    /// Local Clifford certificate for [`pivot`](Self::pivot), gate by gate.
    pub fn pivot_layer(&self, u: usize, v: usize) -> Result<Vec<Gate>> {
        if !self.has_edge(u, v) {
            return Err(Error::Graph(format!("pivot needs an edge, ({u}, {v}) is not one")));
        }
        let mut gates = self.local_complement_layer(u)?;
        let g1 = self.local_complement(u)?;
        gates.extend(g1.local_complement_layer(v)?);
        let g2 = g1.local_complement(v)?;
        gates.extend(g2.local_complement_layer(u)?);
        Ok(gates)
    }

    /// `|+⟩^n` preparation from `|0⟩^n` followed by one CZ per edge.
    pub fn state_circuit(&self) -> Circuit {
        let n = self.n();
        let gates = (0..n)
            .map(Gate::H)
            .chain(self.edges().into_iter().map(|(u, v)| Gate::Cz(u, v)));
        Circuit::from_gates(n, gates).expect("valid targets")
    }

    /// Graph-state stabilizers `K_v = X_v ∏_{w ∈ N(v)} Z_w`.
    pub fn stabilizer(&self, v: usize) -> PauliString {
        let mut p = PauliString::single(self.n(), v, Pauli::X);
        for &w in &self.adj[v] {
            p.set(w, Pauli::Z);
        }
        p
    }

    pub fn to_tableau(&self) -> Tableau {
        let n = self.n();
        let destab = (0..n).map(|v| PauliString::single(n, v, Pauli::Z)).collect();
        let stab = (0..n).map(|v| self.stabilizer(v)).collect();
        Tableau::from_rows(destab, stab).expect("graph states are valid tableaux")
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Graph> {
        Ok(serde_json::from_str(s)?)
    }
}

pub fn graph_to_tableau(g: &Graph) -> Tableau {
    g.to_tableau()
}

/// Reduces a stabilizer state to graph form.
///
/// Returns the graph and the local Clifford layer `L` (applied in order)
/// with `L |t⟩ = |G⟩`. The layer uses only `H`, `S` and `Z`. Ties in pivot
/// choice go to the lowest qubit index.
pub fn tableau_to_graph(t: &Tableau) -> (Graph, Vec<Gate>) {
    let n = t.n();
    let mut rows = t.stabilizers().to_vec();
    let mut layer = Vec::new();
    let apply = |rows: &mut Vec<PauliString>, layer: &mut Vec<Gate>, g: Gate| {
        for r in rows.iter_mut() {
            r.conjugate_in_place(&g).expect("Clifford layer gate");
        }
        layer.push(g);
    };

    let x_cols: Vec<(usize, bool)> = (0..n).map(|q| (q, true)).collect();
    let pivots = row_reduce(&mut rows, &x_cols);
    for q in 0..n {
        if !pivots.contains(&(q, true)) {
            apply(&mut rows, &mut layer, Gate::H(q));
        }
    }
    // X block is now invertible; reduce it to the identity.
    let pivots = row_reduce(&mut rows, &x_cols);
    debug_assert_eq!(pivots.len(), n);
    for q in 0..n {
        if rows[q].z_bits()[q] {
            apply(&mut rows, &mut layer, Gate::S(q));
        }
    }
    for q in 0..n {
        if rows[q].phase() == Phase::MINUS_ONE {
            apply(&mut rows, &mut layer, Gate::Z(q));
        }
    }
    let mut g = Graph::empty(n);
    for (u, row) in rows.iter().enumerate() {
        for w in row.z_bits().iter_ones() {
            if w > u {
                g.add_edge(u, w).expect("symmetric adjacency");
            }
        }
    }
    (g, layer)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stabsim::tableau::stab_equal;
    use crate::svsim::Symbol;

    #[test]
    fn pentagon_stabilizers() {
        let g = Graph::cycle(5);
        let t = g.to_tableau();
        assert_eq!(t.stabilizers()[0], "+XZIIZ".parse().unwrap());
        assert_eq!(t.stabilizers()[2], "+IZXZI".parse().unwrap());
    }

    #[test]
    fn empty_graph_is_plus_state() {
        let t = Graph::empty(3).to_tableau();
        assert!(stab_equal(&t, &Tableau::init(&[Symbol::Plus; 3])));
    }

    #[test]
    fn circuit_builds_graph_state() {
        let g = Graph::grid(2, 3);
        let mut t = Tableau::zeros(6);
        t.apply_gates(g.state_circuit().gate_list().unwrap().iter()).unwrap();
        assert!(stab_equal(&t, &g.to_tableau()));
    }

    #[test]
    fn leaf_local_complement_is_noop() {
        let g = Graph::path(2);
        assert_eq!(g.local_complement(0).unwrap(), g);
    }

    #[test]
    fn local_complement_involution() {
        let g = Graph::complete_bipartite(2, 3);
        for v in 0..5 {
            assert_eq!(g.local_complement(v).unwrap().local_complement(v).unwrap(), g);
        }
    }

    #[test]
    fn pivot_requires_edge() {
        assert!(Graph::path(3).pivot(0, 2).is_err());
    }

    #[test]
    fn round_trip_has_empty_layer() {
        let g = Graph::cycle(5);
        let (back, layer) = tableau_to_graph(&g.to_tableau());
        assert_eq!(back, g);
        assert!(layer.is_empty());
    }

    #[test]
    fn json_edge_list() {
        let g = Graph::path(3);
        assert_eq!(g.to_json().unwrap(), r#"{"n":3,"edges":[[0,1],[1,2]]}"#);
        assert_eq!(Graph::from_json(&g.to_json().unwrap()).unwrap(), g);
        assert!(Graph::from_json(r#"{"n":2,"edges":[[1,1]]}"#).is_err());
    }

    #[test]
    fn local_complement_layer_maps_graph_states() {
        let g = Graph::complete_bipartite(2, 2).disjoint_union(&Graph::path(3));
        for v in 0..g.n() {
            let mut t = g.to_tableau();
            t.apply_gates(&g.local_complement_layer(v).unwrap()).unwrap();
            assert!(stab_equal(&t, &g.local_complement(v).unwrap().to_tableau()), "vertex {v}");
        }
    }

    #[test]
    fn reduction_of_product_states() {
        let t = Tableau::init(&Symbol::parse_all("0+1-").unwrap());
        let (g, layer) = tableau_to_graph(&t);
        assert_eq!(g.edge_count(), 0);
        let mut t2 = t.clone();
        t2.apply_gates(&layer).unwrap();
        assert!(stab_equal(&t2, &g.to_tableau()));
    }
}
