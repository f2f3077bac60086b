//! Stabilizer-tableau simulation and the graph-state toolkit.

pub mod graph;
pub mod tableau;

pub use graph::{graph_to_tableau, tableau_to_graph, Graph};
pub use tableau::{first_difference, stab_equal, PauliBasis, TabOutcome, Tableau};
