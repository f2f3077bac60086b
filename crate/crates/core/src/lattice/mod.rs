//! Square-lattice execution model: every two-qubit operation is a global
//! CZ layer along one axis, ancillae are consumed by X measurements, and
//! Pauli byproducts are tracked classically.
//!
//! A cell is either *live* or *parked* in `|0⟩`. A CZ with `|0⟩` is the
//! identity, so a global layer only needs to touch adjacent live pairs.
//! Measured cells are returned to `|0⟩` and may be prepared again.

pub mod bridge;
pub mod schedule;

use std::collections::{BTreeMap, HashMap, VecDeque};

use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::{ByproductFrame, Gate, Pauli, PauliString};
use crate::stabsim::{PauliBasis, Tableau};
use crate::svsim::{Outcome, Symbol};

pub use bridge::{bridge_byproduct, dense_bridge};
pub use schedule::{
    named_schedule, run_named_schedule, simultaneous_encode_decode, verify_schedule, HopReport, RunOptions,
    Schedule, VerifyReport, SCHEDULE_NAMES,
};

pub type Rc = [usize; 2];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Horizontal,
    Vertical,
}

impl std::fmt::Display for Axis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Axis::Horizontal => "horizontal",
            Axis::Vertical => "vertical",
        })
    }
}

/// Operation counters. Only `global_cz` is the figure of merit.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct OpCountReport {
    pub global_cz: usize,
    pub horizontal: usize,
    pub vertical: usize,
    pub measured: usize,
    pub moves: usize,
    pub bridges: usize,
    pub local_gates: usize,
    pub prepared: usize,
}

#[derive(Debug, Clone)]
struct CellState {
    rc: Rc,
    live: bool,
    region: Option<String>,
}

/// Lattice state: the used cells, a tableau over them and a byproduct frame.
#[derive(Debug, Clone)]
pub struct Lattice {
    rows: usize,
    cols: usize,
    cells: Vec<CellState>,
    index: HashMap<Rc, usize>,
    labels: BTreeMap<String, usize>,
    tab: Tableau,
    frame: ByproductFrame,
    counts: OpCountReport,
    /// Outcomes of bridge cells measured before their bridge is closed.
    early: HashMap<usize, VecDeque<u8>>,
}

impl Lattice {
    /// `cells` lists every cell the run may touch, with an optional region tag.
    pub fn new(rows: usize, cols: usize, cells: &[(Rc, Option<String>)]) -> Result<Self> {
        let mut index = HashMap::new();
        let mut states = Vec::with_capacity(cells.len());
        for (i, (rc, region)) in cells.iter().enumerate() {
            if rc[0] >= rows || rc[1] >= cols {
                return Err(Error::Lattice(format!("cell {rc:?} outside {rows}x{cols} grid")));
            }
            if index.insert(*rc, i).is_some() {
                return Err(Error::Lattice(format!("cell {rc:?} listed twice")));
            }
            states.push(CellState { rc: *rc, live: false, region: region.clone() });
        }
        let n = states.len();
        Ok(Lattice {
            rows,
            cols,
            cells: states,
            index,
            labels: BTreeMap::new(),
            tab: Tableau::zeros(n),
            frame: ByproductFrame::new(n),
            counts: OpCountReport::default(),
            early: HashMap::new(),
        })
    }

    /// Plain grid with every cell usable.
    pub fn grid(rows: usize, cols: usize) -> Self {
        let cells: Vec<(Rc, Option<String>)> =
            (0..rows).flat_map(|r| (0..cols).map(move |c| ([r, c], None))).collect();
        Self::new(rows, cols, &cells).expect("cells are in range")
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn counts(&self) -> &OpCountReport {
        &self.counts
    }

    pub fn frame(&self) -> &ByproductFrame {
        &self.frame
    }

    pub fn tableau(&self) -> &Tableau {
        &self.tab
    }

    pub fn qubit(&self, rc: Rc) -> Result<usize> {
        self.index.get(&rc).copied().ok_or_else(|| Error::Lattice(format!("cell {rc:?} is not part of the layout")))
    }

    pub fn rc(&self, q: usize) -> Rc {
        self.cells[q].rc
    }

    pub fn is_live(&self, rc: Rc) -> bool {
        self.index.get(&rc).is_some_and(|&q| self.cells[q].live)
    }

    pub fn live_cells(&self) -> Vec<Rc> {
        self.cells.iter().filter(|c| c.live).map(|c| c.rc).collect()
    }

    pub fn label_cell(&self, label: &str) -> Option<Rc> {
        self.labels.get(label).map(|&q| self.cells[q].rc)
    }

    pub fn labels(&self) -> impl Iterator<Item = (&str, Rc)> {
        self.labels.iter().map(|(k, &q)| (k.as_str(), self.cells[q].rc))
    }

    pub fn set_label(&mut self, label: &str, rc: Rc) -> Result<()> {
        let q = self.qubit(rc)?;
        self.labels.insert(label.to_string(), q);
        Ok(())
    }

    /// Brings a parked cell to a product state. Preparing a live cell is an
    /// error: it may still be entangled.
    pub fn prepare(&mut self, rc: Rc, s: Symbol) -> Result<()> {
        let q = self.qubit(rc)?;
        if self.cells[q].live {
            return Err(Error::Lattice(format!("cell {rc:?} is live and cannot be re-prepared")));
        }
        match s {
            Symbol::Zero => {}
            Symbol::One => self.tab.apply(&Gate::X(q))?,
            Symbol::Plus => self.tab.apply(&Gate::H(q))?,
            Symbol::Minus => {
                self.tab.apply(&Gate::X(q))?;
                self.tab.apply(&Gate::H(q))?;
            }
        }
        self.cells[q].live = true;
        self.counts.prepared += 1;
        Ok(())
    }

    /// Applies a Clifford circuit directly to live cells (set-up only; it is
    /// not a lattice operation and is not counted).
    pub fn load(&mut self, cells: &[Rc], gates: &[Gate]) -> Result<()> {
        let qs: Vec<usize> = cells.iter().map(|&rc| self.qubit(rc)).collect::<Result<_>>()?;
        for &q in &qs {
            self.cells[q].live = true;
        }
        for g in gates {
            self.tab.apply(&g.map_qubits(|i| qs[i]))?;
        }
        Ok(())
    }

    /// Single-qubit Clifford on a live cell; the frame is pushed through it.
    pub fn local(&mut self, rc: Rc, g: impl Fn(usize) -> Gate) -> Result<()> {
        let q = self.qubit(rc)?;
        if !self.cells[q].live {
            return Err(Error::Lattice(format!("local gate on parked cell {rc:?}")));
        }
        let gate = g(q);
        if gate.is_two_qubit() {
            return Err(Error::InvalidGate(format!("{gate} is not a single-qubit gate")));
        }
        self.tab.apply(&gate)?;
        let p = PauliString::single(1, 0, self.frame.get(q)).conjugate(&gate.map_qubits(|_| 0))?.get(0);
        let (x, z) = p.bits();
        if x != self.frame.x(q) {
            self.frame.toggle_x(q);
        }
        if z != self.frame.z(q) {
            self.frame.toggle_z(q);
        }
        self.counts.local_gates += 1;
        Ok(())
    }

    fn neighbour(&self, rc: Rc, axis: Axis) -> Option<Rc> {
        let [r, c] = rc;
        match axis {
            Axis::Horizontal if c + 1 < self.cols => Some([r, c + 1]),
            Axis::Vertical if r + 1 < self.rows => Some([r + 1, c]),
            _ => None,
        }
    }

    /// Live pairs a global layer along `axis` would entangle.
    pub fn cz_pairs(&self, axis: Axis, region: Option<&str>) -> Vec<(Rc, Rc)> {
        let in_region = |q: usize| region.is_none_or(|r| self.cells[q].region.as_deref() == Some(r));
        let mut out = Vec::new();
        for (q, c) in self.cells.iter().enumerate() {
            if !c.live || !in_region(q) {
                continue;
            }
            if let Some(nb) = self.neighbour(c.rc, axis) {
                if let Some(&p) = self.index.get(&nb) {
                    if self.cells[p].live && in_region(p) {
                        out.push((c.rc, nb));
                    }
                }
            }
        }
        out
    }

    fn cz(&mut self, a: usize, b: usize) -> Result<()> {
        self.tab.apply(&Gate::Cz(a, b))?;
        if self.frame.x(b) {
            self.frame.toggle_z(a);
        }
        if self.frame.x(a) {
            self.frame.toggle_z(b);
        }
        Ok(())
    }

    /// One global CZ layer. With `region`, only cells tagged with it take
    /// part (used to model running two jobs one after the other).
    pub fn global_cz(&mut self, axis: Axis, region: Option<&str>) -> Result<Vec<(Rc, Rc)>> {
        let pairs = self.cz_pairs(axis, region);
        for &(a, b) in &pairs {
            let (qa, qb) = (self.qubit(a)?, self.qubit(b)?);
            self.cz(qa, qb)?;
        }
        self.counts.global_cz += 1;
        match axis {
            Axis::Horizontal => self.counts.horizontal += 1,
            Axis::Vertical => self.counts.vertical += 1,
        }
        Ok(pairs)
    }

    /// X measurement of a live cell. Returns the outcome referred to the
    /// ideal (byproduct-free) run and parks the cell.
    pub fn measure_x(&mut self, rc: Rc, rng: &mut dyn RngCore) -> Result<u8> {
        let q = self.qubit(rc)?;
        if !self.cells[q].live {
            return Err(Error::Lattice(format!("measuring parked cell {rc:?}")));
        }
        if self.labels.values().any(|&l| l == q) {
            return Err(Error::Lattice(format!("cell {rc:?} holds a data qubit")));
        }
        let m = self.tab.measure(q, PauliBasis::X, Outcome::Sample(rng))?.outcome;
        let ideal = m ^ u8::from(self.frame.z(q));
        if self.frame.x(q) {
            self.frame.toggle_x(q);
        }
        if self.frame.z(q) {
            self.frame.toggle_z(q);
        }
        self.tab.apply(&Gate::H(q))?;
        if m == 1 {
            self.tab.apply(&Gate::X(q))?;
        }
        self.cells[q].live = false;
        self.counts.measured += 1;
        Ok(ideal)
    }

    /// Measures a bridge cell whose CZs are all in place, ahead of the rest
    /// of its bridge; the outcome is used when the bridge is closed.
    pub fn measure_early(&mut self, rc: Rc, rng: &mut dyn RngCore) -> Result<()> {
        let m = self.measure_x(rc, rng)?;
        let q = self.qubit(rc)?;
        self.early.entry(q).or_default().push_back(m);
        Ok(())
    }

    /// Contracts an already entangled chain `path[0] – … – path[last]` by
    /// measuring its interior; the endpoints end up joined by a CZ.
    pub fn bridge(&mut self, path: &[Rc], rng: &mut dyn RngCore) -> Result<()> {
        if path.len() < 2 {
            return Err(Error::Lattice("bridge needs two endpoints".into()));
        }
        if (path.len() - 2) % 2 == 1 {
            return Err(Error::Lattice(format!(
                "bridge {:?} -> {:?} has an odd interior; its endpoints share a sublattice",
                path[0],
                path[path.len() - 1]
            )));
        }
        for w in path.windows(2) {
            let d = w[0][0].abs_diff(w[1][0]) + w[0][1].abs_diff(w[1][1]);
            if d != 1 {
                return Err(Error::Lattice(format!("bridge step {:?} -> {:?} is not a lattice edge", w[0], w[1])));
            }
        }
        let (u, v) = (self.qubit(path[0])?, self.qubit(path[path.len() - 1])?);
        let mut outcomes = Vec::with_capacity(path.len() - 2);
        for &rc in &path[1..path.len() - 1] {
            let q = self.qubit(rc)?;
            if self.cells[q].live {
                outcomes.push(self.measure_x(rc, rng)?);
            } else {
                let m = self.early.get_mut(&q).and_then(VecDeque::pop_front);
                outcomes.push(m.ok_or_else(|| Error::Lattice(format!("bridge cell {rc:?} was never entangled")))?);
            }
        }
        let (zu, zv) = bridge_byproduct(&outcomes)?;
        if zu {
            self.frame.toggle_z(u);
        }
        if zv {
            self.frame.toggle_z(v);
        }
        self.counts.bridges += 1;
        Ok(())
    }

    /// Teleports the qubit at `from` one cell to `to`, which must be joined to
    /// it by a CZ and nothing else. The move applies H; `compensate` undoes
    /// it with a local H on `to`. A data label follows the qubit.
    pub fn move_qubit(&mut self, from: Rc, to: Rc, compensate: bool, rng: &mut dyn RngCore) -> Result<()> {
        let (qf, qt) = (self.qubit(from)?, self.qubit(to)?);
        let label = self.labels.iter().find(|(_, &q)| q == qf).map(|(k, _)| k.clone());
        if let Some(l) = &label {
            self.labels.remove(l);
        }
        let s = self.measure_x(from, rng)?;
        if let Some(l) = label {
            if self.labels.values().any(|&q| q == qt) {
                return Err(Error::Lattice(format!("move target {to:?} already holds a data qubit")));
            }
            self.labels.insert(l, qt);
        }
        if compensate {
            self.local(to, Gate::H)?;
            self.counts.local_gates -= 1;
            if s == 1 {
                self.frame.toggle_z(qt);
            }
        } else if s == 1 {
            self.frame.toggle_x(qt);
        }
        self.counts.moves += 1;
        Ok(())
    }

    /// CZ between distant live cells along `path`: the interior is prepared,
    /// chained with individual CZs and measured out.
    pub fn distant_cz(&mut self, path: &[Rc], rng: &mut dyn RngCore) -> Result<()> {
        if path.len() < 2 || (path.len() - 2) % 2 == 1 {
            return Err(Error::Lattice("distant CZ needs an even number of interior cells".into()));
        }
        for &rc in &path[1..path.len() - 1] {
            self.prepare(rc, Symbol::Plus)?;
        }
        for w in path.windows(2) {
            let (a, b) = (self.qubit(w[0])?, self.qubit(w[1])?);
            self.cz(a, b)?;
        }
        self.bridge(path, rng)
    }

    /// Stabilizer state of `cells` (in order) with the frame undone, or the
    /// cells outside the set that are still entangled.
    pub fn corrected_state(&self, cells: &[Rc]) -> std::result::Result<Vec<PauliString>, Vec<Rc>> {
        let qs: Vec<usize> = match cells.iter().map(|&rc| self.qubit(rc)).collect::<Result<Vec<_>>>() {
            Ok(q) => q,
            Err(_) => return Err(Vec::new()),
        };
        let mut t = self.tab.clone();
        t.apply_pauli(&self.frame.to_pauli()).expect("frame matches tableau");
        t.restrict(&qs).map_err(|left| left.into_iter().map(|q| self.cells[q].rc).collect())
    }

    /// Pauli frame restricted to `cells`.
    pub fn frame_on(&self, cells: &[Rc]) -> Vec<Pauli> {
        cells.iter().map(|&rc| self.index.get(&rc).map_or(Pauli::I, |&q| self.frame.get(q))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stabsim::Graph;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn canonical(rows: Vec<PauliString>) -> Vec<PauliString> {
        let n = rows.first().map_or(0, PauliString::n);
        let order: Vec<(usize, bool)> = (0..n).flat_map(|q| [(q, true), (q, false)]).collect();
        let mut rows = rows;
        crate::stabsim::tableau::row_reduce(&mut rows, &order);
        rows
    }

    #[test]
    fn global_layers_build_a_cluster() {
        let mut l = Lattice::grid(3, 3);
        for r in 0..3 {
            for c in 0..3 {
                l.prepare([r, c], Symbol::Plus).unwrap();
            }
        }
        l.global_cz(Axis::Horizontal, None).unwrap();
        l.global_cz(Axis::Vertical, None).unwrap();
        let g = Graph::grid(3, 3).to_tableau();
        assert_eq!(l.tableau().canonical_generators(), g.canonical_generators());
        assert_eq!(l.counts().global_cz, 2);
    }

    #[test]
    fn global_layer_is_an_involution() {
        let mut l = Lattice::grid(2, 4);
        for c in 0..4 {
            l.prepare([0, c], Symbol::Plus).unwrap();
            l.prepare([1, c], Symbol::Minus).unwrap();
        }
        let before = l.tableau().canonical_generators();
        l.global_cz(Axis::Vertical, None).unwrap();
        assert_ne!(l.tableau().canonical_generators(), before);
        l.global_cz(Axis::Vertical, None).unwrap();
        assert_eq!(l.tableau().canonical_generators(), before);
    }

    #[test]
    fn distant_cz_matches_direct_cz() {
        for interior in [2usize, 4] {
            for seed in 0..8 {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut l = Lattice::grid(1, interior + 2);
                let v = [0, interior + 1];
                l.prepare([0, 0], Symbol::Plus).unwrap();
                l.prepare(v, Symbol::Minus).unwrap();
                let path: Vec<Rc> = (0..interior + 2).map(|c| [0, c]).collect();
                l.distant_cz(&path, &mut rng).unwrap();
                let got = canonical(l.corrected_state(&[[0, 0], v]).unwrap());
                let mut want = Tableau::init(&[Symbol::Plus, Symbol::Minus]);
                want.apply(&Gate::Cz(0, 1)).unwrap();
                assert_eq!(got, want.canonical_generators());
            }
        }
        let mut l = Lattice::grid(1, 5);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        l.prepare([0, 0], Symbol::Plus).unwrap();
        l.prepare([0, 4], Symbol::Plus).unwrap();
        let path: Vec<Rc> = (0..5).map(|c| [0, c]).collect();
        assert!(l.distant_cz(&path, &mut rng).is_err());
    }

    #[test]
    fn move_with_compensation_is_identity() {
        for seed in 0..8 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut fresh = Lattice::grid(1, 2);
            fresh.prepare([0, 0], Symbol::One).unwrap();
            fresh.prepare([0, 1], Symbol::Plus).unwrap();
            fresh.set_label("d", [0, 0]).unwrap();
            fresh.global_cz(Axis::Horizontal, None).unwrap();
            fresh.move_qubit([0, 0], [0, 1], true, &mut rng).unwrap();
            assert_eq!(fresh.label_cell("d"), Some([0, 1]));
            let got = canonical(fresh.corrected_state(&[[0, 1]]).unwrap());
            assert_eq!(got, Tableau::init(&[Symbol::One]).canonical_generators());
        }
    }

    #[test]
    fn preparing_a_live_cell_fails() {
        let mut l = Lattice::grid(1, 2);
        l.prepare([0, 0], Symbol::Plus).unwrap();
        assert!(l.prepare([0, 0], Symbol::Plus).is_err());
    }
}
