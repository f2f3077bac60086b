//! Schedule files, the named layouts and the verifier.

use std::collections::{BTreeMap, HashMap};

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Axis, Lattice, OpCountReport, Rc};
use crate::code5;
use crate::error::{Error, Result};
use crate::protocols::cluster::{ghz_fan, REG_A, REG_B};
use crate::protocols::horseshoe::{horseshoe_circuit, Route};
use crate::qcore::{Circuit, Gate, PauliString};
use crate::stabsim::tableau::row_reduce;
use crate::stabsim::Tableau;
use crate::svsim::Symbol;

pub const SCHEDULE_NAMES: [&str; 6] = ["E1_lattice", "E2_lattice", "GHZ6_lattice", "LP_full", "hop", "horseshoe_lattice"];

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CellSpec {
    pub rc: Rc,
    /// `data:<label>`, `ancilla` or `inactive`.
    #[serde(default = "ancilla")]
    pub role: String,
    #[serde(default = "zero")]
    pub init: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub region: Option<String>,
}

fn ancilla() -> String {
    "ancilla".into()
}

fn zero() -> String {
    "0".into()
}

/// Cells loaded with an encoded logical state before the schedule starts.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Preload {
    pub cells: Vec<Rc>,
    pub input: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LocalGate {
    pub rc: Rc,
    pub gate: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MoveSpec {
    pub from: Rc,
    pub to: Rc,
    #[serde(default)]
    pub compensate: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Step {
    Prepare {
        cells: Vec<Rc>,
        symbol: String,
    },
    Local {
        gates: Vec<LocalGate>,
    },
    GlobalCz {
        axis: Axis,
        /// Regions served by this layer at once; sequential runs repeat the
        /// layer once per region.
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        regions: Vec<String>,
    },
    Measure {
        /// Bridge cells measured before their bridge closes.
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        early: Vec<Rc>,
        #[serde(default)]
        bridges: Vec<Vec<Rc>>,
        #[serde(default)]
        moves: Vec<MoveSpec>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TargetCircuit {
    Named(String),
    Explicit(Circuit),
}

/// Expected final state of the data qubits: `circuit` applied to `inputs`,
/// indexed by `labels`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Target {
    pub labels: Vec<String>,
    pub inputs: Vec<String>,
    pub circuit: TargetCircuit,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Schedule {
    pub name: String,
    pub grid: [usize; 2],
    pub cells: Vec<CellSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub preload: Vec<Preload>,
    pub steps: Vec<Step>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<Target>,
}

impl Schedule {
    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// GlobalCZ layers in a simultaneous run.
    pub fn global_cz_steps(&self) -> usize {
        self.steps.iter().filter(|s| matches!(s, Step::GlobalCz { .. })).count()
    }

    /// Cells tagged with `region`.
    pub fn region_cells(&self, region: &str) -> Vec<Rc> {
        self.cells.iter().filter(|c| c.region.as_deref() == Some(region)).map(|c| c.rc).collect()
    }
}

/// Inputs substituted for `psi`/`phi` and run switches.
#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    pub psi: Symbol,
    pub phi: Symbol,
    /// Repeat region-shared layers once per region.
    pub sequential: bool,
    /// Leave this cell unmeasured (negative control).
    pub skip: Option<Rc>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { psi: Symbol::Plus, phi: Symbol::Plus, sequential: false, skip: None }
    }
}

fn symbol(token: &str, opts: &RunOptions) -> Result<Symbol> {
    match token {
        "psi" => Ok(opts.psi),
        "phi" => Ok(opts.phi),
        t if t.chars().count() == 1 => Symbol::from_char(t.chars().next().unwrap_or('?')),
        t => Err(Error::Parse(format!("unknown input symbol {t:?}"))),
    }
}

fn local_gate(name: &str) -> Result<fn(usize) -> Gate> {
    Ok(match name {
        "H" => Gate::H,
        "X" => Gate::X,
        "Y" => Gate::Y,
        "Z" => Gate::Z,
        "S" => Gate::S,
        g => return Err(Error::Parse(format!("unsupported local gate {g:?}"))),
    })
}

/// Executes a schedule on a fresh lattice.
pub fn run(schedule: &Schedule, opts: &RunOptions, rng: &mut dyn RngCore) -> Result<Lattice> {
    let cells: Vec<(Rc, Option<String>)> = schedule
        .cells
        .iter()
        .filter(|c| c.role != "inactive")
        .map(|c| (c.rc, c.region.clone()))
        .collect();
    let mut l = Lattice::new(schedule.grid[0], schedule.grid[1], &cells)?;
    // A data cell that starts parked takes its label at its last preparation;
    // before that it may serve as an ancilla.
    let mut pending: HashMap<(usize, Rc), String> = HashMap::new();
    for c in &schedule.cells {
        match c.role.as_str() {
            "inactive" | "ancilla" => {}
            r => match r.strip_prefix("data:") {
                Some(label) if c.init == "none" => {
                    let last = schedule.steps.iter().rposition(|st| matches!(st, Step::Prepare { cells, .. } if cells.contains(&c.rc)));
                    match last {
                        Some(i) => pending.insert((i, c.rc), label.to_string()),
                        None => return Err(Error::Lattice(format!("data cell {:?} is never prepared", c.rc))),
                    };
                }
                Some(label) => l.set_label(label, c.rc)?,
                None => return Err(Error::Parse(format!("unknown cell role {r:?}"))),
            },
        }
        let preloaded = schedule.preload.iter().any(|p| p.cells.contains(&c.rc));
        let parked = c.init == "none" || (c.role == "ancilla" && c.init == "0");
        if c.role != "inactive" && !parked && !preloaded {
            l.prepare(c.rc, symbol(&c.init, opts)?)?;
        }
    }
    for p in &schedule.preload {
        if p.cells.len() != 5 {
            return Err(Error::Lattice("a preload needs five cells".into()));
        }
        l.prepare(p.cells[0], symbol(&p.input, opts)?)?;
        l.load(&p.cells, &code5::encoder().gate_list()?)?;
    }
    for (i, step) in schedule.steps.iter().enumerate() {
        match step {
            Step::Prepare { cells, symbol: s } => {
                let s = symbol(s, opts)?;
                for &rc in cells {
                    l.prepare(rc, s)?;
                    if let Some(label) = pending.get(&(i, rc)) {
                        l.set_label(label, rc)?;
                    }
                }
            }
            Step::Local { gates } => {
                for g in gates {
                    l.local(g.rc, local_gate(&g.gate)?)?;
                }
            }
            Step::GlobalCz { axis, regions } => {
                if opts.sequential && !regions.is_empty() {
                    for r in regions {
                        l.global_cz(*axis, Some(r))?;
                    }
                } else {
                    l.global_cz(*axis, None)?;
                }
            }
            Step::Measure { early, bridges, moves } => {
                for &rc in early {
                    if opts.skip != Some(rc) {
                        l.measure_early(rc, rng)?;
                    }
                }
                for path in bridges {
                    match opts.skip {
                        Some(skip) if path[1..path.len().saturating_sub(1)].contains(&skip) => {
                            for &rc in &path[1..path.len() - 1] {
                                if rc != skip && l.is_live(rc) {
                                    l.measure_x(rc, rng)?;
                                }
                            }
                        }
                        _ => l.bridge(path, rng)?,
                    }
                }
                for m in moves {
                    l.move_qubit(m.from, m.to, m.compensate, rng)?;
                }
            }
        }
    }
    Ok(l)
}

fn named_circuit(name: &str) -> Result<Circuit> {
    let mut c;
    match name {
        "E1" => c = code5::build_e1(),
        "E2" => c = code5::build_e2(),
        "GHZ6" => {
            c = Circuit::new(6);
            c.gates(ghz_fan(&REG_A, 5))?;
        }
        "LP" => {
            c = REG_A.encoder(6);
            c.gates(ghz_fan(&REG_A, 5))?;
        }
        "HOP" => {
            c = REG_A.encoder(10);
            c.gates(ghz_fan(&REG_A, 5))?;
            c.append(&REG_B.encoder(10))?;
            c.append(&REG_A.decoder(10))?;
        }
        "HORSESHOE" => c = horseshoe_circuit(Route::Bridged),
        n => return Err(Error::Parse(format!("unknown target circuit {n:?}"))),
    }
    Ok(c)
}

fn target_tableau(t: &Target, opts: &RunOptions) -> Result<Tableau> {
    let inputs: Vec<Symbol> = t.inputs.iter().map(|s| symbol(s, opts)).collect::<Result<_>>()?;
    let circuit = match &t.circuit {
        TargetCircuit::Named(n) => named_circuit(n)?,
        TargetCircuit::Explicit(c) => c.clone(),
    };
    if circuit.n() != inputs.len() || t.labels.len() != inputs.len() {
        return Err(Error::LengthMismatch(circuit.n(), inputs.len()));
    }
    let mut tab = Tableau::init(&inputs);
    tab.apply_gates(&circuit.gate_list()?)?;
    Ok(tab)
}

fn canonical(mut rows: Vec<PauliString>) -> Vec<PauliString> {
    let n = rows.first().map_or(0, PauliString::n);
    let order: Vec<(usize, bool)> = (0..n).flat_map(|q| [(q, true), (q, false)]).collect();
    row_reduce(&mut rows, &order);
    rows
}

#[derive(Debug, Clone, Serialize)]
pub struct RunCheck {
    pub psi: char,
    pub phi: char,
    pub seed: u64,
    pub equal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub leftover: Vec<Rc>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub name: String,
    pub equal: bool,
    pub counts: OpCountReport,
    pub data_cells: BTreeMap<String, Rc>,
    pub runs: Vec<RunCheck>,
}

fn symbol_char(s: Symbol) -> char {
    match s {
        Symbol::Zero => '0',
        Symbol::One => '1',
        Symbol::Plus => '+',
        Symbol::Minus => '-',
    }
}

/// Compares one run against its target after undoing the frame.
pub fn check_run(schedule: &Schedule, opts: &RunOptions, seed: u64) -> Result<(Lattice, RunCheck)> {
    let target = schedule
        .target
        .as_ref()
        .ok_or_else(|| Error::Lattice(format!("schedule {} has no target", schedule.name)))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let l = run(schedule, opts, &mut rng)?;
    let mut check =
        RunCheck { psi: symbol_char(opts.psi), phi: symbol_char(opts.phi), seed, equal: false, diagnostic: None, leftover: vec![] };
    let cells: Vec<Rc> = target
        .labels
        .iter()
        .map(|lb| l.label_cell(lb).ok_or_else(|| Error::Lattice(format!("label {lb} not on the lattice"))))
        .collect::<Result<_>>()?;
    let stray: Vec<Rc> = l.live_cells().into_iter().filter(|rc| !cells.contains(rc)).collect();
    match l.corrected_state(&cells) {
        Err(left) => {
            check.diagnostic = Some(format!("data still entangled with cells {left:?}"));
            check.leftover = left;
        }
        Ok(rows) => {
            let got = canonical(rows);
            let want = target_tableau(target, opts)?.canonical_generators();
            match (0..got.len().max(want.len())).find(|&i| got.get(i) != want.get(i)) {
                None if stray.is_empty() => check.equal = true,
                None => {
                    check.diagnostic = Some(format!("unmeasured ancillae {stray:?}"));
                    check.leftover = stray;
                }
                Some(i) => {
                    let show = |p: Option<&PauliString>| p.map_or("-".to_string(), |p| p.to_string());
                    check.diagnostic =
                        Some(format!("generator {i}: lattice {} vs target {}", show(got.get(i)), show(want.get(i))));
                }
            }
        }
    }
    Ok((l, check))
}

const INPUT_PAIRS: [(Symbol, Symbol); 4] = [
    (Symbol::Zero, Symbol::Plus),
    (Symbol::One, Symbol::Minus),
    (Symbol::Plus, Symbol::Zero),
    (Symbol::Minus, Symbol::One),
];

/// Runs the schedule for each stabilizer input and compares with its target.
pub fn verify_schedule(schedule: &Schedule, seed: u64, skip: Option<Rc>) -> Result<VerifyReport> {
    let mut runs = Vec::new();
    let mut last = None;
    for (k, &(psi, phi)) in INPUT_PAIRS.iter().enumerate() {
        let opts = RunOptions { psi, phi, skip, ..RunOptions::default() };
        let (l, check) = check_run(schedule, &opts, seed.wrapping_add(k as u64))?;
        runs.push(check);
        last = Some(l);
    }
    let l = last.expect("at least one run");
    Ok(VerifyReport {
        name: schedule.name.clone(),
        equal: runs.iter().all(|r| r.equal),
        counts: l.counts().clone(),
        data_cells: l.labels().map(|(k, rc)| (k.to_string(), rc)).collect(),
        runs,
    })
}

const FILES: [(&str, &str); 6] = [
    ("E1_lattice", include_str!("../../schedules/E1_lattice.json")),
    ("E2_lattice", include_str!("../../schedules/E2_lattice.json")),
    ("GHZ6_lattice", include_str!("../../schedules/GHZ6_lattice.json")),
    ("LP_full", include_str!("../../schedules/LP_full.json")),
    ("hop", include_str!("../../schedules/hop.json")),
    ("horseshoe_lattice", include_str!("../../schedules/horseshoe_lattice.json")),
];

pub fn named_schedule(name: &str) -> Result<Schedule> {
    let (_, text) = FILES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::Parse(format!("unknown schedule {name:?}; known: {}", SCHEDULE_NAMES.join(", "))))?;
    Schedule::from_json(text)
}

/// Runs a named schedule with `|+⟩` inputs.
pub fn run_named_schedule(name: &str, seed: u64) -> Result<(Lattice, OpCountReport)> {
    let s = named_schedule(name)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let l = run(&s, &RunOptions::default(), &mut rng)?;
    let counts = l.counts().clone();
    Ok((l, counts))
}

#[derive(Debug, Clone, Serialize)]
pub struct HopReport {
    pub simultaneous: usize,
    pub sequential: usize,
    pub regions_disjoint: bool,
    pub sequential_inefficient: bool,
    pub verified: bool,
}

/// Full teleportation hop with the decode of A sharing layers with the
/// encode of B, compared against running the two one after the other.
pub fn simultaneous_encode_decode(seed: u64) -> Result<HopReport> {
    let s = named_schedule("hop")?;
    let (a, b) = (s.region_cells("A"), s.region_cells("B"));
    let regions_disjoint = !a.is_empty() && !b.is_empty() && a.iter().all(|rc| !b.contains(rc));
    if !regions_disjoint {
        return Err(Error::Lattice("A and B regions overlap".into()));
    }
    let report = verify_schedule(&s, seed, None)?;
    let mut seq = 0;
    for (k, &(psi, phi)) in INPUT_PAIRS.iter().enumerate() {
        let opts = RunOptions { psi, phi, sequential: true, skip: None };
        let (l, check) = check_run(&s, &opts, seed.wrapping_add(100 + k as u64))?;
        if !check.equal {
            return Err(Error::Lattice(format!("sequential hop failed: {:?}", check.diagnostic)));
        }
        seq = l.counts().global_cz;
    }
    Ok(HopReport {
        simultaneous: report.counts.global_cz,
        sequential: seq,
        regions_disjoint,
        sequential_inefficient: seq > report.counts.global_cz,
        verified: report.equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_schedules_verify() {
        for name in SCHEDULE_NAMES {
            let s = named_schedule(name).unwrap();
            let r = verify_schedule(&s, 7, None).unwrap();
            for run in &r.runs {
                assert!(run.equal, "{name} psi={} phi={}: {:?}", run.psi, run.phi, run.diagnostic);
            }
        }
    }

    #[test]
    fn global_cz_counts() {
        let want = [("E1_lattice", 2), ("E2_lattice", 2), ("GHZ6_lattice", 3), ("LP_full", 7), ("hop", 7), ("horseshoe_lattice", 11)];
        for (name, n) in want {
            let (_, c) = run_named_schedule(name, 1).unwrap();
            assert_eq!(c.global_cz, n, "{name}");
            assert_eq!(c.global_cz, c.horizontal + c.vertical);
        }
    }

    #[test]
    fn skipped_measurement_is_reported() {
        let s = named_schedule("E1_lattice").unwrap();
        let r = verify_schedule(&s, 3, Some([1, 3])).unwrap();
        assert!(!r.equal);
        assert!(r.runs.iter().all(|c| c.leftover == vec![[1, 3]]));
    }

    #[test]
    fn wrong_compensation_is_caught() {
        for name in SCHEDULE_NAMES {
            let mut s = named_schedule(name).unwrap();
            let m = s
                .steps
                .iter_mut()
                .find_map(|st| match st {
                    Step::Measure { moves, .. } if !moves.is_empty() => Some(&mut moves[0]),
                    _ => None,
                })
                .unwrap();
            m.compensate = !m.compensate;
            assert!(!verify_schedule(&s, 5, None).unwrap().equal, "{name}");
        }
    }

    #[test]
    fn hop_regions_and_sequential_cost() {
        let r = simultaneous_encode_decode(11).unwrap();
        assert!(r.regions_disjoint && r.verified);
        assert_eq!(r.simultaneous, 7);
        assert!(r.sequential > 7 && r.sequential_inefficient);
    }
}
