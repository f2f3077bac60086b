//! Acceptance criteria 1-8, one line each.

use std::time::{Duration, Instant};

use qecc1wqc::code5::{self, correction_for, SYNDROME_TABLE};
use qecc1wqc::harness::{run_depolarizing, run_targeted, single_qubit_paulis};
use qecc1wqc::lattice::{self, dense_bridge, named_schedule, run_named_schedule, simultaneous_encode_decode, verify_schedule};
use qecc1wqc::protocols::cluster::{lcs2_graph, push_through_check};
use qecc1wqc::protocols::entangler::{entangler_report, nine_gate_entangler};
use qecc1wqc::protocols::horseshoe::{horseshoe_circuit, horseshoe_graph, Route, REGS};
use qecc1wqc::protocols::teleport::{gate_counts, teleported_gate};
use qecc1wqc::protocols::{encoded_teleport, InjectedError, Stage, TeleportConfig};
use qecc1wqc::qcore::{Gate, Pauli, PauliString};
use qecc1wqc::svsim::{fidelity, random_qubit, StateVector, Symbol};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Line {
    id: usize,
    pass: bool,
    detail: String,
}

fn timed(id: usize, limit: Option<Duration>, f: impl FnOnce() -> (bool, String)) -> Line {
    let t = Instant::now();
    let (ok, detail) = f();
    let el = t.elapsed();
    let in_time = limit.is_none_or(|l| el <= l);
    let limit_txt = limit.map_or(String::new(), |l| format!(" (limit {}s)", l.as_secs_f64()));
    Line { id, pass: ok && in_time, detail: format!("{detail}; {:.2}s{limit_txt}", el.as_secs_f64()) }
}

fn pentagon_on(s: Symbol) -> StateVector {
    let mut st = StateVector::init(&[s; 5]).unwrap();
    st.apply_gates(&code5::build_e2().gate_list().unwrap()).unwrap();
    st
}

fn criterion_1() -> (bool, String) {
    let f_minus = fidelity(&code5::logical_minus(), &pentagon_on(Symbol::Plus)).unwrap();
    let f_plus = fidelity(&code5::logical_plus(), &pentagon_on(Symbol::Minus)).unwrap();
    let f_k5 = fidelity(&code5::logical_zero_from_k5(), &code5::logical_zero()).unwrap();
    let ok = [f_minus, f_plus, f_k5].iter().all(|&f| f >= 1.0 - 1e-10);
    (ok, format!("code states: |-L> {f_minus:.12}, |+L> {f_plus:.12}, K5 {f_k5:.12}"))
}

fn criterion_2() -> (bool, String) {
    let mut mismatches = 0;
    let mut min_f: f64 = 1.0;
    for seed in 0..20u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let psi = random_qubit(&mut rng);
        for row in SYNDROME_TABLE {
            let error = (row.error != "None").then(|| InjectedError::protected(row.error_operator()));
            let r = encoded_teleport(&TeleportConfig { error, ..TeleportConfig::new(psi, 0.0) }, &mut rng).unwrap();
            if r.syndrome != row.syndrome() || correction_for(r.syndrome) != row.outcome || r.correction != row.outcome {
                mismatches += 1;
            }
            min_f = min_f.min(r.fidelity);
        }
    }
    (mismatches == 0 && min_f >= 1.0 - 1e-9, format!("syndrome table: {mismatches} mismatches over 16x20 runs, min fidelity {min_f:.12}"))
}

fn criterion_3() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut min_f: f64 = 1.0;
    for _ in 0..50 {
        let psi = random_qubit(&mut rng);
        let xi = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
        for m in 0..2u8 {
            let r = encoded_teleport(&TeleportConfig { forced_m: Some(m), ..TeleportConfig::new(psi, xi) }, &mut rng).unwrap();
            // independent one-qubit product, then encoded
            let mut one = StateVector::product(&[psi]).unwrap();
            one.apply(&Gate::Rz(0, xi)).unwrap();
            one.apply(&Gate::H(0)).unwrap();
            if m == 1 {
                one.apply(&Gate::X(0)).unwrap();
            }
            let lib = teleported_gate(psi, xi, m).unwrap();
            let agree = (lib[0] - one.amplitude(0)).norm() < 1e-12 && (lib[1] - one.amplitude(1)).norm() < 1e-12;
            min_f = min_f.min(if agree { r.fidelity } else { 0.0 });
        }
    }
    (min_f >= 1.0 - 1e-9, format!("teleported gate: 50 inputs x 2 outcomes, min fidelity {min_f:.12}"))
}

fn criterion_4() -> (bool, String) {
    let r = push_through_check(20, &mut ChaCha8Rng::seed_from_u64(4)).unwrap();
    let ok = r.fidelities.len() >= 20 && r.fidelities.iter().all(|&f| f >= 1.0 - 1e-9) && r.negative_control_fails;
    (ok, format!("push-through: min fidelity {:.12}, without Z^L min {:.6}", r.min_fidelity, r.negative_control_min))
}

fn criterion_5() -> (bool, String) {
    let teleport = gate_counts().preparation;
    let horseshoe = horseshoe_circuit(Route::Chained).two_qubit_gate_count();
    let (_, entangler) = nine_gate_entangler();
    let want = [("E1_lattice", 2), ("E2_lattice", 2), ("GHZ6_lattice", 3), ("LP_full", 7), ("hop", 7)];
    let mut ok = teleport == 23 && horseshoe == 51 && entangler == 9;
    let mut parts = vec![format!("teleport {teleport}, horseshoe {horseshoe}, entangler {entangler}")];
    for (name, n) in want {
        let (_, c) = run_named_schedule(name, 5).unwrap();
        ok &= c.global_cz == n;
        parts.push(format!("{name} {}", c.global_cz));
    }
    (ok, format!("gate counts: {}", parts.join(", ")))
}

fn criterion_6() -> (bool, String) {
    let g = lcs2_graph();
    let k10 = g.n() == 10 && g.degrees().iter().all(|&d| d == 7);
    let h = horseshoe_graph();
    let deg = |r: usize| REGS[r].qubits.iter().map(|&q| h.degree(q)).collect::<Vec<_>>();
    let ends = deg(0).iter().chain(deg(3).iter()).all(|&d| d == 7);
    let mid = deg(1).iter().chain(deg(2).iter()).all(|&d| d == 12);
    let e = entangler_report().unwrap();
    let ok = k10 && ends && mid && e.pivot_matches && e.certificate_valid;
    (
        ok,
        format!(
            "graphs: 10-vertex degree-7 {k10}, horseshoe ends 7 {ends}, interior 12 {mid}, pivot certificate {} ({} gates)",
            e.certificate_valid,
            e.certificate.len()
        ),
    )
}

fn criterion_7() -> (bool, String) {
    let mut ok = true;
    let mut names = vec![];
    for name in lattice::SCHEDULE_NAMES {
        let r = verify_schedule(&named_schedule(name).unwrap(), 7, None).unwrap();
        ok &= r.equal;
        names.push(format!("{name} {}", r.equal));
    }
    let hop = simultaneous_encode_decode(7).unwrap();
    ok &= hop.regions_disjoint && hop.sequential_inefficient;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut patterns = 0;
    let mut min_f: f64 = 1.0;
    for k in [2usize, 4] {
        for bits in 0..(1u32 << k) {
            let outcomes: Vec<u8> = (0..k).map(|i| ((bits >> i) & 1) as u8).collect();
            let (u, v) = (random_qubit(&mut rng), random_qubit(&mut rng));
            let (got, byproduct) = dense_bridge(u, v, &outcomes).unwrap();
            let mut want = StateVector::product(&[u, v]).unwrap();
            want.apply(&Gate::Cz(0, 1)).unwrap();
            want.apply_pauli(&byproduct).unwrap();
            min_f = min_f.min(fidelity(&got, &want).unwrap());
            patterns += 1;
        }
    }
    ok &= min_f >= 1.0 - 1e-10;
    (ok, format!("lattice: {}; hop regions disjoint; {patterns} bridge outcome patterns, min fidelity {min_f:.12}", names.join(", ")))
}

fn criterion_8() -> (bool, String) {
    let mut min_w1: f64 = 1.0;
    for (k, p) in single_qubit_paulis().into_iter().enumerate() {
        let r = run_targeted(p, Stage::Protected, 80 + k as u64).unwrap();
        min_w1 = min_w1.min(r.records[0].fidelity);
    }
    let x1x2 = PauliString::on_qubits(5, [0, 1], Pauli::X);
    let w2 = run_targeted(x1x2, Stage::Protected, 8).unwrap().records[0].fidelity;
    let mut ok = min_w1 >= 1.0 - 1e-9 && w2 <= 0.99;
    let mut parts = vec![format!("weight-1 min fidelity {min_w1:.12}, X1X2 fidelity {w2:.4}")];
    for p in [1e-3, 1e-2] {
        let r = run_depolarizing(p, 10_000, 8, false).unwrap();
        let pr = r.prediction.as_ref().unwrap();
        let a = &r.aggregate;
        ok &= a.low_weight_successes == a.low_weight_trials && pr.within_5_sigma;
        parts.push(format!(
            "p={p}: weight<=1 {}/{}, failure {:.5} vs predicted {:.5} ({:+.2} sigma)",
            a.low_weight_successes, a.low_weight_trials, a.failure_rate, pr.failure_rate, pr.deviation_sigmas
        ));
    }
    (ok, format!("distance 3: {}", parts.join("; ")))
}

#[test]
fn acceptance() {
    let s = Duration::from_secs;
    let lines = [
        timed(1, Some(s(1)), criterion_1),
        timed(2, Some(s(5)), criterion_2),
        timed(3, Some(s(30)), criterion_3),
        timed(4, None, criterion_4),
        timed(5, None, criterion_5),
        timed(6, None, criterion_6),
        timed(7, None, criterion_7),
        timed(8, Some(s(120)), criterion_8),
    ];
    for l in &lines {
        println!("criterion {}: {} {}", l.id, if l.pass { "PASS" } else { "FAIL" }, l.detail);
    }
    let failed: Vec<usize> = lines.iter().filter(|l| !l.pass).map(|l| l.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
