//! Error injection, Monte Carlo sweeps and the multi-hop driver.
//!
//! Every trial draws from its own ChaCha stream `(seed, k)`, so reports do
//! not depend on thread scheduling.

use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::code5::{self, LogicalRegister, Syndrome, SYNDROME_TABLE};
use crate::error::{Error, Result};
use crate::protocols::teleport::{gate_counts, teleport_register, teleported_gate, GateCounts, SUCCESS_FIDELITY};
use crate::protocols::{encoded_teleport, InjectedError, Stage, TeleportConfig};
use crate::qcore::{Gate, Pauli, PauliString};
use crate::svsim::{fidelity, random_qubit, StateVector};

pub const SCHEMA: &str = "1";

const REG: LogicalRegister = LogicalRegister::at(0);

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ErrorModel {
    ExhaustiveSinglePauli,
    IidDepolarizing {
        p: f64,
        /// Also corrupt right after encoding A, outside the protected window.
        unprotected: bool,
    },
    Targeted {
        pauli: PauliString,
        stage: Stage,
    },
}

impl ErrorModel {
    pub fn depolarizing(p: f64, unprotected: bool) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Parse(format!("p = {p} is not a probability")));
        }
        Ok(ErrorModel::IidDepolarizing { p, unprotected })
    }
}

/// The 15 non-identity Paulis on one qubit of a five-qubit register.
pub fn single_qubit_paulis() -> Vec<PauliString> {
    (0..5)
        .flat_map(|q| [Pauli::X, Pauli::Y, Pauli::Z].map(|p| PauliString::single(5, q, p)))
        .collect()
}

/// All 4⁵ Paulis on five qubits, identity first.
pub fn all_paulis() -> Vec<PauliString> {
    (0..1024usize)
        .map(|k| {
            let ps: Vec<Pauli> = (0..5).map(|q| Pauli::from_bits((k >> (2 * q)) & 1 == 1, (k >> (2 * q + 1)) & 1 == 1)).collect();
            PauliString::from_paulis(&ps)
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct TrialRecord {
    pub trial: usize,
    /// Injected error per stage, e.g. `"protected:IXIIZ"`.
    pub injected: Vec<String>,
    pub weight: usize,
    pub syndrome: Syndrome,
    pub m: u8,
    pub fidelity: f64,
    pub success: bool,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Aggregate {
    pub successes: usize,
    pub failures: usize,
    pub failure_rate: f64,
    pub mean_fidelity: f64,
    /// Trials whose total injected weight is at most one.
    pub low_weight_trials: usize,
    pub low_weight_successes: usize,
}

/// Failure rate expected from the per-weight failure fractions of the
/// exhaustive Pauli enumeration.
#[derive(Debug, Clone, Serialize)]
pub struct Prediction {
    /// Failing fraction of the Paulis of each weight 0..=5.
    pub weight_failure_fraction: [f64; 6],
    pub failure_rate: f64,
    pub sigma: f64,
    pub deviation_sigmas: f64,
    pub within_5_sigma: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub model: ErrorModel,
    pub seed: u64,
    pub trials: usize,
    pub records: Vec<TrialRecord>,
    pub aggregate: Aggregate,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prediction: Option<Prediction>,
    pub gate_counts: GateCounts,
    pub passed: bool,
}

fn trial_rng(seed: u64, k: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k as u64);
    rng
}

fn run_trial(k: usize, errors: &[InjectedError], rng: &mut ChaCha8Rng) -> Result<TrialRecord> {
    let psi = random_qubit(rng);
    let xi = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
    let a = code5::encode(psi)?;
    let hop = teleport_register(&a, xi, errors, None, rng)?;
    let target = code5::logical_state(teleported_gate(psi, xi, hop.m)?);
    let f = fidelity(&hop.output, &target)?;
    Ok(TrialRecord {
        trial: k,
        injected: errors.iter().map(|e| format!("{}:{}", e.stage, e.pauli)).collect(),
        weight: errors.iter().map(|e| e.pauli.weight()).sum(),
        syndrome: hop.syndrome,
        m: hop.m,
        fidelity: f,
        success: f >= SUCCESS_FIDELITY,
    })
}

fn aggregate(records: &[TrialRecord]) -> Aggregate {
    let n = records.len().max(1) as f64;
    let successes = records.iter().filter(|r| r.success).count();
    let low: Vec<&TrialRecord> = records.iter().filter(|r| r.weight <= 1).collect();
    Aggregate {
        successes,
        failures: records.len() - successes,
        failure_rate: (records.len() - successes) as f64 / n,
        mean_fidelity: records.iter().map(|r| r.fidelity).sum::<f64>() / n,
        low_weight_trials: low.len(),
        low_weight_successes: low.iter().filter(|r| r.success).count(),
    }
}

/// Every row of the syndrome table, injected in the protected window: the
/// syndrome must match the table and the output must be recovered.
pub fn run_exhaustive_correction_sweep(seed: u64) -> Result<RunReport> {
    let records: Vec<TrialRecord> = SYNDROME_TABLE
        .par_iter()
        .enumerate()
        .map(|(k, row)| {
            let mut rng = trial_rng(seed, k);
            let errors: Vec<InjectedError> = match row.error {
                "None" => vec![],
                _ => vec![InjectedError::protected(row.error_operator())],
            };
            run_trial(k, &errors, &mut rng)
        })
        .collect::<Result<_>>()?;
    let passed = records.iter().zip(SYNDROME_TABLE.iter()).all(|(r, row)| r.success && r.syndrome == row.syndrome());
    Ok(RunReport {
        schema: SCHEMA,
        model: ErrorModel::ExhaustiveSinglePauli,
        seed,
        trials: records.len(),
        aggregate: aggregate(&records),
        records,
        prediction: None,
        gate_counts: gate_counts(),
        passed,
    })
}

/// A single error, recorded rather than raised when it is not corrected.
pub fn run_targeted(pauli: PauliString, stage: Stage, seed: u64) -> Result<RunReport> {
    let errors = [InjectedError { pauli: pauli.clone(), stage }];
    let r = run_trial(0, &errors, &mut trial_rng(seed, 0))?;
    let records = vec![r];
    Ok(RunReport {
        schema: SCHEMA,
        model: ErrorModel::Targeted { pauli, stage },
        seed,
        trials: 1,
        aggregate: aggregate(&records),
        passed: records[0].success,
        records,
        prediction: None,
        gate_counts: gate_counts(),
    })
}

/// Whether each of the 1024 protected-window Paulis is corrected, for a
/// random input and angle drawn from `seed`.
pub fn pauli_failure_table(seed: u64) -> Result<Vec<(PauliString, bool)>> {
    all_paulis()
        .into_par_iter()
        .enumerate()
        .map(|(k, p)| {
            let errors = [InjectedError::protected(p.clone())];
            let r = run_trial(k, &errors, &mut trial_rng(seed, k))?;
            Ok((p, !r.success))
        })
        .collect()
}

pub fn weight_failure_fractions(table: &[(PauliString, bool)]) -> [f64; 6] {
    let mut fail = [0usize; 6];
    let mut total = [0usize; 6];
    for (p, failed) in table {
        total[p.weight()] += 1;
        fail[p.weight()] += *failed as usize;
    }
    std::array::from_fn(|w| fail[w] as f64 / total[w].max(1) as f64)
}

/// `Σ_w C(5,w) p^w (1-p)^(5-w) f_w`.
pub fn predicted_failure_rate(p: f64, fractions: &[f64; 6]) -> f64 {
    let binom = [1.0, 5.0, 10.0, 10.0, 5.0, 1.0];
    (0..6).map(|w| binom[w] * p.powi(w as i32) * (1.0 - p).powi(5 - w as i32) * fractions[w]).sum()
}

fn sample_depolarizing(p: f64, rng: &mut impl Rng) -> PauliString {
    let mut e = PauliString::identity(5);
    for q in 0..5 {
        if rng.gen::<f64>() < p {
            e.set(q, [Pauli::X, Pauli::Y, Pauli::Z][rng.gen_range(0..3)]);
        }
    }
    e
}

/// Independent depolarizing noise on the five qubits of A in the protected
/// window (and right after encoding A when `unprotected`). The prediction is
/// only attached for the protected-only model.
pub fn run_depolarizing(p: f64, trials: usize, seed: u64, unprotected: bool) -> Result<RunReport> {
    let model = ErrorModel::depolarizing(p, unprotected)?;
    if trials == 0 {
        return Err(Error::Parse("trials must be at least 1".into()));
    }
    let records: Vec<TrialRecord> = (0..trials)
        .into_par_iter()
        .map(|k| {
            let mut rng = trial_rng(seed, k);
            let mut errors = vec![];
            if unprotected {
                let e = sample_depolarizing(p, &mut rng);
                if !e.is_identity() {
                    errors.push(InjectedError { pauli: e, stage: Stage::AfterEncodeA });
                }
            }
            let e = sample_depolarizing(p, &mut rng);
            if !e.is_identity() {
                errors.push(InjectedError::protected(e));
            }
            run_trial(k, &errors, &mut rng)
        })
        .collect::<Result<_>>()?;
    let agg = aggregate(&records);
    let low_ok = agg.low_weight_successes == agg.low_weight_trials;
    let prediction = if unprotected {
        None
    } else {
        let fractions = weight_failure_fractions(&pauli_failure_table(seed ^ 0x5eed)?);
        let q = predicted_failure_rate(p, &fractions);
        let sigma = (q * (1.0 - q) / trials as f64).sqrt();
        let dev = agg.failure_rate - q;
        // a zero-variance prediction only accepts an exact match
        let deviation_sigmas = if sigma > 0.0 { dev / sigma } else if dev == 0.0 { 0.0 } else { f64::INFINITY };
        Some(Prediction {
            weight_failure_fraction: fractions,
            failure_rate: q,
            sigma,
            deviation_sigmas,
            within_5_sigma: deviation_sigmas.abs() <= 5.0,
        })
    };
    let passed = low_ok && prediction.as_ref().is_none_or(|p| p.within_5_sigma);
    Ok(RunReport {
        schema: SCHEMA,
        model,
        seed,
        trials,
        records,
        aggregate: agg,
        prediction,
        gate_counts: gate_counts(),
        passed,
    })
}

/// Teleports a random input once per table row through the one-call API,
/// returning `(row label, syndrome matches, fidelity)`; used by the CLI table.
pub fn syndrome_table_check(seed: u64) -> Result<Vec<(&'static str, Syndrome, bool, f64)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let psi = random_qubit(&mut rng);
    SYNDROME_TABLE
        .iter()
        .map(|row| {
            let error = (row.error != "None").then(|| InjectedError::protected(row.error_operator()));
            let r = encoded_teleport(&TeleportConfig { error, ..TeleportConfig::new(psi, 0.3) }, &mut rng)?;
            Ok((row.error, r.syndrome, r.syndrome == row.syndrome(), r.fidelity))
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct HopRecord {
    pub hop: usize,
    /// Direction of the hop: `"A->B"` or `"B->A"`.
    pub direction: &'static str,
    pub xi: f64,
    /// Angle actually measured after feed-forward.
    pub xi_applied: f64,
    pub m: u8,
    pub syndrome: Syndrome,
    /// Outstanding logical byproduct `X^x Z^z` after this hop.
    pub frame: [u8; 2],
}

#[derive(Debug, Clone, Serialize)]
pub struct ComputeReport {
    pub schema: &'static str,
    pub seed: u64,
    pub psi: [C; 2],
    pub hops: Vec<HopRecord>,
    /// Output after undoing the frame, against `Π H Rz(ξ_k) |ψ⟩` encoded.
    pub fidelity: f64,
    pub passed: bool,
}

/// One-qubit oracle `H Rz(ξ_n) … H Rz(ξ_1) |ψ⟩`.
pub fn compute_oracle(psi: [C; 2], xis: &[f64]) -> Result<[C; 2]> {
    let mut s = StateVector::product(&[psi])?;
    for &xi in xis {
        s.apply(&Gate::Rz(0, xi))?;
        s.apply(&Gate::H(0))?;
    }
    Ok([s.amplitude(0), s.amplitude(1)])
}

/// Alternating hops A→B, B→A, … with angle `program[k % len]` on hop `k`.
/// A pending `X^L` flips the sign of the next angle; the frame is undone at
/// the end. `forced` fixes the outcomes of the first hops.
pub fn run_two_column_computation(
    psi: [C; 2],
    program: &[f64],
    hops: usize,
    forced: &[u8],
    seed: u64,
) -> Result<ComputeReport> {
    if hops == 0 || program.is_empty() {
        return Err(Error::Parse("a computation needs at least one hop and one angle".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = code5::encode(psi)?;
    let (mut x, mut z) = (0u8, 0u8);
    let mut records = Vec::with_capacity(hops);
    let mut xis = Vec::with_capacity(hops);
    for k in 0..hops {
        let xi = program[k % program.len()];
        let xi_applied = if x == 1 { -xi } else { xi };
        let hop = teleport_register(&state, xi_applied, &[], forced.get(k).copied(), &mut rng)?;
        (x, z) = (z ^ hop.m, x);
        records.push(HopRecord {
            hop: k,
            direction: if k % 2 == 0 { "A->B" } else { "B->A" },
            xi,
            xi_applied,
            m: hop.m,
            syndrome: hop.syndrome,
            frame: [x, z],
        });
        xis.push(xi);
        state = hop.output;
    }
    if x == 1 {
        state.apply_pauli(&REG.logical_x(5))?;
    }
    if z == 1 {
        state.apply_pauli(&REG.logical_z(5))?;
    }
    let f = fidelity(&state, &code5::logical_state(compute_oracle(psi, &xis)?))?;
    Ok(ComputeReport { schema: SCHEMA, seed, psi, hops: records, fidelity: f, passed: f >= 1.0 - 1e-9 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_sweep_passes() {
        let r = run_exhaustive_correction_sweep(1).unwrap();
        assert!(r.passed);
        assert_eq!(r.trials, 16);
        assert_eq!(r.records[0].syndrome, Syndrome::NONE);
    }

    #[test]
    fn weight_two_is_recorded_not_raised() {
        let x1x2 = PauliString::on_qubits(5, [0, 1], Pauli::X);
        let r = run_targeted(x1x2, Stage::Protected, 2).unwrap();
        assert!(!r.passed);
        assert!(r.records[0].fidelity < 0.99);
    }

    #[test]
    fn zero_noise_never_fails() {
        let r = run_depolarizing(0.0, 50, 3, false).unwrap();
        assert_eq!(r.aggregate.failures, 0);
        assert!(r.passed);
    }

    #[test]
    fn fractions_of_a_distance_three_code() {
        let f = weight_failure_fractions(&pauli_failure_table(4).unwrap());
        assert_eq!(f[0], 0.0);
        assert_eq!(f[1], 0.0);
        assert!(f[2] > 0.0);
    }

    #[test]
    fn single_hop_without_angle_is_hadamard() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let psi = random_qubit(&mut rng);
        let r = run_two_column_computation(psi, &[0.0], 1, &[0], 5).unwrap();
        assert!(r.passed, "{}", r.fidelity);
    }

    #[test]
    fn feed_forward_over_all_patterns() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let psi = random_qubit(&mut rng);
        let xis = [0.4, -1.1, 2.3];
        for pattern in 0..8u8 {
            let forced: Vec<u8> = (0..3).map(|k| (pattern >> k) & 1).collect();
            let r = run_two_column_computation(psi, &xis, 3, &forced, 6).unwrap();
            assert!(r.fidelity > 1.0 - 1e-9, "{forced:?}: {}", r.fidelity);
        }
    }
}
