use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex64 as C;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use qecc1wqc::code5::{self, parse_error_label, SYNDROME_TABLE};
use qecc1wqc::harness::{self, SCHEMA};
use qecc1wqc::lattice::{self, Schedule};
use qecc1wqc::protocols::cluster::{build_lcs2, lcs2_reference, lcs2_symmetric_form, push_through_check, REG_B};
use qecc1wqc::protocols::horseshoe::{build_horseshoe_logical, Mode, Route};
use qecc1wqc::protocols::{encoded_teleport, InjectedError, Stage, TeleportConfig};
use qecc1wqc::qcore::{Pauli, PauliString};
use qecc1wqc::svsim::fidelity;
use qecc1wqc::{Error, Result};

#[derive(Parser)]
#[command(name = "qecc1wqc", version, about = "Five-qubit-code one-way quantum computation toolkit")]
struct Cli {
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Write the report as JSON to this path.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Every syndrome-table error injected in the protected window.
    Sweep,
    /// Depolarizing Monte Carlo against the exhaustive-enumeration prediction.
    Depolarize {
        #[arg(long, default_value_t = 1e-2)]
        p: f64,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        /// Also corrupt right after encoding, outside the protected window.
        #[arg(long)]
        unprotected: bool,
    },
    /// Multi-hop computation with feed-forward.
    Compute {
        /// Comma-separated angles, one per hop (cycled).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0")]
        xi: Vec<f64>,
        #[arg(long)]
        hops: Option<usize>,
        #[arg(long, default_value = "0.6,0.8")]
        alpha_beta: String,
        /// Comma-separated forced outcomes for the first hops.
        #[arg(long, value_delimiter = ',')]
        force: Vec<u8>,
    },
    /// Prints the error / syndrome / outcome table from simulation.
    SyndromeTable,
    /// One encoded teleportation hop.
    Teleport {
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        xi: f64,
        #[arg(long, default_value = "0.6,0.8")]
        alpha_beta: String,
        /// `X@3`, `Y@1` or a table label such as `X3Z3` (1-based qubits).
        #[arg(long)]
        inject: Option<String>,
        #[arg(long, default_value = "protected")]
        stage: String,
        #[arg(long)]
        force_m: Option<u8>,
    },
    /// Lattice schedules.
    Lattice {
        #[command(subcommand)]
        cmd: LatticeCmd,
    },
    /// Two-logical-qubit cluster state.
    Lcs2 {
        #[arg(long)]
        verify: bool,
    },
    PushThrough {
        #[arg(long, default_value_t = 20)]
        inputs: usize,
    },
    Horseshoe {
        #[arg(long, default_value = "tableau")]
        mode: String,
        #[arg(long, default_value = "chained")]
        route: String,
    },
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Runs a schedule given by file path or name.
    Run {
        #[arg(long)]
        schedule: String,
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        counts: bool,
    },
    /// Simultaneous versus sequential decode/encode of a full hop.
    Hop,
    List,
}

fn parse_pair(s: &str) -> Result<[C; 2]> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(Error::Parse(format!("expected two comma-separated amplitudes, got {s:?}")));
    }
    let a: C = parts[0].trim().parse().map_err(|_| Error::Parse(format!("bad amplitude {:?}", parts[0])))?;
    let b: C = parts[1].trim().parse().map_err(|_| Error::Parse(format!("bad amplitude {:?}", parts[1])))?;
    let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
    if norm == 0.0 {
        return Err(Error::Parse("zero state".into()));
    }
    Ok([a / norm, b / norm])
}

fn parse_inject(s: &str) -> Result<PauliString> {
    match s.split_once('@') {
        Some((p, q)) => {
            let q: usize = q.parse().map_err(|_| Error::Parse(format!("bad qubit in {s:?}")))?;
            let p = p.chars().next().and_then(Pauli::from_letter).ok_or_else(|| Error::Parse(format!("bad Pauli in {s:?}")))?;
            if !(1..=5).contains(&q) {
                return Err(Error::Parse(format!("qubit {q} is not in 1..=5")));
            }
            Ok(PauliString::single(5, q - 1, p))
        }
        None => parse_error_label(s, 5),
    }
}

struct Out {
    json: Option<PathBuf>,
    quiet: bool,
}

impl Out {
    fn emit(&self, report: &impl Serialize, summary: &str, passed: bool) -> Result<ExitCode> {
        if let Some(path) = &self.json {
            let mut v = serde_json::to_value(report)?;
            if let Value::Object(m) = &mut v {
                m.insert("schema".into(), json!(SCHEMA));
                m.insert("passed".into(), json!(passed));
            }
            std::fs::write(path, serde_json::to_string_pretty(&v)? + "\n")?;
        }
        if !self.quiet {
            println!("{summary}");
            println!("{}", if passed { "PASS" } else { "FAIL" });
        }
        Ok(if passed { ExitCode::SUCCESS } else { ExitCode::FAILURE })
    }
}

fn load_schedule(s: &str) -> Result<Schedule> {
    if lattice::SCHEDULE_NAMES.contains(&s) {
        lattice::named_schedule(s)
    } else {
        Schedule::load(std::path::Path::new(s))
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let out = Out { json: cli.json, quiet: cli.quiet };
    let seed = cli.seed;
    match cli.cmd {
        Cmd::Sweep => {
            let r = harness::run_exhaustive_correction_sweep(seed)?;
            let s = r
                .records
                .iter()
                .zip(SYNDROME_TABLE.iter())
                .map(|(t, row)| format!("{:<6} {} F={:.12}", row.error, t.syndrome, t.fidelity))
                .collect::<Vec<_>>()
                .join("\n");
            out.emit(&r, &s, r.passed)
        }
        Cmd::Depolarize { p, trials, unprotected } => {
            let r = harness::run_depolarizing(p, trials, seed, unprotected)?;
            let a = &r.aggregate;
            let mut s = format!(
                "p={p} trials={trials} failures={} rate={:.6} weight<=1 {}/{}",
                a.failures, a.failure_rate, a.low_weight_successes, a.low_weight_trials
            );
            if let Some(pr) = &r.prediction {
                s += &format!("\npredicted={:.6} sigma={:.6} deviation={:+.2} sigma", pr.failure_rate, pr.sigma, pr.deviation_sigmas);
            }
            out.emit(&r, &s, r.passed)
        }
        Cmd::Compute { xi, hops, alpha_beta, force } => {
            let psi = parse_pair(&alpha_beta)?;
            let hops = hops.unwrap_or(xi.len());
            let r = harness::run_two_column_computation(psi, &xi, hops, &force, seed)?;
            let mut s: Vec<String> = r
                .hops
                .iter()
                .map(|h| format!("hop {} {} xi={:+.4} applied={:+.4} m={} frame=X^{}Z^{}", h.hop, h.direction, h.xi, h.xi_applied, h.m, h.frame[0], h.frame[1]))
                .collect();
            s.push(format!("fidelity {:.12}", r.fidelity));
            out.emit(&r, &s.join("\n"), r.passed)
        }
        Cmd::SyndromeTable => {
            let rows = harness::syndrome_table_check(seed)?;
            let mut s = vec!["error\tsyndrome\toutcome".to_string()];
            let mut ok = true;
            let mut report = vec![];
            for ((label, syn, matches, f), row) in rows.into_iter().zip(SYNDROME_TABLE.iter()) {
                let good = matches && f >= 1.0 - 1e-9;
                ok &= good;
                s.push(format!("{label}\t{syn}\t{}", code5::correction_for(syn).label()));
                report.push(json!({"error": label, "syndrome": syn, "expected": row.syndrome, "outcome": code5::correction_for(syn).label(), "fidelity": f, "ok": good}));
            }
            out.emit(&json!({ "rows": report }), &s.join("\n"), ok)
        }
        Cmd::Teleport { xi, alpha_beta, inject, stage, force_m } => {
            let psi = parse_pair(&alpha_beta)?;
            let stage: Stage = stage.parse()?;
            let error = inject.as_deref().map(parse_inject).transpose()?.map(|pauli| InjectedError { pauli, stage });
            let cfg = TeleportConfig { error, forced_m: force_m, ..TeleportConfig::new(psi, xi) };
            let r = encoded_teleport(&cfg, &mut ChaCha8Rng::seed_from_u64(seed))?;
            let s = format!(
                "m={} syndrome={} correction={} fidelity={:.12} gates={}/{}/{}",
                r.m,
                r.syndrome,
                r.correction.label(),
                r.fidelity,
                r.gate_counts.preparation,
                r.gate_counts.decode,
                r.gate_counts.total
            );
            out.emit(&r, &s, r.success())
        }
        Cmd::Lattice { cmd } => match cmd {
            LatticeCmd::List => {
                let s = lattice::SCHEDULE_NAMES.join("\n");
                out.emit(&json!({ "schedules": lattice::SCHEDULE_NAMES }), &s, true)
            }
            LatticeCmd::Hop => {
                let r = lattice::simultaneous_encode_decode(seed)?;
                let s = format!(
                    "simultaneous {} GlobalCZ, sequential {} GlobalCZ, regions disjoint {}",
                    r.simultaneous, r.sequential, r.regions_disjoint
                );
                out.emit(&r, &s, r.verified && r.regions_disjoint && r.sequential_inefficient)
            }
            LatticeCmd::Run { schedule, verify, counts } => {
                let sch = load_schedule(&schedule)?;
                if verify {
                    let r = lattice::verify_schedule(&sch, seed, None)?;
                    let mut s = vec![format!("{}: {} GlobalCZ, verified {}", r.name, r.counts.global_cz, r.equal)];
                    s.extend(r.runs.iter().filter_map(|c| c.diagnostic.as_ref().map(|d| format!("  psi={} phi={}: {d}", c.psi, c.phi))));
                    if counts {
                        s.push(serde_json::to_string(&r.counts)?);
                    }
                    out.emit(&r, &s.join("\n"), r.equal)
                } else {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let l = lattice::schedule::run(&sch, &Default::default(), &mut rng)?;
                    let c = l.counts().clone();
                    let mut s = format!("{}: {} GlobalCZ ({} horizontal, {} vertical)", sch.name, c.global_cz, c.horizontal, c.vertical);
                    if counts {
                        s += &format!("\n{}", serde_json::to_string(&c)?);
                    }
                    out.emit(&json!({ "name": sch.name, "counts": c }), &s, true)
                }
            }
        },
        Cmd::Lcs2 { verify } => {
            let (c, state, g) = build_lcs2()?;
            let degrees = g.degrees();
            let mut report = json!({ "two_qubit_gates": c.two_qubit_gate_count(), "vertices": g.n(), "degrees": degrees });
            let mut ok = g.n() == 10 && degrees.iter().all(|&d| d == 7);
            if verify {
                let f = fidelity(&state, &lcs2_reference()?)?;
                let mut zb = state.clone();
                zb.apply_pauli(&REG_B.logical_z(10))?;
                let fs = fidelity(&zb, &lcs2_symmetric_form()?)?;
                ok &= f >= 1.0 - 1e-10 && fs >= 1.0 - 1e-10;
                report["fidelity_logical_form"] = json!(f);
                report["fidelity_symmetric_form"] = json!(fs);
            }
            let s = format!("{} vertices, degrees {:?}, {} CZ", g.n(), degrees, c.two_qubit_gate_count());
            out.emit(&report, &s, ok)
        }
        Cmd::PushThrough { inputs } => {
            let r = push_through_check(inputs, &mut ChaCha8Rng::seed_from_u64(seed))?;
            let s = format!("min fidelity {:.12}; without Z^L {:.6}", r.min_fidelity, r.negative_control_min);
            out.emit(&r, &s, r.holds && r.negative_control_fails)
        }
        Cmd::Horseshoe { mode, route } => {
            let mode: Mode = mode.parse()?;
            let route: Route = route.parse()?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (psi, phi) = match mode {
                Mode::Tableau => ([C::new(1.0, 0.0), C::new(0.0, 0.0)], [C::new(1.0, 0.0), C::new(1.0, 0.0)].map(|a| a / 2f64.sqrt())),
                Mode::Dense => (qecc1wqc::svsim::random_qubit(&mut rng), qecc1wqc::svsim::random_qubit(&mut rng)),
            };
            let r = build_horseshoe_logical(psi, phi, route, mode)?;
            let s = format!(
                "{route}: {} two-qubit gates, verified {}, endpoint degrees {:?}, interior degrees {:?}",
                r.two_qubit_gates, r.verified, r.endpoint_degrees, r.interior_degrees
            );
            out.emit(&r, &s, r.verified)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
