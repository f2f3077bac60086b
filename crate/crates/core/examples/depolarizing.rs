//! Depolarizing noise in the protected window against the prediction from
//! enumerating all 1024 Paulis on register A.

use qecc1wqc::harness::run_depolarizing;

fn main() -> qecc1wqc::Result<()> {
    for p in [1e-3, 1e-2, 0.1] {
        let r = run_depolarizing(p, 5_000, 12, false)?;
        let pr = r.prediction.as_ref().expect("protected-only model");
        println!(
            "p={p:<6} failures {:>4}/{}  rate {:.5}  predicted {:.5}  ({:+.2} sigma)",
            r.aggregate.failures, r.trials, r.aggregate.failure_rate, pr.failure_rate, pr.deviation_sigmas
        );
    }
    let r = run_depolarizing(1e-2, 5_000, 12, true)?;
    println!("unprotected p=0.01: rate {:.5}", r.aggregate.failure_rate);
    Ok(())
}
