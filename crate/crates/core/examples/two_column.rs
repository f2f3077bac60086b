//! Several hops back and forth between the two columns, adapting each angle
//! to the outcomes so far.

use qecc1wqc::harness::run_two_column_computation;
use qecc1wqc::svsim::random_qubit;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> qecc1wqc::Result<()> {
    let psi = random_qubit(&mut ChaCha8Rng::seed_from_u64(10));
    let program = [0.3, -1.0, 2.2, 0.7];
    let r = run_two_column_computation(psi, &program, 6, &[], 10)?;
    for h in &r.hops {
        println!(
            "hop {} {}: xi {:+.2} measured at {:+.2}, m={}, pending X^{}Z^{}",
            h.hop, h.direction, h.xi, h.xi_applied, h.m, h.frame[0], h.frame[1]
        );
    }
    println!("fidelity with H Rz(xi_k) ... |psi>: {:.12}", r.fidelity);
    Ok(())
}
