//! Four logical qubits in a line, built by both routes and checked against
//! an independent construction.

use qecc1wqc::protocols::horseshoe::{build_horseshoe_logical, Mode, Route};
use qecc1wqc::svsim::{random_qubit, Symbol};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> qecc1wqc::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for route in [Route::Chained, Route::Bridged] {
        let r = build_horseshoe_logical(Symbol::Zero.amplitudes(), Symbol::Plus.amplitudes(), route, Mode::Tableau)?;
        println!("{route}: {} CZ, tableau check {}", r.two_qubit_gates, r.verified);
    }
    let (psi, phi) = (random_qubit(&mut rng), random_qubit(&mut rng));
    let r = build_horseshoe_logical(psi, phi, Route::Chained, Mode::Dense)?;
    println!("dense, random inputs: fidelity {:.12}", r.fidelity.unwrap_or(0.0));
    println!("degrees: ends {:?}, middle {:?}", r.endpoint_degrees, r.interior_degrees);
    Ok(())
}

