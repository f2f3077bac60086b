//! Cat-state checks of the code stabilizers on a logical state, with and
//! without an injected data error, and with a faulty cat.

use qecc1wqc::code5;
use qecc1wqc::protocols::ghz_verify::{ghz_verify_logical, AncillaFault, DEFAULT_ROUNDS};
use qecc1wqc::qcore::{Pauli, PauliString};
use qecc1wqc::svsim::random_qubit;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> qecc1wqc::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let clean = code5::logical_state(random_qubit(&mut rng));
    let r = ghz_verify_logical(&clean, DEFAULT_ROUNDS, None, &mut rng)?;
    println!("clean:      flags {} ancilla failures {} passed {}", r.data_flags, r.ancilla_failures, r.passed);

    let mut bad = clean.clone();
    bad.apply_pauli(&PauliString::single(5, 2, Pauli::X))?;
    let r = ghz_verify_logical(&bad, DEFAULT_ROUNDS, None, &mut rng)?;
    println!("X on q3:    flags {} ancilla failures {} passed {}", r.data_flags, r.ancilla_failures, r.passed);

    let fault = AncillaFault { round: 0, cat_qubit: 1, pauli: Pauli::X };
    let r = ghz_verify_logical(&clean, DEFAULT_ROUNDS, Some(fault), &mut rng)?;
    println!("cat fault:  flags {} ancilla failures {} passed {}", r.data_flags, r.ancilla_failures, r.passed);
    Ok(())
}
