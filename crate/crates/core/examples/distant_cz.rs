//! CZ across a chain of measured ancillae, for every outcome pattern.

use qecc1wqc::lattice::dense_bridge;
use qecc1wqc::qcore::Gate;
use qecc1wqc::svsim::{fidelity, random_qubit, StateVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> qecc1wqc::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (u, v) = (random_qubit(&mut rng), random_qubit(&mut rng));
    let mut ideal = StateVector::product(&[u, v])?;
    ideal.apply(&Gate::Cz(0, 1))?;
    for k in [2usize, 4] {
        for bits in 0..(1u32 << k) {
            let outcomes: Vec<u8> = (0..k).map(|i| ((bits >> i) & 1) as u8).collect();
            let (got, byproduct) = dense_bridge(u, v, &outcomes)?;
            let mut want = ideal.clone();
            want.apply_pauli(&byproduct)?;
            println!("{outcomes:?} byproduct {byproduct} fidelity {:.12}", fidelity(&got, &want)?);
        }
    }
    match dense_bridge(u, v, &[0, 1, 0]) {
        Err(e) => println!("odd interior: {e}"),
        Ok(_) => println!("odd interior unexpectedly accepted"),
    }
    Ok(())
}
