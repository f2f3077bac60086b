//! Reproduces the error / syndrome / outcome table by injecting each error
//! into register A after the logical cluster state is formed.

use qecc1wqc::code5::SYNDROME_TABLE;
use qecc1wqc::protocols::{encoded_teleport, InjectedError, TeleportConfig};
use qecc1wqc::svsim::random_qubit;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> qecc1wqc::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let psi = random_qubit(&mut rng);
    println!("error\tsyndrome\toutcome\tfidelity");
    for row in SYNDROME_TABLE {
        let error = (row.error != "None").then(|| InjectedError::protected(row.error_operator()));
        let r = encoded_teleport(&TeleportConfig { error, ..TeleportConfig::new(psi, 0.4) }, &mut rng)?;
        let mark = if r.syndrome == row.syndrome() { "" } else { "  <-- mismatch" };
        println!("{}\t{}\t{}\t{:.9}{mark}", row.error, r.syndrome, r.correction.label(), r.fidelity);
    }
    Ok(())
}
