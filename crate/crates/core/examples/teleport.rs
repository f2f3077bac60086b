//! One encoded teleportation hop: B ends in (X^L)^m H^L Rz^L(xi)|psi^L>.

use num_complex::Complex64 as C;
use qecc1wqc::protocols::{encoded_teleport, TeleportConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> qecc1wqc::Result<()> {
    let psi = [C::new(0.6, 0.0), C::new(0.0, 0.8)];
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for xi in [0.0, 0.5, -1.2] {
        for m in 0..2 {
            let cfg = TeleportConfig { forced_m: Some(m), ..TeleportConfig::new(psi, xi) };
            let r = encoded_teleport(&cfg, &mut rng)?;
            println!("xi={xi:+.2} m={} fidelity={:.12} intermediate={:.12}", r.m, r.fidelity, r.intermediate_fidelity);
        }
    }
    let c = qecc1wqc::protocols::teleport::gate_counts();
    println!("two-qubit gates: {} to build, {} to decode A, {} total", c.preparation, c.decode, c.total);
    Ok(())
}
