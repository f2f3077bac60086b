//! The encoder of B pushed through the fan from A: sequential circuit equals
//! the graph-state form up to a logical Z on B.

use qecc1wqc::protocols::push_through_check;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> qecc1wqc::Result<()> {
    let r = push_through_check(20, &mut ChaCha8Rng::seed_from_u64(4))?;
    println!("inputs checked: {}", r.fidelities.len());
    println!("min fidelity:   {:.12}", r.min_fidelity);
    println!("without Z^L:    {:.6}", r.negative_control_min);
    Ok(())
}
