//! A random Clifford circuit on both simulators; every tableau stabilizer
//! has expectation +1 in the dense state.

use qecc1wqc::qcore::Gate;
use qecc1wqc::stabsim::Tableau;
use qecc1wqc::svsim::{StateVector, Symbol};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> qecc1wqc::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let n = 6;
    let init = Symbol::parse_all("0+1-+0")?;
    let gates: Vec<Gate> = (0..60)
        .map(|_| {
            let q = rng.gen_range(0..n);
            match rng.gen_range(0..4) {
                0 => Gate::H(q),
                1 => Gate::S(q),
                2 => Gate::X(q),
                _ => Gate::Cz(q, (q + rng.gen_range(1..n)) % n),
            }
        })
        .collect();
    let mut t = Tableau::init(&init);
    t.apply_gates(&gates)?;
    let mut s = StateVector::init(&init)?;
    s.apply_gates(&gates)?;
    for g in t.canonical_generators() {
        println!("{g}  <g> = {:.6}", s.expectation(&g)?.re);
    }
    Ok(())
}
