//! Byproducts pushed through a Clifford circuit instead of being corrected
//! on the spot.

use qecc1wqc::qcore::{ByproductFrame, Gate, PauliString};

fn main() -> qecc1wqc::Result<()> {
    let mut frame = ByproductFrame::new(3);
    frame.record(&"XIZ".parse::<PauliString>()?)?;
    println!("start        {}", frame.to_pauli());
    for g in [Gate::Cz(0, 1), Gate::H(2), Gate::Cz(1, 2), Gate::S(0)] {
        frame.conjugate(&g)?;
        println!("after {:<8} {}", format!("{g:?}"), frame.to_pauli());
    }
    Ok(())
}
