//! The five-qubit code states three ways: amplitude table, pentagon graph
//! state, and local operations on the complete graph K5.

use qecc1wqc::code5;
use qecc1wqc::svsim::{fidelity, StateVector, Symbol};

fn main() -> qecc1wqc::Result<()> {
    let pentagon = code5::build_e2().gate_list()?;

    let mut from_plus = StateVector::init(&[Symbol::Plus; 5])?;
    from_plus.apply_gates(&pentagon)?;
    let mut from_minus = StateVector::init(&[Symbol::Minus; 5])?;
    from_minus.apply_gates(&pentagon)?;

    println!("|-L> vs pentagon|+++++>  {:.12}", fidelity(&code5::logical_minus(), &from_plus)?);
    println!("|+L> vs pentagon|----->  {:.12}", fidelity(&code5::logical_plus(), &from_minus)?);
    println!("|0L> vs local ops on K5  {:.12}", fidelity(&code5::logical_zero(), &code5::logical_zero_from_k5())?);

    println!("\n|0L> amplitudes:");
    for (sign, bits) in code5::LOGICAL_ZERO_TERMS {
        println!("  {}|{bits}>", if sign > 0 { '+' } else { '-' });
    }
    for g in code5::code_stabilizers() {
        println!("stabilizer {g}");
    }
    Ok(())
}
