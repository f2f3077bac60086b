//! Runs every shipped lattice schedule, checks it against its target
//! circuit and prints the operation counts.

use qecc1wqc::lattice::{named_schedule, simultaneous_encode_decode, verify_schedule, SCHEDULE_NAMES};

fn main() -> qecc1wqc::Result<()> {
    println!("{:<18} {:>8} {:>5} {:>5} {:>9} {:>6}", "schedule", "GlobalCZ", "H", "V", "measured", "ok");
    for name in SCHEDULE_NAMES {
        let r = verify_schedule(&named_schedule(name)?, 1, None)?;
        let c = &r.counts;
        println!("{name:<18} {:>8} {:>5} {:>5} {:>9} {:>6}", c.global_cz, c.horizontal, c.vertical, c.measured, r.equal);
    }
    let hop = simultaneous_encode_decode(1)?;
    println!("\nhop: {} layers when A decodes while B encodes, {} one after the other", hop.simultaneous, hop.sequential);

    // negative control: leave one bridge ancilla unmeasured
    let r = verify_schedule(&named_schedule("E1_lattice")?, 1, Some([1, 3]))?;
    println!("E1 with (1,3) left unmeasured: {}", r.runs[0].diagnostic.as_deref().unwrap_or("ok"));
    Ok(())
}
