//! The acceptance criteria. Prints one PASS or FAIL line per criterion and
//! exits nonzero if any fails. Criteria run on separate threads; the output
//! order is fixed.

use std::process::ExitCode;
use std::thread;

use symcode::verify::criteria;

fn main() -> ExitCode {
    let seed = 0;
    let records: Vec<_> = thread::scope(|s| {
        let handles: Vec<_> = criteria()
            .into_iter()
            .map(|c| s.spawn(move || (c.id, (c.run)(seed))))
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut failed = 0;
    for (id, r) in &records {
        let tag = if r.pass { "PASS" } else { "FAIL" };
        println!("{tag} criterion {id:2} {}: {} -> {}", r.name, r.inputs, r.got);
        failed += usize::from(!r.pass);
    }
    println!("acceptance: {} criteria, {failed} failed", records.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
