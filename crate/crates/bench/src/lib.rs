//! Benchmarks live in `benches/`; this crate holds shared fixtures.

use qbecc::registry::{lookup, table1};
use qbecc::search::build_entry;
use qbecc::StabilizerCode;

/// A registry code by id.
pub fn registry_code(id: &str) -> StabilizerCode {
    let t = table1();
    build_entry(lookup(&t, id).expect("known id")).expect("registry code builds")
}
