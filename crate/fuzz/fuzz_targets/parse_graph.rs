#![no_main]

use libfuzzer_sys::fuzz_target;
use testcover::io::{parse_graph, write_graph};
use testcover::reductions::is_to_tc;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(g) = parse_graph(text) else {
        return;
    };
    let rendered = write_graph(&g);
    let again = parse_graph(&rendered).expect("render must reparse");
    assert_eq!(write_graph(&again), rendered);
    if (2..=12).contains(&g.q()) {
        // the reduction validates its own output, so it doubles as an oracle
        let _ = is_to_tc(&g);
    }
});
