#![no_main]

use libfuzzer_sys::fuzz_target;
use testcover::io::{parse_instance, write_instance};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(mut inst) = parse_instance(text) else {
        return;
    };
    inst.validate();
    let rendered = write_instance(&inst, true);
    let again = parse_instance(&rendered).expect("canonical render must reparse");
    assert_eq!(write_instance(&again, true), rendered);
});
