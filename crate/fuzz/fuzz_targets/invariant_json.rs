#![no_main]
use libfuzzer_sys::fuzz_target;
use webdimer::weblike::{parse_invariant, serialize_invariant};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(x) = parse_invariant(text) {
        assert_eq!(parse_invariant(&serialize_invariant(&x)).expect("serialized invariants parse"), x);
    }
});
