#![no_main]
use libfuzzer_sys::fuzz_target;
use webdimer::graph::{parse_network, serialize_network};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(net) = parse_network(text) {
        let again = parse_network(&serialize_network(&net)).expect("serialized networks parse");
        assert_eq!(again, net);
    }
});
