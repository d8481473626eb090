#![no_main]
use libfuzzer_sys::fuzz_target;
use webdimer::tagged::{parse_tagged_web, serialize_tagged_web};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(web) = parse_tagged_web(text) {
        let again = parse_tagged_web(&serialize_tagged_web(&web)).expect("serialized webs parse");
        assert_eq!(again, web);
    }
});
