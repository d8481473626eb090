#![no_main]
use libfuzzer_sys::fuzz_target;
use webdimer::exact::MultiPoly;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = MultiPoly::parse(text) {
        assert_eq!(MultiPoly::parse(&p.to_string()).expect("printed polynomials parse"), p);
    }
});
