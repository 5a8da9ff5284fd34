#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(p) = cy3_core::problem::parse_problem(s) {
            let again = cy3_core::problem::parse_problem(&p.to_json()).expect("re-parse");
            assert_eq!(again.cubic, p.cubic);
        }
    }
});
