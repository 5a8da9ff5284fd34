#![no_main]

use cy3_core::arith::{parse_rational, QuadSurd};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(x) = s.parse::<QuadSurd>() {
            assert_eq!(x.to_string().parse::<QuadSurd>().unwrap(), x);
        }
        let _ = parse_rational(s);
    }
});
