#![no_main]

use ghspace_core::format::parse_matrix;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(x) = parse_matrix(text) {
            for i in 0..x.len() {
                assert_eq!(x.get(i, i), 0.0);
            }
        }
    }
});
