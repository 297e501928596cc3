#![no_main]

use ghspace_core::format::parse_scales;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(scales) = parse_scales(text) {
            assert!(scales.iter().all(|s| s.is_finite()));
        }
    }
});
