#![no_main]

use ghspace_core::format::{format_matrix, parse_matrix};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(x) = parse_matrix(text) else {
        return;
    };
    let printed = format_matrix(&x);
    let y = parse_matrix(&printed).expect("formatted output parses");
    assert_eq!(x, y);
    assert_eq!(format_matrix(&y), printed);
});
