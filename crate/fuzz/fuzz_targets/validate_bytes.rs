#![no_main]

use ghspace_core::validate;
use libfuzzer_sys::fuzz_target;

// First byte picks n (at most 8), the rest are read as little-endian f64s.
fuzz_target!(|data: &[u8]| {
    let Some((&head, rest)) = data.split_first() else {
        return;
    };
    let n = (head % 9) as usize;
    let mut values = rest
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()));
    let raw: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..n).map(|_| values.next().unwrap_or(0.0)).collect())
        .collect();
    if let Ok(x) = validate(raw) {
        for i in 0..n {
            for j in 0..n {
                assert_eq!(x.get(i, j), x.get(j, i));
                assert!(x.get(i, j).is_finite());
            }
        }
    }
});
