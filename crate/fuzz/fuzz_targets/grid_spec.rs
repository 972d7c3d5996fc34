#![no_main]

use intquant_cli::input::{parse_grid, parse_n_list};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(grid) = parse_grid(text) {
        assert!(!grid.is_empty());
        assert!(grid.windows(2).all(|w| w[0] < w[1]));
    }
    let _ = parse_n_list(text);
});
