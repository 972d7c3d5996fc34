#![no_main]

use intquant_cli::input::parse_losses;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(losses) = parse_losses(data) {
        assert!(!losses.is_empty());
        assert!(losses.iter().all(|x| x.is_finite()));
    }
});
