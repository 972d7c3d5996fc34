#![no_main]

use intquant::{parse_dist_spec, Model};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(m) = parse_dist_spec(text) {
        // accepted specs must round trip and evaluate without panicking
        assert_eq!(parse_dist_spec(&m.to_string()).unwrap().to_string(), m.to_string());
        for u in [0.001, 0.5, 0.999] {
            let _ = m.quantile(u);
            let _ = m.integrated_upper_quantile(u);
        }
    }
});
