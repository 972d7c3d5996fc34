#![no_main]

use intquant::riskmeasures::{parse_measure_spec, spectral_weight_from_measure};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(mu) = parse_measure_spec(text) {
        let again = parse_measure_spec(&mu.to_string()).unwrap();
        assert_eq!(again.to_string(), mu.to_string());
        let w = spectral_weight_from_measure(&mu);
        let _ = w.value(0.5);
        let _ = w.antiderivative(0.999);
    }
});
