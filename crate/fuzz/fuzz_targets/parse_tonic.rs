#![no_main]

use libfuzzer_sys::fuzz_target;
use saptak::Tonic;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(tonic) = Tonic::parse(text) {
        let sa = tonic.sa_frequency().get();
        assert!(sa.is_finite() && sa > 0.0);
    }
});
