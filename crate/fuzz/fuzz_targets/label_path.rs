#![no_main]
use libfuzzer_sys::fuzz_target;
use permlab_gentree::{LabelPath, SuccessionRule};

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = LabelPath::parse(&SuccessionRule::av1423_4123(), s);
    }
});
