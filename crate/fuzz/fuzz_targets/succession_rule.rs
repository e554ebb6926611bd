#![no_main]
use libfuzzer_sys::fuzz_target;
use permlab_gentree::SuccessionRule;

fuzz_target!(|data: &[u8]| {
    let _ = SuccessionRule::parse_bytes(data);
});
