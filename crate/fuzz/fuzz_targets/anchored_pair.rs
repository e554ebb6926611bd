#![no_main]
use libfuzzer_sys::fuzz_target;
use permlab_square::AnchoredPair;

fuzz_target!(|data: &[u8]| {
    let _ = AnchoredPair::parse_bytes(data);
});
