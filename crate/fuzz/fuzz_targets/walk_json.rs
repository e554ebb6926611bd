#![no_main]
use libfuzzer_sys::fuzz_target;
use permlab_baxter::Walk;

fuzz_target!(|data: &[u8]| {
    let _ = Walk::parse_bytes(data);
});
