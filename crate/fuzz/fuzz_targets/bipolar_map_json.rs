#![no_main]
use libfuzzer_sys::fuzz_target;
use permlab_baxter::BipolarMap;

fuzz_target!(|data: &[u8]| {
    let _ = BipolarMap::parse_bytes(data);
});
