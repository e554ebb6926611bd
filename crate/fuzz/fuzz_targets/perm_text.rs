#![no_main]
use libfuzzer_sys::fuzz_target;
use permlab_perm::Perm;

fuzz_target!(|data: &[u8]| {
    let _ = Perm::parse_bytes(data);
});
