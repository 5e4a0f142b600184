#![no_main]
use libfuzzer_sys::fuzz_target;
use salvetti_cli::config::DegreeFilter;

fuzz_target!(|data: String| {
    if let Ok(f) = DegreeFilter::parse(&data) {
        let _ = f.contains(0);
    }
});
