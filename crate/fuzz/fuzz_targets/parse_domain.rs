#![no_main]
use libfuzzer_sys::fuzz_target;
use salvetti::laurent::CoefficientDomain;

fuzz_target!(|data: String| {
    if let Ok(d) = data.parse::<CoefficientDomain>() {
        assert_eq!(d.to_string().parse::<CoefficientDomain>().unwrap(), d);
    }
});
