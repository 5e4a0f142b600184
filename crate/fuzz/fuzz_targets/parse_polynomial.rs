#![no_main]
use libfuzzer_sys::fuzz_target;
use salvetti::laurent::{parse_polynomial, CoefficientDomain};

// Printing is canonical: whatever parses must print to a fixed point.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    for domain in [
        CoefficientDomain::Rationals,
        CoefficientDomain::Integers,
        CoefficientDomain::PrimeField(7),
    ] {
        if let Ok(p) = parse_polynomial(text, domain) {
            let printed = p.to_string();
            let again = parse_polynomial(&printed, domain).expect("canonical output reparses");
            assert_eq!(p, again);
            assert_eq!(printed, again.to_string());
        }
    }
});
