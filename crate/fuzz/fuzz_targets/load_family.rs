#![no_main]
use libfuzzer_sys::fuzz_target;
use salvetti::filtered_complex::{build_generic_complex, check_d_squared, load_family, write_family};
use salvetti::laurent::CoefficientDomain;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let domain = CoefficientDomain::Rationals;
    if let Ok(fam) = load_family(text, domain) {
        let again = load_family(&write_family(&fam), domain).expect("written family reloads");
        assert_eq!(fam, again);
        if fam.generator_count() <= 4 {
            let c = build_generic_complex(&fam).expect("validated family builds");
            assert!(check_d_squared(&c));
        }
    }
});
