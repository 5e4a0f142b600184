#![no_main]
use libfuzzer_sys::fuzz_target;
use salvetti::coxeter::{parse_type_spec, CoxeterSystem};

fuzz_target!(|data: String| {
    if let Ok(labels) = parse_type_spec(&data) {
        let printed: Vec<String> = labels.iter().map(ToString::to_string).collect();
        assert_eq!(parse_type_spec(&printed.join("x")).unwrap(), labels);
        if labels.iter().map(|l| l.rank()).sum::<usize>() <= 16 {
            let _ = CoxeterSystem::product(&labels);
        }
    }
});
