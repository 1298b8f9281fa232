mod common;

use common::golden::{check_case, CASES};

#[test]
fn cli_matches_golden_files() {
    let failures: Vec<String> = CASES.iter().filter_map(|case| check_case(case).err()).collect();
    assert!(failures.is_empty(), "{}", failures.join("\n\n"));
}
