mod common;

use common::annotation_suite;

#[test]
fn acceptance_check_matches_cycle_oracle() {
    let n = annotation_suite(0xa11_0ca7, 4, 10_000).unwrap();
    assert!(n > 10_000);
}
