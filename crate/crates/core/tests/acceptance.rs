//! Runs every acceptance criterion and prints one line per criterion.

use theta_kernel::verify::run_all;

#[test]
fn acceptance() {
    let results = run_all();
    for c in &results {
        println!("{}", c.line());
    }
    let failed: Vec<u32> = results.iter().filter(|c| !c.passed).map(|c| c.id).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
