//! How the chance of a common sum moves with n and m, as CSV on stdout.
//!
//! cargo run --release -p missp --example uniqueness_sweep -- [trials]

use missp::analysis::{sweep, write_csv};

fn main() {
    let trials = std::env::args()
        .nth(1)
        .map(|t| t.parse().expect("trials"))
        .unwrap_or(10_000);
    let mut stats = sweep(&[2, 3, 4, 5], &[4], &[2], trials, 7);
    stats.extend(sweep(&[3], &[3, 5, 7], &[2], trials, 7));
    write_csv(&stats, std::io::stdout()).unwrap();
}
