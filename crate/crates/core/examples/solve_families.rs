//! Classify small families by their number of common sums and show one
//! witness per set.
//!
//! cargo run -p missp --example solve_families

use missp::{find_witness, solve_missp, MisspResult, SetFamily};

fn main() {
    let families = [
        (
            "A",
            vec![vec![22, 4, 23, 16], vec![8, 3, 17, 21], vec![8, 13, 9, 19]],
        ),
        (
            "B",
            vec![
                vec![22, 3, 20, 15],
                vec![5, 1, 17, 21],
                vec![8, 10, 7, 19],
                vec![23, 5, 26, 19, 4],
            ],
        ),
        (
            "C",
            vec![
                vec![8, 15, 11, 9, 1],
                vec![13, 2, 7, 1],
                vec![18, 11, 10, 19],
            ],
        ),
    ];

    for (name, sets) in families {
        let family = SetFamily::from_items(sets).unwrap();
        let result = solve_missp(&family);
        println!("family {name}: {result}");

        let sums = match &result {
            MisspResult::Unique(s) => vec![*s],
            MisspResult::Ambiguous(v) => v.clone(),
            MisspResult::Empty => continue,
        };
        for s in sums {
            for set in family.sets() {
                let w = find_witness(set, s).expect("common sum is reachable in every set");
                let terms: Vec<String> = w.items(set).map(|v| v.to_string()).collect();
                println!("  {:?}: {} = {s}", set.items(), terms.join("+"));
            }
        }
    }
}
