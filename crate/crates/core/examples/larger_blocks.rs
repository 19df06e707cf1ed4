//! Larger blocks: four sets of 11 four-digit items, and four sets of nine
//! three-digit items.
//!
//! cargo run -p missp --example larger_blocks

use missp::{compose, decrypt_block, find_witness, Keys, SetFamily};

fn show(sets: Vec<Vec<u64>>, d: usize) {
    let family = SetFamily::from_items(sets).unwrap();
    let block = compose(&family, d).unwrap();
    let keys = Keys::new(family.len(), d).unwrap();
    let plain = decrypt_block(&block, &keys).unwrap();
    println!("C = {block}");
    println!("s = {plain}");
    for set in family.sets() {
        let w = find_witness(set, plain).unwrap();
        let terms: Vec<String> = w.items(set).map(|v| v.to_string()).collect();
        println!("  {}", terms.join("+"));
    }
}

fn main() {
    show(
        vec![
            vec![
                3549, 3131, 7488, 1315, 4458, 7365, 2855, 2740, 7048, 6229, 8228,
            ],
            vec![
                2929, 5455, 4958, 9854, 5140, 6684, 4221, 9644, 3311, 5138, 4929,
            ],
            vec![
                2218, 2856, 7934, 5148, 1685, 3161, 2583, 6929, 5654, 3931, 3931,
            ],
            vec![
                6597, 1925, 9012, 6079, 9466, 5153, 1897, 3136, 9989, 7530, 1895,
            ],
        ],
        4,
    );
    show(
        vec![
            vec![799, 983, 342, 767, 152, 577, 242, 663, 441],
            vec![740, 985, 671, 678, 720, 845, 472, 559, 646],
            vec![208, 978, 678, 249, 295, 875, 506, 162, 204],
            vec![711, 109, 183, 474, 250, 893, 534, 771, 926],
        ],
        3,
    );
}
