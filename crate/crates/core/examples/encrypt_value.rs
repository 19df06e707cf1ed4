//! Encrypt one integer into a block with a unique common sum, then decrypt.
//!
//! cargo run -p missp --example encrypt_value -- 112 4 4 2 [seed]

use missp::{decompose, decrypt_block, encrypt_value, find_witness, CipherParams, RandomSource};

fn main() {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("numeric arguments"))
        .collect();
    let value = args.first().copied().unwrap_or(112);
    let n = args.get(1).copied().unwrap_or(4) as usize;
    let m = args.get(2).copied().unwrap_or(4) as usize;
    let d = args.get(3).copied().unwrap_or(2) as usize;
    let mut rng = match args.get(4) {
        Some(&seed) => RandomSource::from_seed(seed),
        None => RandomSource::from_entropy(),
    };

    let params = CipherParams::new(n, m, d).unwrap();
    let (lo, hi) = params.plaintext_range();
    println!("keys n={n} d={d}, m={m}; plaintext range [{lo}, {hi}]");

    let block = match encrypt_value(value, &params, &mut rng) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(1);
        }
    };
    println!("ciphertext: {block}");
    for set in decompose(&block, &params.keys()).unwrap().sets() {
        let w = find_witness(set, value).unwrap();
        println!(
            "  {:?} -> {:?}",
            set.items(),
            w.items(set).collect::<Vec<_>>()
        );
    }
    println!(
        "decrypted: {}",
        decrypt_block(&block, &params.keys()).unwrap()
    );
}
