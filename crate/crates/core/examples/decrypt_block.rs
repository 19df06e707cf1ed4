//! Decompose a ciphertext under the keys (n, d) and recover its plaintext.
//!
//! cargo run -p missp --example decrypt_block

use missp::{decompose, decrypt_block, CipherBlock, Keys};

fn main() {
    let block: CipherBlock = "55495458205016966826278532461565".parse().unwrap();
    let keys = Keys::new(4, 2).unwrap();

    let family = decompose(&block, &keys).unwrap();
    for set in family.sets() {
        println!("{:?}", set.items());
    }
    println!("plaintext: {}", decrypt_block(&block, &keys).unwrap());

    // Wrong keys cut the digits differently; decryption fails instead of
    // returning garbage.
    let wrong = Keys::new(2, 2).unwrap();
    match decrypt_block(&block, &wrong) {
        Ok(v) => println!("wrong keys decrypted to {v}"),
        Err(e) => println!("wrong keys: {e}"),
    }
}
