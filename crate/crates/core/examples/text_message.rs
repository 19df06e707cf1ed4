//! Text through a dictionary: one block per sign.
//!
//! cargo run -p missp --example text_message -- "some text"

use missp::{
    decode_codes, decrypt_block, encode_text, encrypt_value, generate_default_dictionary,
    load_dictionary, CipherParams, RandomSource,
};

fn main() {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "Meet at noon.".to_string());
    let params = CipherParams::new(4, 4, 2).unwrap();
    let mut rng = RandomSource::from_seed(2024);

    let dict = generate_default_dictionary(&params, &mut rng).unwrap();
    // The file format round-trips; this is what `missp dict gen` writes.
    let dict = load_dictionary(&dict.render()).unwrap();

    let codes = encode_text(&text, &dict).unwrap();
    println!("codes: {codes:?}");
    let blocks: Vec<_> = codes
        .iter()
        .map(|&c| encrypt_value(c, &params, &mut rng).unwrap())
        .collect();
    let stream: String = blocks.iter().map(|b| b.as_str()).collect();
    println!("ciphertext ({} digits): {stream}", stream.len());

    let keys = params.keys();
    let recovered: Vec<u64> = blocks
        .iter()
        .map(|b| decrypt_block(b, &keys).unwrap())
        .collect();
    println!("decrypted: {}", decode_codes(&recovered, &dict).unwrap());
}
