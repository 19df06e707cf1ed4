//! Common subset sums of integer set families, and a toy symmetric cipher
//! built on them.
//!
//! A ciphertext is a string of decimal digits. Under the private keys `n`
//! (number of sets) and `d` (digits per item) it splits into `n` sets of
//! `d`-digit integers; the plaintext is the single value that some nonempty
//! sub-multiset of *every* set sums to.
//!
//! ```
//! use missp::{decrypt_block, CipherBlock, Keys};
//!
//! let block: CipherBlock = "55495458205016966826278532461565".parse().unwrap();
//! let keys = Keys::new(4, 2).unwrap();
//! assert_eq!(decrypt_block(&block, &keys).unwrap(), 112);
//! ```
//!
//! Modules:
//!
//! - [`solver`]: per-set sum sets, pruned intersection, witnesses.
//! - [`codec`]: digit string ↔ set family under the keys.
//! - [`cipher`]: plant-and-reject encryption, decryption.
//! - [`dictionary`]: text signs ↔ numeric codes.
//! - [`netio`]: length-prefixed TCP framing.
//! - [`analysis`]: Monte-Carlo result-count statistics.
//! - [`cli`]: the `missp` command-line front end.
//!
//! None of this is secure cryptography.

pub mod analysis;
pub mod cipher;
pub mod cli;
pub mod codec;
pub mod dictionary;
pub mod netio;
pub mod solver;

pub use cipher::{
    decrypt_block, encrypt_value, plaintext_range, CipherError, CipherParams, RandomSource,
};
pub use codec::{compose, decompose, CipherBlock, CodecError, Keys};
pub use dictionary::{
    decode_codes, encode_text, generate_default_dictionary, load_dictionary, DictionaryError,
    DictionaryMap,
};
pub use solver::{
    achievable_sums, common_sums, find_witness, solve_missp, ItemMultiset, MisspResult, SetFamily,
    SumSet, Witness,
};
