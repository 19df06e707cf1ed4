//! Send encrypted blocks to an in-process receiver over TCP.
//!
//! cargo run -p missp --example loopback_transfer

use std::thread;
use std::time::Duration;

use missp::netio::{encode_frame, send, Server};
use missp::{decrypt_block, encrypt_value, CipherParams, RandomSource};

fn main() {
    let params = CipherParams::new(4, 5, 2).unwrap();
    let keys = params.keys();
    let mut rng = RandomSource::from_seed(1);
    let blocks: Vec<_> = [112, 250, 77]
        .into_iter()
        .map(|v| encrypt_value(v, &params, &mut rng).unwrap())
        .collect();

    let frame = encode_frame(&blocks).unwrap();
    println!("frame: {} bytes, header {:02x?}", frame.len(), &frame[..13]);

    let server = Server::bind("127.0.0.1:0").unwrap();
    let addr = server.local_addr().unwrap();
    let receiver = thread::spawn(move || {
        let received = server.accept_one().unwrap();
        received
            .iter()
            .map(|b| decrypt_block(b, &keys).unwrap())
            .collect::<Vec<_>>()
    });

    send(addr, &blocks, Duration::from_secs(5)).unwrap();
    println!("receiver decrypted {:?}", receiver.join().unwrap());
}
