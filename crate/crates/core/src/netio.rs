//! Framed transfer of ciphertext blocks over TCP.
//!
//! Wire layout, big-endian:
//!
//! ```text
//! offset  size  field
//! 0       4     magic "MSSP"
//! 4       1     version (0x01)
//! 5       4     block_count (>= 1)
//! 9       4     payload_len (divisible by block_count)
//! 13      ...   payload: ASCII digits, blocks back to back
//! ```
//!
//! Keys are never sent. The receiver recovers the block length as
//! `payload_len / block_count`.

use std::io::{self, Read, Write};
use std::net::{SocketAddr, TcpListener, TcpStream, ToSocketAddrs};
use std::ops::ControlFlow;
use std::time::Duration;

use thiserror::Error;

use crate::codec::CipherBlock;

pub const MAGIC: [u8; 4] = *b"MSSP";
pub const VERSION: u8 = 0x01;
pub const HEADER_LEN: usize = 13;
pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(30);
/// Frames announcing a larger payload are rejected before allocating.
pub const MAX_PAYLOAD: usize = 64 << 20;

#[derive(Debug, Error)]
pub enum NetError {
    #[error("blocks differ in length")]
    RaggedBlocks,
    #[error("no blocks to send")]
    EmptyPayload,
    #[error("bad magic {0:02x?}")]
    BadMagic([u8; 4]),
    #[error("unsupported frame version {0}")]
    UnsupportedVersion(u8),
    #[error("corrupt frame: {0}")]
    FrameCorrupt(String),
    #[error("connection to {addr} failed: {source}")]
    ConnectionFailed { addr: String, source: io::Error },
    #[error("timed out")]
    Timeout,
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn corrupt(msg: impl Into<String>) -> NetError {
    NetError::FrameCorrupt(msg.into())
}

pub fn encode_frame(blocks: &[CipherBlock]) -> Result<Vec<u8>, NetError> {
    let first = blocks.first().ok_or(NetError::EmptyPayload)?;
    let block_len = first.len();
    if block_len == 0 {
        return Err(NetError::EmptyPayload);
    }
    if blocks.iter().any(|b| b.len() != block_len) {
        return Err(NetError::RaggedBlocks);
    }
    let count = u32::try_from(blocks.len()).map_err(|_| corrupt("too many blocks"))?;
    let payload_len =
        u32::try_from(block_len * blocks.len()).map_err(|_| corrupt("payload too large"))?;

    let mut out = Vec::with_capacity(HEADER_LEN + payload_len as usize);
    out.extend_from_slice(&MAGIC);
    out.push(VERSION);
    out.extend_from_slice(&count.to_be_bytes());
    out.extend_from_slice(&payload_len.to_be_bytes());
    for block in blocks {
        out.extend_from_slice(block.as_bytes());
    }
    Ok(out)
}

struct Header {
    block_count: u32,
    payload_len: u32,
}

fn parse_header(bytes: &[u8; HEADER_LEN]) -> Result<Header, NetError> {
    let magic: [u8; 4] = bytes[0..4].try_into().unwrap();
    if magic != MAGIC {
        return Err(NetError::BadMagic(magic));
    }
    if bytes[4] != VERSION {
        return Err(NetError::UnsupportedVersion(bytes[4]));
    }
    let block_count = u32::from_be_bytes(bytes[5..9].try_into().unwrap());
    let payload_len = u32::from_be_bytes(bytes[9..13].try_into().unwrap());
    if block_count == 0 {
        return Err(corrupt("block_count is zero"));
    }
    if payload_len == 0 || !payload_len.is_multiple_of(block_count) {
        return Err(corrupt(format!(
            "payload_len {payload_len} not a positive multiple of block_count {block_count}"
        )));
    }
    Ok(Header {
        block_count,
        payload_len,
    })
}

fn split_payload(header: &Header, payload: &[u8]) -> Result<Vec<CipherBlock>, NetError> {
    if let Some(pos) = payload.iter().position(|b| !b.is_ascii_digit()) {
        return Err(corrupt(format!("non-digit payload byte at {pos}")));
    }
    let block_len = (header.payload_len / header.block_count) as usize;
    Ok(payload
        .chunks(block_len)
        .map(|chunk| {
            CipherBlock::new(std::str::from_utf8(chunk).expect("ascii digits"))
                .expect("ascii digits")
        })
        .collect())
}

/// Parses exactly one frame occupying all of `bytes`.
pub fn decode_frame(bytes: &[u8]) -> Result<Vec<CipherBlock>, NetError> {
    let header: &[u8; HEADER_LEN] = bytes
        .get(..HEADER_LEN)
        .ok_or_else(|| corrupt("truncated header"))?
        .try_into()
        .unwrap();
    let header = parse_header(header)?;
    let payload = &bytes[HEADER_LEN..];
    if payload.len() != header.payload_len as usize {
        return Err(corrupt(format!(
            "payload_len {} but {} bytes present",
            header.payload_len,
            payload.len()
        )));
    }
    split_payload(&header, payload)
}

fn map_read_err(err: io::Error) -> NetError {
    match err.kind() {
        io::ErrorKind::UnexpectedEof => corrupt("stream ended mid-frame"),
        io::ErrorKind::WouldBlock | io::ErrorKind::TimedOut => NetError::Timeout,
        _ => NetError::Io(err),
    }
}

/// Reads one frame from a stream.
pub fn read_frame<R: Read>(reader: &mut R) -> Result<Vec<CipherBlock>, NetError> {
    let mut header = [0u8; HEADER_LEN];
    reader.read_exact(&mut header).map_err(map_read_err)?;
    let header = parse_header(&header)?;
    let len = header.payload_len as usize;
    if len > MAX_PAYLOAD {
        return Err(corrupt(format!("payload_len {len} exceeds limit")));
    }
    let mut payload = vec![0u8; len];
    reader.read_exact(&mut payload).map_err(map_read_err)?;
    split_payload(&header, &payload)
}

/// Connects, writes one frame carrying `blocks`, and closes.
pub fn send<A: ToSocketAddrs>(
    addr: A,
    blocks: &[CipherBlock],
    timeout: Duration,
) -> Result<(), NetError> {
    let frame = encode_frame(blocks)?;
    let addrs: Vec<SocketAddr> = addr.to_socket_addrs()?.collect();
    let mut last_err = None;
    for target in &addrs {
        match TcpStream::connect_timeout(target, timeout) {
            Ok(mut stream) => {
                stream.set_write_timeout(Some(timeout))?;
                stream.write_all(&frame).map_err(map_read_err)?;
                stream.flush()?;
                stream.shutdown(std::net::Shutdown::Write)?;
                return Ok(());
            }
            Err(e) => last_err = Some((target.to_string(), e)),
        }
    }
    let (addr, source) = last_err.unwrap_or_else(|| {
        (
            String::from("<none>"),
            io::Error::new(io::ErrorKind::NotFound, "address resolved to nothing"),
        )
    });
    Err(NetError::ConnectionFailed { addr, source })
}

/// Sequential frame server: one connection at a time, one frame per connection.
pub struct Server {
    listener: TcpListener,
    timeout: Duration,
}

impl Server {
    pub fn bind<A: ToSocketAddrs>(addr: A) -> Result<Self, NetError> {
        Ok(Self {
            listener: TcpListener::bind(addr)?,
            timeout: DEFAULT_TIMEOUT,
        })
    }

    /// Read timeout applied to each accepted connection.
    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.timeout = timeout;
        self
    }

    pub fn local_addr(&self) -> Result<SocketAddr, NetError> {
        Ok(self.listener.local_addr()?)
    }

    /// Accepts one connection and reads its frame.
    pub fn accept_one(&self) -> Result<Vec<CipherBlock>, NetError> {
        let (mut stream, _) = self.listener.accept()?;
        stream.set_read_timeout(Some(self.timeout))?;
        read_frame(&mut stream)
    }

    /// Serves connections until the handler breaks. Each frame, or the error
    /// reading it, is passed to the handler.
    pub fn serve<F, T>(&self, mut handler: F) -> T
    where
        F: FnMut(Result<Vec<CipherBlock>, NetError>) -> ControlFlow<T>,
    {
        loop {
            if let ControlFlow::Break(out) = handler(self.accept_one()) {
                return out;
            }
        }
    }
}

/// Binds `0.0.0.0:port` and serves until the handler breaks.
pub fn serve<F, T>(port: u16, handler: F) -> Result<T, NetError>
where
    F: FnMut(Result<Vec<CipherBlock>, NetError>) -> ControlFlow<T>,
{
    Ok(Server::bind(("0.0.0.0", port))?.serve(handler))
}
