//! The `missp` command line.
//!
//! Failures print a single line to stderr, `ERR <Code>[ block=<i>] msg="..."`,
//! and exit with the code's distinct status (see [`CliError::exit_code`]).
//!
//! Ciphertext files hold two lines: `m=<int>` and the digit stream, which is
//! one `n·m·d`-digit block per plaintext sign.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::analysis;
use crate::cipher::{self, CipherError, CipherParams, RandomSource, DEFAULT_MAX_ATTEMPTS};
use crate::codec::{decompose, CipherBlock, CodecError, Keys};
use crate::dictionary::{self, DictionaryError, DictionaryMap};
use crate::netio::{self, NetError, Server};
use crate::solver::solve_missp;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("ciphertext file: {0}")]
    BadCiphertextFile(String),
    #[error(transparent)]
    Codec(#[from] CodecError),
    #[error(transparent)]
    Cipher(#[from] CipherError),
    #[error(transparent)]
    Dictionary(#[from] DictionaryError),
    #[error(transparent)]
    Net(#[from] NetError),
    #[error("while processing block {block}: {source}")]
    AtBlock {
        block: usize,
        #[source]
        source: Box<CliError>,
    },
}

impl CliError {
    fn at_block(block: usize, err: impl Into<CliError>) -> Self {
        CliError::AtBlock {
            block,
            source: Box::new(err.into()),
        }
    }

    fn innermost(&self) -> &CliError {
        match self {
            CliError::AtBlock { source, .. } => source.innermost(),
            CliError::Cipher(CipherError::Codec(_)) => self,
            other => other,
        }
    }

    /// Stable name printed after `ERR`.
    pub fn code(&self) -> &'static str {
        self.name_and_status().0
    }

    pub fn exit_code(&self) -> i32 {
        self.name_and_status().1
    }

    fn name_and_status(&self) -> (&'static str, i32) {
        match self.innermost() {
            CliError::Usage(_) => ("UsageError", 2),
            CliError::Io { .. } => ("IoError", 3),
            CliError::BadCiphertextFile(_) => ("BadCiphertextFile", 4),
            CliError::Codec(e) | CliError::Cipher(CipherError::Codec(e)) => match e {
                CodecError::InvalidKeys(_) => ("InvalidKeys", 10),
                CodecError::NonDigitCiphertext { .. } => ("NonDigitCiphertext", 11),
                CodecError::LengthMismatch { .. } => ("LengthMismatch", 12),
                CodecError::ItemTooWide { .. } => ("ItemTooWide", 13),
                CodecError::RaggedFamily { .. } => ("RaggedFamily", 14),
            },
            CliError::Cipher(e) => match e {
                CipherError::PlaintextOutOfRange { .. } => ("PlaintextOutOfRange", 20),
                CipherError::GenerationBudgetExhausted { .. } => ("GenerationBudgetExhausted", 21),
                CipherError::NoSolution => ("NoSolution", 22),
                CipherError::AmbiguousPlaintext(_) => ("AmbiguousPlaintext", 23),
                CipherError::InvalidParams(_) => ("InvalidParams", 24),
                CipherError::Codec(_) => unreachable!(),
            },
            CliError::Dictionary(e) => match e {
                DictionaryError::DuplicateSign { .. } => ("DuplicateSign", 30),
                DictionaryError::DuplicateCode { .. } => ("DuplicateCode", 31),
                DictionaryError::MalformedLine { .. } => ("MalformedLine", 32),
                DictionaryError::NonPositiveCode { .. } => ("NonPositiveCode", 33),
                DictionaryError::RangeTooSmall { .. } => ("RangeTooSmall", 34),
                DictionaryError::UnknownSign(_) => ("UnknownSign", 35),
                DictionaryError::UnknownCode(_) => ("UnknownCode", 36),
            },
            CliError::Net(e) => match e {
                NetError::RaggedBlocks => ("RaggedBlocks", 40),
                NetError::EmptyPayload => ("EmptyPayload", 41),
                NetError::BadMagic(_) => ("BadMagic", 42),
                NetError::UnsupportedVersion(_) => ("UnsupportedVersion", 43),
                NetError::FrameCorrupt(_) => ("FrameCorrupt", 44),
                NetError::ConnectionFailed { .. } => ("ConnectionFailed", 45),
                NetError::Timeout => ("Timeout", 46),
                NetError::Io(_) => ("IoError", 3),
            },
            CliError::AtBlock { .. } => unreachable!(),
        }
    }

    /// The one-line report printed on failure.
    pub fn report_line(&self) -> String {
        let mut line = format!("ERR {}", self.code());
        if let CliError::AtBlock { block, .. } = self {
            line.push_str(&format!(" block={block}"));
        }
        let msg = self
            .innermost()
            .to_string()
            .replace('"', "'")
            .replace('\n', " ");
        line.push_str(&format!(" msg=\"{msg}\""));
        line
    }
}

#[derive(Debug, Parser)]
#[command(name = "missp", version, about = "Common-subset-sum cipher toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Encrypt a text file, one block per sign.
    Encrypt(EncryptArgs),
    /// Decrypt a ciphertext file back to text.
    Decrypt(DecryptArgs),
    /// Print the solver result for each block of a ciphertext.
    Solve(SolveArgs),
    /// Send a ciphertext file as one frame.
    Send(SendArgs),
    /// Receive one frame, decrypt it, and write the text.
    Recv(RecvArgs),
    /// Dictionary tools.
    Dict {
        #[command(subcommand)]
        command: DictCommand,
    },
    /// Estimate result-count probabilities for random families, as CSV.
    Analyze(AnalyzeArgs),
}

#[derive(Debug, Subcommand)]
enum DictCommand {
    /// Generate a printable-ASCII dictionary for the given keys and m.
    Gen(DictGenArgs),
}

#[derive(Debug, Args)]
struct EncryptArgs {
    #[arg(long)]
    keys: PathBuf,
    #[arg(long)]
    dict: PathBuf,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long = "out")]
    output: PathBuf,
    /// Items per set.
    #[arg(long, default_value_t = 4)]
    m: usize,
    /// Seed for reproducible output; fresh entropy when omitted.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_MAX_ATTEMPTS)]
    max_attempts: usize,
}

#[derive(Debug, Args)]
struct DecryptArgs {
    #[arg(long)]
    keys: PathBuf,
    #[arg(long)]
    dict: PathBuf,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long = "out")]
    output: PathBuf,
    /// Items per set; must agree with the file's `m=` line when both are present.
    #[arg(long)]
    m: Option<usize>,
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[arg(long)]
    keys: PathBuf,
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Debug, Args)]
struct SendArgs {
    /// Receiver address, `host:port`.
    #[arg(long)]
    addr: String,
    #[arg(long = "in")]
    input: PathBuf,
    /// Needed to cut the stream into blocks; never transmitted.
    #[arg(long)]
    keys: PathBuf,
    #[arg(long)]
    m: Option<usize>,
    /// Seconds.
    #[arg(long, default_value_t = 30)]
    timeout: u64,
}

#[derive(Debug, Args)]
struct RecvArgs {
    #[arg(long)]
    port: u16,
    #[arg(long, default_value = "0.0.0.0")]
    host: String,
    #[arg(long)]
    keys: PathBuf,
    #[arg(long)]
    dict: PathBuf,
    #[arg(long = "out")]
    output: PathBuf,
    /// Seconds.
    #[arg(long, default_value_t = 30)]
    timeout: u64,
}

#[derive(Debug, Args)]
struct DictGenArgs {
    #[arg(long)]
    keys: PathBuf,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long = "out")]
    output: PathBuf,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    /// Comma-separated set counts.
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    /// Comma-separated items per set.
    #[arg(long, value_delimiter = ',', required = true)]
    m: Vec<usize>,
    /// Comma-separated digit widths.
    #[arg(long, value_delimiter = ',', required = true)]
    d: Vec<usize>,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// CSV destination; stdout when omitted.
    #[arg(long = "out")]
    output: Option<PathBuf>,
}

/// Parsed ciphertext file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CiphertextFile {
    pub m: Option<usize>,
    pub digits: String,
}

impl CiphertextFile {
    /// Accepts the two-line format, or a bare digit stream (no `m=` line).
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let first = lines.next().unwrap_or("");
        let (m, digits) = match first.strip_prefix("m=") {
            Some(value) => {
                let m = value
                    .trim()
                    .parse()
                    .map_err(|_| CliError::BadCiphertextFile(format!("bad m line {first:?}")))?;
                (Some(m), lines.next().unwrap_or(""))
            }
            None => (None, first),
        };
        if lines.next().is_some() {
            return Err(CliError::BadCiphertextFile("unexpected extra lines".into()));
        }
        Ok(Self {
            m,
            digits: digits.to_string(),
        })
    }

    pub fn render(&self) -> String {
        match self.m {
            Some(m) => format!("m={m}\n{}\n", self.digits),
            None => format!("{}\n", self.digits),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_keys(path: &Path) -> Result<Keys, CliError> {
    Ok(Keys::parse_file(&read(path)?)?)
}

fn load_dict(path: &Path) -> Result<DictionaryMap, CliError> {
    Ok(dictionary::load_dictionary(&read(path)?)?)
}

fn rng_for(seed: Option<u64>) -> RandomSource {
    seed.map_or_else(RandomSource::from_entropy, RandomSource::from_seed)
}

/// Cuts a digit stream into blocks of `keys.block_len(m)` digits.
pub fn split_blocks(digits: &str, keys: &Keys, m: usize) -> Result<Vec<CipherBlock>, CliError> {
    let block = CipherBlock::new(digits)?;
    if m == 0 {
        return Err(CliError::Usage("m must be at least 1".into()));
    }
    let block_len = keys.block_len(m);
    if !digits.len().is_multiple_of(block_len) {
        return Err(CodecError::LengthMismatch {
            len: digits.len(),
            unit: block_len,
        }
        .into());
    }
    Ok(block
        .as_bytes()
        .chunks(block_len)
        .map(|c| CipherBlock::new(std::str::from_utf8(c).unwrap()).unwrap())
        .collect())
}

/// Encrypts text sign by sign into a digit stream.
pub fn encrypt_text(
    text: &str,
    dict: &DictionaryMap,
    params: &CipherParams,
    rng: &mut RandomSource,
) -> Result<String, CliError> {
    let codes = dictionary::encode_text(text, dict)?;
    let mut digits = String::with_capacity(codes.len() * params.block_len());
    for (i, code) in codes.into_iter().enumerate() {
        let block =
            cipher::encrypt_value(code, params, rng).map_err(|e| CliError::at_block(i, e))?;
        digits.push_str(block.as_str());
    }
    Ok(digits)
}

/// Decrypts whole blocks and maps their plaintexts back to signs.
pub fn decrypt_blocks(
    blocks: &[CipherBlock],
    keys: &Keys,
    dict: &DictionaryMap,
) -> Result<String, CliError> {
    blocks
        .iter()
        .enumerate()
        .map(|(i, block)| {
            let code = cipher::decrypt_block(block, keys).map_err(|e| CliError::at_block(i, e))?;
            dict.sign(code)
                .ok_or_else(|| CliError::at_block(i, DictionaryError::UnknownCode(code)))
        })
        .collect()
}

fn resolve_m(flag: Option<usize>, file: Option<usize>) -> Result<usize, CliError> {
    match (flag, file) {
        (Some(a), Some(b)) if a != b => Err(CliError::Usage(format!(
            "--m {a} disagrees with ciphertext header m={b}"
        ))),
        (Some(m), _) | (None, Some(m)) => Ok(m),
        (None, None) => Err(CliError::Usage(
            "m unknown: pass --m or add an m= line to the ciphertext".into(),
        )),
    }
}

fn encrypt(args: EncryptArgs) -> Result<(), CliError> {
    let keys = load_keys(&args.keys)?;
    let dict = load_dict(&args.dict)?;
    let params = CipherParams::with_keys(keys, args.m)?.with_max_attempts(args.max_attempts)?;
    let text = read(&args.input)?;
    let digits = encrypt_text(&text, &dict, &params, &mut rng_for(args.seed))?;
    let file = CiphertextFile {
        m: Some(args.m),
        digits,
    };
    write(&args.output, file.render().as_bytes())
}

fn decrypt(args: DecryptArgs) -> Result<(), CliError> {
    let keys = load_keys(&args.keys)?;
    let dict = load_dict(&args.dict)?;
    let file = CiphertextFile::parse(&read(&args.input)?)?;
    let m = resolve_m(args.m, file.m)?;
    let blocks = split_blocks(&file.digits, &keys, m)?;
    let text = decrypt_blocks(&blocks, &keys, &dict)?;
    write(&args.output, text.as_bytes())
}

fn solve(args: SolveArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let keys = load_keys(&args.keys)?;
    let file = CiphertextFile::parse(&read(&args.input)?)?;
    let blocks = match file.m {
        Some(m) => split_blocks(&file.digits, &keys, m)?,
        None => vec![CipherBlock::new(file.digits)?],
    };
    for block in &blocks {
        let result = solve_missp(&decompose(block, &keys)?);
        writeln!(out, "{result}").map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        })?;
    }
    Ok(())
}

fn send(args: SendArgs) -> Result<(), CliError> {
    let keys = load_keys(&args.keys)?;
    let file = CiphertextFile::parse(&read(&args.input)?)?;
    let m = resolve_m(args.m, file.m)?;
    let blocks = split_blocks(&file.digits, &keys, m)?;
    netio::send(
        args.addr.as_str(),
        &blocks,
        Duration::from_secs(args.timeout),
    )?;
    Ok(())
}

fn recv(args: RecvArgs) -> Result<(), CliError> {
    let keys = load_keys(&args.keys)?;
    let dict = load_dict(&args.dict)?;
    let server = Server::bind((args.host.as_str(), args.port))?
        .with_timeout(Duration::from_secs(args.timeout));
    let blocks = server.accept_one()?;
    let text = decrypt_blocks(&blocks, &keys, &dict)?;
    write(&args.output, text.as_bytes())
}

fn dict_gen(args: DictGenArgs) -> Result<(), CliError> {
    let keys = load_keys(&args.keys)?;
    let params = CipherParams::with_keys(keys, args.m)?;
    let map = dictionary::generate_default_dictionary(&params, &mut rng_for(args.seed))?;
    write(&args.output, map.render().as_bytes())
}

fn analyze(args: AnalyzeArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let all = args.n.iter().chain(&args.m).chain(&args.d);
    if all.clone().any(|&v| v == 0) || args.trials == 0 {
        return Err(CliError::Usage(
            "n, m, d and trials must be positive".into(),
        ));
    }
    if args.d.iter().any(|&d| d > crate::codec::MAX_DIGITS) {
        return Err(CliError::Usage("d too large".into()));
    }
    let stats = analysis::sweep(&args.n, &args.m, &args.d, args.trials, args.seed);
    let mut buf = Vec::new();
    analysis::write_csv(&stats, &mut buf).map_err(|e| CliError::Usage(format!("csv: {e}")))?;
    match &args.output {
        Some(path) => write(path, &buf),
        None => out.write_all(&buf).map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        }),
    }
}

/// Runs the command line with explicit output streams; returns the exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(
                e.kind(),
                ErrorKind::DisplayHelp
                    | ErrorKind::DisplayVersion
                    | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
            ) {
                let _ = write!(out, "{}", e.render());
                return if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                    2
                } else {
                    0
                };
            }
            let first = e.to_string();
            let first = first
                .lines()
                .next()
                .unwrap_or("")
                .trim_start_matches("error: ");
            let _ = writeln!(err, "{}", CliError::Usage(first.to_string()).report_line());
            return 2;
        }
    };

    let result = match cli.command {
        Command::Encrypt(a) => encrypt(a),
        Command::Decrypt(a) => decrypt(a),
        Command::Solve(a) => solve(a, out),
        Command::Send(a) => send(a),
        Command::Recv(a) => recv(a),
        Command::Dict {
            command: DictCommand::Gen(a),
        } => dict_gen(a),
        Command::Analyze(a) => analyze(a, out),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "{}", e.report_line());
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ciphertext_file_formats() {
        let f = CiphertextFile::parse("m=4\n0123\n").unwrap();
        assert_eq!(f.m, Some(4));
        assert_eq!(f.digits, "0123");
        assert_eq!(CiphertextFile::parse(&f.render()).unwrap(), f);

        let bare = CiphertextFile::parse("5549\n").unwrap();
        assert_eq!(bare.m, None);
        assert!(CiphertextFile::parse("m=x\n12\n").is_err());
        assert!(CiphertextFile::parse("m=2\n12\n34\n").is_err());
    }

    #[test]
    fn block_errors_are_reported_with_index() {
        let err = CliError::at_block(3, CipherError::AmbiguousPlaintext(vec![1, 2]));
        assert_eq!(err.code(), "AmbiguousPlaintext");
        assert_eq!(err.exit_code(), 23);
        assert!(err
            .report_line()
            .starts_with("ERR AmbiguousPlaintext block=3 msg="));
    }

    #[test]
    fn codec_errors_inside_cipher_map_to_codec_codes() {
        let err: CliError =
            CipherError::Codec(CodecError::LengthMismatch { len: 5, unit: 4 }).into();
        assert_eq!(err.code(), "LengthMismatch");
    }

    #[test]
    fn resolve_m_rules() {
        assert_eq!(resolve_m(Some(4), None).unwrap(), 4);
        assert_eq!(resolve_m(None, Some(5)).unwrap(), 5);
        assert_eq!(resolve_m(Some(5), Some(5)).unwrap(), 5);
        assert!(resolve_m(Some(4), Some(5)).is_err());
        assert!(resolve_m(None, None).is_err());
    }

    #[test]
    fn split_blocks_checks_length() {
        let keys = Keys::new(2, 1).unwrap();
        assert_eq!(split_blocks("12341234", &keys, 2).unwrap().len(), 2);
        assert!(matches!(
            split_blocks("123", &keys, 2),
            Err(CliError::Codec(CodecError::LengthMismatch { .. }))
        ));
    }
}
