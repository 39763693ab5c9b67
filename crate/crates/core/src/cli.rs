//! The `rsss` command line: split, join, inspect, analyze, xor-demo.
//!
//! [`run`] takes the argument list and output streams explicitly and returns
//! the process exit status, so the binary is a one-line wrapper.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use thiserror::Error;

use crate::codec::{self, CodecError, ShareArchive, StorageStats};
use crate::field::{random_element, FieldError, PrimeModulus, MERSENNE_61};
use crate::oracle::{self, BlowupScheme, OracleError, ReportFormat};
use crate::recursive::{self, RecursiveParams, SecretVector};
use crate::shamir::{self, ShamirParams, Share, SharingError};
use crate::xor_recursive::{self, BitSecretChain, BitString, XorError};

#[derive(Debug, Parser)]
#[command(
    name = "rsss",
    version,
    about = "Recursive k-of-n multi-secret sharing"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Split a file into n share archives, any k of which restore it
    Split {
        /// Threshold: shares needed to restore
        #[arg(short = 'k', long = "threshold")]
        k: usize,
        /// Number of shares to produce
        #[arg(short = 'n', long = "shares")]
        n: usize,
        /// Prime modulus (must exceed 256 for byte packing)
        #[arg(short = 'p', long, default_value_t = MERSENNE_61)]
        prime: u64,
        /// Directory for the `<name>.share<i>.rsss` files
        #[arg(short = 'o', long = "output-dir")]
        output_dir: PathBuf,
        /// Fixed RNG seed. Reproducible output for tests only; never use for real secrets.
        #[arg(long)]
        seed: Option<u64>,
        input: PathBuf,
    },
    /// Restore a file from at least k share archives
    Join {
        #[arg(short = 'o', long)]
        output: PathBuf,
        #[arg(required = true)]
        shares: Vec<PathBuf>,
    },
    /// Print the header of a share archive
    Inspect { share: PathBuf },
    /// Enumerate the conditional distribution of secrets given some shares (toy sizes)
    Analyze {
        #[arg(long, value_enum, default_value_t = SchemeArg::Recursive)]
        scheme: SchemeArg,
        #[arg(short = 'p', long, default_value_t = 11)]
        prime: u64,
        #[arg(short = 'k', long = "threshold", default_value_t = 3)]
        k: usize,
        #[arg(short = 'n', long = "shares", default_value_t = 4)]
        n: usize,
        /// Secret values to deal (one for shamir, k-1 for recursive); random if omitted
        #[arg(long, value_delimiter = ',')]
        secrets: Vec<u64>,
        /// Share indices the observer holds; defaults to 1..k-1
        #[arg(long, value_delimiter = ',')]
        observe: Vec<u64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = FormatArg::Plain)]
        format: FormatArg,
    },
    /// Recursive 2-of-2 XOR sharing of bit strings that double in length
    XorDemo {
        /// Secrets as bit strings, shortest first (default: 1 01 1011)
        secrets: Vec<String>,
        /// Level-1 randomness as a bit string (default: 0 for the built-in chain, random otherwise)
        #[arg(long)]
        mask: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    Shamir,
    Recursive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Plain,
    Table,
}

impl From<FormatArg> for ReportFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Plain => ReportFormat::Plain,
            FormatArg::Table => ReportFormat::Table,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Archive { path: PathBuf, source: CodecError },
    #[error(transparent)]
    Codec(#[from] CodecError),
    #[error(transparent)]
    Sharing(#[from] SharingError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Xor(#[from] XorError),
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn make_rng(seed: Option<u64>) -> ChaCha20Rng {
    match seed {
        Some(s) => ChaCha20Rng::seed_from_u64(s),
        None => ChaCha20Rng::from_entropy(),
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit status: 0 on success, 1 on any error, 2 on usage errors from clap.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

pub fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Split {
            k,
            n,
            prime,
            output_dir,
            seed,
            input,
        } => split(k, n, prime, &output_dir, seed, &input, out),
        Command::Join { output, shares } => join(&output, &shares, out, err),
        Command::Inspect { share } => inspect(&share, out),
        Command::Analyze {
            scheme,
            prime,
            k,
            n,
            secrets,
            observe,
            seed,
            format,
        } => analyze(
            scheme,
            prime,
            k,
            n,
            &secrets,
            &observe,
            seed,
            format.into(),
            out,
        ),
        Command::XorDemo {
            secrets,
            mask,
            seed,
        } => xor_demo(&secrets, mask.as_deref(), seed, out),
    }
}

fn split(
    k: usize,
    n: usize,
    prime: u64,
    output_dir: &Path,
    seed: Option<u64>,
    input: &Path,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let params = RecursiveParams::new(PrimeModulus::new(prime)?, k, n)?;
    let message = fs::read(input).map_err(io_err(input))?;
    let mut rng = make_rng(seed);
    let archives = codec::encode_message(&message, &params, &mut rng)?;

    let stem = input
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "secret".to_string());
    fs::create_dir_all(output_dir).map_err(io_err(output_dir))?;
    for archive in &archives {
        let path = output_dir.join(codec::archive_file_name(&stem, archive.header.share_index));
        fs::write(&path, archive.to_bytes()).map_err(io_err(&path))?;
        let _ = writeln!(out, "wrote {}", path.display());
    }

    let (k64, n64) = (k as u64, n as u64);
    let _ = writeln!(
        out,
        "blow-up factor: {} (n/(k-1)); conventional: {}; optimal: {}",
        params.blowup_factor(),
        BlowupScheme::Shamir.reference(k64, n64),
        BlowupScheme::Optimal.reference(k64, n64),
    );
    if let Some(ratio) = StorageStats::of(&archives).and_then(|s| s.byte_ratio()) {
        let _ = writeln!(out, "payload bytes / padded message bytes: {ratio}");
    }
    Ok(())
}

fn load_archive(path: &Path, err: &mut dyn Write) -> Result<ShareArchive, CliError> {
    let bytes = fs::read(path).map_err(io_err(path))?;
    let archive = codec::read_archive(&bytes).map_err(|source| CliError::Archive {
        path: path.to_path_buf(),
        source,
    })?;
    let from_name = path
        .file_name()
        .and_then(|s| s.to_str())
        .and_then(codec::index_from_file_name);
    if let Some(named) = from_name {
        if named != archive.header.share_index {
            let _ = writeln!(
                err,
                "warning: {} is named as share {named} but its header says {}; using the header",
                path.display(),
                archive.header.share_index
            );
        }
    }
    Ok(archive)
}

fn join(
    output: &Path,
    shares: &[PathBuf],
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let archives = shares
        .iter()
        .map(|p| load_archive(p, err))
        .collect::<Result<Vec<_>, _>>()?;
    let message = codec::decode_message(&archives)?;
    fs::write(output, &message).map_err(io_err(output))?;
    let _ = writeln!(out, "wrote {} ({} bytes)", output.display(), message.len());
    Ok(())
}

fn inspect(path: &Path, out: &mut dyn Write) -> Result<(), CliError> {
    let bytes = fs::read(path).map_err(io_err(path))?;
    let h = codec::ArchiveHeader::read(&bytes).map_err(|source| CliError::Archive {
        path: path.to_path_buf(),
        source,
    })?;
    let _ = writeln!(out, "version: {}", h.version);
    let _ = writeln!(out, "prime: {}", h.prime);
    let _ = writeln!(out, "k: {}", h.k);
    let _ = writeln!(out, "n: {}", h.n);
    let _ = writeln!(out, "share_index: {}", h.share_index);
    let _ = writeln!(out, "original_length: {}", h.original_length);
    let _ = writeln!(out, "limb_bytes: {}", h.limb_bytes);
    let _ = writeln!(out, "elements: {}", h.element_count());
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn analyze(
    scheme: SchemeArg,
    prime: u64,
    k: usize,
    n: usize,
    secrets: &[u64],
    observe: &[u64],
    seed: Option<u64>,
    format: ReportFormat,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let modulus = PrimeModulus::new(prime)?;
    let mut rng = make_rng(seed);
    let indices: Vec<u64> = if observe.is_empty() {
        (1..k as u64).collect()
    } else {
        observe.to_vec()
    };
    let pick = |shares: &[Share]| -> Result<Vec<Share>, CliError> {
        indices
            .iter()
            .map(|&i| {
                shares
                    .iter()
                    .find(|s| s.index == i)
                    .copied()
                    .ok_or_else(|| CliError::Usage(format!("no share with index {i} (n = {n})")))
            })
            .collect()
    };

    let report = match scheme {
        SchemeArg::Shamir => {
            let params = ShamirParams::new(modulus, k, n)?;
            let secret = match secrets {
                [] => random_element(modulus, &mut rng),
                [s] => modulus.element(*s)?,
                _ => return Err(CliError::Usage("shamir takes exactly one secret".into())),
            };
            let shares = shamir::deal(secret, &params, &mut rng)?;
            oracle::enumerate_shamir(&params, secret, &pick(&shares)?)?
        }
        SchemeArg::Recursive => {
            let params = RecursiveParams::new(modulus, k, n)?;
            let secrets = if secrets.is_empty() {
                SecretVector::new((1..k).map(|_| random_element(modulus, &mut rng)).collect())
            } else {
                SecretVector::from_values(modulus, secrets)?
            };
            let set = recursive::deal(&secrets, &params, &mut rng)?;
            let dealt: Vec<String> = secrets.values().iter().map(u64::to_string).collect();
            let _ = writeln!(out, "dealt_secrets={}", dealt.join(","));
            oracle::enumerate_recursive(&params, &pick(&set.shares)?)?
        }
    };
    let _ = write!(out, "{}", report.render(format));
    Ok(())
}

fn xor_demo(
    secrets: &[String],
    mask: Option<&str>,
    seed: Option<u64>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let builtin = secrets.is_empty();
    let parts: Vec<BitString> = if builtin {
        ["1", "01", "1011"]
            .iter()
            .map(|s| s.parse())
            .collect::<Result<_, _>>()?
    } else {
        secrets
            .iter()
            .map(|s| s.parse())
            .collect::<Result<_, _>>()?
    };
    let chain = BitSecretChain::new(parts)?;
    let first_len = chain.secrets()[0].len();
    let r: BitString = match mask {
        Some(m) => m.parse()?,
        None if builtin => BitString::zeros(first_len),
        None => BitString::random(first_len, &mut make_rng(seed)),
    };
    let pair = xor_recursive::deal_with_mask(&chain, &r)?;
    let back = xor_recursive::reconstruct(&pair, chain.depth())?;
    let join = |c: &BitSecretChain| {
        c.secrets()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    };
    let _ = writeln!(out, "secrets: {}", join(&chain));
    let _ = writeln!(out, "mask: {r}");
    let _ = writeln!(out, "share A: {}", pair.share_a);
    let _ = writeln!(out, "share B: {}", pair.share_b);
    let _ = writeln!(out, "reconstructed: {}", join(&back));
    let _ = writeln!(
        out,
        "secret bits: {}, share bits: {}",
        chain.secret_bits(),
        chain.share_bits()
    );
    Ok(())
}
