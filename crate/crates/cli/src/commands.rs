use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use pqies::bench::{self, FindingStatus, Phase};
use pqies::primitives::keyfile::{StoredKey, MAGIC};
use pqies::rand_core::{CryptoRng, OsRng, RngCore};
use pqies::schemes::{generate_recipient, RecipientPrivateKeys, RecipientPublicKeys};
use pqies::{registry, spdu, Error};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;
use sha2::{Digest, Sha256};

use crate::error::{io_err, CliError};
use crate::BenchArgs;

/// System randomness, or ChaCha20 keyed with SHA-256(seed) under `--seed`.
enum CliRng {
    Os(OsRng),
    Seeded(Box<ChaCha20Rng>),
}

impl CliRng {
    fn new(seed: Option<&[u8]>) -> Self {
        match seed {
            Some(s) => CliRng::Seeded(Box::new(ChaCha20Rng::from_seed(Sha256::digest(s).into()))),
            None => CliRng::Os(OsRng),
        }
    }
}

impl RngCore for CliRng {
    fn next_u32(&mut self) -> u32 {
        match self {
            CliRng::Os(r) => r.next_u32(),
            CliRng::Seeded(r) => r.next_u32(),
        }
    }
    fn next_u64(&mut self) -> u64 {
        match self {
            CliRng::Os(r) => r.next_u64(),
            CliRng::Seeded(r) => r.next_u64(),
        }
    }
    fn fill_bytes(&mut self, dest: &mut [u8]) {
        match self {
            CliRng::Os(r) => r.fill_bytes(dest),
            CliRng::Seeded(r) => r.fill_bytes(dest),
        }
    }
    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), pqies::rand_core::Error> {
        match self {
            CliRng::Os(r) => r.try_fill_bytes(dest),
            CliRng::Seeded(r) => r.try_fill_bytes(dest),
        }
    }
}

impl CryptoRng for CliRng {}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(io_err(path))
}

fn write(path: &Path, bytes: &[u8], private: bool) -> Result<(), CliError> {
    use std::io::Write;
    let mut opts = fs::OpenOptions::new();
    opts.write(true).create(true).truncate(true);
    #[cfg(unix)]
    if private {
        std::os::unix::fs::OpenOptionsExt::mode(&mut opts, 0o600);
    }
    #[cfg(not(unix))]
    let _ = private;
    opts.open(path)
        .and_then(|mut f| f.write_all(bytes))
        .map_err(io_err(path))
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = OsString::from(prefix.as_os_str());
    s.push(suffix);
    s.into()
}

fn load_keys(paths: &[PathBuf]) -> Result<Vec<StoredKey>, CliError> {
    paths
        .iter()
        .map(|p| Ok(StoredKey::from_bytes(&read(p)?)?))
        .collect()
}

pub fn keygen(suite_id: u8, prefix: &Path, seed: Option<&[u8]>) -> Result<(), CliError> {
    let suite = pqies::suite(suite_id)?;
    let hybrid = suite.kek_mechanism.is_hybrid();
    let (pk, sk) = generate_recipient(suite.kek_mechanism, &mut CliRng::new(seed))?;
    for key in pk.to_stored().into_iter().chain(sk.to_stored()) {
        let part = match (&key, hybrid) {
            (_, false) => "",
            (StoredKey::EcdhPublic(_) | StoredKey::EcdhPrivate(_), true) => ".ecc",
            (_, true) => ".kem",
        };
        let ext = if key.is_private() { ".priv" } else { ".pub" };
        let path = with_suffix(prefix, &format!("{part}{ext}"));
        let bytes = key.to_bytes();
        write(&path, &bytes, key.is_private())?;
        println!("wrote {} ({} bytes, {})", path.display(), bytes.len(), key.description());
    }
    Ok(())
}

pub fn encrypt(
    suite_id: u8,
    public: &[PathBuf],
    info: &[u8],
    input: &Path,
    output: &Path,
    seed: Option<&[u8]>,
) -> Result<(), CliError> {
    let suite = pqies::suite(suite_id)?;
    let keys = RecipientPublicKeys::from_stored(suite.kek_mechanism, load_keys(public)?)?;
    let plaintext = read(input)?;
    let msg = spdu::encrypt_message(suite, &keys, info, &plaintext, &mut CliRng::new(seed))?;
    let bytes = spdu::encode(&msg);
    write(output, &bytes, false)?;
    println!("wrote {} ({} bytes, suite {})", output.display(), bytes.len(), suite.label());
    Ok(())
}

pub fn decrypt(
    expected_suite: Option<u8>,
    private: &[PathBuf],
    info: &[u8],
    input: &Path,
    output: &Path,
) -> Result<(), CliError> {
    let msg = spdu::decode(&read(input)?)?;
    if let Some(expected) = expected_suite.filter(|&id| id != msg.suite_id) {
        return Err(Error::SuiteMismatch {
            expected,
            actual: msg.suite_id,
        }
        .into());
    }
    let suite = pqies::suite(msg.suite_id)?;
    let keys = RecipientPrivateKeys::from_stored(suite.kek_mechanism, load_keys(private)?)?;
    let plaintext = spdu::decrypt_message(&keys, &msg, info)?;
    write(output, &plaintext, false)?;
    println!("wrote {} ({} bytes)", output.display(), plaintext.len());
    Ok(())
}

pub fn inspect(input: &Path) -> Result<(), CliError> {
    let bytes = read(input)?;
    if bytes.starts_with(MAGIC) {
        let key = StoredKey::from_bytes(&bytes)?;
        println!("key file: {} ({} bytes)", key.description(), bytes.len());
        match &key {
            StoredKey::EcdhPublic(k) => println!("public key: {}", hex::encode(k.as_bytes())),
            StoredKey::KemPublic(k) => println!("public key: {} bytes, SHA-256 {}", k.as_bytes().len(), hex::encode(Sha256::digest(k.as_bytes()))),
            _ => println!("private key material not shown"),
        }
        return Ok(());
    }
    let msg = spdu::decode(&bytes)?;
    let suite = pqies::suite(msg.suite_id)?;
    println!("encrypted SPDU ({} bytes)", bytes.len());
    println!("version: 0x{:02x}", msg.version);
    println!("suite: {}", suite.label());
    println!("encrypted KEK: {} bytes", msg.wrapped.encrypted_kek.len());
    println!("c: {}", hex::encode(msg.wrapped.c));
    println!("t: {}", hex::encode(msg.wrapped.t));
    println!("EncryptedDataEncryptionKey section: {} bytes", msg.wrapped.field_len());
    println!("nonce: {}", hex::encode(&msg.payload.nonce));
    println!("payload ciphertext: {} bytes (plaintext {} bytes)", msg.payload.ccm_ciphertext.len(), msg.payload.ccm_ciphertext.len() - 16);
    Ok(())
}

pub fn sizes() -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<22} {:<10} {:>13} {:>3} {:>3} {:>6}  quantum safe",
        "mechanism", "suites", "encrypted KEK", "c", "t", "total"
    );
    for row in spdu::size_table() {
        let ids: Vec<String> = row.suite_ids.iter().map(|id| format!("0x{id:02x}")).collect();
        let _ = writeln!(
            out,
            "{:<22} {:<10} {:>13} {:>3} {:>3} {:>6}  {}",
            row.mechanism.name(),
            ids.join(","),
            row.kek_ct_len,
            row.c_len,
            row.t_len,
            row.total,
            if row.quantum_safe { "yes" } else { "no" }
        );
    }
    out
}

/// (hybrid, ECIES, KEM-IES) suite triples checked for KEK cost additivity.
const ADDITIVITY: [(u8, u8, u8); 4] = [(0x04, 0x01, 0x02), (0x05, 0x01, 0x03), (0x14, 0x11, 0x12), (0x15, 0x11, 0x13)];

pub fn bench(args: &BenchArgs) -> Result<(), CliError> {
    let ids = if args.suites.is_empty() { registry().ids() } else { args.suites.clone() };
    let suites = ids
        .iter()
        .map(|&id| pqies::suite(id).copied())
        .collect::<Result<Vec<_>, _>>()?;
    let phases = if args.phases.is_empty() { Phase::ALL.to_vec() } else { args.phases.clone() };
    let mut rng = CliRng::new(args.seed.bytes());
    let stats = bench::run_matrix(&suites, &phases, args.iterations, args.payload_len, &mut rng)?;
    let csv = bench::report_csv(&stats);

    let Some(path) = &args.csv else {
        print!("{csv}");
        return Ok(());
    };
    write(path, csv.as_bytes(), false)?;
    print!("{}", bench::report_table(&stats));
    let findings = ADDITIVITY
        .iter()
        .map(|&(h, e, k)| bench::hybrid_additivity(&stats, h, e, k, 0.35))
        .chain(bench::ordering_findings(&stats, &suites))
        .filter(|f| f.status != FindingStatus::NotMeasured);
    for f in findings {
        println!("{f}");
    }
    Ok(())
}
