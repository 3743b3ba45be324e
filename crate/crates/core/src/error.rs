use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library reports. Variants never carry secret-dependent
/// detail; lengths and identifiers are public.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid elliptic-curve point")]
    InvalidPoint,
    #[error("invalid private key")]
    InvalidPrivateKey,
    #[error("key mechanism {0} is not available in this build")]
    MechanismUnavailable(&'static str),
    #[error("invalid public key: expected {expected} bytes, got {actual}")]
    InvalidPublicKey { expected: usize, actual: usize },
    #[error("invalid ciphertext length: expected {expected} bytes, got {actual}")]
    InvalidCiphertextLength { expected: usize, actual: usize },
    #[error("MAC verification failed")]
    MacMismatch,
    #[error("authenticated decryption failed")]
    AuthenticationFailure,
    #[error("invalid key length: expected {expected} bytes, got {actual}")]
    InvalidKeyLength { expected: usize, actual: usize },
    #[error("invalid nonce length: expected {expected} bytes, got {actual}")]
    InvalidNonceLength { expected: usize, actual: usize },
    #[error("input too short: need at least {minimum} bytes, got {actual}")]
    InvalidLength { minimum: usize, actual: usize },
    #[error("invalid round count {0}: must be 1..=12")]
    InvalidRounds(usize),
    #[error("length mismatch: expected {expected} bytes, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("payload of {0} bytes exceeds the cipher's message limit")]
    PayloadTooLarge(usize),
    #[error("unknown suite 0x{0:02x}")]
    UnknownSuite(u8),
    #[error("suite 0x{0:02x} is not supported for this operation")]
    UnsupportedSuite(u8),
    #[error("suite registry entry 0x{suite_id:02x}: {field} is {registered} but the backend produces {backend}")]
    RegistryMismatch {
        suite_id: u8,
        field: &'static str,
        registered: usize,
        backend: usize,
    },
    #[error("suite 0x{0:02x} is registered twice")]
    DuplicateSuite(u8),
    #[error("wrapped key belongs to suite 0x{actual:02x}, expected 0x{expected:02x}")]
    SuiteMismatch { expected: u8, actual: u8 },
    #[error("bad magic or version byte")]
    BadMagicOrVersion,
    #[error("truncated input: need {needed} bytes, got {actual}")]
    TruncatedInput { needed: usize, actual: usize },
    #[error("{0} trailing bytes after message")]
    TrailingBytes(usize),
    #[error("keys do not match the suite: {0}")]
    KeyMismatch(&'static str),
    #[error("malformed key file: {0}")]
    BadKeyFile(&'static str),
    #[error("iterations must be at least 1")]
    NoIterations,
    #[error("malformed CSV: {0}")]
    BadCsv(String),
    #[error("randomness source failed")]
    RngFailure,
}

impl Error {
    /// Stable machine-readable code, used as the CLI's error prefix.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidPoint => "INVALID_POINT",
            Error::InvalidPrivateKey => "INVALID_PRIVATE_KEY",
            Error::MechanismUnavailable(_) => "MECHANISM_UNAVAILABLE",
            Error::InvalidPublicKey { .. } => "INVALID_PUBLIC_KEY",
            Error::InvalidCiphertextLength { .. } => "INVALID_CIPHERTEXT_LENGTH",
            Error::MacMismatch => "MAC_MISMATCH",
            Error::AuthenticationFailure => "AUTHENTICATION_FAILURE",
            Error::InvalidKeyLength { .. } => "INVALID_KEY_LENGTH",
            Error::InvalidNonceLength { .. } => "INVALID_NONCE_LENGTH",
            Error::InvalidLength { .. } => "INVALID_LENGTH",
            Error::InvalidRounds(_) => "INVALID_ROUNDS",
            Error::LengthMismatch { .. } => "LENGTH_MISMATCH",
            Error::PayloadTooLarge(_) => "PAYLOAD_TOO_LARGE",
            Error::UnknownSuite(_) => "UNKNOWN_SUITE",
            Error::UnsupportedSuite(_) => "UNSUPPORTED_SUITE",
            Error::RegistryMismatch { .. } => "REGISTRY_MISMATCH",
            Error::DuplicateSuite(_) => "DUPLICATE_SUITE",
            Error::SuiteMismatch { .. } => "SUITE_MISMATCH",
            Error::BadMagicOrVersion => "BAD_MAGIC_OR_VERSION",
            Error::TruncatedInput { .. } => "TRUNCATED_INPUT",
            Error::TrailingBytes(_) => "TRAILING_BYTES",
            Error::KeyMismatch(_) => "KEY_MISMATCH",
            Error::BadKeyFile(_) => "BAD_KEY_FILE",
            Error::NoIterations => "NO_ITERATIONS",
            Error::BadCsv(_) => "BAD_CSV",
            Error::RngFailure => "RNG_FAILURE",
        }
    }

    /// True for failures that signal tampering or a wrong key rather than a
    /// malformed request.
    pub fn is_integrity_failure(&self) -> bool {
        matches!(
            self,
            Error::MacMismatch | Error::AuthenticationFailure | Error::InvalidPoint
        )
    }
}
