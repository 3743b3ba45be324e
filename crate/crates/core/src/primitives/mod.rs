//! Algorithm suites and the four pluggable families: key establishment,
//! hash/KDF, MAC and payload AEAD.

pub mod aead;
pub mod ecdh;
pub mod kdf;
pub mod kem;
pub mod keyfile;
pub mod mac;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub use aead::AeadAlg;
pub use ecdh::{ecdh_keygen, ecdh_shared_x, EcdhKeyPair, EcdhPrivateKey, EcdhPublicKey};
pub use kdf::{kdf2, kdf_derive, DerivedKeys};
pub use kem::{kem_decaps, kem_encaps, kem_keygen, KemAlg, KemKeyPair, KemPrivateKey, KemPublicKey};
pub use mac::{mac_tag, mac_verify};

/// Length of z_1, z_2 and every other key-establishment secret.
pub const SHARED_SECRET_LEN: usize = 32;
/// Length of the wrapped DEK c.
pub const DEK_CT_LEN: usize = 16;
/// Length of the MAC tag t.
pub const TAG_LEN: usize = 32;

/// A 32-byte key-establishment secret (z_1 from ECDH, z_2 from a KEM).
#[derive(Clone, PartialEq, Eq)]
pub struct SharedSecret([u8; SHARED_SECRET_LEN]);

impl SharedSecret {
    pub fn new(bytes: [u8; SHARED_SECRET_LEN]) -> Self {
        Self(bytes)
    }

    pub fn from_slice(bytes: &[u8]) -> Result<Self> {
        bytes.try_into().map(Self).map_err(|_| Error::LengthMismatch {
            expected: SHARED_SECRET_LEN,
            actual: bytes.len(),
        })
    }

    pub fn as_bytes(&self) -> &[u8; SHARED_SECRET_LEN] {
        &self.0
    }
}

impl Drop for SharedSecret {
    fn drop(&mut self) {
        zeroize::Zeroize::zeroize(&mut self.0);
    }
}

impl fmt::Debug for SharedSecret {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("SharedSecret(..)")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KekMechanism {
    EcdhP256,
    MlKem512,
    Hqc128,
    HybridP256MlKem512,
    HybridP256Hqc128,
}

impl KekMechanism {
    pub const ALL: [KekMechanism; 5] = [
        KekMechanism::EcdhP256,
        KekMechanism::MlKem512,
        KekMechanism::Hqc128,
        KekMechanism::HybridP256MlKem512,
        KekMechanism::HybridP256Hqc128,
    ];

    pub fn name(self) -> &'static str {
        match self {
            KekMechanism::EcdhP256 => "ECDH-P256",
            KekMechanism::MlKem512 => "ML-KEM-512",
            KekMechanism::Hqc128 => "HQC-128",
            KekMechanism::HybridP256MlKem512 => "HYBRID-P256+ML-KEM-512",
            KekMechanism::HybridP256Hqc128 => "HYBRID-P256+HQC-128",
        }
    }

    /// Scheme family label used in reports.
    pub fn scheme(self) -> &'static str {
        match self {
            KekMechanism::EcdhP256 => "ECIES",
            KekMechanism::MlKem512 | KekMechanism::Hqc128 => "KEM-IES",
            _ => "Hybrid-IES",
        }
    }

    pub fn uses_ecdh(self) -> bool {
        matches!(
            self,
            KekMechanism::EcdhP256 | KekMechanism::HybridP256MlKem512 | KekMechanism::HybridP256Hqc128
        )
    }

    /// The KEM component, if any.
    pub fn kem(self) -> Option<KemAlg> {
        match self {
            KekMechanism::EcdhP256 => None,
            KekMechanism::MlKem512 | KekMechanism::HybridP256MlKem512 => Some(KemAlg::MlKem512),
            KekMechanism::Hqc128 | KekMechanism::HybridP256Hqc128 => Some(KemAlg::Hqc128),
        }
    }

    pub fn is_hybrid(self) -> bool {
        self.uses_ecdh() && self.kem().is_some()
    }

    pub fn quantum_safe(self) -> bool {
        self.kem().is_some()
    }

    /// Encrypted-KEK length: 33 for a compressed P-256 point, the KEM
    /// ciphertext length, or their sum for hybrids.
    pub fn kek_ct_len(self) -> usize {
        let ecdh = if self.uses_ecdh() { ecdh::PUBLIC_KEY_LEN } else { 0 };
        ecdh + self.kem().map_or(0, KemAlg::ciphertext_len)
    }
}

impl fmt::Display for KekMechanism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HashAlg {
    Sha256,
    Sha3_256,
    Shake128,
    AsconHash256,
}

impl HashAlg {
    pub const ALL: [HashAlg; 4] = [
        HashAlg::Sha256,
        HashAlg::Sha3_256,
        HashAlg::Shake128,
        HashAlg::AsconHash256,
    ];

    pub fn name(self) -> &'static str {
        match self {
            HashAlg::Sha256 => "SHA-256",
            HashAlg::Sha3_256 => "SHA3-256",
            HashAlg::Shake128 => "SHAKE-128",
            HashAlg::AsconHash256 => "Ascon-Hash256",
        }
    }
}

impl fmt::Display for HashAlg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HashAlg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let norm: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect::<String>()
            .to_ascii_lowercase();
        match norm.as_str() {
            "sha256" => Ok(HashAlg::Sha256),
            "sha3256" => Ok(HashAlg::Sha3_256),
            "shake128" => Ok(HashAlg::Shake128),
            "asconhash256" | "ascon" => Ok(HashAlg::AsconHash256),
            _ => Err(format!("unknown hash algorithm {s:?}")),
        }
    }
}

/// One (KEK mechanism, hash/KDF/MAC, AEAD) combination and its byte lengths.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SuiteDescriptor {
    pub suite_id: u8,
    pub kek_mechanism: KekMechanism,
    pub hash_alg: HashAlg,
    pub aead_alg: AeadAlg,
    pub kek_ct_len: usize,
    pub dek_ct_len: usize,
    pub tag_len: usize,
    pub nonce_len: usize,
}

impl SuiteDescriptor {
    /// Descriptor with every length filled in from the algorithm choices.
    pub const fn new(suite_id: u8, kek_mechanism: KekMechanism, hash_alg: HashAlg, aead_alg: AeadAlg) -> Self {
        let kek_ct_len = match kek_mechanism {
            KekMechanism::EcdhP256 => 33,
            KekMechanism::MlKem512 => 768,
            KekMechanism::Hqc128 => 4433,
            KekMechanism::HybridP256MlKem512 => 801,
            KekMechanism::HybridP256Hqc128 => 4466,
        };
        let nonce_len = match aead_alg {
            AeadAlg::Aes128Ccm => 12,
            AeadAlg::AsconAead128 => 16,
        };
        Self {
            suite_id,
            kek_mechanism,
            hash_alg,
            aead_alg,
            kek_ct_len,
            dek_ct_len: DEK_CT_LEN,
            tag_len: TAG_LEN,
            nonce_len,
        }
    }

    /// Bytes of the EncryptedDataEncryptionKey section: encrypted KEK, c, t.
    pub fn kek_section_size(&self) -> usize {
        self.kek_ct_len + self.dek_ct_len + self.tag_len
    }

    /// Checks every declared length against what the backends produce.
    pub fn validate(&self) -> Result<()> {
        let check = |field, registered: usize, backend: usize| {
            if registered == backend {
                Ok(())
            } else {
                Err(Error::RegistryMismatch {
                    suite_id: self.suite_id,
                    field,
                    registered,
                    backend,
                })
            }
        };
        check("kek_ct_len", self.kek_ct_len, self.kek_mechanism.kek_ct_len())?;
        check("dek_ct_len", self.dek_ct_len, DEK_CT_LEN)?;
        check("tag_len", self.tag_len, TAG_LEN)?;
        check("nonce_len", self.nonce_len, self.aead_alg.nonce_len())
    }

    pub fn label(&self) -> String {
        format!(
            "{} {} / {} / {}",
            self.kek_mechanism.scheme(),
            self.kek_mechanism,
            self.hash_alg,
            self.aead_alg
        )
    }
}

/// The ten wire-registered suites: 0x01-0x05 with SHA-256 and AES-128-CCM,
/// 0x11-0x15 with the same mechanisms over Ascon-Hash256 and Ascon-AEAD128.
pub const DEFAULT_SUITES: [SuiteDescriptor; 10] = {
    use AeadAlg::*;
    use HashAlg::*;
    use KekMechanism::*;
    [
        SuiteDescriptor::new(0x01, EcdhP256, Sha256, Aes128Ccm),
        SuiteDescriptor::new(0x02, MlKem512, Sha256, Aes128Ccm),
        SuiteDescriptor::new(0x03, Hqc128, Sha256, Aes128Ccm),
        SuiteDescriptor::new(0x04, HybridP256MlKem512, Sha256, Aes128Ccm),
        SuiteDescriptor::new(0x05, HybridP256Hqc128, Sha256, Aes128Ccm),
        SuiteDescriptor::new(0x11, EcdhP256, AsconHash256, AsconAead128),
        SuiteDescriptor::new(0x12, MlKem512, AsconHash256, AsconAead128),
        SuiteDescriptor::new(0x13, Hqc128, AsconHash256, AsconAead128),
        SuiteDescriptor::new(0x14, HybridP256MlKem512, AsconHash256, AsconAead128),
        SuiteDescriptor::new(0x15, HybridP256Hqc128, AsconHash256, AsconAead128),
    ]
};

/// An immutable, validated set of suites keyed by suite id.
#[derive(Clone, Debug)]
pub struct SuiteRegistry {
    suites: Vec<SuiteDescriptor>,
}

impl SuiteRegistry {
    /// Validates every descriptor and rejects duplicate ids.
    pub fn new(suites: impl IntoIterator<Item = SuiteDescriptor>) -> Result<Self> {
        let mut out: Vec<SuiteDescriptor> = Vec::new();
        for s in suites {
            s.validate()?;
            if out.iter().any(|o| o.suite_id == s.suite_id) {
                return Err(Error::DuplicateSuite(s.suite_id));
            }
            out.push(s);
        }
        out.sort_by_key(|s| s.suite_id);
        Ok(Self { suites: out })
    }

    pub fn get(&self, suite_id: u8) -> Result<&SuiteDescriptor> {
        self.suites
            .iter()
            .find(|s| s.suite_id == suite_id)
            .ok_or(Error::UnknownSuite(suite_id))
    }

    pub fn iter(&self) -> impl Iterator<Item = &SuiteDescriptor> {
        self.suites.iter()
    }

    pub fn ids(&self) -> Vec<u8> {
        self.suites.iter().map(|s| s.suite_id).collect()
    }

    pub fn len(&self) -> usize {
        self.suites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.suites.is_empty()
    }
}

/// The process-wide registry of [`DEFAULT_SUITES`], validated on first use.
pub fn registry() -> &'static SuiteRegistry {
    static REGISTRY: OnceLock<SuiteRegistry> = OnceLock::new();
    REGISTRY.get_or_init(|| match SuiteRegistry::new(DEFAULT_SUITES) {
        Ok(r) => r,
        Err(e) => panic!("built-in suite registry is inconsistent: {e}"),
    })
}

/// Looks up a registered suite.
pub fn suite(suite_id: u8) -> Result<&'static SuiteDescriptor> {
    registry().get(suite_id)
}

/// Parses `0x01`, `01` or `1` style suite ids.
pub fn parse_suite_id(s: &str) -> Result<u8, String> {
    let t = s.trim();
    let t = t
        .strip_prefix("0x")
        .or_else(|| t.strip_prefix("0X"))
        .unwrap_or(t);
    u8::from_str_radix(t, 16).map_err(|_| format!("invalid suite id {s:?}"))
}
