//! Binary key files:
//!
//! ```text
//! "PQIES\x01" (6) || kind (1) || mechanism (1) || key length (4, BE) || key
//! ```
//!
//! Kinds: 0x01 ECDH public, 0x02 ECDH private, 0x03 KEM public, 0x04 KEM
//! private. Mechanisms: 0x01 ECDH-P256, 0x02 ML-KEM-512, 0x03 HQC-128.

use super::ecdh::{EcdhPrivateKey, EcdhPublicKey};
use super::kem::{KemAlg, KemPrivateKey, KemPublicKey};
use crate::error::{Error, Result};

pub const MAGIC: &[u8; 6] = b"PQIES\x01";
pub const HEADER_LEN: usize = 6 + 1 + 1 + 4;

const KIND_ECDH_PUBLIC: u8 = 0x01;
const KIND_ECDH_PRIVATE: u8 = 0x02;
const KIND_KEM_PUBLIC: u8 = 0x03;
const KIND_KEM_PRIVATE: u8 = 0x04;

const MECH_ECDH_P256: u8 = 0x01;
const MECH_ML_KEM_512: u8 = 0x02;
const MECH_HQC_128: u8 = 0x03;

fn kem_byte(alg: KemAlg) -> u8 {
    match alg {
        KemAlg::MlKem512 => MECH_ML_KEM_512,
        KemAlg::Hqc128 => MECH_HQC_128,
    }
}

/// Any key that can be stored in a key file.
#[derive(Clone, Debug)]
pub enum StoredKey {
    EcdhPublic(EcdhPublicKey),
    EcdhPrivate(EcdhPrivateKey),
    KemPublic(KemPublicKey),
    KemPrivate(KemPrivateKey),
}

impl StoredKey {
    pub fn is_private(&self) -> bool {
        matches!(self, StoredKey::EcdhPrivate(_) | StoredKey::KemPrivate(_))
    }

    pub fn description(&self) -> String {
        match self {
            StoredKey::EcdhPublic(_) => "ECDH-P256 public key".into(),
            StoredKey::EcdhPrivate(_) => "ECDH-P256 private key".into(),
            StoredKey::KemPublic(k) => format!("{} public key", k.alg()),
            StoredKey::KemPrivate(k) => format!("{} private key", k.alg()),
        }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let private_ecdh;
        let (kind, mech, key): (u8, u8, &[u8]) = match self {
            StoredKey::EcdhPublic(k) => (KIND_ECDH_PUBLIC, MECH_ECDH_P256, k.as_bytes()),
            StoredKey::EcdhPrivate(k) => {
                private_ecdh = zeroize::Zeroizing::new(k.to_bytes());
                (KIND_ECDH_PRIVATE, MECH_ECDH_P256, &private_ecdh[..])
            }
            StoredKey::KemPublic(k) => (KIND_KEM_PUBLIC, kem_byte(k.alg()), k.as_bytes()),
            StoredKey::KemPrivate(k) => (KIND_KEM_PRIVATE, kem_byte(k.alg()), k.as_bytes()),
        };
        let mut out = Vec::with_capacity(HEADER_LEN + key.len());
        out.extend_from_slice(MAGIC);
        out.push(kind);
        out.push(mech);
        out.extend_from_slice(&(key.len() as u32).to_be_bytes());
        out.extend_from_slice(key);
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < HEADER_LEN {
            return Err(Error::BadKeyFile("shorter than the header"));
        }
        if &bytes[..6] != MAGIC {
            return Err(Error::BadKeyFile("bad magic"));
        }
        let (kind, mech) = (bytes[6], bytes[7]);
        let len = u32::from_be_bytes(bytes[8..12].try_into().unwrap()) as usize;
        let key = &bytes[HEADER_LEN..];
        if key.len() != len {
            return Err(Error::BadKeyFile("length field does not match the key bytes"));
        }
        let kem = match mech {
            MECH_ECDH_P256 => None,
            MECH_ML_KEM_512 => Some(KemAlg::MlKem512),
            MECH_HQC_128 => Some(KemAlg::Hqc128),
            _ => return Err(Error::BadKeyFile("unknown mechanism")),
        };
        match (kind, kem) {
            (KIND_ECDH_PUBLIC, None) => Ok(StoredKey::EcdhPublic(EcdhPublicKey::from_bytes(key)?)),
            (KIND_ECDH_PRIVATE, None) => Ok(StoredKey::EcdhPrivate(EcdhPrivateKey::from_bytes(key)?)),
            (KIND_KEM_PUBLIC, Some(alg)) => Ok(StoredKey::KemPublic(KemPublicKey::from_bytes(alg, key)?)),
            (KIND_KEM_PRIVATE, Some(alg)) => Ok(StoredKey::KemPrivate(KemPrivateKey::from_bytes(alg, key)?)),
            (KIND_ECDH_PUBLIC..=KIND_KEM_PRIVATE, _) => Err(Error::BadKeyFile("key kind does not fit the mechanism")),
            _ => Err(Error::BadKeyFile("unknown key kind")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primitives::{ecdh_keygen, kem_keygen};
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn ecdh_public_file_is_45_bytes() {
        let kp = ecdh_keygen(&mut ChaCha20Rng::seed_from_u64(1));
        let bytes = StoredKey::EcdhPublic(kp.public_point).to_bytes();
        assert_eq!(bytes.len(), 6 + 1 + 1 + 4 + 33);
        assert_eq!(&bytes[..8], b"PQIES\x01\x01\x01");
        assert_eq!(&bytes[8..12], &[0, 0, 0, 33]);
    }

    #[test]
    fn roundtrip_all_kinds() {
        let mut rng = ChaCha20Rng::seed_from_u64(2);
        let e = ecdh_keygen(&mut rng);
        let m = kem_keygen(KemAlg::MlKem512, &mut rng).unwrap();
        let h = kem_keygen(KemAlg::Hqc128, &mut rng).unwrap();
        let keys = [
            StoredKey::EcdhPublic(e.public_point),
            StoredKey::EcdhPrivate(e.private_scalar.clone()),
            StoredKey::KemPublic(m.public_key.clone()),
            StoredKey::KemPrivate(m.private_key.clone()),
            StoredKey::KemPublic(h.public_key.clone()),
            StoredKey::KemPrivate(h.private_key.clone()),
        ];
        for k in keys {
            let bytes = k.to_bytes();
            assert_eq!(StoredKey::from_bytes(&bytes).unwrap().to_bytes(), bytes);
        }
    }

    #[test]
    fn malformed_files() {
        let kp = ecdh_keygen(&mut ChaCha20Rng::seed_from_u64(3));
        let good = StoredKey::EcdhPublic(kp.public_point).to_bytes();

        let mut bad = good.clone();
        bad[0] = b'X';
        assert_eq!(StoredKey::from_bytes(&bad).unwrap_err(), Error::BadKeyFile("bad magic"));

        let mut bad = good.clone();
        bad.push(0);
        assert!(matches!(StoredKey::from_bytes(&bad), Err(Error::BadKeyFile(_))));

        let mut bad = good.clone();
        bad[7] = MECH_HQC_128;
        assert!(matches!(StoredKey::from_bytes(&bad), Err(Error::BadKeyFile(_))));

        let mut bad = good;
        bad[6] = 0x09;
        assert_eq!(StoredKey::from_bytes(&bad).unwrap_err(), Error::BadKeyFile("unknown key kind"));

        assert!(StoredKey::from_bytes(b"PQIES").is_err());
    }
}
