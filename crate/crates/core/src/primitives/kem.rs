//! KEM interface over ML-KEM-512 (FIPS 203) and HQC-128.
//!
//! Both backends can be compiled out with the `ml-kem` / `hqc` features;
//! operations on a missing backend return `MechanismUnavailable`.

use std::fmt;

use rand_core::{CryptoRng, RngCore};
use zeroize::Zeroizing;

use super::SharedSecret;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KemAlg {
    MlKem512,
    Hqc128,
}

impl KemAlg {
    pub fn name(self) -> &'static str {
        match self {
            KemAlg::MlKem512 => "ML-KEM-512",
            KemAlg::Hqc128 => "HQC-128",
        }
    }

    pub const fn public_key_len(self) -> usize {
        match self {
            KemAlg::MlKem512 => 800,
            KemAlg::Hqc128 => 2249,
        }
    }

    pub const fn private_key_len(self) -> usize {
        match self {
            KemAlg::MlKem512 => 1632,
            KemAlg::Hqc128 => 2305,
        }
    }

    pub const fn ciphertext_len(self) -> usize {
        match self {
            KemAlg::MlKem512 => 768,
            KemAlg::Hqc128 => 4433,
        }
    }

    pub fn available(self) -> bool {
        match self {
            KemAlg::MlKem512 => cfg!(feature = "ml-kem"),
            KemAlg::Hqc128 => cfg!(feature = "hqc"),
        }
    }

    fn require(self) -> Result<()> {
        if self.available() {
            Ok(())
        } else {
            Err(Error::MechanismUnavailable(self.name()))
        }
    }
}

impl fmt::Display for KemAlg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// K_b,pub: an encoded KEM public key of the mechanism's exact length.
#[derive(Clone, PartialEq, Eq)]
pub struct KemPublicKey {
    alg: KemAlg,
    bytes: Vec<u8>,
}

impl KemPublicKey {
    /// Checks the length, and for ML-KEM the FIPS 203 modulus check (every
    /// 12-bit coefficient of the encoded vector below q = 3329).
    pub fn from_bytes(alg: KemAlg, bytes: &[u8]) -> Result<Self> {
        if bytes.len() != alg.public_key_len() {
            return Err(Error::InvalidPublicKey {
                expected: alg.public_key_len(),
                actual: bytes.len(),
            });
        }
        if alg == KemAlg::MlKem512 && !mlkem_coefficients_reduced(&bytes[..768]) {
            return Err(Error::InvalidPublicKey {
                expected: alg.public_key_len(),
                actual: bytes.len(),
            });
        }
        Ok(Self {
            alg,
            bytes: bytes.to_vec(),
        })
    }

    pub fn alg(&self) -> KemAlg {
        self.alg
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }
}

impl fmt::Debug for KemPublicKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KemPublicKey({}, {} bytes)", self.alg, self.bytes.len())
    }
}

/// K_b,priv. The bytes are zeroized on drop.
#[derive(Clone)]
pub struct KemPrivateKey {
    alg: KemAlg,
    bytes: Zeroizing<Vec<u8>>,
}

impl KemPrivateKey {
    pub fn from_bytes(alg: KemAlg, bytes: &[u8]) -> Result<Self> {
        if bytes.len() != alg.private_key_len() {
            return Err(Error::InvalidKeyLength {
                expected: alg.private_key_len(),
                actual: bytes.len(),
            });
        }
        Ok(Self {
            alg,
            bytes: Zeroizing::new(bytes.to_vec()),
        })
    }

    pub fn alg(&self) -> KemAlg {
        self.alg
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }
}

impl fmt::Debug for KemPrivateKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KemPrivateKey({}, ..)", self.alg)
    }
}

#[derive(Clone, Debug)]
pub struct KemKeyPair {
    pub public_key: KemPublicKey,
    pub private_key: KemPrivateKey,
}

impl KemKeyPair {
    pub fn mechanism(&self) -> KemAlg {
        self.public_key.alg
    }
}

fn mlkem_coefficients_reduced(encoded: &[u8]) -> bool {
    encoded.chunks_exact(3).all(|b| {
        let c0 = u16::from(b[0]) | (u16::from(b[1] & 0x0f) << 8);
        let c1 = u16::from(b[1] >> 4) | (u16::from(b[2]) << 4);
        c0 < 3329 && c1 < 3329
    })
}

pub fn kem_keygen<R: RngCore + CryptoRng>(alg: KemAlg, rng: &mut R) -> Result<KemKeyPair> {
    alg.require()?;
    let (pk, sk) = match alg {
        KemAlg::MlKem512 => mlkem::keygen(rng),
        KemAlg::Hqc128 => hqc::keygen(rng),
    };
    Ok(KemKeyPair {
        public_key: KemPublicKey { alg, bytes: pk },
        private_key: KemPrivateKey {
            alg,
            bytes: Zeroizing::new(sk),
        },
    })
}

/// Returns (z_2, e). z_2 is always 32 bytes; HQC-128's 64-byte secret is
/// truncated to its first 32 bytes.
pub fn kem_encaps<R: RngCore + CryptoRng>(public_key: &KemPublicKey, rng: &mut R) -> Result<(SharedSecret, Vec<u8>)> {
    public_key.alg.require()?;
    match public_key.alg {
        KemAlg::MlKem512 => mlkem::encaps(&public_key.bytes, rng),
        KemAlg::Hqc128 => hqc::encaps(&public_key.bytes, rng),
    }
}

/// Decapsulates `e`. A well-sized but corrupted `e` does not fail here:
/// implicit rejection yields an unrelated secret, caught later by the MAC.
pub fn kem_decaps(private_key: &KemPrivateKey, e: &[u8]) -> Result<SharedSecret> {
    let alg = private_key.alg;
    alg.require()?;
    if e.len() != alg.ciphertext_len() {
        return Err(Error::InvalidCiphertextLength {
            expected: alg.ciphertext_len(),
            actual: e.len(),
        });
    }
    match alg {
        KemAlg::MlKem512 => mlkem::decaps(&private_key.bytes, e),
        KemAlg::Hqc128 => hqc::decaps(&private_key.bytes, e),
    }
}

#[cfg(feature = "ml-kem")]
mod mlkem {
    use ml_kem::kem::{Decapsulate, Encapsulate};
    use ml_kem::{Ciphertext, EncodedSizeUser, KemCore, MlKem512, MlKem512Params};
    use rand_core::CryptoRngCore;

    use super::super::SharedSecret;
    use crate::error::{Error, Result};

    type Ek = ml_kem::kem::EncapsulationKey<MlKem512Params>;
    type Dk = ml_kem::kem::DecapsulationKey<MlKem512Params>;

    pub fn keygen(rng: &mut impl CryptoRngCore) -> (Vec<u8>, Vec<u8>) {
        let (dk, ek) = MlKem512::generate(rng);
        (ek.as_bytes().to_vec(), dk.as_bytes().to_vec())
    }

    pub fn encaps(pk: &[u8], rng: &mut impl CryptoRngCore) -> Result<(SharedSecret, Vec<u8>)> {
        let encoded = pk.try_into().map_err(|_| Error::InvalidPublicKey {
            expected: 800,
            actual: pk.len(),
        })?;
        let ek = Ek::from_bytes(encoded);
        let (ct, ss) = ek.encapsulate(rng).map_err(|_| Error::RngFailure)?;
        Ok((SharedSecret::new(ss.into()), ct.to_vec()))
    }

    pub fn decaps(sk: &[u8], e: &[u8]) -> Result<SharedSecret> {
        let encoded = sk.try_into().map_err(|_| Error::InvalidPrivateKey)?;
        let dk = Dk::from_bytes(encoded);
        let ct: &Ciphertext<MlKem512> = e.try_into().map_err(|_| Error::InvalidCiphertextLength {
            expected: 768,
            actual: e.len(),
        })?;
        let ss = dk.decapsulate(ct).map_err(|_| Error::InvalidCiphertextLength {
            expected: 768,
            actual: e.len(),
        })?;
        Ok(SharedSecret::new(ss.into()))
    }
}

#[cfg(not(feature = "ml-kem"))]
mod mlkem {
    use super::super::SharedSecret;
    use crate::error::Result;

    pub fn keygen<R>(_: &mut R) -> (Vec<u8>, Vec<u8>) {
        unreachable!("availability is checked first")
    }

    pub fn encaps<R>(_: &[u8], _: &mut R) -> Result<(SharedSecret, Vec<u8>)> {
        unreachable!("availability is checked first")
    }

    pub fn decaps(_: &[u8], _: &[u8]) -> Result<SharedSecret> {
        unreachable!("availability is checked first")
    }
}

#[cfg(feature = "hqc")]
mod hqc {
    use pqies_hqc as backend;
    use rand_core::{CryptoRng, RngCore};

    use super::super::{SharedSecret, SHARED_SECRET_LEN};
    use crate::error::{Error, Result};

    pub fn keygen<R: RngCore + CryptoRng>(rng: &mut R) -> (Vec<u8>, Vec<u8>) {
        let (pk, sk) = backend::keypair(rng);
        (pk.as_bytes().to_vec(), sk.as_bytes().to_vec())
    }

    fn truncate(ss: &backend::SharedSecret) -> SharedSecret {
        let mut z = [0u8; SHARED_SECRET_LEN];
        z.copy_from_slice(&ss.as_bytes()[..SHARED_SECRET_LEN]);
        SharedSecret::new(z)
    }

    pub fn encaps<R: RngCore + CryptoRng>(pk: &[u8], rng: &mut R) -> Result<(SharedSecret, Vec<u8>)> {
        let pk = backend::PublicKey::from_bytes(pk).map_err(|e| Error::InvalidPublicKey {
            expected: e.expected,
            actual: e.actual,
        })?;
        let (ct, ss) = backend::encapsulate(&pk, rng);
        Ok((truncate(&ss), ct.as_bytes().to_vec()))
    }

    pub fn decaps(sk: &[u8], e: &[u8]) -> Result<SharedSecret> {
        let sk = backend::SecretKey::from_bytes(sk).map_err(|_| Error::InvalidPrivateKey)?;
        let ct = backend::Ciphertext::from_bytes(e).map_err(|err| Error::InvalidCiphertextLength {
            expected: err.expected,
            actual: err.actual,
        })?;
        Ok(truncate(&backend::decapsulate(&sk, &ct)))
    }
}

#[cfg(not(feature = "hqc"))]
mod hqc {
    use super::super::SharedSecret;
    use crate::error::Result;

    pub fn keygen<R>(_: &mut R) -> (Vec<u8>, Vec<u8>) {
        unreachable!("availability is checked first")
    }

    pub fn encaps<R>(_: &[u8], _: &mut R) -> Result<(SharedSecret, Vec<u8>)> {
        unreachable!("availability is checked first")
    }

    pub fn decaps(_: &[u8], _: &[u8]) -> Result<SharedSecret> {
        unreachable!("availability is checked first")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    const ALL: [KemAlg; 2] = [KemAlg::MlKem512, KemAlg::Hqc128];

    #[cfg(all(feature = "ml-kem", feature = "hqc"))]
    #[test]
    fn declared_lengths_match_backends() {
        use ml_kem::{EncodedSizeUser, KemCore, MlKem512};
        let (dk, ek) = MlKem512::generate(&mut ChaCha20Rng::seed_from_u64(0));
        assert_eq!(ek.as_bytes().len(), KemAlg::MlKem512.public_key_len());
        assert_eq!(dk.as_bytes().len(), KemAlg::MlKem512.private_key_len());
        assert_eq!(KemAlg::Hqc128.public_key_len(), pqies_hqc::PUBLIC_KEY_BYTES);
        assert_eq!(KemAlg::Hqc128.private_key_len(), pqies_hqc::SECRET_KEY_BYTES);
        assert_eq!(KemAlg::Hqc128.ciphertext_len(), pqies_hqc::CIPHERTEXT_BYTES);
    }

    #[test]
    fn roundtrip_and_lengths() {
        let mut rng = ChaCha20Rng::seed_from_u64(11);
        for alg in ALL {
            let kp = kem_keygen(alg, &mut rng).unwrap();
            assert_eq!(kp.public_key.as_bytes().len(), alg.public_key_len());
            assert_eq!(kp.private_key.as_bytes().len(), alg.private_key_len());
            let (z2, e) = kem_encaps(&kp.public_key, &mut rng).unwrap();
            assert_eq!(e.len(), alg.ciphertext_len());
            assert_eq!(kem_decaps(&kp.private_key, &e).unwrap(), z2);
        }
    }

    #[test]
    fn seeded_keygen_is_reproducible() {
        for alg in ALL {
            let a = kem_keygen(alg, &mut ChaCha20Rng::seed_from_u64(3)).unwrap();
            let b = kem_keygen(alg, &mut ChaCha20Rng::seed_from_u64(3)).unwrap();
            assert_eq!(a.public_key, b.public_key);
            assert_eq!(a.private_key.as_bytes(), b.private_key.as_bytes());
        }
    }

    #[test]
    fn flipped_ciphertext_changes_secret() {
        let mut rng = ChaCha20Rng::seed_from_u64(12);
        for alg in ALL {
            let kp = kem_keygen(alg, &mut rng).unwrap();
            let (z2, mut e) = kem_encaps(&kp.public_key, &mut rng).unwrap();
            e[17] ^= 0x04;
            assert_ne!(kem_decaps(&kp.private_key, &e).unwrap(), z2);
        }
    }

    #[test]
    fn wrong_lengths() {
        let mut rng = ChaCha20Rng::seed_from_u64(13);
        for alg in ALL {
            let kp = kem_keygen(alg, &mut rng).unwrap();
            assert_eq!(
                kem_decaps(&kp.private_key, &[0u8; 10]),
                Err(Error::InvalidCiphertextLength {
                    expected: alg.ciphertext_len(),
                    actual: 10
                })
            );
            assert_eq!(
                KemPublicKey::from_bytes(alg, &[0u8; 5]),
                Err(Error::InvalidPublicKey {
                    expected: alg.public_key_len(),
                    actual: 5
                })
            );
        }
    }

    #[test]
    fn unreduced_mlkem_key_rejected() {
        let kp = kem_keygen(KemAlg::MlKem512, &mut ChaCha20Rng::seed_from_u64(14)).unwrap();
        let mut bytes = kp.public_key.as_bytes().to_vec();
        // First coefficient := 0xfff >= q.
        bytes[0] = 0xff;
        bytes[1] |= 0x0f;
        assert!(KemPublicKey::from_bytes(KemAlg::MlKem512, &bytes).is_err());
        assert!(KemPublicKey::from_bytes(KemAlg::MlKem512, kp.public_key.as_bytes()).is_ok());
    }
}
