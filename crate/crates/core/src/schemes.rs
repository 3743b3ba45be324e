//! ECIES, KEM-IES and Hybrid-IES wrapping of a 16-byte DEK.
//!
//! Every scheme ends the same way: (k1, k2) = KDF(z, p), c = s XOR k1,
//! t = MAC(k2, c). They differ only in how z and the encrypted KEK are made:
//!
//! | scheme  | z         | encrypted KEK |
//! |---------|-----------|---------------|
//! | ECIES   | z1        | v_a           |
//! | KEM-IES | z2        | e             |
//! | hybrid  | z1 \|\| z2 | e \|\| v_a     |
//!
//! Unwrapping verifies t before anything derived from s is returned.

use std::fmt;

use rand_core::{CryptoRng, RngCore};
use zeroize::{Zeroize, Zeroizing};

use crate::error::{Error, Result};
use crate::primitives::ecdh::{self, EcdhPrivateKey, EcdhPublicKey};
use crate::primitives::kem::{kem_decaps, kem_encaps, KemPrivateKey, KemPublicKey};
use crate::primitives::keyfile::StoredKey;
use crate::primitives::{ecdh_keygen, kdf_derive, mac_tag, mac_verify, KekMechanism, SuiteDescriptor};

pub const DEK_LEN: usize = 16;
pub const C_LEN: usize = 16;
pub const T_LEN: usize = 32;

/// The data-encryption key s. Zeroized on drop.
#[derive(Clone, PartialEq, Eq)]
pub struct Dek([u8; DEK_LEN]);

impl Dek {
    pub fn new(bytes: [u8; DEK_LEN]) -> Self {
        Self(bytes)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        bytes.try_into().map(Self).map_err(|_| Error::LengthMismatch {
            expected: DEK_LEN,
            actual: bytes.len(),
        })
    }

    pub fn generate<R: RngCore + CryptoRng + ?Sized>(rng: &mut R) -> Result<Self> {
        let mut s = [0u8; DEK_LEN];
        rng.try_fill_bytes(&mut s).map_err(|_| Error::RngFailure)?;
        Ok(Self(s))
    }

    pub fn as_bytes(&self) -> &[u8; DEK_LEN] {
        &self.0
    }
}

impl Drop for Dek {
    fn drop(&mut self) {
        self.0.zeroize();
    }
}

impl fmt::Debug for Dek {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Dek(..)")
    }
}

/// (encrypted KEK, c, t) for one suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WrappedDek {
    pub suite_id: u8,
    pub encrypted_kek: Vec<u8>,
    pub c: [u8; C_LEN],
    pub t: [u8; T_LEN],
}

impl WrappedDek {
    /// Size of the EncryptedDataEncryptionKey fields.
    pub fn field_len(&self) -> usize {
        self.encrypted_kek.len() + C_LEN + T_LEN
    }
}

/// c = s XOR k1; its own inverse.
pub fn xor_wrap(k1: &[u8], s: &[u8]) -> Result<[u8; C_LEN]> {
    for len in [k1.len(), s.len()] {
        if len != C_LEN {
            return Err(Error::LengthMismatch {
                expected: C_LEN,
                actual: len,
            });
        }
    }
    let mut c = [0u8; C_LEN];
    for (out, (a, b)) in c.iter_mut().zip(k1.iter().zip(s)) {
        *out = a ^ b;
    }
    Ok(c)
}

/// Recipient public key(s) in the shape the suite's mechanism needs.
#[derive(Clone, Debug)]
pub enum RecipientPublicKeys {
    Ecdh(EcdhPublicKey),
    Kem(KemPublicKey),
    Hybrid { ecc: EcdhPublicKey, kem: KemPublicKey },
}

/// Recipient private key(s) in the shape the suite's mechanism needs.
#[derive(Clone, Debug)]
pub enum RecipientPrivateKeys {
    Ecdh(EcdhPrivateKey),
    Kem(KemPrivateKey),
    Hybrid { ecc: EcdhPrivateKey, kem: KemPrivateKey },
}

/// Splits stored keys into at most one ECDH key and one KEM key, in any
/// order, and checks them against what `mechanism` needs.
fn sort_stored<E, K>(
    mechanism: KekMechanism,
    keys: Vec<StoredKey>,
    pick: impl Fn(StoredKey) -> Result<(Option<E>, Option<K>)>,
    kem_alg: impl Fn(&K) -> crate::primitives::KemAlg,
) -> Result<(Option<E>, Option<K>)> {
    let (mut ecc, mut kem) = (None, None);
    for key in keys {
        match pick(key)? {
            (Some(_), _) if ecc.is_some() => return Err(Error::KeyMismatch("more than one ECDH key")),
            (_, Some(_)) if kem.is_some() => return Err(Error::KeyMismatch("more than one KEM key")),
            (e, k) => {
                ecc = ecc.or(e);
                kem = kem.or(k);
            }
        }
    }
    if ecc.is_some() != mechanism.uses_ecdh() {
        return Err(Error::KeyMismatch(if mechanism.uses_ecdh() {
            "suite needs an ECDH key"
        } else {
            "suite takes no ECDH key"
        }));
    }
    match (&kem, mechanism.kem()) {
        (Some(k), Some(_)) => kem_matches(mechanism, kem_alg(k))?,
        (None, None) => {}
        (None, Some(_)) => return Err(Error::KeyMismatch("suite needs a KEM key")),
        (Some(_), None) => return Err(Error::KeyMismatch("suite takes no KEM key")),
    }
    Ok((ecc, kem))
}

impl RecipientPublicKeys {
    /// Assembles the key set for `mechanism` from key-file contents.
    pub fn from_stored(mechanism: KekMechanism, keys: Vec<StoredKey>) -> Result<Self> {
        let pick = |k| match k {
            StoredKey::EcdhPublic(e) => Ok((Some(e), None)),
            StoredKey::KemPublic(k) => Ok((None, Some(k))),
            _ => Err(Error::KeyMismatch("expected a public key")),
        };
        Ok(match sort_stored(mechanism, keys, pick, KemPublicKey::alg)? {
            (Some(e), None) => Self::Ecdh(e),
            (None, Some(k)) => Self::Kem(k),
            (Some(ecc), Some(kem)) => Self::Hybrid { ecc, kem },
            (None, None) => unreachable!("every mechanism needs a key"),
        })
    }

    /// ECDH key first, then the KEM key.
    pub fn to_stored(&self) -> Vec<StoredKey> {
        match self {
            Self::Ecdh(e) => vec![StoredKey::EcdhPublic(*e)],
            Self::Kem(k) => vec![StoredKey::KemPublic(k.clone())],
            Self::Hybrid { ecc, kem } => vec![StoredKey::EcdhPublic(*ecc), StoredKey::KemPublic(kem.clone())],
        }
    }
}

impl RecipientPrivateKeys {
    pub fn from_stored(mechanism: KekMechanism, keys: Vec<StoredKey>) -> Result<Self> {
        let pick = |k| match k {
            StoredKey::EcdhPrivate(e) => Ok((Some(e), None)),
            StoredKey::KemPrivate(k) => Ok((None, Some(k))),
            _ => Err(Error::KeyMismatch("expected a private key")),
        };
        Ok(match sort_stored(mechanism, keys, pick, KemPrivateKey::alg)? {
            (Some(e), None) => Self::Ecdh(e),
            (None, Some(k)) => Self::Kem(k),
            (Some(ecc), Some(kem)) => Self::Hybrid { ecc, kem },
            (None, None) => unreachable!("every mechanism needs a key"),
        })
    }

    pub fn to_stored(&self) -> Vec<StoredKey> {
        match self {
            Self::Ecdh(e) => vec![StoredKey::EcdhPrivate(e.clone())],
            Self::Kem(k) => vec![StoredKey::KemPrivate(k.clone())],
            Self::Hybrid { ecc, kem } => vec![StoredKey::EcdhPrivate(ecc.clone()), StoredKey::KemPrivate(kem.clone())],
        }
    }
}

fn kem_matches(mech: KekMechanism, alg: crate::primitives::KemAlg) -> Result<()> {
    if mech.kem() == Some(alg) {
        Ok(())
    } else {
        Err(Error::KeyMismatch("KEM key is for a different mechanism"))
    }
}

fn expect_mechanism(suite: &SuiteDescriptor, ok: bool) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::UnsupportedSuite(suite.suite_id))
    }
}

fn check_wrapped(wrapped: &WrappedDek, suite: &SuiteDescriptor) -> Result<()> {
    if wrapped.suite_id != suite.suite_id {
        return Err(Error::SuiteMismatch {
            expected: suite.suite_id,
            actual: wrapped.suite_id,
        });
    }
    if wrapped.encrypted_kek.len() != suite.kek_ct_len {
        return Err(if suite.kek_mechanism == KekMechanism::EcdhP256 {
            Error::InvalidPoint
        } else {
            Error::InvalidCiphertextLength {
                expected: suite.kek_ct_len,
                actual: wrapped.encrypted_kek.len(),
            }
        });
    }
    Ok(())
}

/// Sender side of key establishment: returns (z, encrypted KEK).
pub fn establish_kek<R: RngCore + CryptoRng>(
    keys: &RecipientPublicKeys,
    suite: &SuiteDescriptor,
    rng: &mut R,
) -> Result<(Zeroizing<Vec<u8>>, Vec<u8>)> {
    let mech = suite.kek_mechanism;
    match keys {
        RecipientPublicKeys::Ecdh(v_b) => {
            if mech != KekMechanism::EcdhP256 {
                return Err(Error::KeyMismatch("suite needs a KEM public key"));
            }
            let eph = ecdh_keygen(rng);
            let z1 = ecdh::shared_x(&eph.private_scalar, v_b);
            Ok((Zeroizing::new(z1.as_bytes().to_vec()), eph.public_point.as_bytes().to_vec()))
        }
        RecipientPublicKeys::Kem(kem_pub) => {
            if mech.uses_ecdh() {
                return Err(Error::KeyMismatch("suite needs an ECDH public key"));
            }
            kem_matches(mech, kem_pub.alg())?;
            let (z2, e) = kem_encaps(kem_pub, rng)?;
            Ok((Zeroizing::new(z2.as_bytes().to_vec()), e))
        }
        RecipientPublicKeys::Hybrid { ecc, kem } => {
            if !mech.is_hybrid() {
                return Err(Error::KeyMismatch("suite is not a hybrid"));
            }
            kem_matches(mech, kem.alg())?;
            let eph = ecdh_keygen(rng);
            let z1 = ecdh::shared_x(&eph.private_scalar, ecc);
            let (z2, mut kek) = kem_encaps(kem, rng)?;
            let mut z = Zeroizing::new(Vec::with_capacity(64));
            z.extend_from_slice(z1.as_bytes());
            z.extend_from_slice(z2.as_bytes());
            kek.extend_from_slice(eph.public_point.as_bytes());
            Ok((z, kek))
        }
    }
}

/// Recipient side of key establishment: recovers z from the encrypted KEK.
pub fn recover_kek(
    keys: &RecipientPrivateKeys,
    encrypted_kek: &[u8],
    suite: &SuiteDescriptor,
) -> Result<Zeroizing<Vec<u8>>> {
    let mech = suite.kek_mechanism;
    match keys {
        RecipientPrivateKeys::Ecdh(u_b) => {
            if mech != KekMechanism::EcdhP256 {
                return Err(Error::KeyMismatch("suite needs a KEM private key"));
            }
            let z1 = ecdh::ecdh_shared_x(u_b, encrypted_kek)?;
            Ok(Zeroizing::new(z1.as_bytes().to_vec()))
        }
        RecipientPrivateKeys::Kem(kem_priv) => {
            if mech.uses_ecdh() {
                return Err(Error::KeyMismatch("suite needs an ECDH private key"));
            }
            kem_matches(mech, kem_priv.alg())?;
            let z2 = kem_decaps(kem_priv, encrypted_kek)?;
            Ok(Zeroizing::new(z2.as_bytes().to_vec()))
        }
        RecipientPrivateKeys::Hybrid { ecc, kem } => {
            if !mech.is_hybrid() {
                return Err(Error::KeyMismatch("suite is not a hybrid"));
            }
            kem_matches(mech, kem.alg())?;
            let ct_len = kem.alg().ciphertext_len();
            if encrypted_kek.len() != ct_len + ecdh::PUBLIC_KEY_LEN {
                return Err(Error::InvalidCiphertextLength {
                    expected: ct_len + ecdh::PUBLIC_KEY_LEN,
                    actual: encrypted_kek.len(),
                });
            }
            let (e, v_a) = encrypted_kek.split_at(ct_len);
            let z1 = ecdh::ecdh_shared_x(ecc, v_a)?;
            let z2 = kem_decaps(kem, e)?;
            let mut z = Zeroizing::new(Vec::with_capacity(64));
            z.extend_from_slice(z1.as_bytes());
            z.extend_from_slice(z2.as_bytes());
            Ok(z)
        }
    }
}

/// KDF, XOR and MAC over an established z.
pub fn seal_dek(suite: &SuiteDescriptor, z: &[u8], info: &[u8], dek: &Dek) -> ([u8; C_LEN], [u8; T_LEN]) {
    let keys = kdf_derive(suite.hash_alg, z, info);
    let c = xor_wrap(&keys.k1, dek.as_bytes()).expect("fixed-size inputs");
    let t = mac_tag(suite.hash_alg, &keys.k2, &c);
    (c, t)
}

/// Verifies t, then releases s = c XOR k1.
pub fn open_dek(suite: &SuiteDescriptor, z: &[u8], info: &[u8], c: &[u8; C_LEN], t: &[u8; T_LEN]) -> Result<Dek> {
    let keys = kdf_derive(suite.hash_alg, z, info);
    if !mac_verify(suite.hash_alg, &keys.k2, c, t) {
        return Err(Error::MacMismatch);
    }
    let mut s = xor_wrap(&keys.k1, c).expect("fixed-size inputs");
    let dek = Dek::new(s);
    s.zeroize();
    Ok(dek)
}

/// Wraps `dek` for whichever scheme the suite's mechanism selects.
pub fn wrap<R: RngCore + CryptoRng>(
    keys: &RecipientPublicKeys,
    info: &[u8],
    dek: &Dek,
    suite: &SuiteDescriptor,
    rng: &mut R,
) -> Result<WrappedDek> {
    let (z, encrypted_kek) = establish_kek(keys, suite, rng)?;
    let (c, t) = seal_dek(suite, &z, info, dek);
    Ok(WrappedDek {
        suite_id: suite.suite_id,
        encrypted_kek,
        c,
        t,
    })
}

/// Unwraps for whichever scheme the suite's mechanism selects.
pub fn unwrap(
    keys: &RecipientPrivateKeys,
    wrapped: &WrappedDek,
    info: &[u8],
    suite: &SuiteDescriptor,
) -> Result<Dek> {
    check_wrapped(wrapped, suite)?;
    let z = recover_kek(keys, &wrapped.encrypted_kek, suite)?;
    open_dek(suite, &z, info, &wrapped.c, &wrapped.t)
}

pub fn ecies_wrap<R: RngCore + CryptoRng>(
    recipient_pub: &EcdhPublicKey,
    info: &[u8],
    dek: &Dek,
    suite: &SuiteDescriptor,
    rng: &mut R,
) -> Result<WrappedDek> {
    expect_mechanism(suite, suite.kek_mechanism == KekMechanism::EcdhP256)?;
    wrap(&RecipientPublicKeys::Ecdh(*recipient_pub), info, dek, suite, rng)
}

pub fn ecies_unwrap(
    recipient_priv: &EcdhPrivateKey,
    wrapped: &WrappedDek,
    info: &[u8],
    suite: &SuiteDescriptor,
) -> Result<Dek> {
    expect_mechanism(suite, suite.kek_mechanism == KekMechanism::EcdhP256)?;
    unwrap(&RecipientPrivateKeys::Ecdh(recipient_priv.clone()), wrapped, info, suite)
}

pub fn kemies_wrap<R: RngCore + CryptoRng>(
    recipient_kem_pub: &KemPublicKey,
    info: &[u8],
    dek: &Dek,
    suite: &SuiteDescriptor,
    rng: &mut R,
) -> Result<WrappedDek> {
    let m = suite.kek_mechanism;
    expect_mechanism(suite, m.kem().is_some() && !m.uses_ecdh())?;
    wrap(&RecipientPublicKeys::Kem(recipient_kem_pub.clone()), info, dek, suite, rng)
}

pub fn kemies_unwrap(
    recipient_kem_priv: &KemPrivateKey,
    wrapped: &WrappedDek,
    info: &[u8],
    suite: &SuiteDescriptor,
) -> Result<Dek> {
    let m = suite.kek_mechanism;
    expect_mechanism(suite, m.kem().is_some() && !m.uses_ecdh())?;
    unwrap(&RecipientPrivateKeys::Kem(recipient_kem_priv.clone()), wrapped, info, suite)
}

pub fn hybrid_wrap<R: RngCore + CryptoRng>(
    recipient_ecc_pub: &EcdhPublicKey,
    recipient_kem_pub: &KemPublicKey,
    info: &[u8],
    dek: &Dek,
    suite: &SuiteDescriptor,
    rng: &mut R,
) -> Result<WrappedDek> {
    expect_mechanism(suite, suite.kek_mechanism.is_hybrid())?;
    let keys = RecipientPublicKeys::Hybrid {
        ecc: *recipient_ecc_pub,
        kem: recipient_kem_pub.clone(),
    };
    wrap(&keys, info, dek, suite, rng)
}

pub fn hybrid_unwrap(
    recipient_ecc_priv: &EcdhPrivateKey,
    recipient_kem_priv: &KemPrivateKey,
    wrapped: &WrappedDek,
    info: &[u8],
    suite: &SuiteDescriptor,
) -> Result<Dek> {
    expect_mechanism(suite, suite.kek_mechanism.is_hybrid())?;
    let keys = RecipientPrivateKeys::Hybrid {
        ecc: recipient_ecc_priv.clone(),
        kem: recipient_kem_priv.clone(),
    };
    unwrap(&keys, wrapped, info, suite)
}

/// A fresh recipient keypair set for `mechanism`.
pub fn generate_recipient<R: RngCore + CryptoRng>(
    mechanism: KekMechanism,
    rng: &mut R,
) -> Result<(RecipientPublicKeys, RecipientPrivateKeys)> {
    let ecc = mechanism.uses_ecdh().then(|| ecdh_keygen(rng));
    let kem = mechanism
        .kem()
        .map(|alg| crate::primitives::kem_keygen(alg, rng))
        .transpose()?;
    Ok(match (ecc, kem) {
        (Some(e), None) => (
            RecipientPublicKeys::Ecdh(e.public_point),
            RecipientPrivateKeys::Ecdh(e.private_scalar),
        ),
        (None, Some(k)) => (
            RecipientPublicKeys::Kem(k.public_key),
            RecipientPrivateKeys::Kem(k.private_key),
        ),
        (Some(e), Some(k)) => (
            RecipientPublicKeys::Hybrid {
                ecc: e.public_point,
                kem: k.public_key,
            },
            RecipientPrivateKeys::Hybrid {
                ecc: e.private_scalar,
                kem: k.private_key,
            },
        ),
        (None, None) => unreachable!("every mechanism has a component"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primitives::{registry, suite};
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn xor_identities() {
        let s = [0x5a; 16];
        assert_eq!(xor_wrap(&[0; 16], &s).unwrap(), s);
        assert_eq!(xor_wrap(&s, &s).unwrap(), [0; 16]);
        assert_eq!(
            xor_wrap(&[0; 15], &s),
            Err(Error::LengthMismatch { expected: 16, actual: 15 })
        );
    }

    #[test]
    fn roundtrip_and_sizes_every_suite() {
        let mut rng = ChaCha20Rng::seed_from_u64(21);
        for s in registry().iter() {
            let (pk, sk) = generate_recipient(s.kek_mechanism, &mut rng).unwrap();
            let dek = Dek::generate(&mut rng).unwrap();
            let w = wrap(&pk, b"ctx", &dek, s, &mut rng).unwrap();
            assert_eq!(w.field_len(), s.kek_section_size());
            assert_eq!(unwrap(&sk, &w, b"ctx", s).unwrap(), dek);
            assert_eq!(unwrap(&sk, &w, b"ctz", s), Err(Error::MacMismatch));
        }
    }

    #[test]
    fn named_entry_points() {
        let mut rng = ChaCha20Rng::seed_from_u64(22);
        let dek = Dek::new([7; 16]);

        let s = suite(0x01).unwrap();
        let e = ecdh_keygen(&mut rng);
        let w1 = ecies_wrap(&e.public_point, b"", &dek, s, &mut rng).unwrap();
        let w2 = ecies_wrap(&e.public_point, b"", &dek, s, &mut rng).unwrap();
        assert_ne!(w1.encrypted_kek, w2.encrypted_kek);
        assert_eq!(w1.field_len(), 81);
        assert_eq!(ecies_unwrap(&e.private_scalar, &w1, b"", s).unwrap(), dek);

        let s = suite(0x02).unwrap();
        let k = crate::primitives::kem_keygen(crate::primitives::KemAlg::MlKem512, &mut rng).unwrap();
        let w = kemies_wrap(&k.public_key, b"", &dek, s, &mut rng).unwrap();
        assert_eq!(w.field_len(), 816);
        assert_eq!(kemies_unwrap(&k.private_key, &w, b"", s).unwrap(), dek);

        let s = suite(0x04).unwrap();
        let w = hybrid_wrap(&e.public_point, &k.public_key, b"", &dek, s, &mut rng).unwrap();
        assert_eq!(w.field_len(), 849);
        // e || v_a: the trailing 33 bytes are the ephemeral point.
        assert!(EcdhPublicKey::from_bytes(&w.encrypted_kek[768..]).is_ok());
        assert_eq!(hybrid_unwrap(&e.private_scalar, &k.private_key, &w, b"", s).unwrap(), dek);

        // Scheme/suite mismatches.
        assert_eq!(
            ecies_wrap(&e.public_point, b"", &dek, s, &mut rng),
            Err(Error::UnsupportedSuite(0x04))
        );
        assert_eq!(
            kemies_wrap(&k.public_key, b"", &dek, suite(0x03).unwrap(), &mut rng),
            Err(Error::KeyMismatch("KEM key is for a different mechanism"))
        );
    }

    #[test]
    fn hybrid_needs_both_keys() {
        let mut rng = ChaCha20Rng::seed_from_u64(23);
        let s = suite(0x04).unwrap();
        let (pk, sk) = generate_recipient(s.kek_mechanism, &mut rng).unwrap();
        let (_, other) = generate_recipient(s.kek_mechanism, &mut rng).unwrap();
        let w = wrap(&pk, b"", &Dek::new([1; 16]), s, &mut rng).unwrap();
        let (
            RecipientPrivateKeys::Hybrid { ecc, kem },
            RecipientPrivateKeys::Hybrid {
                ecc: ecc2,
                kem: kem2,
            },
        ) = (sk, other)
        else {
            unreachable!()
        };
        let only_ecc = RecipientPrivateKeys::Hybrid { ecc: ecc.clone(), kem: kem2 };
        let only_kem = RecipientPrivateKeys::Hybrid { ecc: ecc2, kem };
        assert_eq!(unwrap(&only_ecc, &w, b"", s), Err(Error::MacMismatch));
        assert_eq!(unwrap(&only_kem, &w, b"", s), Err(Error::MacMismatch));
    }

    #[test]
    fn wrong_shape_inputs() {
        let mut rng = ChaCha20Rng::seed_from_u64(24);
        let s = suite(0x05).unwrap();
        let (pk, sk) = generate_recipient(s.kek_mechanism, &mut rng).unwrap();
        let mut w = wrap(&pk, b"", &Dek::new([1; 16]), s, &mut rng).unwrap();
        assert_eq!(
            unwrap(&sk, &w, b"", suite(0x15).unwrap()),
            Err(Error::SuiteMismatch { expected: 0x15, actual: 0x05 })
        );
        w.encrypted_kek.pop();
        assert_eq!(
            unwrap(&sk, &w, b"", s),
            Err(Error::InvalidCiphertextLength { expected: 4466, actual: 4465 })
        );
    }

    #[test]
    fn stored_key_sets() {
        use crate::primitives::KekMechanism as M;
        let mut rng = ChaCha20Rng::seed_from_u64(11);
        let (pk, sk) = generate_recipient(M::HybridP256MlKem512, &mut rng).unwrap();
        let mut pubs = pk.to_stored();
        pubs.reverse();
        assert!(matches!(
            RecipientPublicKeys::from_stored(M::HybridP256MlKem512, pubs.clone()),
            Ok(RecipientPublicKeys::Hybrid { .. })
        ));
        assert_eq!(
            RecipientPublicKeys::from_stored(M::HybridP256Hqc128, pubs.clone()).unwrap_err(),
            Error::KeyMismatch("KEM key is for a different mechanism")
        );
        assert_eq!(
            RecipientPublicKeys::from_stored(M::MlKem512, pubs.clone()).unwrap_err(),
            Error::KeyMismatch("suite takes no ECDH key")
        );
        assert_eq!(
            RecipientPublicKeys::from_stored(M::HybridP256MlKem512, pubs[..1].to_vec()).unwrap_err(),
            Error::KeyMismatch("suite needs an ECDH key")
        );
        assert_eq!(
            RecipientPrivateKeys::from_stored(M::HybridP256MlKem512, pubs).unwrap_err(),
            Error::KeyMismatch("expected a private key")
        );
        let mut privs = sk.to_stored();
        privs.push(privs[0].clone());
        assert_eq!(
            RecipientPrivateKeys::from_stored(M::HybridP256MlKem512, privs).unwrap_err(),
            Error::KeyMismatch("more than one ECDH key")
        );
        assert!(RecipientPrivateKeys::from_stored(M::HybridP256MlKem512, sk.to_stored()).is_ok());
    }
}
