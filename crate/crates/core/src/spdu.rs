//! Encrypted SPDU: the wrapped DEK plus the AEAD-sealed payload.
//!
//! Wire layout, all fixed-size fields determined by the suite:
//!
//! ```text
//! version (1) = 0x01
//! suite_id (1)
//! encrypted_kek (kek_ct_len)
//! c (16)
//! t (32)
//! nonce (nonce_len)
//! payload_len (4, big-endian)
//! ccm_ciphertext (payload_len, includes the 16-byte AEAD tag)
//! ```

use rand_core::{CryptoRng, RngCore};

use crate::error::{Error, Result};
use crate::primitives::aead::TAG_LEN as AEAD_TAG_LEN;
use crate::primitives::{registry, KekMechanism, SuiteDescriptor};
use crate::schemes::{self, Dek, RecipientPrivateKeys, RecipientPublicKeys, WrappedDek, C_LEN, T_LEN};

pub const VERSION: u8 = 0x01;
pub const HEADER_LEN: usize = 2;
const LEN_FIELD: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PayloadCiphertext {
    pub nonce: Vec<u8>,
    pub ccm_ciphertext: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncryptedSpdu {
    pub version: u8,
    pub suite_id: u8,
    pub wrapped: WrappedDek,
    pub payload: PayloadCiphertext,
}

/// Encrypts `plaintext` for the recipient under a fresh random DEK and nonce.
pub fn encrypt_message<R: RngCore + CryptoRng>(
    suite: &SuiteDescriptor,
    recipient_keys: &RecipientPublicKeys,
    info: &[u8],
    plaintext: &[u8],
    rng: &mut R,
) -> Result<EncryptedSpdu> {
    let dek = Dek::generate(rng)?;
    let mut nonce = vec![0u8; suite.nonce_len];
    rng.try_fill_bytes(&mut nonce).map_err(|_| Error::RngFailure)?;
    encrypt_message_with(suite, recipient_keys, info, plaintext, &dek, &nonce, rng)
}

/// [`encrypt_message`] with caller-chosen DEK and nonce, for reproducible
/// vectors. `rng` still drives the ephemeral key / encapsulation. Never reuse
/// a (DEK, nonce) pair.
pub fn encrypt_message_with<R: RngCore + CryptoRng>(
    suite: &SuiteDescriptor,
    recipient_keys: &RecipientPublicKeys,
    info: &[u8],
    plaintext: &[u8],
    dek: &Dek,
    nonce: &[u8],
    rng: &mut R,
) -> Result<EncryptedSpdu> {
    let ccm_ciphertext = suite.aead_alg.seal(dek.as_bytes(), nonce, b"", plaintext)?;
    let wrapped = schemes::wrap(recipient_keys, info, dek, suite, rng)?;
    Ok(EncryptedSpdu {
        version: VERSION,
        suite_id: suite.suite_id,
        wrapped,
        payload: PayloadCiphertext {
            nonce: nonce.to_vec(),
            ccm_ciphertext,
        },
    })
}

/// Unwraps the DEK (MAC-verified) and opens the payload. Only registered
/// suites are accepted.
pub fn decrypt_message(recipient_keys: &RecipientPrivateKeys, spdu: &EncryptedSpdu, info: &[u8]) -> Result<Vec<u8>> {
    let suite = registry()
        .get(spdu.suite_id)
        .map_err(|_| Error::UnsupportedSuite(spdu.suite_id))?;
    decrypt_message_as(suite, recipient_keys, spdu, info)
}

/// [`decrypt_message`] against an explicit, possibly unregistered, suite.
pub fn decrypt_message_as(
    suite: &SuiteDescriptor,
    recipient_keys: &RecipientPrivateKeys,
    spdu: &EncryptedSpdu,
    info: &[u8],
) -> Result<Vec<u8>> {
    if spdu.version != VERSION {
        return Err(Error::BadMagicOrVersion);
    }
    if spdu.suite_id != suite.suite_id {
        return Err(Error::SuiteMismatch {
            expected: suite.suite_id,
            actual: spdu.suite_id,
        });
    }
    let dek = schemes::unwrap(recipient_keys, &spdu.wrapped, info, suite)?;
    suite
        .aead_alg
        .open(dek.as_bytes(), &spdu.payload.nonce, b"", &spdu.payload.ccm_ciphertext)
}

/// Serialized length of an SPDU carrying `plaintext_len` bytes.
pub fn encoded_len(suite: &SuiteDescriptor, plaintext_len: usize) -> usize {
    HEADER_LEN + suite.kek_section_size() + suite.nonce_len + LEN_FIELD + plaintext_len + AEAD_TAG_LEN
}

pub fn encode(spdu: &EncryptedSpdu) -> Vec<u8> {
    let w = &spdu.wrapped;
    let p = &spdu.payload;
    let mut out = Vec::with_capacity(
        HEADER_LEN + w.field_len() + p.nonce.len() + LEN_FIELD + p.ccm_ciphertext.len(),
    );
    out.push(spdu.version);
    out.push(spdu.suite_id);
    out.extend_from_slice(&w.encrypted_kek);
    out.extend_from_slice(&w.c);
    out.extend_from_slice(&w.t);
    out.extend_from_slice(&p.nonce);
    let len = u32::try_from(p.ccm_ciphertext.len()).expect("payload length fits the 4-byte field");
    out.extend_from_slice(&len.to_be_bytes());
    out.extend_from_slice(&p.ccm_ciphertext);
    out
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(n).filter(|&e| e <= self.buf.len()).ok_or(Error::TruncatedInput {
            needed: self.pos.saturating_add(n),
            actual: self.buf.len(),
        })?;
        let out = &self.buf[self.pos..end];
        self.pos = end;
        Ok(out)
    }
}

pub fn decode(bytes: &[u8]) -> Result<EncryptedSpdu> {
    let mut r = Reader { buf: bytes, pos: 0 };
    if r.take(1)?[0] != VERSION {
        return Err(Error::BadMagicOrVersion);
    }
    let suite_id = r.take(1)?[0];
    let suite = registry().get(suite_id)?;

    let encrypted_kek = r.take(suite.kek_ct_len)?.to_vec();
    let c: [u8; C_LEN] = r.take(C_LEN)?.try_into().unwrap();
    let t: [u8; T_LEN] = r.take(T_LEN)?.try_into().unwrap();
    let nonce = r.take(suite.nonce_len)?.to_vec();
    let len = u32::from_be_bytes(r.take(LEN_FIELD)?.try_into().unwrap()) as usize;
    if len < AEAD_TAG_LEN {
        return Err(Error::InvalidLength {
            minimum: AEAD_TAG_LEN,
            actual: len,
        });
    }
    let ccm_ciphertext = r.take(len)?.to_vec();
    if r.pos != bytes.len() {
        return Err(Error::TrailingBytes(bytes.len() - r.pos));
    }
    Ok(EncryptedSpdu {
        version: VERSION,
        suite_id,
        wrapped: WrappedDek {
            suite_id,
            encrypted_kek,
            c,
            t,
        },
        payload: PayloadCiphertext { nonce, ccm_ciphertext },
    })
}

/// Bytes of the EncryptedDataEncryptionKey section for a registered suite.
pub fn kek_section_size(suite_id: u8) -> Result<usize> {
    Ok(registry().get(suite_id)?.kek_section_size())
}

/// One row of the EncryptedDataEncryptionKey size comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeRow {
    pub mechanism: KekMechanism,
    /// Registered suites using this mechanism.
    pub suite_ids: Vec<u8>,
    pub kek_ct_len: usize,
    pub c_len: usize,
    pub t_len: usize,
    pub total: usize,
    pub quantum_safe: bool,
}

/// One row per KEK mechanism, in registry order.
pub fn size_table() -> Vec<SizeRow> {
    KekMechanism::ALL
        .iter()
        .filter_map(|&mechanism| {
            let suites: Vec<&SuiteDescriptor> = registry().iter().filter(|s| s.kek_mechanism == mechanism).collect();
            let first = suites.first()?;
            Some(SizeRow {
                mechanism,
                suite_ids: suites.iter().map(|s| s.suite_id).collect(),
                kek_ct_len: first.kek_ct_len,
                c_len: first.dek_ct_len,
                t_len: first.tag_len,
                total: first.kek_section_size(),
                quantum_safe: mechanism.quantum_safe(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primitives::suite;
    use crate::schemes::generate_recipient;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn table_totals() {
        let got: Vec<usize> = [1, 2, 3, 4, 5].map(|id| kek_section_size(id).unwrap()).to_vec();
        assert_eq!(got, [81, 816, 4481, 849, 4514]);
        assert_eq!(kek_section_size(0x99), Err(Error::UnknownSuite(0x99)));

        let rows = size_table();
        let totals: Vec<usize> = rows.iter().map(|r| r.total).collect();
        assert_eq!(totals, [81, 816, 4481, 849, 4514]);
        let safe: Vec<bool> = rows.iter().map(|r| r.quantum_safe).collect();
        assert_eq!(safe, [false, true, true, true, true]);
        assert_eq!(rows[0].suite_ids, [0x01, 0x11]);
    }

    #[test]
    fn ecies_empty_message_is_115_bytes() {
        let mut rng = ChaCha20Rng::seed_from_u64(31);
        let s = suite(0x01).unwrap();
        let (pk, sk) = generate_recipient(s.kek_mechanism, &mut rng).unwrap();
        let spdu = encrypt_message(s, &pk, b"", b"", &mut rng).unwrap();
        let bytes = encode(&spdu);
        assert_eq!(bytes.len(), 115);
        assert_eq!(bytes.len(), encoded_len(s, 0));
        assert_eq!(&bytes[..2], &[0x01, 0x01]);
        assert_eq!(spdu.payload.ccm_ciphertext.len(), 16);
        assert_eq!(decrypt_message(&sk, &decode(&bytes).unwrap(), b"").unwrap(), b"");
    }

    #[test]
    fn nonce_lengths() {
        let mut rng = ChaCha20Rng::seed_from_u64(32);
        for (id, n) in [(0x02, 12), (0x12, 16)] {
            let s = suite(id).unwrap();
            let (pk, _) = generate_recipient(s.kek_mechanism, &mut rng).unwrap();
            let spdu = encrypt_message(s, &pk, b"", b"x", &mut rng).unwrap();
            assert_eq!(spdu.payload.nonce.len(), n);
        }
    }

    #[test]
    fn decode_errors() {
        let mut rng = ChaCha20Rng::seed_from_u64(33);
        let s = suite(0x11).unwrap();
        let (pk, _) = generate_recipient(s.kek_mechanism, &mut rng).unwrap();
        let bytes = encode(&encrypt_message(s, &pk, b"", b"hello", &mut rng).unwrap());

        let mut bad = bytes.clone();
        bad[0] = 0x02;
        assert_eq!(decode(&bad), Err(Error::BadMagicOrVersion));

        let mut bad = bytes.clone();
        bad[1] = 0x06;
        assert_eq!(decode(&bad), Err(Error::UnknownSuite(0x06)));

        assert!(matches!(decode(&bytes[..bytes.len() - 1]), Err(Error::TruncatedInput { .. })));
        assert!(matches!(decode(&bytes[..1]), Err(Error::TruncatedInput { .. })));
        assert_eq!(decode(&[]), Err(Error::TruncatedInput { needed: 1, actual: 0 }));

        let mut bad = bytes.clone();
        bad.push(0);
        assert_eq!(decode(&bad), Err(Error::TrailingBytes(1)));

        // Length field claims less than one AEAD tag.
        let mut bad = bytes;
        let at = 2 + 81 + 16;
        bad[at..at + 4].copy_from_slice(&5u32.to_be_bytes());
        assert_eq!(decode(&bad), Err(Error::InvalidLength { minimum: 16, actual: 5 }));
    }

    #[test]
    fn injected_values_are_deterministic() {
        let s = suite(0x02).unwrap();
        let (pk, sk) = generate_recipient(s.kek_mechanism, &mut ChaCha20Rng::seed_from_u64(34)).unwrap();
        let dek = Dek::new([3; 16]);
        let a = encrypt_message_with(s, &pk, b"p", b"msg", &dek, &[9; 12], &mut ChaCha20Rng::seed_from_u64(1)).unwrap();
        let b = encrypt_message_with(s, &pk, b"p", b"msg", &dek, &[9; 12], &mut ChaCha20Rng::seed_from_u64(1)).unwrap();
        assert_eq!(encode(&a), encode(&b));
        assert_eq!(decrypt_message(&sk, &a, b"p").unwrap(), b"msg");
    }
}
