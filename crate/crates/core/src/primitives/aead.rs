//! Payload AEAD under the 16-byte DEK.
//!
//! AES-128-CCM uses a 12-byte nonce, which fixes the CCM length field at
//! 3 bytes (messages up to 2^24 - 1 bytes), and a 16-byte tag.

use std::fmt;

use aes::Aes128;
use ccm::aead::generic_array::GenericArray;
use ccm::aead::{Aead, KeyInit, Payload};
use ccm::consts::{U12, U16};
use ccm::Ccm;

use crate::ascon;
use crate::error::{Error, Result};

type Aes128Ccm = Ccm<Aes128, U16, U12>;

pub const KEY_LEN: usize = 16;
pub const TAG_LEN: usize = 16;
/// Longest CCM message with a 3-byte length field.
pub const CCM_MAX_MESSAGE: usize = (1 << 24) - 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AeadAlg {
    Aes128Ccm,
    AsconAead128,
}

impl AeadAlg {
    pub fn name(self) -> &'static str {
        match self {
            AeadAlg::Aes128Ccm => "AES-128-CCM",
            AeadAlg::AsconAead128 => "Ascon-AEAD128",
        }
    }

    pub const fn nonce_len(self) -> usize {
        match self {
            AeadAlg::Aes128Ccm => 12,
            AeadAlg::AsconAead128 => ascon::NONCE_LEN,
        }
    }

    fn max_message(self) -> usize {
        match self {
            AeadAlg::Aes128Ccm => CCM_MAX_MESSAGE,
            // Bounded by the 4-byte payload length on the wire.
            AeadAlg::AsconAead128 => u32::MAX as usize - TAG_LEN,
        }
    }

    fn check(self, key: &[u8], nonce: &[u8]) -> Result<()> {
        if key.len() != KEY_LEN {
            return Err(Error::InvalidKeyLength {
                expected: KEY_LEN,
                actual: key.len(),
            });
        }
        if nonce.len() != self.nonce_len() {
            return Err(Error::InvalidNonceLength {
                expected: self.nonce_len(),
                actual: nonce.len(),
            });
        }
        Ok(())
    }

    /// Encrypts `plaintext`; the output is ciphertext followed by a 16-byte tag.
    pub fn seal(self, key: &[u8], nonce: &[u8], ad: &[u8], plaintext: &[u8]) -> Result<Vec<u8>> {
        self.check(key, nonce)?;
        if plaintext.len() > self.max_message() {
            return Err(Error::PayloadTooLarge(plaintext.len()));
        }
        match self {
            AeadAlg::Aes128Ccm => Aes128Ccm::new(GenericArray::from_slice(key))
                .encrypt(
                    GenericArray::from_slice(nonce),
                    Payload {
                        msg: plaintext,
                        aad: ad,
                    },
                )
                .map_err(|_| Error::PayloadTooLarge(plaintext.len())),
            AeadAlg::AsconAead128 => ascon::aead128_seal(key, nonce, ad, plaintext),
        }
    }

    /// Decrypts and verifies; no plaintext is released on failure.
    pub fn open(self, key: &[u8], nonce: &[u8], ad: &[u8], ciphertext_and_tag: &[u8]) -> Result<Vec<u8>> {
        self.check(key, nonce)?;
        if ciphertext_and_tag.len() < TAG_LEN {
            return Err(Error::InvalidLength {
                minimum: TAG_LEN,
                actual: ciphertext_and_tag.len(),
            });
        }
        match self {
            AeadAlg::Aes128Ccm => Aes128Ccm::new(GenericArray::from_slice(key))
                .decrypt(
                    GenericArray::from_slice(nonce),
                    Payload {
                        msg: ciphertext_and_tag,
                        aad: ad,
                    },
                )
                .map_err(|_| Error::AuthenticationFailure),
            AeadAlg::AsconAead128 => ascon::aead128_open(key, nonce, ad, ciphertext_and_tag),
        }
    }
}

impl fmt::Display for AeadAlg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
