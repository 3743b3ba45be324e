//! Key derivation: KDF2 (hash of z || counter || p, counter from 1, big-endian)
//! for fixed-output hashes; direct output for SHAKE-128.

use sha2::Sha256;
use sha3::digest::{Digest, ExtendableOutput, Update, XofReader};
use sha3::{Sha3_256, Shake128};
use zeroize::Zeroize;

use super::HashAlg;
use crate::ascon::AsconHash256;

pub const KEY_LEN: usize = 16;

/// k1 || k2, the 32-byte KDF output split in half. Zeroized on drop.
#[derive(Clone, PartialEq, Eq)]
pub struct DerivedKeys {
    pub k1: [u8; KEY_LEN],
    pub k2: [u8; KEY_LEN],
}

impl DerivedKeys {
    pub fn from_output(out: &[u8; 2 * KEY_LEN]) -> Self {
        let mut k1 = [0u8; KEY_LEN];
        let mut k2 = [0u8; KEY_LEN];
        k1.copy_from_slice(&out[..KEY_LEN]);
        k2.copy_from_slice(&out[KEY_LEN..]);
        Self { k1, k2 }
    }

    pub fn to_bytes(&self) -> [u8; 2 * KEY_LEN] {
        let mut out = [0u8; 2 * KEY_LEN];
        out[..KEY_LEN].copy_from_slice(&self.k1);
        out[KEY_LEN..].copy_from_slice(&self.k2);
        out
    }
}

impl Drop for DerivedKeys {
    fn drop(&mut self) {
        self.k1.zeroize();
        self.k2.zeroize();
    }
}

impl std::fmt::Debug for DerivedKeys {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("DerivedKeys(..)")
    }
}

/// Hashes the concatenation of `parts` to 32 bytes (SHAKE-128 squeezes 32).
pub(crate) fn hash_concat(alg: HashAlg, parts: &[&[u8]]) -> [u8; 32] {
    match alg {
        HashAlg::Sha256 => {
            let mut h = Sha256::new();
            parts.iter().for_each(|p| Digest::update(&mut h, p));
            h.finalize().into()
        }
        HashAlg::Sha3_256 => {
            let mut h = Sha3_256::new();
            parts.iter().for_each(|p| Digest::update(&mut h, p));
            h.finalize().into()
        }
        HashAlg::Shake128 => {
            let mut out = [0u8; 32];
            shake(parts, &mut out);
            out
        }
        HashAlg::AsconHash256 => {
            let mut h = AsconHash256::new();
            parts.iter().for_each(|p| h.update(p));
            h.finalize()
        }
    }
}

fn shake(parts: &[&[u8]], out: &mut [u8]) {
    let mut h = Shake128::default();
    parts.iter().for_each(|p| h.update(p));
    h.finalize_xof().read(out);
}

/// Derives `out_len` bytes from secret `z` and shared info `p`.
///
/// Fixed-output hashes run KDF2 over as many 32-byte blocks as needed and
/// truncate; SHAKE-128 squeezes `out_len` bytes of SHAKE-128(z || p).
pub fn kdf2(alg: HashAlg, z: &[u8], p: &[u8], out_len: usize) -> Vec<u8> {
    let mut out = vec![0u8; out_len];
    if alg == HashAlg::Shake128 {
        shake(&[z, p], &mut out);
        return out;
    }
    for (i, chunk) in out.chunks_mut(32).enumerate() {
        let counter = u32::try_from(i + 1).expect("KDF2 output length overflow");
        let mut block = hash_concat(alg, &[z, &counter.to_be_bytes(), p]);
        chunk.copy_from_slice(&block[..chunk.len()]);
        block.zeroize();
    }
    out
}

/// (k1, k2) = first and second 16 bytes of the 32-byte KDF output.
pub fn kdf_derive(hash_alg: HashAlg, z: &[u8], p: &[u8]) -> DerivedKeys {
    let mut out = if hash_alg == HashAlg::Shake128 {
        let mut out = [0u8; 32];
        shake(&[z, p], &mut out);
        out
    } else {
        hash_concat(hash_alg, &[z, &1u32.to_be_bytes(), p])
    };
    let keys = DerivedKeys::from_output(&out);
    out.zeroize();
    keys
}
