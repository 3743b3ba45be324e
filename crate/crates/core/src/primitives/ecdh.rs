//! P-256 key agreement with 33-byte compressed public points.

use std::fmt;

use p256::elliptic_curve::sec1::ToEncodedPoint;
use p256::{FieldBytes, NonZeroScalar};
use rand_core::{CryptoRng, RngCore};

use super::SharedSecret;
use crate::error::{Error, Result};

pub const PUBLIC_KEY_LEN: usize = 33;
pub const PRIVATE_KEY_LEN: usize = 32;

/// A validated, on-curve, non-identity P-256 point (v_a or v_b).
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct EcdhPublicKey {
    point: p256::PublicKey,
    encoded: [u8; PUBLIC_KEY_LEN],
}

impl EcdhPublicKey {
    /// Decodes a compressed point. Uncompressed encodings, off-curve points
    /// and the identity are all rejected.
    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() != PUBLIC_KEY_LEN || !matches!(bytes[0], 0x02 | 0x03) {
            return Err(Error::InvalidPoint);
        }
        let point = p256::PublicKey::from_sec1_bytes(bytes).map_err(|_| Error::InvalidPoint)?;
        Ok(Self::from_point(point))
    }

    fn from_point(point: p256::PublicKey) -> Self {
        let mut encoded = [0u8; PUBLIC_KEY_LEN];
        encoded.copy_from_slice(point.to_encoded_point(true).as_bytes());
        Self { point, encoded }
    }

    pub fn as_bytes(&self) -> &[u8; PUBLIC_KEY_LEN] {
        &self.encoded
    }
}

impl fmt::Debug for EcdhPublicKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EcdhPublicKey(")?;
        for b in self.encoded {
            write!(f, "{b:02x}")?;
        }
        write!(f, ")")
    }
}

/// A P-256 scalar in [1, n-1] (u_a or u_b). Zeroized on drop by `p256`.
#[derive(Clone)]
pub struct EcdhPrivateKey(NonZeroScalar);

impl EcdhPrivateKey {
    /// Parses a 32-byte big-endian scalar.
    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() != PRIVATE_KEY_LEN {
            return Err(Error::InvalidPrivateKey);
        }
        Option::from(NonZeroScalar::from_repr(*FieldBytes::from_slice(bytes)))
            .map(Self)
            .ok_or(Error::InvalidPrivateKey)
    }

    pub fn to_bytes(&self) -> [u8; PRIVATE_KEY_LEN] {
        self.0.to_bytes().into()
    }

    pub fn public_key(&self) -> EcdhPublicKey {
        EcdhPublicKey::from_point(p256::PublicKey::from_secret_scalar(&self.0))
    }
}

impl fmt::Debug for EcdhPrivateKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("EcdhPrivateKey(..)")
    }
}

#[derive(Clone, Debug)]
pub struct EcdhKeyPair {
    pub private_scalar: EcdhPrivateKey,
    pub public_point: EcdhPublicKey,
}

impl EcdhKeyPair {
    pub fn from_private(private_scalar: EcdhPrivateKey) -> Self {
        let public_point = private_scalar.public_key();
        Self {
            private_scalar,
            public_point,
        }
    }
}

/// Draws 32-byte candidates from `rng` until one is a valid non-zero scalar.
pub fn ecdh_keygen<R: RngCore + CryptoRng + ?Sized>(rng: &mut R) -> EcdhKeyPair {
    let mut candidate = FieldBytes::default();
    loop {
        rng.fill_bytes(&mut candidate);
        if let Some(scalar) = Option::<NonZeroScalar>::from(NonZeroScalar::from_repr(candidate)) {
            zeroize::Zeroize::zeroize(candidate.as_mut_slice());
            return EcdhKeyPair::from_private(EcdhPrivateKey(scalar));
        }
    }
}

/// Big-endian x-coordinate of `private_scalar * peer_public`.
///
/// The peer point is decoded and validated first; see
/// [`EcdhPublicKey::from_bytes`].
pub fn ecdh_shared_x(private_scalar: &EcdhPrivateKey, peer_public: &[u8]) -> Result<SharedSecret> {
    let peer = EcdhPublicKey::from_bytes(peer_public)?;
    Ok(shared_x(private_scalar, &peer))
}

pub(crate) fn shared_x(private_scalar: &EcdhPrivateKey, peer: &EcdhPublicKey) -> SharedSecret {
    let shared = p256::ecdh::diffie_hellman(&private_scalar.0, peer.point.as_affine());
    let mut out = [0u8; 32];
    out.copy_from_slice(shared.raw_secret_bytes());
    SharedSecret::new(out)
}
