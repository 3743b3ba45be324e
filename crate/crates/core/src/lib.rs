//! Integrated encryption schemes — ECIES, KEM-IES and Hybrid-IES — over
//! pluggable key establishment (P-256, ML-KEM-512, HQC-128), hash/KDF/MAC
//! (SHA-256, SHA3-256, SHAKE-128, Ascon-Hash256) and payload AEAD
//! (AES-128-CCM, Ascon-AEAD128), with a compact encrypted-SPDU wire format
//! and a timing harness.
//!
//! ```
//! use pqies::{primitives, schemes, spdu};
//! use rand_core::OsRng;
//!
//! let suite = primitives::suite(0x04)?;
//! let (public, private) = schemes::generate_recipient(suite.kek_mechanism, &mut OsRng)?;
//! let msg = spdu::encrypt_message(suite, &public, b"context", b"hello", &mut OsRng)?;
//! let wire = spdu::encode(&msg);
//! let back = spdu::decrypt_message(&private, &spdu::decode(&wire)?, b"context")?;
//! assert_eq!(back, b"hello");
//! # Ok::<(), pqies::Error>(())
//! ```

pub mod ascon;
pub mod bench;
mod error;
pub mod primitives;
pub mod schemes;
pub mod spdu;

pub use error::{Error, Result};
pub use primitives::{registry, suite, SuiteDescriptor};
pub use rand_core;
