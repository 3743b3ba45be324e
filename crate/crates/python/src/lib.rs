//! Python module `pqies`: key generation, SPDU encryption/decryption, the
//! size table, the underlying primitives and the benchmark matrix.
//!
//! Keys cross the boundary as key-file bytes (the same format the CLI
//! writes), SPDUs as their wire encoding. Failures raise `pqies.PqiesError`
//! whose message starts with the error code, e.g. `MAC_MISMATCH: ...`.

// `#[pyfunction]` expands to an `Into<PyErr>` on values that already are one.
#![allow(clippy::useless_conversion)]

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyBytes, PyDict};

use pqies::bench::{self, Phase};
use pqies::primitives::keyfile::StoredKey;
use pqies::primitives::{kdf2 as core_kdf2, mac_tag as core_mac_tag, HashAlg};
use pqies::rand_core::OsRng;
use pqies::schemes::{self, RecipientPrivateKeys, RecipientPublicKeys};
use pqies::{ascon, registry, spdu, SuiteDescriptor};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;
use sha2::{Digest, Sha256};

create_exception!(pqies, PqiesError, PyValueError);

fn err(e: pqies::Error) -> PyErr {
    PqiesError::new_err(format!("{}: {e}", e.code()))
}

/// ChaCha20 keyed with SHA-256(seed), or seeded from the OS when absent.
fn rng(seed: Option<&[u8]>) -> PyResult<ChaCha20Rng> {
    match seed {
        Some(s) => Ok(ChaCha20Rng::from_seed(Sha256::digest(s).into())),
        None => ChaCha20Rng::from_rng(OsRng).map_err(|_| err(pqies::Error::RngFailure)),
    }
}

fn suite(id: u8) -> PyResult<&'static SuiteDescriptor> {
    pqies::suite(id).map_err(err)
}

fn stored(files: &[Vec<u8>]) -> PyResult<Vec<StoredKey>> {
    files.iter().map(|f| StoredKey::from_bytes(f).map_err(err)).collect()
}

fn hash_alg(name: &str) -> PyResult<HashAlg> {
    name.parse().map_err(PyValueError::new_err)
}

type KeyFiles<'py> = Vec<Bound<'py, PyBytes>>;

fn bytes_list<'py>(py: Python<'py>, keys: Vec<StoredKey>) -> KeyFiles<'py> {
    keys.iter().map(|k| PyBytes::new_bound(py, &k.to_bytes())).collect()
}

/// Registered suites as dicts.
#[pyfunction]
fn suites(py: Python<'_>) -> PyResult<Vec<Bound<'_, PyDict>>> {
    registry()
        .iter()
        .map(|s| {
            let d = PyDict::new_bound(py);
            d.set_item("suite_id", s.suite_id)?;
            d.set_item("label", s.label())?;
            d.set_item("kek_mechanism", s.kek_mechanism.name())?;
            d.set_item("hash_alg", s.hash_alg.name())?;
            d.set_item("aead_alg", s.aead_alg.name())?;
            d.set_item("kek_ct_len", s.kek_ct_len)?;
            d.set_item("nonce_len", s.nonce_len)?;
            d.set_item("kek_section_size", s.kek_section_size())?;
            d.set_item("quantum_safe", s.kek_mechanism.quantum_safe())?;
            Ok(d)
        })
        .collect()
}

/// One dict per KEK mechanism: kek_ct_len, c, t, total, quantum_safe.
#[pyfunction]
fn sizes(py: Python<'_>) -> PyResult<Vec<Bound<'_, PyDict>>> {
    spdu::size_table()
        .into_iter()
        .map(|r| {
            let d = PyDict::new_bound(py);
            d.set_item("mechanism", r.mechanism.name())?;
            d.set_item("suite_ids", r.suite_ids)?;
            d.set_item("kek_ct_len", r.kek_ct_len)?;
            d.set_item("c", r.c_len)?;
            d.set_item("t", r.t_len)?;
            d.set_item("total", r.total)?;
            d.set_item("quantum_safe", r.quantum_safe)?;
            Ok(d)
        })
        .collect()
}

#[pyfunction]
fn kek_section_size(suite_id: u8) -> PyResult<usize> {
    spdu::kek_section_size(suite_id).map_err(err)
}

/// Generates recipient keys; returns (public key files, private key files),
/// ECDH first for hybrid suites.
#[pyfunction]
#[pyo3(signature = (suite_id, seed=None))]
fn keygen<'py>(
    py: Python<'py>,
    suite_id: u8,
    seed: Option<&[u8]>,
) -> PyResult<(KeyFiles<'py>, KeyFiles<'py>)> {
    let s = suite(suite_id)?;
    let (pk, sk) = schemes::generate_recipient(s.kek_mechanism, &mut rng(seed)?).map_err(err)?;
    Ok((bytes_list(py, pk.to_stored()), bytes_list(py, sk.to_stored())))
}

/// Encrypts `plaintext` to the recipient; returns the encoded SPDU.
#[pyfunction]
#[pyo3(signature = (suite_id, public_keys, plaintext, info=b"".as_slice(), seed=None))]
fn encrypt<'py>(
    py: Python<'py>,
    suite_id: u8,
    public_keys: Vec<Vec<u8>>,
    plaintext: &[u8],
    info: &[u8],
    seed: Option<&[u8]>,
) -> PyResult<Bound<'py, PyBytes>> {
    let s = suite(suite_id)?;
    let keys = RecipientPublicKeys::from_stored(s.kek_mechanism, stored(&public_keys)?).map_err(err)?;
    let msg = spdu::encrypt_message(s, &keys, info, plaintext, &mut rng(seed)?).map_err(err)?;
    Ok(PyBytes::new_bound(py, &spdu::encode(&msg)))
}

/// Decodes and decrypts an SPDU; raises on any verification failure.
#[pyfunction]
#[pyo3(signature = (private_keys, data, info=b"".as_slice()))]
fn decrypt<'py>(
    py: Python<'py>,
    private_keys: Vec<Vec<u8>>,
    data: &[u8],
    info: &[u8],
) -> PyResult<Bound<'py, PyBytes>> {
    let msg = spdu::decode(data).map_err(err)?;
    let s = suite(msg.suite_id)?;
    let keys = RecipientPrivateKeys::from_stored(s.kek_mechanism, stored(&private_keys)?).map_err(err)?;
    let pt = spdu::decrypt_message(&keys, &msg, info).map_err(err)?;
    Ok(PyBytes::new_bound(py, &pt))
}

/// Public fields of an encoded SPDU.
#[pyfunction]
fn inspect<'py>(py: Python<'py>, data: &[u8]) -> PyResult<Bound<'py, PyDict>> {
    let msg = spdu::decode(data).map_err(err)?;
    let d = PyDict::new_bound(py);
    d.set_item("version", msg.version)?;
    d.set_item("suite_id", msg.suite_id)?;
    d.set_item("encrypted_kek", PyBytes::new_bound(py, &msg.wrapped.encrypted_kek))?;
    d.set_item("c", PyBytes::new_bound(py, &msg.wrapped.c))?;
    d.set_item("t", PyBytes::new_bound(py, &msg.wrapped.t))?;
    d.set_item("nonce", PyBytes::new_bound(py, &msg.payload.nonce))?;
    d.set_item("ccm_ciphertext", PyBytes::new_bound(py, &msg.payload.ccm_ciphertext))?;
    Ok(d)
}

/// KDF2 over `hash` ("SHA-256", "SHA3-256", "SHAKE-128", "Ascon-Hash256").
#[pyfunction]
#[pyo3(signature = (hash, z, p, out_len=32))]
fn kdf2<'py>(py: Python<'py>, hash: &str, z: &[u8], p: &[u8], out_len: usize) -> PyResult<Bound<'py, PyBytes>> {
    Ok(PyBytes::new_bound(py, &core_kdf2(hash_alg(hash)?, z, p, out_len)))
}

#[pyfunction]
fn mac_tag<'py>(py: Python<'py>, hash: &str, k2: &[u8], c: &[u8]) -> PyResult<Bound<'py, PyBytes>> {
    let k2: [u8; 16] = k2.try_into().map_err(|_| {
        err(pqies::Error::InvalidKeyLength {
            expected: 16,
            actual: k2.len(),
        })
    })?;
    Ok(PyBytes::new_bound(py, &core_mac_tag(hash_alg(hash)?, &k2, c)))
}

#[pyfunction]
fn xor_wrap<'py>(py: Python<'py>, k1: &[u8], s: &[u8]) -> PyResult<Bound<'py, PyBytes>> {
    Ok(PyBytes::new_bound(py, &schemes::xor_wrap(k1, s).map_err(err)?))
}

#[pyfunction]
fn ascon_hash256<'py>(py: Python<'py>, msg: &[u8]) -> Bound<'py, PyBytes> {
    PyBytes::new_bound(py, &ascon::hash256(msg))
}

#[pyfunction]
fn ascon_aead128_seal<'py>(
    py: Python<'py>,
    key: &[u8],
    nonce: &[u8],
    ad: &[u8],
    plaintext: &[u8],
) -> PyResult<Bound<'py, PyBytes>> {
    let ct = ascon::aead128_seal(key, nonce, ad, plaintext).map_err(err)?;
    Ok(PyBytes::new_bound(py, &ct))
}

#[pyfunction]
fn ascon_aead128_open<'py>(
    py: Python<'py>,
    key: &[u8],
    nonce: &[u8],
    ad: &[u8],
    ciphertext: &[u8],
) -> PyResult<Bound<'py, PyBytes>> {
    let pt = ascon::aead128_open(key, nonce, ad, ciphertext).map_err(err)?;
    Ok(PyBytes::new_bound(py, &pt))
}

/// Runs the benchmark matrix and returns it as CSV text.
#[pyfunction]
#[pyo3(signature = (suite_ids=None, phases=None, iterations=100, payload_len=bench::DEFAULT_PAYLOAD_LEN, seed=None))]
fn run_bench(
    py: Python<'_>,
    suite_ids: Option<Vec<u8>>,
    phases: Option<Vec<String>>,
    iterations: usize,
    payload_len: usize,
    seed: Option<&[u8]>,
) -> PyResult<String> {
    let ids = suite_ids.unwrap_or_else(|| registry().ids());
    let suites = ids.iter().map(|&id| suite(id).copied()).collect::<PyResult<Vec<_>>>()?;
    let phases = match phases {
        Some(names) => names
            .iter()
            .map(|n| n.parse::<Phase>().map_err(PyValueError::new_err))
            .collect::<PyResult<Vec<_>>>()?,
        None => Phase::ALL.to_vec(),
    };
    let mut rng = rng(seed)?;
    let stats = py
        .allow_threads(|| bench::run_matrix(&suites, &phases, iterations, payload_len, &mut rng))
        .map_err(err)?;
    Ok(bench::report_csv(&stats))
}

#[pymodule]
#[pyo3(name = "pqies")]
fn pqies_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("PqiesError", m.py().get_type_bound::<PqiesError>())?;
    m.add("SPDU_VERSION", spdu::VERSION)?;
    m.add_function(wrap_pyfunction!(suites, m)?)?;
    m.add_function(wrap_pyfunction!(sizes, m)?)?;
    m.add_function(wrap_pyfunction!(kek_section_size, m)?)?;
    m.add_function(wrap_pyfunction!(keygen, m)?)?;
    m.add_function(wrap_pyfunction!(encrypt, m)?)?;
    m.add_function(wrap_pyfunction!(decrypt, m)?)?;
    m.add_function(wrap_pyfunction!(inspect, m)?)?;
    m.add_function(wrap_pyfunction!(kdf2, m)?)?;
    m.add_function(wrap_pyfunction!(mac_tag, m)?)?;
    m.add_function(wrap_pyfunction!(xor_wrap, m)?)?;
    m.add_function(wrap_pyfunction!(ascon_hash256, m)?)?;
    m.add_function(wrap_pyfunction!(ascon_aead128_seal, m)?)?;
    m.add_function(wrap_pyfunction!(ascon_aead128_open, m)?)?;
    m.add_function(wrap_pyfunction!(run_bench, m)?)?;
    Ok(())
}
