//! Acceptance run: one line per criterion. Criteria 1-6 are hard gates and
//! set a nonzero exit status on failure; 7 and 8 report timing-based claims
//! as PASS/WARN and never fail the run.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use sha2::{Digest, Sha256};

use pqies::ascon::{aead128_open, aead128_seal, hash256};
use pqies::bench::{self, FindingStatus, Phase};
use pqies::primitives::{kdf2, kdf_derive, registry, HashAlg};
use pqies::schemes::{self, xor_wrap};
use pqies::{spdu, suite, SuiteDescriptor};

const TABLE_TOTALS: [(u8, usize); 5] = [(0x01, 81), (0x02, 816), (0x03, 4481), (0x04, 849), (0x05, 4514)];
const TABLE_KEK: [usize; 5] = [33, 768, 4433, 801, 4466];

type Criterion = (&'static str, fn() -> Outcome);

enum Outcome {
    Pass(String),
    Fail(String),
    Warn(String),
}

fn hard(f: impl FnOnce() -> Result<String, String>) -> Outcome {
    match panic::catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(d)) => Outcome::Pass(d),
        Ok(Err(d)) => Outcome::Fail(d),
        Err(p) => Outcome::Fail(
            p.downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()),
        ),
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn table_sizes() -> Result<String, String> {
    for ((id, total), kek) in TABLE_TOTALS.iter().zip(TABLE_KEK) {
        let s = suite(*id).map_err(|e| e.to_string())?;
        check(s.kek_ct_len == kek, || format!("0x{id:02x} kek_ct_len {} != {kek}", s.kek_ct_len))?;
        check(s.dek_ct_len == 16 && s.tag_len == 32, || format!("0x{id:02x} c/t lengths"))?;
        let got = spdu::kek_section_size(*id).map_err(|e| e.to_string())?;
        check(got == *total, || format!("0x{id:02x} total {got} != {total}"))?;
    }
    for s in registry().iter() {
        let base = TABLE_TOTALS.iter().position(|(id, _)| *id == s.suite_id & 0x0f).ok_or("unmapped suite")?;
        check(s.kek_section_size() == TABLE_TOTALS[base].1, || format!("0x{:02x} size", s.suite_id))?;
    }
    let rows: Vec<usize> = spdu::size_table().iter().map(|r| r.total).collect();
    check(rows == [81, 816, 4481, 849, 4514], || format!("size table {rows:?}"))?;
    Ok(format!("totals {rows:?} across {} suites", registry().len()))
}

fn random_vec(rng: &mut ChaCha20Rng, max: usize) -> Vec<u8> {
    let mut v = vec![0u8; rng.next_u32() as usize % (max + 1)];
    rng.fill_bytes(&mut v);
    v
}

fn roundtrips() -> Result<String, String> {
    let mut rng = ChaCha20Rng::seed_from_u64(0xacce_0002);
    let mut total = 0usize;
    for s in registry().iter() {
        let mut keys = None;
        for trial in 0..1000 {
            // Fresh recipient every 100 trials.
            if trial % 100 == 0 {
                keys = Some(schemes::generate_recipient(s.kek_mechanism, &mut rng).map_err(|e| e.to_string())?);
            }
            let (pk, sk) = keys.as_ref().unwrap();
            let pt = random_vec(&mut rng, 64 * 1024);
            let p = random_vec(&mut rng, 64);
            let msg = spdu::encrypt_message(s, pk, &p, &pt, &mut rng).map_err(|e| e.to_string())?;
            let back = spdu::decode(&spdu::encode(&msg)).map_err(|e| e.to_string())?;
            let out = spdu::decrypt_message(sk, &back, &p).map_err(|e| format!("0x{:02x}: {e}", s.suite_id))?;
            check(out == pt, || format!("0x{:02x} trial {trial}: plaintext differs", s.suite_id))?;
            total += 1;
        }
    }
    Ok(format!("{total} encrypt/decrypt roundtrips"))
}

fn tamper() -> Result<String, String> {
    let mut rng = ChaCha20Rng::seed_from_u64(0xacce_0003);
    let mut total = 0usize;
    for s in registry().iter() {
        let (pk, sk) = schemes::generate_recipient(s.kek_mechanism, &mut rng).map_err(|e| e.to_string())?;
        for trial in 0..256 {
            let pt = random_vec(&mut rng, 512);
            let p = random_vec(&mut rng, 64);
            let mut bytes = spdu::encode(&spdu::encrypt_message(s, &pk, &p, &pt, &mut rng).map_err(|e| e.to_string())?);
            let body_bits = (bytes.len() - spdu::HEADER_LEN) * 8;
            let bit = spdu::HEADER_LEN * 8 + (rng.next_u64() as usize % body_bits);
            bytes[bit / 8] ^= 1 << (bit % 8);
            let result = spdu::decode(&bytes).and_then(|m| spdu::decrypt_message(&sk, &m, &p));
            check(result.is_err(), || {
                format!("0x{:02x} trial {trial}: flip of bit {bit} accepted", s.suite_id)
            })?;
            total += 1;
        }
    }
    Ok(format!("{total} single-bit tamperings rejected"))
}

fn kdf_oracle() -> Result<String, String> {
    let mut rng = ChaCha20Rng::seed_from_u64(0xacce_0004);
    let block = |z: &[u8], counter: u32, p: &[u8]| -> Vec<u8> {
        let mut h = Sha256::new();
        h.update(z);
        h.update(counter.to_be_bytes());
        h.update(p);
        h.finalize().to_vec()
    };
    for i in 0..100 {
        let z = random_vec(&mut rng, 96);
        let p = random_vec(&mut rng, 64);
        let want = block(&z, 1, &p);
        check(kdf_derive(HashAlg::Sha256, &z, &p).to_bytes()[..] == want[..], || format!("pair {i}: K1||K2"))?;
        let mut long = want.clone();
        long.extend_from_slice(&block(&z, 2, &p)[..16]);
        check(kdf2(HashAlg::Sha256, &z, &p, 48) == long, || format!("pair {i}: 48-byte output"))?;
    }
    Ok("100 random (Z, P) pairs match SHA-256 KDF2, single- and two-block".into())
}

fn kat_rows(text: &str, width: usize) -> Vec<Vec<Vec<u8>>> {
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let f: Vec<Vec<u8>> = l
                .split_whitespace()
                .map(|s| if s == "-" { Vec::new() } else { hex::decode(s).unwrap() })
                .collect();
            assert_eq!(f.len(), width, "malformed line: {l}");
            f
        })
        .collect()
}

fn ascon_kats() -> Result<String, String> {
    let hashes = kat_rows(include_str!("data/ascon_hash256.kat"), 2);
    let aeads = kat_rows(include_str!("data/ascon_aead128.kat"), 5);
    check(hashes.len() >= 10 && aeads.len() >= 10, || "fewer than 10 vectors".into())?;
    for (i, r) in hashes.iter().enumerate() {
        check(hash256(&r[0])[..] == r[1][..], || format!("hash vector {i}"))?;
    }
    for (i, r) in aeads.iter().enumerate() {
        let ct = aead128_seal(&r[0], &r[1], &r[2], &r[3]).map_err(|e| e.to_string())?;
        check(ct == r[4], || format!("AEAD vector {i}: ciphertext"))?;
        let pt = aead128_open(&r[0], &r[1], &r[2], &r[4]).map_err(|e| format!("AEAD vector {i}: {e}"))?;
        check(pt == r[3], || format!("AEAD vector {i}: plaintext"))?;
    }
    Ok(format!("{} Ascon-Hash256 and {} Ascon-AEAD128 vectors", hashes.len(), aeads.len()))
}

fn xor_law() -> Result<String, String> {
    let mut rng = ChaCha20Rng::seed_from_u64(0xacce_0006);
    for i in 0..10_000 {
        let (mut k1, mut s) = ([0u8; 16], [0u8; 16]);
        rng.fill_bytes(&mut k1);
        rng.fill_bytes(&mut s);
        let c = xor_wrap(&k1, &s).map_err(|e| e.to_string())?;
        check((0..16).all(|j| c[j] == s[j] ^ k1[j]), || format!("pair {i}: c != s xor k1"))?;
        check(xor_wrap(&k1, &c).map_err(|e| e.to_string())? == s, || format!("pair {i}: not self-inverse"))?;
    }
    Ok("10000 random (K1, s) pairs".into())
}

fn suites(ids: &[u8]) -> Vec<SuiteDescriptor> {
    ids.iter().map(|&id| *suite(id).unwrap()).collect()
}

fn additivity() -> Outcome {
    let mut rng = ChaCha20Rng::seed_from_u64(0xacce_0007);
    let stats = match bench::run_matrix(&suites(&[0x01, 0x02, 0x03, 0x04, 0x05]), &[Phase::KekEncrypt], 1000, 0, &mut rng) {
        Ok(s) => s,
        Err(e) => return Outcome::Warn(format!("benchmark failed: {e}")),
    };
    let findings = [
        bench::hybrid_additivity(&stats, 0x04, 0x01, 0x02, 0.35),
        bench::hybrid_additivity(&stats, 0x05, 0x01, 0x03, 0.35),
    ];
    let detail = findings.iter().map(|f| f.to_string()).collect::<Vec<_>>().join("; ");
    if findings.iter().all(|f| f.status == FindingStatus::Pass) {
        Outcome::Pass(detail)
    } else {
        Outcome::Warn(detail)
    }
}

fn ordering() -> Outcome {
    let mut rng = ChaCha20Rng::seed_from_u64(0xacce_0008);
    let ids = registry().ids();
    let all = suites(&ids);
    let mut stats = match bench::run_matrix(&suites(&[0x01, 0x02, 0x03]), &[Phase::KeyGen, Phase::KekEncrypt], 200, 0, &mut rng) {
        Ok(s) => s,
        Err(e) => return Outcome::Warn(format!("benchmark failed: {e}")),
    };
    match bench::run_matrix(&all, &[Phase::DataEncrypt], 200, bench::DEFAULT_PAYLOAD_LEN, &mut rng) {
        Ok(s) => stats.extend(s),
        Err(e) => return Outcome::Warn(format!("benchmark failed: {e}")),
    }
    let findings = bench::ordering_findings(&stats, &all);
    let detail = findings.iter().map(|f| f.to_string()).collect::<Vec<_>>().join("; ");
    if findings.iter().all(|f| f.status == FindingStatus::Pass) {
        Outcome::Pass(detail)
    } else {
        Outcome::Warn(detail)
    }
}

fn main() -> ExitCode {
    // Failures are reported on the criterion's line, not as panic traces.
    panic::set_hook(Box::new(|_| {}));

    let criteria: [Criterion; 8] = [
        ("1 EncryptedDataEncryptionKey sizes", || hard(table_sizes)),
        ("2 encrypt/decrypt roundtrip, all suites", || hard(roundtrips)),
        ("3 single-bit tamper rejection", || hard(tamper)),
        ("4 KDF2 against independent SHA-256", || hard(kdf_oracle)),
        ("5 Ascon reference vectors", || hard(ascon_kats)),
        ("6 XOR wrap law", || hard(xor_law)),
        ("7 hybrid KEK cost additivity (informational)", additivity),
        ("8 relative performance ordering (informational)", ordering),
    ];

    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match outcome {
            Outcome::Pass(d) => ("PASS", d),
            Outcome::Warn(d) => ("WARN", d),
            Outcome::Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("[{tag}] criterion {name}: {detail} ({secs:.2} s)");
    }

    if failed == 0 {
        println!("acceptance: all hard criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} hard criteria failed");
        ExitCode::FAILURE
    }
}
