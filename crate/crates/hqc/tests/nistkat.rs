//! Reproduces PQClean's `nistkat` output for HQC-128 and checks its SHA-256
//! against the digest recorded in vendor/hqc-128/META.yml.

use rand_core::{CryptoRng, RngCore};
use sha2::{Digest, Sha256};
use sha3::digest::{ExtendableOutput, Update, XofReader};
use sha3::Shake256;

/// The HQC submission's KAT generator: SHAKE-256(entropy || 0x01), squeezed
/// as one continuous stream.
struct HqcKatRng(sha3::Shake256Reader);

impl HqcKatRng {
    fn new(entropy: &[u8]) -> Self {
        let mut h = Shake256::default();
        h.update(entropy);
        h.update(&[0x01]);
        Self(h.finalize_xof())
    }
}

impl RngCore for HqcKatRng {
    fn next_u32(&mut self) -> u32 {
        let mut b = [0u8; 4];
        self.fill_bytes(&mut b);
        u32::from_le_bytes(b)
    }
    fn next_u64(&mut self) -> u64 {
        let mut b = [0u8; 8];
        self.fill_bytes(&mut b);
        u64::from_le_bytes(b)
    }
    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.0.read(dest);
    }
    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), rand_core::Error> {
        self.fill_bytes(dest);
        Ok(())
    }
}

impl CryptoRng for HqcKatRng {}

fn meta_digest() -> String {
    let meta = include_str!("../vendor/hqc-128/META.yml");
    meta.lines()
        .find_map(|l| l.strip_prefix("nistkat-sha256: "))
        .expect("nistkat-sha256 missing")
        .trim()
        .to_string()
}

fn kat_text() -> String {
    let entropy: Vec<u8> = (0u8..48).collect();
    let mut master = HqcKatRng::new(&entropy);
    let mut seed = [0u8; 48];
    master.fill_bytes(&mut seed);

    let mut rng = HqcKatRng::new(&seed);
    let (pk, sk) = pqies_hqc::keypair(&mut rng);
    let (ct, ss) = pqies_hqc::encapsulate(&pk, &mut rng);
    assert_eq!(pqies_hqc::decapsulate(&sk, &ct), ss);

    let up = |b: &[u8]| hex::encode_upper(b);
    format!(
        "count = 0\nseed = {}\npk = {}\nsk = {}\nct = {}\nss = {}\n",
        up(&seed),
        up(pk.as_bytes()),
        up(sk.as_bytes()),
        up(ct.as_bytes()),
        up(ss.as_bytes())
    )
}

#[test]
fn kat_digest_matches_pqclean() {
    let got = hex::encode(Sha256::digest(kat_text().as_bytes()));
    let want = meta_digest();
    assert_eq!(got, want);
}
