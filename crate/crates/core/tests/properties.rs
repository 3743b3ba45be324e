use std::collections::HashSet;
use std::sync::OnceLock;

use proptest::prelude::*;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use sha2::{Digest, Sha256};

use pqies::ascon::{self, AsconState};
use pqies::primitives::{kdf_derive, mac_tag, mac_verify, registry, HashAlg};
use pqies::schemes::{self, xor_wrap, Dek, RecipientPrivateKeys, RecipientPublicKeys};
use pqies::spdu;
use pqies::{Error, SuiteDescriptor};

/// One recipient per registered suite, generated once.
fn recipients() -> &'static Vec<(SuiteDescriptor, RecipientPublicKeys, RecipientPrivateKeys)> {
    static KEYS: OnceLock<Vec<(SuiteDescriptor, RecipientPublicKeys, RecipientPrivateKeys)>> = OnceLock::new();
    KEYS.get_or_init(|| {
        let mut rng = ChaCha20Rng::seed_from_u64(0x5eed);
        registry()
            .iter()
            .map(|s| {
                let (pk, sk) = schemes::generate_recipient(s.kek_mechanism, &mut rng).unwrap();
                (*s, pk, sk)
            })
            .collect()
    })
}

fn any_hash() -> impl Strategy<Value = HashAlg> {
    prop::sample::select(HashAlg::ALL.to_vec())
}

proptest! {
    #[test]
    fn xor_wrap_is_bytewise_xor_and_self_inverse(k1 in any::<[u8; 16]>(), s in any::<[u8; 16]>()) {
        let c = xor_wrap(&k1, &s).unwrap();
        for i in 0..16 {
            prop_assert_eq!(c[i], k1[i] ^ s[i]);
        }
        prop_assert_eq!(xor_wrap(&k1, &c).unwrap(), s);
    }

    #[test]
    fn kdf_sha256_is_single_kdf2_block(z in prop::collection::vec(any::<u8>(), 1..96),
                                       p in prop::collection::vec(any::<u8>(), 0..64)) {
        let mut h = Sha256::new();
        h.update(&z);
        h.update([0, 0, 0, 1]);
        h.update(&p);
        let want = h.finalize();
        prop_assert_eq!(&kdf_derive(HashAlg::Sha256, &z, &p).to_bytes()[..], &want[..]);
    }

    #[test]
    fn mac_rejects_single_bit_flips(alg in any_hash(), k2 in any::<[u8; 16]>(),
                                    c in any::<[u8; 16]>(), bit in 0usize..384) {
        let t = mac_tag(alg, &k2, &c);
        prop_assert!(mac_verify(alg, &k2, &c, &t));
        let (mut c2, mut t2) = (c, t);
        if bit < 128 {
            c2[bit / 8] ^= 1 << (bit % 8);
        } else {
            t2[(bit - 128) / 8] ^= 1 << (bit % 8);
        }
        prop_assert!(!mac_verify(alg, &k2, &c2, &t2));
    }

    #[test]
    fn ascon_roundtrip_and_flip(key in any::<[u8; 16]>(), nonce in any::<[u8; 16]>(),
                                ad in prop::collection::vec(any::<u8>(), 0..40),
                                pt in prop::collection::vec(any::<u8>(), 0..80),
                                flip in any::<prop::sample::Index>()) {
        let ct = ascon::aead128_seal(&key, &nonce, &ad, &pt).unwrap();
        prop_assert_eq!(ct.len(), pt.len() + 16);
        prop_assert_eq!(&ascon::aead128_open(&key, &nonce, &ad, &ct).unwrap(), &pt);
        let mut bad = ct.clone();
        let bit = flip.index(bad.len() * 8);
        bad[bit / 8] ^= 1 << (bit % 8);
        prop_assert_eq!(ascon::aead128_open(&key, &nonce, &ad, &bad), Err(Error::AuthenticationFailure));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wrapped_dek_rejects_any_bit_flip(idx in 0usize..10, seed in any::<u64>(),
                                        dek in any::<[u8; 16]>(),
                                        p in prop::collection::vec(any::<u8>(), 0..64),
                                        flip in any::<prop::sample::Index>()) {
        let (suite, pk, sk) = &recipients()[idx];
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let dek = Dek::new(dek);
        let mut w = schemes::wrap(pk, &p, &dek, suite, &mut rng).unwrap();
        prop_assert_eq!(&schemes::unwrap(sk, &w, &p, suite).unwrap(), &dek);

        let bit = flip.index(w.field_len() * 8);
        let byte = bit / 8;
        let mask = 1u8 << (bit % 8);
        let kek_len = w.encrypted_kek.len();
        if byte < kek_len {
            w.encrypted_kek[byte] ^= mask;
        } else if byte < kek_len + 16 {
            w.c[byte - kek_len] ^= mask;
        } else {
            w.t[byte - kek_len - 16] ^= mask;
        }
        let err = schemes::unwrap(sk, &w, &p, suite).unwrap_err();
        prop_assert!(matches!(err, Error::MacMismatch | Error::InvalidPoint), "{:?}", err);
    }

    #[test]
    fn spdu_codec_roundtrip(idx in 0usize..10, seed in any::<u64>(),
                            pt in prop::collection::vec(any::<u8>(), 0..2048),
                            p in prop::collection::vec(any::<u8>(), 0..64)) {
        let (suite, pk, sk) = &recipients()[idx];
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let msg = spdu::encrypt_message(suite, pk, &p, &pt, &mut rng).unwrap();
        let bytes = spdu::encode(&msg);
        prop_assert_eq!(bytes.len(), spdu::encoded_len(suite, pt.len()));
        let back = spdu::decode(&bytes).unwrap();
        prop_assert_eq!(&back, &msg);
        prop_assert_eq!(spdu::decrypt_message(sk, &back, &p).unwrap(), pt);
    }
}

#[test]
fn hash256_no_collisions_over_random_messages() {
    let mut rng = ChaCha20Rng::seed_from_u64(1);
    let mut seen = HashSet::new();
    let mut msgs = HashSet::new();
    for _ in 0..10_000 {
        let len = (rng.next_u32() % 64) as usize;
        let mut m = vec![0u8; len];
        rng.fill_bytes(&mut m);
        if msgs.insert(m.clone()) {
            assert!(seen.insert(ascon::hash256(&m)));
        }
    }
}

#[test]
fn permutation_is_injective_on_sample() {
    let mut rng = ChaCha20Rng::seed_from_u64(2);
    for rounds in [8, 12] {
        let mut outputs = HashSet::new();
        let mut inputs = HashSet::new();
        for _ in 0..5000 {
            let x: [u64; 5] = core::array::from_fn(|_| rng.next_u64());
            if inputs.insert(x) {
                assert!(outputs.insert(ascon::permute(AsconState::new(x), rounds).unwrap()));
            }
        }
    }
}

#[test]
fn live_randomness_gives_fresh_nonce_and_dek() {
    // Recover the DEK by unwrapping; both it and the nonce must never repeat.
    let (suite, pk, sk) = recipients().iter().find(|r| r.0.suite_id == 0x12).unwrap();
    let mut nonces = HashSet::new();
    let mut deks = HashSet::new();
    for _ in 0..10_000 {
        let m = spdu::encrypt_message(suite, pk, b"", b"x", &mut pqies::rand_core::OsRng).unwrap();
        let dek = schemes::unwrap(sk, &m.wrapped, b"", suite).unwrap();
        assert!(nonces.insert(m.payload.nonce.clone()));
        assert!(deks.insert(*dek.as_bytes()));
    }
}
