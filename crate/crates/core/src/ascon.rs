//! Ascon permutation, Ascon-Hash256 and Ascon-AEAD128 (NIST SP 800-232).
//!
//! Words are loaded little-endian. Nonces are supplied by the caller.

use subtle::ConstantTimeEq;

use crate::error::{Error, Result};

pub const KEY_LEN: usize = 16;
pub const NONCE_LEN: usize = 16;
pub const TAG_LEN: usize = 16;
pub const DIGEST_LEN: usize = 32;

const HASH_IV: u64 = 0x0000_0801_00cc_0002;
const AEAD_IV: u64 = 0x0000_1000_808c_0001;
const HASH_RATE: usize = 8;
const AEAD_RATE: usize = 16;

const ROUND_CONSTANTS: [u64; 12] = [
    0xf0, 0xe1, 0xd2, 0xc3, 0xb4, 0xa5, 0x96, 0x87, 0x78, 0x69, 0x5a, 0x4b,
];

/// The 320-bit Ascon state as five 64-bit lanes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct AsconState {
    pub x: [u64; 5],
}

impl AsconState {
    pub const fn new(x: [u64; 5]) -> Self {
        Self { x }
    }

    /// Applies the last `rounds` rounds of the 12-round schedule in place.
    pub fn permute(&mut self, rounds: usize) -> Result<()> {
        if !(1..=12).contains(&rounds) {
            return Err(Error::InvalidRounds(rounds));
        }
        self.rounds(rounds);
        Ok(())
    }

    #[inline]
    fn rounds(&mut self, rounds: usize) {
        for &c in &ROUND_CONSTANTS[12 - rounds..] {
            self.round(c);
        }
    }

    #[inline(always)]
    fn round(&mut self, c: u64) {
        let [mut x0, mut x1, mut x2, mut x3, mut x4] = self.x;

        x2 ^= c;

        x0 ^= x4;
        x4 ^= x3;
        x2 ^= x1;
        let t0 = !x0 & x1;
        let t1 = !x1 & x2;
        let t2 = !x2 & x3;
        let t3 = !x3 & x4;
        let t4 = !x4 & x0;
        x0 ^= t1;
        x1 ^= t2;
        x2 ^= t3;
        x3 ^= t4;
        x4 ^= t0;
        x1 ^= x0;
        x0 ^= x4;
        x3 ^= x2;
        x2 = !x2;

        x0 ^= x0.rotate_right(19) ^ x0.rotate_right(28);
        x1 ^= x1.rotate_right(61) ^ x1.rotate_right(39);
        x2 ^= x2.rotate_right(1) ^ x2.rotate_right(6);
        x3 ^= x3.rotate_right(10) ^ x3.rotate_right(17);
        x4 ^= x4.rotate_right(7) ^ x4.rotate_right(41);

        self.x = [x0, x1, x2, x3, x4];
    }
}

/// Returns `state` after `rounds` rounds.
pub fn permute(mut state: AsconState, rounds: usize) -> Result<AsconState> {
    state.permute(rounds)?;
    Ok(state)
}

fn load(bytes: &[u8]) -> u64 {
    let mut buf = [0u8; 8];
    buf[..bytes.len()].copy_from_slice(bytes);
    u64::from_le_bytes(buf)
}

/// Padding byte 0x01 at byte offset `n` of a little-endian lane.
fn pad(n: usize) -> u64 {
    0x01 << (8 * n)
}

/// Incremental Ascon-Hash256.
#[derive(Clone)]
pub struct AsconHash256 {
    state: AsconState,
    buf: [u8; HASH_RATE],
    buf_len: usize,
}

impl Default for AsconHash256 {
    fn default() -> Self {
        Self::new()
    }
}

impl AsconHash256 {
    pub fn new() -> Self {
        let mut state = AsconState::new([HASH_IV, 0, 0, 0, 0]);
        state.rounds(12);
        Self {
            state,
            buf: [0; HASH_RATE],
            buf_len: 0,
        }
    }

    pub fn update(&mut self, mut data: &[u8]) {
        if self.buf_len > 0 {
            let take = (HASH_RATE - self.buf_len).min(data.len());
            self.buf[self.buf_len..self.buf_len + take].copy_from_slice(&data[..take]);
            self.buf_len += take;
            data = &data[take..];
            if self.buf_len < HASH_RATE {
                return;
            }
            self.state.x[0] ^= u64::from_le_bytes(self.buf);
            self.state.rounds(12);
            self.buf_len = 0;
        }
        let mut blocks = data.chunks_exact(HASH_RATE);
        for block in &mut blocks {
            self.state.x[0] ^= load(block);
            self.state.rounds(12);
        }
        let rest = blocks.remainder();
        self.buf[..rest.len()].copy_from_slice(rest);
        self.buf_len = rest.len();
    }

    pub fn finalize(mut self) -> [u8; DIGEST_LEN] {
        self.state.x[0] ^= load(&self.buf[..self.buf_len]) ^ pad(self.buf_len);
        self.state.rounds(12);
        let mut out = [0u8; DIGEST_LEN];
        for (i, chunk) in out.chunks_exact_mut(HASH_RATE).enumerate() {
            if i > 0 {
                self.state.rounds(12);
            }
            chunk.copy_from_slice(&self.state.x[0].to_le_bytes());
        }
        out
    }
}

/// One-shot Ascon-Hash256.
pub fn hash256(message: &[u8]) -> [u8; DIGEST_LEN] {
    let mut h = AsconHash256::new();
    h.update(message);
    h.finalize()
}

struct Aead {
    state: AsconState,
    k0: u64,
    k1: u64,
}

impl Aead {
    fn start(key: &[u8], nonce: &[u8], ad: &[u8]) -> Result<Self> {
        if key.len() != KEY_LEN {
            return Err(Error::InvalidKeyLength {
                expected: KEY_LEN,
                actual: key.len(),
            });
        }
        if nonce.len() != NONCE_LEN {
            return Err(Error::InvalidNonceLength {
                expected: NONCE_LEN,
                actual: nonce.len(),
            });
        }
        let (k0, k1) = (load(&key[..8]), load(&key[8..]));
        let mut state = AsconState::new([AEAD_IV, k0, k1, load(&nonce[..8]), load(&nonce[8..])]);
        state.rounds(12);
        state.x[3] ^= k0;
        state.x[4] ^= k1;

        if !ad.is_empty() {
            let mut blocks = ad.chunks_exact(AEAD_RATE);
            for block in &mut blocks {
                state.x[0] ^= load(&block[..8]);
                state.x[1] ^= load(&block[8..]);
                state.rounds(8);
            }
            absorb_partial(&mut state, blocks.remainder());
            state.rounds(8);
        }
        state.x[4] ^= 1 << 63;
        Ok(Self { state, k0, k1 })
    }

    fn tag(mut self) -> [u8; TAG_LEN] {
        self.state.x[2] ^= self.k0;
        self.state.x[3] ^= self.k1;
        self.state.rounds(12);
        let mut tag = [0u8; TAG_LEN];
        tag[..8].copy_from_slice(&(self.state.x[3] ^ self.k0).to_le_bytes());
        tag[8..].copy_from_slice(&(self.state.x[4] ^ self.k1).to_le_bytes());
        tag
    }
}

/// XORs a final block of fewer than 16 bytes plus padding into the rate.
fn absorb_partial(state: &mut AsconState, rest: &[u8]) {
    if rest.len() < 8 {
        state.x[0] ^= load(rest) ^ pad(rest.len());
    } else {
        state.x[0] ^= load(&rest[..8]);
        state.x[1] ^= load(&rest[8..]) ^ pad(rest.len() - 8);
    }
}

fn rate_bytes(state: &AsconState) -> [u8; AEAD_RATE] {
    let mut out = [0u8; AEAD_RATE];
    out[..8].copy_from_slice(&state.x[0].to_le_bytes());
    out[8..].copy_from_slice(&state.x[1].to_le_bytes());
    out
}

/// Ascon-AEAD128 encryption. Returns ciphertext followed by the 16-byte tag.
pub fn aead128_seal(key: &[u8], nonce: &[u8], associated_data: &[u8], plaintext: &[u8]) -> Result<Vec<u8>> {
    let mut aead = Aead::start(key, nonce, associated_data)?;
    let mut out = Vec::with_capacity(plaintext.len() + TAG_LEN);

    let mut blocks = plaintext.chunks_exact(AEAD_RATE);
    for block in &mut blocks {
        let s = &mut aead.state;
        s.x[0] ^= load(&block[..8]);
        s.x[1] ^= load(&block[8..]);
        out.extend_from_slice(&rate_bytes(s));
        s.rounds(8);
    }
    let rest = blocks.remainder();
    absorb_partial(&mut aead.state, rest);
    out.extend_from_slice(&rate_bytes(&aead.state)[..rest.len()]);

    out.extend_from_slice(&aead.tag());
    Ok(out)
}

/// Ascon-AEAD128 decryption. No plaintext is returned unless the tag
/// verifies.
pub fn aead128_open(
    key: &[u8],
    nonce: &[u8],
    associated_data: &[u8],
    ciphertext_and_tag: &[u8],
) -> Result<Vec<u8>> {
    if ciphertext_and_tag.len() < TAG_LEN {
        return Err(Error::InvalidLength {
            minimum: TAG_LEN,
            actual: ciphertext_and_tag.len(),
        });
    }
    let mut aead = Aead::start(key, nonce, associated_data)?;
    let (ct, tag) = ciphertext_and_tag.split_at(ciphertext_and_tag.len() - TAG_LEN);
    let mut pt = Vec::with_capacity(ct.len());

    let mut blocks = ct.chunks_exact(AEAD_RATE);
    for block in &mut blocks {
        let s = &mut aead.state;
        let (c0, c1) = (load(&block[..8]), load(&block[8..]));
        pt.extend_from_slice(&(s.x[0] ^ c0).to_le_bytes());
        pt.extend_from_slice(&(s.x[1] ^ c1).to_le_bytes());
        s.x[0] = c0;
        s.x[1] = c1;
        s.rounds(8);
    }
    let rest = blocks.remainder();
    let mut rate = rate_bytes(&aead.state);
    pt.extend(rate.iter().zip(rest).map(|(s, c)| s ^ c));
    rate[..rest.len()].copy_from_slice(rest);
    rate[rest.len()] ^= 0x01;
    aead.state.x[0] = load(&rate[..8]);
    aead.state.x[1] = load(&rate[8..]);

    if bool::from(aead.tag().ct_eq(tag)) {
        Ok(pt)
    } else {
        pt.iter_mut().for_each(|b| *b = 0);
        Err(Error::AuthenticationFailure)
    }
}
