"""Independent computation of the fixed expected values frozen into the unit tests.

P-256 arithmetic comes from OpenSSL (via the `cryptography` package), hashes and
HMAC from Python's hashlib/hmac, Ascon from ascon_ref.py. Run: python3 derived_vectors.py
"""
import hashlib
import hmac

from cryptography.hazmat.primitives import serialization
from cryptography.hazmat.primitives.asymmetric import ec

import ascon_ref


def p256(scalar):
    key = ec.derive_private_key(scalar, ec.SECP256R1())
    pub = key.public_key().public_bytes(
        serialization.Encoding.X962, serialization.PublicFormat.CompressedPoint
    )
    return key, pub


def main():
    s = [0] * 5
    ascon_ref.permutation(s, 12)
    print("ascon p12(0):", " ".join(f"{w:016x}" for w in s))
    s = [0] * 5
    ascon_ref.permutation(s, 8)
    print("ascon p8(0): ", " ".join(f"{w:016x}" for w in s))

    a_scalar = int("a" * 64, 16) % (2**256 - 2**224)  # any in-range scalar
    b_scalar = 0x1234567890ABCDEF1234567890ABCDEF1234567890ABCDEF1234567890ABCDEF
    a, a_pub = p256(a_scalar)
    b, b_pub = p256(b_scalar)
    print("ecdh a scalar:", f"{a_scalar:064x}")
    print("ecdh a pub:   ", a_pub.hex())
    print("ecdh b scalar:", f"{b_scalar:064x}")
    print("ecdh b pub:   ", b_pub.hex())
    shared = a.exchange(ec.ECDH(), b.public_key())
    assert shared == b.exchange(ec.ECDH(), a.public_key())
    print("ecdh shared x:", shared.hex())
    _, g = p256(1)
    print("generator:    ", g.hex())

    z = bytes(32)
    ctr1 = (1).to_bytes(4, "big")
    print("kdf sha256 z=0 p=empty:", hashlib.sha256(z + ctr1).hexdigest())
    z = bytes(range(32))
    p = b"context"
    print("kdf sha256 z=00..1f p=context:", hashlib.sha256(z + ctr1 + p).hexdigest())
    print("kdf sha3-256 z=00..1f p=context:", hashlib.sha3_256(z + ctr1 + p).hexdigest())
    print("kdf shake128 z=00..1f p=context:", hashlib.shake_128(z + p).hexdigest(32))
    print("kdf ascon z=00..1f p=context:", ascon_ref.hash256(z + ctr1 + p).hex())
    out48 = hashlib.sha256(z + ctr1 + p).digest() + hashlib.sha256(z + (2).to_bytes(4, "big") + p).digest()
    print("kdf2 sha256 48 bytes z=00..1f p=context:", out48[:48].hex())

    k2 = bytes(range(0x40, 0x50))
    c = bytes(range(0xA0, 0xB0))
    print("mac hmac-sha256:", hmac.new(k2, c, hashlib.sha256).hexdigest())
    print("mac hmac-sha3-256:", hmac.new(k2, c, hashlib.sha3_256).hexdigest())
    print("mac shake128 prefix:", hashlib.shake_128(k2 + c).hexdigest(32))
    print("mac ascon prefix:", ascon_ref.hash256(k2 + c).hex())
    # RFC 4231 test case 2 as a sanity anchor for the HMAC oracle itself.
    assert hmac.new(b"Jefe", b"what do ya want for nothing?", hashlib.sha256).hexdigest() == (
        "5bdcc146bf60754e6a042426089575c75a003f089d2739839dec58b964ec3843"
    )


if __name__ == "__main__":
    main()
