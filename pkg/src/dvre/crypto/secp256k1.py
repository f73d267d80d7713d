"""secp256k1 ECDSA with recoverable signatures.

Implements exactly what wallet auth needs: deterministic nonces per RFC 6979
(HMAC-SHA256), low-s normalized signatures carrying a recovery id, and public
key recovery so a signature plus message yields the signer's address without
any stored public key.  Affine arithmetic with modular inversion via pow();
no constant-time guarantees, which is acceptable for a local research ledger
holding no real value.
"""

from __future__ import annotations

import hashlib
import hmac
from dataclasses import dataclass

# Curve parameters: y^2 = x^3 + 7 over F_P, group order N.
P = 0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEFFFFFC2F
N = 0xFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEBAAEDCE6AF48A03BBFD25E8CD0364141
GX = 0x79BE667EF9DCBBAC55A06295CE870B07029BFCDB2DCE28D959F2815B16F81798
GY = 0x483ADA7726A3C4655DA4FBFC0E1108A8FD17B448A68554199C47D08FFB10D4B8

_HALF_N = N // 2


@dataclass(frozen=True)
class Point:
    x: int
    y: int


INFINITY = Point(-1, -1)


def _mod_inv(a: int, m: int) -> int:
    return pow(a, -1, m)


def point_add(a: Point, b: Point) -> Point:
    if a == INFINITY:
        return b
    if b == INFINITY:
        return a
    if a.x == b.x and (a.y + b.y) % P == 0:
        return INFINITY
    if a == b:
        lam = (3 * a.x * a.x) * _mod_inv(2 * a.y, P) % P
    else:
        lam = (b.y - a.y) * _mod_inv(b.x - a.x, P) % P
    x = (lam * lam - a.x - b.x) % P
    y = (lam * (a.x - x) - a.y) % P
    return Point(x, y)


def scalar_mul(k: int, point: Point) -> Point:
    k %= N
    result = INFINITY
    addend = point
    while k:
        if k & 1:
            result = point_add(result, addend)
        addend = point_add(addend, addend)
        k >>= 1
    return result


# Precomputed doublings of the base point; built on first use.  Signing and
# verification both multiply by G far more often than by arbitrary points.
_G_DOUBLINGS: list[Point] = []


def _g_table() -> list[Point]:
    if not _G_DOUBLINGS:
        point = Point(GX, GY)
        for _ in range(256):
            _G_DOUBLINGS.append(point)
            point = point_add(point, point)
    return _G_DOUBLINGS


def scalar_mul_g(k: int) -> Point:
    k %= N
    table = _g_table()
    result = INFINITY
    index = 0
    while k:
        if k & 1:
            result = point_add(result, table[index])
        k >>= 1
        index += 1
    return result


def is_on_curve(point: Point) -> bool:
    if point == INFINITY:
        return False
    return (point.y * point.y - point.x ** 3 - 7) % P == 0


def public_key(private_key: int) -> Point:
    if not 0 < private_key < N:
        raise ValueError("private key out of range")
    return scalar_mul_g(private_key)


# --- RFC 6979 deterministic nonce ------------------------------------------

def _int_to_octets(value: int) -> bytes:
    return value.to_bytes(32, "big")


def _bits_to_int(data: bytes) -> int:
    value = int.from_bytes(data, "big")
    extra = 8 * len(data) - 256
    if extra > 0:
        value >>= extra
    return value


def _bits_to_octets(data: bytes) -> bytes:
    return _int_to_octets(_bits_to_int(data) % N)


def rfc6979_nonce(private_key: int, digest: bytes) -> int:
    """Derive the signing nonce k from the key and message digest."""
    v = b"\x01" * 32
    k = b"\x00" * 32
    seed = _int_to_octets(private_key) + _bits_to_octets(digest)
    k = hmac.new(k, v + b"\x00" + seed, hashlib.sha256).digest()
    v = hmac.new(k, v, hashlib.sha256).digest()
    k = hmac.new(k, v + b"\x01" + seed, hashlib.sha256).digest()
    v = hmac.new(k, v, hashlib.sha256).digest()
    while True:
        v = hmac.new(k, v, hashlib.sha256).digest()
        candidate = _bits_to_int(v)
        if 0 < candidate < N:
            return candidate
        k = hmac.new(k, v + b"\x00", hashlib.sha256).digest()
        v = hmac.new(k, v, hashlib.sha256).digest()


# --- Signing and recovery ---------------------------------------------------

def sign_digest(private_key: int, digest: bytes) -> tuple[int, int, int]:
    """Sign a 32-byte digest; returns (r, s, recovery_id) with s normalized low."""
    if len(digest) != 32:
        raise ValueError("digest must be 32 bytes")
    z = int.from_bytes(digest, "big")
    k = rfc6979_nonce(private_key, digest)
    while True:
        point = scalar_mul_g(k)
        r = point.x % N
        if r == 0:
            k = (k + 1) % N
            continue
        s = _mod_inv(k, N) * (z + r * private_key) % N
        if s == 0:
            k = (k + 1) % N
            continue
        recovery_id = (2 if point.x >= N else 0) | (point.y & 1)
        if s > _HALF_N:
            s = N - s
            recovery_id ^= 1
        return r, s, recovery_id


def recover_public_key(digest: bytes, r: int, s: int, recovery_id: int) -> Point:
    """Recover the signing public key from a signature over digest.

    Raises ValueError when the signature does not describe a valid curve
    point; callers translate that into their own failure type.
    """
    if not 0 < r < N or not 0 < s < N:
        raise ValueError("signature scalar out of range")
    if not 0 <= recovery_id <= 3:
        raise ValueError("recovery id out of range")
    x = r + N * (recovery_id >> 1)
    if x >= P:
        raise ValueError("recovered x outside field")
    y_squared = (pow(x, 3, P) + 7) % P
    y = pow(y_squared, (P + 1) // 4, P)
    if y * y % P != y_squared:
        raise ValueError("signature point not on curve")
    if (y & 1) != (recovery_id & 1):
        y = P - y
    point_r = Point(x, y)
    z = int.from_bytes(digest, "big")
    r_inv = _mod_inv(r, N)
    # Q = r^-1 (s*R - z*G)
    candidate = point_add(scalar_mul(s, point_r), scalar_mul_g(N - z % N))
    candidate = scalar_mul(r_inv, candidate)
    if candidate == INFINITY or not is_on_curve(candidate):
        raise ValueError("recovered point invalid")
    return candidate


def verify_digest(public: Point, digest: bytes, r: int, s: int) -> bool:
    if not 0 < r < N or not 0 < s < N:
        return False
    z = int.from_bytes(digest, "big")
    s_inv = _mod_inv(s, N)
    u1 = z * s_inv % N
    u2 = r * s_inv % N
    point = point_add(scalar_mul_g(u1), scalar_mul(u2, public))
    if point == INFINITY:
        return False
    return point.x % N == r
