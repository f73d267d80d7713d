"""Shamir secret sharing over the largest 256-bit prime field.

A 256-bit data key splits into n shares with threshold t: a random
polynomial of degree t-1 carries the secret as its constant term and each
node i holds its evaluation at x = i.  Any t shares reconstruct the secret
by Lagrange interpolation at zero; fewer reveal nothing.  The field prime
2**256 - 189 is the largest below 2**256, so every 256-bit key fits after
reduction at generation time.
"""

from __future__ import annotations

import secrets
from dataclasses import dataclass

from ..errors import DvreError

PRIME = 2**256 - 189

MAX_SHARES = 255


class BadThreshold(DvreError):
    pass


class InsufficientShares(DvreError):
    pass


class MixedKeyIds(DvreError):
    pass


@dataclass(frozen=True)
class KeyShare:
    key_id: bytes        # 16-byte identifier of the split key
    node_index: int      # x coordinate, 1-based
    share_value: int     # polynomial evaluation, < PRIME

    def __post_init__(self):
        # x = 0 is the secret itself, never a share
        if not 1 <= self.node_index <= MAX_SHARES:
            raise ValueError(f"node index out of range: {self.node_index}")
        if not 0 <= self.share_value < PRIME:
            raise ValueError("share value must be a field element")


def _eval_poly(coefficients: list[int], x: int) -> int:
    # Horner, highest degree first.
    total = 0
    for coefficient in reversed(coefficients):
        total = (total * x + coefficient) % PRIME
    return total


def random_secret() -> int:
    """Draw a uniform field element to use as a data key."""
    return secrets.randbelow(PRIME)


def split_secret(secret: int, n: int, t: int, key_id: bytes,
                 rng=None) -> list[KeyShare]:
    """Split a secret into n shares with reconstruction threshold t.

    Pass a seeded random.Random only to make tests reproducible; the
    default draws from the OS entropy pool.
    """
    if not 1 <= t <= n <= MAX_SHARES:
        raise BadThreshold(f"need 1 <= t <= n <= {MAX_SHARES}, got t={t} n={n}")
    if not 0 <= secret < PRIME:
        raise ValueError("secret must be a field element")
    if len(key_id) != 16:
        raise ValueError("key_id must be 16 bytes")
    draw = rng.randrange if rng is not None else secrets.randbelow
    coefficients = [secret] + [draw(PRIME) for _ in range(t - 1)]
    return [
        KeyShare(key_id=key_id, node_index=i, share_value=_eval_poly(coefficients, i))
        for i in range(1, n + 1)
    ]


def combine_shares(shares: list[KeyShare], threshold: int) -> int:
    """Reconstruct the secret from at least threshold distinct shares.

    The threshold is carried by the encrypted bundle, not by the shares,
    so the caller passes it in; handing over fewer shares than that is an
    InsufficientShares error rather than a silently wrong answer.
    """
    if not shares:
        raise InsufficientShares("no shares given")
    key_ids = {s.key_id for s in shares}
    if len(key_ids) != 1:
        raise MixedKeyIds(f"shares from {len(key_ids)} different keys")
    distinct = {s.node_index: s for s in shares}.values()
    if len(distinct) < threshold:
        raise InsufficientShares(
            f"{len(distinct)} distinct shares, threshold is {threshold}")
    points = [(s.node_index, s.share_value) for s in distinct]
    return _interpolate_at_zero(points)


def _interpolate_at_zero(points: list[tuple[int, int]]) -> int:
    total = 0
    for i, (xi, yi) in enumerate(points):
        numerator, denominator = 1, 1
        for j, (xj, _) in enumerate(points):
            if i == j:
                continue
            numerator = numerator * (-xj) % PRIME
            denominator = denominator * (xi - xj) % PRIME
        total = (total + yi * numerator * pow(denominator, -1, PRIME)) % PRIME
    return total
