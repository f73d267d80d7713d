"""Wallet identity: key generation, challenge signing, and verification.

An account is a secp256k1 keypair; the account address is the last 20 bytes
of the Keccak-256 hash of the uncompressed public key, rendered with the
mixed-case checksum.  Login challenges are signed under the personal-message
prefix so a signature over a challenge can never double as a transaction
signature.
"""

from __future__ import annotations

import os
import secrets
import stat
from dataclasses import dataclass
from pathlib import Path

from .crypto.keccak import keccak256
from .crypto import secp256k1
from .errors import DvreError

PERSONAL_MESSAGE_PREFIX = b"\x19Ethereum Signed Message:\n"
CHALLENGE_PREFIX = "dvre-login:"


class InvalidEntropy(DvreError):
    """Supplied entropy does not map to a usable private key."""


class ChallengeMismatch(DvreError):
    """The signed message is not the challenge the verifier issued."""


class SignatureInvalid(DvreError):
    """The signature fails recovery or recovers a different address."""


@dataclass(frozen=True)
class Wallet:
    private_key: bytes    # 32-byte scalar
    public_key: bytes     # 64-byte uncompressed point, no 0x04 tag
    address: str          # checksum-rendered

    def __repr__(self) -> str:  # never echo the private key
        return f"Wallet(address={self.address})"


@dataclass(frozen=True)
class AuthSig:
    signed_message: bytes
    signature: bytes      # 65 bytes: r || s || v, v in {27, 28}
    address: str


def address_from_public_key(public_key: bytes) -> str:
    if len(public_key) != 64:
        raise ValueError("public key must be 64 bytes uncompressed")
    return to_checksum_address(keccak256(public_key)[-20:])


def to_checksum_address(raw: bytes) -> str:
    """Render 20 address bytes with the mixed-case checksum."""
    if len(raw) != 20:
        raise ValueError("address must be 20 bytes")
    lower = raw.hex()
    digest = keccak256(lower.encode("ascii")).hex()
    chars = [
        c.upper() if c.isalpha() and int(digest[i], 16) >= 8 else c
        for i, c in enumerate(lower)
    ]
    return "0x" + "".join(chars)


def parse_address(text: str) -> bytes:
    """Parse an 0x address; mixed-case input must carry a valid checksum."""
    if not isinstance(text, str) or not text.startswith("0x") or len(text) != 42:
        raise ValueError(f"malformed address: {text!r}")
    body = text[2:]
    try:
        raw = bytes.fromhex(body)
    except ValueError:
        raise ValueError(f"malformed address: {text!r}") from None
    if body != body.lower() and body != body.upper():
        if to_checksum_address(raw) != text:
            raise ValueError(f"address checksum mismatch: {text!r}")
    return raw


def wallet_from_private_key(private_key: bytes) -> Wallet:
    if len(private_key) != 32:
        raise InvalidEntropy("private key must be exactly 32 bytes")
    scalar = int.from_bytes(private_key, "big")
    if scalar == 0 or scalar >= secp256k1.N:
        raise InvalidEntropy("private key scalar outside the curve order")
    point = secp256k1.public_key(scalar)
    public = point.x.to_bytes(32, "big") + point.y.to_bytes(32, "big")
    return Wallet(private_key=private_key, public_key=public,
                  address=address_from_public_key(public))


def generate_wallet(entropy: bytes | None = None) -> Wallet:
    """Create a wallet from 32 bytes of entropy, or the system CSPRNG."""
    if entropy is None:
        entropy = secrets.token_bytes(32)
    return wallet_from_private_key(entropy)


def make_challenge(nonce: bytes | None = None) -> str:
    if nonce is None:
        nonce = secrets.token_bytes(16)
    if len(nonce) != 16:
        raise ValueError("challenge nonce must be 16 bytes")
    return CHALLENGE_PREFIX + nonce.hex()


def personal_digest(message: bytes) -> bytes:
    """Hash a message under the personal-message envelope."""
    framed = PERSONAL_MESSAGE_PREFIX + str(len(message)).encode("ascii") + message
    return keccak256(framed)


def sign_auth(wallet: Wallet, challenge: str | bytes) -> AuthSig:
    """Sign a challenge string, producing a recoverable signature."""
    message = challenge.encode("utf-8") if isinstance(challenge, str) else challenge
    if not message:
        raise ValueError("challenge must be non-empty")
    scalar = int.from_bytes(wallet.private_key, "big")
    r, s, recovery_id = secp256k1.sign_digest(scalar, personal_digest(message))
    signature = r.to_bytes(32, "big") + s.to_bytes(32, "big") + bytes([27 + recovery_id])
    return AuthSig(signed_message=message, signature=signature, address=wallet.address)


def recover_address(signed_message: bytes, signature: bytes) -> str:
    """Recover the signer's address; SignatureInvalid when nothing recovers."""
    if len(signature) != 65:
        raise SignatureInvalid("signature must be 65 bytes")
    r = int.from_bytes(signature[:32], "big")
    s = int.from_bytes(signature[32:64], "big")
    v = signature[64]
    if v not in (27, 28):
        raise SignatureInvalid(f"recovery byte must be 27 or 28, got {v}")
    try:
        point = secp256k1.recover_public_key(personal_digest(signed_message), r, s, v - 27)
    except ValueError as exc:
        raise SignatureInvalid(str(exc)) from None
    public = point.x.to_bytes(32, "big") + point.y.to_bytes(32, "big")
    return address_from_public_key(public)


def verify_auth(auth_sig: AuthSig, expected_challenge: str | bytes) -> str:
    """Check an auth signature against the challenge the server issued.

    Returns the recovered address.  The message is compared first so a
    stale or substituted challenge is reported as ChallengeMismatch even
    when the signature itself is well formed.
    """
    expected = (expected_challenge.encode("utf-8")
                if isinstance(expected_challenge, str) else expected_challenge)
    if auth_sig.signed_message != expected:
        raise ChallengeMismatch("signed message does not match the issued challenge")
    recovered = recover_address(auth_sig.signed_message, auth_sig.signature)
    if recovered != auth_sig.address:
        raise SignatureInvalid(
            f"signature recovers {recovered}, claimed {auth_sig.address}")
    return recovered


# --- key files ---------------------------------------------------------------

def save_keyfile(path: str | Path, wallet: Wallet) -> None:
    """Write the private key as one hex line, readable only by the owner."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd = os.open(path, os.O_WRONLY | os.O_CREAT | os.O_TRUNC, stat.S_IRUSR | stat.S_IWUSR)
    with os.fdopen(fd, "w") as handle:
        handle.write(wallet.private_key.hex() + "\n")
    os.chmod(path, stat.S_IRUSR | stat.S_IWUSR)


def load_keyfile(path: str | Path) -> Wallet:
    text = Path(path).read_text().strip()
    if text.lower().startswith("0x"):
        text = text[2:]
    try:
        raw = bytes.fromhex(text)
    except ValueError:
        raise InvalidEntropy(f"key file {path} is not a hex private key") from None
    return wallet_from_private_key(raw)
