"""The encrypted bundle: a zip of ciphertext, metadata, and a notice.

payload.enc carries the 12-byte nonce followed by the AEAD ciphertext and
its 16-byte tag; the additional authenticated data ties the ciphertext to
the key id and the condition digest, so swapping either breaks the tag.
metadata.json repeats everything a client needs to run the share-request
protocol.  Zip entries use a fixed timestamp: identical inputs produce
identical bundle bytes and therefore identical content addresses.
"""

from __future__ import annotations

import io
import json
import zipfile
from dataclasses import dataclass

from cryptography.exceptions import InvalidTag
from cryptography.hazmat.primitives.ciphers.aead import AESGCM

from ..codec import canonical_json
from ..errors import DvreError
from ..store import IntegrityFailure
from . import acc as acc_module

BUNDLE_VERSION = 1
NONCE_BYTES = 12
_ZIP_EPOCH = (1980, 1, 1, 0, 0, 0)

README_TEXT = """\
This archive holds an encrypted research asset.

payload.enc is ciphertext; its data key was split into shares held by a
threshold key network and is released only to wallets satisfying the
access control condition in metadata.json.  Fetch the shares with a
signed request and combine at least t of them to decrypt.  Editing any
file in this archive makes the payload undecryptable.
"""


class MalformedBundle(DvreError):
    """The archive is missing entries or its metadata does not parse."""


@dataclass(frozen=True)
class BundleMeta:
    version: int
    file_name: str
    content_length: int
    acc: str              # canonical condition encoding
    chain: str
    key_id: bytes
    n: int
    t: int
    owner: str
    created_at: int


def _aead_aad(key_id: bytes, acc_digest: bytes) -> bytes:
    return b"dvre-bundle:" + key_id + acc_digest


def encrypt_payload(dek: int, plaintext: bytes, nonce: bytes,
                    key_id: bytes, acc_digest: bytes) -> bytes:
    key_bytes = (dek % (1 << 256)).to_bytes(32, "big")
    sealed = AESGCM(key_bytes).encrypt(nonce, plaintext, _aead_aad(key_id, acc_digest))
    return nonce + sealed


def decrypt_payload(dek: int, payload: bytes, key_id: bytes,
                    acc_digest: bytes) -> bytes:
    if len(payload) < NONCE_BYTES + 16:
        raise IntegrityFailure("payload too short to carry nonce and tag")
    key_bytes = (dek % (1 << 256)).to_bytes(32, "big")
    nonce, sealed = payload[:NONCE_BYTES], payload[NONCE_BYTES:]
    try:
        return AESGCM(key_bytes).decrypt(nonce, sealed, _aead_aad(key_id, acc_digest))
    except InvalidTag:
        raise IntegrityFailure("authentication tag mismatch") from None


def build_bundle(meta: BundleMeta, payload: bytes) -> bytes:
    metadata = canonical_json({
        "version": meta.version,
        "file_name": meta.file_name,
        "content_length": meta.content_length,
        "acc": meta.acc,
        "chain": meta.chain,
        "key_id": meta.key_id.hex(),
        "n": meta.n,
        "t": meta.t,
        "owner": meta.owner,
        "created_at": meta.created_at,
    })
    buffer = io.BytesIO()
    with zipfile.ZipFile(buffer, "w", zipfile.ZIP_STORED) as archive:
        for name, data in (("payload.enc", payload),
                           ("metadata.json", metadata.encode("utf-8")),
                           ("README.txt", README_TEXT.encode("utf-8"))):
            info = zipfile.ZipInfo(name, date_time=_ZIP_EPOCH)
            archive.writestr(info, data)
    return buffer.getvalue()


def open_bundle(data: bytes) -> tuple[BundleMeta, bytes]:
    """Parse a bundle archive into its metadata and raw payload."""
    try:
        archive = zipfile.ZipFile(io.BytesIO(data))
    except zipfile.BadZipFile as exc:
        raise MalformedBundle(f"not a zip archive: {exc}") from None
    names = set(archive.namelist())
    for required in ("payload.enc", "metadata.json"):
        if required not in names:
            raise MalformedBundle(f"archive is missing {required}")
    try:
        raw_meta = json.loads(archive.read("metadata.json"))
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise MalformedBundle(f"metadata.json does not parse: {exc}") from None
    try:
        if raw_meta["version"] != BUNDLE_VERSION:
            raise MalformedBundle(f"unsupported bundle version: {raw_meta['version']}")
        key_id = bytes.fromhex(raw_meta["key_id"])
        if len(key_id) != 16:
            raise MalformedBundle("key_id must be 16 bytes")
        acc_module.parse_canonical(raw_meta["acc"])  # shape check only
        meta = BundleMeta(
            version=raw_meta["version"],
            file_name=raw_meta["file_name"],
            content_length=raw_meta["content_length"],
            acc=raw_meta["acc"],
            chain=raw_meta["chain"],
            key_id=key_id,
            n=raw_meta["n"],
            t=raw_meta["t"],
            owner=raw_meta["owner"],
            created_at=raw_meta["created_at"],
        )
    except (KeyError, TypeError, ValueError, acc_module.BadCondition) as exc:
        raise MalformedBundle(f"metadata incomplete: {exc}") from None
    return meta, archive.read("payload.enc")
