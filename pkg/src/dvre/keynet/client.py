"""Client-side encrypt/upload and decrypt/download flows.

Encryption is a local act: draw a fresh data key, seal the payload, split
the key across the nodes under the access condition, then pin the bundle.
Share distribution happens before pinning, so an unavailable node aborts
with nothing stored.  Decryption fetches the bundle, signs the per-key
challenge, collects shares from every node, and only a quorum of at least
t grants reconstructs the key.
"""

from __future__ import annotations

import secrets
from dataclasses import dataclass

from ..contracts import AccessDenied, LedgerView, NotRegistered, UnknownGroup, queries
from ..errors import DvreError
from ..store import Cid, ContentStore
from ..wallet import AuthSig, Wallet, sign_auth
from . import acc as acc_module
from .bundle import BundleMeta, build_bundle, decrypt_payload, encrypt_payload, open_bundle
from .nodes import KeyNetwork, decrypt_challenge
from .shamir import combine_shares, random_secret, split_secret


class ChainMismatch(DvreError):
    """The bundle was sealed for a different chain label than this network."""


@dataclass(frozen=True)
class NetworkParams:
    lit_network: str
    chain: str
    n: int
    t: int

    def __post_init__(self):
        if not 1 <= self.t <= self.n:
            raise ValueError(f"threshold {self.t} must satisfy 1 <= t <= n = {self.n}")


@dataclass(frozen=True)
class UploadReceipt:
    cid: str
    size: int
    created_at: int


def _check_condition_groups(condition, view: LedgerView) -> None:
    for group_id in acc_module.referenced_groups(condition):
        if not view.has_contract(group_id):
            raise UnknownGroup(f"condition references unknown group {group_id}")


def encrypt_for_owner(file_name: str, content: bytes, condition,
                      owner_address: str, params: NetworkParams, *,
                      network: KeyNetwork, store: ContentStore,
                      view: LedgerView, created_at: int,
                      factory_id: str | None = None) -> tuple[Cid, UploadReceipt]:
    """Seal a file under a condition and pin the resulting bundle.

    Owner registration is enforced when a user directory is wired in.
    Raises NodeUnavailable before anything is pinned if any share target
    is down, and the store's quota errors if pinning itself fails.
    """
    if not file_name:
        raise ValueError("file_name must be non-empty")
    if factory_id is not None and not queries.is_registered(view, factory_id, owner_address):
        raise NotRegistered(f"owner is not a registered user: {owner_address}")
    _check_condition_groups(condition, view)

    acc_text = acc_module.to_canonical(condition)
    acc_digest = acc_module.digest(condition)
    key_id = secrets.token_bytes(16)
    dek = random_secret()
    shares = split_secret(dek, params.n, params.t, key_id)
    network.distribute(shares, acc_text)  # aborts before any pinning

    payload = encrypt_payload(dek, content, secrets.token_bytes(12),
                              key_id, acc_digest)
    meta = BundleMeta(version=1, file_name=file_name, content_length=len(content),
                      acc=acc_text, chain=params.chain, key_id=key_id,
                      n=params.n, t=params.t, owner=owner_address,
                      created_at=created_at)
    bundle = build_bundle(meta, payload)
    cid = store.put(bundle)
    return cid, UploadReceipt(cid=str(cid), size=len(bundle), created_at=created_at)


def encrypt_file_and_upload(file_name: str, content: bytes, condition,
                            wallet: Wallet, params: NetworkParams, *,
                            network: KeyNetwork, store: ContentStore,
                            view: LedgerView, created_at: int,
                            factory_id: str | None = None) -> tuple[Cid, UploadReceipt]:
    return encrypt_for_owner(file_name, content, condition, wallet.address, params,
                             network=network, store=store, view=view,
                             created_at=created_at, factory_id=factory_id)


def decrypt_with_authsig(bundle_cid: Cid, auth_sig: AuthSig,
                         params: NetworkParams, *, network: KeyNetwork,
                         store: ContentStore) -> tuple[str, bytes]:
    """Run the share-request protocol with an externally produced signature.

    The signature must cover the per-key challenge for the bundle's key id;
    nodes re-verify it and evaluate the registered condition themselves.
    """
    bundle = store.get(bundle_cid)
    meta, payload = open_bundle(bundle)
    if meta.chain != params.chain:
        raise ChainMismatch(f"bundle chain {meta.chain!r}, network {params.chain!r}")

    outcome = network.request_shares(meta.key_id, auth_sig)
    if len(outcome.grants) < meta.t:
        reasons = [f"node {d.node_index}: {d.reason}" for d in outcome.denials]
        reasons += [f"node {i}: unavailable" for i in outcome.unavailable]
        raise AccessDenied(
            f"{len(outcome.grants)} of {meta.t} required shares granted"
            + (f" ({'; '.join(reasons)})" if reasons else ""))

    dek = combine_shares(outcome.grants, meta.t)
    condition = acc_module.parse_canonical(meta.acc)
    plaintext = decrypt_payload(dek, payload, meta.key_id,
                                acc_module.digest(condition))
    return meta.file_name, plaintext


def decrypt_file_and_download(bundle_cid: Cid, wallet: Wallet,
                              params: NetworkParams, *, network: KeyNetwork,
                              store: ContentStore, view: LedgerView,
                              factory_id: str | None = None) -> tuple[str, bytes]:
    """Fetch, authorize, and decrypt a bundle with a local wallet."""
    if factory_id is not None and not queries.is_registered(view, factory_id, wallet.address):
        raise NotRegistered(f"wallet is not a registered user: {wallet.address}")
    bundle = store.get(bundle_cid)
    meta, _ = open_bundle(bundle)
    auth_sig = sign_auth(wallet, decrypt_challenge(meta.key_id))
    return decrypt_with_authsig(bundle_cid, auth_sig, params,
                                network=network, store=store)
