"""Simulated threshold key nodes and the network that fronts them.

Each node holds, per key id: one Shamir share, the canonical access
condition, and its digest.  A share leaves a node only for a request whose
signature recovers an address satisfying the condition at the ledger's
block time; the requester's claimed time is ignored.  Nodes never see the
data key or any plaintext, and each appends every decision to its own
audit log.  An offline set on the network simulates node failures for
threshold behavior.
"""

from __future__ import annotations

import hashlib
import os
import secrets
from dataclasses import dataclass, field
from pathlib import Path

from ..contracts import LedgerView, UnknownGroup
from ..errors import DvreError
from ..wallet import AuthSig, SignatureInvalid, recover_address
from . import acc as acc_module
from .shamir import KeyShare

DECRYPT_PREFIX = "dvre-decrypt:"


class UnknownKeyId(DvreError):
    pass


class NodeUnavailable(DvreError):
    pass


def decrypt_challenge(key_id: bytes, nonce: bytes | None = None) -> str:
    """The message a wallet signs to request shares for one key id."""
    if nonce is None:
        nonce = secrets.token_bytes(8)
    return f"{DECRYPT_PREFIX}{key_id.hex()}:{nonce.hex()}"


@dataclass(frozen=True)
class ShareRequest:
    key_id: bytes
    auth_sig: AuthSig
    at: int  # requester-claimed; nodes substitute the ledger clock


@dataclass(frozen=True)
class Denial:
    node_index: int
    reason: str  # "acc_failed" or "bad_signature"


@dataclass
class _Held:
    share: KeyShare
    acc_text: str
    acc_digest: bytes


class KeyNode:
    """One simulated node: share custody, condition checks, audit trail.

    With a state path, custody survives process restarts; the node stands
    in for infrastructure that outlives any one client.
    """

    def __init__(self, index: int, view_source, state_path=None):
        self.index = index
        self._view_source = view_source  # () -> (LedgerView, block_time)
        self._held: dict[bytes, _Held] = {}
        self.audit_log: list[dict] = []
        self._state_path = Path(state_path) if state_path else None
        if self._state_path and self._state_path.exists():
            self._load_state()

    def _load_state(self) -> None:
        for line in self._state_path.read_text().splitlines():
            key_hex, index_text, value_hex, acc_text = line.split("\t", 3)
            share = KeyShare(key_id=bytes.fromhex(key_hex),
                             node_index=int(index_text),
                             share_value=int(value_hex, 16))
            condition = acc_module.parse_canonical(acc_text)
            self._held[share.key_id] = _Held(
                share=share, acc_text=acc_text,
                acc_digest=acc_module.digest(condition))

    def _append_state(self, share: KeyShare, acc_text: str) -> None:
        if self._state_path is None:
            return
        self._state_path.parent.mkdir(parents=True, exist_ok=True)
        line = (f"{share.key_id.hex()}\t{share.node_index}"
                f"\t{share.share_value:064x}\t{acc_text}\n")
        flags = os.O_WRONLY | os.O_CREAT | os.O_APPEND
        descriptor = os.open(self._state_path, flags, 0o600)
        with os.fdopen(descriptor, "a") as handle:
            handle.write(line)

    def register_share(self, share: KeyShare, acc_text: str) -> None:
        condition = acc_module.parse_canonical(acc_text)
        existing = self._held.get(share.key_id)
        if existing is not None:
            if existing.share == share and existing.acc_text == acc_text:
                return  # idempotent retry
            raise DvreError(
                f"key {share.key_id.hex()} already registered with "
                f"different share or condition")
        self._held[share.key_id] = _Held(
            share=share, acc_text=acc_text,
            acc_digest=acc_module.digest(condition))
        self._append_state(share, acc_text)

    def holds(self, key_id: bytes) -> bool:
        return key_id in self._held

    def _audit(self, key_id: bytes, address: str, granted: bool,
               reason: str, at: int) -> None:
        self.audit_log.append({
            "key_id": key_id.hex(),
            "address": address,
            "granted": granted,
            "reason": reason,
            "at": at,
        })

    def handle_share_request(self, request: ShareRequest) -> KeyShare | Denial:
        held = self._held.get(request.key_id)
        if held is None:
            raise UnknownKeyId(f"node {self.index} holds no key {request.key_id.hex()}")
        view, block_time = self._view_source()

        expected_prefix = f"{DECRYPT_PREFIX}{request.key_id.hex()}:"
        message = request.auth_sig.signed_message
        if not message.decode("utf-8", errors="replace").startswith(expected_prefix):
            self._audit(request.key_id, request.auth_sig.address, False,
                        "bad_signature", block_time)
            return Denial(node_index=self.index, reason="bad_signature")
        try:
            address = recover_address(message, request.auth_sig.signature)
        except SignatureInvalid:
            self._audit(request.key_id, request.auth_sig.address, False,
                        "bad_signature", block_time)
            return Denial(node_index=self.index, reason="bad_signature")
        if address.lower() != request.auth_sig.address.lower():
            self._audit(request.key_id, address, False, "bad_signature", block_time)
            return Denial(node_index=self.index, reason="bad_signature")

        condition = acc_module.parse_canonical(held.acc_text)
        try:
            satisfied = acc_module.evaluate(condition, address, block_time, view)
        except UnknownGroup:
            satisfied = False
        if not satisfied:
            self._audit(request.key_id, address, False, "acc_failed", block_time)
            return Denial(node_index=self.index, reason="acc_failed")

        self._audit(request.key_id, address, True, "granted", block_time)
        return held.share


@dataclass
class RequestOutcome:
    grants: list[KeyShare] = field(default_factory=list)
    denials: list[Denial] = field(default_factory=list)
    unavailable: list[int] = field(default_factory=list)


class KeyNetwork:
    """All nodes plus the offline switch used to simulate faults."""

    def __init__(self, node_count: int, view_source, state_dir=None):
        root = Path(state_dir) if state_dir else None
        self.nodes = [
            KeyNode(i, view_source,
                    state_path=(root / f"node{i}.tsv") if root else None)
            for i in range(1, node_count + 1)
        ]
        self.offline: set[int] = set()

    def node(self, index: int) -> KeyNode:
        return self.nodes[index - 1]

    def set_offline(self, index: int, down: bool = True) -> None:
        if down:
            self.offline.add(index)
        else:
            self.offline.discard(index)

    def distribute(self, shares: list[KeyShare], acc_text: str) -> None:
        """Place one share per node; any offline target aborts the whole batch."""
        if len(shares) > len(self.nodes):
            raise NodeUnavailable(
                f"{len(shares)} shares for {len(self.nodes)} nodes")
        targets = [self.node(s.node_index) for s in shares]
        dark = [n.index for n in targets if n.index in self.offline]
        if dark:
            raise NodeUnavailable(f"nodes offline: {sorted(dark)}")
        for share, node in zip(shares, targets):
            node.register_share(share, acc_text)

    def request_shares(self, key_id: bytes, auth_sig: AuthSig,
                       at: int = 0) -> RequestOutcome:
        """Ask every node holding the key for its share."""
        outcome = RequestOutcome()
        request = ShareRequest(key_id=key_id, auth_sig=auth_sig, at=at)
        for node in self.nodes:
            if not node.holds(key_id):
                continue
            if node.index in self.offline:
                outcome.unavailable.append(node.index)
                continue
            result = node.handle_share_request(request)
            if isinstance(result, Denial):
                outcome.denials.append(result)
            else:
                outcome.grants.append(result)
        if not outcome.grants and not outcome.denials and not outcome.unavailable:
            raise UnknownKeyId(f"no node holds key {key_id.hex()}")
        return outcome
