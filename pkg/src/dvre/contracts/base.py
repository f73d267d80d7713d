"""Execution machinery shared by the contract state machines.

A contract kind is a class holding pure functions over a plain-dict state;
the ledger owns the dicts and hands each call a TxContext carrying the
sender, the block time, an event buffer, and write counters for gas
accounting.  Guard failures raise ContractRevert subclasses; the ledger
turns those into reverted receipts and rolls the state back.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, ClassVar

from ..errors import DvreError


class ContractRevert(DvreError):
    """A require()-style guard failed; the transaction must not change state."""


class AlreadyRegistered(ContractRevert):
    pass


class AddressMismatch(ContractRevert):
    pass


class NotRegistered(ContractRevert):
    pass


class OwnerMismatch(ContractRevert):
    pass


class NotGroupOwner(ContractRevert):
    """Raised with the exact on-chain require message for this guard."""

    def __init__(self):
        super().__init__("Only group owner can call this function")


class InvalidWindow(ContractRevert):
    pass


class NotMember(ContractRevert):
    pass


class DuplicateHash(ContractRevert):
    pass


# Query-side failures: raised by read helpers, never inside a transaction.
class UnknownGroup(DvreError):
    pass


class AccessDenied(DvreError):
    pass


@dataclass(frozen=True)
class Event:
    contract: str
    name: str
    message: str


@dataclass
class TxContext:
    """Per-transaction view handed to contract code."""

    sender: str
    block_time: int
    ledger: "LedgerView"
    config: dict = field(default_factory=dict)
    events: list[Event] = field(default_factory=list)
    writes_new: int = 0
    writes_update: int = 0
    created_kinds: list[str] = field(default_factory=list)
    _create_child: Callable[["TxContext", str, bytes], str] | None = None

    def emit(self, contract: str, name: str, message: str) -> None:
        self.events.append(Event(contract=contract, name=name, message=message))

    def write_new(self, count: int = 1) -> None:
        self.writes_new += count

    def write_update(self, count: int = 1) -> None:
        self.writes_update += count

    def create_child(self, kind: str, payload: bytes) -> str:
        """Deploy another contract within this transaction; returns its id."""
        assert self._create_child is not None, "context not wired for creation"
        return self._create_child(self, kind, payload)


class LedgerView:
    """Read interface the ledger exposes to contract code and queries."""

    def contract_kind(self, contract_id: str) -> str:  # pragma: no cover
        raise NotImplementedError

    def contract_state(self, contract_id: str) -> dict:  # pragma: no cover
        raise NotImplementedError

    def has_contract(self, contract_id: str) -> bool:  # pragma: no cover
        raise NotImplementedError


class Contract:
    """Base class: a kind name plus a dispatch table of payload handlers."""

    KIND: ClassVar[str]
    FUNCTIONS: ClassVar[dict[str, str]] = {}

    @classmethod
    def construct(cls, ctx: TxContext, contract_id: str, payload: bytes) -> dict:
        raise NotImplementedError

    @classmethod
    def call(cls, ctx: TxContext, contract_id: str, state: dict,
             function_name: str, payload: bytes):
        handler = getattr(cls, cls.FUNCTIONS[function_name])
        return handler(ctx, contract_id, state, payload)
