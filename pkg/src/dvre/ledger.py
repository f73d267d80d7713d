"""Single-sequencer event-sourced ledger with deterministic replay.

Each submitted transaction forms its own block: nonces are checked per
sender, the block time comes from a monotone clock that tests and admin
tooling can script, contract code runs against a snapshot so a revert
leaves no trace beyond its receipt, and every included transaction is
appended to a log that a fresh ledger can replay into bitwise-identical
receipts and state.
"""

from __future__ import annotations

import copy
import threading
import time as time_module
from dataclasses import dataclass, field
from pathlib import Path

from .codec import Reader, enc_bytes, enc_list, enc_str, enc_u64
from .contracts import KINDS, ContractRevert, Event, LedgerView, TxContext
from .crypto.keccak import keccak256
from .errors import DvreError
from .gas import GasSchedule, UnknownFunction, calibrated_schedule, formula_gas
from .wallet import parse_address, to_checksum_address

DEPLOY = "DeployContract"
CALL = "CallFunction"


class BadTransaction(DvreError):
    """The transaction violates shape rules before any state is consulted."""


class BadNonce(DvreError):
    pass


class UnknownContract(DvreError):
    pass


class TimeRegression(DvreError):
    pass


class CorruptLog(DvreError):
    pass


@dataclass(frozen=True)
class Transaction:
    sender: str
    kind: str                 # DEPLOY or CALL
    target: str | None        # contract id for calls; None for deploys
    function_name: str        # function for calls; contract kind for deploys
    payload: bytes
    nonce: int

    def tx_hash(self) -> bytes:
        return keccak256(encode_tx(self))


@dataclass(frozen=True)
class Receipt:
    tx_hash: bytes
    status: str               # "success" or "reverted"
    gas_used: int
    events: tuple[Event, ...]
    block_height: int
    block_time: int
    revert_reason: str = ""
    contract_id: str = ""     # id created by a deploy or create call, if any

    def digest(self) -> bytes:
        body = (enc_bytes(self.tx_hash)
                + enc_str(self.status)
                + enc_u64(self.gas_used)
                + enc_u64(self.block_height)
                + enc_u64(self.block_time)
                + enc_list(
                    enc_str(e.contract) + enc_str(e.name) + enc_str(e.message)
                    for e in self.events)
                + enc_str(self.revert_reason)
                + enc_str(self.contract_id))
        return keccak256(body)


def encode_tx(tx: Transaction) -> bytes:
    if tx.kind not in (DEPLOY, CALL):
        raise BadTransaction(f"unknown transaction kind: {tx.kind}")
    target_raw = b"" if tx.target is None else parse_address(tx.target)
    return (enc_bytes(parse_address(tx.sender))
            + enc_str(tx.kind)
            + enc_bytes(target_raw)
            + enc_str(tx.function_name)
            + enc_bytes(tx.payload)
            + enc_u64(tx.nonce))


def decode_tx(data: bytes) -> Transaction:
    reader = Reader(data)
    sender = to_checksum_address(reader.read_bytes())
    kind = reader.read_str()
    target_raw = reader.read_bytes()
    function_name = reader.read_str()
    payload = reader.read_bytes()
    nonce = reader.read_u64()
    reader.expect_done()
    target = to_checksum_address(target_raw) if target_raw else None
    return Transaction(sender=sender, kind=kind, target=target,
                       function_name=function_name, payload=payload, nonce=nonce)


class Ledger(LedgerView):
    """State machine host: one transaction per block, strictly ordered."""

    def __init__(self, schedule: GasSchedule | None = None, *,
                 genesis_time: int = 0, wall_clock: bool = False,
                 config: dict | None = None, log_path: str | Path | None = None):
        self.schedule = schedule or calibrated_schedule()
        self.config = dict(config or {})
        self._contracts: dict[str, dict] = {}
        self._nonces: dict[str, int] = {}
        self._height = 0
        self._time = genesis_time
        self._last_block_time = 0  # derived from the log alone, not genesis
        self._wall_clock = wall_clock
        self.receipts: list[Receipt] = []
        self.events: list[tuple[int, Event]] = []
        self._log_lines: list[str] = []
        self._log_path = Path(log_path) if log_path else None
        self._log_handle = self._log_path.open("a") if self._log_path else None
        self._lock = threading.RLock()

    # --- clock ---------------------------------------------------------------

    @property
    def current_time(self) -> int:
        if self._wall_clock:
            return max(self._time, int(time_module.time()))
        return self._time

    def set_time(self, timestamp: int) -> None:
        """Pin the clock; later blocks carry this time until the next call."""
        with self._lock:
            if timestamp < self.current_time:
                raise TimeRegression(
                    f"clock may not move backwards: {timestamp} < {self.current_time}")
            self._time = timestamp
            self._wall_clock = False

    # --- read views ----------------------------------------------------------

    @property
    def height(self) -> int:
        return self._height

    def has_contract(self, contract_id: str) -> bool:
        return contract_id in self._contracts

    def contract_kind(self, contract_id: str) -> str:
        entry = self._contracts.get(contract_id)
        if entry is None:
            raise UnknownContract(f"no contract at {contract_id}")
        return entry["kind"]

    def contract_state(self, contract_id: str) -> dict:
        entry = self._contracts.get(contract_id)
        if entry is None:
            raise UnknownContract(f"no contract at {contract_id}")
        return entry["state"]

    def contract_ids(self) -> list[str]:
        return list(self._contracts)

    def next_nonce(self, sender: str) -> int:
        return self._nonces.get(sender.lower(), 0)

    # --- execution -----------------------------------------------------------

    def _derive_id(self, tx: Transaction, index: int) -> str:
        seed = parse_address(tx.sender) + tx.nonce.to_bytes(8, "big") + bytes([index])
        return to_checksum_address(keccak256(seed)[-20:])

    def _make_child_creator(self, tx: Transaction):
        def create_child(ctx: TxContext, kind: str, payload: bytes) -> str:
            if kind not in KINDS:
                raise BadTransaction(f"unknown contract kind: {kind}")
            child_id = self._derive_id(tx, len(ctx.created_kinds))
            ctx.created_kinds.append(kind)
            state = KINDS[kind].construct(ctx, child_id, payload)
            self._contracts[child_id] = {"kind": kind, "state": state}
            return child_id
        return create_child

    def submit_tx(self, tx: Transaction, *, now: int | None = None) -> Receipt:
        """Execute a transaction as the next block and return its receipt.

        Shape violations, bad nonces, and unknown targets reject the
        transaction outright: nothing is included and no gas is charged.
        Contract guard failures instead produce a reverted receipt that
        consumes gas and a log slot while leaving state untouched.
        """
        with self._lock:
            if tx.kind not in (DEPLOY, CALL):
                raise BadTransaction(f"unknown transaction kind: {tx.kind}")
            if tx.kind == DEPLOY and tx.target is not None:
                raise BadTransaction("deploy transactions carry no target")
            if tx.kind == CALL and tx.target is None:
                raise BadTransaction("call transactions need a target")
            expected = self.next_nonce(tx.sender)
            if tx.nonce != expected:
                raise BadNonce(f"nonce {tx.nonce} from {tx.sender}, expected {expected}")

            if tx.kind == DEPLOY:
                if tx.function_name not in KINDS:
                    raise BadTransaction(f"unknown contract kind: {tx.function_name}")
            else:
                kind = self.contract_kind(tx.target)  # raises UnknownContract
                if tx.function_name not in KINDS[kind].FUNCTIONS:
                    raise UnknownFunction(
                        f"{kind} has no function {tx.function_name}")

            if now is not None:
                if now < self.current_time:
                    raise TimeRegression(
                        f"block time {now} precedes clock {self.current_time}")
                self._time = now
            block_time = self.current_time
            self._time = block_time  # next block may not precede this one

            snapshot = copy.deepcopy(self._contracts)
            ctx = TxContext(sender=tx.sender, block_time=block_time,
                            ledger=self, config=self.config)
            ctx._create_child = self._make_child_creator(tx)

            status, reason, created_id = "success", "", ""
            try:
                if tx.kind == DEPLOY:
                    created_id = ctx.create_child(tx.function_name, tx.payload)
                else:
                    kind = self.contract_kind(tx.target)
                    result = KINDS[kind].call(ctx, tx.target,
                                              self._contracts[tx.target]["state"],
                                              tx.function_name, tx.payload)
                    if isinstance(result, str):
                        created_id = result
            except ContractRevert as exc:
                self._contracts = snapshot
                status, reason, created_id = "reverted", str(exc), ""
                revert_error: ContractRevert | None = exc
            else:
                revert_error = None

            if self.schedule.mode == "calibrated":
                gas_used = self._calibrated_gas(tx)
            else:
                gas_used = formula_gas(self.schedule, tx.payload, ctx.created_kinds,
                                       ctx.writes_new, ctx.writes_update)

            self._height += 1
            self._last_block_time = block_time
            events = tuple(ctx.events) if status == "success" else ()
            receipt = Receipt(tx_hash=tx.tx_hash(), status=status, gas_used=gas_used,
                              events=events, block_height=self._height,
                              block_time=block_time, revert_reason=reason,
                              contract_id=created_id)
            # Transient: lets facades re-raise the typed guard failure.
            object.__setattr__(receipt, "revert_error", revert_error)

            self._nonces[tx.sender.lower()] = expected + 1
            self.receipts.append(receipt)
            for event in events:
                self.events.append((self._height, event))
            line = f"{encode_tx(tx).hex()}\t{block_time}\t{receipt.digest().hex()}"
            self._log_lines.append(line)
            if self._log_handle:
                self._log_handle.write(line + "\n")
                self._log_handle.flush()
            return receipt

    def build_and_submit(self, sender: str, kind: str, target: str | None,
                         function_name: str, payload: bytes, *,
                         now: int | None = None) -> Receipt:
        """Allocate the sender's next nonce and submit in one atomic step."""
        with self._lock:
            tx = Transaction(sender=sender, kind=kind, target=target,
                             function_name=function_name, payload=payload,
                             nonce=self.next_nonce(sender))
            return self.submit_tx(tx, now=now)

    def _calibrated_gas(self, tx: Transaction) -> int:
        if tx.kind == DEPLOY:
            table, key = self.schedule.deploy_table, tx.function_name
        else:
            table, key = self.schedule.function_table, tx.function_name
        try:
            return table[key]
        except KeyError:
            raise UnknownFunction(f"no calibrated entry for {key}") from None

    # --- canonical serialization --------------------------------------------

    def canonical_state(self) -> str:
        from .codec import canonical_json
        return canonical_json({
            "height": self._height,
            "last_block_time": self._last_block_time,
            "nonces": dict(sorted(self._nonces.items())),
            "contracts": {cid: entry for cid, entry in sorted(self._contracts.items())},
            "events": [[h, e.contract, e.name, e.message] for h, e in self.events],
            "receipts": [r.digest().hex() for r in self.receipts],
        })

    def state_root(self) -> str:
        return keccak256(self.canonical_state().encode("utf-8")).hex()

    # --- log and replay ------------------------------------------------------

    def log_lines(self) -> list[str]:
        return list(self._log_lines)

    def close(self) -> None:
        if self._log_handle:
            self._log_handle.close()
            self._log_handle = None

    @classmethod
    def replay(cls, log: str | Path | list[str], schedule: GasSchedule | None = None,
               *, config: dict | None = None) -> "Ledger":
        """Rebuild a ledger from its log, re-verifying every receipt digest."""
        if isinstance(log, (str, Path)):
            lines = Path(log).read_text().splitlines()
        else:
            lines = list(log)
        ledger = cls(schedule, genesis_time=0, config=config)
        for number, line in enumerate(lines, start=1):
            line = line.strip()
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise CorruptLog(f"line {number}: expected 3 fields, got {len(parts)}")
            tx_hex, time_text, digest_hex = parts
            try:
                tx = decode_tx(bytes.fromhex(tx_hex))
                block_time = int(time_text)
            except (ValueError, DvreError) as exc:
                raise CorruptLog(f"line {number}: undecodable: {exc}") from None
            try:
                receipt = ledger.submit_tx(tx, now=block_time)
            except DvreError as exc:
                raise CorruptLog(f"line {number}: replay rejected: {exc}") from None
            if receipt.digest().hex() != digest_hex:
                raise CorruptLog(
                    f"line {number}: receipt digest mismatch for tx {tx_hex[:16]}")
        return ledger

    @classmethod
    def resume(cls, log_path: str | Path, schedule: GasSchedule | None = None,
               *, config: dict | None = None, wall_clock: bool = False) -> "Ledger":
        """Replay an existing log, then keep appending to the same file."""
        path = Path(log_path)
        lines = path.read_text().splitlines() if path.exists() else []
        ledger = cls.replay(lines, schedule, config=config)
        ledger._log_path = path
        ledger._log_handle = path.open("a")
        ledger._wall_clock = wall_clock
        return ledger
