"""Gas metering: calibrated cost tables and a first-principles formula.

Two schedule modes ship.  The calibrated schedule charges measured
all-inclusive costs per deploy and per call, taken from live measurements
of the four contracts; a transaction's gas is exactly its table entry.
The formula schedule prices a transaction from parts instead: an intrinsic
base, per-byte calldata costs, per-slot storage writes, and a creation
charge per deployed contract sized by representative bytecode lengths.
Estimates made without executing assume every touched slot is fresh, so
they upper-bound the executed cost, which replaces assumptions with the
actual write counts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .codec import Reader
from .errors import DvreError


class UnknownFunction(DvreError):
    """No schedule entry resolves for this transaction."""


# Measured all-inclusive deployment costs.
CALIBRATED_DEPLOY = {
    "PolicyManager": 2_738_927,
    "UserMetaFactory": 2_249_679,
    "GroupContract": 1_917_322,
    "UserMetadata": 1_602_341,
}

# Measured call costs; contract creation dominates the two create functions.
DEFAULT_CALL_GAS = 260_000
CALIBRATED_CALLS = {
    "createGroupContract": 1_832_050,
    "createUserContract": 1_535_460,
    "associateUsersToGroup": DEFAULT_CALL_GAS,
    "setUserAccess": DEFAULT_CALL_GAS,
    "addFilesToGroup": DEFAULT_CALL_GAS,
}

# Formula constants.
TX_BASE = 21_000
CALLDATA_ZERO = 4
CALLDATA_NONZERO = 16
STORAGE_NEW = 20_000
STORAGE_UPDATE = 5_000
CREATE_BASE = 32_000
CREATE_PER_BYTE = 200

# Representative bytecode sizes for the creation charge, in bytes.
CODE_SIZES = {
    "PolicyManager": 13_400,
    "UserMetaFactory": 11_000,
    "GroupContract": 9_300,
    "UserMetadata": 7_700,
}

# Which contract kind each fixed function name lives on, and which kind a
# successful call deploys as a side effect.
FUNCTION_HOMES = {
    "createUserContract": "UserMetaFactory",
    "createGroupContract": "PolicyManager",
    "associateUsersToGroup": "GroupContract",
    "setUserAccess": "GroupContract",
    "addFilesToGroup": "GroupContract",
}
FUNCTION_CREATES = {
    "createUserContract": "UserMetadata",
    "createGroupContract": "GroupContract",
}

# Fresh-slot counts assumed when estimating without execution: fixed slots
# per call plus slots per decoded payload entry.
_WRITE_SHAPES = {
    "createUserContract": (6, 0),
    "createGroupContract": (7, 0),
    "associateUsersToGroup": (0, 3),
    "setUserAccess": (3, 0),
    "addFilesToGroup": (0, 4),
}
_CONSTRUCT_WRITES = {
    "PolicyManager": 1,
    "UserMetaFactory": 1,
    "GroupContract": 5,
    "UserMetadata": 5,
}


@dataclass(frozen=True)
class GasSchedule:
    mode: str  # "calibrated" or "formula"
    tx_base: int = TX_BASE
    calldata_zero_byte: int = CALLDATA_ZERO
    calldata_nonzero_byte: int = CALLDATA_NONZERO
    storage_write_new: int = STORAGE_NEW
    storage_write_update: int = STORAGE_UPDATE
    deploy_table: dict = field(default_factory=dict)
    function_table: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps({
            "mode": self.mode,
            "tx_base": self.tx_base,
            "calldata_zero_byte": self.calldata_zero_byte,
            "calldata_nonzero_byte": self.calldata_nonzero_byte,
            "storage_write_new": self.storage_write_new,
            "storage_write_update": self.storage_write_update,
            "deploy_table": self.deploy_table,
            "function_table": self.function_table,
        }, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "GasSchedule":
        data = json.loads(text)
        if data.get("mode") not in ("calibrated", "formula"):
            raise ValueError(f"unknown schedule mode: {data.get('mode')!r}")
        return cls(
            mode=data["mode"],
            tx_base=data.get("tx_base", TX_BASE),
            calldata_zero_byte=data.get("calldata_zero_byte", CALLDATA_ZERO),
            calldata_nonzero_byte=data.get("calldata_nonzero_byte", CALLDATA_NONZERO),
            storage_write_new=data.get("storage_write_new", STORAGE_NEW),
            storage_write_update=data.get("storage_write_update", STORAGE_UPDATE),
            deploy_table=dict(data.get("deploy_table", {})),
            function_table=dict(data.get("function_table", {})),
        )

    @classmethod
    def load(cls, path: str | Path) -> "GasSchedule":
        return cls.from_json(Path(path).read_text())

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json() + "\n")


def calibrated_schedule() -> GasSchedule:
    return GasSchedule(mode="calibrated",
                       deploy_table=dict(CALIBRATED_DEPLOY),
                       function_table=dict(CALIBRATED_CALLS))


def formula_schedule() -> GasSchedule:
    deploy = {kind: CREATE_BASE + CREATE_PER_BYTE * size
              for kind, size in CODE_SIZES.items()}
    return GasSchedule(mode="formula", deploy_table=deploy)


PRESETS = {"calibrated": calibrated_schedule, "formula": formula_schedule}


def calldata_gas(schedule: GasSchedule, payload: bytes) -> int:
    zeros = payload.count(0)
    return (schedule.calldata_zero_byte * zeros
            + schedule.calldata_nonzero_byte * (len(payload) - zeros))


def formula_gas(schedule: GasSchedule, payload: bytes, created_kinds: list[str],
                writes_new: int, writes_update: int) -> int:
    """Price an executed transaction from its observed effects."""
    total = schedule.tx_base + calldata_gas(schedule, payload)
    for kind in created_kinds:
        if kind not in schedule.deploy_table:
            raise UnknownFunction(f"no creation cost for kind: {kind}")
        total += schedule.deploy_table[kind]
    total += schedule.storage_write_new * writes_new
    total += schedule.storage_write_update * writes_update
    return total


def _payload_entry_count(function_name: str, payload: bytes) -> int:
    # List-carrying calls lead with an entry count; the rest are single-shot.
    if function_name in ("associateUsersToGroup", "addFilesToGroup"):
        try:
            return Reader(payload).read_count()
        except DvreError:
            return 0
    return 1


def gas_of(tx, schedule: GasSchedule) -> int:
    """Estimate a transaction's gas without executing it."""
    if tx.kind == "DeployContract":
        contract_kind = tx.function_name
        if contract_kind not in schedule.deploy_table and contract_kind not in CODE_SIZES:
            raise UnknownFunction(f"unknown contract kind: {contract_kind}")
        if schedule.mode == "calibrated":
            try:
                return schedule.deploy_table[contract_kind]
            except KeyError:
                raise UnknownFunction(f"no deploy entry for {contract_kind}") from None
        return formula_gas(schedule, tx.payload, [contract_kind],
                           _CONSTRUCT_WRITES.get(contract_kind, 1), 0)

    function_name = tx.function_name
    if function_name not in FUNCTION_HOMES:
        raise UnknownFunction(f"unknown function: {function_name}")
    if schedule.mode == "calibrated":
        try:
            return schedule.function_table[function_name]
        except KeyError:
            raise UnknownFunction(f"no call entry for {function_name}") from None
    fixed, per_entry = _WRITE_SHAPES[function_name]
    writes = fixed + per_entry * _payload_entry_count(function_name, tx.payload)
    created = [FUNCTION_CREATES[function_name]] if function_name in FUNCTION_CREATES else []
    return formula_gas(schedule, tx.payload, created, writes, 0)
