"""Node configuration, resolved from defaults, a JSON file, and environment.

Precedence: explicit keyword arguments beat environment variables beat the
config file beat defaults.  The genesis time may be an integer, a date
string, or the literal "now" to run on the wall clock.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, fields
from pathlib import Path

from .contracts.types import parse_time_point
from .store import DEFAULT_MAX_BYTES, DEFAULT_MAX_FILES

DEFAULT_PORT = 8537

_ENV_PREFIX = "DVRE_"

_ENV_KEYS = {
    "DATA_DIR": "data_dir",
    "BIND": "bind_host",
    "PORT": "bind_port",
    "GAS_PRESET": "gas_preset",
    "QUOTA_FILES": "quota_files",
    "QUOTA_BYTES": "quota_bytes",
    "KEYNET_N": "keynet_n",
    "KEYNET_T": "keynet_t",
    "UPLOAD_CAP": "upload_cap",
    "SESSION_TTL": "session_ttl",
    "GENESIS_TIME": "genesis_time",
    "OPERATOR_KEY": "operator_key",
    "CHAIN": "chain",
    "LIT_NETWORK": "lit_network",
    "PAPER_FAITHFUL_ADD_FILES": "paper_faithful_add_files",
    "ALLOW_TIME_TRAVEL": "allow_time_travel",
}

_INT_FIELDS = {"bind_port", "quota_files", "quota_bytes", "keynet_n", "keynet_t",
               "upload_cap", "session_ttl"}
_BOOL_FIELDS = {"paper_faithful_add_files", "allow_time_travel"}


@dataclass(frozen=True)
class NodeConfig:
    data_dir: str = str(Path.home() / ".dvre" / "data")
    bind_host: str = "127.0.0.1"
    bind_port: int = DEFAULT_PORT
    gas_preset: str = "calibrated"
    quota_files: int = DEFAULT_MAX_FILES
    quota_bytes: int = DEFAULT_MAX_BYTES
    keynet_n: int = 5
    keynet_t: int = 3
    upload_cap: int = 8 * 1024 * 1024
    session_ttl: int = 3600
    genesis_time: int | str = "now"
    operator_key: str = ""
    chain: str = "dvre-local"
    lit_network: str = "localnet"
    paper_faithful_add_files: bool = False
    allow_time_travel: bool = False

    def resolved_genesis(self) -> int | None:
        """None means run on the wall clock; otherwise a pinned start time."""
        if self.genesis_time == "now":
            return None
        if isinstance(self.genesis_time, int):
            return self.genesis_time
        try:
            return int(self.genesis_time)
        except ValueError:
            return parse_time_point(self.genesis_time)

    def contract_flags(self) -> dict:
        return {"paper_faithful_add_files": self.paper_faithful_add_files}


def _coerce(name: str, raw: str):
    if name in _INT_FIELDS:
        return int(raw)
    if name in _BOOL_FIELDS:
        return raw.strip().lower() in ("1", "true", "yes", "on")
    if name == "genesis_time" and raw != "now":
        try:
            return int(raw)
        except ValueError:
            return raw
    return raw


def load_config(path: str | Path | None = None, env: dict | None = None,
                **overrides) -> NodeConfig:
    """Build a config from file, environment, and explicit overrides."""
    env = os.environ if env is None else env
    values: dict = {}
    if path is not None:
        data = json.loads(Path(path).read_text())
        known = {f.name for f in fields(NodeConfig)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        values.update(data)
    for env_key, field_name in _ENV_KEYS.items():
        raw = env.get(_ENV_PREFIX + env_key)
        if raw is not None:
            values[field_name] = _coerce(field_name, raw)
    values.update(overrides)
    return NodeConfig(**values)
