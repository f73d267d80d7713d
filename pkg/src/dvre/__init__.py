"""Desk-scale virtual research environment: a gas-metered contract ledger,
a content-addressed store for encrypted bundles, and a threshold key network
that enforces sharing agreements at decryption time.  Everything runs in one
process with no external services.
"""

from .config import NodeConfig, load_config
from .contracts.types import (
    UNLIMITED,
    ContractDetails,
    FileDetails,
    UserAccess,
    UserProfile,
    parse_access_window,
    parse_time_point,
)
from .errors import DvreError
from .gas import PRESETS, GasSchedule, calibrated_schedule, formula_schedule
from .keynet import (
    AllOf,
    AnyOf,
    GroupMember,
    IsOwner,
    NetworkParams,
    TimeWindow,
)
from .ledger import Ledger, Receipt, Transaction
from .node import DvreNode
from .store import Cid, ContentStore, Quota
from .wallet import (
    AuthSig,
    Wallet,
    generate_wallet,
    load_keyfile,
    make_challenge,
    parse_address,
    save_keyfile,
    sign_auth,
    verify_auth,
    wallet_from_private_key,
)

__version__ = "0.1.0"

__all__ = [
    "AllOf",
    "AnyOf",
    "AuthSig",
    "Cid",
    "ContentStore",
    "ContractDetails",
    "DvreError",
    "DvreNode",
    "FileDetails",
    "GasSchedule",
    "GroupMember",
    "IsOwner",
    "Ledger",
    "NetworkParams",
    "NodeConfig",
    "PRESETS",
    "Quota",
    "Receipt",
    "TimeWindow",
    "Transaction",
    "UNLIMITED",
    "UserAccess",
    "UserProfile",
    "Wallet",
    "calibrated_schedule",
    "formula_schedule",
    "generate_wallet",
    "load_config",
    "load_keyfile",
    "make_challenge",
    "parse_access_window",
    "parse_address",
    "parse_time_point",
    "save_keyfile",
    "sign_auth",
    "verify_auth",
    "wallet_from_private_key",
    "__version__",
]
