"""Contract kinds and the registry the ledger deploys them from."""

from .base import (AccessDenied, AddressMismatch, AlreadyRegistered, Contract,
                   ContractRevert, DuplicateHash, Event, InvalidWindow,
                   LedgerView, NotGroupOwner, NotMember, NotRegistered,
                   OwnerMismatch, TxContext, UnknownGroup)
from .groups import FILES_SHARED_MESSAGE, USERS_ADDED_MESSAGE, GroupContract, PolicyManager
from .identity import UserMetadata, UserMetaFactory
from .types import UNLIMITED, ContractDetails, FileDetails, UserAccess, UserProfile

KINDS: dict[str, type[Contract]] = {
    cls.KIND: cls
    for cls in (UserMetaFactory, UserMetadata, PolicyManager, GroupContract)
}

__all__ = [
    "AccessDenied", "AddressMismatch", "AlreadyRegistered", "Contract",
    "ContractRevert", "ContractDetails", "DuplicateHash", "Event",
    "FILES_SHARED_MESSAGE", "FileDetails", "GroupContract", "InvalidWindow",
    "KINDS", "LedgerView", "NotGroupOwner", "NotMember", "NotRegistered",
    "OwnerMismatch", "PolicyManager", "TxContext", "UNLIMITED",
    "USERS_ADDED_MESSAGE", "UnknownGroup", "UserAccess", "UserMetaFactory",
    "UserMetadata", "UserProfile",
]
