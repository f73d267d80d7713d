"""Group agreements: a policy manager deploying per-group contracts.

A group contract stores the agreement details, a member table of inclusive
access windows, and the list of shared file references.  Only the group
owner may change membership; sharing a file requires the sender to hold
access at the block time unless the relaxed compatibility mode is on.
The require messages and Success events reproduce the deployed contract
text verbatim, including its double-typo'd sharing message.
"""

from __future__ import annotations

from ..codec import Reader
from ..wallet import to_checksum_address
from .base import (Contract, DuplicateHash, InvalidWindow, NotGroupOwner,
                   NotMember, NotRegistered, OwnerMismatch, TxContext)
from .codecs import read_contract_details, read_file_list, read_user_access, read_user_access_list

# Event text matches the deployed Solidity sources, typos included.
USERS_ADDED_MESSAGE = "Users successfully added to the group"
FILES_SHARED_MESSAGE = "Files successfullly shared in the group"


def _window_active(member: dict, at: int) -> bool:
    return member["access_from"] <= at <= member["access_to"]


class GroupContract(Contract):
    """One sharing agreement: details, member windows, file references."""

    KIND = "GroupContract"
    FUNCTIONS = {
        "associateUsersToGroup": "associate_users_to_group",
        "setUserAccess": "set_user_access",
        "addFilesToGroup": "add_files_to_group",
    }

    @classmethod
    def construct(cls, ctx: TxContext, contract_id: str, payload: bytes) -> dict:
        reader = Reader(payload)
        details = read_contract_details(reader)
        reader.expect_done()
        if details.group_owner_address.lower() != ctx.sender.lower():
            raise OwnerMismatch("group owner must be the deploying sender")
        ctx.write_new(5)  # the five agreement fields
        return {
            "details": {
                "group_name": details.group_name,
                "group_owner_address": details.group_owner_address,
                "permissions": details.permissions,
                "organizations": list(details.organizations),
                "countries": list(details.countries),
            },
            "members": {},
            "files": [],
        }

    @classmethod
    def _require_owner(cls, ctx: TxContext, state: dict) -> None:
        if ctx.sender.lower() != state["details"]["group_owner_address"].lower():
            raise NotGroupOwner()

    @classmethod
    def _store_member(cls, ctx: TxContext, state: dict, access) -> None:
        if access.access_from > access.access_to:
            raise InvalidWindow(
                f"access window starts after it ends: "
                f"{access.access_from} > {access.access_to}")
        key = access.eoa_address.lower()
        entry = {
            "eoa_address": access.eoa_address,
            "access_from": access.access_from,
            "access_to": access.access_to,
        }
        if key in state["members"]:
            ctx.write_update(2)
        else:
            ctx.write_new(3)
        state["members"][key] = entry

    @classmethod
    def associate_users_to_group(cls, ctx: TxContext, contract_id: str,
                                 state: dict, payload: bytes) -> None:
        cls._require_owner(ctx, state)
        reader = Reader(payload)
        entries = read_user_access_list(reader)
        reader.expect_done()
        for access in entries:
            cls._store_member(ctx, state, access)
        ctx.emit(contract_id, "Success", USERS_ADDED_MESSAGE)

    @classmethod
    def set_user_access(cls, ctx: TxContext, contract_id: str,
                        state: dict, payload: bytes) -> None:
        cls._require_owner(ctx, state)
        reader = Reader(payload)
        access = read_user_access(reader)
        reader.expect_done()
        cls._store_member(ctx, state, access)
        ctx.emit(contract_id, "Success", "User access updated")

    @classmethod
    def add_files_to_group(cls, ctx: TxContext, contract_id: str,
                           state: dict, payload: bytes) -> None:
        if not ctx.config.get("paper_faithful_add_files", False):
            sender = ctx.sender.lower()
            owner = state["details"]["group_owner_address"].lower()
            member = state["members"].get(sender)
            if sender != owner and not (member and _window_active(member, ctx.block_time)):
                raise NotMember("sender is not an active member of the group")
        reader = Reader(payload)
        entries = read_file_list(reader)
        reader.expect_done()
        seen = {f["ipfs_hash"] for f in state["files"]}
        for entry in entries:
            if entry.ipfs_hash in seen:
                raise DuplicateHash(f"file reference already shared: {entry.ipfs_hash}")
            seen.add(entry.ipfs_hash)
            state["files"].append({
                "ipfs_hash": entry.ipfs_hash,
                "file_name": entry.file_name,
                "added_by": ctx.sender,
                "added_at": ctx.block_time,
            })
            ctx.write_new(4)
            ctx.emit(contract_id, "Success", FILES_SHARED_MESSAGE)


class PolicyManager(Contract):
    """Registry of group contracts; gatekeeps creation to registered users."""

    KIND = "PolicyManager"
    FUNCTIONS = {"createGroupContract": "create_group_contract"}

    @classmethod
    def construct(cls, ctx: TxContext, contract_id: str, payload: bytes) -> dict:
        user_factory = ""
        if payload:
            reader = Reader(payload)
            raw = reader.read_bytes()
            reader.expect_done()
            if raw:
                user_factory = to_checksum_address(raw)
        ctx.write_new(1)
        return {"owner": ctx.sender, "user_factory": user_factory,
                "groups": {}, "order": []}

    @classmethod
    def create_group_contract(cls, ctx: TxContext, contract_id: str,
                              state: dict, payload: bytes) -> str:
        factory_id = state["user_factory"]
        registered = False
        if factory_id and ctx.ledger.has_contract(factory_id):
            factory_state = ctx.ledger.contract_state(factory_id)
            registered = ctx.sender.lower() in factory_state["users"]
        if not registered:
            raise NotRegistered(f"sender is not a registered user: {ctx.sender}")
        reader = Reader(payload)
        details = read_contract_details(reader)
        reader.expect_done()
        if details.group_owner_address.lower() != ctx.sender.lower():
            raise OwnerMismatch("group owner must be the creating sender")
        child_id = ctx.create_child(GroupContract.KIND, payload)
        state["groups"][child_id] = {"group_name": details.group_name,
                                     "owner": details.group_owner_address}
        state["order"].append(child_id)
        ctx.write_new(2)
        ctx.emit(contract_id, "Success", "Group contract created")
        return child_id
