"""Read-side helpers over ledger state; no transactions involved.

These answer the questions the API and key network ask: who is registered,
which groups exist, who holds access when, and which files a group shares.
"""

from __future__ import annotations

from .base import AccessDenied, LedgerView, NotRegistered, UnknownGroup
from .groups import GroupContract, PolicyManager
from .identity import UserMetaFactory
from .types import ContractDetails, FileDetails, UserAccess, UserProfile


def _state_of(view: LedgerView, contract_id: str, kind: str) -> dict:
    if not view.has_contract(contract_id) or view.contract_kind(contract_id) != kind:
        raise UnknownGroup(f"no {kind} at {contract_id}")
    return view.contract_state(contract_id)


def get_user(view: LedgerView, factory_id: str, address: str) -> UserProfile:
    """Look up a registered profile; raises NotRegistered when absent."""
    state = _state_of(view, factory_id, UserMetaFactory.KIND)
    child_id = state["users"].get(address.lower())
    if child_id is None:
        raise NotRegistered(f"address not registered: {address}")
    profile = view.contract_state(child_id)["profile"]
    return UserProfile(**profile)


def is_registered(view: LedgerView, factory_id: str, address: str) -> bool:
    state = _state_of(view, factory_id, UserMetaFactory.KIND)
    return address.lower() in state["users"]


def list_groups(view: LedgerView, policy_manager_id: str) -> list[tuple[str, ContractDetails]]:
    state = _state_of(view, policy_manager_id, PolicyManager.KIND)
    result = []
    for group_id in state["order"]:
        result.append((group_id, group_details(view, group_id)))
    return result


def group_details(view: LedgerView, group_id: str) -> ContractDetails:
    state = _state_of(view, group_id, GroupContract.KIND)
    details = state["details"]
    return ContractDetails(
        group_name=details["group_name"],
        group_owner_address=details["group_owner_address"],
        permissions=details["permissions"],
        organizations=tuple(details["organizations"]),
        countries=tuple(details["countries"]),
    )


def group_members(view: LedgerView, group_id: str) -> list[UserAccess]:
    state = _state_of(view, group_id, GroupContract.KIND)
    return [
        UserAccess(eoa_address=m["eoa_address"],
                   access_from=m["access_from"], access_to=m["access_to"])
        for m in state["members"].values()
    ]


def check_access(view: LedgerView, group_id: str, address: str, at: int) -> bool:
    """Inclusive-window membership test; the owner always passes."""
    state = _state_of(view, group_id, GroupContract.KIND)
    if address.lower() == state["details"]["group_owner_address"].lower():
        return True
    member = state["members"].get(address.lower())
    if member is None:
        return False
    return member["access_from"] <= at <= member["access_to"]


def list_group_files(view: LedgerView, group_id: str, requester: str,
                     at: int) -> list[FileDetails]:
    """File references visible to a requester holding access at a time."""
    if not check_access(view, group_id, requester, at):
        raise AccessDenied(
            f"{requester} holds no access to group {group_id} at {at}")
    state = view.contract_state(group_id)
    return [
        FileDetails(ipfs_hash=f["ipfs_hash"], file_name=f["file_name"],
                    added_by=f["added_by"], added_at=f["added_at"])
        for f in state["files"]
    ]
