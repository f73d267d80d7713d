"""User registration: a factory contract mapping addresses to profile contracts.

Registration deploys a per-user metadata contract and records it in the
factory's directory.  A user registers themselves: the profile address must
match the transaction sender, and an address registers at most once.
"""

from __future__ import annotations

from ..codec import Reader
from .base import AddressMismatch, AlreadyRegistered, Contract, TxContext
from .codecs import read_user_profile


class UserMetadata(Contract):
    """Holds one user's profile; deployed per registration."""

    KIND = "UserMetadata"
    FUNCTIONS: dict[str, str] = {}

    @classmethod
    def construct(cls, ctx: TxContext, contract_id: str, payload: bytes) -> dict:
        reader = Reader(payload)
        profile = read_user_profile(reader)
        reader.expect_done()
        if profile.public_address.lower() != ctx.sender.lower():
            raise AddressMismatch("profile address does not match the sender")
        ctx.write_new(5)  # four profile fields plus the owner slot
        return {
            "owner": profile.public_address,
            "profile": {
                "public_address": profile.public_address,
                "username": profile.username,
                "organization": profile.organization,
                "country": profile.country,
            },
        }


class UserMetaFactory(Contract):
    """Directory of registered users; one entry per address."""

    KIND = "UserMetaFactory"
    FUNCTIONS = {"createUserContract": "create_user_contract"}

    @classmethod
    def construct(cls, ctx: TxContext, contract_id: str, payload: bytes) -> dict:
        if payload:
            raise ValueError("factory constructor takes no arguments")
        ctx.write_new(1)
        return {"owner": ctx.sender, "users": {}}

    @classmethod
    def create_user_contract(cls, ctx: TxContext, contract_id: str,
                             state: dict, payload: bytes) -> str:
        reader = Reader(payload)
        profile = read_user_profile(reader)
        reader.expect_done()
        if profile.public_address.lower() != ctx.sender.lower():
            raise AddressMismatch("profile address does not match the sender")
        key = profile.public_address.lower()
        if key in state["users"]:
            raise AlreadyRegistered(f"address already registered: {profile.public_address}")
        child_id = ctx.create_child(UserMetadata.KIND, payload)
        state["users"][key] = child_id
        ctx.write_new(1)
        ctx.emit(contract_id, "Success", "User contract created")
        return child_id
