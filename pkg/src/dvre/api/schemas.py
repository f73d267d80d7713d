"""Request and response bodies; field names mirror the domain records."""

from __future__ import annotations

from pydantic import BaseModel, Field


class ChallengeOut(BaseModel):
    challenge: str


class LoginIn(BaseModel):
    signed_message: str
    signature: str = Field(pattern=r"^(0x)?[0-9a-fA-F]{130}$")
    address: str


class SessionOut(BaseModel):
    token: str
    address: str
    expires_at: int


class UserIn(BaseModel):
    public_address: str | None = None
    username: str = Field(min_length=1)
    organization: str = ""
    country: str = ""


class UserOut(BaseModel):
    public_address: str
    username: str
    organization: str
    country: str


class EventOut(BaseModel):
    contract: str
    name: str
    message: str


class ReceiptOut(BaseModel):
    tx_hash: str
    status: str
    gas_used: int
    events: list[EventOut]
    block_height: int
    block_time: int


class UserCreatedOut(BaseModel):
    user_contract: str
    receipt: ReceiptOut


class GroupIn(BaseModel):
    group_name: str = Field(min_length=1)
    group_owner_address: str | None = None
    permissions: str = ""
    organizations: list[str] = []
    countries: list[str] = []


class GroupOut(BaseModel):
    group_id: str
    group_name: str
    group_owner_address: str
    permissions: str
    organizations: list[str]
    countries: list[str]


class GroupCreatedOut(BaseModel):
    group_id: str
    receipt: ReceiptOut


class MemberIn(BaseModel):
    eoa_address: str
    access_from: int | str
    access_to: int | str | None = None


class MemberOut(BaseModel):
    eoa_address: str
    access_from: int
    access_to: int


class MembersChangedOut(BaseModel):
    members: list[MemberOut]
    receipt: ReceiptOut


class FileIn(BaseModel):
    ipfs_hash: str = Field(min_length=1)
    file_name: str = Field(min_length=1)


class FilesIn(BaseModel):
    files: list[FileIn] = Field(min_length=1)


class FileOut(BaseModel):
    ipfs_hash: str
    file_name: str
    added_by: str
    added_at: int


class FilesChangedOut(BaseModel):
    files: list[FileOut]
    receipt: ReceiptOut


class AssetCreatedOut(BaseModel):
    cid: str
    file_name: str
    size: int
    receipt: ReceiptOut


class AssetMetaOut(BaseModel):
    cid: str
    version: int
    file_name: str
    content_length: int
    acc: str
    chain: str
    key_id: str
    n: int
    t: int
    owner: str
    created_at: int


class TimeIn(BaseModel):
    timestamp: int | str


class TimeOut(BaseModel):
    block_time: int
