"""Wire form of contract call payloads.

Each record encodes its fields in declaration order with the shared
length-prefix scheme; addresses travel as their 20 raw bytes.  Decoders
re-validate through the record constructors, so a malformed payload fails
before any state is touched.
"""

from __future__ import annotations

from ..codec import Reader, enc_bytes, enc_list, enc_str, enc_u64
from ..wallet import parse_address, to_checksum_address
from .types import ContractDetails, FileDetails, UserAccess, UserProfile


def enc_address(address: str) -> bytes:
    return enc_bytes(parse_address(address))


def _read_address(reader: Reader) -> str:
    raw = reader.read_bytes()
    return to_checksum_address(raw)


def encode_user_profile(profile: UserProfile) -> bytes:
    return (enc_address(profile.public_address)
            + enc_str(profile.username)
            + enc_str(profile.organization)
            + enc_str(profile.country))


def read_user_profile(reader: Reader) -> UserProfile:
    return UserProfile(
        public_address=_read_address(reader),
        username=reader.read_str(),
        organization=reader.read_str(),
        country=reader.read_str(),
    )


def encode_contract_details(details: ContractDetails) -> bytes:
    return (enc_str(details.group_name)
            + enc_address(details.group_owner_address)
            + enc_str(details.permissions)
            + enc_list(enc_str(o) for o in details.organizations)
            + enc_list(enc_str(c) for c in details.countries))


def read_contract_details(reader: Reader) -> ContractDetails:
    group_name = reader.read_str()
    owner = _read_address(reader)
    permissions = reader.read_str()
    organizations = tuple(reader.read_str() for _ in range(reader.read_count()))
    countries = tuple(reader.read_str() for _ in range(reader.read_count()))
    return ContractDetails(group_name=group_name, group_owner_address=owner,
                           permissions=permissions, organizations=organizations,
                           countries=countries)


def encode_user_access(access: UserAccess) -> bytes:
    return (enc_address(access.eoa_address)
            + enc_u64(access.access_from)
            + enc_u64(access.access_to))


def read_user_access(reader: Reader) -> UserAccess:
    return UserAccess(
        eoa_address=_read_address(reader),
        access_from=reader.read_u64(),
        access_to=reader.read_u64(),
    )


def encode_user_access_list(entries: list[UserAccess]) -> bytes:
    return enc_list(encode_user_access(e) for e in entries)


def read_user_access_list(reader: Reader) -> list[UserAccess]:
    return [read_user_access(reader) for _ in range(reader.read_count())]


def encode_file_details(entry: FileDetails) -> bytes:
    return (enc_str(entry.ipfs_hash)
            + enc_str(entry.file_name)
            + enc_str(entry.added_by)
            + enc_u64(entry.added_at))


def read_file_details(reader: Reader) -> FileDetails:
    return FileDetails(
        ipfs_hash=reader.read_str(),
        file_name=reader.read_str(),
        added_by=reader.read_str(),
        added_at=reader.read_u64(),
    )


def encode_file_list(entries: list[FileDetails]) -> bytes:
    return enc_list(encode_file_details(e) for e in entries)


def read_file_list(reader: Reader) -> list[FileDetails]:
    return [read_file_details(reader) for _ in range(reader.read_count())]
