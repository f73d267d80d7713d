"""Domain records carried in transaction payloads and query results.

These are plain values: construction validates shape, encoding functions in
the codecs module define their wire form, and the contract state machines
decide what is legal when.  Access windows are inclusive unix seconds; a
calendar day given as YYYY-MM-DD widens to the full day in UTC.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timezone

# Sentinel for "no expiry": the largest signed 64-bit timestamp.
UNLIMITED = (1 << 63) - 1


@dataclass(frozen=True)
class UserProfile:
    public_address: str
    username: str
    organization: str
    country: str

    def __post_init__(self):
        if not self.username:
            raise ValueError("username must be non-empty")


@dataclass(frozen=True)
class ContractDetails:
    group_name: str
    group_owner_address: str
    permissions: str
    organizations: tuple[str, ...] = field(default_factory=tuple)
    countries: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not self.group_name:
            raise ValueError("group_name must be non-empty")
        object.__setattr__(self, "organizations", tuple(self.organizations))
        object.__setattr__(self, "countries", tuple(self.countries))


@dataclass(frozen=True)
class FileDetails:
    ipfs_hash: str
    file_name: str
    added_by: str = ""
    added_at: int = 0

    def __post_init__(self):
        if not self.ipfs_hash:
            raise ValueError("ipfs_hash must be non-empty")
        if not self.file_name:
            raise ValueError("file_name must be non-empty")


@dataclass(frozen=True)
class UserAccess:
    eoa_address: str
    access_from: int
    access_to: int = UNLIMITED

    def __post_init__(self):
        if self.access_from < 0 or self.access_to < 0:
            raise ValueError("access window bounds must be non-negative")


def parse_time_point(value: int | str, *, end_of_day: bool = False) -> int:
    """Normalize a timestamp input to unix seconds.

    Integers pass through.  A bare date widens to 00:00:00 or, with
    end_of_day, 23:59:59 of that day in UTC.  A full ISO-8601 timestamp
    names an exact second; a missing offset means UTC.
    """
    if isinstance(value, bool):
        raise ValueError("timestamps must be integers or date strings")
    if isinstance(value, int):
        if value < 0:
            raise ValueError("timestamps must be non-negative")
        return value
    text = value.strip()
    try:
        day = datetime.strptime(text, "%Y-%m-%d")
    except ValueError:
        pass
    else:
        day = day.replace(tzinfo=timezone.utc)
        if end_of_day:
            day = day.replace(hour=23, minute=59, second=59)
        return int(day.timestamp())
    try:
        moment = datetime.fromisoformat(text.replace("Z", "+00:00"))
    except ValueError:
        raise ValueError(f"unparseable timestamp: {value!r}") from None
    if moment.tzinfo is None:
        moment = moment.replace(tzinfo=timezone.utc)
    return int(moment.timestamp())


def parse_access_window(access_from: int | str, access_to: int | str | None) -> tuple[int, int]:
    """Parse a (from, to) pair; a missing upper bound means no expiry."""
    start = parse_time_point(access_from)
    if access_to is None:
        return start, UNLIMITED
    return start, parse_time_point(access_to, end_of_day=True)
