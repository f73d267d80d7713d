"""Access control condition trees and their canonical encoding.

A condition is a predicate over (subject address, evaluation time) built
from three leaves: membership in a group, a literal time window, and group
ownership, combined with all-of and any-of nodes.  The canonical form is
compact JSON with sorted keys, depth-first, so equal conditions encode to
equal bytes and the SHA-256 of that encoding binds a condition to a key id.
Evaluation reads group state through the ledger view; it never mutates.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from ..codec import canonical_json
from ..contracts import LedgerView, queries
from ..contracts.base import UnknownGroup
from ..errors import DvreError


class BadCondition(DvreError):
    """A condition tree or its encoding is malformed."""


@dataclass(frozen=True)
class GroupMember:
    group: str

    def __post_init__(self):
        if not self.group:
            raise BadCondition("group id must be non-empty")


@dataclass(frozen=True)
class TimeWindow:
    from_time: int
    to_time: int

    def __post_init__(self):
        if self.from_time > self.to_time:
            raise BadCondition(
                f"window starts after it ends: {self.from_time} > {self.to_time}")
        if self.from_time < 0:
            raise BadCondition("window bounds must be non-negative")


@dataclass(frozen=True)
class IsOwner:
    group: str

    def __post_init__(self):
        if not self.group:
            raise BadCondition("group id must be non-empty")


@dataclass(frozen=True)
class AllOf:
    children: tuple

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if not self.children:
            raise BadCondition("all-of needs at least one child")


@dataclass(frozen=True)
class AnyOf:
    children: tuple

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if not self.children:
            raise BadCondition("any-of needs at least one child")


Condition = GroupMember | TimeWindow | IsOwner | AllOf | AnyOf


def to_tree(condition: Condition) -> dict:
    if isinstance(condition, GroupMember):
        return {"kind": "group_member", "group": condition.group}
    if isinstance(condition, TimeWindow):
        return {"kind": "time_window", "from": condition.from_time,
                "to": condition.to_time}
    if isinstance(condition, IsOwner):
        return {"kind": "is_owner", "group": condition.group}
    if isinstance(condition, AllOf):
        return {"kind": "and", "children": [to_tree(c) for c in condition.children]}
    if isinstance(condition, AnyOf):
        return {"kind": "or", "children": [to_tree(c) for c in condition.children]}
    raise BadCondition(f"not a condition: {condition!r}")


def from_tree(tree) -> Condition:
    if not isinstance(tree, dict) or "kind" not in tree:
        raise BadCondition(f"malformed condition node: {tree!r}")
    kind = tree["kind"]
    try:
        if kind == "group_member":
            return GroupMember(group=tree["group"])
        if kind == "time_window":
            return TimeWindow(from_time=tree["from"], to_time=tree["to"])
        if kind == "is_owner":
            return IsOwner(group=tree["group"])
        if kind == "and":
            return AllOf(children=tuple(from_tree(c) for c in tree["children"]))
        if kind == "or":
            return AnyOf(children=tuple(from_tree(c) for c in tree["children"]))
    except KeyError as exc:
        raise BadCondition(f"condition node missing field {exc}") from None
    except TypeError:
        raise BadCondition(f"malformed condition node: {tree!r}") from None
    raise BadCondition(f"unknown condition kind: {kind!r}")


def to_canonical(condition: Condition) -> str:
    return canonical_json(to_tree(condition))


def parse_canonical(text: str) -> Condition:
    try:
        tree = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BadCondition(f"condition is not JSON: {exc}") from None
    return from_tree(tree)


def digest(condition: Condition) -> bytes:
    return hashlib.sha256(to_canonical(condition).encode("utf-8")).digest()


def evaluate(condition: Condition, subject: str, at: int, view: LedgerView) -> bool:
    """Decide a condition for a subject at a time against live group state."""
    if isinstance(condition, GroupMember):
        try:
            return queries.check_access(view, condition.group, subject, at)
        except UnknownGroup:
            return False  # a stale group reference denies, it never errors
    if isinstance(condition, TimeWindow):
        return condition.from_time <= at <= condition.to_time
    if isinstance(condition, IsOwner):
        try:
            details = queries.group_details(view, condition.group)
        except UnknownGroup:
            return False
        return details.group_owner_address.lower() == subject.lower()
    if isinstance(condition, AllOf):
        return all(evaluate(c, subject, at, view) for c in condition.children)
    if isinstance(condition, AnyOf):
        return any(evaluate(c, subject, at, view) for c in condition.children)
    raise BadCondition(f"not a condition: {condition!r}")


def referenced_groups(condition: Condition) -> set[str]:
    """Collect every group id the condition mentions."""
    if isinstance(condition, (GroupMember, IsOwner)):
        return {condition.group}
    if isinstance(condition, (AllOf, AnyOf)):
        groups: set[str] = set()
        for child in condition.children:
            groups |= referenced_groups(child)
        return groups
    return set()
