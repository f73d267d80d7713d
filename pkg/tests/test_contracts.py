"""Contract behavior driven through the ledger: registration, groups,
membership windows, and file records.
"""

import pytest

from dvre.codec import enc_bytes
from dvre.contracts import queries
from dvre.contracts.base import (
    AddressMismatch,
    AlreadyRegistered,
    DuplicateHash,
    InvalidWindow,
    NotGroupOwner,
    NotMember,
    NotRegistered,
    OwnerMismatch,
)
from dvre.contracts.codecs import (
    encode_contract_details,
    encode_file_list,
    encode_user_access,
    encode_user_access_list,
    encode_user_profile,
)
from dvre.contracts.types import (
    UNLIMITED,
    ContractDetails,
    FileDetails,
    UserAccess,
    UserProfile,
    parse_access_window,
    parse_time_point,
)
from dvre.gas import calibrated_schedule
from dvre.ledger import CALL, DEPLOY, Ledger
from dvre.wallet import parse_address

from conftest import GENESIS, WINDOW_FROM, WINDOW_TO, wallet_of

OPERATOR = wallet_of(900).address


def make_chain(**config):
    ledger = Ledger(calibrated_schedule(), genesis_time=GENESIS, config=config)
    factory = ledger.build_and_submit(
        OPERATOR, DEPLOY, None, "UserMetaFactory", b"").contract_id
    policy = ledger.build_and_submit(
        OPERATOR, DEPLOY, None, "PolicyManager",
        enc_bytes(parse_address(factory))).contract_id
    return ledger, factory, policy


def register(ledger, factory, wallet, username="user"):
    profile = UserProfile(public_address=wallet.address, username=username,
                          organization="UvA", country="NL")
    receipt = ledger.build_and_submit(wallet.address, CALL, factory,
                                      "createUserContract",
                                      encode_user_profile(profile))
    assert receipt.status == "success", receipt.revert_reason
    return receipt


def make_group(ledger, policy, owner, name="DataSharing"):
    details = ContractDetails(group_name=name, group_owner_address=owner.address,
                              permissions="read",
                              organizations=("UvA", "UiS", "UPV"),
                              countries=("NL", "NO", "ES"))
    receipt = ledger.build_and_submit(owner.address, CALL, policy,
                                      "createGroupContract",
                                      encode_contract_details(details))
    assert receipt.status == "success", receipt.revert_reason
    return receipt.contract_id


# --- identity ----------------------------------------------------------------

def test_register_and_lookup():
    ledger, factory, _ = make_chain()
    alice = wallet_of(1)
    receipt = register(ledger, factory, alice, "alice")
    assert receipt.contract_id
    assert ledger.contract_kind(receipt.contract_id) == "UserMetadata"
    profile = queries.get_user(ledger, factory, alice.address)
    assert profile.username == "alice"
    assert profile.public_address == alice.address
    assert queries.is_registered(ledger, factory, alice.address)
    assert not queries.is_registered(ledger, factory, wallet_of(2).address)


def test_register_requires_matching_sender():
    ledger, factory, _ = make_chain()
    alice, bob = wallet_of(1), wallet_of(2)
    profile = UserProfile(public_address=alice.address, username="alice",
                          organization="UvA", country="NL")
    receipt = ledger.build_and_submit(bob.address, CALL, factory,
                                      "createUserContract",
                                      encode_user_profile(profile))
    assert receipt.status == "reverted"
    assert isinstance(receipt.revert_error, AddressMismatch)


def test_double_registration_reverts():
    ledger, factory, _ = make_chain()
    alice = wallet_of(1)
    register(ledger, factory, alice)
    profile = UserProfile(public_address=alice.address, username="again",
                          organization="UvA", country="NL")
    receipt = ledger.build_and_submit(alice.address, CALL, factory,
                                      "createUserContract",
                                      encode_user_profile(profile))
    assert receipt.status == "reverted"
    assert isinstance(receipt.revert_error, AlreadyRegistered)


def test_lookup_unregistered_raises():
    ledger, factory, _ = make_chain()
    with pytest.raises(NotRegistered):
        queries.get_user(ledger, factory, wallet_of(5).address)


# --- group creation ----------------------------------------------------------

def test_group_creation_and_listing():
    ledger, factory, policy = make_chain()
    alice = wallet_of(1)
    register(ledger, factory, alice)
    group_id = make_group(ledger, policy, alice)
    assert ledger.contract_kind(group_id) == "GroupContract"
    listed = queries.list_groups(ledger, policy)
    assert [gid for gid, _ in listed] == [group_id]
    details = queries.group_details(ledger, group_id)
    assert details.group_name == "DataSharing"
    assert details.organizations == ("UvA", "UiS", "UPV")


def test_group_creation_requires_registration():
    ledger, _, policy = make_chain()
    ghost = wallet_of(9)
    details = ContractDetails(group_name="G", group_owner_address=ghost.address,
                              permissions="", organizations=(), countries=())
    receipt = ledger.build_and_submit(ghost.address, CALL, policy,
                                      "createGroupContract",
                                      encode_contract_details(details))
    assert receipt.status == "reverted"
    assert isinstance(receipt.revert_error, NotRegistered)


def test_group_creation_rejects_foreign_owner():
    ledger, factory, policy = make_chain()
    alice, bob = wallet_of(1), wallet_of(2)
    register(ledger, factory, alice)
    register(ledger, factory, bob, "bob")
    details = ContractDetails(group_name="G", group_owner_address=bob.address,
                              permissions="", organizations=(), countries=())
    receipt = ledger.build_and_submit(alice.address, CALL, policy,
                                      "createGroupContract",
                                      encode_contract_details(details))
    assert receipt.status == "reverted"
    assert isinstance(receipt.revert_error, OwnerMismatch)


def test_creation_events():
    ledger, factory, policy = make_chain()
    alice = wallet_of(1)
    user_receipt = register(ledger, factory, alice)
    assert [e.message for e in user_receipt.events] == ["User contract created"]
    details = ContractDetails(group_name="G", group_owner_address=alice.address,
                              permissions="", organizations=(), countries=())
    group_receipt = ledger.build_and_submit(alice.address, CALL, policy,
                                            "createGroupContract",
                                            encode_contract_details(details))
    assert [e.message for e in group_receipt.events] == ["Group contract created"]


# --- membership --------------------------------------------------------------

def setup_group():
    ledger, factory, policy = make_chain()
    alice, bob = wallet_of(1), wallet_of(2)
    register(ledger, factory, alice, "alice")
    register(ledger, factory, bob, "bob")
    group_id = make_group(ledger, policy, alice)
    return ledger, group_id, alice, bob


def associate(ledger, group_id, sender, entries):
    return ledger.build_and_submit(sender.address, CALL, group_id,
                                   "associateUsersToGroup",
                                   encode_user_access_list(entries))


def test_associate_users_success_event_text():
    ledger, group_id, alice, bob = setup_group()
    receipt = associate(ledger, group_id, alice, [
        UserAccess(eoa_address=bob.address, access_from=WINDOW_FROM,
                   access_to=WINDOW_TO)])
    assert receipt.status == "success"
    assert [e.message for e in receipt.events] == [
        "Users successfully added to the group"]
    members = queries.group_members(ledger, group_id)
    assert len(members) == 1
    assert members[0].eoa_address == bob.address
    assert (members[0].access_from, members[0].access_to) == (WINDOW_FROM, WINDOW_TO)


def test_associate_rejects_non_owner():
    ledger, group_id, _, bob = setup_group()
    receipt = associate(ledger, group_id, bob, [
        UserAccess(eoa_address=bob.address, access_from=0)])
    assert receipt.status == "reverted"
    assert receipt.revert_reason == "Only group owner can call this function"
    assert isinstance(receipt.revert_error, NotGroupOwner)


def test_reverted_call_leaves_no_trace():
    ledger, group_id, _, bob = setup_group()
    root_before = ledger.state_root()
    receipt = associate(ledger, group_id, bob, [
        UserAccess(eoa_address=bob.address, access_from=0)])
    assert receipt.status == "reverted"
    assert receipt.events == ()
    assert queries.group_members(ledger, group_id) == []
    # the failed tx is still on the ledger (nonce spent, receipt recorded)
    assert ledger.state_root() != root_before
    assert ledger.next_nonce(bob.address) == 2  # register + failed call


def test_window_must_be_ordered():
    ledger, group_id, alice, bob = setup_group()
    receipt = associate(ledger, group_id, alice, [
        UserAccess(eoa_address=bob.address, access_from=10, access_to=5)])
    assert receipt.status == "reverted"
    assert isinstance(receipt.revert_error, InvalidWindow)


def test_access_window_is_inclusive():
    ledger, group_id, alice, bob = setup_group()
    associate(ledger, group_id, alice, [
        UserAccess(eoa_address=bob.address, access_from=WINDOW_FROM,
                   access_to=WINDOW_TO)])
    check = lambda at: queries.check_access(ledger, group_id, bob.address, at)
    assert not check(WINDOW_FROM - 1)
    assert check(WINDOW_FROM)
    assert check(WINDOW_TO)
    assert not check(WINDOW_TO + 1)


def test_owner_always_has_access():
    ledger, group_id, alice, _ = setup_group()
    assert queries.check_access(ledger, group_id, alice.address, 0)
    assert queries.check_access(ledger, group_id, alice.address, 2**62)


def test_open_ended_window_runs_forever():
    ledger, group_id, alice, bob = setup_group()
    associate(ledger, group_id, alice, [
        UserAccess(eoa_address=bob.address, access_from=WINDOW_FROM)])
    members = queries.group_members(ledger, group_id)
    assert members[0].access_to == UNLIMITED
    assert queries.check_access(ledger, group_id, bob.address, 2**62)


def test_set_user_access_overwrites():
    ledger, group_id, alice, bob = setup_group()
    associate(ledger, group_id, alice, [
        UserAccess(eoa_address=bob.address, access_from=WINDOW_FROM,
                   access_to=WINDOW_TO)])
    receipt = ledger.build_and_submit(
        alice.address, CALL, group_id, "setUserAccess",
        encode_user_access(UserAccess(eoa_address=bob.address,
                                      access_from=0, access_to=5)))
    assert receipt.status == "success"
    assert [e.message for e in receipt.events] == ["User access updated"]
    members = queries.group_members(ledger, group_id)
    assert len(members) == 1
    assert (members[0].access_from, members[0].access_to) == (0, 5)


# --- files -------------------------------------------------------------------

def add_files(ledger, group_id, sender, entries, now=None):
    return ledger.build_and_submit(sender.address, CALL, group_id,
                                   "addFilesToGroup",
                                   encode_file_list(entries), now=now)


def test_owner_shares_file_with_sic_event():
    ledger, group_id, alice, _ = setup_group()
    receipt = add_files(ledger, group_id, alice, [
        FileDetails(ipfs_hash="dvre1-" + "00" * 32, file_name="#binary#mask.png")])
    assert receipt.status == "success"
    # one event per file, historical spelling preserved
    assert [e.message for e in receipt.events] == [
        "Files successfullly shared in the group"]
    files = queries.list_group_files(ledger, group_id, alice.address, GENESIS)
    assert files[0].file_name == "#binary#mask.png"
    assert files[0].added_by == alice.address
    assert files[0].added_at == GENESIS


def test_event_per_file():
    ledger, group_id, alice, _ = setup_group()
    entries = [FileDetails(ipfs_hash=f"dvre1-{i:064x}", file_name=f"f{i}.dat")
               for i in range(3)]
    receipt = add_files(ledger, group_id, alice, entries)
    assert len(receipt.events) == 3
    assert {e.message for e in receipt.events} == {
        "Files successfullly shared in the group"}


def test_active_member_may_share():
    ledger, group_id, alice, bob = setup_group()
    associate(ledger, group_id, alice, [
        UserAccess(eoa_address=bob.address, access_from=WINDOW_FROM,
                   access_to=WINDOW_TO)])
    ledger.set_time(WINDOW_FROM + 10)
    receipt = add_files(ledger, group_id, bob, [
        FileDetails(ipfs_hash="dvre1-" + "11" * 32, file_name="data.csv")])
    assert receipt.status == "success"


def test_outsider_cannot_share_by_default():
    ledger, group_id, _, bob = setup_group()
    receipt = add_files(ledger, group_id, bob, [
        FileDetails(ipfs_hash="dvre1-" + "22" * 32, file_name="x")])
    assert receipt.status == "reverted"
    assert isinstance(receipt.revert_error, NotMember)


def test_expired_member_cannot_share():
    ledger, group_id, alice, bob = setup_group()
    associate(ledger, group_id, alice, [
        UserAccess(eoa_address=bob.address, access_from=WINDOW_FROM,
                   access_to=WINDOW_TO)])
    ledger.set_time(WINDOW_TO + 1)
    receipt = add_files(ledger, group_id, bob, [
        FileDetails(ipfs_hash="dvre1-" + "33" * 32, file_name="late.txt")])
    assert receipt.status == "reverted"
    assert isinstance(receipt.revert_error, NotMember)


def test_relaxed_mode_lets_anyone_share_but_still_blocks_duplicates():
    config = {"paper_faithful_add_files": True}
    ledger = Ledger(calibrated_schedule(), genesis_time=GENESIS, config=config)
    factory = ledger.build_and_submit(OPERATOR, DEPLOY, None,
                                      "UserMetaFactory", b"").contract_id
    policy = ledger.build_and_submit(OPERATOR, DEPLOY, None, "PolicyManager",
                                     enc_bytes(parse_address(factory))).contract_id
    alice, mallory = wallet_of(1), wallet_of(66)
    register(ledger, factory, alice)
    group_id = make_group(ledger, policy, alice)
    receipt = add_files(ledger, group_id, mallory, [
        FileDetails(ipfs_hash="dvre1-" + "aa" * 32, file_name="anyone.txt")])
    assert receipt.status == "success"
    again = add_files(ledger, group_id, mallory, [
        FileDetails(ipfs_hash="dvre1-" + "aa" * 32, file_name="again.txt")])
    assert again.status == "reverted"
    assert isinstance(again.revert_error, DuplicateHash)


def test_duplicate_hash_within_one_call():
    ledger, group_id, alice, _ = setup_group()
    entry = FileDetails(ipfs_hash="dvre1-" + "bb" * 32, file_name="twice.txt")
    receipt = add_files(ledger, group_id, alice, [entry, entry])
    assert receipt.status == "reverted"
    assert isinstance(receipt.revert_error, DuplicateHash)
    # whole call rolled back: not even the first copy was stored
    assert queries.list_group_files(ledger, group_id, alice.address, GENESIS) == []


def test_file_listing_requires_access():
    from dvre.contracts.base import AccessDenied
    ledger, group_id, alice, bob = setup_group()
    add_files(ledger, group_id, alice, [
        FileDetails(ipfs_hash="dvre1-" + "cc" * 32, file_name="private.txt")])
    with pytest.raises(AccessDenied):
        queries.list_group_files(ledger, group_id, bob.address, GENESIS)


# --- time parsing ------------------------------------------------------------

def test_parse_time_point_forms():
    assert parse_time_point(1_711_497_600) == WINDOW_FROM
    assert parse_time_point("2024-03-27") == WINDOW_FROM
    assert parse_time_point("2024-03-29", end_of_day=True) == WINDOW_TO
    assert parse_time_point("2024-03-27T00:00:00Z") == WINDOW_FROM
    assert parse_time_point("2024-03-27T01:30:00+01:30") == WINDOW_FROM


def test_parse_access_window_day_dates_expand_inclusive():
    start, end = parse_access_window("2024-03-27", "2024-03-29")
    assert (start, end) == (WINDOW_FROM, WINDOW_TO)
    start, end = parse_access_window("2024-03-27", None)
    assert (start, end) == (WINDOW_FROM, UNLIMITED)


def test_parse_time_point_rejects_junk():
    for junk in ("yesterday", "03/27/2024", "", "2024-13-40"):
        with pytest.raises(ValueError):
            parse_time_point(junk)
