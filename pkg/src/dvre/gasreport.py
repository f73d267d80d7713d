"""Gas study harness: measure every deploy and call under a schedule.

Runs a fixed scenario on a throwaway ledger: deploy each contract kind,
then exercise each fixed function once, recording receipt gas.  The
scenario is deterministic, so the numbers are too.  The report carries the
raw tables, the two headline deployment gaps, the cost ratios of the two
creating calls against the flat call estimate, and the truth values of the
ordering claims the numbers are supposed to support.
"""

from __future__ import annotations

from statistics import median

from .codec import enc_bytes
from .contracts import codecs
from .contracts.types import ContractDetails, FileDetails, UserAccess, UserProfile
from .gas import PRESETS, GasSchedule
from .ledger import CALL, DEPLOY, Ledger, Transaction
from .wallet import generate_wallet, parse_address

# Fixed scenario identities and payloads: the study must be reproducible.
_STUDY_SEED = bytes.fromhex(
    "5716c1e4923d9f9b0bb74786a17b7e6ac4ec1bfc1b376ca14dcdd9ab83a1e973")

DEPLOY_ORDER = ("PolicyManager", "UserMetaFactory", "GroupContract", "UserMetadata")
CALL_ORDER = ("createUserContract", "createGroupContract",
              "associateUsersToGroup", "addFilesToGroup", "setUserAccess")
CREATE_CALLS = ("createUserContract", "createGroupContract")


def _scenario_payloads(owner: str) -> dict[str, bytes]:
    profile = UserProfile(public_address=owner, username="gas-study",
                          organization="UvA", country="Netherlands")
    details = ContractDetails(group_name="DataSharing", group_owner_address=owner,
                              permissions="Full Access",
                              organizations=("UvA", "UiS", "UPV"),
                              countries=("Netherlands", "Norway", "Spain"))
    member = UserAccess(eoa_address=owner, access_from=1_711_497_600,
                        access_to=1_711_756_799)
    entry = FileDetails(ipfs_hash="dvre1-" + "00" * 32, file_name="#binary#mask.png")
    return {
        "profile": codecs.encode_user_profile(profile),
        "details": codecs.encode_contract_details(details),
        "members": codecs.encode_user_access_list([member]),
        "member": codecs.encode_user_access(member),
        "files": codecs.encode_file_list([entry]),
    }


def run_study(schedule: GasSchedule) -> dict:
    """Execute the full scenario under a schedule; returns measured gas."""
    wallet = generate_wallet(_STUDY_SEED)
    ledger = Ledger(schedule, genesis_time=1_711_411_200)
    payloads = _scenario_payloads(wallet.address)

    def submit(kind: str, target: str | None, name: str, payload: bytes):
        tx = Transaction(sender=wallet.address, kind=kind, target=target,
                         function_name=name, payload=payload,
                         nonce=ledger.next_nonce(wallet.address))
        receipt = ledger.submit_tx(tx)
        assert receipt.status == "success", f"{name}: {receipt.revert_reason}"
        return receipt

    deploy_gas: dict[str, int] = {}
    factory = submit(DEPLOY, None, "UserMetaFactory", b"")
    deploy_gas["UserMetaFactory"] = factory.gas_used
    manager = submit(DEPLOY, None, "PolicyManager",
                     enc_bytes(parse_address(factory.contract_id)))
    deploy_gas["PolicyManager"] = manager.gas_used
    group_direct = submit(DEPLOY, None, "GroupContract", payloads["details"])
    deploy_gas["GroupContract"] = group_direct.gas_used
    user_direct = submit(DEPLOY, None, "UserMetadata", payloads["profile"])
    deploy_gas["UserMetadata"] = user_direct.gas_used

    call_gas: dict[str, int] = {}
    register = submit(CALL, factory.contract_id, "createUserContract",
                      payloads["profile"])
    call_gas["createUserContract"] = register.gas_used
    create_group = submit(CALL, manager.contract_id, "createGroupContract",
                          payloads["details"])
    call_gas["createGroupContract"] = create_group.gas_used
    group_id = create_group.contract_id
    call_gas["associateUsersToGroup"] = submit(
        CALL, group_id, "associateUsersToGroup", payloads["members"]).gas_used
    call_gas["addFilesToGroup"] = submit(
        CALL, group_id, "addFilesToGroup", payloads["files"]).gas_used
    call_gas["setUserAccess"] = submit(
        CALL, group_id, "setUserAccess", payloads["member"]).gas_used

    return {"deploy": deploy_gas, "functions": call_gas}


def build_report(preset: str) -> dict:
    """Run the study under a preset and attach derived claims."""
    if preset not in PRESETS:
        raise ValueError(f"unknown gas preset: {preset!r}")
    schedule = PRESETS[preset]()
    measured = run_study(schedule)
    deploy, calls = measured["deploy"], measured["functions"]

    plain_calls = [name for name in CALL_ORDER if name not in CREATE_CALLS]
    plain_median = median(calls[name] for name in plain_calls)
    deltas = {
        "PolicyManager-UserMetaFactory": deploy["PolicyManager"] - deploy["UserMetaFactory"],
        "GroupContract-UserMetadata": deploy["GroupContract"] - deploy["UserMetadata"],
    }
    ratios = {
        name: round(calls[name] / plain_median, 2) for name in CREATE_CALLS
    }
    deploy_ranked = sorted(deploy, key=deploy.get, reverse=True)
    ordering = {
        "deploy_order": deploy_ranked,
        "deploy_order_expected": deploy_ranked == list(DEPLOY_ORDER),
        "create_calls_dominate": all(calls[name] >= 5 * plain_median
                                     for name in CREATE_CALLS),
    }
    return {
        "preset": preset,
        "mode": schedule.mode,
        "deploy": {name: deploy[name] for name in DEPLOY_ORDER},
        "functions": {name: calls[name] for name in CALL_ORDER},
        "deltas": deltas,
        "create_call_ratios": ratios,
        "ordering": ordering,
    }
