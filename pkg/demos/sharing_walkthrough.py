"""Walk one sharing agreement from empty chain to denied download.

Runs fully in-process against a throwaway data directory; prints each
step as it lands on the ledger.
"""

import tempfile
from pathlib import Path

from dvre import DvreNode, load_config
from dvre.contracts.base import AccessDenied
from dvre.contracts.types import (
    ContractDetails,
    UserAccess,
    UserProfile,
    parse_access_window,
    parse_time_point,
)
from dvre.keynet import acc
from dvre.keynet.nodes import decrypt_challenge
from dvre.wallet import generate_wallet, sign_auth


def main():
    with tempfile.TemporaryDirectory() as scratch:
        config = load_config(None, data_dir=str(Path(scratch) / "node"),
                             genesis_time="2024-03-26", allow_time_travel=True)
        node = DvreNode(config)
        print(f"node up, factory {node.factory_id}, policy manager {node.policy_manager_id}")

        alice, bob = generate_wallet(), generate_wallet()
        for wallet, name, org in ((alice, "alice", "UvA"), (bob, "bob", "UiS")):
            _, receipt = node.register_user(UserProfile(
                public_address=wallet.address, username=name,
                organization=org, country="NL"))
            print(f"registered {name} at {wallet.address} (gas {receipt.gas_used:,})")

        group_id, receipt = node.create_group(ContractDetails(
            group_name="DataSharing", group_owner_address=alice.address,
            permissions="read", organizations=("UvA", "UiS"),
            countries=("NL",)))
        print(f"group DataSharing at {group_id} (gas {receipt.gas_used:,})")

        window = parse_access_window("2024-03-27", "2024-03-29")
        node.associate_users(alice.address, group_id,
                             [UserAccess(eoa_address=bob.address,
                                         access_from=window[0],
                                         access_to=window[1])])
        print(f"bob granted access from {window[0]} to {window[1]}")

        content = b"\x89PNG imagine a segmentation mask here"
        cid, upload, _ = node.upload_asset(
            alice.address, "mask.png", content,
            acc.GroupMember(group=group_id), group_id=group_id)
        print(f"mask.png sealed and pinned as {cid} ({upload.size} bytes)")

        def fetch_as(wallet):
            meta = node.asset_meta(cid)
            auth = sign_auth(wallet, decrypt_challenge(meta.key_id))
            return node.download_asset(cid, auth)

        node.set_time(parse_time_point("2024-03-28") + 12 * 3600)
        name, plaintext = fetch_as(bob)
        print(f"inside the window bob reads {name}: {len(plaintext)} bytes, "
              f"intact={plaintext == content}")

        node.set_time(window[1] + 86_400)
        try:
            fetch_as(bob)
        except AccessDenied as denied:
            print(f"one day later the key nodes refuse: {denied}")
        node.close()


if __name__ == "__main__":
    main()
