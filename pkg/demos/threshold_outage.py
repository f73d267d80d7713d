"""Knock key nodes offline one by one until decryption stops working.

The data key is split 3-of-5, so the owner keeps reading through two
node failures and loses access at the third.
"""

import tempfile
from pathlib import Path

from dvre import DvreNode, load_config
from dvre.contracts.base import AccessDenied
from dvre.contracts.types import ContractDetails, UserProfile
from dvre.keynet import acc
from dvre.keynet.nodes import decrypt_challenge
from dvre.wallet import generate_wallet, sign_auth


def main():
    with tempfile.TemporaryDirectory() as scratch:
        config = load_config(None, data_dir=str(Path(scratch) / "node"))
        node = DvreNode(config)
        owner = generate_wallet()
        node.register_user(UserProfile(public_address=owner.address,
                                       username="owner", organization="UvA",
                                       country="NL"))
        group_id, _ = node.create_group(ContractDetails(
            group_name="Outage", group_owner_address=owner.address,
            permissions="read"))

        cid, _, _ = node.upload_asset(owner.address, "readings.csv",
                                      b"t,value\n0,1\n", acc.IsOwner(group=group_id))
        meta = node.asset_meta(cid)
        print(f"sealed readings.csv as {cid} under a "
              f"{meta.t}-of-{meta.n} key split")

        for failed in range(1, meta.n + 1):
            node.network.set_offline(failed)
            down = sorted(node.network.offline)
            auth = sign_auth(owner, decrypt_challenge(meta.key_id))
            try:
                _, plaintext = node.download_asset(cid, auth)
                print(f"nodes {down} down: decrypted {len(plaintext)} bytes")
            except AccessDenied as refusal:
                print(f"nodes {down} down: {refusal}")
        node.close()


if __name__ == "__main__":
    main()
