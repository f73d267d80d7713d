"""Composition root: one fully local node wiring every component together.

A node owns the ledger (resumed from its log if one exists), the content
store, the simulated key network, and the two system contracts: the user
directory and the policy manager, deployed by the operator wallet on first
boot.  The facade methods build, submit, and interpret transactions; a
reverted receipt re-raises the typed guard failure that caused it, so
callers deal in exceptions, not receipt spelunking.
"""

from __future__ import annotations

from pathlib import Path

from .codec import enc_bytes
from .config import NodeConfig
from .contracts import (ContractDetails, FileDetails, UserAccess, UserProfile,
                        codecs, queries)
from .gas import PRESETS
from .gasreport import build_report
from .keynet import (KeyNetwork, NetworkParams, decrypt_with_authsig,
                     encrypt_for_owner)
from .ledger import CALL, DEPLOY, Ledger, Receipt
from .store import Cid, ContentStore, Quota
from .keynet.bundle import open_bundle
from .wallet import (AuthSig, Wallet, generate_wallet, load_keyfile, parse_address,
                     save_keyfile, wallet_from_private_key)


class DvreNode:
    """Everything one researcher's desk deployment needs, in process."""

    def __init__(self, config: NodeConfig):
        self.config = config
        data_dir = Path(config.data_dir)
        data_dir.mkdir(parents=True, exist_ok=True)

        if config.gas_preset not in PRESETS:
            raise ValueError(f"unknown gas preset: {config.gas_preset!r}")
        schedule = PRESETS[config.gas_preset]()
        genesis = config.resolved_genesis()
        log_path = data_dir / "ledger.log"
        flags = config.contract_flags()
        if log_path.exists() and log_path.stat().st_size > 0:
            self.ledger = Ledger.resume(log_path, schedule, config=flags,
                                        wall_clock=genesis is None)
        else:
            self.ledger = Ledger(schedule, config=flags, log_path=log_path,
                                 genesis_time=genesis if genesis is not None else 0,
                                 wall_clock=genesis is None)

        self.store = ContentStore(data_dir / "store",
                                  Quota(max_pinned_files=config.quota_files,
                                        max_total_bytes=config.quota_bytes))
        self.network = KeyNetwork(
            config.keynet_n,
            view_source=lambda: (self.ledger, self.ledger.current_time),
            state_dir=data_dir / "keynet")
        self.params = NetworkParams(lit_network=config.lit_network,
                                    chain=config.chain,
                                    n=config.keynet_n, t=config.keynet_t)

        self.operator = self._load_operator(data_dir)
        self.factory_id, self.policy_manager_id = self._bootstrap()

    def _load_operator(self, data_dir: Path) -> Wallet:
        if self.config.operator_key:
            return wallet_from_private_key(bytes.fromhex(
                self.config.operator_key.removeprefix("0x")))
        key_path = data_dir / "operator.key"
        if key_path.exists():
            return load_keyfile(key_path)
        wallet = generate_wallet()
        save_keyfile(key_path, wallet)
        return wallet

    def _bootstrap(self) -> tuple[str, str]:
        """Deploy the system contracts once; find them again on resume."""
        factory_id = policy_id = ""
        for receipt in self.ledger.receipts:
            if receipt.status != "success" or not receipt.contract_id:
                continue
            kind = self.ledger.contract_kind(receipt.contract_id)
            if kind == "UserMetaFactory" and not factory_id:
                factory_id = receipt.contract_id
            elif kind == "PolicyManager" and not policy_id:
                policy_id = receipt.contract_id
        if not factory_id:
            factory_id = self._submit(self.operator.address, DEPLOY, None,
                                      "UserMetaFactory", b"").contract_id
        if not policy_id:
            payload = enc_bytes(parse_address(factory_id))
            policy_id = self._submit(self.operator.address, DEPLOY, None,
                                     "PolicyManager", payload).contract_id
        return factory_id, policy_id

    def _submit(self, sender: str, kind: str, target: str | None,
                function_name: str, payload: bytes) -> Receipt:
        receipt = self.ledger.build_and_submit(sender, kind, target,
                                               function_name, payload)
        if receipt.status == "reverted":
            raise receipt.revert_error
        return receipt

    # --- identity ------------------------------------------------------------

    def register_user(self, profile: UserProfile,
                      sender: str | None = None) -> tuple[str, Receipt]:
        # the contract rejects a sender registering someone else's address,
        # so authenticated callers must pass their own identity here
        payload = codecs.encode_user_profile(profile)
        receipt = self._submit(sender or profile.public_address, CALL,
                               self.factory_id, "createUserContract", payload)
        return receipt.contract_id, receipt

    def get_user(self, address: str) -> UserProfile:
        return queries.get_user(self.ledger, self.factory_id, address)

    def is_registered(self, address: str) -> bool:
        return queries.is_registered(self.ledger, self.factory_id, address)

    # --- groups --------------------------------------------------------------

    def create_group(self, details: ContractDetails,
                     sender: str | None = None) -> tuple[str, Receipt]:
        # same sender discipline as register_user: the contract refuses a
        # group whose claimed owner is not the transaction sender
        payload = codecs.encode_contract_details(details)
        receipt = self._submit(sender or details.group_owner_address, CALL,
                               self.policy_manager_id, "createGroupContract",
                               payload)
        return receipt.contract_id, receipt

    def associate_users(self, sender: str, group_id: str,
                        entries: list[UserAccess]) -> Receipt:
        payload = codecs.encode_user_access_list(entries)
        return self._submit(sender, CALL, group_id, "associateUsersToGroup", payload)

    def set_user_access(self, sender: str, group_id: str,
                        entry: UserAccess) -> Receipt:
        payload = codecs.encode_user_access(entry)
        return self._submit(sender, CALL, group_id, "setUserAccess", payload)

    def add_files(self, sender: str, group_id: str,
                  files: list[FileDetails]) -> Receipt:
        payload = codecs.encode_file_list(files)
        return self._submit(sender, CALL, group_id, "addFilesToGroup", payload)

    def list_groups(self) -> list[tuple[str, ContractDetails]]:
        return queries.list_groups(self.ledger, self.policy_manager_id)

    def group_details(self, group_id: str) -> ContractDetails:
        return queries.group_details(self.ledger, group_id)

    def group_members(self, group_id: str) -> list[UserAccess]:
        return queries.group_members(self.ledger, group_id)

    def check_access(self, group_id: str, address: str,
                     at: int | None = None) -> bool:
        when = self.ledger.current_time if at is None else at
        return queries.check_access(self.ledger, group_id, address, when)

    def list_group_files(self, group_id: str, requester: str,
                         at: int | None = None) -> list[FileDetails]:
        when = self.ledger.current_time if at is None else at
        return queries.list_group_files(self.ledger, group_id, requester, when)

    # --- assets --------------------------------------------------------------

    def upload_asset(self, owner: str, file_name: str, content: bytes,
                     condition, group_id: str | None = None):
        """Encrypt, pin, and optionally register the bundle on the ledger.

        When a group id is given the ledger call and the pin succeed or
        fail together: a revert unpins the fresh bundle before re-raising.
        """
        cid, upload = encrypt_for_owner(
            file_name, content, condition, owner, self.params,
            network=self.network, store=self.store, view=self.ledger,
            created_at=self.ledger.current_time, factory_id=self.factory_id)
        receipt = None
        if group_id is not None:
            entry = FileDetails(ipfs_hash=str(cid), file_name=file_name)
            try:
                receipt = self.add_files(owner, group_id, [entry])
            except Exception:
                self.store.unpin(cid)
                raise
        return cid, upload, receipt

    def download_asset(self, cid: Cid, auth_sig: AuthSig) -> tuple[str, bytes]:
        return decrypt_with_authsig(cid, auth_sig, self.params,
                                    network=self.network, store=self.store)

    def asset_meta(self, cid: Cid):
        meta, _ = open_bundle(self.store.get(cid))
        return meta

    # --- observability -------------------------------------------------------

    def gas_report(self, preset: str | None = None) -> dict:
        return build_report(preset or self.config.gas_preset)

    def set_time(self, timestamp: int) -> None:
        self.ledger.set_time(timestamp)

    def close(self) -> None:
        self.ledger.close()
