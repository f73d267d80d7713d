"""Threshold key network: sharing, conditions, bundles, nodes, flows."""

from .acc import (AllOf, AnyOf, BadCondition, Condition, GroupMember, IsOwner,
                  TimeWindow, evaluate, parse_canonical, to_canonical)
from .bundle import BundleMeta, MalformedBundle, build_bundle, open_bundle
from .client import (ChainMismatch, NetworkParams, UploadReceipt,
                     decrypt_file_and_download, decrypt_with_authsig,
                     encrypt_file_and_upload, encrypt_for_owner)
from .nodes import (DECRYPT_PREFIX, Denial, KeyNode, KeyNetwork, NodeUnavailable,
                    ShareRequest, UnknownKeyId, decrypt_challenge)
from .shamir import (MAX_SHARES, PRIME, BadThreshold, InsufficientShares,
                     KeyShare, MixedKeyIds, combine_shares, random_secret,
                     split_secret)

__all__ = [
    "AllOf", "AnyOf", "BadCondition", "BadThreshold", "BundleMeta",
    "ChainMismatch", "Condition", "DECRYPT_PREFIX", "Denial", "GroupMember",
    "InsufficientShares", "IsOwner", "KeyNetwork", "KeyNode", "KeyShare",
    "MalformedBundle", "MAX_SHARES", "MixedKeyIds", "NetworkParams",
    "NodeUnavailable", "PRIME", "ShareRequest", "TimeWindow", "UnknownKeyId",
    "UploadReceipt", "build_bundle", "combine_shares", "decrypt_challenge",
    "decrypt_file_and_download", "decrypt_with_authsig", "encrypt_file_and_upload",
    "encrypt_for_owner", "evaluate", "open_bundle", "parse_canonical",
    "random_secret", "split_secret", "to_canonical",
]
