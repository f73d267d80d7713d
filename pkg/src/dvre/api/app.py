"""HTTP face of a node: wallet login, group workflows, encrypted assets.

Sessions ride on wallet signatures: a client fetches a single-use
challenge, signs it, and trades the signature for a bearer token.  Every
mutating endpoint submits exactly one ledger transaction; reverted guard
checks surface as 403 with the revert reason.  Asset downloads never skip
the share-request protocol: the caller signs the per-key challenge and the
quorum is gathered within the request.
"""

from __future__ import annotations

import secrets
import threading
import time
import urllib.parse
from dataclasses import dataclass

from fastapi import Depends, FastAPI, Form, Header, Request, Response, UploadFile
from fastapi.exceptions import HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from ..contracts import (AccessDenied, ContractDetails, ContractRevert,
                         FileDetails, NotRegistered, UnknownGroup, UserAccess,
                         UserProfile)
from ..contracts.types import parse_access_window, parse_time_point
from ..errors import DvreError
from ..gas import PRESETS
from ..keynet import BadCondition, ChainMismatch, GroupMember, MalformedBundle
from ..keynet import parse_canonical as parse_acc
from ..keynet.nodes import UnknownKeyId
from ..keynet.shamir import BadThreshold, InsufficientShares, MixedKeyIds
from ..ledger import Receipt, TimeRegression
from ..node import DvreNode
from ..store import (Cid, IntegrityFailure, NotFound, QuotaExceededBytes,
                     QuotaExceededFiles)
from ..wallet import (AuthSig, ChallengeMismatch, SignatureInvalid,
                      make_challenge, verify_auth)
from . import schemas

CHALLENGE_TTL = 600


@dataclass
class Session:
    token: str
    address: str
    expires_at: int


class AuthState:
    """Single-use challenges and bearer sessions, with expiry."""

    def __init__(self, session_ttl: int):
        self.session_ttl = session_ttl
        self._challenges: dict[str, float] = {}
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def issue_challenge(self) -> str:
        challenge = make_challenge()
        with self._lock:
            now = time.time()
            self._challenges = {c: t for c, t in self._challenges.items()
                                if now - t < CHALLENGE_TTL}
            self._challenges[challenge] = now
        return challenge

    def consume_challenge(self, challenge: str) -> bool:
        with self._lock:
            issued = self._challenges.pop(challenge, None)
        return issued is not None and time.time() - issued < CHALLENGE_TTL

    def create_session(self, address: str) -> Session:
        session = Session(token=secrets.token_bytes(32).hex(), address=address,
                          expires_at=int(time.time()) + self.session_ttl)
        with self._lock:
            self._sessions[session.token] = session
        return session

    def lookup(self, token: str) -> Session | None:
        with self._lock:
            session = self._sessions.get(token)
        if session is None or session.expires_at <= time.time():
            return None
        return session


def _receipt_out(receipt: Receipt) -> schemas.ReceiptOut:
    return schemas.ReceiptOut(
        tx_hash="0x" + receipt.tx_hash.hex(),
        status=receipt.status,
        gas_used=receipt.gas_used,
        events=[schemas.EventOut(contract=e.contract, name=e.name, message=e.message)
                for e in receipt.events],
        block_height=receipt.block_height,
        block_time=receipt.block_time,
    )


def _error_handlers(app: FastAPI) -> None:
    statuses: list[tuple[type, int]] = [
        (ChallengeMismatch, 401),
        (SignatureInvalid, 401),
        (ContractRevert, 403),
        (AccessDenied, 403),
        (UnknownGroup, 404),
        (NotFound, 404),
        (UnknownKeyId, 404),
        (QuotaExceededFiles, 507),
        (QuotaExceededBytes, 507),
        (TimeRegression, 409),
        (IntegrityFailure, 502),
        (BadCondition, 422),
        (MalformedBundle, 422),
        (ChainMismatch, 422),
        (BadThreshold, 422),
        (InsufficientShares, 403),
        (MixedKeyIds, 502),
    ]

    def make_handler(status: int):
        async def handler(request: Request, exc: Exception):
            return JSONResponse(status_code=status, content={"detail": str(exc)})
        return handler

    for error_type, status in statuses:
        app.add_exception_handler(error_type, make_handler(status))
    app.add_exception_handler(DvreError, make_handler(400))
    app.add_exception_handler(ValueError, make_handler(422))


def create_app(node: DvreNode) -> FastAPI:
    app = FastAPI(title="dvre node", version="0.1.0")
    app.add_middleware(CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
                       allow_headers=["*"])
    auth = AuthState(session_ttl=node.config.session_ttl)
    app.state.node = node
    app.state.auth = auth
    _error_handlers(app)

    def current_session(authorization: str | None = Header(default=None)) -> Session:
        if not authorization or not authorization.lower().startswith("bearer "):
            raise HTTPException(status_code=401, detail="missing bearer token")
        session = auth.lookup(authorization.split(" ", 1)[1].strip())
        if session is None:
            raise HTTPException(status_code=401, detail="session expired or unknown")
        return session

    # --- auth ---------------------------------------------------------------

    @app.post("/auth/challenge", response_model=schemas.ChallengeOut)
    def post_challenge():
        return schemas.ChallengeOut(challenge=auth.issue_challenge())

    @app.post("/auth/login", response_model=schemas.SessionOut)
    def post_login(body: schemas.LoginIn):
        if not auth.consume_challenge(body.signed_message):
            raise HTTPException(status_code=409,
                                detail="challenge unknown, expired, or already used")
        signature = bytes.fromhex(body.signature.removeprefix("0x"))
        auth_sig = AuthSig(signed_message=body.signed_message.encode("utf-8"),
                           signature=signature, address=body.address)
        address = verify_auth(auth_sig, body.signed_message)
        session = auth.create_session(address)
        return schemas.SessionOut(token=session.token, address=session.address,
                                  expires_at=session.expires_at)

    # --- users --------------------------------------------------------------

    @app.post("/users", response_model=schemas.UserCreatedOut, status_code=201)
    def post_user(body: schemas.UserIn, session: Session = Depends(current_session)):
        profile = UserProfile(
            public_address=body.public_address or session.address,
            username=body.username, organization=body.organization,
            country=body.country)
        user_contract, receipt = node.register_user(profile,
                                                    sender=session.address)
        return schemas.UserCreatedOut(user_contract=user_contract,
                                      receipt=_receipt_out(receipt))

    @app.get("/users/{address}", response_model=schemas.UserOut)
    def get_user(address: str):
        try:
            profile = node.get_user(address)
        except NotRegistered as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from None
        return schemas.UserOut(**profile.__dict__)

    # --- groups -------------------------------------------------------------

    @app.post("/groups", response_model=schemas.GroupCreatedOut, status_code=201)
    def post_group(body: schemas.GroupIn, session: Session = Depends(current_session)):
        details = ContractDetails(
            group_name=body.group_name,
            group_owner_address=body.group_owner_address or session.address,
            permissions=body.permissions,
            organizations=tuple(body.organizations),
            countries=tuple(body.countries))
        group_id, receipt = node.create_group(details, sender=session.address)
        return schemas.GroupCreatedOut(group_id=group_id,
                                       receipt=_receipt_out(receipt))

    @app.get("/groups", response_model=list[schemas.GroupOut])
    def get_groups(session: Session = Depends(current_session)):
        return [
            schemas.GroupOut(group_id=group_id, group_name=d.group_name,
                             group_owner_address=d.group_owner_address,
                             permissions=d.permissions,
                             organizations=list(d.organizations),
                             countries=list(d.countries))
            for group_id, d in node.list_groups()
        ]

    @app.post("/groups/{group_id}/members", response_model=schemas.MembersChangedOut)
    def post_members(group_id: str, body: list[schemas.MemberIn],
                     session: Session = Depends(current_session)):
        entries = []
        for member in body:
            start, end = parse_access_window(member.access_from, member.access_to)
            entries.append(UserAccess(eoa_address=member.eoa_address,
                                      access_from=start, access_to=end))
        receipt = node.associate_users(session.address, group_id, entries)
        return schemas.MembersChangedOut(
            members=[schemas.MemberOut(**m.__dict__) for m in node.group_members(group_id)],
            receipt=_receipt_out(receipt))

    @app.post("/groups/{group_id}/files", response_model=schemas.FilesChangedOut)
    def post_files(group_id: str, body: schemas.FilesIn,
                   session: Session = Depends(current_session)):
        entries = [FileDetails(ipfs_hash=f.ipfs_hash, file_name=f.file_name)
                   for f in body.files]
        receipt = node.add_files(session.address, group_id, entries)
        return schemas.FilesChangedOut(
            files=[schemas.FileOut(**f.__dict__)
                   for f in node.list_group_files(group_id, session.address)],
            receipt=_receipt_out(receipt))

    @app.get("/groups/{group_id}/files", response_model=list[schemas.FileOut])
    def get_files(group_id: str, session: Session = Depends(current_session)):
        files = node.list_group_files(group_id, session.address)
        return [schemas.FileOut(**f.__dict__) for f in files]

    # --- assets -------------------------------------------------------------

    @app.post("/assets", response_model=schemas.AssetCreatedOut, status_code=201)
    async def post_asset(file: UploadFile, group_id: str = Form(),
                         acc: str | None = Form(default=None),
                         session: Session = Depends(current_session)):
        content = await file.read()
        if len(content) > node.config.upload_cap:
            raise HTTPException(status_code=413,
                                detail=f"upload exceeds {node.config.upload_cap} bytes")
        condition = parse_acc(acc) if acc else GroupMember(group=group_id)
        file_name = file.filename or "unnamed"
        cid, upload, receipt = node.upload_asset(session.address, file_name,
                                                 content, condition, group_id)
        return schemas.AssetCreatedOut(cid=str(cid), file_name=file_name,
                                       size=upload.size,
                                       receipt=_receipt_out(receipt))

    @app.get("/assets/{cid}/meta", response_model=schemas.AssetMetaOut)
    def get_asset_meta(cid: str, session: Session = Depends(current_session)):
        meta = node.asset_meta(Cid.parse(cid))
        return schemas.AssetMetaOut(cid=cid, version=meta.version,
                                    file_name=meta.file_name,
                                    content_length=meta.content_length,
                                    acc=meta.acc, chain=meta.chain,
                                    key_id=meta.key_id.hex(), n=meta.n, t=meta.t,
                                    owner=meta.owner, created_at=meta.created_at)

    @app.get("/assets/{cid}")
    def get_asset(cid: str,
                  x_signed_message: str | None = Header(default=None),
                  x_signature: str | None = Header(default=None),
                  session: Session = Depends(current_session)):
        if not x_signed_message or not x_signature:
            raise HTTPException(
                status_code=401,
                detail="decrypt requires X-Signed-Message and X-Signature headers "
                       "signing the key challenge from /assets/{cid}/meta")
        try:
            signature = bytes.fromhex(x_signature.removeprefix("0x"))
        except ValueError:
            raise HTTPException(status_code=422, detail="X-Signature is not hex") from None
        auth_sig = AuthSig(
            signed_message=urllib.parse.unquote(x_signed_message).encode("utf-8"),
            signature=signature, address=session.address)
        file_name, plaintext = node.download_asset(Cid.parse(cid), auth_sig)
        quoted = urllib.parse.quote(file_name)
        return Response(
            content=plaintext, media_type="application/octet-stream",
            headers={"Content-Disposition": f"attachment; filename*=UTF-8''{quoted}",
                     "X-File-Name": quoted})

    # --- observability ------------------------------------------------------

    @app.get("/gas/report")
    def get_gas_report(preset: str | None = None):
        chosen = preset or node.config.gas_preset
        if chosen not in PRESETS:
            raise HTTPException(status_code=422, detail=f"unknown preset: {chosen!r}")
        return node.gas_report(chosen)

    @app.post("/admin/time", response_model=schemas.TimeOut)
    def post_time(body: schemas.TimeIn, session: Session = Depends(current_session)):
        if not node.config.allow_time_travel:
            raise HTTPException(status_code=403, detail="clock control is disabled")
        node.set_time(parse_time_point(body.timestamp))
        return schemas.TimeOut(block_time=node.ledger.current_time)

    return app
