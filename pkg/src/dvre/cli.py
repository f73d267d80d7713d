"""Command-line client: every UI flow scriptable against a running node.

Remote commands speak to the HTTP API named by --server or DVRE_SERVER,
signing challenges with the key file named by --keyfile or DVRE_KEYFILE.
The gas study and log replay run locally; they need no server.  Exit
codes distinguish failure classes so shell scripts can branch: 2 for
authentication, 3 for access denial, 4 for quota or size limits, 5 for an
unreachable server, 1 otherwise.
"""

from __future__ import annotations

import json
import sys
import urllib.parse
from pathlib import Path

import click
import httpx

from .config import DEFAULT_PORT
from .gas import PRESETS
from .gasreport import build_report
from .ledger import CorruptLog, Ledger
from .wallet import generate_wallet, load_keyfile, save_keyfile, sign_auth

EXIT_AUTH = 2
EXIT_DENIED = 3
EXIT_QUOTA = 4
EXIT_NETWORK = 5

_STATUS_EXITS = {401: EXIT_AUTH, 409: EXIT_AUTH, 403: EXIT_DENIED,
                 507: EXIT_QUOTA, 413: EXIT_QUOTA}


class CliState:
    def __init__(self, server: str, keyfile: str, output: str):
        self.server = server.rstrip("/")
        self.keyfile = keyfile
        self.output = output


def _fail(message: str, code: int):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _emit(state: CliState, document: dict, table_lines: list[str]):
    if state.output == "json":
        click.echo(json.dumps(document, indent=2, sort_keys=True))
    else:
        for line in table_lines:
            click.echo(line)


def _wallet(state: CliState):
    try:
        return load_keyfile(state.keyfile)
    except FileNotFoundError:
        _fail(f"no key file at {state.keyfile}; run `dvre wallet new` first", EXIT_AUTH)


def _request(state: CliState, method: str, path: str, **kwargs) -> httpx.Response:
    try:
        response = httpx.request(method, state.server + path, timeout=30.0, **kwargs)
    except httpx.HTTPError as exc:
        _fail(f"cannot reach {state.server}: {exc}", EXIT_NETWORK)
    if response.status_code >= 400:
        try:
            detail = response.json().get("detail", response.text)
        except json.JSONDecodeError:
            detail = response.text
        _fail(f"server said {response.status_code}: {detail}",
              _STATUS_EXITS.get(response.status_code, 1))
    return response


def _login(state: CliState) -> tuple[dict, object]:
    wallet = _wallet(state)
    challenge = _request(state, "POST", "/auth/challenge").json()["challenge"]
    auth_sig = sign_auth(wallet, challenge)
    body = {
        "signed_message": challenge,
        "signature": "0x" + auth_sig.signature.hex(),
        "address": wallet.address,
    }
    session = _request(state, "POST", "/auth/login", json=body).json()
    return {"Authorization": f"Bearer {session['token']}"}, wallet


@click.group()
@click.option("--server", "-s", envvar="DVRE_SERVER",
              default=f"http://127.0.0.1:{DEFAULT_PORT}", show_default=True,
              help="Node API base URL.")
@click.option("--keyfile", "-k", envvar="DVRE_KEYFILE",
              default=str(Path.home() / ".dvre" / "key"), show_default=True,
              help="Path of the hex private key file.")
@click.option("--output", "-o", type=click.Choice(["json", "table"]),
              default="table", show_default=True)
@click.pass_context
def main(ctx, server, keyfile, output):
    """Client for a local research-collaboration node."""
    ctx.obj = CliState(server=server, keyfile=keyfile, output=output)


# --- wallet ------------------------------------------------------------------

@main.group()
def wallet():
    """Key management."""


@wallet.command("new")
@click.option("--force", is_flag=True, help="Overwrite an existing key file.")
@click.pass_obj
def wallet_new(state: CliState, force):
    """Generate a key pair and store it in the key file."""
    path = Path(state.keyfile)
    if path.exists() and not force:
        _fail(f"{path} already exists; use --force to overwrite", 1)
    new_wallet = generate_wallet()
    save_keyfile(path, new_wallet)
    _emit(state, {"address": new_wallet.address, "keyfile": str(path)},
          [f"address  {new_wallet.address}", f"keyfile  {path}"])


@wallet.command("address")
@click.pass_obj
def wallet_address(state: CliState):
    """Print the address of the stored key."""
    current = _wallet(state)
    _emit(state, {"address": current.address}, [current.address])


# --- auth and registration ---------------------------------------------------

@main.command()
@click.pass_obj
def login(state: CliState):
    """Prove key ownership to the server and print the session."""
    headers, current = _login(state)
    token = headers["Authorization"].split(" ", 1)[1]
    _emit(state, {"address": current.address, "token": token},
          [f"address  {current.address}", f"token    {token}"])


@main.command()
@click.option("--username", required=True)
@click.option("--organization", default="")
@click.option("--country", default="")
@click.pass_obj
def register(state: CliState, username, organization, country):
    """Register this wallet as a user."""
    headers, current = _login(state)
    body = {"public_address": current.address, "username": username,
            "organization": organization, "country": country}
    result = _request(state, "POST", "/users", json=body, headers=headers).json()
    _emit(state, result,
          [f"user contract  {result['user_contract']}",
           f"gas used       {result['receipt']['gas_used']}"])


# --- groups ------------------------------------------------------------------

@main.group()
def group():
    """Sharing agreements."""


def _split_csv(text: str) -> list[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


@group.command("create")
@click.option("--name", required=True)
@click.option("--permissions", default="")
@click.option("--orgs", default="", help="Comma-separated organizations.")
@click.option("--countries", default="", help="Comma-separated countries.")
@click.pass_obj
def group_create(state: CliState, name, permissions, orgs, countries):
    """Create a group contract owned by this wallet."""
    headers, current = _login(state)
    body = {"group_name": name, "group_owner_address": current.address,
            "permissions": permissions, "organizations": _split_csv(orgs),
            "countries": _split_csv(countries)}
    result = _request(state, "POST", "/groups", json=body, headers=headers).json()
    _emit(state, result,
          [f"group id  {result['group_id']}",
           f"gas used  {result['receipt']['gas_used']}"])


@group.command("add-member")
@click.argument("group_id")
@click.option("--address", required=True, help="Member wallet address.")
@click.option("--from", "access_from", required=True,
              help="Window start: unix seconds, YYYY-MM-DD, or RFC-3339.")
@click.option("--to", "access_to", default=None,
              help="Window end (inclusive); omit for no expiry.")
@click.pass_obj
def group_add_member(state: CliState, group_id, address, access_from, access_to):
    """Grant a member an access window (owner only)."""
    headers, _ = _login(state)
    member = {"eoa_address": address, "access_from": _maybe_int(access_from),
              "access_to": _maybe_int(access_to) if access_to else None}
    result = _request(state, "POST", f"/groups/{group_id}/members",
                      json=[member], headers=headers).json()
    lines = [f"members   {len(result['members'])}",
             f"gas used  {result['receipt']['gas_used']}"]
    lines += [f"  {m['eoa_address']}  [{m['access_from']}, {m['access_to']}]"
              for m in result["members"]]
    _emit(state, result, lines)


def _maybe_int(text: str | None):
    if text is None:
        return None
    try:
        return int(text)
    except ValueError:
        return text


@group.command("share-file")
@click.argument("group_id")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--window-from", default=None,
              help="Also require this decrypt window start.")
@click.option("--window-to", default=None,
              help="Decrypt window end (inclusive).")
@click.pass_obj
def group_share_file(state: CliState, group_id, path, window_from, window_to):
    """Encrypt a file, pin the bundle, and record it in the group."""
    from .contracts.types import parse_access_window
    from .keynet import AllOf, GroupMember, TimeWindow, to_canonical

    headers, _ = _login(state)
    condition = GroupMember(group=group_id)
    if window_from is not None:
        start, end = parse_access_window(_maybe_int(window_from),
                                         _maybe_int(window_to))
        condition = AllOf((condition, TimeWindow(from_time=start, to_time=end)))
    file_path = Path(path)
    result = _request(
        state, "POST", "/assets", headers=headers,
        data={"group_id": group_id, "acc": to_canonical(condition)},
        files={"file": (file_path.name, file_path.read_bytes())}).json()
    _emit(state, result,
          [f"cid       {result['cid']}",
           f"file      {result['file_name']}",
           f"gas used  {result['receipt']['gas_used']}"])


@group.command("list")
@click.argument("group_id", required=False)
@click.pass_obj
def group_list(state: CliState, group_id):
    """List groups, or the files of one group."""
    headers, _ = _login(state)
    if group_id is None:
        groups = _request(state, "GET", "/groups", headers=headers).json()
        lines = [f"{g['group_id']}  {g['group_name']}  owner {g['group_owner_address']}"
                 for g in groups] or ["(no groups)"]
        _emit(state, {"groups": groups}, lines)
    else:
        files = _request(state, "GET", f"/groups/{group_id}/files",
                         headers=headers).json()
        lines = [f"{f['ipfs_hash']}  {f['file_name']}  added {f['added_at']}"
                 for f in files] or ["(no files)"]
        _emit(state, {"files": files}, lines)


# --- assets ------------------------------------------------------------------

@main.group()
def asset():
    """Encrypted bundles."""


@asset.command("get")
@click.argument("cid")
@click.option("--out", "-O", type=click.Path(dir_okay=False), default=None,
              help="Write plaintext here; defaults to the original file name.")
@click.pass_obj
def asset_get(state: CliState, cid, out):
    """Fetch shares, decrypt, and save a bundle's plaintext."""
    from .keynet.nodes import decrypt_challenge

    headers, current = _login(state)
    meta = _request(state, "GET", f"/assets/{cid}/meta", headers=headers).json()
    challenge = decrypt_challenge(bytes.fromhex(meta["key_id"]))
    auth_sig = sign_auth(current, challenge)
    response = _request(
        state, "GET", f"/assets/{cid}", headers={
            **headers,
            "X-Signed-Message": urllib.parse.quote(challenge),
            "X-Signature": "0x" + auth_sig.signature.hex(),
        })
    file_name = urllib.parse.unquote(
        response.headers.get("X-File-Name", meta["file_name"]))
    target = Path(out) if out else Path(Path(file_name).name or "download.bin")
    target.write_bytes(response.content)
    _emit(state, {"cid": cid, "file_name": file_name, "saved_to": str(target),
                  "bytes": len(response.content)},
          [f"saved {len(response.content)} bytes to {target}"])


# --- gas and ledger ----------------------------------------------------------

@main.group()
def gas():
    """Gas schedules and measurements."""


@gas.command("report")
@click.option("--preset", type=click.Choice(sorted(PRESETS)), default="calibrated",
              show_default=True)
@click.pass_obj
def gas_report(state: CliState, preset):
    """Measure deploy and call costs under a schedule preset."""
    report = build_report(preset)
    lines = [f"gas study, {preset} schedule", "", "deployments:"]
    lines += [f"  {kind:<16} {gas_used:>9,}"
              for kind, gas_used in report["deploy"].items()]
    lines.append("functions:")
    lines += [f"  {fn:<22} {gas_used:>9,}"
              for fn, gas_used in report["functions"].items()]
    lines.append("deltas:")
    lines += [f"  {name:<30} {value:>9,}"
              for name, value in report["deltas"].items()]
    lines.append("create-call ratios over flat calls:")
    lines += [f"  {name:<22} {value:>8}x"
              for name, value in report["create_call_ratios"].items()]
    ordering = report["ordering"]
    lines.append(f"deploy order as published: {ordering['deploy_order_expected']}")
    lines.append(f"create calls >= 5x median: {ordering['create_calls_dominate']}")
    _emit(state, report, lines)


@main.group()
def ledger():
    """Ledger maintenance."""


@ledger.command("replay")
@click.argument("log_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--preset", type=click.Choice(sorted(PRESETS)), default="calibrated",
              show_default=True, help="Schedule the log was produced under.")
@click.pass_obj
def ledger_replay(state: CliState, log_path, preset):
    """Rebuild state from a transaction log, verifying every receipt."""
    try:
        replayed = Ledger.replay(log_path, PRESETS[preset]())
    except CorruptLog as exc:
        _fail(f"log does not replay: {exc}", 1)
    document = {
        "height": replayed.height,
        "state_root": replayed.state_root(),
        "contracts": len(replayed.contract_ids()),
        "receipts": len(replayed.receipts),
    }
    _emit(state, document,
          [f"height      {document['height']}",
           f"contracts   {document['contracts']}",
           f"state root  {document['state_root']}"])


# --- server ------------------------------------------------------------------

@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="JSON config file.")
@click.option("--data-dir", default=None)
@click.option("--host", default=None)
@click.option("--port", type=int, default=None)
@click.pass_obj
def serve(state: CliState, config_path, data_dir, host, port):
    """Run a node and its HTTP API in the foreground."""
    import uvicorn

    from .api import create_app
    from .config import load_config
    from .node import DvreNode

    overrides = {}
    if data_dir:
        overrides["data_dir"] = data_dir
    if host:
        overrides["bind_host"] = host
    if port:
        overrides["bind_port"] = port
    config = load_config(config_path, **overrides)
    node = DvreNode(config)
    click.echo(f"operator {node.operator.address}")
    click.echo(f"user directory {node.factory_id}")
    click.echo(f"policy manager {node.policy_manager_id}")
    uvicorn.run(create_app(node), host=config.bind_host, port=config.bind_port,
                log_level="warning")


if __name__ == "__main__":
    main()
