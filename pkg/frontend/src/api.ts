// Typed client for the node's HTTP surface. Every request the UI makes
// goes through here, and only endpoints documented by the server exist;
// authorization always happens server-side.

export interface Session {
  token: string;
  address: string;
  expires_at: number;
}

export interface UserProfile {
  public_address: string;
  username: string;
  organization: string;
  country: string;
}

export interface EventOut {
  contract: string;
  name: string;
  message: string;
}

export interface Receipt {
  tx_hash: string;
  status: string;
  gas_used: number;
  events: EventOut[];
  block_height: number;
  block_time: number;
}

export interface GroupSummary {
  group_id: string;
  group_name: string;
  group_owner_address: string;
  permissions: string;
  organizations: string[];
  countries: string[];
}

export interface GroupDraft {
  group_name: string;
  permissions: string;
  organizations: string[];
  countries: string[];
}

export interface MemberGrant {
  eoa_address: string;
  access_from: number | string;
  access_to?: number | string;
}

export interface Member {
  eoa_address: string;
  access_from: number;
  access_to: number;
}

export interface FileRecord {
  ipfs_hash: string;
  file_name: string;
  added_by: string;
  added_at: number;
}

export interface AssetMeta {
  cid: string;
  version: number;
  file_name: string;
  content_length: number;
  acc: string;
  chain: string;
  key_id: string;
  n: number;
  t: number;
  owner: string;
  created_at: number;
}

export class ApiError extends Error {
  constructor(public status: number, public detail: string) {
    super(detail);
  }
}

async function raiseForStatus(response: Response): Promise<void> {
  if (response.ok) return;
  let detail = `request failed with ${response.status}`;
  try {
    const body = await response.json();
    if (typeof body.detail === "string") detail = body.detail;
  } catch {
    // non-JSON error body, keep the generic message
  }
  throw new ApiError(response.status, detail);
}

export class ApiClient {
  constructor(private base: string, private token: string | null = null) {}

  setToken(token: string | null): void {
    this.token = token;
  }

  private headers(extra: Record<string, string> = {}): Record<string, string> {
    const out: Record<string, string> = { ...extra };
    if (this.token) out["Authorization"] = `Bearer ${this.token}`;
    return out;
  }

  private async getJson<T>(path: string): Promise<T> {
    const response = await fetch(this.base + path, { headers: this.headers() });
    await raiseForStatus(response);
    return response.json();
  }

  private async postJson<T>(path: string, body: unknown): Promise<T> {
    const response = await fetch(this.base + path, {
      method: "POST",
      headers: this.headers({ "Content-Type": "application/json" }),
      body: JSON.stringify(body),
    });
    await raiseForStatus(response);
    return response.json();
  }

  challenge(): Promise<{ challenge: string }> {
    return this.postJson("/auth/challenge", {});
  }

  login(signedMessage: string, signature: string, address: string): Promise<Session> {
    return this.postJson("/auth/login", {
      signed_message: signedMessage,
      signature,
      address,
    });
  }

  register(profile: { username: string; organization: string; country: string }):
      Promise<{ user_contract: string; receipt: Receipt }> {
    return this.postJson("/users", profile);
  }

  getUser(address: string): Promise<UserProfile> {
    return this.getJson(`/users/${address}`);
  }

  listGroups(): Promise<GroupSummary[]> {
    return this.getJson("/groups");
  }

  createGroup(draft: GroupDraft): Promise<{ group_id: string; receipt: Receipt }> {
    return this.postJson("/groups", draft);
  }

  addMembers(groupId: string, grants: MemberGrant[]):
      Promise<{ members: Member[]; receipt: Receipt }> {
    return this.postJson(`/groups/${groupId}/members`, grants);
  }

  listFiles(groupId: string): Promise<FileRecord[]> {
    return this.getJson(`/groups/${groupId}/files`);
  }

  async uploadAsset(groupId: string, fileName: string, content: Blob):
      Promise<{ cid: string; file_name: string; size: number; receipt: Receipt }> {
    const form = new FormData();
    form.append("group_id", groupId);
    form.append("file", content, fileName);
    const response = await fetch(this.base + "/assets", {
      method: "POST",
      headers: this.headers(),
      body: form,
    });
    await raiseForStatus(response);
    return response.json();
  }

  assetMeta(cid: string): Promise<AssetMeta> {
    return this.getJson(`/assets/${cid}/meta`);
  }

  async downloadAsset(cid: string, signedMessage: string, signature: string):
      Promise<{ fileName: string; content: Blob }> {
    const response = await fetch(this.base + `/assets/${cid}`, {
      headers: this.headers({
        "X-Signed-Message": encodeURIComponent(signedMessage),
        "X-Signature": signature,
      }),
    });
    await raiseForStatus(response);
    const fileName = response.headers.get("X-File-Name") ?? cid;
    return { fileName: decodeURIComponent(fileName), content: await response.blob() };
  }

  gasReport(preset?: string): Promise<Record<string, unknown>> {
    const query = preset ? `?preset=${preset}` : "";
    return this.getJson(`/gas/report${query}`);
  }

  advanceTime(timestamp: number | string): Promise<{ block_time: number }> {
    return this.postJson("/admin/time", { timestamp });
  }
}
