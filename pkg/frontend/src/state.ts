// Single shared view state. Mutating actions are disabled whenever the
// session is absent or expired; that gate is cosmetic only, the server
// makes every real authorization decision.

import { FileRecord, GroupDraft, GroupSummary, Session, UserProfile } from "./api.js";
import { Wallet } from "./wallet.js";

export interface ViewState {
  wallet: Wallet | null;
  session: Session | null;
  profile: UserProfile | null;
  groups: GroupSummary[];
  selectedGroup: string | null;
  files: FileRecord[];
  pendingPolicyForm: GroupDraft;
}

export function emptyPolicyForm(): GroupDraft {
  return { group_name: "", permissions: "read", organizations: [], countries: [] };
}

export function initialState(): ViewState {
  return {
    wallet: null,
    session: null,
    profile: null,
    groups: [],
    selectedGroup: null,
    files: [],
    pendingPolicyForm: emptyPolicyForm(),
  };
}

export type Listener = (state: ViewState) => void;

export class Store {
  private listeners: Listener[] = [];

  constructor(public state: ViewState = initialState(),
              private clock: () => number = () => Math.floor(Date.now() / 1000)) {}

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  update(patch: Partial<ViewState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener(this.state);
  }

  /** True while a session exists and has not run out. */
  canMutate(): boolean {
    const session = this.state.session;
    return session !== null && session.expires_at > this.clock();
  }

  selectedGroupSummary(): GroupSummary | null {
    const id = this.state.selectedGroup;
    if (!id) return null;
    return this.state.groups.find((g) => g.group_id === id) ?? null;
  }

  /** Owner-gated controls compare the session address case-insensitively. */
  ownsSelectedGroup(): boolean {
    const group = this.selectedGroupSummary();
    const session = this.state.session;
    if (!group || !session) return false;
    return group.group_owner_address.toLowerCase() === session.address.toLowerCase();
  }

  clearSession(): void {
    this.update({ session: null, profile: null, groups: [], files: [],
                  selectedGroup: null });
  }
}
