/** Client-side session state: a small store the UI renders from.
 *
 * The transcript entries are derived from server turns by one pure function
 * (`entriesFromTurns`); local mutations append exactly what that mapping
 * would produce, so the rendered transcript always equals the server view
 * after any acknowledged action.
 */

import {
  Api,
  ApiError,
  Candidate,
  SessionView,
  Turn,
  TurnRequest,
} from "./api.js";

export type TranscriptEntry =
  | { kind: "user"; text: string; imageIds: number[] }
  | { kind: "assistant_text"; words: string[] }
  | { kind: "assistant_image"; imageId: number };

export type Phase = "idle" | "awaiting" | "busy";

export interface StoreState {
  sessionId: string | null;
  phase: Phase;
  entries: TranscriptEntry[];
  grid: Candidate[] | null;
  pendingWords: string[];
  notice: string | null;
  lastTruncated: boolean;
}

/** Map server history onto display entries (also used for parity checks). */
export function entriesFromTurns(turns: Turn[]): TranscriptEntry[] {
  const entries: TranscriptEntry[] = [];
  for (const turn of turns) {
    if (turn.role === "user") {
      const words: string[] = [];
      const imageIds: number[] = [];
      for (const seg of turn.segments) {
        if (seg.kind === "text") {
          words.push(...seg.words);
        } else {
          imageIds.push(seg.image_id);
        }
      }
      entries.push({ kind: "user", text: words.join(" "), imageIds });
    } else {
      for (const seg of turn.segments) {
        if (seg.kind === "text") {
          entries.push({ kind: "assistant_text", words: [...seg.words] });
        } else {
          entries.push({ kind: "assistant_image", imageId: seg.image_id });
        }
      }
    }
  }
  return entries;
}

export class SessionStore {
  private state: StoreState = {
    sessionId: null,
    phase: "idle",
    entries: [],
    grid: null,
    pendingWords: [],
    notice: null,
    lastTruncated: false,
  };
  private listeners: Array<(s: StoreState) => void> = [];

  constructor(private readonly api: Api) {}

  get snapshot(): StoreState {
    return {
      ...this.state,
      entries: [...this.state.entries],
      grid: this.state.grid ? [...this.state.grid] : null,
      pendingWords: [...this.state.pendingWords],
    };
  }

  subscribe(listener: (s: StoreState) => void): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private update(patch: Partial<StoreState>): void {
    this.state = { ...this.state, ...patch };
    const view = this.snapshot;
    for (const listener of this.listeners) {
      listener(view);
    }
  }

  /** Start a fresh conversation. */
  async start(): Promise<string> {
    const { session_id } = await this.api.createSession();
    this.update({
      sessionId: session_id,
      phase: "idle",
      entries: [],
      grid: null,
      pendingWords: [],
      notice: null,
      lastTruncated: false,
    });
    return session_id;
  }

  /** Attach to an existing session and rebuild the view from the server. */
  async attach(sessionId: string): Promise<void> {
    const view = await this.api.getSession(sessionId);
    this.applyServerView(view);
  }

  /** Re-sync with the server (e.g. after a stale-grid conflict). */
  async refresh(): Promise<void> {
    if (!this.state.sessionId) {
      return;
    }
    const view = await this.api.getSession(this.state.sessionId);
    this.applyServerView(view);
  }

  private applyServerView(view: SessionView): void {
    this.update({
      sessionId: view.session_id,
      phase: view.awaiting_selection ? "awaiting" : "idle",
      entries: entriesFromTurns(view.turns),
      grid: view.pending ? [...view.pending] : null,
      pendingWords: [...view.pending_words],
      notice: null,
      lastTruncated: false,
    });
  }

  /** Post a user turn; shows the bubble optimistically, rolls back on failure. */
  async sendTurn(turn: TurnRequest): Promise<void> {
    if (!this.state.sessionId) {
      throw new Error("no active session");
    }
    if (this.state.phase === "awaiting") {
      this.update({ notice: "Select or dismiss the candidates first." });
      return;
    }
    if (this.state.phase === "busy") {
      return;
    }
    const optimistic: TranscriptEntry = {
      kind: "user",
      text: (turn.text ?? "").trim(),
      imageIds: [...(turn.image_ids ?? [])],
    };
    const before = this.state.entries;
    this.update({
      phase: "busy",
      entries: [...before, optimistic],
      notice: null,
    });
    try {
      const outcome = await this.api.sendTurn(this.state.sessionId, turn);
      const entries = [...before, optimistic];
      let grid: Candidate[] | null = null;
      let pendingWords: string[] = [];
      if (outcome.candidates.length > 0) {
        grid = outcome.candidates;
        pendingWords = outcome.assistant_words;
      } else if (outcome.assistant_words.length > 0) {
        entries.push({ kind: "assistant_text", words: outcome.assistant_words });
      }
      this.update({
        phase: grid ? "awaiting" : "idle",
        entries,
        grid,
        pendingWords,
        lastTruncated: outcome.truncated,
        notice: outcome.truncated
          ? "Oldest rounds were dropped to fit the context window."
          : null,
      });
    } catch (err) {
      // transcript unchanged on failure; surface a retry affordance
      this.update({
        phase: this.state.grid ? "awaiting" : "idle",
        entries: before,
        notice: describeFailure(err),
      });
      if (err instanceof ApiError && err.code === "candidates_pending") {
        await this.refresh();
      }
    }
  }

  /** Pick one candidate: the grid collapses into an assistant image entry. */
  async select(imageId: number): Promise<void> {
    if (!this.state.sessionId || this.state.phase !== "awaiting") {
      return;
    }
    try {
      const view = await this.api.selectCandidate(this.state.sessionId, imageId);
      this.applyServerView(view);
    } catch (err) {
      this.update({ notice: describeFailure(err) });
      if (err instanceof ApiError && err.status === 409) {
        await this.refresh(); // stale grid: the server already cleared it
      }
    }
  }

  /** Drop the grid without selecting; the transcript is unchanged. */
  async dismiss(): Promise<void> {
    if (!this.state.sessionId || this.state.phase !== "awaiting") {
      return;
    }
    try {
      const view = await this.api.dismissCandidates(this.state.sessionId);
      this.applyServerView(view);
    } catch (err) {
      this.update({ notice: describeFailure(err) });
      if (err instanceof ApiError && err.status === 409) {
        await this.refresh();
      }
    }
  }

  /** The replayable action record, pretty-printed for export. */
  async exportTranscript(): Promise<string> {
    if (!this.state.sessionId) {
      throw new Error("no active session");
    }
    const { transcript } = await this.api.getTranscript(this.state.sessionId);
    return JSON.stringify(
      { session_id: this.state.sessionId, transcript },
      null,
      2,
    );
  }
}

function describeFailure(err: unknown): string {
  if (err instanceof ApiError) {
    return `${err.message} (${err.code})`;
  }
  return "Could not reach the server — check the connection and retry.";
}
