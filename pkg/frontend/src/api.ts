/** Typed client for the session-service HTTP API. */

export interface Candidate {
  image_id: number;
  score: number;
}

export type Segment =
  | { kind: "text"; words: string[] }
  | { kind: "image"; image_id: number };

export interface Turn {
  role: "user" | "assistant";
  segments: Segment[];
}

export interface TurnOutcome {
  assistant_words: string[];
  candidates: Candidate[];
  forced: boolean;
  truncated: boolean;
  seconds: number;
}

export interface SessionView {
  session_id: string;
  turns: Turn[];
  pending: Candidate[] | null;
  pending_words: string[];
  turn_count: number;
  awaiting_selection: boolean;
  uploads: Record<string, unknown>;
}

export interface ImageInfo {
  image_id: number;
  attributes: Record<string, string>;
  caption: string[];
}

export interface TranscriptAction {
  kind: "user_turn" | "select" | "dismiss";
  [key: string]: unknown;
}

export interface Health {
  status: string;
  gallery_size: number;
  sessions: number;
}

export interface TurnRequest {
  text?: string;
  image_ids?: number[];
  force_retrieval?: boolean;
}

/** The operations the UI consumes; `ApiClient` is the HTTP implementation. */
export interface Api {
  createSession(): Promise<{ session_id: string }>;
  getSession(sessionId: string): Promise<SessionView>;
  sendTurn(sessionId: string, turn: TurnRequest): Promise<TurnOutcome>;
  selectCandidate(sessionId: string, imageId: number): Promise<SessionView>;
  dismissCandidates(sessionId: string): Promise<SessionView>;
  getTranscript(sessionId: string): Promise<{ transcript: TranscriptAction[] }>;
  imageInfo(imageId: number): Promise<ImageInfo>;
  health(): Promise<Health>;
}

/** Server-reported failure with its machine-readable code. */
export class ApiError extends Error {
  constructor(
    public readonly code: string,
    message: string,
    public readonly status: number,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function toApiError(response: Response): Promise<ApiError> {
  let code = "http_error";
  let message = response.statusText || `HTTP ${response.status}`;
  try {
    const body = await response.json();
    if (body?.error?.code) {
      code = body.error.code;
      message = body.error.message ?? message;
    } else if (body?.detail) {
      code = "validation_error";
      message = JSON.stringify(body.detail);
    }
  } catch {
    /* non-JSON body: keep the status text */
  }
  return new ApiError(code, message, response.status);
}

export class ApiClient implements Api {
  constructor(private readonly baseUrl: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      headers: { "Content-Type": "application/json" },
      ...init,
    });
    if (!response.ok) {
      throw await toApiError(response);
    }
    return (await response.json()) as T;
  }

  createSession(): Promise<{ session_id: string }> {
    return this.request("/sessions", { method: "POST" });
  }

  getSession(sessionId: string): Promise<SessionView> {
    return this.request(`/sessions/${sessionId}`);
  }

  sendTurn(sessionId: string, turn: TurnRequest): Promise<TurnOutcome> {
    return this.request(`/sessions/${sessionId}/turns`, {
      method: "POST",
      body: JSON.stringify(turn),
    });
  }

  selectCandidate(sessionId: string, imageId: number): Promise<SessionView> {
    return this.request(`/sessions/${sessionId}/select`, {
      method: "POST",
      body: JSON.stringify({ image_id: imageId }),
    });
  }

  dismissCandidates(sessionId: string): Promise<SessionView> {
    return this.request(`/sessions/${sessionId}/dismiss`, {
      method: "POST",
    });
  }

  getTranscript(sessionId: string): Promise<{ transcript: TranscriptAction[] }> {
    return this.request(`/sessions/${sessionId}/transcript`);
  }

  imageInfo(imageId: number): Promise<ImageInfo> {
    return this.request(`/gallery/${imageId}`);
  }

  health(): Promise<Health> {
    return this.request("/health");
  }
}
