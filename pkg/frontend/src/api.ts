/** Thin typed client of the session API.  Every state change round-trips
 * through the server; the client never updates optimistically. */
import type { SessionView } from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly errorKind: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export class ConnectionError extends Error {
  constructor(cause: unknown) {
    super(`connection failed: ${String(cause)}`);
    this.name = "ConnectionError";
  }
}

export class ApiClient {
  /** Requests actually issued; lets tests assert that forbidden clicks
   * never reach the network. */
  requestCount = 0;

  constructor(readonly baseUrl: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    this.requestCount += 1;
    let response: Response;
    try {
      response = await fetch(this.baseUrl + path, init);
    } catch (cause) {
      throw new ConnectionError(cause);
    }
    const text = await response.text();
    if (!response.ok) {
      let kind = "error";
      let message = text;
      try {
        const body = JSON.parse(text) as { error_kind?: string; message?: string };
        kind = body.error_kind ?? kind;
        message = body.message ?? message;
      } catch {
        /* non-JSON error body */
      }
      throw new ApiError(response.status, kind, message);
    }
    return JSON.parse(text) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  createSession(model: unknown, supervisor?: unknown): Promise<SessionView> {
    return this.post<SessionView>("/sessions", { model, supervisor });
  }

  getSession(id: string): Promise<SessionView> {
    return this.request<SessionView>(`/sessions/${id}`);
  }

  step(id: string, event: string): Promise<SessionView> {
    return this.post<SessionView>(`/sessions/${id}/step`, { event });
  }

  undo(id: string): Promise<SessionView> {
    return this.post<SessionView>(`/sessions/${id}/undo`, {});
  }

  async graph(id: string, which: "supervisor" | "plant" = "supervisor"): Promise<string> {
    this.requestCount += 1;
    let response: Response;
    try {
      response = await fetch(`${this.baseUrl}/models/${id}/graph?which=${which}`);
    } catch (cause) {
      throw new ConnectionError(cause);
    }
    if (!response.ok) {
      throw new ApiError(response.status, "error", await response.text());
    }
    return response.text();
  }
}
