/** Session state machine behind the view.
 *
 * The clickable set is always `decision.allowed ∩ eligible`: events the
 * supervisor permits and the plant can actually execute.  Firing anything
 * else is refused locally, without a request. */
import { ApiClient, ApiError, ConnectionError } from "./api.js";
import type { SessionView } from "./types.js";

export type FireResult =
  | { issued: false; reason: string }
  | { issued: true; ok: true; view: SessionView }
  | { issued: true; ok: false; errorKind: string; message: string };

export class SessionController {
  private current: SessionView | null = null;
  private listeners: Array<() => void> = [];
  offline = false;

  constructor(readonly api: ApiClient) {}

  get view(): SessionView | null {
    return this.current;
  }

  /** Events a click may fire right now. */
  get clickable(): string[] {
    if (!this.current) {
      return [];
    }
    const eligible = new Set(this.current.eligible);
    return this.current.decision.allowed.filter((e) => eligible.has(e));
  }

  /** Why a non-clickable event cannot fire (tooltip text). */
  refusalReason(event: string): string | null {
    if (!this.current || this.clickable.includes(event)) {
      return null;
    }
    const d = this.current.decision;
    if (d.preempted.includes(event)) {
      return "preempted: a forcible event must fire first";
    }
    if (d.disabled.includes(event)) {
      return "disabled by the supervisor";
    }
    if (d.allowed.includes(event)) {
      return "not eligible in the plant right now";
    }
    return "not an executable event here";
  }

  onChange(listener: () => void): void {
    this.listeners.push(listener);
  }

  private update(view: SessionView): void {
    this.current = view;
    this.offline = false;
    for (const listener of this.listeners) {
      listener();
    }
  }

  private handleFailure(error: unknown): never {
    if (error instanceof ConnectionError) {
      this.offline = true;
      for (const listener of this.listeners) {
        listener();
      }
    }
    throw error;
  }

  async start(model: unknown, supervisor?: unknown): Promise<SessionView> {
    try {
      const view = await this.api.createSession(model, supervisor);
      this.update(view);
      return view;
    } catch (error) {
      this.handleFailure(error);
    }
  }

  async fire(event: string): Promise<FireResult> {
    if (!this.current) {
      throw new Error("no session");
    }
    const reason = this.refusalReason(event);
    if (reason !== null) {
      return { issued: false, reason };
    }
    try {
      const view = await this.api.step(this.current.id, event);
      this.update(view);
      return { issued: true, ok: true, view };
    } catch (error) {
      if (error instanceof ApiError && error.status === 409) {
        return { issued: true, ok: false, errorKind: error.errorKind, message: error.message };
      }
      this.handleFailure(error);
    }
  }

  async undo(): Promise<boolean> {
    if (!this.current || !this.current.can_undo) {
      return false;
    }
    try {
      this.update(await this.api.undo(this.current.id));
      return true;
    } catch (error) {
      if (error instanceof ApiError && error.status === 409) {
        return false;
      }
      this.handleFailure(error);
    }
  }

  async refresh(): Promise<void> {
    if (!this.current) {
      return;
    }
    try {
      this.update(await this.api.getSession(this.current.id));
    } catch (error) {
      this.handleFailure(error);
    }
  }

  /** Reconnect attempt for the offline banner. */
  async retry(): Promise<boolean> {
    try {
      await this.refresh();
      return !this.offline;
    } catch {
      return false;
    }
  }
}
