/**
 * Session state holder: the view is always the last server response.
 *
 * Each user action posts exactly one event and blocks further actions until
 * the response lands; nothing is derived or predicted on the client, so the
 * rendered state can never diverge from the audit log.
 */

import type { ApiClient } from "./api.js";
import type { Clock } from "./clock.js";
import { realClock } from "./clock.js";
import type { EventBody, SessionConfigInput, SessionView } from "./types.js";

export type Listener = (store: SessionStore) => void;

/** The analyst drives phase advances; every judgment comes from the DM. */
export function actorFor(eventType: string): string {
  return eventType === "proceed" ? "analyst" : "dm";
}

export class SessionStore {
  view: SessionView | null = null;
  busy = false;
  lastError: string | null = null;
  postedEvents = 0;

  private listeners: Listener[] = [];
  private tail: Promise<void> = Promise.resolve();

  constructor(
    readonly api: ApiClient,
    readonly clock: Clock = realClock,
  ) {}

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private notify(): void {
    for (const listener of [...this.listeners]) listener(this);
  }

  /** Resolves once every action dispatched so far has settled. */
  whenIdle(): Promise<void> {
    return this.tail;
  }

  private enqueue(work: () => Promise<void>): Promise<void> {
    const run = this.tail.then(work, work);
    // keep the chain alive after failures; errors surface via lastError
    this.tail = run.catch(() => {});
    return run;
  }

  start(config: SessionConfigInput): Promise<void> {
    return this.enqueue(async () => {
      this.busy = true;
      this.lastError = null;
      this.notify();
      try {
        this.view = await this.api.createSession(config);
      } catch (err) {
        this.lastError = String(err instanceof Error ? err.message : err);
      } finally {
        this.busy = false;
        this.notify();
      }
    });
  }

  /** Post one event; the response wholly replaces the rendered view. */
  dispatch(type: string, payload: Record<string, unknown> = {}): Promise<void> {
    return this.enqueue(async () => {
      const view = this.view;
      if (!view) throw new Error("no active session");
      const event: EventBody = {
        type,
        actor: actorFor(type),
        at: this.clock(),
        payload,
      };
      this.busy = true;
      this.lastError = null;
      this.notify();
      try {
        this.view = await this.api.postEvent(view.id, event);
        this.postedEvents += 1;
      } catch (err) {
        this.lastError = String(err instanceof Error ? err.message : err);
      } finally {
        this.busy = false;
        this.notify();
      }
    });
  }

  /** True when the current phase accepts this event type and nothing is in flight. */
  can(eventType: string): boolean {
    return (
      !this.busy &&
      this.view !== null &&
      this.view.expected_events.includes(eventType)
    );
  }
}
