/** Shared test scaffolding: fixture views and a stubbed API client. */

import type { ApiClient } from "../src/api.js";
import { sequenceClock } from "../src/clock.js";
import { SessionStore } from "../src/store.js";
import type { EventBody, SessionConfigInput, SessionView } from "../src/types.js";
import viewsJson from "./fixtures/views.json";

/** Server views captured from a real walkthrough, keyed phase/label/side. */
export const VIEWS = viewsJson as unknown as Record<string, SessionView>;

export function fixtureView(key: string): SessionView {
  const view = VIEWS[key];
  if (!view) throw new Error(`no fixture view ${key}`);
  // each test mutates its own copy
  return JSON.parse(JSON.stringify(view)) as SessionView;
}

export interface RecordedCall {
  id: string;
  event: EventBody;
}

export interface StubApi {
  client: ApiClient;
  calls: RecordedCall[];
  configs: SessionConfigInput[];
  /** Next responses for postEvent, consumed in order; last one sticks. */
  queue: SessionView[];
}

export function stubApi(initial: SessionView): StubApi {
  const stub: StubApi = {
    calls: [],
    configs: [],
    queue: [initial],
    client: undefined as unknown as ApiClient,
  };
  const next = (): SessionView => {
    const view = stub.queue.length > 1 ? stub.queue.shift()! : stub.queue[0]!;
    return JSON.parse(JSON.stringify(view)) as SessionView;
  };
  stub.client = {
    createSession: async (config: SessionConfigInput) => {
      stub.configs.push(config);
      return next();
    },
    postEvent: async (id: string, event: EventBody) => {
      stub.calls.push({ id, event });
      return next();
    },
  } as unknown as ApiClient;
  return stub;
}

/** A store already holding the given view, with recorded event posts. */
export function storeWith(view: SessionView): { store: SessionStore; stub: StubApi } {
  const stub = stubApi(view);
  const store = new SessionStore(stub.client, sequenceClock());
  store.view = JSON.parse(JSON.stringify(view)) as SessionView;
  return { store, stub };
}
