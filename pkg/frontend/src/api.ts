/** Thin typed client for the session service; the only backend contact. */

import type {
  DocumentJson,
  EventBody,
  OrderName,
  OrderResponse,
  ProblemDict,
  RankResponse,
  SessionConfigInput,
  SessionView,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    message: string,
    readonly status: number,
    readonly detail: unknown,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

type FetchFn = typeof fetch;

export class ApiClient {
  private readonly fetchFn: FetchFn;

  constructor(
    readonly baseUrl: string,
    fetchFn?: FetchFn,
  ) {
    this.fetchFn = fetchFn ?? globalThis.fetch.bind(globalThis);
  }

  private async request(path: string, init?: RequestInit): Promise<Response> {
    const response = await this.fetchFn(this.baseUrl + path, init);
    if (!response.ok) {
      let detail: unknown = null;
      try {
        detail = await response.json();
      } catch {
        detail = await response.text().catch(() => null);
      }
      const hint =
        detail && typeof detail === "object" && "detail" in detail
          ? String((detail as { detail: unknown }).detail)
          : response.statusText;
      throw new ApiError(`${response.status} on ${path}: ${hint}`, response.status, detail);
    }
    return response;
  }

  private async postJson<T>(path: string, body: unknown): Promise<T> {
    const response = await this.request(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    return (await response.json()) as T;
  }

  createSession(config: SessionConfigInput): Promise<SessionView> {
    return this.postJson("/sessions", config);
  }

  async getSession(id: string): Promise<SessionView> {
    const response = await this.request(`/sessions/${id}`);
    return (await response.json()) as SessionView;
  }

  postEvent(id: string, event: EventBody): Promise<SessionView> {
    return this.postJson(`/sessions/${id}/events`, event);
  }

  /** Raw document bytes; byte fidelity matters for replay parity. */
  async exportDocument(id: string): Promise<Uint8Array> {
    const response = await this.request(`/sessions/${id}/export`);
    return new Uint8Array(await response.arrayBuffer());
  }

  async exportParsed(id: string): Promise<DocumentJson> {
    const bytes = await this.exportDocument(id);
    return JSON.parse(new TextDecoder().decode(bytes)) as DocumentJson;
  }

  computeRank(problem: ProblemDict, order: OrderName): Promise<RankResponse> {
    return this.postJson("/compute/rank", { problem, order });
  }

  computeOrder(
    a: unknown,
    b: unknown,
    order: OrderName,
  ): Promise<OrderResponse> {
    return this.postJson("/compute/order", { a, b, order });
  }
}
