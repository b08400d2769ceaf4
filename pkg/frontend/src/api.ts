/** Typed client for the quadwalk JSON API.
 *
 * The client is a transport layer only: it builds URLs, sends JSON, and
 * returns the server payloads untouched.  No recommendation logic, no score
 * arithmetic, no reordering.
 */

import type {
  DiscoverBody,
  HealthResponse,
  OrganizeResponse,
  RankedResponse,
  ReasonerBody,
  ResourceView,
  SessionResponse,
  StatsResponse,
  TagBody,
  TagResponse,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
    this.name = "ApiError";
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export interface NewsOptions {
  now?: string;
  halfLifeSeconds?: number;
}

export interface StatsOptions {
  other?: string;
  year?: number;
}

export class ApiClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private url(path: string, params?: Record<string, string | number | undefined>): string {
    const search = new URLSearchParams();
    for (const [key, value] of Object.entries(params ?? {})) {
      if (value !== undefined) search.set(key, String(value));
    }
    const query = search.toString();
    return `${this.baseUrl}${path}${query ? `?${query}` : ""}`;
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(path, init);
    const body = await response.json().catch(() => ({}));
    if (!response.ok) {
      const detail =
        typeof body === "object" && body !== null && "detail" in body
          ? JSON.stringify((body as { detail: unknown }).detail)
          : response.statusText;
      throw new ApiError(response.status, detail);
    }
    return body as T;
  }

  private post<T>(url: string, payload: unknown): Promise<T> {
    return this.request<T>(url, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  health(): Promise<HealthResponse> {
    return this.request(this.url("/health"));
  }

  openSession(user: string): Promise<SessionResponse> {
    return this.post(this.url("/session"), { user });
  }

  /** Resource view; passing a session records consecutive views as usage. */
  viewResource(iri: string, session?: string, now?: string): Promise<ResourceView> {
    return this.request(this.url(`/resource/${encodeURIComponent(iri)}`, { session, now }));
  }

  search(q: string): Promise<RankedResponse> {
    return this.request(this.url("/search", { q }));
  }

  discover(body: DiscoverBody): Promise<RankedResponse> {
    return this.post(this.url("/discover"), body);
  }

  reasoner(body: ReasonerBody): Promise<RankedResponse> {
    return this.post(this.url("/reasoner"), body);
  }

  tag(session: string, body: TagBody): Promise<TagResponse> {
    return this.post(this.url("/tag", { session }), body);
  }

  organize(session: string): Promise<OrganizeResponse> {
    return this.request(this.url("/organize", { session }));
  }

  news(concept: string, session: string, options: NewsOptions = {}): Promise<RankedResponse> {
    return this.request(
      this.url("/news", {
        concept,
        session,
        now: options.now,
        halfLifeSeconds: options.halfLifeSeconds,
      }),
    );
  }

  stats(metric: string, resource: string, options: StatsOptions = {}): Promise<StatsResponse> {
    return this.request(
      this.url(`/stats/${encodeURIComponent(metric)}`, {
        resource,
        other: options.other,
        year: options.year,
      }),
    );
  }
}
