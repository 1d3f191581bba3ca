import type {
  ApiErrorItem,
  DesignControls,
  FiguresOfMerit,
  NetworkSummary,
  PresetsResponse,
  WorkloadRef,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly errors: ApiErrorItem[],
  ) {
    super(errors.map((e) => `${e.path}: ${e.message}`).join("; ") || `HTTP ${status}`);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(
    path: string,
    init: RequestInit,
    signal?: AbortSignal,
  ): Promise<T> {
    const resp = await this.fetchFn(this.baseUrl + path, { ...init, signal });
    const body = await resp.json();
    if (!resp.ok) {
      throw new ApiError(resp.status, (body?.errors ?? []) as ApiErrorItem[]);
    }
    return body as T;
  }

  postForecast(
    design: DesignControls,
    workload: WorkloadRef,
    signal?: AbortSignal,
  ): Promise<FiguresOfMerit> {
    return this.request<FiguresOfMerit>(
      "/api/forecast",
      {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify({ design, workload }),
      },
      signal,
    );
  }

  postNetworkSummary(
    body: Record<string, unknown>,
    signal?: AbortSignal,
  ): Promise<NetworkSummary> {
    return this.request<NetworkSummary>(
      "/api/network/summary",
      {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(body),
      },
      signal,
    );
  }

  getPresets(signal?: AbortSignal): Promise<PresetsResponse> {
    return this.request<PresetsResponse>("/api/presets", { method: "GET" }, signal);
  }

  getRoadmaps(signal?: AbortSignal): Promise<Record<string, unknown>> {
    return this.request("/api/roadmaps", { method: "GET" }, signal);
  }
}

/** Newest-wins gate: at most one in-flight request per panel. Superseded
 * calls resolve to undefined instead of clobbering fresher results. */
export class LatestRequest {
  private seq = 0;
  private controller: AbortController | null = null;

  async run<T>(fn: (signal: AbortSignal) => Promise<T>): Promise<T | undefined> {
    this.controller?.abort();
    const controller = new AbortController();
    this.controller = controller;
    const ticket = ++this.seq;
    try {
      const result = await fn(controller.signal);
      return ticket === this.seq ? result : undefined;
    } catch (err) {
      if (ticket !== this.seq || controller.signal.aborted) {
        return undefined;
      }
      throw err;
    }
  }
}

export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  delayMs: number,
  timers: { set: typeof setTimeout; clear: typeof clearTimeout } = {
    set: setTimeout,
    clear: clearTimeout,
  },
): (...args: A) => void {
  let handle: ReturnType<typeof setTimeout> | undefined;
  return (...args: A) => {
    if (handle !== undefined) {
      timers.clear(handle);
    }
    handle = timers.set(() => fn(...args), delayMs);
  };
}
