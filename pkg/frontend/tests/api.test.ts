import { describe, expect, it, vi } from "vitest";

import { ApiClient, ApiError, LatestRequest, debounce } from "../src/api.js";
import type { FiguresOfMerit } from "../src/types.js";
import { RecordedCall, fixture, stubFetch } from "./helpers.js";

const UC1 = fixture<FiguresOfMerit>("forecast_uc1");

const DESIGN = {
  year: 2032,
  total_power_w: 500,
  compute_type: "gpu_equivalent",
  destination: "leo",
  compute_power_fraction: 1,
};

describe("ApiClient", () => {
  it("posts the design and workload to /api/forecast", async () => {
    const calls: RecordedCall[] = [];
    const api = new ApiClient("", stubFetch({ "POST /api/forecast": UC1 }, calls));
    await api.postForecast(DESIGN, "uc1");
    expect(calls).toHaveLength(1);
    expect(calls[0].url).toBe("/api/forecast");
    const body = JSON.parse(String(calls[0].init?.body));
    expect(body).toEqual({ design: DESIGN, workload: "uc1" });
  });

  it("prefixes a configured base URL", async () => {
    const calls: RecordedCall[] = [];
    const api = new ApiClient(
      "http://api.example",
      stubFetch({ "POST http://api.example/api/forecast": UC1 }, calls),
    );
    await api.postForecast(DESIGN, "uc1");
    expect(calls[0].url).toBe("http://api.example/api/forecast");
  });

  it("raises ApiError with field paths on 400", async () => {
    const api = new ApiClient(
      "",
      stubFetch({
        "POST /api/forecast": {
          status: 400,
          body: {
            errors: [{ path: "design.total_power_w", message: "must be >= 0" }],
          },
        },
      }),
    );
    await expect(api.postForecast(DESIGN, "uc1")).rejects.toSatisfy(
      (err: unknown) =>
        err instanceof ApiError &&
        err.status === 400 &&
        err.errors[0].path === "design.total_power_w",
    );
  });

  it("fetches presets and roadmaps", async () => {
    const api = new ApiClient(
      "",
      stubFetch({
        "GET /api/presets": fixture("presets"),
        "GET /api/roadmaps": fixture("roadmaps"),
      }),
    );
    const presets = await api.getPresets();
    expect(presets.presets.map((p) => p.name)).toEqual(["uc1", "uc2", "uc3"]);
    const roadmaps = (await api.getRoadmaps()) as {
      curves: Record<string, Record<string, { ref_value: number }>>;
    };
    expect(
      roadmaps.curves.compute_efficiency_w_per_tflops.gpu_equivalent.ref_value,
    ).toBe(0.44);
  });
});

describe("LatestRequest", () => {
  it("resolves only the newest of overlapping requests", async () => {
    const gate = new LatestRequest();
    let releaseFirst: (v: string) => void = () => {};
    const first = gate.run(
      () => new Promise<string>((resolve) => (releaseFirst = resolve)),
    );
    const second = gate.run(async () => "second");
    releaseFirst("first");
    expect(await second).toBe("second");
    expect(await first).toBeUndefined();
  });

  it("aborts the previous request's signal", async () => {
    const gate = new LatestRequest();
    let seen: AbortSignal | undefined;
    void gate.run(async (signal) => {
      seen = signal;
      return new Promise(() => {});
    });
    await gate.run(async () => "next");
    expect(seen?.aborted).toBe(true);
  });

  it("swallows errors from superseded requests only", async () => {
    const gate = new LatestRequest();
    const stale = gate.run(() => Promise.reject(new Error("boom")));
    const fresh = gate.run(async () => 42);
    expect(await fresh).toBe(42);
    expect(await stale).toBeUndefined();
    await expect(gate.run(() => Promise.reject(new Error("real")))).rejects.toThrow(
      "real",
    );
  });
});

describe("debounce", () => {
  it("fires once, 250 ms after the last call", () => {
    vi.useFakeTimers();
    try {
      const hits: number[] = [];
      const fn = debounce((x: number) => hits.push(x), 250);
      fn(1);
      vi.advanceTimersByTime(100);
      fn(2);
      vi.advanceTimersByTime(249);
      expect(hits).toEqual([]);
      vi.advanceTimersByTime(1);
      expect(hits).toEqual([2]);
    } finally {
      vi.useRealTimers();
    }
  });
});
