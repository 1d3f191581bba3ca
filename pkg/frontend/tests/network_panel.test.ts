import { describe, expect, it } from "vitest";

import {
  buildTimeline,
  renderNetworkPanel,
  reverseLinkId,
} from "../src/network_panel.js";
import type { NetworkSummary } from "../src/types.js";
import { extractValues, fixture } from "./helpers.js";

const RING = fixture<NetworkSummary>("network_small_ring");
const NO_EXCLUSION = fixture<NetworkSummary>("network_no_exclusion");

describe("network panel", () => {
  it("renders per-link outage numbers verbatim from the response", () => {
    const html = renderNetworkPanel(RING, null);
    const rendered = extractValues(html);
    const fractions = rendered.get("outage_fraction")!.map(Number);
    expect(fractions).toEqual(RING.outage.map((r) => r.outage_fraction));
    const buffers = rendered.get("buffer_MB")!.map(Number);
    expect(buffers).toEqual(RING.outage.map((r) => r.buffer_MB));
  });

  it("highlights a sun-affected link near one-sixth outage with its buffer", () => {
    const hit = RING.outage.find((r) => Math.abs(r.outage_fraction - 1 / 6) < 0.02);
    expect(hit).toBeDefined();
    expect(hit!.buffer_MB).toBeGreaterThan(2300);
    expect(hit!.buffer_MB).toBeLessThan(2500);
  });

  it("zero exclusion angle shows every link up", () => {
    expect(NO_EXCLUSION.outage.length).toBeGreaterThan(0);
    for (const row of NO_EXCLUSION.outage) {
      expect(row.outage_fraction).toBe(0);
    }
    const html = renderNetworkPanel(NO_EXCLUSION, null);
    const rendered = extractValues(html);
    expect(rendered.get("outage_fraction")!.every((v) => Number(v) === 0)).toBe(true);
  });

  it("shows the reverse direction of a blocked link as up", () => {
    const blocked = RING.outage.find((r) => r.outage_fraction > 0.1)!;
    const reverse = RING.outage.find(
      (r) => r.link_id === reverseLinkId(blocked.link_id),
    )!;
    // anti-parallel receivers: blocked windows never overlap, so the reverse
    // link's own timeline covers every gap of the forward one
    const html = renderNetworkPanel(RING, blocked.link_id);
    const escapedReverse = reverse.link_id.replaceAll(">", "&gt;");
    expect(html).toContain(`<h3>reverse ${escapedReverse}</h3>`);
    expect(html).toContain(`data-link="${escapedReverse}"`);
    for (const [gapStart, gapEnd] of gaps(blocked, RING.horizon)) {
      const covered = reverse.up_intervals.some(
        ([s, e]) => s <= gapStart && gapEnd <= e,
      );
      expect(covered).toBe(true);
    }
  });

  it("scales the selected link timeline to the horizon", () => {
    const segments = buildTimeline(
      [
        [0, 25],
        [50, 100],
      ],
      [0, 100],
    );
    expect(segments).toEqual([
      { startPct: 0, widthPct: 25 },
      { startPct: 50, widthPct: 50 },
    ]);
  });

  it("renders deterministically", () => {
    const a = renderNetworkPanel(RING, RING.outage[0].link_id);
    const b = renderNetworkPanel(RING, RING.outage[0].link_id);
    expect(a).toBe(b);
  });

  it("handles an empty topology", () => {
    const empty: NetworkSummary = {
      ...RING,
      outage: [],
      worst_case_route: null,
    };
    const html = renderNetworkPanel(empty, null);
    expect(html).toContain("no links in this topology");
  });
});

function gaps(
  row: { up_intervals: Array<[number, number]> },
  horizon: [number, number],
): Array<[number, number]> {
  const out: Array<[number, number]> = [];
  let cursor = horizon[0];
  for (const [s, e] of row.up_intervals) {
    if (s > cursor) {
      out.push([cursor, s]);
    }
    cursor = e;
  }
  if (cursor < horizon[1]) {
    out.push([cursor, horizon[1]]);
  }
  return out;
}
