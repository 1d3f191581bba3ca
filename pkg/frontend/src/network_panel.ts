import { escapeHtml, fmt, fmtPercent, fmtSeconds } from "./format.js";
import type { NetworkSummary, OutageRow } from "./types.js";

export function reverseLinkId(linkId: string): string {
  const [tx, rx] = linkId.split(">");
  return `${rx}>${tx}`;
}

export interface TimelineSegment {
  startPct: number;
  widthPct: number;
}

/** Scale up-intervals onto a 0..100% track (pure presentation scaling). */
export function buildTimeline(
  intervals: Array<[number, number]>,
  horizon: [number, number],
): TimelineSegment[] {
  const [start, end] = horizon;
  const span = end - start;
  if (span <= 0) {
    return [];
  }
  return intervals.map(([s, e]) => ({
    startPct: (100 * (s - start)) / span,
    widthPct: (100 * (e - s)) / span,
  }));
}

function timelineHtml(row: OutageRow, horizon: [number, number]): string {
  const segments = buildTimeline(row.up_intervals, horizon)
    .map(
      (seg) =>
        `<span class="up" style="left:${seg.startPct.toFixed(3)}%;width:${seg.widthPct.toFixed(3)}%"></span>`,
    )
    .join("");
  return `<div class="timeline" data-link="${escapeHtml(row.link_id)}">${segments}</div>`;
}

function outageRowHtml(row: OutageRow, selected: boolean): string {
  const cls = selected ? ' class="selected"' : "";
  return (
    `<tr${cls} data-link="${escapeHtml(row.link_id)}">` +
    `<td>${escapeHtml(row.link_id)}</td>` +
    `<td>${escapeHtml(row.kind)}</td>` +
    `<td class="num" data-key="outage_fraction" data-value="${row.outage_fraction}">${fmtPercent(row.outage_fraction)}</td>` +
    `<td class="num" data-key="max_outage_s" data-value="${row.max_outage_s}">${fmt(row.max_outage_s)}</td>` +
    `<td class="num" data-key="buffer_MB" data-value="${row.buffer_MB}">${fmt(row.buffer_MB)}</td>` +
    `</tr>`
  );
}

export function renderNetworkPanel(
  summary: NetworkSummary | null,
  selectedLink: string | null,
  options: { loading?: boolean } = {},
): string {
  const parts: string[] = [];
  if (options.loading) {
    parts.push('<p class="loading" role="status">simulating…</p>');
  }
  if (summary === null) {
    parts.push('<p class="empty">no network summary yet</p>');
    return parts.join("\n");
  }

  const worst = summary.worst_case_route;
  if (worst !== null) {
    const detour = worst.max_route?.blocked_detour
      ? " via a blocked-link detour"
      : "";
    parts.push(
      `<p class="route">Worst case ${escapeHtml(worst.src)} to ${escapeHtml(worst.dst)}: ` +
        `<span data-key="max_latency_s" data-value="${worst.max_latency_s}">${fmtSeconds(worst.max_latency_s)}</span>` +
        ` over ${worst.max_route?.hop_count ?? 0} hops${detour}; unreachable ` +
        `<span data-key="unreachable_fraction" data-value="${worst.unreachable_fraction}">${fmtPercent(worst.unreachable_fraction)}</span>` +
        ` of epochs</p>`,
    );
  }
  parts.push(
    `<p class="stream">Buffers sized for <span data-key="stream_rate_MBps" data-value="${summary.stream_rate_MBps}">${fmt(summary.stream_rate_MBps)}</span> MB/s</p>`,
  );

  if (summary.outage.length === 0) {
    parts.push('<p class="empty">no links in this topology</p>');
    return parts.join("\n");
  }

  const rows = summary.outage
    .map((row) => outageRowHtml(row, row.link_id === selectedLink))
    .join("\n");
  parts.push(
    '<table class="outage"><thead><tr><th>link</th><th>kind</th>' +
      "<th>outage</th><th>max gap [s]</th><th>buffer [MB]</th></tr></thead>" +
      `<tbody>\n${rows}\n</tbody></table>`,
  );

  const selected = summary.outage.find((r) => r.link_id === selectedLink);
  if (selected) {
    parts.push(`<h3>${escapeHtml(selected.link_id)} up/down timeline</h3>`);
    parts.push(timelineHtml(selected, summary.horizon));
    const reverse = summary.outage.find(
      (r) => r.link_id === reverseLinkId(selected.link_id),
    );
    if (reverse) {
      parts.push(`<h3>reverse ${escapeHtml(reverse.link_id)}</h3>`);
      parts.push(timelineHtml(reverse, summary.horizon));
    }
  }
  return parts.join("\n");
}
