import { buildFomTable } from "./fom_table.js";
import { escapeHtml, fmt, fmtPercent } from "./format.js";
import { sparkline } from "./sparkline.js";
import type { PinnedDesign } from "./state.js";
import type { FiguresOfMerit } from "./types.js";

export interface YearPoint {
  year: number;
  fom: FiguresOfMerit;
}

/** Relative change of each figure against the baseline pin. Both operands are
 * verbatim API numbers; the ratio is comparison presentation. */
export function relativeDelta(
  baseline: number | null,
  other: number | null,
): number | null {
  if (baseline === null || other === null || baseline === 0) {
    return null;
  }
  return other / baseline - 1;
}

export function renderComparePanel(
  pinned: PinnedDesign[],
  sweep: YearPoint[] | null,
): string {
  if (pinned.length === 0) {
    return '<p class="empty">pin a design to start comparing</p>';
  }
  const parts: string[] = [];
  const baseline = pinned[0];
  const header = pinned
    .map((p, i) => `<th>${escapeHtml(p.label)}${i === 0 ? " (base)" : ""}</th>`)
    .join("");
  const rows = buildFomTable(baseline.fom)
    .map((baseRow) => {
      const cells = pinned
        .map((p, i) => {
          const row = buildFomTable(p.fom).find((r) => r.key === baseRow.key);
          const value = row?.value ?? null;
          const delta = i === 0 ? null : relativeDelta(baseRow.value, value);
          const deltaText =
            delta === null ? "" : ` <span class="delta">(${fmtPercent(delta)})</span>`;
          return (
            `<td class="num" data-key="${baseRow.key}" data-pin="${i}" ` +
            `data-value="${value === null ? "null" : String(value)}">` +
            `${fmt(value)}${deltaText}</td>`
          );
        })
        .join("");
      return `<tr><th>${baseRow.label} [${baseRow.unit}]</th>${cells}</tr>`;
    })
    .join("\n");
  parts.push(
    `<table class="compare"><thead><tr><th></th>${header}</tr></thead>` +
      `<tbody>\n${rows}\n</tbody></table>`,
  );

  if (sweep && sweep.length >= 2) {
    const efficiencies = sweep.map((p) => p.fom.compute_efficiency_w_per_tflops);
    const first = sweep[0];
    const last = sweep[sweep.length - 1];
    parts.push(
      `<p class="trend">Efficiency trend ${first.year}-${last.year}: ` +
        `${sparkline(efficiencies)} ` +
        `<span data-key="trend_first" data-value="${first.fom.compute_efficiency_w_per_tflops}">${fmt(first.fom.compute_efficiency_w_per_tflops)}</span>` +
        ` to ` +
        `<span data-key="trend_last" data-value="${last.fom.compute_efficiency_w_per_tflops}">${fmt(last.fom.compute_efficiency_w_per_tflops)}</span>` +
        ` W/TFLOPS</p>`,
    );
  }
  return parts.join("\n");
}
