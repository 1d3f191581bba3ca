import { escapeHtml, fmt } from "./format.js";
import type { ApiErrorItem, FiguresOfMerit } from "./types.js";

/** One figure-of-merit row. `value` (and `paren` where present) are verbatim
 * API response numbers; the UI adds no arithmetic of its own. */
export interface FomRow {
  key: keyof FiguresOfMerit;
  label: string;
  unit: string;
  value: number | null;
  paren: number | null;
}

export function buildFomTable(fom: FiguresOfMerit): FomRow[] {
  return [
    {
      key: "available_compute_tflops",
      label: "Comp. power",
      unit: "TFLOPS",
      value: fom.available_compute_tflops,
      paren: fom.required_compute_tflops,
    },
    {
      key: "satellite_mass_kg",
      label: "Satellite weight",
      unit: "kg",
      value: fom.satellite_mass_kg,
      paren: null,
    },
    {
      key: "compute_efficiency_w_per_tflops",
      label: "Comp. efficiency",
      unit: "W/TFLOPS",
      value: fom.compute_efficiency_w_per_tflops,
      paren: null,
    },
    {
      key: "cost_of_power_eur_per_w",
      label: "Cost of power",
      unit: "EUR/W",
      value: fom.cost_of_power_eur_per_w,
      paren: null,
    },
    {
      key: "cost_of_compute_eur_per_tflops",
      label: "Cost of compute",
      unit: "EUR/TFLOPS",
      value: fom.cost_of_compute_eur_per_tflops,
      paren: null,
    },
    {
      key: "total_cost_eur",
      label: "Total cost",
      unit: "EUR",
      value: fom.total_cost_eur,
      paren: null,
    },
  ];
}

function cell(row: FomRow): string {
  const raw = row.value === null ? "null" : String(row.value);
  const text =
    row.paren !== null ? `${fmt(row.value)} (${fmt(row.paren)})` : fmt(row.value);
  return `<td class="num" data-key="${row.key}" data-value="${raw}">${escapeHtml(text)}</td>`;
}

export function renderFomTable(
  fom: FiguresOfMerit | null,
  options: { loading?: boolean; errors?: ApiErrorItem[] } = {},
): string {
  const parts: string[] = [];
  if (options.loading) {
    parts.push('<p class="loading" role="status">computing…</p>');
  }
  for (const err of options.errors ?? []) {
    parts.push(
      `<p class="error" data-path="${escapeHtml(err.path)}">${escapeHtml(err.path)}: ${escapeHtml(err.message)}</p>`,
    );
  }
  if (fom === null) {
    parts.push('<p class="empty">no forecast yet</p>');
    return parts.join("\n");
  }
  const rows = buildFomTable(fom)
    .map((row) => `<tr><th>${row.label} [${row.unit}]</th>${cell(row)}</tr>`)
    .join("\n");
  const shortfall = fom.compute_shortfall
    ? '<p class="shortfall" data-shortfall="true">Shortfall: required compute exceeds the available envelope</p>'
    : '<p class="ok" data-shortfall="false">Required compute fits the envelope</p>';
  parts.push(`<table class="fom">\n${rows}\n</table>`);
  parts.push(shortfall);
  return parts.join("\n");
}
