/** Presentation-only number formatting. Values pass through untouched except
 * for rounding to a readable number of digits. */

export function fmt(value: number | null | undefined, digits = 4): string {
  if (value === null || value === undefined) {
    return "n/a";
  }
  if (value === 0) {
    return "0";
  }
  const magnitude = Math.abs(value);
  if (magnitude >= 1e6) {
    return value.toExponential(2);
  }
  if (magnitude >= 100) {
    return value.toLocaleString("en-US", { maximumFractionDigits: 0 });
  }
  return Number(value.toPrecision(digits)).toString();
}

export function fmtPercent(fraction: number | null | undefined): string {
  if (fraction === null || fraction === undefined) {
    return "n/a";
  }
  return `${(fraction * 100).toFixed(1)}%`;
}

export function fmtSeconds(value: number | null | undefined): string {
  if (value === null || value === undefined) {
    return "n/a";
  }
  if (value < 1) {
    return `${(value * 1000).toFixed(2)} ms`;
  }
  return `${fmt(value)} s`;
}

export function escapeHtml(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}
