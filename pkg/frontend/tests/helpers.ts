import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

const here = dirname(fileURLToPath(import.meta.url));

export function fixture<T>(name: string): T {
  return JSON.parse(
    readFileSync(join(here, "fixtures", `${name}.json`), "utf-8"),
  ) as T;
}

export interface RecordedCall {
  url: string;
  init?: RequestInit;
}

/** fetch stub returning canned JSON per (method, path) and recording calls. */
export function stubFetch(
  routes: Record<string, unknown>,
  calls: RecordedCall[] = [],
) {
  return async (url: string, init?: RequestInit): Promise<Response> => {
    calls.push({ url, init });
    const method = (init?.method ?? "GET").toUpperCase();
    const key = `${method} ${url}`;
    if (!(key in routes)) {
      return new Response(JSON.stringify({ errors: [] }), { status: 404 });
    }
    const entry = routes[key] as { status?: number; body: unknown } | unknown;
    const status =
      typeof entry === "object" && entry !== null && "status" in entry
        ? ((entry as { status: number }).status ?? 200)
        : 200;
    const body =
      typeof entry === "object" && entry !== null && "body" in entry
        ? (entry as { body: unknown }).body
        : entry;
    return new Response(JSON.stringify(body), {
      status,
      headers: { "content-type": "application/json" },
    });
  };
}

/** Extract data-key/data-value pairs embedded in rendered HTML. */
export function extractValues(html: string): Map<string, string[]> {
  const out = new Map<string, string[]>();
  const re = /data-key="([^"]+)" data-value="([^"]+)"/g;
  for (const match of html.matchAll(re)) {
    const list = out.get(match[1]) ?? [];
    list.push(match[2]);
    out.set(match[1], list);
  }
  return out;
}
