/**
 * Canonical JSON: recursively key-sorted, no insignificant whitespace,
 * unicode kept literal.  Serializing the same value twice yields the same
 * bytes, which is what makes bundle emission reproducible.
 */

export function canonicalJson(value: unknown): string {
  if (value === null || typeof value === "number" || typeof value === "boolean"
    || typeof value === "string") {
    return JSON.stringify(value);
  }
  if (Array.isArray(value)) {
    return `[${value.map(canonicalJson).join(",")}]`;
  }
  if (typeof value === "object") {
    const entries = Object.entries(value as Record<string, unknown>)
      .filter(([, v]) => v !== undefined)
      .sort(([a], [b]) => (a < b ? -1 : a > b ? 1 : 0));
    const body = entries
      .map(([k, v]) => `${JSON.stringify(k)}:${canonicalJson(v)}`)
      .join(",");
    return `{${body}}`;
  }
  throw new TypeError(`cannot serialize ${typeof value}`);
}
