import { existsSync, readFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { runCli } from "../src/cli.js";
import { fixture, tempDir } from "./helpers.js";

interface Captured {
  out: string[];
  err: string[];
}

function capture(): Captured & { stdio: { out: (l: string) => void; err: (l: string) => void } } {
  const out: string[] = [];
  const err: string[] = [];
  return { out, err, stdio: { out: (l) => out.push(l), err: (l) => err.push(l) } };
}

describe("runCli", () => {
  it("prints usage and exits 2 without a command", async () => {
    const cap = capture();
    expect(await runCli([], cap.stdio)).toBe(2);
    expect(cap.err.join("\n")).toContain("usage:");
    expect(await runCli(["frobnicate"], cap.stdio)).toBe(2);
  });

  it("reports missing options as errors, not stack traces", async () => {
    const cap = capture();
    expect(await runCli(["bundle", "--raw", "x.tsv"], cap.stdio)).toBe(1);
    expect(cap.err[0]).toMatch(/error: missing required options: --spans, --profiles, --out/);
  });

  it("bundle writes the records and prints coverage", async () => {
    const out = join(tempDir(), "bundle.jsonl");
    const cap = capture();
    const rc = await runCli([
      "bundle",
      "--raw", fixture("raw", "parallel_3.tsv"),
      "--spans", fixture("raw", "spans_3.tsv"),
      "--profiles", fixture("profiles.json"),
      "--out", out,
    ], cap.stdio);
    expect(cap.err).toEqual([]);
    expect(rc).toBe(0);
    expect(cap.out[0]).toBe(`wrote 3 records to ${out}`);
    expect(cap.out.filter((l) => l.startsWith("coverage "))).toHaveLength(6);
    expect(readFileSync(out, "utf-8").trimEnd().split("\n")).toHaveLength(3);
  });

  it("emit writes a complete workspace", async () => {
    const out = join(tempDir(), "ws");
    const cap = capture();
    const rc = await runCli([
      "emit",
      "--raw", fixture("raw", "parallel_3.tsv"),
      "--spans", fixture("raw", "spans_3.tsv"),
      "--profiles", fixture("profiles.json"),
      "--aligner-dump", fixture("lexicons", "aligner_dump.txt"),
      "--embeddings", fixture("lexicons", "embeddings_source.txt"),
      "--assertions", fixture("lexicons", "assertions_source.tsv"),
      "--manual-lists", fixture("manual_lists.yaml"),
      "--out", out,
    ], cap.stdio);
    expect(rc).toBe(0);
    expect(cap.out[0]).toMatch(/workspace at .*: 3 records/);
    for (const name of ["bundle.jsonl", "config.yaml", "coverage.json",
      "resources/embeddings.txt", "resources/table_e_given_f.tsv",
      "resources/table_f_given_e.tsv", "resources/concepts.tsv",
      "resources/manual_lists.yaml"]) {
      expect(existsSync(join(out, name)), name).toBe(true);
    }
  });

  it("turns adapter failures into exit 1 with a message", async () => {
    const cap = capture();
    const rc = await runCli([
      "bundle",
      "--raw", join(tempDir(), "missing.tsv"),
      "--spans", fixture("raw", "spans_3.tsv"),
      "--profiles", fixture("profiles.json"),
      "--out", join(tempDir(), "x.jsonl"),
    ], cap.stdio);
    expect(rc).toBe(1);
    expect(cap.err[0]).toMatch(/^error: /);
  });
});
