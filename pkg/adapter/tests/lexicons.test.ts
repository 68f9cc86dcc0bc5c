import { readFileSync, writeFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import {
  buildConcepts, buildEmbeddings, buildLexicons, buildTranslationTables,
} from "../src/lexicons.js";
import { fixture, tempDir } from "./helpers.js";

function write(name: string, content: string): string {
  const path = join(tempDir(), name);
  writeFileSync(path, content, "utf-8");
  return path;
}

const read = (path: string) => readFileSync(path, "utf-8");

describe("buildTranslationTables", () => {
  it("emits one row per dump row in each direction, sorted", () => {
    const dump = write("dump.txt", [
      "the le 0.8 0.3",
      "the la 0.8 0.3",
      "house maison 0.9 0.85",
      "garden jardin 0.9 0.85",
      "he il 0.45 0.9",
      "it il 0.45 0.4",
      "it elle 0.4 0.4",
      "of de 0.7 0.45",
      "of du 0.7 0.45",
      "the NULL 0.02 0.05",
    ].join("\n") + "\n");
    const dir = tempDir();
    const ef = join(dir, "ef.tsv");
    const fe = join(dir, "fe.tsv");
    const { rows } = buildTranslationTables(dump, ef, fe);
    expect(rows).toBe(10);
    const efLines = read(ef).trimEnd().split("\n");
    const feLines = read(fe).trimEnd().split("\n");
    expect(efLines).toHaveLength(10);
    expect(feLines).toHaveLength(10);
    expect(efLines).toEqual([...efLines].sort());
    // dump row "e f pef pfe" lands as (f, e, pef) and (e, f, pfe)
    expect(efLines).toContain("maison\thouse\t0.9");
    expect(feLines).toContain("house\tmaison\t0.85");
    // the NULL sentinel survives as a word on either side
    expect(efLines).toContain("NULL\tthe\t0.02");
    expect(feLines).toContain("the\tNULL\t0.05");
  });

  it("converts the shipped dump", () => {
    const dir = tempDir();
    const dumpLines = read(fixture("lexicons", "aligner_dump.txt"))
      .trimEnd().split("\n").length;
    const { rows } = buildTranslationTables(
      fixture("lexicons", "aligner_dump.txt"),
      join(dir, "ef.tsv"), join(dir, "fe.tsv"));
    expect(rows).toBe(dumpLines);
  });

  it("rejects malformed rows and probabilities outside [0,1]", () => {
    const dir = tempDir();
    const out = [join(dir, "a.tsv"), join(dir, "b.tsv")] as const;
    expect(() => buildTranslationTables(
      write("short.txt", "the le 0.5\n"), ...out))
      .toThrow(/expected 4 fields/);
    expect(() => buildTranslationTables(
      write("big.txt", "the le 1.5 0.5\n"), ...out))
      .toThrow(/1.5 outside \[0,1\]/);
    expect(() => buildTranslationTables(
      write("nan.txt", "the le x 0.5\n"), ...out))
      .toThrow(/unparseable probability "x"/);
  });

  it("rejects a conditioning word whose mass exceeds one, naming dump lines", () => {
    const dump = write("over.txt",
      "big grand 0.6 0.5\nlarge grand 0.6 0.5\n");
    const dir = tempDir();
    expect(() => buildTranslationTables(dump, join(dir, "a.tsv"), join(dir, "b.tsv")))
      .toThrow(/e_given_f.*"grand".*sum to 1\.20000000.*dump lines 1, 2/s);
  });
});

describe("buildEmbeddings", () => {
  it("adds the count/dim header and sorts keys", () => {
    const src = write("emb.txt",
      "en/b 1 2 3\nen/a 4 5 6\nfr/c 7 8 9\n");
    const out = join(tempDir(), "emb_out.txt");
    const { rows, dim } = buildEmbeddings(src, out);
    expect(rows).toBe(3);
    expect(dim).toBe(3);
    expect(read(out)).toBe("3 3\nen/a 4 5 6\nen/b 1 2 3\nfr/c 7 8 9\n");
  });

  it("keeps the last row for a duplicated key", () => {
    const src = write("dup.txt", "en/a 1 2\nen/a 3 4\n");
    const out = join(tempDir(), "dup_out.txt");
    const { rows } = buildEmbeddings(src, out);
    expect(rows).toBe(1);
    expect(read(out)).toBe("1 2\nen/a 3 4\n");
  });

  it("rejects dimension drift, naming both lines", () => {
    const src = write("drift.txt", "en/a 1 2 3\nen/b 1 2\n");
    expect(() => buildEmbeddings(src, join(tempDir(), "x.txt")))
      .toThrow(/2 values for key "en\/b", line 1 established 3/);
  });

  it("rejects empty and unparseable input", () => {
    expect(() => buildEmbeddings(write("none.txt", "# nothing\n"),
      join(tempDir(), "x.txt"))).toThrow(/no embedding rows/);
    expect(() => buildEmbeddings(write("bare.txt", "en/a\n"),
      join(tempDir(), "x.txt"))).toThrow(/has no values/);
    expect(() => buildEmbeddings(write("text.txt", "en/a 1 two\n"),
      join(tempDir(), "x.txt"))).toThrow(/unparseable real "two"/);
  });
});

describe("buildConcepts", () => {
  it("keeps EN-FR and FR-FR rows, drops the rest and logs the count", () => {
    const src = write("assert.tsv", [
      "RelatedTo\t/c/en/house\t/c/fr/maison\t2.0",
      "RelatedTo\t/c/fr/maison\t/c/en/house\t2.0",
      "Synonym\t/c/fr/rapide\t/c/fr/vite\t1.0",
      "RelatedTo\t/c/en/house\t/c/en/garden\t1.0",
      "RelatedTo\t/c/en/road\t/c/de/strasse\t1.0",
      "RelatedTo\t/c/es/casa\t/c/fr/maison\t1.0",
    ].join("\n") + "\n");
    const out = join(tempDir(), "concepts.tsv");
    const logged: string[] = [];
    const { kept, dropped } = buildConcepts(src, out, (m) => logged.push(m));
    expect(kept).toBe(3);
    expect(dropped).toBe(3);
    expect(logged).toHaveLength(1);
    expect(logged[0]).toMatch(/dropped 3 assertions outside EN-FR\/FR-FR/);
    expect(read(out)).toBe([
      "RelatedTo\ten/house\tfr/maison\n",
      "RelatedTo\tfr/maison\ten/house\n",
      "Synonym\tfr/rapide\tfr/vite\n",
    ].sort().join(""));
  });

  it("stays silent when nothing is dropped", () => {
    const src = write("clean.tsv", "RelatedTo\t/c/en/a\t/c/fr/b\t1.0\n");
    const logged: string[] = [];
    buildConcepts(src, join(tempDir(), "c.tsv"), (m) => logged.push(m));
    expect(logged).toHaveLength(0);
  });

  it("rejects malformed rows", () => {
    expect(() => buildConcepts(write("f3.tsv", "RelatedTo\t/c/en/a\t/c/fr/b\n"),
      join(tempDir(), "x.tsv"))).toThrow(/expected 4 tab-separated fields/);
    expect(() => buildConcepts(
      write("uri.tsv", "RelatedTo\ten/a\t/c/fr/b\t1.0\n"),
      join(tempDir(), "x.tsv"))).toThrow(/not a \/c\/<lang>\/<term> uri: "en\/a"/);
    expect(() => buildConcepts(
      write("w.tsv", "RelatedTo\t/c/en/a\t/c/fr/b\theavy\n"),
      join(tempDir(), "x.tsv"))).toThrow(/unparseable weight "heavy"/);
  });
});

describe("buildLexicons", () => {
  it("writes all four resource files from the shipped dumps", () => {
    const outDir = join(tempDir(), "resources");
    const logged: string[] = [];
    const result = buildLexicons({
      alignerDump: fixture("lexicons", "aligner_dump.txt"),
      embeddingSource: fixture("lexicons", "embeddings_source.txt"),
      conceptSource: fixture("lexicons", "assertions_source.tsv"),
    }, outDir, (m) => logged.push(m));
    expect(result.translationRows).toBeGreaterThan(80);
    expect(result.embeddingDim).toBe(8);
    expect(result.conceptsDropped).toBe(5);
    expect(logged).toHaveLength(1);
    const header = read(result.files.embeddings).split("\n", 1)[0];
    expect(header).toBe(`${result.embeddingRows} 8`);
    for (const path of Object.values(result.files)) {
      expect(read(path).length).toBeGreaterThan(0);
    }
  });
});
