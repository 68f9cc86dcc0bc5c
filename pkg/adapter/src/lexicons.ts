/**
 * Lexical-resource emitters: reformat tool dumps into the resource files the
 * classifier loads.  Formatting only; nothing here computes statistics.
 *
 * Inputs:
 *  - aligner probability dump: one word pair per line, four space-separated
 *    fields `e f p_e_given_f p_f_given_e`; NULL is a valid word (the
 *    aligner's empty-word row).
 *  - embedding source: headerless text, `key v1 v2 ...` per line, keys
 *    already language-prefixed (en/..., fr/...).
 *  - assertion dump: four tab-separated fields
 *    `relation  /c/<lang>/<term>  /c/<lang>/<term>  weight`.
 *
 * Outputs (classifier formats):
 *  - table_e_given_f.tsv / table_f_given_e.tsv: `cond  gen  prob` (tabs)
 *  - embeddings.txt: `count dim` header, then `key v1 ... vdim` (spaces)
 *  - concepts.tsv: `relation  start  end` (tabs), EN-FR/FR-FR rows only;
 *    anything else is dropped and the count is logged.
 */

import { mkdirSync, readFileSync, writeFileSync } from "node:fs";
import { join } from "node:path";

import { AdapterError, FormatError } from "./errors.js";

export interface LexiconSources {
  alignerDump: string;
  embeddingSource: string;
  conceptSource: string;
}

export interface LexiconFiles {
  table_e_given_f: string;
  table_f_given_e: string;
  embeddings: string;
  concepts: string;
}

export interface LexiconResult {
  files: LexiconFiles;
  /** Rows written to each translation-table file (equal by construction). */
  translationRows: number;
  embeddingRows: number;
  embeddingDim: number;
  conceptsKept: number;
  conceptsDropped: number;
}

type Logger = (message: string) => void;

function dataLines(path: string): [number, string][] {
  const out: [number, string][] = [];
  readFileSync(path, "utf-8").split("\n").forEach((line, i) => {
    const stripped = line.trim();
    if (stripped && !stripped.startsWith("#")) {
      out.push([i + 1, line.replace(/\r$/, "")]);
    }
  });
  return out;
}

function parseProb(path: string, lineno: number, raw: string): number {
  const p = Number(raw);
  if (!Number.isFinite(p)) {
    throw new FormatError(path, lineno, `unparseable probability ${JSON.stringify(raw)}`);
  }
  if (p < 0 || p > 1) {
    throw new FormatError(path, lineno, `probability ${raw} outside [0,1]`);
  }
  return p;
}

function checkMass(direction: string, rows: [string, string, string][],
  lines: Map<string, number[]>): void {
  const mass = new Map<string, number>();
  for (const [cond, , p] of rows) {
    mass.set(cond, (mass.get(cond) ?? 0) + Number(p));
  }
  for (const [cond, m] of mass) {
    if (m > 1 + 1e-6) {
      const where = (lines.get(cond) ?? []).join(", ");
      throw new AdapterError(
        `${direction}: probabilities for conditioning word ${JSON.stringify(cond)} `
        + `sum to ${m.toFixed(8)} > 1 (dump lines ${where})`);
    }
  }
}

/** Convert the aligner dump into the two directional table files. */
export function buildTranslationTables(dumpPath: string, outEF: string,
  outFE: string): { rows: number } {
  const efRows: [string, string, string][] = [];
  const feRows: [string, string, string][] = [];
  const efLines = new Map<string, number[]>();
  const feLines = new Map<string, number[]>();
  for (const [lineno, line] of dataLines(dumpPath)) {
    const fields = line.trim().split(/\s+/);
    if (fields.length !== 4) {
      throw new FormatError(dumpPath, lineno,
        `expected 4 fields (e, f, p_e_given_f, p_f_given_e), got ${fields.length}`);
    }
    const [e, f, rawPef, rawPfe] = fields as [string, string, string, string];
    parseProb(dumpPath, lineno, rawPef);
    parseProb(dumpPath, lineno, rawPfe);
    efRows.push([f, e, rawPef]);
    feRows.push([e, f, rawPfe]);
    efLines.set(f, [...(efLines.get(f) ?? []), lineno]);
    feLines.set(e, [...(feLines.get(e) ?? []), lineno]);
  }
  checkMass("e_given_f", efRows, efLines);
  checkMass("f_given_e", feRows, feLines);
  const write = (path: string, rows: [string, string, string][]) => {
    const body = [...rows].sort()
      .map(([c, g, p]) => `${c}\t${g}\t${p}\n`).join("");
    writeFileSync(path, body, "utf-8");
  };
  write(outEF, efRows);
  write(outFE, feRows);
  return { rows: efRows.length };
}

/** Reformat a headerless embedding file into the header-carrying format. */
export function buildEmbeddings(sourcePath: string, outPath: string,
): { rows: number; dim: number } {
  const entries = new Map<string, string[]>();
  let dim = -1;
  let dimLine = -1;
  for (const [lineno, line] of dataLines(sourcePath)) {
    const fields = line.trim().split(/\s+/);
    const [key, ...vals] = fields as [string, ...string[]];
    if (vals.length === 0) {
      throw new FormatError(sourcePath, lineno, `key ${JSON.stringify(key)} has no values`);
    }
    for (const v of vals) {
      if (!Number.isFinite(Number(v))) {
        throw new FormatError(sourcePath, lineno, `unparseable real ${JSON.stringify(v)}`);
      }
    }
    if (dim === -1) {
      dim = vals.length;
      dimLine = lineno;
    } else if (vals.length !== dim) {
      throw new FormatError(sourcePath, lineno,
        `dimension inconsistency: ${vals.length} values for key ${JSON.stringify(key)}, `
        + `line ${dimLine} established ${dim}`);
    }
    entries.set(key, vals);
  }
  if (entries.size === 0) {
    throw new AdapterError(`${sourcePath}: no embedding rows`);
  }
  const keys = [...entries.keys()].sort();
  const body = keys.map((k) => `${k} ${entries.get(k)!.join(" ")}\n`).join("");
  writeFileSync(outPath, `${keys.length} ${dim}\n${body}`, "utf-8");
  return { rows: keys.length, dim };
}

const NODE_URI = /^\/c\/([a-z]{2})\/(.+)$/;

/** Filter an assertion dump to EN-FR/FR-FR rows and emit the triple file. */
export function buildConcepts(sourcePath: string, outPath: string,
  log: Logger = (m) => process.stderr.write(`${m}\n`),
): { kept: number; dropped: number } {
  const rows: string[] = [];
  let dropped = 0;
  for (const [lineno, line] of dataLines(sourcePath)) {
    const fields = line.split("\t");
    if (fields.length !== 4) {
      throw new FormatError(sourcePath, lineno,
        `expected 4 tab-separated fields (relation, start, end, weight), got ${fields.length}`);
    }
    const [relation, startUri, endUri, weight] = fields as [string, string, string, string];
    if (!Number.isFinite(Number(weight))) {
      throw new FormatError(sourcePath, lineno, `unparseable weight ${JSON.stringify(weight)}`);
    }
    const ms = NODE_URI.exec(startUri);
    const me = NODE_URI.exec(endUri);
    if (!ms || !me) {
      throw new FormatError(sourcePath, lineno,
        `node is not a /c/<lang>/<term> uri: ${JSON.stringify(!ms ? startUri : endUri)}`);
    }
    const langs = new Set([ms[1], me[1]]);
    const isEnFr = langs.size === 2 && langs.has("en") && langs.has("fr");
    const isFrFr = langs.size === 1 && langs.has("fr");
    if (isEnFr || isFrFr) {
      rows.push(`${relation}\t${ms[1]}/${ms[2]}\t${me[1]}/${me[2]}\n`);
    } else {
      dropped += 1;
    }
  }
  if (dropped) {
    log(`${sourcePath}: dropped ${dropped} assertions outside EN-FR/FR-FR`);
  }
  writeFileSync(outPath, [...rows].sort().join(""), "utf-8");
  return { kept: rows.length, dropped };
}

/** Build all lexical resources into `outDir` with the classifier's filenames. */
export function buildLexicons(sources: LexiconSources, outDir: string,
  log: Logger = (m) => process.stderr.write(`${m}\n`)): LexiconResult {
  mkdirSync(outDir, { recursive: true });
  const files: LexiconFiles = {
    table_e_given_f: join(outDir, "table_e_given_f.tsv"),
    table_f_given_e: join(outDir, "table_f_given_e.tsv"),
    embeddings: join(outDir, "embeddings.txt"),
    concepts: join(outDir, "concepts.tsv"),
  };
  const tables = buildTranslationTables(sources.alignerDump,
    files.table_e_given_f, files.table_f_given_e);
  const emb = buildEmbeddings(sources.embeddingSource, files.embeddings);
  const concepts = buildConcepts(sources.conceptSource, files.concepts, log);
  return {
    files,
    translationRows: tables.rows,
    embeddingRows: emb.rows,
    embeddingDim: emb.dim,
    conceptsKept: concepts.kept,
    conceptsDropped: concepts.dropped,
  };
}
