/**
 * Readers for the two adapter inputs.
 *
 * Raw parallel text: one sentence pair per line, three tab-separated fields
 * (sentence id, source sentence, target sentence).  Blank lines and lines
 * starting with '#' are ignored.
 *
 * Span annotations: one labeled phrase pair per line, six tab-separated
 * fields (sentence id, srcStart, srcEnd, tgtStart, tgtEnd, rawLabel), spans
 * as token offsets, end exclusive.
 */

import { readFileSync } from "node:fs";

import { FormatError } from "./errors.js";
import { RawLabel, RAW_LABEL_SET, RawSentencePair, SpanAnnotation } from "./types.js";

function dataLines(path: string): [number, string][] {
  const out: [number, string][] = [];
  const text = readFileSync(path, "utf-8");
  text.split("\n").forEach((line, i) => {
    const stripped = line.trim();
    if (stripped && !stripped.startsWith("#")) {
      out.push([i + 1, line.replace(/\r$/, "")]);
    }
  });
  return out;
}

export function readRawParallel(path: string): RawSentencePair[] {
  const pairs: RawSentencePair[] = [];
  const seen = new Set<string>();
  for (const [lineno, line] of dataLines(path)) {
    const fields = line.split("\t");
    if (fields.length !== 3) {
      throw new FormatError(path, lineno,
        `expected 3 tab-separated fields (id, source, target), got ${fields.length}`);
    }
    const [id, srcText, tgtText] = fields as [string, string, string];
    if (!id) {
      throw new FormatError(path, lineno, "empty sentence id");
    }
    if (seen.has(id)) {
      throw new FormatError(path, lineno, `duplicate sentence id ${JSON.stringify(id)}`);
    }
    if (!srcText.trim() || !tgtText.trim()) {
      throw new FormatError(path, lineno, "empty sentence text");
    }
    seen.add(id);
    pairs.push({ id, srcText: srcText.trim(), tgtText: tgtText.trim() });
  }
  return pairs;
}

export function readSpanAnnotations(path: string): SpanAnnotation[] {
  const spans: SpanAnnotation[] = [];
  for (const [lineno, line] of dataLines(path)) {
    const fields = line.split("\t");
    if (fields.length !== 6) {
      throw new FormatError(path, lineno,
        "expected 6 tab-separated fields "
        + `(id, srcStart, srcEnd, tgtStart, tgtEnd, label), got ${fields.length}`);
    }
    const [id, s0, s1, t0, t1, label] = fields as
      [string, string, string, string, string, string];
    const nums = [s0, s1, t0, t1].map((v) => Number(v));
    if (nums.some((v) => !Number.isInteger(v) || v < 0)) {
      throw new FormatError(path, lineno,
        `span offsets must be non-negative integers, got ${s0},${s1},${t0},${t1}`);
    }
    const [ss0, ss1, ts0, ts1] = nums as [number, number, number, number];
    if (ss0 >= ss1 || ts0 >= ts1) {
      throw new FormatError(path, lineno,
        `spans must be non-empty with exclusive ends, got [${ss0},${ss1}) [${ts0},${ts1})`);
    }
    if (!RAW_LABEL_SET.has(label)) {
      throw new FormatError(path, lineno, `unknown raw label ${JSON.stringify(label)}`);
    }
    spans.push({
      sentenceId: id,
      srcSpan: [ss0, ss1],
      tgtSpan: [ts0, ts1],
      rawLabel: label as RawLabel,
      line: lineno,
    });
  }
  return spans;
}
