/**
 * The preprocessing pipeline: raw parallel text plus span annotations in,
 * one validated annotation-bundle file out.
 *
 * Tools speak a batch protocol (JSON lines over stdin/stdout), so each of
 * the seven tools is invoked once per run and all invocations that have
 * their inputs ready run concurrently; per-document work is pure assembly.
 * The merge is deterministic: records are ordered by document id, never by
 * tool completion order, and serialization is canonical, so a rerun with
 * identical tool versions produces a byte-identical bundle.
 *
 * Tag discipline: every native tag crossing into the bundle goes through
 * the profile's mapping file; an unmapped tag aborts the run naming the tag
 * and the tool.  Tool versions are polled, checked against the profile pin,
 * and recorded in each record's metadata.
 */

import { writeFileSync } from "node:fs";

import { bracketToTree } from "./brackets.js";
import { canonicalJson } from "./canonical.js";
import { AdapterError, ToolFailureError } from "./errors.js";
import { readRawParallel, readSpanAnnotations } from "./rawInput.js";
import { CoverageReport, loadMapping, TagMapper } from "./tagmap.js";
import { pollVersion, runToolBatch } from "./toolRunner.js";
import {
  AlignerRequest, AlignerResponse, BundleArc, BundleRecord, BundleSide,
  BundleToken, ConstParserResponse, DepParserResponse, DepRelation,
  FORMAT_VERSION, NativeToken, ParserRequest, RawLabel, RawSentencePair,
  SpanAnnotation, TaggerRequest, TaggerResponse, TagKind, ToolProfile,
  ToolProfiles, ToolRole, UposTag,
} from "./types.js";

export interface PipelineResult {
  records: BundleRecord[];
  /** Per-tagged-tool mapping coverage over this run's observed tags. */
  coverage: CoverageReport[];
  /** Polled tool versions, keyed by role. */
  toolVersions: Record<string, { tool: string; version: string }>;
  /** Canonical serialization of `records`, one JSON line each. */
  bundleText: string;
}

const MAPPED_ROLES: [ToolRole, TagKind][] = [
  ["src_tagger", "pos"],
  ["tgt_tagger", "pos"],
  ["src_dep_parser", "dep"],
  ["tgt_dep_parser", "dep"],
  ["src_const_parser", "const"],
  ["tgt_const_parser", "const"],
];

const ALL_ROLES: ToolRole[] = [
  "src_tagger", "tgt_tagger", "src_dep_parser", "tgt_dep_parser",
  "src_const_parser", "tgt_const_parser", "aligner",
];

function buildMappers(profiles: ToolProfiles): Map<ToolRole, TagMapper> {
  const mappers = new Map<ToolRole, TagMapper>();
  for (const [role, kind] of MAPPED_ROLES) {
    const profile = profiles[role];
    if (!profile.mappingFile || !profile.tagset) {
      throw new AdapterError(`profile for ${role} names no tagset/mapping file`);
    }
    mappers.set(role, new TagMapper(profile.tool, profile.tagset, kind,
      loadMapping(profile.mappingFile)));
  }
  return mappers;
}

function checkTokens(tokens: NativeToken[] | undefined, profile: ToolProfile,
  id: string): NativeToken[] {
  if (!Array.isArray(tokens) || tokens.length === 0) {
    throw new ToolFailureError(profile.tool,
      `returned no tokens for document ${JSON.stringify(id)}`, "");
  }
  return tokens;
}

function mapTokens(tokens: NativeToken[], mapper: TagMapper): BundleToken[] {
  return tokens.map((t) => ({
    surface: t.surface,
    lemma: t.lemma,
    upos: mapper.map(t.tag) as UposTag,
  }));
}

function mapArcs(response: DepParserResponse, n: number, mapper: TagMapper,
  profile: ToolProfile): BundleArc[] {
  const arcs = response.arcs ?? [];
  return arcs.map((a) => {
    if (!Number.isInteger(a.head) || !Number.isInteger(a.dependent)
      || a.head < 0 || a.head >= n || a.dependent < 0 || a.dependent >= n) {
      throw new ToolFailureError(profile.tool,
        `arc (${a.head},${a.dependent}) out of range for document `
        + `${JSON.stringify(response.id)} (n=${n})`, "");
    }
    if (a.head === a.dependent) {
      throw new ToolFailureError(profile.tool,
        `self-loop arc at token ${a.head} in document ${JSON.stringify(response.id)}`, "");
    }
    return {
      head: a.head,
      dependent: a.dependent,
      relation: mapper.map(a.relation) as DepRelation,
    };
  });
}

function checkLinks(response: AlignerResponse, ns: number, nt: number,
  profile: ToolProfile): [number, number][] {
  const seen = new Set<string>();
  const links = response.links ?? [];
  for (const [s, t] of links) {
    if (!Number.isInteger(s) || !Number.isInteger(t)
      || s < 0 || s >= ns || t < 0 || t >= nt) {
      throw new ToolFailureError(profile.tool,
        `link (${s},${t}) out of range for document `
        + `${JSON.stringify(response.id)} (ns=${ns}, nt=${nt})`, "");
    }
    const key = `${s},${t}`;
    if (seen.has(key)) {
      throw new ToolFailureError(profile.tool,
        `duplicate link (${s},${t}) in document ${JSON.stringify(response.id)}`, "");
    }
    seen.add(key);
  }
  return links.map(([s, t]) => [s, t]);
}

function checkSpans(spans: SpanAnnotation[], ns: number, nt: number,
  spansPath: string): { src_span: [number, number]; tgt_span: [number, number];
    raw_label: RawLabel }[] {
  return spans.map((sp) => {
    if (sp.srcSpan[1] > ns || sp.tgtSpan[1] > nt) {
      throw new AdapterError(
        `${spansPath}:${sp.line}: span [${sp.srcSpan}) [${sp.tgtSpan}) exceeds `
        + `sentence ${JSON.stringify(sp.sentenceId)} (ns=${ns}, nt=${nt})`);
    }
    return { src_span: sp.srcSpan, tgt_span: sp.tgtSpan, raw_label: sp.rawLabel };
  });
}

export async function runPipeline(rawPath: string, spansPath: string,
  profiles: ToolProfiles): Promise<PipelineResult> {
  const pairs = readRawParallel(rawPath);
  const spans = readSpanAnnotations(spansPath);

  const knownIds = new Set(pairs.map((p) => p.id));
  const spansById = new Map<string, SpanAnnotation[]>();
  for (const sp of spans) {
    if (!knownIds.has(sp.sentenceId)) {
      throw new AdapterError(
        `${spansPath}:${sp.line}: span references unknown sentence id `
        + JSON.stringify(sp.sentenceId));
    }
    const bucket = spansById.get(sp.sentenceId) ?? [];
    bucket.push(sp);
    spansById.set(sp.sentenceId, bucket);
  }

  const mappers = buildMappers(profiles);

  const toolVersions: Record<string, { tool: string; version: string }> = {};
  await Promise.all(ALL_ROLES.map(async (role) => {
    const version = await pollVersion(profiles[role]);
    toolVersions[role] = { tool: profiles[role].tool, version };
  }));

  // stage 1: both taggers (they define the tokenization of record)
  const srcTagReq: TaggerRequest[] = pairs.map((p) => ({ id: p.id, text: p.srcText }));
  const tgtTagReq: TaggerRequest[] = pairs.map((p) => ({ id: p.id, text: p.tgtText }));
  const [srcTagged, tgtTagged] = await Promise.all([
    runToolBatch<TaggerRequest, TaggerResponse>(profiles.src_tagger, srcTagReq),
    runToolBatch<TaggerRequest, TaggerResponse>(profiles.tgt_tagger, tgtTagReq),
  ]);

  const tokensOf = (side: "src" | "tgt", p: RawSentencePair): NativeToken[] => {
    const tagged = side === "src" ? srcTagged.get(p.id) : tgtTagged.get(p.id);
    const profile = side === "src" ? profiles.src_tagger : profiles.tgt_tagger;
    return checkTokens(tagged?.tokens, profile, p.id);
  };

  // stage 2: parsers and aligner, all over the tagged tokens
  const parserReq = (side: "src" | "tgt"): ParserRequest[] =>
    pairs.map((p) => ({
      id: p.id,
      tokens: tokensOf(side, p).map((t) => ({ surface: t.surface, tag: t.tag })),
    }));
  const alignReq: AlignerRequest[] = pairs.map((p) => ({
    id: p.id,
    src: tokensOf("src", p).map((t) => t.surface),
    tgt: tokensOf("tgt", p).map((t) => t.surface),
  }));

  const [srcDep, tgtDep, srcConst, tgtConst, aligned] = await Promise.all([
    runToolBatch<ParserRequest, DepParserResponse>(profiles.src_dep_parser, parserReq("src")),
    runToolBatch<ParserRequest, DepParserResponse>(profiles.tgt_dep_parser, parserReq("tgt")),
    runToolBatch<ParserRequest, ConstParserResponse>(profiles.src_const_parser, parserReq("src")),
    runToolBatch<ParserRequest, ConstParserResponse>(profiles.tgt_const_parser, parserReq("tgt")),
    runToolBatch<AlignerRequest, AlignerResponse>(profiles.aligner, alignReq),
  ]);

  // stage 3: pure assembly, merged in document-id order
  const meta = { tools: toolVersions };
  const records: BundleRecord[] = [...pairs]
    .sort((a, b) => (a.id < b.id ? -1 : a.id > b.id ? 1 : 0))
    .map((p) => {
      const side = (which: "src" | "tgt"): BundleSide => {
        const native = tokensOf(which, p);
        const surfaces = native.map((t) => t.surface);
        const tagMapper = mappers.get(which === "src" ? "src_tagger" : "tgt_tagger")!;
        const depRole = which === "src" ? "src_dep_parser" : "tgt_dep_parser";
        const constRole = which === "src" ? "src_const_parser" : "tgt_const_parser";
        const dep = (which === "src" ? srcDep : tgtDep).get(p.id)!;
        const con = (which === "src" ? srcConst : tgtConst).get(p.id)!;
        let tree;
        try {
          tree = bracketToTree(con.bracket ?? "", surfaces, mappers.get(constRole)!);
        } catch (exc) {
          if (exc instanceof AdapterError && !(exc instanceof ToolFailureError)) {
            throw new ToolFailureError(profiles[constRole].tool,
              `document ${JSON.stringify(p.id)}: ${exc.message}`, con.bracket ?? "");
          }
          throw exc;
        }
        return {
          tokens: mapTokens(native, tagMapper),
          deps: mapArcs(dep, native.length, mappers.get(depRole)!, profiles[depRole]),
          tree,
        };
      };
      const src = side("src");
      const tgt = side("tgt");
      const ns = src.tokens.length;
      const nt = tgt.tokens.length;
      return {
        format_version: FORMAT_VERSION,
        id: p.id,
        src,
        tgt,
        alignment: checkLinks(aligned.get(p.id)!, ns, nt, profiles.aligner),
        phrase_pairs: checkSpans(spansById.get(p.id) ?? [], ns, nt, spansPath),
        meta,
      };
    });

  const bundleText = records.map((r) => `${canonicalJson(r)}\n`).join("");
  const coverage = [...mappers.values()].map((m) => m.audit());
  return { records, coverage, toolVersions, bundleText };
}

export async function runPipelineToFile(rawPath: string, spansPath: string,
  profiles: ToolProfiles, outPath: string): Promise<PipelineResult> {
  const result = await runPipeline(rawPath, spansPath, profiles);
  writeFileSync(outPath, result.bundleText, "utf-8");
  return result;
}
