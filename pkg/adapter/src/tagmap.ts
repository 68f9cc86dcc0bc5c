/**
 * Native-to-unified tag mapping.
 *
 * A mapping file is a JSON object from native tag to unified tag.  The
 * unified side is validated against the closed inventory for its kind at
 * load time, so a bad mapping file fails before any tool runs.  At mapping
 * time an unknown native tag is a hard error naming the tag and the tool
 * that produced it.
 */

import { readFileSync } from "node:fs";

import { AdapterError, UnmappedTagError } from "./errors.js";
import { CONST_SET, DEP_SET, TagKind, UPOS_SET } from "./types.js";

const UNIFIED_SETS: Record<TagKind, ReadonlySet<string>> = {
  pos: UPOS_SET,
  dep: DEP_SET,
  const: CONST_SET,
};

export class TagMapper {
  readonly tool: string;
  readonly tagset: string;
  readonly kind: TagKind;
  private readonly mapping: ReadonlyMap<string, string>;
  private readonly seen = new Set<string>();

  constructor(tool: string, tagset: string, kind: TagKind,
    mapping: Record<string, string>) {
    const unified = UNIFIED_SETS[kind];
    for (const [native, target] of Object.entries(mapping)) {
      if (!unified.has(target)) {
        throw new AdapterError(
          `mapping for ${tagset} sends ${JSON.stringify(native)} to `
          + `${JSON.stringify(target)}, which is not a unified ${kind} tag`);
      }
    }
    this.tool = tool;
    this.tagset = tagset;
    this.kind = kind;
    this.mapping = new Map(Object.entries(mapping));
  }

  map(nativeTag: string): string {
    const unified = this.mapping.get(nativeTag);
    if (unified === undefined) {
      throw new UnmappedTagError(this.tool, nativeTag, this.tagset);
    }
    this.seen.add(nativeTag);
    return unified;
  }

  /** Coverage of the mapping file over the native tags observed so far. */
  audit(): CoverageReport {
    const entries = [...this.mapping.keys()];
    const used = entries.filter((t) => this.seen.has(t)).sort();
    const unused = entries.filter((t) => !this.seen.has(t)).sort();
    return {
      tool: this.tool,
      tagset: this.tagset,
      observed: this.seen.size,
      mappingEntries: entries.length,
      used,
      unused,
    };
  }
}

export interface CoverageReport {
  tool: string;
  tagset: string;
  /** Distinct native tags observed in tool output (all mapped, by construction). */
  observed: number;
  mappingEntries: number;
  used: string[];
  unused: string[];
}

export function loadMapping(path: string): Record<string, string> {
  let raw: unknown;
  try {
    raw = JSON.parse(readFileSync(path, "utf-8"));
  } catch (exc) {
    throw new AdapterError(`cannot read mapping file ${path}: ${exc}`);
  }
  if (raw === null || typeof raw !== "object" || Array.isArray(raw)) {
    throw new AdapterError(`mapping file ${path} must hold a JSON object`);
  }
  const mapping: Record<string, string> = {};
  for (const [native, target] of Object.entries(raw)) {
    if (typeof target !== "string") {
      throw new AdapterError(
        `mapping file ${path}: value for ${JSON.stringify(native)} is not a string`);
    }
    mapping[native] = target;
  }
  return mapping;
}
