/**
 * Tool-profile file loading.  The file is a JSON object keyed by role; every
 * one of the seven roles must be present.  Path-valued fields support a
 * "{dir}" placeholder that expands to the profile file's own directory, so
 * profile files can ship next to the tools and mappings they name.
 */

import { readFileSync } from "node:fs";
import { dirname, resolve } from "node:path";

import { AdapterError } from "./errors.js";
import { ToolProfile, ToolProfiles, ToolRole } from "./types.js";

const ROLES: ToolRole[] = [
  "src_tagger", "tgt_tagger", "src_dep_parser", "tgt_dep_parser",
  "src_const_parser", "tgt_const_parser", "aligner",
];

function checkProfile(role: string, raw: unknown, dir: string): ToolProfile {
  if (typeof raw !== "object" || raw === null || Array.isArray(raw)) {
    throw new AdapterError(`profile for ${role} must be an object`);
  }
  const rec = raw as Record<string, unknown>;
  const expand = (v: string) => v.replace(/\{dir\}/g, dir);
  const { tool, version, invocation, tagset, mappingFile } = rec;
  if (typeof tool !== "string" || !tool) {
    throw new AdapterError(`profile for ${role}: missing tool name`);
  }
  if (typeof version !== "string" || !version) {
    throw new AdapterError(`profile for ${role}: missing version pin`);
  }
  if (!Array.isArray(invocation) || invocation.length === 0
    || invocation.some((a) => typeof a !== "string")) {
    throw new AdapterError(`profile for ${role}: invocation must be a non-empty argv array`);
  }
  if (tagset !== undefined && typeof tagset !== "string") {
    throw new AdapterError(`profile for ${role}: tagset must be a string`);
  }
  if (mappingFile !== undefined && typeof mappingFile !== "string") {
    throw new AdapterError(`profile for ${role}: mappingFile must be a string`);
  }
  return {
    tool,
    version,
    invocation: invocation.map((a) => expand(a as string)),
    ...(tagset !== undefined ? { tagset } : {}),
    ...(mappingFile !== undefined ? { mappingFile: resolve(expand(mappingFile)) } : {}),
  };
}

export function loadProfiles(path: string): ToolProfiles {
  let raw: unknown;
  try {
    raw = JSON.parse(readFileSync(path, "utf-8"));
  } catch (exc) {
    throw new AdapterError(`${path}: unreadable profile file (${(exc as Error).message})`);
  }
  if (typeof raw !== "object" || raw === null || Array.isArray(raw)) {
    throw new AdapterError(`${path}: profile file must be a JSON object keyed by role`);
  }
  const rec = raw as Record<string, unknown>;
  const missing = ROLES.filter((r) => !(r in rec));
  if (missing.length > 0) {
    throw new AdapterError(`${path}: missing tool profiles: ${missing.join(", ")}`);
  }
  const unknown = Object.keys(rec).filter((k) => !ROLES.includes(k as ToolRole));
  if (unknown.length > 0) {
    throw new AdapterError(`${path}: unknown profile roles: ${unknown.join(", ")}`);
  }
  const dir = dirname(resolve(path));
  const out = {} as Record<ToolRole, ToolProfile>;
  for (const role of ROLES) {
    out[role] = checkProfile(role, rec[role], dir);
  }
  return out;
}
