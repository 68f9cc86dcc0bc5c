/**
 * Workspace emission: one directory the classifier CLI can consume as-is.
 *
 *   <outDir>/bundle.jsonl               annotation bundle (canonical lines)
 *   <outDir>/resources/...              four converted lexicons + manual lists
 *   <outDir>/config.yaml                run config with relative paths
 *   <outDir>/coverage.json              tag-mapping coverage + tool versions
 *
 * config.yaml names files relative to itself, so the directory can be moved
 * or archived wholesale.  Everything written here is deterministic given
 * identical inputs and tool versions.
 */

import { copyFileSync, mkdirSync, writeFileSync } from "node:fs";
import { join } from "node:path";

import { canonicalJson } from "./canonical.js";
import { buildLexicons, LexiconResult } from "./lexicons.js";
import { PipelineResult, runPipeline } from "./pipeline.js";
import { ToolProfiles } from "./types.js";

export interface WorkspaceInputs {
  rawPath: string;
  spansPath: string;
  profiles: ToolProfiles;
  alignerDump: string;
  embeddingSource: string;
  conceptSource: string;
  manualLists: string;
}

export interface WorkspaceResult {
  pipeline: PipelineResult;
  lexicons: LexiconResult;
  configPath: string;
  bundlePath: string;
}

const CONFIG_YAML = `bundle: bundle.jsonl
resources:
  embeddings: resources/embeddings.txt
  table_e_given_f: resources/table_e_given_f.tsv
  table_f_given_e: resources/table_f_given_e.tsv
  concepts: resources/concepts.tsv
  manual_lists: resources/manual_lists.yaml
out_dir: runs
seed: 0
normalize: true
`;

type Logger = (message: string) => void;

export async function emitWorkspace(inputs: WorkspaceInputs, outDir: string,
  log: Logger = (m) => process.stderr.write(`${m}\n`)): Promise<WorkspaceResult> {
  mkdirSync(outDir, { recursive: true });
  const resourceDir = join(outDir, "resources");

  const pipeline = await runPipeline(inputs.rawPath, inputs.spansPath,
    inputs.profiles);
  const bundlePath = join(outDir, "bundle.jsonl");
  writeFileSync(bundlePath, pipeline.bundleText, "utf-8");

  const lexicons = buildLexicons({
    alignerDump: inputs.alignerDump,
    embeddingSource: inputs.embeddingSource,
    conceptSource: inputs.conceptSource,
  }, resourceDir, log);
  copyFileSync(inputs.manualLists, join(resourceDir, "manual_lists.yaml"));

  const configPath = join(outDir, "config.yaml");
  writeFileSync(configPath, CONFIG_YAML, "utf-8");
  writeFileSync(join(outDir, "coverage.json"),
    `${canonicalJson({ coverage: pipeline.coverage, tools: pipeline.toolVersions })}\n`,
    "utf-8");

  return { pipeline, lexicons, configPath, bundlePath };
}
