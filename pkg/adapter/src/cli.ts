/**
 * Command-line interface.
 *
 *   preprocess-adapter bundle --raw F --spans F --profiles F --out F
 *       run the annotation pipeline and write the bundle file
 *
 *   preprocess-adapter emit --raw F --spans F --profiles F --aligner-dump F
 *       --embeddings F --assertions F --manual-lists F --out DIR
 *       emit a complete classifier workspace (bundle, resources, config)
 */

import { parseArgs } from "node:util";
import { pathToFileURL } from "node:url";

import { AdapterError } from "./errors.js";
import { loadProfiles } from "./profiles.js";
import { runPipelineToFile } from "./pipeline.js";
import { emitWorkspace } from "./workspace.js";

const USAGE = `usage:
  preprocess-adapter bundle --raw FILE --spans FILE --profiles FILE --out FILE
  preprocess-adapter emit   --raw FILE --spans FILE --profiles FILE
                            --aligner-dump FILE --embeddings FILE
                            --assertions FILE --manual-lists FILE --out DIR
`;

type Stdio = { out: (line: string) => void; err: (line: string) => void };

function parsed(args: string[], required: string[]):
  Record<string, string> | null {
  const options: Record<string, { type: "string" }> = {};
  for (const name of required) options[name] = { type: "string" };
  const { values } = parseArgs({ args, options, allowPositionals: false });
  const missing = required.filter((name) => !values[name]);
  if (missing.length > 0) {
    throw new AdapterError(
      `missing required options: ${missing.map((m) => `--${m}`).join(", ")}`);
  }
  return values as Record<string, string>;
}

export async function runCli(argv: string[], stdio?: Partial<Stdio>):
  Promise<number> {
  const out = stdio?.out ?? ((line: string) => process.stdout.write(`${line}\n`));
  const err = stdio?.err ?? ((line: string) => process.stderr.write(`${line}\n`));
  const [command, ...rest] = argv;
  try {
    if (command === "bundle") {
      const opts = parsed(rest, ["raw", "spans", "profiles", "out"])!;
      const profiles = loadProfiles(opts["profiles"]!);
      const result = await runPipelineToFile(opts["raw"]!, opts["spans"]!,
        profiles, opts["out"]!);
      out(`wrote ${result.records.length} records to ${opts["out"]}`);
      for (const report of result.coverage) {
        out(`coverage ${report.tool} (${report.tagset}): `
          + `${report.used.length}/${report.mappingEntries} mapping entries used`);
      }
      return 0;
    }
    if (command === "emit") {
      const opts = parsed(rest, ["raw", "spans", "profiles", "aligner-dump",
        "embeddings", "assertions", "manual-lists", "out"])!;
      const profiles = loadProfiles(opts["profiles"]!);
      const result = await emitWorkspace({
        rawPath: opts["raw"]!,
        spansPath: opts["spans"]!,
        profiles,
        alignerDump: opts["aligner-dump"]!,
        embeddingSource: opts["embeddings"]!,
        conceptSource: opts["assertions"]!,
        manualLists: opts["manual-lists"]!,
      }, opts["out"]!, err);
      out(`workspace at ${opts["out"]}: ${result.pipeline.records.length} records, `
        + `${result.lexicons.translationRows} translation rows per direction, `
        + `${result.lexicons.embeddingRows} embeddings (dim ${result.lexicons.embeddingDim}), `
        + `${result.lexicons.conceptsKept} assertions kept `
        + `(${result.lexicons.conceptsDropped} dropped)`);
      return 0;
    }
    err(USAGE.trimEnd());
    return 2;
  } catch (exc) {
    const isSystemError = exc instanceof Error
      && typeof (exc as NodeJS.ErrnoException).code === "string";
    if (exc instanceof AdapterError || exc instanceof TypeError || isSystemError) {
      err(`error: ${exc.message}`);
      return 1;
    }
    throw exc;
  }
}

const invokedDirectly = process.argv[1] !== undefined
  && import.meta.url === pathToFileURL(process.argv[1]).href;
if (invokedDirectly) {
  process.exitCode = await runCli(process.argv.slice(2));
}
