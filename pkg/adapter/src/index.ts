export {
  FORMAT_VERSION, UPOS_TAGS, DEP_RELATIONS, CONST_LABELS, RAW_LABELS,
} from "./types.js";
export type {
  BundleArc, BundleRecord, BundleSide, BundleToken, BundleTreeNode,
  BundlePhrasePair, RawSentencePair, SpanAnnotation, ToolProfile,
  ToolProfiles, ToolRole,
} from "./types.js";
export {
  AdapterError, FormatError, ToolFailureError, UnmappedTagError,
} from "./errors.js";
export { canonicalJson } from "./canonical.js";
export { TagMapper, loadMapping } from "./tagmap.js";
export type { CoverageReport } from "./tagmap.js";
export { readRawParallel, readSpanAnnotations } from "./rawInput.js";
export { pollVersion, runToolBatch } from "./toolRunner.js";
export { bracketToTree } from "./brackets.js";
export { loadProfiles } from "./profiles.js";
export { runPipeline, runPipelineToFile } from "./pipeline.js";
export type { PipelineResult } from "./pipeline.js";
export {
  buildConcepts, buildEmbeddings, buildLexicons, buildTranslationTables,
} from "./lexicons.js";
export type { LexiconFiles, LexiconResult, LexiconSources } from "./lexicons.js";
export { emitWorkspace } from "./workspace.js";
export type { WorkspaceInputs, WorkspaceResult } from "./workspace.js";
