/**
 * Shared domain types: the annotation-bundle record layout consumed by the
 * classifier package, the wire formats spoken by the external tools, and the
 * tool profiles that bind the two together.
 *
 * The bundle layout mirrors the classifier's line-delimited JSON schema
 * exactly; every record this adapter emits must load under its `validate`
 * command unchanged.
 */

export const FORMAT_VERSION = 1;

export const SRC_LANG = "en";
export const TGT_LANG = "fr";

/** Compact universal POS inventory (12 tags) accepted by the bundle loader. */
export const UPOS_TAGS = [
  "ADJ", "ADP", "ADV", "CONJ", "DET", "NOUN",
  "NUM", "PRON", "PROPN", "PUNCT", "VERB", "X",
] as const;
export type UposTag = (typeof UPOS_TAGS)[number];

/** Compact unified dependency relation inventory accepted by the loader. */
export const DEP_RELATIONS = [
  "root", "nsubj", "obj", "iobj", "obl", "nmod", "amod", "advmod",
  "det", "case", "mark", "cc", "conj", "cop", "aux", "xcomp", "ccomp",
  "acl", "advcl", "appos", "nummod", "compound", "fixed", "flat",
  "expl", "punct", "dep",
] as const;
export type DepRelation = (typeof DEP_RELATIONS)[number];

/**
 * Unified constituent vocabulary.  The bundle loader treats tree labels as
 * free strings; this closed set exists so native parser labels still go
 * through an audited total mapping like the other two tag kinds.
 */
export const CONST_LABELS = [
  "S", "NP", "VP", "AP", "ADVP", "PP", "X",
] as const;
export type ConstLabel = (typeof CONST_LABELS)[number];

export const RAW_LABELS = [
  "Literal", "Equivalence", "Generalization", "Particularization",
  "Modulation", "Transposition", "Mod+Trans",
] as const;
export type RawLabel = (typeof RAW_LABELS)[number];

// ---------------------------------------------------------------------------
// Bundle records (exact wire layout of the classifier's bundle files)

export interface BundleToken {
  surface: string;
  lemma: string;
  upos: UposTag;
}

export interface BundleArc {
  head: number;
  dependent: number;
  relation: DepRelation;
}

export interface BundleTreeNode {
  label: string;
  span: [number, number];
  children?: BundleTreeNode[];
}

export interface BundleSide {
  tokens: BundleToken[];
  deps: BundleArc[];
  tree: BundleTreeNode;
}

export interface BundlePhrasePair {
  src_span: [number, number];
  tgt_span: [number, number];
  raw_label: RawLabel;
}

export interface BundleRecord {
  format_version: typeof FORMAT_VERSION;
  id: string;
  src: BundleSide;
  tgt: BundleSide;
  alignment: [number, number][];
  phrase_pairs: BundlePhrasePair[];
  meta?: Record<string, unknown>;
}

// ---------------------------------------------------------------------------
// Adapter inputs

/** One line of the raw parallel file: id, source sentence, target sentence. */
export interface RawSentencePair {
  id: string;
  srcText: string;
  tgtText: string;
}

/** One line of the span-annotation file. */
export interface SpanAnnotation {
  sentenceId: string;
  srcSpan: [number, number];
  tgtSpan: [number, number];
  rawLabel: RawLabel;
  /** 1-based line in the annotation file, for error reporting. */
  line: number;
}

// ---------------------------------------------------------------------------
// Tool profiles and wire formats

export type TagKind = "pos" | "dep" | "const";

export type ToolRole =
  | "src_tagger" | "tgt_tagger"
  | "src_dep_parser" | "tgt_dep_parser"
  | "src_const_parser" | "tgt_const_parser"
  | "aligner";

/**
 * Binding of one external tool: its identity, the pinned version, how to
 * invoke it, which native tagset it speaks, and the file mapping that tagset
 * onto the unified inventory.  Every native tag the tool emits must map;
 * an unmapped tag aborts the run.
 */
export interface ToolProfile {
  /** Tool identity, e.g. "stub-en-tagger". */
  tool: string;
  /** Pinned version; the invoked tool must report exactly this. */
  version: string;
  /** Invocation template: argv vector, run once per batch over stdin/stdout. */
  invocation: string[];
  /** Name of the native tagset the tool emits; absent for the aligner. */
  tagset?: string;
  /** Path to the native-to-unified mapping file (JSON object). */
  mappingFile?: string;
}

export type ToolProfiles = Record<ToolRole, ToolProfile>;

/** Tagger stdin line. */
export interface TaggerRequest {
  id: string;
  text: string;
}

export interface NativeToken {
  surface: string;
  lemma: string;
  tag: string;
}

/** Tagger stdout line. */
export interface TaggerResponse {
  id: string;
  tokens: NativeToken[];
}

/** Parser stdin line (dependency and constituency parsers take tagged text). */
export interface ParserRequest {
  id: string;
  tokens: { surface: string; tag: string }[];
}

export interface NativeArc {
  head: number;
  dependent: number;
  relation: string;
}

/** Dependency parser stdout line; the root token carries no incoming arc. */
export interface DepParserResponse {
  id: string;
  arcs: NativeArc[];
}

/** Constituency parser stdout line: labeled bracketing over the tokens. */
export interface ConstParserResponse {
  id: string;
  bracket: string;
}

/** Aligner stdin line. */
export interface AlignerRequest {
  id: string;
  src: string[];
  tgt: string[];
}

/** Aligner stdout line. */
export interface AlignerResponse {
  id: string;
  links: [number, number][];
}

export const UPOS_SET: ReadonlySet<string> = new Set(UPOS_TAGS);
export const DEP_SET: ReadonlySet<string> = new Set(DEP_RELATIONS);
export const CONST_SET: ReadonlySet<string> = new Set(CONST_LABELS);
export const RAW_LABEL_SET: ReadonlySet<string> = new Set(RAW_LABELS);
