/** Error taxonomy: every failure names its origin precisely enough to act on. */

export class AdapterError extends Error {
  override name = "AdapterError";
}

/** Malformed input file content; always carries file and line. */
export class FormatError extends AdapterError {
  override name = "FormatError";
  readonly file: string;
  readonly line: number;

  constructor(file: string, line: number, message: string) {
    super(`${file}:${line}: ${message}`);
    this.file = file;
    this.line = line;
  }
}

/** An invoked tool failed; carries the captured output for diagnosis. */
export class ToolFailureError extends AdapterError {
  override name = "ToolFailureError";
  readonly tool: string;
  readonly capturedOutput: string;

  constructor(tool: string, message: string, capturedOutput: string) {
    const tail = capturedOutput.trim();
    super(`tool ${tool}: ${message}${tail ? `\ncaptured output:\n${tail}` : ""}`);
    this.tool = tool;
    this.capturedOutput = capturedOutput;
  }
}

/** A tool emitted a native tag absent from its mapping file. */
export class UnmappedTagError extends AdapterError {
  override name = "UnmappedTagError";
  readonly tool: string;
  readonly tag: string;

  constructor(tool: string, tag: string, tagset: string) {
    super(`tool ${tool} emitted tag ${JSON.stringify(tag)} which is not in `
      + `the ${tagset} mapping; every native tag must map to a unified tag`);
    this.tool = tool;
    this.tag = tag;
  }
}
