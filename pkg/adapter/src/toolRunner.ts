/**
 * External tool invocation.
 *
 * Every tool speaks the same batch protocol: JSON lines on stdin, one
 * request per document, JSON lines on stdout, one response per document,
 * ids echoed back.  `--version` on the command line prints "name version".
 * A non-zero exit, or output that does not parse, is a tool failure and the
 * error carries whatever the tool wrote so the cause is not lost.
 */

import { spawn } from "node:child_process";

import { ToolFailureError } from "./errors.js";
import { ToolProfile } from "./types.js";

interface Exited {
  code: number | null;
  stdout: string;
  stderr: string;
}

function execTool(profile: ToolProfile, args: string[], stdin: string,
): Promise<Exited> {
  const [command, ...baseArgs] = profile.invocation;
  if (!command) {
    throw new ToolFailureError(profile.tool, "empty invocation template", "");
  }
  return new Promise((resolve, reject) => {
    const child = spawn(command, [...baseArgs, ...args], {
      stdio: ["pipe", "pipe", "pipe"],
    });
    let stdout = "";
    let stderr = "";
    child.stdout.on("data", (c: Buffer) => { stdout += c.toString("utf-8"); });
    child.stderr.on("data", (c: Buffer) => { stderr += c.toString("utf-8"); });
    child.on("error", (exc) => {
      reject(new ToolFailureError(profile.tool,
        `cannot invoke ${JSON.stringify(profile.invocation)}: ${exc.message}`, stderr));
    });
    child.on("close", (code) => resolve({ code, stdout, stderr }));
    child.stdin.on("error", () => { /* surfaces via exit code */ });
    child.stdin.end(stdin);
  });
}

/** Ask the tool for its version and check it against the profile pin. */
export async function pollVersion(profile: ToolProfile): Promise<string> {
  const { code, stdout, stderr } = await execTool(profile, ["--version"], "");
  if (code !== 0) {
    throw new ToolFailureError(profile.tool,
      `--version exited with code ${code}`, stdout + stderr);
  }
  const reported = stdout.trim().split(/\s+/).pop() ?? "";
  if (!reported) {
    throw new ToolFailureError(profile.tool, "--version printed nothing", stderr);
  }
  if (reported !== profile.version) {
    throw new ToolFailureError(profile.tool,
      `version mismatch: profile pins ${profile.version}, tool reports ${reported}`,
      stdout + stderr);
  }
  return reported;
}

/**
 * Run one batch through the tool and return responses keyed by document id.
 * Responses must echo every request id exactly once.
 */
export async function runToolBatch<Req extends { id: string }, Res extends { id: string }>(
  profile: ToolProfile, requests: Req[]): Promise<Map<string, Res>> {
  const stdin = requests.map((r) => `${JSON.stringify(r)}\n`).join("");
  const { code, stdout, stderr } = await execTool(profile, [], stdin);
  if (code !== 0) {
    throw new ToolFailureError(profile.tool,
      `exited with code ${code}`, stdout + stderr);
  }
  const responses = new Map<string, Res>();
  const lines = stdout.split("\n").filter((l) => l.trim());
  for (const line of lines) {
    let parsed: Res;
    try {
      parsed = JSON.parse(line) as Res;
    } catch {
      throw new ToolFailureError(profile.tool,
        `emitted a non-JSON output line: ${line.slice(0, 120)}`, stderr);
    }
    if (typeof parsed.id !== "string" || !parsed.id) {
      throw new ToolFailureError(profile.tool,
        "emitted an output line without a document id", stderr);
    }
    if (responses.has(parsed.id)) {
      throw new ToolFailureError(profile.tool,
        `emitted document ${JSON.stringify(parsed.id)} twice`, stderr);
    }
    responses.set(parsed.id, parsed);
  }
  for (const req of requests) {
    if (!responses.has(req.id)) {
      throw new ToolFailureError(profile.tool,
        `emitted no output for document ${JSON.stringify(req.id)}`, stderr);
    }
  }
  if (responses.size !== requests.length) {
    throw new ToolFailureError(profile.tool,
      `emitted ${responses.size} documents for ${requests.length} requests`, stderr);
  }
  return responses;
}
