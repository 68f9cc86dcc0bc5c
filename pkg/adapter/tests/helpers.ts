import { mkdtempSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";
import { afterAll } from "vitest";

export const FIXTURES = fileURLToPath(new URL("../fixtures/", import.meta.url));

export const fixture = (...parts: string[]) => join(FIXTURES, ...parts);

const tempDirs: string[] = [];

/** Temp directory removed after the suite. */
export function tempDir(): string {
  const dir = mkdtempSync(join(tmpdir(), "adapter-test-"));
  tempDirs.push(dir);
  return dir;
}

afterAll(() => {
  for (const dir of tempDirs) {
    rmSync(dir, { recursive: true, force: true });
  }
});
