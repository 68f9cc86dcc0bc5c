import { defineConfig } from "vitest/config";

// Pipeline tests spawn real tool processes; give them generous time.
export default defineConfig({
  test: {
    include: ["tests/**/*.test.ts"],
    testTimeout: 120_000,
    hookTimeout: 120_000,
  },
});
