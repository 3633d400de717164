import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    // training tests are CPU-bound; run files sequentially for stable timings
    fileParallelism: false,
    testTimeout: 120_000,
  },
});
