import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "happy-dom",
    environmentOptions: {
      happyDOM: {
        // In production the client is served from the API origin
        // (`convir serve --ui`); give the simulated page the same origin so
        // the live-parity tests aren't blocked by the same-origin policy.
        url: process.env.CONVIR_SERVER || "http://localhost/",
      },
    },
    include: ["tests/**/*.test.ts"],
  },
});
