import { defineConfig } from 'vitest/config';

export default defineConfig({
  test: {
    environment: 'happy-dom',
    // the page "lives" at the fixture server's origin, as in production
    // where treedoc serve hosts both the UI and the API
    environmentOptions: { happyDOM: { url: 'http://127.0.0.1:7397' } },
    globals: true,
    globalSetup: ['./tests/globalSetup.ts'],
    fileParallelism: false,
    testTimeout: 30000,
    hookTimeout: 60000,
  },
});
