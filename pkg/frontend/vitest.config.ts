import { defineConfig } from 'vitest/config';

export default defineConfig({
  test: {
    environment: 'jsdom',
    include: ['tests/**/*.test.ts'],
    setupFiles: ['tests/setup.ts'],
    // e2e spawns a real backend process; give setup room to build and boot it
    testTimeout: 30_000,
    hookTimeout: 120_000,
  },
});
