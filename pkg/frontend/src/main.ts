// Browser entry point: the UI is served by `treedoc serve` and talks to the
// same origin. The document id comes from the ?doc= query parameter; without
// one, a picker could go here, but the first document is a fine default.

import { ApiClient } from './api.js';
import { App } from './app.js';

async function boot(): Promise<void> {
  const params = new URLSearchParams(window.location.search);
  const docId = params.get('doc');
  const host = document.getElementById('app');
  if (!host) throw new Error('missing #app element');
  if (!docId) {
    host.textContent = 'Add ?doc=<document id> to the URL to open a document.';
    return;
  }
  const api = new ApiClient('');
  await new App(host, api, docId).start();
}

void boot();
