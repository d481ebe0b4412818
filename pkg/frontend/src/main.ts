/** Browser bootstrap: resolve the service URL and mount the app. */

import { createApp } from './app.js';

declare global {
  interface Window {
    GREENROUTE_SERVICE_URL?: string;
  }
}

function resolveServiceUrl(): string {
  if (window.GREENROUTE_SERVICE_URL) {
    return window.GREENROUTE_SERVICE_URL;
  }
  const fromQuery = new URLSearchParams(window.location.search).get('service');
  if (fromQuery) {
    return fromQuery;
  }
  return window.location.origin;
}

const root = document.getElementById('app');
if (root === null) {
  throw new Error('missing #app container');
}
void createApp(root, { serviceUrl: resolveServiceUrl() }).init();
