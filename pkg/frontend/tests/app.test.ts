// @vitest-environment happy-dom
import { beforeEach, describe, expect, it } from 'vitest';

import { WebMapApp } from '../src/app.js';
import type { FetchLike } from '../src/api.js';
import { FAR_CLICK_HINT, NO_PATH_MESSAGE, SERVICE_DOWN_MESSAGE, routeSummaryText } from '../src/panel.js';
import type { NetworkCollection, RouteCollection, RouteSummary } from '../src/types.js';

function point(id: string, lon: number, lat: number, band: string, color: string) {
  return {
    type: 'Feature' as const,
    geometry: { type: 'Point' as const, coordinates: [lon, lat] as [number, number] },
    properties: { id, gvi_avg: 20.0, band, color },
  };
}

function line(
  u: string,
  v: string,
  coords: [number, number][],
  band: string,
  color: string,
) {
  return {
    type: 'Feature' as const,
    geometry: { type: 'LineString' as const, coordinates: coords },
    properties: { u, v, gvi: 20.0, band, color },
  };
}

const A: [number, number] = [135.5, 34.6];
const B: [number, number] = [135.5, 34.601];
const C: [number, number] = [135.501, 34.601];
const D: [number, number] = [135.501, 34.6];
const E: [number, number] = [135.5005, 34.6005];

const NETWORK: NetworkCollection = {
  type: 'FeatureCollection',
  features: [
    point('A', ...A, 'Low', '#d73027'),
    point('B', ...B, 'Moderate', '#fdae61'),
    point('C', ...C, 'Good', '#a6d96a'),
    point('D', ...D, 'Satisfied', '#1a9850'),
    point('E', ...E, 'Satisfied', '#1a9850'),
    line('A', 'B', [A, B], 'Low', '#d73027'),
    line('B', 'C', [B, C], 'Moderate', '#fdae61'),
    line('C', 'D', [C, D], 'Good', '#a6d96a'),
    line('D', 'A', [D, A], 'Satisfied', '#1a9850'),
    line('A', 'E', [A, E], 'Satisfied', '#1a9850'),
    line('E', 'C', [E, C], 'Satisfied', '#1a9850'),
  ],
};

function routeBody(from: string, to: string, nodes: string[], coords: [number, number][]): RouteCollection {
  const summary: RouteSummary = {
    from,
    to,
    nodes,
    node_count: nodes.length,
    avg_gvi: 80.0,
    band: 'Satisfied',
    total_weight: 40.0,
  };
  return {
    type: 'FeatureCollection',
    features: [
      line(from, to, coords, 'Satisfied', '#1a9850'),
      point(from, ...coords[0]!, 'Satisfied', '#1a9850'),
      point(to, ...coords[coords.length - 1]!, 'Satisfied', '#1a9850'),
    ],
    summary,
  };
}

function fixtureFetch(calls: string[]): FetchLike {
  return async (url: string) => {
    calls.push(url);
    const parsed = new URL(url);
    if (parsed.pathname.endsWith('/network.geojson')) {
      return new Response(JSON.stringify(NETWORK), { status: 200 });
    }
    if (parsed.pathname.endsWith('/route')) {
      const from = parsed.searchParams.get('from');
      const to = parsed.searchParams.get('to');
      if (from === 'A' && to === 'C') {
        return new Response(JSON.stringify(routeBody('A', 'C', ['A', 'B', 'C'], [A, B, C])), { status: 200 });
      }
      if (from === 'C' && to === 'A') {
        return new Response(JSON.stringify(routeBody('C', 'A', ['C', 'B', 'A'], [C, B, A])), { status: 200 });
      }
      if (to === 'D' || from === 'D') {
        return new Response(JSON.stringify({ code: 'no_path', error: 'no path' }), { status: 409 });
      }
      return new Response(JSON.stringify({ code: 'unknown_node', error: 'unknown' }), { status: 404 });
    }
    return new Response('not found', { status: 404 });
  };
}

async function readyApp(): Promise<{ app: WebMapApp; root: HTMLElement; calls: string[] }> {
  const root = document.createElement('div');
  document.body.append(root);
  const calls: string[] = [];
  const app = new WebMapApp(root, { serviceUrl: 'http://svc', fetchFn: fixtureFetch(calls) });
  await app.init();
  return { app, root, calls };
}

function placed(app: WebMapApp, id: string): { x: number; y: number } {
  const node = app.placedNodes.find((n) => n.id === id);
  if (!node) {
    throw new Error(`node ${id} not placed`);
  }
  return node;
}

beforeEach(() => {
  document.body.innerHTML = '';
});

describe('network rendering', () => {
  it('draws five markers and six segments with the band colors', async () => {
    const { root } = await readyApp();
    const circles = root.querySelectorAll('circle');
    const lines = root.querySelectorAll('line');
    expect(circles.length).toBe(5);
    expect(lines.length).toBe(6);
    const fills = Array.from(circles).map((c) => c.getAttribute('fill'));
    expect(fills).toContain('#d73027');
    expect(fills).toContain('#1a9850');
  });

  it('shows the outage banner instead of a blank page when the service is down', async () => {
    const root = document.createElement('div');
    document.body.append(root);
    const app = new WebMapApp(root, {
      serviceUrl: 'http://svc',
      fetchFn: async () => {
        throw new Error('refused');
      },
    });
    await app.init();
    const banner = root.querySelector('.banner') as HTMLElement;
    expect(banner.hidden).toBe(false);
    expect(banner.textContent).toBe(SERVICE_DOWN_MESSAGE);
    expect(root.querySelector('svg')).toBeNull();
  });
});

describe('endpoint picking and routing', () => {
  it('two clicks fetch a route and the panel mirrors the response numbers', async () => {
    const { app, root, calls } = await readyApp();
    const a = placed(app, 'A');
    const c = placed(app, 'C');
    await app.handleMapClick(a.x, a.y);
    expect(app.selection.kind).toBe('start-only');
    await app.handleMapClick(c.x + 3, c.y - 2); // within snap radius
    expect(app.selection).toEqual({ kind: 'complete', start: 'A', dest: 'C' });
    expect(calls.some((u) => u.includes('/route?from=A&to=C'))).toBe(true);
    const panel = root.querySelector('.panel') as HTMLElement;
    const expected = routeSummaryText({
      from: 'A', to: 'C', nodes: ['A', 'B', 'C'],
      node_count: 3, avg_gvi: 80.0, band: 'Satisfied', total_weight: 40.0,
    });
    expect(panel.textContent).toBe(expected);
    const shown = /avg ([\d.]+)%/.exec(panel.textContent ?? '');
    expect(Number(shown?.[1])).toBe(80.0);
    expect(root.querySelectorAll('polyline.route').length).toBe(1);
  });

  it('clicks snap to the nearest node and highlight start and destination', async () => {
    const { app, root } = await readyApp();
    const a = placed(app, 'A');
    const b = placed(app, 'B');
    await app.handleMapClick(a.x + 5, a.y + 5);
    await app.handleMapClick(b.x - 4, b.y + 4);
    const start = root.querySelector('[data-role="start"]');
    const dest = root.querySelector('[data-role="dest"]');
    expect(start).not.toBeNull();
    expect(dest).not.toBeNull();
  });

  it('a far click selects nothing and shows the hint', async () => {
    const { app, root } = await readyApp();
    await app.handleMapClick(99999, 99999);
    expect(app.selection.kind).toBe('none');
    const hint = root.querySelector('.hint') as HTMLElement;
    expect(hint.textContent).toBe(FAR_CLICK_HINT);
  });

  it('the map click listener is wired to the svg element', async () => {
    const { app, root } = await readyApp();
    const a = placed(app, 'A');
    const svg = root.querySelector('svg') as SVGSVGElement;
    svg.dispatchEvent(new MouseEvent('click', { clientX: a.x, clientY: a.y, bubbles: true }));
    await new Promise((resolve) => setTimeout(resolve, 0));
    expect(app.selection.kind).toBe('start-only');
  });

  it('swap reverses the endpoints and reports an equal average', async () => {
    const { app, root, calls } = await readyApp();
    const a = placed(app, 'A');
    const c = placed(app, 'C');
    await app.handleMapClick(a.x, a.y);
    await app.handleMapClick(c.x, c.y);
    const before = (root.querySelector('.panel') as HTMLElement).textContent;
    const button = root.querySelector('button.swap') as HTMLButtonElement;
    expect(button.disabled).toBe(false);
    await app.swap();
    expect(app.selection).toEqual({ kind: 'complete', start: 'C', dest: 'A' });
    expect(calls.some((u) => u.includes('/route?from=C&to=A'))).toBe(true);
    const after = (root.querySelector('.panel') as HTMLElement).textContent;
    expect(after).toBe(before); // same avg, nodes, and band both ways
    // the earlier route stays visible, dimmed for comparison
    expect(root.querySelectorAll('polyline.route').length).toBe(2);
    expect(root.querySelectorAll('polyline.route.previous').length).toBe(1);
  });

  it('no-path renders its message and keeps the endpoints selected', async () => {
    const { app, root } = await readyApp();
    const a = placed(app, 'A');
    const d = placed(app, 'D');
    await app.handleMapClick(a.x, a.y);
    await app.handleMapClick(d.x, d.y);
    const panel = root.querySelector('.panel') as HTMLElement;
    expect(panel.textContent).toBe(NO_PATH_MESSAGE);
    expect(app.selection).toEqual({ kind: 'complete', start: 'A', dest: 'D' });
    expect(root.querySelector('[data-role="start"]')).not.toBeNull();
    expect(root.querySelector('[data-role="dest"]')).not.toBeNull();
    expect(root.querySelectorAll('polyline.route').length).toBe(0);
  });
});
