/**
 * Thin client over the query service.  Route requests go through a
 * single slot: issuing a new one aborts whatever is still in flight, so
 * a stale answer can never overwrite a newer selection.
 */

import type { NetworkCollection, RouteCollection } from './types.js';

export type RouteResult =
  | { kind: 'ok'; route: RouteCollection }
  | { kind: 'no_path' }
  | { kind: 'unknown_node' }
  | { kind: 'cancelled' }
  | { kind: 'error'; message: string };

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ServiceClient {
  private readonly baseUrl: string;
  private readonly fetchFn: FetchLike;
  private inFlight: AbortController | null = null;

  constructor(baseUrl: string, fetchFn?: FetchLike) {
    this.baseUrl = baseUrl.replace(/\/+$/, '');
    this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
  }

  async fetchNetwork(): Promise<NetworkCollection> {
    const response = await this.fetchFn(`${this.baseUrl}/network.geojson`);
    if (!response.ok) {
      throw new Error(`network fetch failed with status ${response.status}`);
    }
    return (await response.json()) as NetworkCollection;
  }

  /** Request a route, cancelling any request still in flight. */
  async fetchRoute(from: string, to: string): Promise<RouteResult> {
    this.inFlight?.abort();
    const controller = new AbortController();
    this.inFlight = controller;
    const query = `from=${encodeURIComponent(from)}&to=${encodeURIComponent(to)}`;
    try {
      const response = await this.fetchFn(`${this.baseUrl}/route?${query}`, {
        signal: controller.signal,
      });
      if (controller.signal.aborted) {
        return { kind: 'cancelled' };
      }
      if (response.status === 409) {
        return { kind: 'no_path' };
      }
      if (response.status === 404) {
        return { kind: 'unknown_node' };
      }
      if (!response.ok) {
        return { kind: 'error', message: `route request failed (${response.status})` };
      }
      return { kind: 'ok', route: (await response.json()) as RouteCollection };
    } catch (err) {
      if (controller.signal.aborted) {
        return { kind: 'cancelled' };
      }
      return { kind: 'error', message: err instanceof Error ? err.message : String(err) };
    } finally {
      if (this.inFlight === controller) {
        this.inFlight = null;
      }
    }
  }
}
