/**
 * Map client wiring: renders the network as SVG colored by band, snaps
 * clicks to nodes, drives route queries, and mirrors the service's
 * numbers in the summary panel.
 */

import { ServiceClient, type FetchLike, type RouteResult } from './api.js';
import { colorForBand } from './colors.js';
import {
  FAR_CLICK_HINT,
  NO_PATH_MESSAGE,
  SERVICE_DOWN_MESSAGE,
  routeSummaryText,
  selectionHint,
} from './panel.js';
import { makeProjection, type Projection } from './projection.js';
import { SNAP_RADIUS_PX, nearestNode, type PlacedNode } from './snap.js';
import { NONE, clickNode, swapEndpoints, type Selection } from './selection.js';
import { isEdgeFeature, isNodeFeature, type NetworkCollection, type RouteCollection } from './types.js';

const SVG_NS = 'http://www.w3.org/2000/svg';

export interface AppOptions {
  serviceUrl: string;
  fetchFn?: FetchLike;
  width?: number;
  height?: number;
}

export class WebMapApp {
  private readonly root: HTMLElement;
  private readonly client: ServiceClient;
  private readonly width: number;
  private readonly height: number;

  private selectionState: Selection = NONE;
  private placed: PlacedNode[] = [];
  private projection: Projection | null = null;
  private markers = new Map<string, SVGCircleElement>();

  private svg: SVGSVGElement | null = null;
  private routeLayer: SVGGElement | null = null;
  private currentRoute: SVGPolylineElement | null = null;
  private banner: HTMLDivElement;
  private hint: HTMLDivElement;
  private panel: HTMLDivElement;
  private swapButton: HTMLButtonElement;

  constructor(root: HTMLElement, options: AppOptions) {
    this.root = root;
    this.client = new ServiceClient(options.serviceUrl, options.fetchFn);
    this.width = options.width ?? 800;
    this.height = options.height ?? 600;

    this.banner = this.root.ownerDocument.createElement('div');
    this.banner.className = 'banner';
    this.banner.hidden = true;
    this.hint = this.root.ownerDocument.createElement('div');
    this.hint.className = 'hint';
    this.panel = this.root.ownerDocument.createElement('div');
    this.panel.className = 'panel';
    this.swapButton = this.root.ownerDocument.createElement('button');
    this.swapButton.className = 'swap';
    this.swapButton.textContent = 'Swap start and destination';
    this.swapButton.disabled = true;
    this.swapButton.addEventListener('click', () => {
      void this.swap();
    });

    this.root.append(this.banner, this.hint, this.panel, this.swapButton);
  }

  get selection(): Selection {
    return this.selectionState;
  }

  get placedNodes(): readonly PlacedNode[] {
    return this.placed;
  }

  async init(): Promise<void> {
    let network: NetworkCollection;
    try {
      network = await this.client.fetchNetwork();
    } catch {
      this.banner.hidden = false;
      this.banner.textContent = SERVICE_DOWN_MESSAGE;
      return;
    }
    this.renderNetwork(network);
    this.hint.textContent = selectionHint('none');
  }

  private renderNetwork(network: NetworkCollection): void {
    const doc = this.root.ownerDocument;
    const nodes = network.features.filter(isNodeFeature);
    const edges = network.features.filter(isEdgeFeature);
    const coords = nodes.map((f) => f.geometry.coordinates);
    this.projection = makeProjection(coords, this.width, this.height);

    const svg = doc.createElementNS(SVG_NS, 'svg') as SVGSVGElement;
    svg.setAttribute('width', String(this.width));
    svg.setAttribute('height', String(this.height));
    svg.setAttribute('viewBox', `0 0 ${this.width} ${this.height}`);
    svg.setAttribute('class', 'map');

    const edgeLayer = doc.createElementNS(SVG_NS, 'g') as SVGGElement;
    edgeLayer.setAttribute('class', 'edges');
    const placedById = new Map<string, PlacedNode>();
    this.placed = nodes.map((f) => {
      const { x, y } = this.projection!.toPixel(f.geometry.coordinates);
      const node = { id: f.properties.id, x, y };
      placedById.set(String(node.id), node);
      return node;
    });
    for (const edge of edges) {
      const [a, b] = edge.geometry.coordinates;
      if (a === undefined || b === undefined) {
        continue;
      }
      const pa = this.projection.toPixel(a);
      const pb = this.projection.toPixel(b);
      const line = doc.createElementNS(SVG_NS, 'line');
      line.setAttribute('x1', String(pa.x));
      line.setAttribute('y1', String(pa.y));
      line.setAttribute('x2', String(pb.x));
      line.setAttribute('y2', String(pb.y));
      line.setAttribute('stroke', edge.properties.color ?? colorForBand(edge.properties.band));
      line.setAttribute('stroke-width', '3');
      line.setAttribute('class', 'edge');
      edgeLayer.append(line);
    }

    const nodeLayer = doc.createElementNS(SVG_NS, 'g') as SVGGElement;
    nodeLayer.setAttribute('class', 'nodes');
    this.markers.clear();
    for (const feature of nodes) {
      const placed = placedById.get(String(feature.properties.id))!;
      const circle = doc.createElementNS(SVG_NS, 'circle') as SVGCircleElement;
      circle.setAttribute('cx', String(placed.x));
      circle.setAttribute('cy', String(placed.y));
      circle.setAttribute('r', '5');
      circle.setAttribute('fill', feature.properties.color ?? colorForBand(feature.properties.band));
      circle.setAttribute('class', 'node');
      nodeLayer.append(circle);
      this.markers.set(String(feature.properties.id), circle);
    }

    this.routeLayer = doc.createElementNS(SVG_NS, 'g') as SVGGElement;
    this.routeLayer.setAttribute('class', 'routes');

    svg.append(edgeLayer, this.routeLayer, nodeLayer);
    svg.addEventListener('click', (event: MouseEvent) => {
      const rect = svg.getBoundingClientRect();
      void this.handleMapClick(event.clientX - rect.left, event.clientY - rect.top);
    });
    this.root.append(svg);
    this.svg = svg;
  }

  async handleMapClick(x: number, y: number): Promise<void> {
    const hit = nearestNode(this.placed, x, y, SNAP_RADIUS_PX);
    if (hit === null) {
      this.hint.textContent = FAR_CLICK_HINT;
      return;
    }
    this.selectionState = clickNode(this.selectionState, hit.id);
    this.refreshSelectionUi();
    if (this.selectionState.kind === 'complete') {
      await this.requestRoute();
    }
  }

  async swap(): Promise<void> {
    const swapped = swapEndpoints(this.selectionState);
    if (swapped === this.selectionState) {
      return;
    }
    this.selectionState = swapped;
    this.refreshSelectionUi();
    await this.requestRoute();
  }

  private refreshSelectionUi(): void {
    const state = this.selectionState;
    for (const [id, marker] of this.markers) {
      let role = '';
      if (state.kind !== 'none' && String(state.start) === id) {
        role = 'start';
      } else if (state.kind === 'complete' && String(state.dest) === id) {
        role = 'dest';
      }
      if (role) {
        marker.setAttribute('data-role', role);
        marker.setAttribute('stroke', '#000000');
        marker.setAttribute('stroke-width', '3');
      } else {
        marker.removeAttribute('data-role');
        marker.removeAttribute('stroke');
        marker.removeAttribute('stroke-width');
      }
    }
    this.swapButton.disabled = state.kind !== 'complete';
    if (state.kind !== 'complete') {
      this.hint.textContent = selectionHint(state.kind);
    } else {
      this.hint.textContent = '';
    }
  }

  private async requestRoute(): Promise<void> {
    if (this.selectionState.kind !== 'complete') {
      return;
    }
    const { start, dest } = this.selectionState;
    const result: RouteResult = await this.client.fetchRoute(String(start), String(dest));
    switch (result.kind) {
      case 'ok':
        this.showRoute(result.route);
        break;
      case 'no_path':
        // endpoints stay selected so the user can adjust one of them
        this.panel.textContent = NO_PATH_MESSAGE;
        break;
      case 'unknown_node':
        this.panel.textContent = 'The service does not know the selected node.';
        break;
      case 'error':
        this.panel.textContent = `Route request failed: ${result.message}`;
        break;
      case 'cancelled':
        break;
    }
  }

  private showRoute(route: RouteCollection): void {
    if (this.routeLayer === null || this.projection === null) {
      return;
    }
    const line = route.features.filter(isEdgeFeature)[0];
    if (line === undefined) {
      return;
    }
    if (this.currentRoute !== null) {
      // keep the last route for comparison, dimmed behind the new one
      this.currentRoute.setAttribute('class', 'route previous');
      this.currentRoute.setAttribute('stroke-opacity', '0.3');
      const stale = this.routeLayer.querySelectorAll('.route.previous');
      for (let i = 0; i < stale.length - 1; i += 1) {
        stale[i]?.remove();
      }
    }
    const polyline = this.root.ownerDocument.createElementNS(SVG_NS, 'polyline') as SVGPolylineElement;
    const points = line.geometry.coordinates
      .map((lonLat) => {
        const { x, y } = this.projection!.toPixel(lonLat);
        return `${x},${y}`;
      })
      .join(' ');
    polyline.setAttribute('points', points);
    polyline.setAttribute('fill', 'none');
    polyline.setAttribute('stroke', line.properties.color ?? colorForBand(line.properties.band));
    polyline.setAttribute('stroke-width', '6');
    polyline.setAttribute('class', 'route current');
    this.routeLayer.append(polyline);
    this.currentRoute = polyline;
    this.panel.textContent = routeSummaryText(route.summary);
  }
}

export function createApp(root: HTMLElement, options: AppOptions): WebMapApp {
  return new WebMapApp(root, options);
}
