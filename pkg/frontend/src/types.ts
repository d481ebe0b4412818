/** Shapes of the service's GeoJSON payloads and summary blocks. */

export type LonLat = [number, number];

export interface PointGeometry {
  type: 'Point';
  coordinates: LonLat;
}

export interface LineGeometry {
  type: 'LineString';
  coordinates: LonLat[];
}

export interface NodeProperties {
  id: string | number;
  gvi_avg: number | null;
  band: string | null;
  color: string | null;
}

export interface EdgeProperties {
  u: string | number;
  v: string | number;
  gvi: number;
  band: string | null;
  color: string | null;
}

export interface NodeFeature {
  type: 'Feature';
  geometry: PointGeometry;
  properties: NodeProperties;
}

export interface EdgeFeature {
  type: 'Feature';
  geometry: LineGeometry;
  properties: EdgeProperties;
}

export interface NetworkCollection {
  type: 'FeatureCollection';
  features: Array<NodeFeature | EdgeFeature>;
}

export interface RouteSummary {
  from: string | number;
  to: string | number;
  nodes: Array<string | number>;
  node_count: number;
  avg_gvi: number;
  band: string;
  total_weight: number;
}

export interface RouteCollection {
  type: 'FeatureCollection';
  features: Array<NodeFeature | EdgeFeature>;
  summary: RouteSummary;
}

export function isNodeFeature(f: NodeFeature | EdgeFeature): f is NodeFeature {
  return f.geometry.type === 'Point';
}

export function isEdgeFeature(f: NodeFeature | EdgeFeature): f is EdgeFeature {
  return f.geometry.type === 'LineString';
}
