/**
 * Fits geographic bounds into pixel space.  Equirectangular with a
 * cos(latitude) x-scale is plenty at neighbourhood scale and keeps the
 * screen-space distances used for snapping meaningful.
 */

import type { LonLat } from './types.js';

export interface Projection {
  width: number;
  height: number;
  toPixel(lonLat: LonLat): { x: number; y: number };
}

export function makeProjection(
  points: LonLat[],
  width: number,
  height: number,
  padding = 24,
): Projection {
  if (points.length === 0) {
    throw new Error('cannot project an empty point set');
  }
  let minLon = Infinity;
  let maxLon = -Infinity;
  let minLat = Infinity;
  let maxLat = -Infinity;
  for (const [lon, lat] of points) {
    minLon = Math.min(minLon, lon);
    maxLon = Math.max(maxLon, lon);
    minLat = Math.min(minLat, lat);
    maxLat = Math.max(maxLat, lat);
  }
  const midLat = (minLat + maxLat) / 2;
  const xOf = (lon: number): number => lon * Math.cos((midLat * Math.PI) / 180);
  const spanX = xOf(maxLon) - xOf(minLon);
  const spanY = maxLat - minLat;
  const usableW = width - 2 * padding;
  const usableH = height - 2 * padding;
  // one scale for both axes so shapes keep their proportions
  const scale =
    spanX <= 0 && spanY <= 0
      ? 1
      : Math.min(
          spanX > 0 ? usableW / spanX : Infinity,
          spanY > 0 ? usableH / spanY : Infinity,
        );
  const offsetX = padding + (usableW - spanX * scale) / 2;
  const offsetY = padding + (usableH - spanY * scale) / 2;
  return {
    width,
    height,
    toPixel([lon, lat]: LonLat) {
      return {
        x: offsetX + (xOf(lon) - xOf(minLon)) * scale,
        // screen y grows downward, latitude grows northward
        y: offsetY + (maxLat - lat) * scale,
      };
    },
  };
}
