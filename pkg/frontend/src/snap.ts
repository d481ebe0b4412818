/** Nearest-node selection in screen space. */

export const SNAP_RADIUS_PX = 20;

export interface PlacedNode {
  id: string | number;
  x: number;
  y: number;
}

/**
 * The node closest to the click, or null when none lies within the snap
 * radius.  Distances are pixels, so the feel is identical at any zoom.
 */
export function nearestNode(
  nodes: readonly PlacedNode[],
  clickX: number,
  clickY: number,
  radiusPx: number = SNAP_RADIUS_PX,
): PlacedNode | null {
  let best: PlacedNode | null = null;
  let bestDistSq = radiusPx * radiusPx;
  for (const node of nodes) {
    const dx = node.x - clickX;
    const dy = node.y - clickY;
    const distSq = dx * dx + dy * dy;
    if (distSq < bestDistSq || (best === null && distSq === bestDistSq)) {
      best = node;
      bestDistSq = distSq;
    }
  }
  return best;
}
