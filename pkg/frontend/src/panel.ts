/**
 * Summary-panel text.  Every number shown comes straight from the
 * service response; nothing is recomputed client-side.
 */

import type { RouteSummary } from './types.js';

export const NO_PATH_MESSAGE = 'No path exists between the selected nodes.';

export const SERVICE_DOWN_MESSAGE = 'Service unreachable. Check that the query service is running.';

export const FAR_CLICK_HINT = 'No node near that click. Try clicking closer to a node.';

export function routeSummaryText(summary: RouteSummary): string {
  return (
    `avg ${summary.avg_gvi.toFixed(2)}%, ` +
    `${summary.node_count} nodes, ` +
    `band ${summary.band}`
  );
}

export function selectionHint(kind: 'none' | 'start-only'): string {
  return kind === 'none'
    ? 'Click a node to choose the start.'
    : 'Click another node to choose the destination.';
}
