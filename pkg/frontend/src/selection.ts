/**
 * Endpoint selection state machine.  Exactly three states: no selection,
 * start chosen, start plus destination chosen.  A click once both are
 * set starts over with the clicked node as the new start.
 */

export type NodeId = string | number;

export type Selection =
  | { kind: 'none' }
  | { kind: 'start-only'; start: NodeId }
  | { kind: 'complete'; start: NodeId; dest: NodeId };

export const NONE: Selection = { kind: 'none' };

export function clickNode(state: Selection, node: NodeId): Selection {
  switch (state.kind) {
    case 'none':
      return { kind: 'start-only', start: node };
    case 'start-only':
      if (node === state.start) {
        return state;
      }
      return { kind: 'complete', start: state.start, dest: node };
    case 'complete':
      return { kind: 'start-only', start: node };
  }
}

export function swapEndpoints(state: Selection): Selection {
  if (state.kind !== 'complete') {
    return state;
  }
  return { kind: 'complete', start: state.dest, dest: state.start };
}

export function reset(): Selection {
  return NONE;
}
