/** Application state and its pure reducer.
 *
 * The rendered UI is a function of the latest server snapshot plus the
 * local chip selection, so every transition funnels through reduce()
 * and nothing else mutates state.  Refetching after a conflict only
 * replaces the snapshot; history lives on the server and is never lost.
 */

import type { LatticeDoc, SessionResource } from "./api.js";

export type Phase = "setup" | "starting" | "live" | "done";

export interface AppState {
  phase: Phase;
  session: SessionResource | null;
  lattice: LatticeDoc | null;
  /** Candidate attributes picked for the next counterexample. */
  selected: string[];
  /** Inline error text, or null when the last request went through. */
  banner: string | null;
  /** Attributes the engine named when rejecting a counterexample. */
  offending: string[];
  /** True while the lattice panel shows data older than the session. */
  stale: boolean;
  /** True while a request is in flight; blocks duplicate submits. */
  busy: boolean;
}

export const initialState: AppState = {
  phase: "setup",
  session: null,
  lattice: null,
  selected: [],
  banner: null,
  offending: [],
  stale: false,
  busy: false,
};

export type Action =
  | { kind: "request-started" }
  | { kind: "session-loaded"; session: SessionResource }
  | { kind: "lattice-loaded"; lattice: LatticeDoc }
  | { kind: "lattice-failed" }
  | { kind: "chip-toggled"; attribute: string }
  | { kind: "selection-cleared" }
  | { kind: "request-failed"; message: string; offending?: string[] }
  | { kind: "conflict-detected" }
  | { kind: "reset" };

function candidateSet(session: SessionResource | null): Set<string> {
  return new Set(session?.query?.candidates ?? []);
}

export function reduce(state: AppState, action: Action): AppState {
  switch (action.kind) {
    case "request-started":
      return { ...state, busy: true, banner: null, offending: [] };

    case "session-loaded": {
      const candidates = candidateSet(action.session);
      return {
        ...state,
        phase: action.session.done ? "done" : "live",
        session: action.session,
        selected: state.selected.filter((a) => candidates.has(a)),
        busy: false,
        banner: null,
        offending: [],
      };
    }

    case "lattice-loaded":
      return { ...state, lattice: action.lattice, stale: false };

    case "lattice-failed":
      return { ...state, stale: true };

    case "chip-toggled": {
      if (state.phase !== "live") return state;
      if (!candidateSet(state.session).has(action.attribute)) return state;
      const selected = state.selected.includes(action.attribute)
        ? state.selected.filter((a) => a !== action.attribute)
        : [...state.selected, action.attribute].sort();
      return { ...state, selected };
    }

    case "selection-cleared":
      return { ...state, selected: [] };

    case "request-failed":
      return {
        ...state,
        busy: false,
        phase: state.session === null ? "setup" : state.phase,
        banner: action.message,
        offending: action.offending ?? [],
      };

    case "conflict-detected":
      return {
        ...state,
        busy: false,
        banner: "another client answered this query; view refreshed",
        selected: [],
      };

    case "reset":
      return initialState;

    default:
      return state;
  }
}

export function canSubmitCounterexample(state: AppState): boolean {
  return state.phase === "live" && !state.busy && state.selected.length > 0;
}

export function canAccept(state: AppState): boolean {
  return state.phase === "live" && !state.busy;
}

export interface CompletionSummary {
  latticeNodes: number;
  counterexamples: number;
  accepts: number;
  scaleAttributes: number;
  reflected: number;
  baseExtents: number;
  truncated: boolean;
}

export function completionSummary(state: AppState): CompletionSummary | null {
  if (state.phase !== "done" || state.session === null) return null;
  const p = state.session.progress;
  return {
    latticeNodes: state.lattice?.nodes.length ?? 0,
    counterexamples: p.counterexamples,
    accepts: p.accepts,
    scaleAttributes: p.scale_attributes,
    reflected: p.reflected_extents,
    baseExtents: p.base_extents,
    truncated: state.session.truncated,
  };
}
