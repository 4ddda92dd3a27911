/** Page wiring: builds the skeleton, owns the controller loop.
 *
 * mount() returns the controller so tests can drive the page exactly
 * the way button handlers do.  All server traffic goes through the
 * injected fetch, which is how the test suite points the page at a
 * throwaway server.
 */

import {
  ApiClient,
  ApiError,
  type AnswerBody,
  type FetchLike,
  type SessionResource,
} from "./api.js";
import { type Action, type AppState, initialState, reduce } from "./model.js";
import {
  renderBanner,
  renderHistory,
  renderLattice,
  renderProgress,
  renderQuery,
  renderSummary,
} from "./view.js";

export interface MountOptions {
  baseUrl?: string;
  fetchImpl?: FetchLike;
}

export interface StartOptions {
  contextText: string;
  name?: string;
  orderText?: string;
  initBase?: boolean;
}

export interface Controller {
  readonly root: HTMLElement;
  getState(): AppState;
  start(options: StartOptions): Promise<void>;
  toggleChip(attribute: string): void;
  clearSelection(): void;
  accept(): Promise<void>;
  counterexample(): Promise<void>;
  refresh(): Promise<void>;
}

/** Split "Be>Co>D" or "Be, Co, D" into an object order, if any. */
export function parseOrder(text: string): string[] | undefined {
  const names = text.split(/[>,\s]+/).filter((s) => s.length > 0);
  return names.length > 0 ? names : undefined;
}

export function mount(root: HTMLElement, options: MountOptions = {}): Controller {
  const doc = root.ownerDocument;
  const api = new ApiClient(options.baseUrl ?? "", options.fetchImpl);
  let state: AppState = initialState;

  root.replaceChildren();
  root.innerHTML = [
    '<h1>Scale explorer</h1>',
    '<div id="banner"></div>',
    '<form id="setup" class="setup">',
    '  <label>Context (cxt cross table or JSON document)',
    '    <textarea id="context-text" rows="12" spellcheck="false"',
    '      placeholder="Paste a context here or pick a file"></textarea>',
    '  </label>',
    '  <label class="file">or load from file',
    '    <input id="context-file" type="file" accept=".cxt,.json">',
    '  </label>',
    '  <label>Object order (optional)',
    '    <input id="object-order" type="text"',
    '      placeholder="e.g. Be>Co>D>WW>FL>Br>F>R">',
    '  </label>',
    '  <label class="option">',
    '    <input id="init-base" type="checkbox" checked>',
    '    start from the object-wise base scale',
    '  </label>',
    '  <button id="start-button" type="submit">Start exploration</button>',
    '</form>',
    '<main class="panels">',
    '  <div class="left">',
    '    <div id="query"></div>',
    '    <div id="summary-slot"></div>',
    '    <div id="progress"></div>',
    '    <div id="history"></div>',
    '  </div>',
    '  <div class="right"><div id="lattice"></div></div>',
    '</main>',
  ].join("\n");

  const region = (id: string): HTMLElement => {
    const node = root.querySelector<HTMLElement>(`#${id}`);
    if (!node) throw new Error(`missing region #${id}`);
    return node;
  };

  const handlers = {
    onToggleChip: (attribute: string) => controller.toggleChip(attribute),
    onAccept: () => void controller.accept(),
    onCounterexample: () => void controller.counterexample(),
    onClearSelection: () => controller.clearSelection(),
  };

  function paint(): void {
    renderBanner(region("banner"), state);
    renderQuery(region("query"), state, handlers);
    renderSummary(region("summary-slot"), state);
    renderProgress(region("progress"), state);
    renderHistory(region("history"), state);
    renderLattice(region("lattice"), state);
    const form = root.querySelector<HTMLFormElement>("#setup");
    if (form) form.hidden = state.session !== null;
  }

  function dispatch(action: Action): void {
    state = reduce(state, action);
    paint();
  }

  function fail(err: unknown): void {
    if (err instanceof ApiError) {
      dispatch({
        kind: "request-failed",
        message: err.message,
        offending: err.offending,
      });
    } else {
      dispatch({
        kind: "request-failed",
        message: err instanceof Error ? err.message : String(err),
      });
    }
  }

  async function refreshLattice(session: SessionResource): Promise<void> {
    try {
      const lattice = await api.lattice(session.id);
      dispatch({ kind: "lattice-loaded", lattice });
    } catch {
      dispatch({ kind: "lattice-failed" });
    }
  }

  async function submit(body: AnswerBody): Promise<void> {
    const session = state.session;
    if (!session || state.busy) return;
    dispatch({ kind: "request-started" });
    try {
      const updated = await api.answer(session.id, session.revision, body);
      dispatch({ kind: "session-loaded", session: updated });
      dispatch({ kind: "selection-cleared" });
      await refreshLattice(updated);
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        await controller.refresh();
        // announce after the refetch so the reload cannot wipe the notice
        if (state.banner === null) dispatch({ kind: "conflict-detected" });
        return;
      }
      fail(err);
    }
  }

  const controller: Controller = {
    root,

    getState: () => state,

    async start(opts: StartOptions): Promise<void> {
      if (state.busy) return;
      dispatch({ kind: "request-started" });
      const text = opts.contextText.trim();
      const payload: Parameters<typeof api.createSession>[0] = {
        init_base: opts.initBase ?? true,
      };
      if (opts.name) payload.name = opts.name;
      const order = parseOrder(opts.orderText ?? "");
      if (order) payload.order = order;
      if (text.startsWith("{")) {
        try {
          payload.context = JSON.parse(text);
        } catch (err) {
          fail(err);
          return;
        }
      } else {
        payload.context_text = text;
      }
      try {
        const session = await api.createSession(payload);
        dispatch({ kind: "session-loaded", session });
        await refreshLattice(session);
      } catch (err) {
        fail(err);
      }
    },

    toggleChip(attribute: string): void {
      dispatch({ kind: "chip-toggled", attribute });
    },

    clearSelection(): void {
      dispatch({ kind: "selection-cleared" });
    },

    accept(): Promise<void> {
      return submit({ accept: true });
    },

    counterexample(): Promise<void> {
      if (state.selected.length === 0) return Promise.resolve();
      return submit({ counterexample: state.selected });
    },

    async refresh(): Promise<void> {
      const session = state.session;
      if (!session) return;
      try {
        const updated = await api.getSession(session.id);
        dispatch({ kind: "session-loaded", session: updated });
        await refreshLattice(updated);
      } catch (err) {
        fail(err);
      }
    },
  };

  const form = region("setup") as HTMLFormElement;
  const textArea = root.querySelector<HTMLTextAreaElement>("#context-text");
  const fileInput = root.querySelector<HTMLInputElement>("#context-file");
  const orderInput = root.querySelector<HTMLInputElement>("#object-order");
  const initBase = root.querySelector<HTMLInputElement>("#init-base");

  fileInput?.addEventListener("change", () => {
    const file = fileInput.files?.[0];
    if (!file || !textArea) return;
    void file.text().then((text) => {
      textArea.value = text;
    }).catch(() => {
      dispatch({ kind: "request-failed", message: "could not read the file" });
    });
  });

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    void controller.start({
      contextText: textArea?.value ?? "",
      orderText: orderInput?.value ?? "",
      initBase: initBase?.checked ?? true,
    });
  });

  paint();
  return controller;
}
