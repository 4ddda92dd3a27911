/** DOM renderers, one per page region.
 *
 * Each renderer empties its container and repaints it from the state,
 * so a region can never drift from the snapshot it was given.  The
 * setup form is built once by main.ts and left alone, which keeps
 * pasted context text alive across repaints.
 */

import type { LatticeDoc } from "./api.js";
import { layeredLayout } from "./layout.js";
import {
  AppState,
  canAccept,
  canSubmitCounterexample,
  completionSummary,
} from "./model.js";

export interface Handlers {
  onToggleChip(attribute: string): void;
  onAccept(): void;
  onCounterexample(): void;
  onClearSelection(): void;
}

const SVG_NS = "http://www.w3.org/2000/svg";

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function objectSet(names: readonly string[]): string {
  return `{${names.join(", ")}}`;
}

export function renderBanner(container: HTMLElement, state: AppState): void {
  container.replaceChildren();
  if (state.banner === null) return;
  const box = el(container.ownerDocument, "div", "banner error");
  box.setAttribute("role", "alert");
  box.textContent = state.offending.length > 0
    ? `${state.banner} (offending: ${state.offending.join(", ")})`
    : state.banner;
  container.append(box);
}

/** The current implication query, asked attribute-first. */
export function renderQuery(
  container: HTMLElement,
  state: AppState,
  handlers: Handlers,
): void {
  const doc = container.ownerDocument;
  container.replaceChildren();
  const query = state.session?.query;
  if (state.phase !== "live" || !query) return;

  const card = el(doc, "section", "query-card");
  card.append(el(doc, "h2", undefined, "Current question"));

  const sharedRow = el(doc, "p", "shared-intent");
  sharedRow.append("Every object in this group has: ");
  if (query.shared_intent.length === 0) {
    sharedRow.append(el(doc, "span", "chip shared", "(no shared attributes)"));
  }
  for (const attr of query.shared_intent) {
    sharedRow.append(el(doc, "span", "chip shared", attr));
  }
  card.append(sharedRow);

  const candidateRow = el(doc, "p", "candidates");
  candidateRow.append("Add more detail using: ");
  for (const attr of query.candidates) {
    const chip = el(doc, "button", "chip candidate", attr);
    chip.type = "button";
    chip.dataset.attribute = attr;
    const picked = state.selected.includes(attr);
    chip.setAttribute("aria-pressed", picked ? "true" : "false");
    if (picked) chip.classList.add("selected");
    chip.addEventListener("click", () => handlers.onToggleChip(attr));
    candidateRow.append(chip);
  }
  card.append(candidateRow);

  const detail = el(doc, "details", "object-implication");
  detail.append(el(doc, "summary", undefined, "object implication"));
  detail.append(el(
    doc,
    "code",
    undefined,
    `${objectSet(query.premise)} → ${objectSet(query.conclusion)}`,
  ));
  card.append(detail);

  const actions = el(doc, "p", "actions");
  const accept = el(doc, "button", "accept", "Accept grouping");
  accept.type = "button";
  accept.id = "accept-button";
  accept.disabled = !canAccept(state);
  accept.addEventListener("click", () => handlers.onAccept());
  const split = el(doc, "button", "counterexample", "Split off selection");
  split.type = "button";
  split.id = "counterexample-button";
  split.disabled = !canSubmitCounterexample(state);
  split.addEventListener("click", () => handlers.onCounterexample());
  const clear = el(doc, "button", "clear", "Clear");
  clear.type = "button";
  clear.id = "clear-selection-button";
  clear.disabled = state.selected.length === 0;
  clear.addEventListener("click", () => handlers.onClearSelection());
  actions.append(accept, " ", split, " ", clear);
  card.append(actions);

  container.append(card);
}

export function renderHistory(container: HTMLElement, state: AppState): void {
  const doc = container.ownerDocument;
  container.replaceChildren();
  const history = state.session?.history ?? [];
  if (history.length === 0) return;
  const heading = el(doc, "h2", undefined, "History");
  const list = el(doc, "ol", "history");
  for (const entry of history) {
    const item = el(doc, "li");
    if (entry.accept) {
      item.className = "accepted";
      item.textContent =
        `Accept ${objectSet(entry.premise)} → ${objectSet(entry.conclusion)}`;
    } else {
      item.className = "countered";
      item.textContent = `Add ${objectSet(entry.new_extent ?? [])}` +
        ` (split on ${(entry.counterexample ?? []).join(", ")})`;
    }
    list.append(item);
  }
  container.append(heading, list);
}

export function renderProgress(container: HTMLElement, state: AppState): void {
  const doc = container.ownerDocument;
  container.replaceChildren();
  const session = state.session;
  if (!session) return;
  const p = session.progress;
  const row = el(doc, "p", "progress");
  row.append(el(
    doc,
    "span",
    "badge reflects",
    `reflects ${p.reflected_extents}/${p.base_extents} extents`,
  ));
  if (state.lattice) {
    row.append(el(
      doc,
      "span",
      "badge nodes",
      `${state.lattice.nodes.length} nodes`,
    ));
  }
  row.append(el(
    doc,
    "span",
    "badge counts",
    `${p.counterexamples} counterexamples / ${p.accepts} accepts` +
      ` / ${p.scale_attributes} scale attributes`,
  ));
  container.append(row);
}

function nodeTitle(docModel: LatticeDoc, id: number): string {
  const node = docModel.nodes.find((c) => c.id === id);
  if (!node) return "";
  const intent = node.intent.length > 0 ? node.intent.join("  ") : "⊤";
  return `${objectSet(node.extent)}\n${intent}`;
}

export function renderLattice(container: HTMLElement, state: AppState): void {
  const doc = container.ownerDocument;
  container.replaceChildren();
  if (state.stale) {
    const warn = el(doc, "div", "banner stale");
    warn.setAttribute("role", "status");
    warn.textContent = "diagram may be stale: last refresh failed";
    container.append(warn);
  }
  const model = state.lattice;
  if (!model) return;

  const width = 640;
  const height = Math.max(160, 90 * layeredLayout(model).layerCount);
  const drawing = layeredLayout(model);
  const svg = doc.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  svg.setAttribute("class", "lattice");
  const margin = 24;
  const sx = (x: number) => margin + x * (width - 2 * margin);
  const sy = (y: number) => margin + y * (height - 2 * margin);
  const at = new Map(drawing.nodes.map((p) => [p.id, p]));

  for (const [lo, hi] of drawing.edges) {
    const a = at.get(lo);
    const b = at.get(hi);
    if (!a || !b) continue;
    const line = doc.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", String(sx(a.x)));
    line.setAttribute("y1", String(sy(a.y)));
    line.setAttribute("x2", String(sx(b.x)));
    line.setAttribute("y2", String(sy(b.y)));
    line.setAttribute("class", "cover");
    svg.append(line);
  }
  for (const placed of drawing.nodes) {
    const circle = doc.createElementNS(SVG_NS, "circle");
    circle.setAttribute("cx", String(sx(placed.x)));
    circle.setAttribute("cy", String(sy(placed.y)));
    circle.setAttribute("r", "7");
    circle.setAttribute("class", "concept");
    const title = doc.createElementNS(SVG_NS, "title");
    title.textContent = nodeTitle(model, placed.id);
    circle.append(title);
    svg.append(circle);
  }
  container.append(svg);
}

export function renderSummary(container: HTMLElement, state: AppState): void {
  const doc = container.ownerDocument;
  container.replaceChildren();
  const summary = completionSummary(state);
  if (!summary) return;
  const box = el(doc, "section", "summary");
  box.id = "summary";
  const title = summary.truncated
    ? "Exploration truncated by its limits"
    : "Exploration finished";
  box.append(el(doc, "h2", undefined, title));
  box.append(el(
    doc,
    "p",
    undefined,
    `Scale lattice: ${summary.latticeNodes} lattice nodes,` +
      ` reflecting ${summary.reflected}/${summary.baseExtents} extents.`,
  ));
  box.append(el(
    doc,
    "p",
    undefined,
    `History: ${summary.counterexamples} counterexamples,` +
      ` ${summary.accepts} accepts,` +
      ` ${summary.scaleAttributes} scale attributes.`,
  ));
  container.append(box);
}
