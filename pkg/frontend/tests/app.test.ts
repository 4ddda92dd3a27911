import { beforeEach, describe, expect, it } from "vitest";

import type {
  LatticeDoc,
  SessionResource,
} from "../src/api.js";
import { mount, parseOrder, type Controller } from "../src/main.js";

interface Route {
  status: number;
  json: unknown;
}

type Handler = (method: string, path: string, body: unknown) => Route;

function jsonFetch(handler: Handler) {
  const calls: Array<{ method: string; path: string; body: unknown }> = [];
  const fetchImpl = async (input: string, init?: RequestInit) => {
    const method = init?.method ?? "GET";
    const path = input.replace(/^https?:\/\/[^/]+/, "");
    const body = init?.body ? JSON.parse(String(init.body)) : null;
    calls.push({ method, path, body });
    const route = handler(method, path, body);
    return new Response(JSON.stringify(route.json), {
      status: route.status,
      headers: { "content-type": "application/json" },
    });
  };
  return { fetchImpl, calls };
}

function resource(overrides: Partial<SessionResource> = {}): SessionResource {
  return {
    id: "sid1",
    name: "demo",
    revision: 0,
    done: false,
    truncated: false,
    query: {
      premise: [],
      conclusion: ["a", "b"],
      shared_intent: ["W"],
      candidates: ["M", "LL"],
    },
    progress: {
      queries_answered: 0,
      accepts: 0,
      counterexamples: 0,
      scale_attributes: 0,
      reflected_extents: 1,
      base_extents: 4,
    },
    objects: ["a", "b"],
    attributes: ["W", "M", "LL"],
    scale_attribute_extents: [],
    history: [],
    ...overrides,
  };
}

const emptyLattice: LatticeDoc = {
  name: "explored-scale",
  nodes: [{ id: 0, extent: ["a", "b"], intent: [], objects: [], attributes: [] }],
  edges: [],
};

function startForm(controller: Controller, text: string): void {
  const root = controller.root;
  root.querySelector<HTMLTextAreaElement>("#context-text")!.value = text;
  root.querySelector<HTMLFormElement>("#setup")!.dispatchEvent(
    new Event("submit", { bubbles: true, cancelable: true }),
  );
}

async function settle(): Promise<void> {
  // response bodies are read across macrotask boundaries
  for (let i = 0; i < 10; i++) {
    await new Promise((resolve) => setTimeout(resolve, 0));
  }
}

let root: HTMLElement;

beforeEach(() => {
  root = document.createElement("div");
  document.body.replaceChildren(root);
});

describe("mount", () => {
  it("creates a session from pasted text and renders the first query", async () => {
    const { fetchImpl, calls } = jsonFetch((method, path) => {
      if (method === "POST" && path === "/api/v1/sessions") {
        return { status: 201, json: resource() };
      }
      if (path === "/api/v1/sessions/sid1/lattice") {
        return { status: 200, json: emptyLattice };
      }
      throw new Error(`unexpected ${method} ${path}`);
    });
    const controller = mount(root, { fetchImpl });
    startForm(controller, "B\n\n2\n3\n...");
    await settle();

    expect(calls[0]!.body).toMatchObject({
      context_text: "B\n\n2\n3\n...",
      init_base: true,
    });
    expect(controller.getState().phase).toBe("live");
    expect(root.querySelectorAll("button.chip.candidate")).toHaveLength(2);
    expect(root.querySelector("#setup")!.hasAttribute("hidden")).toBe(true);
    expect(root.querySelectorAll("svg.lattice circle")).toHaveLength(1);
  });

  it("sends the parsed object order along", async () => {
    const { fetchImpl, calls } = jsonFetch((method, path) => {
      if (method === "POST" && path === "/api/v1/sessions") {
        return { status: 201, json: resource() };
      }
      return { status: 200, json: emptyLattice };
    });
    const controller = mount(root, { fetchImpl });
    controller.root.querySelector<HTMLInputElement>("#object-order")!.value =
      "Be>Co>D";
    startForm(controller, "B\n...");
    await settle();
    expect(calls[0]!.body).toMatchObject({ order: ["Be", "Co", "D"] });
  });

  it("surfaces a parse error inline and stays on the form", async () => {
    const { fetchImpl } = jsonFetch(() => ({
      status: 422,
      json: { detail: "cxt text must start with a B line" },
    }));
    const controller = mount(root, { fetchImpl });
    startForm(controller, "not a context");
    await settle();

    expect(controller.getState().phase).toBe("setup");
    expect(controller.getState().session).toBeNull();
    expect(root.querySelector(".banner.error")!.textContent)
      .toContain("must start with a B line");
    expect(root.querySelector("#setup")!.hasAttribute("hidden")).toBe(false);
  });

  it("posts an accept with the current revision and repaints", async () => {
    const after = resource({
      revision: 1,
      query: {
        premise: ["a"], conclusion: ["a"], shared_intent: [], candidates: ["M"],
      },
      history: [{
        premise: [], conclusion: ["a", "b"], shared_intent: ["W"],
        candidates: ["M", "LL"], accept: true,
      }],
    });
    const { fetchImpl, calls } = jsonFetch((method, path) => {
      if (method === "POST" && path === "/api/v1/sessions") {
        return { status: 201, json: resource() };
      }
      if (method === "POST" && path === "/api/v1/sessions/sid1/answer") {
        return { status: 200, json: after };
      }
      return { status: 200, json: emptyLattice };
    });
    const controller = mount(root, { fetchImpl });
    startForm(controller, "B\n...");
    await settle();
    root.querySelector<HTMLButtonElement>("#accept-button")!.click();
    await settle();

    const answerCall = calls.find((c) => c.path.endsWith("/answer"));
    expect(answerCall!.body).toEqual({ revision: 0, accept: true });
    expect(root.querySelector("ol.history li")!.textContent)
      .toContain("Accept {} → {a, b}");
  });

  it("submits selected chips as the counterexample and clears them", async () => {
    const after = resource({
      revision: 1,
      history: [{
        premise: [], conclusion: ["a", "b"], shared_intent: ["W"],
        candidates: ["M", "LL"], counterexample: ["M"], new_extent: ["a"],
      }],
    });
    const { fetchImpl, calls } = jsonFetch((method, path) => {
      if (method === "POST" && path === "/api/v1/sessions") {
        return { status: 201, json: resource() };
      }
      if (method === "POST" && path.endsWith("/answer")) {
        return { status: 200, json: after };
      }
      return { status: 200, json: emptyLattice };
    });
    const controller = mount(root, { fetchImpl });
    startForm(controller, "B\n...");
    await settle();
    root.querySelector<HTMLButtonElement>('button[data-attribute="M"]')!.click();
    root.querySelector<HTMLButtonElement>("#counterexample-button")!.click();
    await settle();

    const answerCall = calls.find((c) => c.path.endsWith("/answer"));
    expect(answerCall!.body).toEqual({ revision: 0, counterexample: ["M"] });
    expect(controller.getState().selected).toEqual([]);
    expect(root.querySelector("ol.history li")!.textContent)
      .toContain("Add {a} (split on M)");
  });

  it("refetches after a stale-revision conflict", async () => {
    const fresh = resource({ revision: 5 });
    let answered = 0;
    const { fetchImpl } = jsonFetch((method, path) => {
      if (method === "POST" && path === "/api/v1/sessions") {
        return { status: 201, json: resource() };
      }
      if (method === "POST" && path.endsWith("/answer")) {
        answered += 1;
        return {
          status: 409,
          json: { detail: { message: "revision is stale", current_revision: 5 } },
        };
      }
      if (path === "/api/v1/sessions/sid1") {
        return { status: 200, json: fresh };
      }
      return { status: 200, json: emptyLattice };
    });
    const controller = mount(root, { fetchImpl });
    startForm(controller, "B\n...");
    await settle();
    root.querySelector<HTMLButtonElement>("#accept-button")!.click();
    await settle();

    expect(answered).toBe(1);
    expect(controller.getState().session!.revision).toBe(5);
    expect(root.querySelector(".banner.error")!.textContent)
      .toContain("refreshed");
  });

  it("shows the engine explanation when a counterexample is rejected", async () => {
    const { fetchImpl } = jsonFetch((method, path) => {
      if (method === "POST" && path === "/api/v1/sessions") {
        return { status: 201, json: resource() };
      }
      if (method === "POST" && path.endsWith("/answer")) {
        return {
          status: 422,
          json: {
            detail: {
              message: "the selected attributes cannot refute the query",
              offending: ["W"],
            },
          },
        };
      }
      return { status: 200, json: emptyLattice };
    });
    const controller = mount(root, { fetchImpl });
    startForm(controller, "B\n...");
    await settle();
    root.querySelector<HTMLButtonElement>('button[data-attribute="M"]')!.click();
    root.querySelector<HTMLButtonElement>("#counterexample-button")!.click();
    await settle();

    expect(root.querySelector(".banner.error")!.textContent)
      .toContain("offending: W");
    expect(controller.getState().phase).toBe("live");
    expect(controller.getState().session!.revision).toBe(0);
    expect(controller.getState().selected).toEqual(["M"]);
  });

  it("keeps the old drawing and warns when the lattice refresh fails", async () => {
    let latticeCalls = 0;
    const { fetchImpl } = jsonFetch((method, path) => {
      if (method === "POST" && path === "/api/v1/sessions") {
        return { status: 201, json: resource() };
      }
      if (method === "POST" && path.endsWith("/answer")) {
        return { status: 200, json: resource({ revision: 1 }) };
      }
      latticeCalls += 1;
      if (latticeCalls > 1) return { status: 500, json: { detail: "boom" } };
      return { status: 200, json: emptyLattice };
    });
    const controller = mount(root, { fetchImpl });
    startForm(controller, "B\n...");
    await settle();
    root.querySelector<HTMLButtonElement>("#accept-button")!.click();
    await settle();

    expect(controller.getState().stale).toBe(true);
    expect(root.querySelector(".banner.stale")).not.toBeNull();
    expect(root.querySelectorAll("svg.lattice circle")).toHaveLength(1);
  });

  it("sends a JSON context document when the text is JSON", async () => {
    const { fetchImpl, calls } = jsonFetch((method, path) => {
      if (method === "POST" && path === "/api/v1/sessions") {
        return { status: 201, json: resource() };
      }
      return { status: 200, json: emptyLattice };
    });
    const controller = mount(root, { fetchImpl });
    startForm(
      controller,
      '{"objects": ["g"], "attributes": ["m"], "incidence": []}',
    );
    await settle();
    expect(calls[0]!.body.context).toEqual({
      objects: ["g"], attributes: ["m"], incidence: [],
    });
    expect(calls[0]!.body.context_text).toBeUndefined();
  });
});

describe("parseOrder", () => {
  it("splits on arrows, commas, and whitespace", () => {
    expect(parseOrder("Be>Co>D")).toEqual(["Be", "Co", "D"]);
    expect(parseOrder("Be, Co  D")).toEqual(["Be", "Co", "D"]);
  });

  it("returns undefined for blank input", () => {
    expect(parseOrder("")).toBeUndefined();
    expect(parseOrder("  ")).toBeUndefined();
  });
});
