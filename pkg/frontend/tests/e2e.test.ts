/** End-to-end run against a real exploration service.
 *
 * Spawns the Python server, pastes the bundled living-beings context
 * into the page, replays the bundled walkthrough script by clicking
 * chips and buttons, and checks the completion summary.
 */

import { spawn, type ChildProcess } from "node:child_process";
import { existsSync, readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { mount, type Controller } from "../src/main.js";

function findDataDir(): string {
  let dir = process.cwd();
  for (let hop = 0; hop < 5; hop++) {
    const candidate = join(dir, "src", "scalemeasures", "data");
    if (existsSync(join(candidate, "living_beings.cxt"))) return candidate;
    dir = dirname(dir);
  }
  throw new Error("bundled data directory not found above " + process.cwd());
}

const DATA = findDataDir() + "/";
const PORT = 18000 + (process.pid % 1000);
const BASE = `http://127.0.0.1:${PORT}`;

interface ScriptStep {
  premise: string[];
  accept?: boolean;
  counterexample?: string[];
}

interface WalkthroughScript {
  order: string[];
  steps: ScriptStep[];
}

const script: WalkthroughScript = JSON.parse(
  readFileSync(`${DATA}fig4_script.json`, "utf8"),
);
const contextText = readFileSync(`${DATA}living_beings.cxt`, "utf8");

let server: ChildProcess;

async function waitFor(
  what: string,
  check: () => boolean,
  timeoutMs = 15_000,
): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    if (check()) return;
    await new Promise((r) => setTimeout(r, 25));
  }
  throw new Error(`timed out waiting for ${what}`);
}

beforeAll(async () => {
  server = spawn(
    "python3",
    ["-m", "scalemeasures.cli", "serve", "--host", "127.0.0.1",
     "--port", String(PORT)],
    { stdio: ["ignore", "ignore", "pipe"] },
  );
  let stderr = "";
  server.stderr?.on("data", (chunk) => {
    stderr += String(chunk);
  });
  const deadline = Date.now() + 60_000;
  for (;;) {
    if (server.exitCode !== null) {
      throw new Error(`server exited early: ${stderr}`);
    }
    try {
      const res = await fetch(`${BASE}/api/v1/health`);
      if (res.ok) return;
    } catch {
      // not listening yet
    }
    if (Date.now() > deadline) {
      throw new Error(`server never became healthy: ${stderr}`);
    }
    await new Promise((r) => setTimeout(r, 200));
  }
});

afterAll(() => {
  server?.kill();
});

describe("full walkthrough through the page", () => {
  it("replays the bundled script to a 12-node scale", async () => {
    const root = document.createElement("div");
    document.body.replaceChildren(root);
    const controller: Controller = mount(root, {
      baseUrl: BASE,
      fetchImpl: (input, init) => fetch(input, init),
    });

    const textArea = root.querySelector<HTMLTextAreaElement>("#context-text")!;
    textArea.value = contextText;
    const orderInput = root.querySelector<HTMLInputElement>("#object-order")!;
    orderInput.value = script.order.join(">");
    root.querySelector<HTMLFormElement>("#setup")!.dispatchEvent(
      new Event("submit", { bubbles: true, cancelable: true }),
    );

    await waitFor(
      "the first query",
      () => controller.getState().phase === "live",
    );

    // The opening question groups everything needing water: one shared
    // chip and one candidate chip per remaining attribute.
    const shared = [...root.querySelectorAll(".chip.shared")]
      .map((c) => c.textContent);
    expect(shared).toEqual(["W"]);
    expect(root.querySelectorAll("button.chip.candidate")).toHaveLength(8);

    for (const [index, step] of script.steps.entries()) {
      await waitFor(
        `query ${index + 1}`,
        () => {
          const state = controller.getState();
          return !state.busy &&
            state.session?.history.length === index &&
            state.session.query !== null;
        },
      );
      const premise = controller.getState().session!.query!.premise;
      expect(premise).toEqual([...step.premise].sort());

      if (step.counterexample) {
        for (const attribute of step.counterexample) {
          const chip = root.querySelector<HTMLButtonElement>(
            `button.chip[data-attribute="${attribute}"]`,
          );
          expect(chip, `chip ${attribute} at step ${index + 1}`).not.toBeNull();
          chip!.click();
        }
        root.querySelector<HTMLButtonElement>("#counterexample-button")!
          .click();
      } else {
        root.querySelector<HTMLButtonElement>("#accept-button")!.click();
      }
      await waitFor(
        `answer ${index + 1} to land`,
        () => controller.getState().session?.history.length === index + 1,
      );
    }

    await waitFor(
      "the completion summary",
      () => controller.getState().phase === "done" &&
        root.querySelector("#summary") !== null &&
        !controller.getState().stale &&
        controller.getState().lattice !== null,
    );

    const summaryText = root.querySelector("#summary")!.textContent!;
    expect(summaryText).toContain("Exploration finished");
    expect(summaryText).toContain("12 lattice nodes");
    expect(summaryText).toContain("9 counterexamples");
    expect(summaryText).toContain("4 accepts");
    expect(summaryText).toContain("reflecting 12/19 extents");

    expect(root.querySelectorAll("ol.history li")).toHaveLength(13);
    expect(root.querySelectorAll("svg.lattice circle.concept"))
      .toHaveLength(12);
    expect(root.querySelector(".badge.reflects")!.textContent)
      .toBe("reflects 12/19 extents");

    const accepted = [...root.querySelectorAll("ol.history li.accepted")];
    expect(accepted).toHaveLength(4);
  });

  it("rejects a malformed paste without creating a session", async () => {
    const root = document.createElement("div");
    document.body.replaceChildren(root);
    const controller = mount(root, {
      baseUrl: BASE,
      fetchImpl: (input, init) => fetch(input, init),
    });
    root.querySelector<HTMLTextAreaElement>("#context-text")!.value =
      "not a context at all";
    root.querySelector<HTMLFormElement>("#setup")!.dispatchEvent(
      new Event("submit", { bubbles: true, cancelable: true }),
    );
    await waitFor(
      "the inline error",
      () => root.querySelector(".banner.error") !== null,
    );
    expect(controller.getState().session).toBeNull();
    expect(controller.getState().phase).toBe("setup");
  });
});
