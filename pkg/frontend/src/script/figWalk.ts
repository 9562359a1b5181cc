/**
 * Scripted browser run of the canonical three-label walkthrough.
 *
 * Drives the mounted app exclusively through its rendered controls (clicks
 * and input edits), answering probes like a decision maker who holds fixed
 * core/support shapes in mind. With the deterministic sequence clock the
 * run reproduces the golden replay document byte for byte.
 */

import type { App } from "../app.js";
import { compareFractions } from "../fraction.js";

type Shape = { support: [string, string]; core: [string, string] };

export const FIG_CONFIG = {
  labels: ["low", "medium", "high"],
  scale_name: "quality",
  h_max: 12,
};

export const FIG_SHAPES: Record<string, Shape> = {
  low: { support: ["0", "7/20"], core: ["0", "1/10"] },
  medium: { support: ["3/20", "3/5"], core: ["1/4", "2/5"] },
  high: { support: ["11/20", "1"], core: ["4/5", "1"] },
};

type Gap = number | [number, number];

interface SidePlan {
  gaps: Gap[];
  modify?: { s: number; r: number; value: string };
}

const SIDE_PLANS: Record<string, SidePlan> = {
  "low/left": { gaps: [0] },
  "low/right": { gaps: [1, 4] },
  "medium/left": { gaps: [1, [2, 4]] },
  "medium/right": { gaps: [0, 1], modify: { s: 3, r: 2, value: "2" } },
  "high/left": { gaps: [2] },
  "high/right": { gaps: [0] },
};

export interface WalkResult {
  exportBytes: Uint8Array;
  postedEvents: number;
  adjustingBannerSeen: boolean;
  adjustingCellValue: string | null;
  adjustingCellMarked: boolean;
  reviewValueAfterAdjust: string | null;
}

function within(value: string, lo: string, hi: string): boolean {
  return compareFractions(lo, value) <= 0 && compareFractions(value, hi) <= 0;
}

export function confidenceFor(shape: Shape, value: string): string {
  if (within(value, shape.core[0], shape.core[1])) return "yes_full";
  if (within(value, shape.support[0], shape.support[1])) return "partial";
  return "no";
}

function need<T extends Element>(root: ParentNode, selector: string): T {
  const node = root.querySelector(selector);
  if (!node) throw new Error(`missing element ${selector}`);
  return node as T;
}

function click(root: ParentNode, testId: string): void {
  need<HTMLButtonElement>(root, `[data-test="${testId}"]`).click();
}

async function waitFor(
  predicate: () => boolean,
  what: string,
  timeoutMs = 30_000,
): Promise<void> {
  const start = Date.now();
  while (!predicate()) {
    if (Date.now() - start > timeoutMs) throw new Error(`timed out: ${what}`);
    await new Promise((resolve) => setTimeout(resolve, 10));
  }
}

export async function runFigWalk(app: App): Promise<WalkResult> {
  const doc = app.root;
  const store = app.store;
  const result: WalkResult = {
    exportBytes: new Uint8Array(),
    postedEvents: 0,
    adjustingBannerSeen: false,
    adjustingCellValue: null,
    adjustingCellMarked: false,
    reviewValueAfterAdjust: null,
  };
  const modified = new Set<string>();

  // create the session through the boot form
  need<HTMLInputElement>(doc, '[data-test="session-labels"]').value =
    FIG_CONFIG.labels.join(",");
  need<HTMLInputElement>(doc, '[data-test="session-scale-name"]').value =
    FIG_CONFIG.scale_name;
  need<HTMLInputElement>(doc, '[data-test="session-h-max"]').value = String(
    FIG_CONFIG.h_max,
  );
  click(doc, "create-session");
  await store.whenIdle();
  if (store.lastError) throw new Error(store.lastError);

  for (let guard = 0; guard < 200; guard += 1) {
    const view = store.view;
    if (!view) throw new Error("session vanished");
    if (view.phase === "assembled") break;

    switch (view.phase) {
      case "label_values": {
        need<HTMLInputElement>(doc, '[data-test="gap-count-0"]').value = "1";
        need<HTMLInputElement>(doc, '[data-test="gap-count-1"]').value = "4";
        click(doc, "submit-label-cards");
        break;
      }
      case "core_support": {
        const label = view.label;
        const probe = view.pending_probe;
        if (!label || probe === null) throw new Error("probe without target");
        const shape = FIG_SHAPES[label];
        if (!shape) throw new Error(`no scripted shape for ${label}`);
        click(doc, `answer-${confidenceFor(shape, probe)}`);
        break;
      }
      case "side_cards": {
        const key = `${view.label}/${view.side}`;
        const plan = SIDE_PLANS[key];
        if (!plan) throw new Error(`no scripted side plan for ${key}`);
        for (let i = 1; i < plan.gaps.length; i += 1) {
          click(doc, "add-milestone");
        }
        plan.gaps.forEach((gap, i) => {
          if (typeof gap === "number") {
            need<HTMLInputElement>(doc, `[data-test="gap-count-${i}"]`).value =
              String(gap);
          } else {
            need<HTMLInputElement>(doc, `[data-test="gap-hesitant-${i}"]`).click();
            need<HTMLInputElement>(doc, `[data-test="gap-min-${i}"]`).value =
              String(gap[0]);
            need<HTMLInputElement>(doc, `[data-test="gap-max-${i}"]`).value =
              String(gap[1]);
          }
        });
        click(doc, "submit-side-cards");
        break;
      }
      case "ratio_review": {
        const key = `${view.label}/${view.side}`;
        const plan = SIDE_PLANS[key];
        const edit = plan?.modify;
        if (edit && !modified.has(key)) {
          modified.add(key);
          const input = need<HTMLInputElement>(
            doc,
            `[data-test="ratio-input-${edit.s}-${edit.r}"]`,
          );
          input.value = edit.value;
          click(doc, `ratio-apply-${edit.s}-${edit.r}`);
        } else {
          if (edit && modified.has(key)) {
            const cell = doc.querySelector(
              `[data-test="ratio-cell-${edit.s}-${edit.r}"] input`,
            ) as HTMLInputElement | null;
            result.reviewValueAfterAdjust = cell ? cell.value : null;
          }
          click(doc, "accept-ratios");
        }
        break;
      }
      case "adjusting": {
        result.adjustingBannerSeen =
          doc.querySelector('[data-test="adjusting-banner"]') !== null;
        const marked = doc.querySelector('[data-test^="ratio-cell-"][data-modified="true"]');
        result.adjustingCellMarked = marked !== null;
        const input = marked?.querySelector("input") as HTMLInputElement | null;
        result.adjustingCellValue = input ? input.value : null;
        click(doc, "proceed");
        break;
      }
      case "side_done": {
        click(doc, "proceed");
        break;
      }
      default:
        throw new Error(`unscripted phase ${view.phase}`);
    }
    await store.whenIdle();
    if (store.lastError) throw new Error(store.lastError);
  }

  if (store.view?.phase !== "assembled") {
    throw new Error("walk never reached the assembled phase");
  }

  click(doc, "export-document");
  await waitFor(() => app.lastExport !== null, "export bytes");
  result.exportBytes = app.lastExport!;
  result.postedEvents = store.postedEvents;
  return result;
}
