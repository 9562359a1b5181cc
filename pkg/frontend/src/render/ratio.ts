/**
 * Ratio review: the upper-triangular table of pairwise value ratios the
 * current card placement implies. Editing a cell posts one modification and
 * moves the session into the adjusting phase; accepting keeps the values.
 */

import { el } from "../dom.js";
import { displayFraction } from "../fraction.js";
import type { SessionStore } from "../store.js";
import type { RatioCell } from "../types.js";

/** Integers travel as numbers, anything else as a fraction string. */
export function normalizeRatioInput(text: string): number | string | null {
  const trimmed = text.trim();
  if (/^\d+$/.test(trimmed)) return Number(trimmed);
  if (/^\d+\s*\/\s*[1-9]\d*$/.test(trimmed)) return trimmed.replace(/\s+/g, "");
  return null;
}

function cellEditor(
  cell: RatioCell,
  store: SessionStore,
): HTMLElement {
  const input = el("input", {
    type: "text",
    size: 6,
    value: cell.value,
    disabled: !store.can("modify_ratios"),
    "data-test": `ratio-input-${cell.s}-${cell.r}`,
    "aria-label": `ratio of position ${cell.s} to position ${cell.r}`,
  });
  const apply = el("button", {
    type: "button",
    disabled: !store.can("modify_ratios"),
    "data-test": `ratio-apply-${cell.s}-${cell.r}`,
    onclick: () => {
      const value = normalizeRatioInput(input.value);
      if (value === null || input.value.trim() === cell.value) return;
      void store.dispatch("modify_ratios", { s: cell.s, r: cell.r, value });
    },
  }, ["revise"]);
  const classes = ["ratio-cell"];
  if (cell.modified) classes.push("modified");
  return el("td", {
    class: classes.join(" "),
    "data-test": `ratio-cell-${cell.s}-${cell.r}`,
    "data-modified": String(cell.modified),
  }, [input, apply, cell.modified ? el("span", { class: "badge" }, ["edited"]) : ""]) as unknown as HTMLElement;
}

export function renderRatioPanel(store: SessionStore): HTMLElement {
  const view = store.view;
  if (!view) throw new Error("no view");
  const cells = view.current_table ?? [];
  const positions = view.current_chain?.items.length ?? 0;
  const adjusting = view.phase === "adjusting";

  const byKey = new Map(cells.map((c) => [`${c.s}-${c.r}`, c]));
  const header = el("tr", {}, [
    el("th", {}, ["s \\ r"]),
    ...Array.from({ length: Math.max(0, positions - 2) }, (_, i) =>
      el("th", {}, [String(i + 2)]),
    ),
  ]);
  const body: HTMLElement[] = [header];
  for (let s = 3; s <= positions; s += 1) {
    const row = el("tr", {}, [el("th", {}, [String(s)])]);
    for (let r = 2; r < positions; r += 1) {
      if (r >= s) break;
      const cell = byKey.get(`${s}-${r}`);
      row.append(
        cell ? cellEditor(cell, store) : el("td", { class: "ratio-empty" }),
      );
    }
    body.push(row);
  }

  const memberships = view.current_memberships ?? [];
  const valueLine = el("p", { "data-test": "derived-values" }, [
    "Derived memberships: ",
    memberships.map((m) => displayFraction(m)).join(", ") || "–",
  ]);

  const accept = el("button", {
    type: "button",
    "data-test": "accept-ratios",
    disabled: !store.can("accept_ratios"),
    onclick: () => {
      void store.dispatch("accept_ratios");
    },
  }, ["Accept ratios"]);
  const proceed = el("button", {
    type: "button",
    "data-test": "proceed",
    disabled: !store.can("proceed"),
    onclick: () => {
      void store.dispatch("proceed");
    },
  }, [adjusting ? "Re-derive values" : "Continue"]);

  const children: Array<Node | string> = [
    el("h2", {}, [
      `Ratios for ${view.label ?? "?"} · ${view.side ?? "?"} side`,
    ]),
  ];
  if (adjusting) {
    children.push(
      el("p", { class: "banner", "data-test": "adjusting-banner" }, [
        "Adjusting: your edit is in; continue to re-derive the values.",
      ]),
    );
  }
  if (cells.length === 0) {
    children.push(el("p", {}, ["Two milestones leave no ratios to review."]));
  } else {
    children.push(el("table", { class: "ratio-table" }, body));
  }
  children.push(valueLine, el("div", { class: "actions" }, [accept, proceed]));
  return el("section", {
    class: "panel",
    "data-test": adjusting ? "adjusting-panel" : "ratio-panel",
  }, children);
}

export function renderSideDone(store: SessionStore): HTMLElement {
  const view = store.view;
  if (!view) throw new Error("no view");
  return el("section", { class: "panel", "data-test": "side-done-panel" }, [
    el("h2", {}, [
      `${view.label ?? "?"} · ${view.side ?? "?"} side locked in`,
    ]),
    el("button", {
      type: "button",
      "data-test": "proceed",
      disabled: !store.can("proceed"),
      onclick: () => {
        void store.dispatch("proceed");
      },
    }, ["Continue"]),
  ]);
}
