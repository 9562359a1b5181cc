/**
 * Card boards: blank cards dropped into the gaps of an ordered layout.
 *
 * The label board spaces the scale labels; side boards space membership
 * milestones along one flank, where a gap may also be a hesitation interval
 * entered through min/max sliders.
 */

import { el } from "../dom.js";
import type { SessionStore } from "../store.js";
import type { GapInput } from "../types.js";

const SLIDER_MAX = 12;

interface GapRowOptions {
  index: number;
  hesitationAllowed: boolean;
}

/** One gap editor; read() yields the card count or [min, max] interval. */
function gapRow(options: GapRowOptions): {
  root: HTMLElement;
  read: () => GapInput;
} {
  const { index, hesitationAllowed } = options;
  const count = el("input", {
    type: "number",
    min: 0,
    value: 0,
    "data-test": `gap-count-${index}`,
    "aria-label": `cards in gap ${index}`,
  });
  const minSlider = el("input", {
    type: "range",
    min: 0,
    max: SLIDER_MAX,
    value: 0,
    "data-test": `gap-min-${index}`,
    "aria-label": `minimum cards in gap ${index}`,
  });
  const maxSlider = el("input", {
    type: "range",
    min: 0,
    max: SLIDER_MAX,
    value: 0,
    "data-test": `gap-max-${index}`,
    "aria-label": `maximum cards in gap ${index}`,
  });
  const minLabel = el("span", { class: "slider-value" }, ["0"]);
  const maxLabel = el("span", { class: "slider-value" }, ["0"]);
  minSlider.addEventListener("input", () => {
    minLabel.textContent = minSlider.value;
  });
  maxSlider.addEventListener("input", () => {
    maxLabel.textContent = maxSlider.value;
  });

  const exactPart = el("span", { class: "gap-exact" }, [
    el("button", {
      type: "button",
      "data-test": `gap-dec-${index}`,
      onclick: () => {
        count.value = String(Math.max(0, Number(count.value) - 1));
      },
    }, ["−"]),
    count,
    el("button", {
      type: "button",
      "data-test": `gap-inc-${index}`,
      onclick: () => {
        count.value = String(Number(count.value) + 1);
      },
    }, ["+"]),
  ]);
  const hesitantPart = el("span", { class: "gap-hesitant", hidden: true }, [
    el("label", {}, ["at least ", minSlider, minLabel]),
    el("label", {}, ["at most ", maxSlider, maxLabel]),
  ]);

  const toggle = el("input", {
    type: "checkbox",
    "data-test": `gap-hesitant-${index}`,
    "aria-label": `hesitate on gap ${index}`,
  });
  toggle.addEventListener("change", () => {
    exactPart.hidden = toggle.checked;
    hesitantPart.hidden = !toggle.checked;
  });

  const root = el("div", { class: "gap-row", "data-test": `gap-row-${index}` }, [
    exactPart,
  ]);
  if (hesitationAllowed) {
    root.append(hesitantPart, el("label", { class: "hesitate" }, [toggle, " unsure"]));
  }
  return {
    root,
    read: () => {
      if (hesitationAllowed && toggle.checked) {
        return [Number(minSlider.value), Number(maxSlider.value)];
      }
      return Number(count.value);
    },
  };
}

/** Gaps between scale labels; exact counts only, worst label first. */
export function renderLabelBoard(
  labels: string[],
  store: SessionStore,
): HTMLElement {
  const rows = labels.slice(1).map((_, i) =>
    gapRow({ index: i, hesitationAllowed: false }),
  );
  const list = el("div", { class: "board" });
  labels.forEach((label, i) => {
    list.append(el("div", { class: "board-label" }, [label]));
    const row = rows[i];
    if (row) list.append(row.root);
  });
  const submit = el("button", {
    type: "button",
    "data-test": "submit-label-cards",
    disabled: !store.can("place_label_cards"),
    onclick: () => {
      void store.dispatch("place_label_cards", {
        gaps: rows.map((r) => r.read()),
      });
    },
  }, ["Place cards"]);
  return el("section", { class: "panel", "data-test": "label-board" }, [
    el("h2", {}, ["Space the labels"]),
    el("p", {}, [
      "Insert blank cards between neighbouring labels; more cards mean a bigger difference in worth.",
    ]),
    list,
    submit,
  ]);
}

/**
 * Milestones along one side of the current label's membership function,
 * from the support edge up to the core. The DM chooses how many milestones
 * to distinguish and how many cards separate them; ticking "unsure" turns a
 * gap into a [min, max] interval.
 */
export function renderSideBoard(store: SessionStore): HTMLElement {
  const view = store.view;
  if (!view) throw new Error("no view");
  const rows: Array<{ root: HTMLElement; read: () => GapInput }> = [];
  const list = el("div", { class: "board board-side" });

  const rebuild = (count: number) => {
    rows.length = 0;
    while (list.firstChild) list.removeChild(list.firstChild);
    for (let i = 0; i < count; i += 1) {
      const row = gapRow({ index: i, hesitationAllowed: true });
      rows.push(row);
      list.append(
        el("div", { class: "board-label" }, [`milestone ${i}`]),
        row.root,
      );
    }
    list.append(el("div", { class: "board-label" }, [`milestone ${count}`]));
  };
  rebuild(1);

  let gapCount = 1;
  const addButton = el("button", {
    type: "button",
    "data-test": "add-milestone",
    onclick: () => {
      gapCount += 1;
      rebuild(gapCount);
    },
  }, ["Add milestone"]);
  const removeButton = el("button", {
    type: "button",
    "data-test": "remove-milestone",
    onclick: () => {
      if (gapCount > 1) {
        gapCount -= 1;
        rebuild(gapCount);
      }
    },
  }, ["Remove milestone"]);

  const submit = el("button", {
    type: "button",
    "data-test": "submit-side-cards",
    disabled: !store.can("place_side_cards"),
    onclick: () => {
      void store.dispatch("place_side_cards", {
        gaps: rows.map((r) => r.read()),
      });
    },
  }, ["Place cards"]);

  return el("section", { class: "panel", "data-test": "side-board" }, [
    el("h2", {}, [`Shape ${view.label ?? "?"} · ${view.side ?? "?"} side`]),
    el("p", {}, [
      "Lay out membership milestones from the edge of the support to the core and put cards in the gaps.",
    ]),
    el("div", { class: "board-controls" }, [addButton, removeButton]),
    list,
    submit,
  ]);
}
