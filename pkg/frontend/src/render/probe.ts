/**
 * Core/support dialogue: one value at a time, answered by confidence.
 *
 * The three confidence choices map onto the protocol answers:
 * fully confident -> yes_full, somewhat -> partial, not at all -> no.
 */

import { el } from "../dom.js";
import { displayFraction } from "../fraction.js";
import type { SessionStore } from "../store.js";

const CHOICES: Array<{ answer: string; caption: string }> = [
  { answer: "yes_full", caption: "Fully confident it belongs" },
  { answer: "partial", caption: "Somewhat confident" },
  { answer: "no", caption: "Not at all" },
];

export function renderProbePanel(store: SessionStore): HTMLElement {
  const view = store.view;
  if (!view) throw new Error("no view");
  const probe = view.pending_probe;
  const buttons = CHOICES.map(({ answer, caption }) =>
    el("button", {
      type: "button",
      "data-test": `answer-${answer}`,
      disabled: !store.can("answer_probe"),
      onclick: () => {
        void store.dispatch("answer_probe", { answer });
      },
    }, [caption]),
  );
  return el("section", { class: "panel", "data-test": "probe-panel" }, [
    el("h2", {}, [`Does this value read as ${view.label ?? "?"}?`]),
    el("p", {}, [
      "Value: ",
      el("strong", { "data-test": "probe-value" }, [
        probe === null ? "–" : displayFraction(probe),
      ]),
    ]),
    el("div", { class: "choices" }, buttons),
  ]);
}
