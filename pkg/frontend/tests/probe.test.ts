import { describe, expect, it } from "vitest";

import { renderProbePanel } from "../src/render/probe.js";
import { fixtureView, storeWith } from "./helpers.js";

function button(root: HTMLElement, testId: string): HTMLButtonElement {
  const node = root.querySelector(`[data-test="${testId}"]`);
  if (!node) throw new Error(`missing ${testId}`);
  return node as HTMLButtonElement;
}

describe("probe panel", () => {
  it("shows the probed value as an exact fraction with a decimal hint", () => {
    const { store } = storeWith(fixtureView("core_support/medium/None"));
    const panel = renderProbePanel(store);
    const value = panel.querySelector('[data-test="probe-value"]');
    expect(value?.textContent).toBe("29/100 (≈ 0.29)");
  });

  it("offers the three confidence choices mapped to protocol answers", () => {
    const { store } = storeWith(fixtureView("core_support/low/None"));
    const panel = renderProbePanel(store);
    expect(button(panel, "answer-yes_full").textContent).toMatch(/Fully confident/);
    expect(button(panel, "answer-partial").textContent).toMatch(/Somewhat/);
    expect(button(panel, "answer-no").textContent).toMatch(/Not at all/);
  });

  it.each([
    ["answer-yes_full", "yes_full"],
    ["answer-partial", "partial"],
    ["answer-no", "no"],
  ])("clicking %s posts one answer_probe with answer=%s", async (testId, answer) => {
    const { store, stub } = storeWith(fixtureView("core_support/medium/None"));
    const panel = renderProbePanel(store);
    button(panel, testId).click();
    await store.whenIdle();
    expect(stub.calls).toHaveLength(1);
    expect(stub.calls[0]?.event.type).toBe("answer_probe");
    expect(stub.calls[0]?.event.actor).toBe("dm");
    expect(stub.calls[0]?.event.payload).toEqual({ answer });
  });

  it("disables answers when the phase does not expect one", () => {
    const view = fixtureView("core_support/high/None");
    view.expected_events = [];
    const { store } = storeWith(view);
    const panel = renderProbePanel(store);
    expect(button(panel, "answer-yes_full").disabled).toBe(true);
    expect(button(panel, "answer-partial").disabled).toBe(true);
    expect(button(panel, "answer-no").disabled).toBe(true);
  });
});
