/**
 * Application shell: one session per page, rendered wholly from the last
 * server response. Panels appear per phase and their action buttons are
 * enabled only for events the server currently accepts, so a click can
 * never draw a protocol conflict.
 */

import type { ApiClient } from "./api.js";
import type { Clock } from "./clock.js";
import { realClock } from "./clock.js";
import { clear, el } from "./dom.js";
import { displayFraction } from "./fraction.js";
import { renderLabelBoard, renderSideBoard } from "./render/board.js";
import { renderChart } from "./render/chart.js";
import { renderMcdmPanel } from "./render/mcdm.js";
import { renderProbePanel } from "./render/probe.js";
import { renderRatioPanel, renderSideDone } from "./render/ratio.js";
import { SessionStore } from "./store.js";
import type { ScaleDict, SessionConfigInput, SessionView } from "./types.js";

const PHASES: Array<{ id: string; caption: string }> = [
  { id: "label_values", caption: "space labels" },
  { id: "core_support", caption: "probe boundaries" },
  { id: "side_cards", caption: "place side cards" },
  { id: "ratio_review", caption: "review ratios" },
  { id: "adjusting", caption: "adjusting" },
  { id: "side_done", caption: "side done" },
  { id: "assembled", caption: "assembled" },
];

export class App {
  readonly store: SessionStore;
  config: SessionConfigInput | null = null;
  lastExport: Uint8Array | null = null;
  mcdmScale: ScaleDict | null = null;

  constructor(
    readonly root: HTMLElement,
    readonly api: ApiClient,
    clock: Clock = realClock,
  ) {
    this.store = new SessionStore(api, clock);
    this.store.subscribe(() => this.render());
    this.render();
  }

  startSession(config: SessionConfigInput): Promise<void> {
    this.config = config;
    return this.store.start(config);
  }

  async exportNow(): Promise<Uint8Array> {
    const view = this.store.view;
    if (!view) throw new Error("no active session");
    this.lastExport = await this.api.exportDocument(view.id);
    this.render();
    return this.lastExport;
  }

  async openMcdm(): Promise<void> {
    const view = this.store.view;
    if (!view) throw new Error("no active session");
    const doc = await this.api.exportParsed(view.id);
    const values = doc.snapshot.value_scale;
    if (!values) throw new Error("scale not assembled yet");
    this.mcdmScale = {
      name: this.config?.scale_name ?? "scale",
      values,
      memberships: doc.snapshot.memberships,
    };
    this.render();
  }

  private bootForm(): HTMLElement {
    const labels = el("input", {
      type: "text",
      size: 40,
      value: this.config?.labels.join(",") ?? "",
      "data-test": "session-labels",
      placeholder: "labels, worst to best",
    });
    const scaleName = el("input", {
      type: "text",
      value: this.config?.scale_name ?? "scale",
      "data-test": "session-scale-name",
    });
    const hMax = el("input", {
      type: "number",
      min: 1,
      value: this.config?.h_max ?? 50,
      "data-test": "session-h-max",
    });
    const resolution = el("input", {
      type: "text",
      value: String(this.config?.resolution ?? ""),
      "data-test": "session-resolution",
      placeholder: "e.g. 1/100 (optional)",
    });
    const orientation = el("select", { "data-test": "session-orientation" }, [
      el("option", { value: "ascending" }, ["ascending ratios"]),
      el("option", { value: "literal" }, ["literal ratios"]),
    ]);
    const create = el("button", {
      type: "button",
      "data-test": "create-session",
      disabled: this.store.busy,
      onclick: () => {
        const names = labels.value
          .split(",")
          .map((s) => s.trim())
          .filter((s) => s.length > 0);
        void this.startSession({
          labels: names,
          scale_name: scaleName.value || "scale",
          h_max: Number(hMax.value) || 50,
          resolution: resolution.value.trim() || null,
          orientation: orientation.value as "ascending" | "literal",
        });
      },
    }, ["Start session"]);
    return el("section", { class: "panel", "data-test": "boot-form" }, [
      el("h2", {}, ["New elicitation session"]),
      el("label", {}, ["Labels ", labels]),
      el("label", {}, ["Scale name ", scaleName]),
      el("label", {}, ["Card budget ", hMax]),
      el("label", {}, ["Resolution ", resolution]),
      el("label", {}, ["Orientation ", orientation]),
      create,
    ]);
  }

  private header(view: SessionView): HTMLElement {
    const steps = PHASES.map(({ id, caption }) =>
      el("span", {
        class: id === view.phase ? "step current" : "step",
      }, [caption]),
    );
    return el("header", {}, [
      el("h1", {}, [this.config?.scale_name ?? "session"]),
      el("p", {}, [
        "Phase: ",
        el("strong", { "data-test": "phase" }, [view.phase]),
        this.store.busy ? el("span", { class: "busy", "data-test": "busy" }, [" …waiting for server"]) : "",
      ]),
      el("nav", { class: "steps" }, steps),
    ]);
  }

  private scaleSummary(view: SessionView): HTMLElement | null {
    if (!view.value_scale) return null;
    const { labels, values, card_value } = view.value_scale;
    const items = labels.map((label, i) =>
      el("li", {}, [`${label}: ${displayFraction(values[i] ?? "0")}`]),
    );
    const shapes = view.shapes.map((shape, i) =>
      el("li", {}, [
        `${labels[i] ?? `#${i}`}: support [${shape.support.join(", ")}], core [${shape.core.join(", ")}]`,
      ]),
    );
    return el("section", { class: "panel", "data-test": "scale-summary" }, [
      el("h2", {}, ["Scale so far"]),
      el("ul", {}, items),
      el("p", {}, [`One card is worth ${displayFraction(card_value)}.`]),
      shapes.length > 0
        ? el("div", {}, [el("h3", {}, ["Elicited boundaries"]), el("ul", {}, shapes)])
        : "",
    ]);
  }

  private assembledPanel(view: SessionView): HTMLElement {
    const exportButton = el("button", {
      type: "button",
      "data-test": "export-document",
      onclick: () => {
        void this.exportNow();
      },
    }, ["Export session document"]);
    const mcdmButton = el("button", {
      type: "button",
      "data-test": "open-mcdm",
      onclick: () => {
        void this.openMcdm();
      },
    }, ["Use the scale to rank alternatives"]);
    return el("section", { class: "panel", "data-test": "assembled-panel" }, [
      el("h2", {}, ["Scale assembled"]),
      el("p", {}, [
        `Every label of “${this.config?.scale_name ?? "scale"}” is bound; the audit log holds ${view.audit_length} events.`,
      ]),
      el("div", { class: "actions" }, [exportButton, mcdmButton]),
      this.lastExport
        ? el("p", { "data-test": "export-size" }, [
            `Exported ${this.lastExport.length} bytes. `,
            this.downloadLink(this.lastExport),
          ])
        : "",
    ]);
  }

  private downloadLink(bytes: Uint8Array): HTMLElement | string {
    if (typeof URL.createObjectURL !== "function") return "";
    const blob = new Blob([bytes.slice().buffer], { type: "application/json" });
    return el("a", {
      href: URL.createObjectURL(blob),
      download: `${this.config?.scale_name ?? "session"}.docit2.json`,
      "data-test": "download-link",
    }, ["Download file"]);
  }

  private phasePanel(view: SessionView): HTMLElement {
    switch (view.phase) {
      case "label_values":
        return renderLabelBoard(this.config?.labels ?? [], this.store);
      case "core_support":
        return renderProbePanel(this.store);
      case "side_cards":
        return renderSideBoard(this.store);
      case "ratio_review":
      case "adjusting":
        return renderRatioPanel(this.store);
      case "side_done":
        return renderSideDone(this.store);
      case "assembled":
        return this.assembledPanel(view);
    }
  }

  render(): void {
    clear(this.root);
    const view = this.store.view;
    if (this.store.lastError) {
      this.root.append(
        el("p", { class: "error", "data-test": "error-banner" }, [
          this.store.lastError,
        ]),
      );
    }
    if (!view) {
      this.root.append(this.bootForm());
      return;
    }
    this.root.append(this.header(view));
    const main = el("main", { "aria-busy": String(this.store.busy) }, [
      this.phasePanel(view),
    ]);
    const summary = this.scaleSummary(view);
    if (summary) main.append(summary);
    if (Object.keys(view.previews).length > 0) {
      main.append(renderChart(view.previews));
    }
    if (this.mcdmScale) {
      main.append(renderMcdmPanel(this.mcdmScale, this.api));
    }
    this.root.append(main);
  }
}
