/**
 * Membership previews drawn exactly from server knots: straight segments
 * between the given points, no smoothing, so the picture is the model.
 */

import { el, svgEl } from "../dom.js";
import type { KnotList, MFPreview } from "../types.js";

const WIDTH = 420;
const HEIGHT = 200;
const PAD = 24;

const PALETTE = [
  "#2563eb",
  "#dc2626",
  "#059669",
  "#9333ea",
  "#d97706",
  "#0891b2",
];

function toPoints(knots: KnotList): string {
  return knots
    .map(([x, m]) => {
      const px = PAD + x * (WIDTH - 2 * PAD);
      const py = HEIGHT - PAD - m * (HEIGHT - 2 * PAD);
      return `${px},${py}`;
    })
    .join(" ");
}

export function renderChart(
  previews: Record<string, MFPreview>,
  title = "Membership preview",
): HTMLElement {
  const labels = Object.keys(previews).sort();
  const axes = [
    svgEl("line", {
      x1: PAD, y1: HEIGHT - PAD, x2: WIDTH - PAD, y2: HEIGHT - PAD,
      stroke: "#555", "stroke-width": 1,
    }),
    svgEl("line", {
      x1: PAD, y1: PAD, x2: PAD, y2: HEIGHT - PAD,
      stroke: "#555", "stroke-width": 1,
    }),
  ];
  const curves = labels.flatMap((label, i) => {
    const color = PALETTE[i % PALETTE.length]!;
    const { lower, upper } = previews[label]!;
    return [
      svgEl("polyline", {
        points: toPoints(upper),
        fill: "none",
        stroke: color,
        "stroke-width": 2,
        "data-test": `preview-${label}-upper`,
      }),
      svgEl("polyline", {
        points: toPoints(lower),
        fill: "none",
        stroke: color,
        "stroke-width": 2,
        "stroke-dasharray": "5 3",
        "data-test": `preview-${label}-lower`,
      }),
    ];
  });
  const svg = svgEl("svg", {
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    width: WIDTH,
    height: HEIGHT,
    role: "img",
    "data-test": "mf-chart",
  }, [...axes, ...curves]);

  const legend = el("div", { class: "legend" }, labels.map((label, i) =>
    el("span", { class: "legend-item" }, [
      el("span", {
        class: "swatch",
        style: `background:${PALETTE[i % PALETTE.length]}`,
      }),
      label,
    ]),
  ));
  return el("section", { class: "panel chart", "data-test": "preview-panel" }, [
    el("h2", {}, [title]),
    svg as unknown as HTMLElement,
    legend,
    el("p", { class: "hint" }, [
      "Solid: upper bound. Dashed: lower bound. Identical curves mean no hesitation.",
    ]),
  ]);
}
