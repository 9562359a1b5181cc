import { describe, expect, it } from "vitest";

import { renderChart } from "../src/render/chart.js";
import type { MFPreview } from "../src/types.js";
import { fixtureView } from "./helpers.js";

// the chart's fixed geometry, frozen here independently
const WIDTH = 420;
const HEIGHT = 200;
const PAD = 24;

function expectedPoint(x: number, m: number): string {
  return `${PAD + x * (WIDTH - 2 * PAD)},${HEIGHT - PAD - m * (HEIGHT - 2 * PAD)}`;
}

function parsePoints(attr: string): Array<[number, number]> {
  return attr
    .split(" ")
    .filter((p) => p.length > 0)
    .map((pair) => {
      const [x, y] = pair.split(",");
      return [Number(x), Number(y)];
    });
}

describe("membership preview chart", () => {
  const previews = fixtureView("assembled/high/None").previews;

  it("draws one upper and one lower polyline per label", () => {
    const chart = renderChart(previews);
    for (const label of ["low", "medium", "high"]) {
      expect(chart.querySelector(`[data-test="preview-${label}-upper"]`)).not.toBeNull();
      expect(chart.querySelector(`[data-test="preview-${label}-lower"]`)).not.toBeNull();
    }
    expect(chart.querySelectorAll("polyline")).toHaveLength(6);
  });

  it("uses straight segments only: no paths, arcs or curves", () => {
    const chart = renderChart(previews);
    expect(chart.querySelector("path")).toBeNull();
    expect(chart.querySelector("curve")).toBeNull();
    const svg = chart.querySelector('[data-test="mf-chart"]');
    expect(svg?.tagName.toLowerCase()).toBe("svg");
  });

  it("plots every server knot verbatim, in order", () => {
    const chart = renderChart(previews);
    const medium = previews["medium"] as MFPreview;
    const poly = chart.querySelector('[data-test="preview-medium-upper"]');
    const points = parsePoints(poly?.getAttribute("points") ?? "");
    expect(points).toHaveLength(medium.upper.length);
    medium.upper.forEach(([x, m], i) => {
      const [px, py] = expectedPoint(x, m).split(",").map(Number);
      expect(points[i]?.[0]).toBeCloseTo(px!, 9);
      expect(points[i]?.[1]).toBeCloseTo(py!, 9);
    });
    // x never decreases along the trace
    for (let i = 1; i < points.length; i += 1) {
      expect(points[i]![0]).toBeGreaterThanOrEqual(points[i - 1]![0]);
    }
  });

  it("dashes the lower bound and keeps the upper solid", () => {
    const chart = renderChart(previews);
    const upper = chart.querySelector('[data-test="preview-medium-upper"]');
    const lower = chart.querySelector('[data-test="preview-medium-lower"]');
    expect(upper?.getAttribute("stroke-dasharray")).toBeNull();
    expect(lower?.getAttribute("stroke-dasharray")).toBe("5 3");
  });

  it("keeps hesitation visible: lower and upper differ where the band is wide", () => {
    const chart = renderChart(previews);
    const upper = chart
      .querySelector('[data-test="preview-medium-upper"]')
      ?.getAttribute("points");
    const lower = chart
      .querySelector('[data-test="preview-medium-lower"]')
      ?.getAttribute("points");
    expect(upper).not.toBe(lower);
    // the un-hesitant label draws coincident bounds
    const upperLow = chart
      .querySelector('[data-test="preview-low-upper"]')
      ?.getAttribute("points");
    const lowerLow = chart
      .querySelector('[data-test="preview-low-lower"]')
      ?.getAttribute("points");
    expect(upperLow).toBe(lowerLow);
  });
});
