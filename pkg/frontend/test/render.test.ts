import { readFileSync } from "fs";
import { join } from "path";
import { describe, expect, it } from "vitest";

import { parseDecayCsv, parseRegionCsv, parseSurveyCsv } from "../src/csv";
import { renderDecay } from "../src/decay";
import { renderRates } from "../src/rates";
import { pointInRegion, regionBoundary, regionGeometry, renderRegion } from "../src/region";

const fixture = (name: string) =>
  readFileSync(join(__dirname, "fixtures", name), "utf-8");

describe("region figure", () => {
  const data = parseRegionCsv(fixture("region_N5.csv"));

  it("every scatter point sits inside the drawn boundary", () => {
    for (const p of data.points) {
      expect(pointInRegion(data.n, p.re, p.im)).toBe(true);
    }
  });

  it("the drawn boundary obeys all four constraints", () => {
    const { reMin, reMax, slope } = regionGeometry(5);
    expect(reMax).toBeCloseTo(Math.cos(Math.PI / 5), 12);
    expect(reMin).toBeCloseTo(-(Math.cos(Math.PI / 10) ** 2), 12);
    const pts = regionBoundary(5);
    for (const [x, y] of pts) {
      expect(x).toBeGreaterThanOrEqual(reMin - 1e-12);
      expect(x).toBeLessThanOrEqual(reMax + 1e-12);
      expect(x + Math.abs(y) * slope).toBeLessThanOrEqual(1 + 1e-12);
      expect(x * x + y * y).toBeLessThanOrEqual(1 + 1e-12);
    }
    // both strip edges appear as boundary pieces
    expect(Math.min(...pts.map(([x]) => x))).toBeCloseTo(reMin, 12);
    expect(Math.max(...pts.map(([x]) => x))).toBeCloseTo(reMax, 12);
  });

  it("renders deterministic SVG with all the boundary pieces", () => {
    const one = renderRegion(data);
    const two = renderRegion(data);
    expect(one).toBe(two);
    expect(one).toContain("<svg");
    expect(one).toContain("<polygon");
    expect((one.match(/<circle/g) ?? []).length).toBeGreaterThanOrEqual(data.points.length);
  });
});

describe("rates figure", () => {
  it("draws formula lines and search markers", () => {
    const rows = parseSurveyCsv(fixture("survey.csv"));
    const svg = renderRates(rows);
    expect(svg).toContain("<polyline");
    expect(svg).toContain("<circle");
    expect(svg).toBe(renderRates(rows));
  });

  it("renders empty axes for an empty survey", () => {
    const svg = renderRates([]);
    expect(svg).toContain("empty survey");
  });
});

describe("decay figure", () => {
  it("draws the exact line, Monte Carlo crosses, and the fitted rate", () => {
    const data = parseDecayCsv(fixture("decay.csv"));
    const svg = renderDecay(data);
    expect(svg).toContain("fitted rate 0.809017");
    expect(svg).toContain("<polyline");
    expect(svg).toBe(renderDecay(data));
  });

  it("handles all-noise input", () => {
    const svg = renderDecay({ description: "flat", fittedRate: 0, rows: [] });
    expect(svg).toContain("all correlations at noise level");
  });
});
