import { readFileSync } from "fs";
import { join } from "path";
import { describe, expect, it } from "vitest";

import {
  parseCsv,
  parseDecayCsv,
  parseMeta,
  parseRegionCsv,
  parseSurveyCsv,
  SchemaError,
} from "../src/csv";

const fixture = (name: string) =>
  readFileSync(join(__dirname, "fixtures", name), "utf-8");

describe("parseCsv", () => {
  it("handles quoted fields with commas", () => {
    const rows = parseCsv('a,b\n1,"2,3"\n');
    expect(rows).toEqual([
      ["a", "b"],
      ["1", "2,3"],
    ]);
  });

  it("handles escaped quotes and missing trailing newline", () => {
    expect(parseCsv('x\n"he said ""hi"""')).toEqual([["x"], ['he said "hi"']]);
  });

  it("parses metadata lines", () => {
    const meta = parseMeta("N=5,foo=bar");
    expect(meta.get("N")).toBe("5");
    expect(meta.get("foo")).toBe("bar");
  });
});

describe("region schema", () => {
  it("parses the fixture produced by the scan tool", () => {
    const data = parseRegionCsv(fixture("region_N5.csv"));
    expect(data.n).toBe(5);
    expect(data.points.length).toBe(320); // 80 mixing exchanges x 4 eigenvalues
    expect(data.points.every((p) => p.inRegion)).toBe(true);
  });

  it("names a missing column", () => {
    const bad = "N=5\nN,sigma,re,im,in_region,active_constraint\n";
    expect(() => parseRegionCsv(bad)).toThrowError(/missing column 'modulus'/);
  });

  it("rejects an even cell count header", () => {
    const bad = "N=4\nN,sigma,re,im,modulus,in_region,active_constraint\n";
    expect(() => parseRegionCsv(bad)).toThrowError(SchemaError);
  });

  it("names a non-numeric cell", () => {
    const bad =
      "N=5\nN,sigma,re,im,modulus,in_region,active_constraint\n5,x,oops,0,1,true,slant\n";
    expect(() => parseRegionCsv(bad)).toThrowError(/column 're'/);
  });
});

describe("survey schema", () => {
  it("parses the fixture and separates formula rows", () => {
    const rows = parseSurveyCsv(fixture("survey.csv"));
    const formula = rows.filter((r) => r.strategy === "closed_form");
    const searched = rows.filter((r) => r.strategy !== "closed_form");
    expect(formula.length).toBe(searched.length);
    expect(searched.every((r) => r.value >= 0 && r.value <= 1)).toBe(true);
  });

  it("names a missing column", () => {
    expect(() => parseSurveyCsv("m,N,signature,mode,strategy\n")).toThrowError(
      /missing column 'value'/,
    );
  });
});

describe("decay schema", () => {
  it("parses the fixture with its fitted rate", () => {
    const data = parseDecayCsv(fixture("decay.csv"));
    expect(data.rows.length).toBe(17);
    expect(data.fittedRate).toBeCloseTo(0.809017, 5);
    expect(data.description).toContain("N=5");
  });

  it("requires the map description", () => {
    expect(() => parseDecayCsv("x=1\nn,C_exact,C_mc,mc_se\n")).toThrowError(/'g'/);
  });
});
