import { existsSync, mkdtempSync, readFileSync, writeFileSync } from "fs";
import { tmpdir } from "os";
import { join } from "path";
import { describe, expect, it } from "vitest";

import { main } from "../src/cli";

const fixturePath = (name: string) => join(__dirname, "fixtures", name);

describe("render command", () => {
  it("renders each kind from its fixture", () => {
    const dir = mkdtempSync(join(tmpdir(), "figs-"));
    for (const [kind, file] of [
      ["region", "region_N5.csv"],
      ["rates", "survey.csv"],
      ["decay", "decay.csv"],
    ] as const) {
      const out = join(dir, `${kind}.svg`);
      expect(main(["render", kind, fixturePath(file), out])).toBe(0);
      expect(existsSync(out)).toBe(true);
      expect(readFileSync(out, "utf-8")).toContain("</svg>");
    }
  });

  it("empty data rows still exit 0", () => {
    const dir = mkdtempSync(join(tmpdir(), "figs-"));
    const empty = join(dir, "empty.csv");
    writeFileSync(empty, "m,N,signature,mode,strategy,value,argmax,evaluated,wall_ms\n");
    expect(main(["render", "rates", empty, join(dir, "out.svg")])).toBe(0);
  });

  it("schema mismatch exits nonzero and names the column", () => {
    const dir = mkdtempSync(join(tmpdir(), "figs-"));
    const bad = join(dir, "bad.csv");
    writeFileSync(bad, "N=5\nN,sigma,re,im,in_region,active_constraint\n");
    expect(main(["render", "region", bad, join(dir, "out.svg")])).toBe(1);
  });

  it("usage errors exit nonzero", () => {
    expect(main(["render", "nope", "a", "b"])).toBe(1);
    expect(main(["frobnicate"])).toBe(1);
  });
});
