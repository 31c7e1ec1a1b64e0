import { mkdtempSync, writeFileSync } from "fs";
import { tmpdir } from "os";
import { join, resolve } from "path";

import { describe, expect, it } from "vitest";

import { loadFigureSpec, parseFigureSpec, SpecError } from "../src/figspec";

const LINES = `
# three cooling curves
[figure]
kind = lines
title = cooling
width = 640
height = 480

[axes]
x = g0
y = n_eff
x_label = gain
y_label = occupation
x_log = true
y_log = false

[data]
inputs = a.csv, b.csv, c.csv
labels = one, two, three

[guides]
y = 1, 10
`;

const CONTOUR = `
[figure]
kind = contour

[axes]
z = log10_n_eff

[data]
inputs = sweep.csv

[mask]
column = above_cap
`;

describe("parseFigureSpec", () => {
  it("parses a full lines spec", () => {
    const spec = parseFigureSpec(LINES);
    expect(spec.kind).toBe("lines");
    expect(spec.title).toBe("cooling");
    expect([spec.width, spec.height]).toEqual([640, 480]);
    expect(spec.inputs).toEqual(["a.csv", "b.csv", "c.csv"]);
    expect(spec.labels).toEqual(["one", "two", "three"]);
    expect(spec.guides).toEqual([1, 10]);
    expect(spec.xLog).toBe(true);
    expect(spec.yLog).toBe(false);
    expect(spec.maskColumn).toBeNull();
  });

  it("fills defaults for a minimal contour spec", () => {
    const spec = parseFigureSpec(CONTOUR);
    expect(spec.kind).toBe("contour");
    expect([spec.width, spec.height]).toEqual([880, 560]);
    expect([spec.x, spec.y, spec.z]).toEqual(["g0", "n_eff", "log10_n_eff"]);
    expect(spec.maskColumn).toBe("above_cap");
    expect(spec.xLog).toBe(false); // grids carry their own spacing
  });

  it.each([
    ["[figure]\nkind = pie\n[data]\ninputs = a.csv\n", /kind must be/],
    ["[plot]\nkind = lines\n", /unknown section/],
    ["[figure]\nkind = lines\ncolor = red\n", /unknown key "color"/],
    ["[figure]\nkind = lines\nkind = lines\n", /duplicate key/],
    ["[figure]\nkind = lines\n", /inputs is required/],
    ["[figure]\nkind = lines\nwidth = -3\n[data]\ninputs = a.csv\n",
      /positive integers/],
    ["[figure]\nkind = lines\n[data]\ninputs = a.csv, b.csv\nlabels = one\n",
      /1 labels for 2 inputs/],
    ["[figure]\nkind = lines\n[data]\ninputs = a.csv\n[axes]\nz = q\n",
      /z applies to contour/],
    ["[figure]\nkind = lines\n[data]\ninputs = a.csv\n[mask]\ncolumn = c\n",
      /mask\] applies to contour/],
    ["[figure]\nkind = contour\n[data]\ninputs = a.csv\n",
      /z is required/],
    ["[figure]\nkind = contour\n[axes]\nz = q\n[data]\ninputs = a.csv, b.csv\n",
      /exactly one input/],
    ["[figure]\nkind = contour\n[axes]\nz = q\n[data]\ninputs = a.csv\n[guides]\ny = 1\n",
      /lines figures only/],
    ["[figure]\nkind = lines\n[data]\ninputs = a.csv\n[guides]\ny = ten\n",
      /not a number/],
    ["kind = lines\n", /expected "key = value"/],
  ])("rejects %j", (text, message) => {
    expect(() => parseFigureSpec(text)).toThrow(SpecError);
    expect(() => parseFigureSpec(text)).toThrow(message);
  });

  it("strips comments, including inline ones", () => {
    const spec = parseFigureSpec(
      "[figure]\nkind = lines ; trailing\n[data]\ninputs = a.csv # note\n",
    );
    expect(spec.kind).toBe("lines");
    expect(spec.inputs).toEqual(["a.csv"]);
  });
});

describe("loadFigureSpec", () => {
  it("resolves input paths relative to the spec file", () => {
    const dir = mkdtempSync(join(tmpdir(), "figspec-"));
    const path = join(dir, "fig.ini");
    writeFileSync(path, CONTOUR.replace("sweep.csv", "../data/sweep.csv"));
    const spec = loadFigureSpec(path);
    expect(spec.inputs).toEqual([resolve(dir, "..", "data", "sweep.csv")]);
  });
});
