import { describe, expect, it } from "vitest";

import { parseFigureSpec } from "../src/figspec";
import { canonicalSvg, renderFigure } from "../src/render";
import { parseArtifact, SchemaError } from "../src/table";

const CELL_MARK = 'ecmeta_ssr_type="chart"';

function countCells(svg: string): number {
  return svg.split(CELL_MARK).length - 1;
}

const LINES_SPEC = parseFigureSpec(`
[figure]
kind = lines
[data]
inputs = a.csv, b.csv
labels = one, two
[guides]
y = 1
`);

const CURVE_A = parseArtifact("g0,n_eff\n1,300\n10,40\n100,5\n1000,0.4\n", "a.csv");
const CURVE_B = parseArtifact("g0,n_eff\n1,500\n10,80\n100,9\n1000,1.1\n", "b.csv");

const CONTOUR_SPEC = parseFigureSpec(`
[figure]
kind = contour
[axes]
x = x
y = y
z = log10_n_eff
[data]
inputs = sweep.csv
[mask]
column = above_cap
`);

// 2 x 2 grid, first axis slowest; one flagged cell, one unstable cell
const SWEEP = parseArtifact(
  [
    "x,y,log10_n_eff,stable,above_cap",
    "1,5,0.5,true,false",
    "1,6,2.3,true,true",
    "2,5,,false,false",
    "2,6,-0.7,true,false",
    "",
  ].join("\n"),
  "sweep.csv",
);

describe("canonicalSvg", () => {
  it("renames generated tokens in order of first appearance", () => {
    const raw = '<p class="zr7-cls-12"/><g id="zr7-c3"/><u fill="url(#zr7-g0)"/>'
      + '<s class="zr7-cls-12"/>';
    expect(canonicalSvg(raw)).toBe(
      '<p class="ec-0"/><g id="ec-1"/><u fill="url(#ec-2)"/><s class="ec-0"/>',
    );
  });
});

describe("renderFigure, lines", () => {
  it("is pure: repeated renders are byte-identical", () => {
    const first = renderFigure(LINES_SPEC, [CURVE_A, CURVE_B]);
    const second = renderFigure(LINES_SPEC, [CURVE_A, CURVE_B]);
    expect(first.startsWith("<svg")).toBe(true);
    expect(second).toBe(first);
  });

  it("depends on the data", () => {
    const first = renderFigure(LINES_SPEC, [CURVE_A, CURVE_B]);
    const swapped = renderFigure(LINES_SPEC, [CURVE_B, CURVE_A]);
    expect(swapped).not.toBe(first);
  });

  it("draws the legend and the guide", () => {
    const svg = renderFigure(LINES_SPEC, [CURVE_A, CURVE_B]);
    expect(svg).toContain(">one<");
    expect(svg).toContain(">two<");
    expect(svg).toContain("stroke-dasharray");
  });

  it("checks the table count against the spec", () => {
    expect(() => renderFigure(LINES_SPEC, [CURVE_A])).toThrow(SchemaError);
  });

  it("reports a missing column by name", () => {
    const bad = parseArtifact("g0,var_q\n1,2\n", "a.csv");
    expect(() => renderFigure(LINES_SPEC, [bad, bad])).toThrow(/"n_eff"/);
  });
});

describe("renderFigure, contour", () => {
  it("blanks flagged and unstable cells", () => {
    const svg = renderFigure(CONTOUR_SPEC, [SWEEP]);
    // 4 grid cells, one above the cap and one with no value
    expect(countCells(svg)).toBe(2);
  });

  it("is pure under interleaved rendering", () => {
    const first = renderFigure(CONTOUR_SPEC, [SWEEP]);
    renderFigure(LINES_SPEC, [CURVE_A, CURVE_B]); // bump echarts' counters
    expect(renderFigure(CONTOUR_SPEC, [SWEEP])).toBe(first);
  });

  it("keeps every cell without a mask column", () => {
    const spec = { ...CONTOUR_SPEC, maskColumn: null };
    expect(countCells(renderFigure(spec, [SWEEP]))).toBe(3); // empty cell stays blank
  });

  it("rejects duplicate grid cells", () => {
    const twice = parseArtifact(
      "x,y,log10_n_eff,stable,above_cap\n1,5,0.5,true,false\n1,5,0.6,true,false\n",
      "dup.csv",
    );
    expect(() => renderFigure(CONTOUR_SPEC, [twice])).toThrow(/duplicate grid cell/);
  });

  it("rejects a fully masked table", () => {
    const gone = parseArtifact(
      "x,y,log10_n_eff,stable,above_cap\n1,5,3.5,true,true\n",
      "gone.csv",
    );
    expect(() => renderFigure(CONTOUR_SPEC, [gone])).toThrow(/masked or empty/);
  });
});
