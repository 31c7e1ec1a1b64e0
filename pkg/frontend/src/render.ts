// Figure assembly on top of echarts' server-side SVG renderer.
//
// Rendering must be pure: the same spec and tables give a byte-identical
// SVG. echarts itself is deterministic except for process-global id
// counters (zr0-cls-3, zr0-c0, zr0-g0, ...), so every generated token is
// renamed to its order of first appearance before the string leaves here.

import * as echarts from "echarts";

import { FigureSpec } from "./figspec";
import { booleans, DataTable, numbers, optionalNumbers, SchemaError } from "./table";

const PALETTE = ["#4063d8", "#389826", "#cb3c33", "#9558b2", "#b8860b"];

export function canonicalSvg(svg: string): string {
  const seen = new Map<string, string>();
  return svg.replace(/zr\d+-[a-z-]*\d+/g, (token) => {
    let mapped = seen.get(token);
    if (mapped === undefined) {
      mapped = `ec-${seen.size}`;
      seen.set(token, mapped);
    }
    return mapped;
  });
}

function tickLabel(value: number): string {
  if (value === 0) return "0";
  const exponent = Math.floor(Math.log10(Math.abs(value)));
  if (exponent >= -2 && exponent <= 3) {
    return String(Number(value.toPrecision(3)));
  }
  const mantissa = Number((value / 10 ** exponent).toPrecision(3));
  return `${mantissa}e${exponent}`;
}

function axisTitle(label: string | null, fallback: string): string {
  return label ?? fallback;
}

function baseOption(spec: FigureSpec): echarts.EChartsCoreOption {
  return {
    animation: false,
    color: PALETTE,
    title: spec.title === null
      ? undefined
      : { text: spec.title, left: "center", top: 6 },
    textStyle: { fontFamily: "sans-serif" },
  };
}

function linesOption(spec: FigureSpec, tables: DataTable[]): echarts.EChartsCoreOption {
  const series = tables.map((table, i) => {
    const xs = numbers(table, spec.x);
    const ys = numbers(table, spec.y);
    const data: Array<[number, number]> = [];
    for (let k = 0; k < xs.length; k++) {
      // a log axis cannot place nonpositive values
      if (spec.xLog && xs[k] <= 0) continue;
      if (spec.yLog && ys[k] <= 0) continue;
      data.push([xs[k], ys[k]]);
    }
    const name = spec.labels.length > 0 ? spec.labels[i] : table.source;
    const marks = i === 0 && spec.guides.length > 0
      ? {
          markLine: {
            symbol: "none",
            silent: true,
            lineStyle: { type: "dashed", color: "#888888", width: 1 },
            label: { show: true, position: "end", formatter: "{c}" },
            data: spec.guides.map((value) => ({ yAxis: value })),
          },
        }
      : {};
    return { name, type: "line", showSymbol: false, data, ...marks };
  });
  return {
    ...baseOption(spec),
    legend: { show: tables.length > 1, top: spec.title === null ? 10 : 34 },
    grid: { left: 80, right: 40, top: 60, bottom: 60 },
    xAxis: {
      type: spec.xLog ? "log" : "value",
      name: axisTitle(spec.xLabel, spec.x),
      nameLocation: "middle",
      nameGap: 30,
    },
    yAxis: {
      type: spec.yLog ? "log" : "value",
      name: axisTitle(spec.yLabel, spec.y),
      nameLocation: "middle",
      nameGap: 55,
    },
    series,
  };
}

// Axis values repeat in grid order (first axis slowest); first appearance
// of each distinct value recovers the ascending axis grid.
function uniqueInOrder(values: number[]): number[] {
  return [...new Set(values)];
}

function contourOption(spec: FigureSpec, table: DataTable): echarts.EChartsCoreOption {
  const xs = numbers(table, spec.x);
  const ys = numbers(table, spec.y);
  const zs = optionalNumbers(table, spec.z as string);
  const masked = spec.maskColumn === null
    ? new Array<boolean>(zs.length).fill(false)
    : booleans(table, spec.maskColumn);

  const xGrid = uniqueInOrder(xs);
  const yGrid = uniqueInOrder(ys);

  const cells: Array<[number, number, number]> = [];
  const taken = new Set<number>();
  for (let k = 0; k < zs.length; k++) {
    const z = zs[k];
    if (z === null || masked[k]) continue; // blank cell
    const xi = xGrid.indexOf(xs[k]);
    const yi = yGrid.indexOf(ys[k]);
    const slot = xi * yGrid.length + yi;
    if (taken.has(slot)) {
      throw new SchemaError(
        `${table.source}: duplicate grid cell at row ${k + 1}`,
      );
    }
    taken.add(slot);
    cells.push([xi, yi, z]);
  }
  if (cells.length === 0) {
    throw new SchemaError(`${table.source}: every cell is masked or empty`);
  }
  const values = cells.map((cell) => cell[2]);
  const lo = Math.min(...values);
  const hi = Math.max(...values);

  return {
    ...baseOption(spec),
    grid: { left: 90, right: 110, top: 50, bottom: 70 },
    xAxis: {
      type: "category",
      data: xGrid.map(tickLabel),
      name: axisTitle(spec.xLabel, spec.x),
      nameLocation: "middle",
      nameGap: 34,
    },
    yAxis: {
      type: "category",
      data: yGrid.map(tickLabel),
      name: axisTitle(spec.yLabel, spec.y),
      nameLocation: "middle",
      nameGap: 64,
    },
    visualMap: {
      type: "continuous",
      min: lo,
      max: hi,
      calculable: false,
      right: 10,
      top: "center",
      precision: 2,
      text: [tickLabel(hi), tickLabel(lo)],
      inRange: { color: ["#27348b", "#2d7fb8", "#7fcdbb", "#edf8b1", "#f5d327"] },
    },
    series: [
      {
        name: axisTitle(spec.zLabel, spec.z as string),
        type: "heatmap",
        data: cells,
        itemStyle: { borderWidth: 0 },
        emphasis: { disabled: true },
      },
    ],
  };
}

export function renderFigure(spec: FigureSpec, tables: DataTable[]): string {
  if (tables.length !== spec.inputs.length) {
    throw new SchemaError(
      `spec names ${spec.inputs.length} inputs, got ${tables.length} tables`,
    );
  }
  const option = spec.kind === "lines"
    ? linesOption(spec, tables)
    : contourOption(spec, tables[0]);
  const chart = echarts.init(null, null, {
    renderer: "svg",
    ssr: true,
    width: spec.width,
    height: spec.height,
  });
  try {
    chart.setOption(option, { notMerge: true });
    return canonicalSvg(chart.renderToSVGString());
  } finally {
    chart.dispose();
  }
}
