// Figure descriptions use the same sectioned key = value format as the
// simulator's run configs, so one text syntax covers the whole pipeline.
// Parsing is strict: unknown sections or keys are errors, not warnings.

import { readFileSync } from "fs";
import { dirname, resolve } from "path";

export class SpecError extends Error {}

export type FigureKind = "lines" | "contour";

export interface FigureSpec {
  kind: FigureKind;
  title: string | null;
  width: number;
  height: number;
  x: string;
  y: string;
  z: string | null;
  xLabel: string | null;
  yLabel: string | null;
  zLabel: string | null;
  xLog: boolean;
  yLog: boolean;
  inputs: string[];
  labels: string[];
  guides: number[];
  maskColumn: string | null;
}

const SECTIONS: Record<string, Set<string>> = {
  figure: new Set(["kind", "title", "width", "height"]),
  axes: new Set(["x", "y", "z", "x_label", "y_label", "z_label", "x_log", "y_log"]),
  data: new Set(["inputs", "labels"]),
  guides: new Set(["y"]),
  mask: new Set(["column"]),
};

type Raw = Map<string, Map<string, string>>;

function parseSections(text: string): Raw {
  const sections: Raw = new Map();
  let current: Map<string, string> | null = null;
  let currentName = "";
  text.split(/\r?\n/).forEach((rawLine, i) => {
    const where = `line ${i + 1}`;
    let line = rawLine;
    const comment = line.search(/(^|\s)[#;]/);
    if (comment >= 0) line = line.slice(0, comment);
    line = line.trim();
    if (line === "") return;
    const header = line.match(/^\[([^\]]+)\]$/);
    if (header) {
      currentName = header[1];
      if (!(currentName in SECTIONS)) {
        throw new SpecError(`${where}: unknown section [${currentName}]`);
      }
      if (sections.has(currentName)) {
        throw new SpecError(`${where}: duplicate section [${currentName}]`);
      }
      current = new Map();
      sections.set(currentName, current);
      return;
    }
    const eq = line.indexOf("=");
    if (eq < 0 || current === null) {
      throw new SpecError(`${where}: expected "key = value", got "${line}"`);
    }
    const key = line.slice(0, eq).trim();
    if (!SECTIONS[currentName].has(key)) {
      throw new SpecError(`${where}: unknown key "${key}" in [${currentName}]`);
    }
    if (current.has(key)) {
      throw new SpecError(`${where}: duplicate key "${key}"`);
    }
    current.set(key, line.slice(eq + 1).trim());
  });
  return sections;
}

function take(raw: Raw, section: string, key: string): string | null {
  const value = raw.get(section)?.get(key);
  return value === undefined || value === "" ? null : value;
}

function number(where: string, value: string): number {
  const parsed = Number(value);
  if (!Number.isFinite(parsed)) {
    throw new SpecError(`${where}: not a number: "${value}"`);
  }
  return parsed;
}

function boolean(where: string, value: string | null, fallback: boolean): boolean {
  if (value === null) return fallback;
  if (value === "true") return true;
  if (value === "false") return false;
  throw new SpecError(`${where}: expected true/false, got "${value}"`);
}

function list(value: string | null): string[] {
  if (value === null) return [];
  return value.split(",").map((part) => part.trim()).filter((p) => p !== "");
}

export function parseFigureSpec(text: string): FigureSpec {
  const raw = parseSections(text);

  const kind = take(raw, "figure", "kind");
  if (kind !== "lines" && kind !== "contour") {
    throw new SpecError(`[figure] kind must be "lines" or "contour", got ${JSON.stringify(kind)}`);
  }

  const widthRaw = take(raw, "figure", "width");
  const heightRaw = take(raw, "figure", "height");
  const width = widthRaw === null ? 880 : number("[figure] width", widthRaw);
  const height = heightRaw === null ? 560 : number("[figure] height", heightRaw);
  if (width <= 0 || height <= 0 || !Number.isInteger(width) || !Number.isInteger(height)) {
    throw new SpecError("[figure] width and height must be positive integers");
  }

  const inputs = list(take(raw, "data", "inputs"));
  if (inputs.length === 0) {
    throw new SpecError("[data] inputs is required");
  }
  const labels = list(take(raw, "data", "labels"));
  if (labels.length > 0 && labels.length !== inputs.length) {
    throw new SpecError(
      `[data] got ${labels.length} labels for ${inputs.length} inputs`,
    );
  }

  const z = take(raw, "axes", "z");
  const maskColumn = take(raw, "mask", "column");
  const guides = list(take(raw, "guides", "y")).map((v) => number("[guides] y", v));

  if (kind === "contour") {
    if (z === null) throw new SpecError("[axes] z is required for contour figures");
    if (inputs.length !== 1) {
      throw new SpecError("contour figures take exactly one input");
    }
    if (guides.length > 0) {
      throw new SpecError("[guides] applies to lines figures only");
    }
  } else {
    if (z !== null) throw new SpecError("[axes] z applies to contour figures only");
    if (maskColumn !== null) {
      throw new SpecError("[mask] applies to contour figures only");
    }
  }

  return {
    kind,
    title: take(raw, "figure", "title"),
    width,
    height,
    x: take(raw, "axes", "x") ?? "g0",
    y: take(raw, "axes", "y") ?? "n_eff",
    z,
    xLabel: take(raw, "axes", "x_label"),
    yLabel: take(raw, "axes", "y_label"),
    zLabel: take(raw, "axes", "z_label"),
    xLog: boolean("[axes] x_log", take(raw, "axes", "x_log"), kind === "lines"),
    yLog: boolean("[axes] y_log", take(raw, "axes", "y_log"), kind === "lines"),
    inputs,
    labels,
    guides,
    maskColumn,
  };
}

// Input paths inside a spec file are relative to the file itself.
export function loadFigureSpec(path: string): FigureSpec {
  const spec = parseFigureSpec(readFileSync(path, "utf-8"));
  const base = dirname(path);
  return { ...spec, inputs: spec.inputs.map((p) => resolve(base, p)) };
}
