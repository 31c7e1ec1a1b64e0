export { booleans, DataTable, numbers, optionalNumbers, parseArtifact, readArtifact, SchemaError } from "./table";
export { FigureKind, FigureSpec, loadFigureSpec, parseFigureSpec, SpecError } from "./figspec";
export { canonicalSvg, renderFigure } from "./render";
export { renderToFile } from "./cli";
