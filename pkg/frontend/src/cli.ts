#!/usr/bin/env node
// plots render --spec <file> --out <image>
//
// Exit status mirrors the simulator CLI: 0 success, 2 for spec or data
// problems, 1 for anything else.

import { writeFileSync } from "fs";
import yargs from "yargs";
import { hideBin } from "yargs/helpers";

import { loadFigureSpec, SpecError } from "./figspec";
import { renderFigure } from "./render";
import { readArtifact, SchemaError } from "./table";

export function renderToFile(specPath: string, outPath: string): void {
  const spec = loadFigureSpec(specPath);
  const tables = spec.inputs.map(readArtifact);
  writeFileSync(outPath, renderFigure(spec, tables), "utf-8");
}

function main(): void {
  yargs(hideBin(process.argv))
    .scriptName("plots")
    .command(
      "render",
      "render one figure from CSV artifacts",
      (cmd) =>
        cmd
          .option("spec", {
            type: "string",
            demandOption: true,
            describe: "figure description file",
          })
          .option("out", {
            type: "string",
            demandOption: true,
            describe: "output SVG path",
          }),
      (argv) => {
        try {
          renderToFile(argv.spec, argv.out);
        } catch (error) {
          if (error instanceof SpecError || error instanceof SchemaError) {
            console.error(`error: ${error.message}`);
            process.exit(2);
          }
          console.error(`error: ${(error as Error).message}`);
          process.exit(1);
        }
      },
    )
    .demandCommand(1)
    .strict()
    .parse();
}

if (require.main === module) {
  main();
}
