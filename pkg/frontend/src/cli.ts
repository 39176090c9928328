#!/usr/bin/env node
/** Figure rendering CLI: `render --kind <kind> --in <sweep dir> --out <file.svg>`. */

import * as path from "path";

import yargs from "yargs";

import { SchemaError } from "./csv.js";
import {
  CSV_FOR_KIND,
  FIGURE_KINDS,
  FigureDataError,
  FigureKind,
  renderFigure,
} from "./figures.js";

class UsageError extends Error {}

export async function run(argv: string[]): Promise<number> {
  try {
    await yargs(argv)
      .scriptName("qrc-figures")
      .command(
        "render",
        "render one figure from a sweep output directory",
        (cmd) =>
          cmd
            .option("kind", {
              choices: FIGURE_KINDS,
              demandOption: true,
              describe: "figure kind",
            })
            .option("in", {
              type: "string",
              demandOption: true,
              describe: "sweep output directory holding the CSVs",
            })
            .option("out", {
              type: "string",
              demandOption: true,
              describe: "output SVG path",
            })
            .option("no-bands", {
              type: "boolean",
              default: false,
              describe: "suppress the seed std-dev bands",
            }),
        (args) => {
          const kind = args.kind as FigureKind;
          renderFigure({
            kind,
            csvPath: path.join(args.in as string, CSV_FOR_KIND[kind]),
            outPath: args.out as string,
            bands: !(args["no-bands"] as boolean),
          });
          console.log(`${args.out}`);
        },
      )
      .demandCommand(1)
      .strict()
      .fail((msg, err) => {
        if (err) throw err;
        throw new UsageError(msg);
      })
      .exitProcess(false)
      .parseAsync();
    return 0;
  } catch (err) {
    if (err instanceof UsageError) {
      console.error(`error: ${err.message}`);
      return 2;
    }
    if (err instanceof SchemaError || err instanceof FigureDataError) {
      console.error(`error: ${err.message}`);
      return 1;
    }
    throw err;
  }
}

const entry = process.argv[1] ?? "";
if (entry.endsWith("cli.js") || entry.endsWith("qrc-figures")) {
  run(process.argv.slice(2)).then((code) => {
    process.exitCode = code;
  });
}
