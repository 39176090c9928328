import * as fs from "fs";
import * as os from "os";
import * as path from "path";

import { describe, expect, it } from "vitest";

import { run } from "../src/cli.js";

const FIXTURES = path.join(__dirname, "fixtures");

function tmpDir(): string {
  return fs.mkdtempSync(path.join(os.tmpdir(), "qrcfig-cli-"));
}

describe("render command", () => {
  it("renders every figure kind from sweep directories", async () => {
    const out = tmpDir();
    const cases: Array<[string, string]> = [
      ["memory-curve", "ipc"],
      ["ipc-vs-n", "ipc"],
      ["nrmse-vs-n", "lorenz"],
      ["init-metrics", "init"],
    ];
    for (const [kind, dir] of cases) {
      const target = path.join(out, `${kind}.svg`);
      const code = await run([
        "render", "--kind", kind, "--in", path.join(FIXTURES, dir), "--out", target,
      ]);
      expect(code).toBe(0);
      expect(fs.existsSync(target)).toBe(true);
      expect(fs.readFileSync(target, "utf-8")).toContain("stroke-dasharray");
    }
  });

  it("exits nonzero on a schema violation", async () => {
    const dir = tmpDir();
    fs.writeFileSync(
      path.join(dir, "per_order.csv"),
      "totally,the,wrong,header\n1,2,3,4\n",
    );
    const code = await run([
      "render", "--kind", "ipc-vs-n", "--in", dir, "--out", path.join(dir, "fig.svg"),
    ]);
    expect(code).toBe(1);
    expect(fs.existsSync(path.join(dir, "fig.svg"))).toBe(false);
  });

  it("exits nonzero when the input file is missing", async () => {
    const dir = tmpDir();
    const code = await run([
      "render", "--kind", "ipc-vs-n", "--in", dir, "--out", path.join(dir, "fig.svg"),
    ]);
    expect(code).toBe(1);
  });

  it("rejects an unknown figure kind", async () => {
    const code = await run([
      "render", "--kind", "pie-chart", "--in", FIXTURES, "--out", "/tmp/x.svg",
    ]);
    expect(code).toBe(2);
  });

  it("rejects missing required options", async () => {
    const code = await run(["render", "--kind", "ipc-vs-n"]);
    expect(code).toBe(2);
  });
});
