/** Minimal flag parsing and script-entry helpers shared by the renderers. */

import { pathToFileURL } from "node:url";

/** Maximum of fn over items; safe for arrays too large to spread. */
export function maxOf<T>(items: readonly T[], fn: (item: T) => number): number {
  let best = -Infinity;
  for (const item of items) {
    const v = fn(item);
    if (v > best) best = v;
  }
  return best;
}

export function parseFlags(
  argv: string[],
  spec: Record<string, { required?: boolean; default?: string }>,
): Record<string, string> {
  const out: Record<string, string> = {};
  for (let i = 0; i < argv.length; i += 2) {
    const key = argv[i]!;
    if (!key.startsWith("--") || !(key.slice(2) in spec)) {
      throw new Error(`unknown flag ${key}`);
    }
    const value = argv[i + 1];
    if (value === undefined) {
      throw new Error(`flag ${key} needs a value`);
    }
    out[key.slice(2)] = value;
  }
  for (const [name, rule] of Object.entries(spec)) {
    if (!(name in out)) {
      if (rule.required) throw new Error(`missing required flag --${name}`);
      if (rule.default !== undefined) out[name] = rule.default;
    }
  }
  return out;
}

export function isMain(metaUrl: string): boolean {
  return process.argv[1] !== undefined && metaUrl === pathToFileURL(process.argv[1]).href;
}

export function runCli(metaUrl: string, main: () => void): void {
  if (!isMain(metaUrl)) return;
  try {
    main();
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : err}`);
    process.exit(1);
  }
}
