#!/usr/bin/env node
/** Convert raw UTF-8 text to CoNLL-U so the extraction engine can run on
 * arbitrary corpora.
 *
 *   prep --input raw.txt --output out.conllu [--backend wink]
 */
import * as fs from 'fs';

import { BackendError, getBackend } from './backends';
import { firstInvalidUtf8, renderConllu, validateConllu } from './conllu';

interface Args {
  input: string;
  output: string;
  backend: string;
}

function parseArgs(argv: string[]): Args {
  const args: Partial<Args> = { backend: 'wink' };
  for (let i = 0; i < argv.length; i++) {
    const flag = argv[i];
    const value = argv[i + 1];
    if (flag === '--input' || flag === '--output' || flag === '--backend') {
      if (value === undefined) throw new Error(`${flag} needs a value`);
      args[flag.slice(2) as keyof Args] = value;
      i++;
    } else {
      throw new Error(`unknown argument: ${flag}`);
    }
  }
  if (!args.input || !args.output) {
    throw new Error('usage: prep --input raw.txt --output out.conllu [--backend wink]');
  }
  return args as Args;
}

export function main(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (err) {
    console.error(String(err instanceof Error ? err.message : err));
    return 1;
  }

  let raw: Buffer;
  try {
    raw = fs.readFileSync(args.input);
  } catch (err) {
    console.error(`cannot read ${args.input}: ${(err as Error).message}`);
    return 1;
  }
  const bad = firstInvalidUtf8(raw);
  if (bad >= 0) {
    console.error(`input is not valid UTF-8 at byte ${bad}`);
    return 1;
  }
  const text = raw.toString('utf8');

  if (text.trim() === '') {
    fs.writeFileSync(args.output, '');
    return 0;
  }

  let backend;
  try {
    backend = getBackend(args.backend);
  } catch (err) {
    if (err instanceof BackendError) {
      console.error(err.message);
      return 1;
    }
    throw err;
  }

  const sentences = backend.parse(text);
  const conllu = renderConllu(sentences);
  const problems = validateConllu(conllu);
  if (problems.length) {
    // The attacher guarantees this never happens; fail loudly if it does.
    for (const problem of problems) console.error(problem);
    return 2;
  }
  fs.writeFileSync(args.output, conllu);
  return 0;
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
