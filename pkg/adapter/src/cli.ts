#!/usr/bin/env node
import { parseCorpus } from './adapter';
import { defaultConfig, SUPPORTED_MODEL } from './types';

const USAGE = `usage: parse-adapter --in <tweets.jsonl> --out <parses.conllu> [--model <name>] [--batch-size <n>]

Converts tweet JSONL into dependency-annotated CoNLL-U keyed
<tweetId>:<sentenceOrdinal>. Default model: ${SUPPORTED_MODEL}.`;

function main(argv: string[]): number {
  const args = new Map<string, string>();
  for (let i = 0; i < argv.length; i++) {
    const key = argv[i];
    if (key === '--help' || key === '-h') {
      console.log(USAGE);
      return 0;
    }
    if (!key.startsWith('--') || i + 1 >= argv.length) {
      console.error(`unexpected argument: ${key}\n${USAGE}`);
      return 1;
    }
    args.set(key.slice(2), argv[++i]);
  }
  const input = args.get('in');
  const output = args.get('out');
  if (!input || !output) {
    console.error(`--in and --out are required\n${USAGE}`);
    return 1;
  }
  const config = defaultConfig(input, output);
  if (args.has('model')) {
    config.model = args.get('model')!;
  }
  if (args.has('batch-size')) {
    config.batchSize = Number(args.get('batch-size'));
  }
  try {
    const summary = parseCorpus(config);
    console.log(
      `parsed ${summary.tweets} tweet(s) into ${summary.sentences} sentence(s)` +
        (summary.skipped ? `, skipped ${summary.skipped} malformed line(s)` : ''),
    );
    return 0;
  } catch (err) {
    console.error(`parse-adapter: ${err instanceof Error ? err.message : err}`);
    return 2;
  }
}

process.exit(main(process.argv.slice(2)));
