import * as fs from 'fs';

import { attach } from './attach';
import { analyze, loadPipeline } from './tagger';
import { fileHeader, tweetToConllu } from './conllu';
import { AdapterConfig, Sentence, Summary, TweetRecord, validateConfig } from './types';

/** Parse tweet JSONL; malformed lines are skipped and counted. */
export function readTweets(jsonl: string): { tweets: TweetRecord[]; skipped: number } {
  const tweets: TweetRecord[] = [];
  let skipped = 0;
  for (const raw of jsonl.split(/\r?\n/)) {
    const line = raw.trim();
    if (!line) {
      continue;
    }
    try {
      const obj = JSON.parse(line);
      if (typeof obj.text !== 'string' || obj.text.length === 0 || obj.id === undefined) {
        throw new Error('missing id/text');
      }
      tweets.push({ id: String(obj.id), text: obj.text });
    } catch {
      skipped++;
    }
  }
  return { tweets, skipped };
}

/** Analyze and attach one tweet; exported for tests. */
export function parseTweet(text: string): Sentence[] {
  const sentences = analyze(text);
  for (const sentence of sentences) {
    attach(sentence);
  }
  return sentences;
}

/** Convert a tweet corpus to CoNLL-U on disk; returns run counts. */
export function parseCorpus(config: AdapterConfig): Summary {
  validateConfig(config);
  loadPipeline(); // fail before touching the output if the model is broken

  const { tweets, skipped } = readTweets(fs.readFileSync(config.input, 'utf-8'));
  const blocks: string[] = [];
  let sentenceCount = 0;

  for (let start = 0; start < tweets.length; start += config.batchSize) {
    for (const tweet of tweets.slice(start, start + config.batchSize)) {
      const sentences = parseTweet(tweet.text);
      if (sentences.length === 0) {
        continue;
      }
      sentenceCount += sentences.length;
      blocks.push(tweetToConllu(tweet.id, sentences));
    }
  }

  // Header comments ride on the first block so no empty block is formed.
  const body = blocks.length ? `${fileHeader(config.model)}\n${blocks.join('\n\n')}\n` : '';
  fs.writeFileSync(config.output, body);
  return { tweets: tweets.length, sentences: sentenceCount, skipped };
}
