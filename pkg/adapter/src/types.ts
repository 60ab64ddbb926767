export interface AdapterConfig {
  /** Tweet JSONL input path. */
  input: string;
  /** CoNLL-U output path; must differ from the input. */
  output: string;
  /** Pipeline identifier; only the bundled wink model is supported. */
  model: string;
  /** Tweets analyzed per processing batch. */
  batchSize: number;
}

export interface TweetRecord {
  id: string;
  text: string;
}

/** One analyzed token, before and after head attachment. */
export interface Word {
  index: number; // 1-based within the sentence
  form: string;
  lemma: string;
  upos: string;
  xpos: string;
  head: number; // 0 = root
  deprel: string;
  /** Enhanced-style label when it differs from deprel (e.g. nmod:of). */
  enhanced?: string;
}

export interface Sentence {
  text: string;
  words: Word[];
}

export interface Summary {
  tweets: number;
  sentences: number;
  skipped: number;
}

export const SUPPORTED_MODEL = 'wink-eng-lite-web-model';

export function defaultConfig(input: string, output: string): AdapterConfig {
  return { input, output, model: SUPPORTED_MODEL, batchSize: 64 };
}

export function validateConfig(config: AdapterConfig): void {
  if (!config.input || !config.output) {
    throw new Error('input and output paths are required');
  }
  if (config.input === config.output) {
    throw new Error('input and output paths must differ');
  }
  if (!Number.isInteger(config.batchSize) || config.batchSize < 1) {
    throw new Error(`batch size must be >= 1, got ${config.batchSize}`);
  }
  if (config.model !== SUPPORTED_MODEL) {
    throw new Error(`unknown model '${config.model}' (supported: ${SUPPORTED_MODEL})`);
  }
}
