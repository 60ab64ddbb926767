import { Sentence } from './types';

/**
 * Render one tweet's sentences as CoNLL-U blocks.
 *
 * sent_id is `<tweetId>:<ordinal>` (0-based); DEPS carries the enhanced
 * label when it differs from the basic one, else `_`.
 */
export function tweetToConllu(tweetId: string, sentences: Sentence[]): string {
  const blocks: string[] = [];
  sentences.forEach((sentence, ordinal) => {
    const lines: string[] = [];
    lines.push(`# sent_id = ${tweetId}:${ordinal}`);
    lines.push(`# text = ${sentence.text.replace(/\s+/g, ' ').trim()}`);
    for (const w of sentence.words) {
      const deps = w.enhanced ? `${w.head}:${w.enhanced}` : '_';
      lines.push(
        [
          String(w.index),
          w.form,
          w.lemma || '_',
          w.upos || '_',
          w.xpos || '_',
          '_',
          String(w.head),
          w.deprel,
          deps,
          '_',
        ].join('\t'),
      );
    }
    blocks.push(lines.join('\n'));
  });
  return blocks.join('\n\n');
}

export function fileHeader(model: string): string {
  return [
    `# generator = parse-adapter (${model})`,
    '# labels = UD v1 basic (nsubj/dobj/nmod/nsubjpass); enhanced subtypes in DEPS (nmod:PREP, nmod:agent, advcl:by, conj:and)',
  ].join('\n');
}
