import winkNLP, { ItemSentence, ItemToken, WinkMethods } from 'wink-nlp';
import model from 'wink-eng-lite-web-model';

import { Sentence, Word } from './types';

let nlpInstance: WinkMethods | null = null;

export function loadPipeline(): WinkMethods {
  if (!nlpInstance) {
    nlpInstance = winkNLP(model);
  }
  return nlpInstance;
}

const POSSESSIVES = new Set(['my', 'your', 'his', 'her', 'its', 'our', 'their', 'whose']);
const MODALS = new Set(['can', 'could', 'will', 'would', 'shall', 'should', 'may', 'might', 'must']);
const NOMINAL = new Set(['NOUN', 'PROPN', 'PRON', 'NUM']);

// Irregular past/participle forms that neither end in -ed nor equal the lemma.
const IRREGULAR_PAST = new Set([
  'made', 'led', 'kept', 'left', 'felt', 'found', 'got', 'gave', 'went', 'said',
  'told', 'thought', 'brought', 'put', 'set', 'hurt', 'lost', 'slept', 'woke',
]);
const EN_PARTICIPLE = /en$/;

/** Sentence-split, tokenize, tag and lemmatize one tweet. */
export function analyze(text: string): Sentence[] {
  const nlp = loadPipeline();
  // wink's bundled typings mis-declare the its.* helper signatures; the
  // runtime shape is fine, so bypass the declared types here.
  const its: any = nlp.its;
  const doc = nlp.readDoc(text);
  const sentences: Sentence[] = [];
  doc.sentences().each((sent: ItemSentence) => {
    const words: Word[] = [];
    sent.tokens().each((token: ItemToken) => {
      const form = token.out();
      const upos = token.out(its.pos) as string;
      const lemma = (token.out(its.lemma) as string) || form.toLowerCase();
      words.push({
        index: words.length + 1,
        form,
        lemma: lemma.toLowerCase(),
        upos,
        xpos: '_',
        head: 0,
        deprel: 'dep',
      });
    });
    if (words.length > 0) {
      retagVerbs(words);
      for (const word of words) {
        word.xpos = derivedXpos(word, words);
      }
      sentences.push({ text: sent.out(), words });
    }
  });
  return sentences;
}

function looksThirdSingular(word: Word): boolean {
  const form = word.form.toLowerCase();
  return form !== word.lemma && (form === word.lemma + 's' || form === word.lemma + 'es');
}

/**
 * The lite model often tags 3rd-singular verbs as nouns ("Stress causes
 * insomnia"). Retag a noun as a verb when its form is lemma+s(/es) and
 * the previous non-adverb token is nominal (a plausible subject) rather
 * than a determiner, adjective or preposition.
 */
function retagVerbs(words: Word[]): void {
  for (let i = 0; i < words.length; i++) {
    const word = words[i];
    if ((word.upos !== 'NOUN' && word.upos !== 'PROPN') || !looksThirdSingular(word)) {
      continue;
    }
    let j = i - 1;
    while (j >= 0 && words[j].upos === 'ADV') {
      j--;
    }
    if (j < 0) {
      continue;
    }
    const left = words[j];
    if (NOMINAL.has(left.upos) && !POSSESSIVES.has(left.lemma)) {
      word.upos = 'VERB';
    }
  }
}

function precededByBeAux(word: Word, words: Word[]): boolean {
  // look back at most 3 tokens, stopping at an intervening content verb
  for (let j = word.index - 2; j >= 0 && word.index - 2 - j < 3; j--) {
    const prev = words[j];
    if (prev.upos === 'VERB') {
      return false;
    }
    if (prev.upos === 'AUX' && (prev.lemma === 'be' || prev.lemma === 'get')) {
      return true;
    }
  }
  return false;
}

function verbXpos(word: Word, words: Word[]): string {
  const form = word.form.toLowerCase();
  if (form.endsWith('ing')) {
    return 'VBG';
  }
  if (looksThirdSingular(word)) {
    return 'VBZ';
  }
  if (form === word.lemma) {
    return 'VB';
  }
  if (EN_PARTICIPLE.test(form) && form !== word.lemma) {
    return 'VBN';
  }
  if (form.endsWith('ed') || IRREGULAR_PAST.has(form)) {
    return precededByBeAux(word, words) ? 'VBN' : 'VBD';
  }
  return 'VB';
}

function auxXpos(word: Word): string {
  const form = word.form.toLowerCase();
  if (MODALS.has(word.lemma) || MODALS.has(form)) {
    return 'MD';
  }
  const table: Record<string, string> = {
    is: 'VBZ', "'s": 'VBZ', are: 'VBP', "'re": 'VBP', am: 'VBP', "'m": 'VBP',
    was: 'VBD', were: 'VBD', been: 'VBN', being: 'VBG', be: 'VB',
    has: 'VBZ', have: 'VBP', "'ve": 'VBP', had: 'VBD',
    does: 'VBZ', do: 'VBP', did: 'VBD',
  };
  return table[form] ?? 'VB';
}

function nounXpos(word: Word, proper: boolean): string {
  const form = word.form.toLowerCase();
  const plural = form !== word.lemma && (form === word.lemma + 's' || form === word.lemma + 'es');
  if (proper) {
    return plural ? 'NNPS' : 'NNP';
  }
  return plural ? 'NNS' : 'NN';
}

function derivedXpos(word: Word, words: Word[]): string {
  const form = word.form.toLowerCase();
  switch (word.upos) {
    case 'VERB':
      return verbXpos(word, words);
    case 'AUX':
      return auxXpos(word);
    case 'NOUN':
      return nounXpos(word, false);
    case 'PROPN':
      return nounXpos(word, true);
    case 'ADJ':
      if (form.endsWith('est')) return 'JJS';
      if (form.endsWith('er') || form === 'worse' || form === 'better') return 'JJR';
      return 'JJ';
    case 'ADV':
      if (form.endsWith('est')) return 'RBS';
      if (form === 'more' || form === 'less') return 'RBR';
      return 'RB';
    case 'ADP':
      return 'IN';
    case 'SCONJ':
      return 'IN';
    case 'DET':
      return 'DT';
    case 'PRON':
      return POSSESSIVES.has(word.lemma) ? 'PRP$' : 'PRP';
    case 'CCONJ':
      return 'CC';
    case 'NUM':
      return 'CD';
    case 'PART':
      if (form === 'to') return 'TO';
      if (form === "'s") return 'POS';
      return 'RB';
    case 'PUNCT':
      if (/^[.!?]+$/.test(form)) return '.';
      if (form === ',') return ',';
      if (form === ':' || form === ';') return ':';
      return 'SYM';
    case 'INTJ':
      return 'UH';
    case 'SYM':
      return 'SYM';
    default:
      return 'FW';
  }
}

export { POSSESSIVES, MODALS, NOMINAL };
