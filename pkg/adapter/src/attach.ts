import { Sentence, Word } from './types';
import { MODALS, NOMINAL, POSSESSIVES } from './tagger';

/**
 * Deterministic head attachment for analyzed sentences.
 *
 * The pretrained pipeline supplies tokens, tags and lemmas; this pass
 * adds one governor per token with UD-v1-style labels (nsubj, dobj,
 * cop, case + nmod, auxpass + nsubjpass, cc + conj, ...).  Preposition
 * subtypes (nmod:of, nmod:agent, advcl:by, conj:and) go to the
 * enhanced slot so the basic column stays plain.  Whatever the input,
 * the result is a single-root tree: anything the rules below cannot
 * place is attached to the root as "dep", and a final pass re-heads any
 * token caught in an accidental cycle.
 */
export function attach(sentence: Sentence): void {
  const words = sentence.words;
  if (words.length === 0) {
    return;
  }
  for (const w of words) {
    w.head = -1;
    w.deprel = 'dep';
    delete w.enhanced;
  }

  const root = pickRoot(words);
  root.head = 0;
  root.deprel = 'root';
  const rootIsPassive =
    root.upos === 'VERB' && root.xpos === 'VBN' && words.some((w) => w.upos === 'AUX' && w.lemma === 'be');

  attachPrepositionPhrases(words, root);
  attachFunctionWords(words, root);
  attachNominals(words, root, rootIsPassive);
  attachLeftovers(words, root);
  ensureTree(words, root);
}

function isNominal(w: Word): boolean {
  return NOMINAL.has(w.upos) && !POSSESSIVES.has(w.lemma);
}

function isVerb(w: Word): boolean {
  return w.upos === 'VERB';
}

function free(w: Word): boolean {
  return w.head === -1;
}

function between(words: Word[], a: Word, b: Word): Word[] {
  return words.slice(a.index, b.index - 1);
}

function pickRoot(words: Word[]): Word {
  const verbs = words.filter(isVerb);
  const finite = verbs.find((w) => w.xpos !== 'VBG');
  if (finite) {
    return finite;
  }
  if (verbs.length > 0) {
    return verbs[0];
  }
  // Copular clause: the predicate after a be-auxiliary heads the
  // sentence; a nominal wins over an adjective ("the main cause").
  const be = words.find((w) => w.upos === 'AUX' && w.lemma === 'be');
  if (be) {
    const after = words.slice(be.index);
    const predicate = after.find(isNominal) ?? after.find((w) => w.upos === 'ADJ');
    if (predicate) {
      return predicate;
    }
  }
  return words.find(isNominal) ?? words.find((w) => w.upos === 'ADJ') ?? words[0];
}

/** Attach case markers and their objects: "of my stress", "by overthinking". */
function attachPrepositionPhrases(words: Word[], root: Word): void {
  for (const prep of words) {
    if (prep.upos !== 'ADP' || !free(prep)) {
      continue;
    }
    const object = words
      .slice(prep.index)
      .find(
        (w) =>
          free(w) &&
          w !== root &&
          (isNominal(w) || (isVerb(w) && w.xpos === 'VBG')) &&
          !between(words, prep, w).some(
            (x) => x.upos === 'ADP' || x.upos === 'PUNCT' || (isVerb(x) && x.xpos !== 'VBG'),
          ),
      );
    if (!object) {
      continue;
    }
    const governor = findPpGovernor(words, prep, root);
    if (isVerb(object)) {
      // "caused by overthinking": gerund complement, mark + advcl:by
      prep.head = object.index;
      prep.deprel = 'mark';
      object.head = governor.index;
      object.deprel = 'advcl';
      object.enhanced = `advcl:${prep.lemma}`;
    } else {
      prep.head = object.index;
      prep.deprel = 'case';
      object.head = governor.index;
      object.deprel = 'nmod';
      object.enhanced =
        prep.lemma === 'by' && governor.xpos === 'VBN' ? 'nmod:agent' : `nmod:${prep.lemma}`;
    }
  }
}

function findPpGovernor(words: Word[], prep: Word, root: Word): Word {
  // Noun-attached when a nominal directly precedes ("cause of", "day of
  // school"); otherwise the nearest verb to the left; otherwise the root.
  let j = prep.index - 2;
  while (j >= 0 && words[j].upos === 'ADV') {
    j--;
  }
  if (j >= 0 && isNominal(words[j])) {
    return words[j];
  }
  for (let k = prep.index - 2; k >= 0; k--) {
    if (isVerb(words[k]) || words[k] === root) {
      return words[k];
    }
  }
  return root;
}

function attachFunctionWords(words: Word[], root: Word): void {
  for (const w of words) {
    if (!free(w) || w === root) {
      continue;
    }
    const nextNominal = () => words.slice(w.index).find((x) => isNominal(x) || x === root);
    switch (w.upos) {
      case 'DET': {
        const noun = nextNominal();
        if (noun) {
          w.head = noun.index;
          w.deprel = 'det';
        }
        break;
      }
      case 'PRON': {
        if (POSSESSIVES.has(w.lemma)) {
          const noun = nextNominal();
          if (noun) {
            w.head = noun.index;
            w.deprel = 'nmod:poss';
          }
        }
        break;
      }
      case 'AUX': {
        const verb = words.slice(w.index).find(isVerb);
        if (verb) {
          w.head = verb.index;
          w.deprel =
            verb.xpos === 'VBN' && (w.lemma === 'be' || w.lemma === 'get') && !MODALS.has(w.lemma)
              ? 'auxpass'
              : 'aux';
        } else if (w.lemma === 'be') {
          w.head = root.index;
          w.deprel = 'cop';
        }
        break;
      }
      case 'ADJ': {
        const noun = words
          .slice(w.index)
          .find(
            (x) =>
              isNominal(x) &&
              !between(words, w, x).some((y) => isVerb(y) || y.upos === 'ADP' || y.upos === 'PUNCT'),
          );
        if (noun) {
          w.head = noun.index;
          w.deprel = 'amod';
        }
        break;
      }
      case 'ADV': {
        const target =
          words.slice(w.index).find((x) => x.upos === 'ADJ' || x.upos === 'ADV') ??
          words.slice(w.index).find(isVerb) ??
          [...words.slice(0, w.index - 1)].reverse().find(isVerb);
        if (target && target !== w) {
          w.head = target.index;
          w.deprel = 'advmod';
        }
        break;
      }
      case 'PART': {
        const verb = words.slice(w.index).find(isVerb);
        if (verb) {
          w.head = verb.index;
          w.deprel = w.form.toLowerCase() === 'to' ? 'mark' : 'neg';
        }
        break;
      }
      case 'NUM': {
        const noun = words.slice(w.index).find(isNominal);
        if (noun) {
          w.head = noun.index;
          w.deprel = 'nummod';
        }
        break;
      }
      case 'PUNCT': {
        w.head = root.index;
        w.deprel = 'punct';
        break;
      }
      default:
        break;
    }
  }
}

function attachNominals(words: Word[], root: Word, rootIsPassive: boolean): void {
  // Subject: the last nominal of the first unattached nominal run before
  // the root; earlier members of the run become compounds of it.
  const preRoot = words.filter((w) => free(w) && w !== root && w.index < root.index && isNominal(w));
  let subject: Word | null = null;
  if (preRoot.length > 0) {
    const run = [preRoot[0]];
    for (const w of preRoot.slice(1)) {
      if (w.index === run[run.length - 1].index + 1) {
        run.push(w);
      } else {
        break;
      }
    }
    subject = run[run.length - 1];
    subject.head = root.index;
    subject.deprel = rootIsPassive ? 'nsubjpass' : 'nsubj';
    for (const w of run.slice(0, -1)) {
      w.head = subject.index;
      w.deprel = 'compound';
    }
  } else if (root.upos === 'VERB') {
    // No nominal subject: promote a bare pre-verb adjective ("Nervous
    // Stressed Leads to ...") or gerund ("Overthinking causes ...").
    const adj = words.find((w) => free(w) && w.index < root.index && w.upos === 'ADJ');
    const gerund = words.find((w) => free(w) && w.index < root.index && isVerb(w) && w.xpos === 'VBG');
    if (adj) {
      adj.head = root.index;
      adj.deprel = rootIsPassive ? 'nsubjpass' : 'nsubj';
      subject = adj;
    } else if (gerund) {
      gerund.head = root.index;
      gerund.deprel = 'csubj';
      subject = gerund;
    }
  }

  // A leftover gerund before the subject modifies it: "Missing someone".
  if (subject) {
    for (const w of words) {
      if (free(w) && w.index < subject.index && isVerb(w) && w.xpos === 'VBG') {
        w.head = subject.index;
        w.deprel = 'amod';
      }
    }
  }

  // Objects and coordination to the right of the root.  Conjunct heads
  // include prepositional objects ("to headaches and heavy hearts").
  for (const w of words.filter((x) => x.index > root.index)) {
    if (!free(w) || !isNominal(w)) {
      continue;
    }
    const conjHead = findConjunctHead(words, w, root);
    if (conjHead) {
      const cc = between(words, conjHead.anchor, w).find((x) => x.upos === 'CCONJ');
      w.head = conjHead.head.index;
      w.deprel = 'conj';
      w.enhanced = `conj:${cc && cc.lemma !== '&' ? cc.lemma : 'and'}`;
    } else if (root.upos === 'VERB' && !rootIsPassive) {
      w.head = root.index;
      w.deprel = 'dobj';
    } else {
      w.head = root.index;
      w.deprel = 'dep';
    }
  }

  // Coordinators attach to the first conjunct on their left.
  for (const w of words) {
    if (free(w) && w.upos === 'CCONJ') {
      const left = [...words.slice(0, w.index - 1)].reverse().find((x) => isNominal(x) || isVerb(x));
      if (left) {
        w.head = left.deprel === 'conj' ? left.head : left.index;
      } else {
        w.head = root.index;
      }
      w.deprel = 'cc';
    }
  }
}

/** Nearest preceding nominal separated from ``w`` only by a coordinator
 * (plus modifiers); returns the first conjunct of its chain. */
function findConjunctHead(words: Word[], w: Word, root: Word): { head: Word; anchor: Word } | null {
  for (let k = w.index - 2; k > root.index - 1; k--) {
    const candidate = words[k];
    if (isNominal(candidate) && !free(candidate)) {
      const gap = between(words, candidate, w);
      if (gap.some((x) => x.upos === 'CCONJ') && gap.every((x) => x.upos === 'CCONJ' || x.upos === 'ADJ' || x.upos === 'ADV' || x.upos === 'PUNCT')) {
        const head = candidate.deprel === 'conj' ? words[candidate.head - 1] : candidate;
        return { head, anchor: candidate };
      }
      return null;
    }
  }
  return null;
}

function attachLeftovers(words: Word[], root: Word): void {
  for (const w of words) {
    if (!free(w) || w === root) {
      continue;
    }
    if (isVerb(w) && w.index > root.index) {
      const cc = between(words, root, w).some((x) => x.upos === 'CCONJ');
      if (cc) {
        w.head = root.index;
        w.deprel = 'conj';
        w.enhanced = 'conj:and';
        continue;
      }
    }
    w.head = root.index;
    w.deprel = 'dep';
  }
}

/** Re-head anything that cannot reach the root (cycles, self-heads). */
function ensureTree(words: Word[], root: Word): void {
  for (const start of words) {
    if (start === root) {
      continue;
    }
    let current = start;
    let hops = 0;
    let ok = false;
    while (hops <= words.length) {
      if (current.head === 0) {
        ok = true;
        break;
      }
      if (current.head < 0 || current.head === current.index || current.head > words.length) {
        break;
      }
      current = words[current.head - 1];
      hops++;
    }
    if (!ok) {
      start.head = root.index;
      start.deprel = 'dep';
    }
  }
}
