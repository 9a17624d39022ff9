/** Parser backends. The bundled `wink` backend does segmentation, POS
 * tagging and lemmas with wink-nlp, then runs the deterministic attacher. */
import winkNLP from 'wink-nlp';
import model from 'wink-eng-lite-web-model';

import { ParsedSentence, WordToken, attachHeads } from './conllu';

export interface Backend {
  name: string;
  parse(text: string): ParsedSentence[];
}

export class BackendError extends Error {}

class WinkBackend implements Backend {
  name = 'wink';
  private nlp = winkNLP(model);

  parse(text: string): ParsedSentence[] {
    const its = this.nlp.its;
    const doc = this.nlp.readDoc(text);
    const sentences: ParsedSentence[] = [];
    doc.sentences().each((sentence: any) => {
      const words: WordToken[] = [];
      sentence.tokens().each((tok: any) => {
        const upos = tok.out(its.pos) as string;
        if (upos === 'SPACE') return; // not a word token
        words.push({
          surface: tok.out(its.value) as string,
          lemma: (tok.out(its.lemma) as string) || (tok.out(its.value) as string),
          upos,
        });
      });
      if (!words.length) return;
      sentences.push({
        text: sentence.out(its.value) as string,
        tokens: attachHeads(words),
      });
    });
    return sentences;
  }
}

const REGISTRY: Record<string, () => Backend> = {
  wink: () => new WinkBackend(),
};

export function getBackend(name: string): Backend {
  const factory = REGISTRY[name];
  if (!factory) {
    const known = Object.keys(REGISTRY).join(', ');
    throw new BackendError(
      `backend '${name}' is not installed; available: ${known}. ` +
        `To add one, npm install its package and register it in backends.ts.`
    );
  }
  return factory();
}
