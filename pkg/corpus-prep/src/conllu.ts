/**
 * CoNLL-U assembly and structural validation.
 *
 * The attacher is a deterministic rule layer over tagged tokens. It is not a
 * treebank-grade parser; its contract is structural: every sentence it emits
 * has exactly one root, acyclic heads, and 10 well-formed columns.
 */

export interface WordToken {
  surface: string;
  lemma: string;
  upos: string;
}

export interface DepToken extends WordToken {
  head: number; // 1-based, 0 = root
  deprel: string;
}

export interface ParsedSentence {
  text: string;
  tokens: DepToken[];
}

const NOUNISH = new Set(['NOUN', 'PROPN']);
const NOMINAL = new Set(['NOUN', 'PROPN', 'PRON']);
// Tokens that may sit between a modifier and its noun within one NP.
const NP_INTERNAL = new Set(['DET', 'ADJ', 'NUM', 'NOUN', 'PROPN', 'ADV']);

function isNpHead(upos: string[], i: number): boolean {
  if (upos[i] === 'PRON') return true;
  const nounish = NOUNISH.has(upos[i]);
  const bareNum = upos[i] === 'NUM' && (i + 1 >= upos.length || !NOUNISH.has(upos[i + 1]));
  if (!nounish && !bareNum) return false;
  return bareNum || i + 1 >= upos.length || !NOUNISH.has(upos[i + 1]);
}

function npContiguous(upos: string[], from: number, to: number): boolean {
  for (let j = from + 1; j < to; j++) {
    if (!NP_INTERNAL.has(upos[j])) return false;
  }
  return true;
}

function nextWhere(
  upos: string[],
  from: number,
  pred: (i: number) => boolean
): number {
  for (let j = from + 1; j < upos.length; j++) if (pred(j)) return j;
  return -1;
}

function prevWhere(
  upos: string[],
  from: number,
  pred: (i: number) => boolean
): number {
  for (let j = from - 1; j >= 0; j--) if (pred(j)) return j;
  return -1;
}

/** Assign heads and labels; indices in the result are 1-based. */
export function attachHeads(words: WordToken[]): DepToken[] {
  const n = words.length;
  if (n === 0) return [];
  const upos = words.map((w) => w.upos);

  let root = upos.findIndex((u) => u === 'VERB');
  if (root < 0) root = upos.findIndex((u) => u === 'AUX');
  if (root < 0) root = upos.findIndex((u) => NOMINAL.has(u));
  if (root < 0) root = 0;

  const heads = new Array<number>(n).fill(root);
  const rels = new Array<string>(n).fill('dep');
  let sawObject = false;
  let lastSubject = -1;

  for (let i = 0; i < n; i++) {
    if (i === root) continue;
    const u = upos[i];
    if (u === 'PUNCT') {
      rels[i] = 'punct';
    } else if (NOUNISH.has(u) && !isNpHead(upos, i)) {
      // Right-headed compound run.
      let end = i;
      while (end + 1 < n && NOUNISH.has(upos[end + 1])) end++;
      heads[i] = end;
      rels[i] = 'compound';
    } else if (NOMINAL.has(u) || (u === 'NUM' && isNpHead(upos, i))) {
      if (i < root) {
        heads[i] = root;
        // Only the nominal nearest to the root keeps the subject slot.
        if (lastSubject >= 0) rels[lastSubject] = 'obl';
        rels[i] = 'nsubj';
        lastSubject = i;
      } else {
        const adp = prevWhere(upos, i, (j) => upos[j] === 'ADP');
        const caseMarked =
          adp > root && nextWhere(upos, adp, (j) => isNpHead(upos, j)) === i;
        heads[i] = root;
        if (caseMarked) {
          rels[i] = 'obl';
        } else if (!sawObject) {
          rels[i] = 'obj';
          sawObject = true;
        } else {
          rels[i] = 'obl';
        }
      }
    } else if (u === 'DET' || u === 'NUM' || u === 'ADJ') {
      const target = nextWhere(upos, i, (j) => isNpHead(upos, j) && NOUNISH.has(upos[j]));
      if (target >= 0 && npContiguous(upos, i, target)) {
        heads[i] = target;
        rels[i] = u === 'DET' ? 'det' : u === 'NUM' ? 'nummod' : 'amod';
      }
    } else if (u === 'ADP') {
      const target = nextWhere(upos, i, (j) => isNpHead(upos, j));
      if (target >= 0 && npContiguous(upos, i, target)) {
        heads[i] = target;
        rels[i] = 'case';
      }
    } else if (u === 'AUX') {
      heads[i] = root;
      rels[i] = 'aux';
    } else if (u === 'VERB') {
      heads[i] = root;
      rels[i] = 'conj';
    } else if (u === 'ADV') {
      rels[i] = 'advmod';
    } else if (u === 'PART') {
      if (words[i].surface === "'s" || words[i].surface === "’s") {
        const target = prevWhere(upos, i, (j) => NOUNISH.has(upos[j]));
        if (target >= 0) {
          heads[i] = target;
          rels[i] = 'case';
        }
      } else {
        const target = nextWhere(upos, i, (j) => upos[j] === 'VERB' || upos[j] === 'AUX');
        if (target >= 0) {
          heads[i] = target;
          rels[i] = 'mark';
        }
      }
    } else if (u === 'SCONJ') {
      const target = nextWhere(upos, i, (j) => upos[j] === 'VERB' || upos[j] === 'AUX');
      if (target >= 0) {
        heads[i] = target;
        rels[i] = 'mark';
      }
    } else if (u === 'CCONJ') {
      const target = nextWhere(upos, i, (j) => isNpHead(upos, j) || upos[j] === 'VERB');
      if (target >= 0) {
        heads[i] = target;
        rels[i] = 'cc';
      }
    }
  }

  // Repair pass: anything that cannot reach the root gets re-attached to it.
  for (let i = 0; i < n; i++) {
    if (i === root) continue;
    let cur = i;
    let steps = 0;
    let broken = heads[i] === i;
    while (!broken && cur !== root) {
      cur = heads[cur];
      steps++;
      if (steps > n) {
        broken = true;
      }
    }
    if (broken) {
      heads[i] = root;
      rels[i] = 'dep';
    }
  }

  return words.map((w, i) => ({
    ...w,
    head: i === root ? 0 : heads[i] + 1,
    deprel: i === root ? 'root' : rels[i],
  }));
}

const FIELD_SANITIZE = /[\t\n\r]/g;

function field(value: string): string {
  const cleaned = value.replace(FIELD_SANITIZE, ' ').trim();
  return cleaned === '' ? '_' : cleaned;
}

/** Render sentences as CoNLL-U with sent_id and text comments. */
export function renderConllu(sentences: ParsedSentence[]): string {
  const out: string[] = [];
  sentences.forEach((sentence, index) => {
    out.push(`# sent_id = s${index + 1}`);
    out.push(`# text = ${sentence.text.replace(FIELD_SANITIZE, ' ')}`);
    sentence.tokens.forEach((tok, i) => {
      out.push(
        [
          String(i + 1),
          field(tok.surface),
          field(tok.lemma),
          field(tok.upos),
          '_',
          '_',
          String(tok.head),
          field(tok.deprel),
          '_',
          '_',
        ].join('\t')
      );
    });
    out.push('');
  });
  return out.length ? out.join('\n') + '\n' : '';
}

/** Structural validation mirroring the downstream reader's contract. */
export function validateConllu(text: string): string[] {
  const errors: string[] = [];
  let rows: Array<{ id: number; head: number }> = [];
  let sentence = 0;
  let lineno = 0;

  const flush = () => {
    if (!rows.length) return;
    sentence++;
    const n = rows.length;
    const roots = rows.filter((r) => r.head === 0);
    if (roots.length !== 1) {
      errors.push(`sentence ${sentence}: expected 1 root, found ${roots.length}`);
    }
    const headOf = new Map(rows.map((r) => [r.id, r.head]));
    for (const row of rows) {
      if (row.head < 0 || row.head > n) {
        errors.push(`sentence ${sentence}: head ${row.head} out of range`);
        continue;
      }
      if (row.head === row.id) {
        errors.push(`sentence ${sentence}: token ${row.id} is its own head`);
        continue;
      }
      let cur = row.id;
      let steps = 0;
      while (cur !== 0) {
        cur = headOf.get(cur) ?? -1;
        steps++;
        if (cur === -1 || steps > n) {
          errors.push(`sentence ${sentence}: token ${row.id} cannot reach the root`);
          break;
        }
      }
    }
    rows = [];
  };

  for (const raw of text.split('\n')) {
    lineno++;
    const line = raw.replace(/\r$/, '');
    if (line.trim() === '') {
      flush();
      continue;
    }
    if (line.startsWith('#')) continue;
    const cols = line.split('\t');
    if (cols.length !== 10) {
      errors.push(`line ${lineno}: expected 10 columns, got ${cols.length}`);
      continue;
    }
    if (/^\d+-\d+$/.test(cols[0]) || /^\d+\.\d+$/.test(cols[0])) continue;
    const id = Number(cols[0]);
    const head = Number(cols[6]);
    if (!Number.isInteger(id) || !Number.isInteger(head)) {
      errors.push(`line ${lineno}: non-integer ID or HEAD`);
      continue;
    }
    rows.push({ id, head });
  }
  flush();
  return errors;
}

/** Offset of the first invalid UTF-8 byte, or -1 when the buffer is valid. */
export function firstInvalidUtf8(buf: Buffer): number {
  let i = 0;
  while (i < buf.length) {
    const b = buf[i];
    let extra: number;
    if (b < 0x80) extra = 0;
    else if ((b & 0xe0) === 0xc0 && b >= 0xc2) extra = 1;
    else if ((b & 0xf0) === 0xe0) extra = 2;
    else if ((b & 0xf8) === 0xf0 && b <= 0xf4) extra = 3;
    else return i;
    for (let k = 1; k <= extra; k++) {
      if (i + k >= buf.length || (buf[i + k] & 0xc0) !== 0x80) return i;
    }
    i += extra + 1;
  }
  return -1;
}
