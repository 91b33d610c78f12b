// Word-level diff for the confirmation dialog, matching the engine's
// behavior: LCS over whitespace tokens of the tags-stripped text, earliest
// match preferred, deletes before inserts inside a replacement.

export type HunkOp = 'keep' | 'delete' | 'insert';

export interface Hunk {
  op: HunkOp;
  tokens: string[];
}

export function stripTags(markup: string): string {
  const blockBreaks = markup.replace(/<\/(p|li|ul|ol|div)>/g, '\n');
  const text = blockBreaks.replace(/<[^>]+>/g, '');
  const unescaped = text
    .replace(/&lt;/g, '<')
    .replace(/&gt;/g, '>')
    .replace(/&quot;/g, '"')
    .replace(/&amp;/g, '&');
  return unescaped
    .split('\n')
    .map((line) => line.replace(/\s+/g, ' ').trim())
    .filter((line) => line.length > 0)
    .join('\n');
}

export function tokenize(markup: string): string[] {
  const text = stripTags(markup);
  return text.length ? text.split(/\s+/) : [];
}

export function diffTokens(oldTokens: string[], newTokens: string[]): Hunk[] {
  if (
    oldTokens.length === newTokens.length &&
    oldTokens.every((tok, i) => tok === newTokens[i])
  ) {
    return oldTokens.length ? [{ op: 'keep', tokens: [...oldTokens] }] : [];
  }

  let lo = 0;
  while (
    lo < oldTokens.length &&
    lo < newTokens.length &&
    oldTokens[lo] === newTokens[lo]
  ) {
    lo += 1;
  }
  let hi = 0;
  while (
    hi < oldTokens.length - lo &&
    hi < newTokens.length - lo &&
    oldTokens[oldTokens.length - 1 - hi] === newTokens[newTokens.length - 1 - hi]
  ) {
    hi += 1;
  }
  const a = oldTokens.slice(lo, oldTokens.length - hi);
  const b = newTokens.slice(lo, newTokens.length - hi);

  const m = a.length;
  const n = b.length;
  // lcs[i][j] = LCS length of a.slice(i) vs b.slice(j)
  const lcs: number[][] = Array.from({ length: m + 1 }, () =>
    new Array<number>(n + 1).fill(0),
  );
  for (let i = m - 1; i >= 0; i -= 1) {
    for (let j = n - 1; j >= 0; j -= 1) {
      lcs[i][j] =
        a[i] === b[j]
          ? lcs[i + 1][j + 1] + 1
          : Math.max(lcs[i + 1][j], lcs[i][j + 1]);
    }
  }

  const ops: Array<[HunkOp, string]> = oldTokens
    .slice(0, lo)
    .map((tok) => ['keep', tok] as [HunkOp, string]);
  let i = 0;
  let j = 0;
  while (i < m && j < n) {
    if (a[i] === b[j]) {
      ops.push(['keep', a[i]]);
      i += 1;
      j += 1;
    } else if (lcs[i + 1][j] >= lcs[i][j + 1]) {
      ops.push(['delete', a[i]]);
      i += 1;
    } else {
      ops.push(['insert', b[j]]);
      j += 1;
    }
  }
  for (; i < m; i += 1) ops.push(['delete', a[i]]);
  for (; j < n; j += 1) ops.push(['insert', b[j]]);
  for (const tok of oldTokens.slice(oldTokens.length - hi)) {
    ops.push(['keep', tok]);
  }

  const hunks: Hunk[] = [];
  for (const [op, tok] of ops) {
    const last = hunks[hunks.length - 1];
    if (last && last.op === op) {
      last.tokens.push(tok);
    } else {
      hunks.push({ op, tokens: [tok] });
    }
  }
  return hunks;
}

export function diffMarkup(oldMarkup: string, newMarkup: string): Hunk[] {
  return diffTokens(tokenize(oldMarkup), tokenize(newMarkup));
}
