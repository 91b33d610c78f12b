import { describe, expect, it } from 'vitest';

import { diffMarkup, diffTokens, stripTags, tokenize } from '../src/diff.js';

describe('stripTags', () => {
  it('removes markup and keeps inline spacing', () => {
    expect(stripTags('<p>a <b>b</b></p>')).toBe('a b');
  });

  it('turns list items into lines', () => {
    expect(stripTags('<ul><li>x</li><li>y</li></ul>')).toBe('x\ny');
  });

  it('unescapes entities', () => {
    expect(stripTags('<p>a &amp; b &lt; c</p>')).toBe('a & b < c');
  });
});

describe('diffTokens', () => {
  it('single substitution, deletes before inserts', () => {
    const hunks = diffMarkup('<p>a b c</p>', '<p>a x c</p>');
    expect(hunks).toEqual([
      { op: 'keep', tokens: ['a'] },
      { op: 'delete', tokens: ['b'] },
      { op: 'insert', tokens: ['x'] },
      { op: 'keep', tokens: ['c'] },
    ]);
  });

  it('identity yields a single keep hunk', () => {
    expect(diffTokens(['a', 'b'], ['a', 'b'])).toEqual([
      { op: 'keep', tokens: ['a', 'b'] },
    ]);
  });

  it('keep+insert replays the new stream', () => {
    const oldTokens = tokenize('<p>one two three four</p>');
    const newTokens = tokenize('<p>one three five four</p>');
    const replayed = diffTokens(oldTokens, newTokens)
      .filter((hunk) => hunk.op !== 'delete')
      .flatMap((hunk) => hunk.tokens);
    expect(replayed).toEqual(newTokens);
  });

  it('empty against content is all inserts', () => {
    expect(diffTokens([], ['x'])).toEqual([{ op: 'insert', tokens: ['x'] }]);
  });
});
