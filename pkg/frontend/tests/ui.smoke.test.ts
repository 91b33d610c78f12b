// UI smoke criteria, driven against the real server in replay mode
// (spawned by globalSetup with frozen chat fixtures).

import { beforeEach, describe, expect, it } from 'vitest';

import { ApiClient } from '../src/api.js';
import { App } from '../src/app.js';
import { BASE_URL } from './config.js';

const api = (): ApiClient =>
  new ApiClient(BASE_URL, (input, init) => fetch(input, init));

async function startApp(docId: string): Promise<{ app: App; host: HTMLElement }> {
  document.body.innerHTML = '';
  const host = document.createElement('div');
  document.body.append(host);
  const app = new App(host, api(), docId);
  await app.start();
  return { app, host };
}

async function waitFor(
  condition: () => boolean,
  what: string,
  timeoutMs = 10000,
): Promise<void> {
  const started = Date.now();
  while (!condition()) {
    if (Date.now() - started > timeoutMs) {
      throw new Error(`timed out waiting for ${what}`);
    }
    await new Promise((resolve) => setTimeout(resolve, 30));
  }
}

const CHAT_MESSAGE = 'Align this section with the parent outline.';

describe('UI smoke', () => {
  beforeEach(() => {
    document.body.innerHTML = '';
  });

  it('tree view renders the T1 cards', async () => {
    const { host } = await startApp('t1view');
    const cards = host.querySelectorAll<HTMLElement>('.card');
    expect(cards).toHaveLength(2);
    expect(
      [...cards].map((card) =>
        card.querySelector<HTMLInputElement>('.card-title')!.value,
      ),
    ).toEqual(['Alpha', 'Bravo']);
    expect([...cards].map((card) => card.dataset.nodeId)).toEqual(['A', 'B']);
    expect(cards[0].querySelector('.card-content')!.innerHTML).toBe('<p>pA</p>');
  });

  it('linear view shows the four preorder segments', async () => {
    const { app, host } = await startApp('t1view');
    app.state.setMode('linear');
    await waitFor(
      () => host.querySelectorAll('.segment').length === 4,
      'linear segments',
    );
    const segments = host.querySelectorAll<HTMLElement>('.segment');
    expect([...segments].map((s) => s.dataset.nodeId)).toEqual([
      'A',
      'B',
      'B1',
      'B2',
    ]);
    expect(segments[1].querySelector('.segment-fragment')!.innerHTML).toBe(
      '<p>eB</p>',
    );
  });

  it('confirm dialog accept updates the rendered node and version list', async () => {
    const docId = 't1accept';
    const { app, host } = await startApp(docId);
    const client = api();

    const reply = await client.chat(docId, 'B', CHAT_MESSAGE);
    expect(reply.suggestion_ids).toEqual(['s1']);

    app.state.setFocus('R');
    app.state.openDialog('s1');
    await waitFor(
      () => host.querySelector('.confirm-dialog') !== null,
      'confirm dialog',
    );
    const dialog = host.querySelector<HTMLElement>('.confirm-dialog')!;
    expect(dialog.querySelector('.pane-original')!.textContent).toContain(
      'outline B',
    );
    // proposal "aligned outline" vs original "outline B": "aligned" inserted,
    // "outline" kept, "B" (and the export payload) deleted
    expect(
      [...dialog.querySelectorAll('.hunk-insert')].map((h) => h.textContent),
    ).toContain('aligned');
    expect(
      [...dialog.querySelectorAll('.hunk-delete')].flatMap((h) =>
        h.textContent!.split(' '),
      ),
    ).toContain('B');

    dialog.querySelector<HTMLButtonElement>('.dialog-accept')!.click();
    await waitFor(
      () =>
        host
          .querySelector('[data-node-id="B"] .card-content')
          ?.innerHTML.includes('aligned outline') === true,
      'node re-render after accept',
    );

    const versions = await client.versions(docId, 'B');
    expect(versions).toHaveLength(1);
    expect(versions[0].label).toBe('AI: assistant');
    expect(versions[0].content_snapshot).toBe('<p>aligned outline</p>');
  });

  it('edited-accept submits the edited payload', async () => {
    const docId = 't1edit';
    const { app, host } = await startApp(docId);
    const client = api();

    await client.chat(docId, 'B', CHAT_MESSAGE);
    app.state.openDialog('s1');
    await waitFor(
      () => host.querySelector('.confirm-dialog') !== null,
      'confirm dialog',
    );
    const dialog = host.querySelector<HTMLElement>('.confirm-dialog')!;

    const editToggle = dialog.querySelector<HTMLButtonElement>('.dialog-edit')!;
    editToggle.click(); // enter edit mode
    const editor = dialog.querySelector<HTMLTextAreaElement>('.dialog-editor')!;
    expect(editor.hidden).toBe(false);
    editor.value = '<p>my edited take</p>';
    editToggle.click(); // leave edit mode; the diff pane refreshes

    expect(
      [...dialog.querySelectorAll('.hunk-insert')].map((h) => h.textContent),
    ).toContain('my edited take');

    dialog.querySelector<HTMLButtonElement>('.dialog-accept')!.click();
    await waitFor(
      () => host.querySelector('.confirm-dialog') === null,
      'dialog closed',
    );

    const tree = await client.tree(docId);
    expect(tree.nodes.B.content).toBe('<p>my edited take</p>');
    const versions = await client.versions(docId, 'B');
    expect(versions[0].content_snapshot).toBe('<p>my edited take</p>');
  });

  it('drag reorder lands on the server and the view re-renders', async () => {
    const docId = 't1drag';
    const { host } = await startApp(docId);
    const client = api();

    // happy-dom's DragEvent does not carry dataTransfer, so drive the drop
    // handler's target directly: move B before A under the focus node
    const { TreeView } = await import('../src/treeView.js');
    const { ViewState } = await import('../src/state.js');
    const tree = await client.tree(docId);
    const state = new ViewState(tree.root);
    const scratch = document.createElement('div');
    let mutated = false;
    const view = new TreeView(scratch, client, docId, state, () => {
      mutated = true;
    });
    await view.reorder(tree, 'B', 0);
    expect(mutated).toBe(true);

    const after = await client.tree(docId);
    expect(after.nodes.R.children).toEqual(['B', 'A']);

    // a full app refresh re-renders the new order
    const { app } = await startApp(docId);
    app.state.setFocus(after.root);
    await waitFor(
      () =>
        [
          ...document.querySelectorAll<HTMLElement>('.card'),
        ].map((c) => c.dataset.nodeId)[0] === 'B',
      'reordered cards',
    );
    expect(host).toBeDefined();
  });

  it('view switching preserves focus and selection', async () => {
    const { app, host } = await startApp('t1switch');
    app.state.setFocus('B');
    app.state.select('B1');
    app.state.toggleMark('B2');
    const before = app.state.snapshot();

    app.state.setMode('linear');
    await waitFor(
      () => host.querySelectorAll('.segment').length === 3,
      'subtree segments',
    );
    // linear mode shows exactly the focused subtree's slice
    expect(
      [...host.querySelectorAll<HTMLElement>('.segment')].map(
        (s) => s.dataset.nodeId,
      ),
    ).toEqual(['B', 'B1', 'B2']);

    app.state.setMode('tree');
    await waitFor(
      () => host.querySelectorAll('.card').length === 2,
      'tree cards back',
    );
    expect(app.state.snapshot()).toEqual({ ...before, mode: 'tree' });
    const selected = host.querySelector<HTMLElement>('.card.selected');
    expect(selected?.dataset.nodeId).toBe('B1');
  });
});
