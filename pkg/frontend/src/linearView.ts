// Linear view: the focus node's subtree as the composed document.
//
// Each exported segment gets a floating menu on click: jump to the node in
// the tree view, focus the reading scope on its subtree, or edit the whole
// node content in place (including the parts that are not exported).
// A breadcrumb expands the scope back toward the ancestors.

import type { ApiClient } from './api.js';
import type { ViewState } from './state.js';
import type { LinearPayload, TreePayload } from './types.js';
import { findParent } from './treeView.js';

export class LinearView {
  constructor(
    private root: HTMLElement,
    private api: ApiClient,
    private docId: string,
    private state: ViewState,
    private onMutated: () => void,
  ) {}

  async load(): Promise<LinearPayload> {
    return this.api.linear(this.docId, this.state.focusNode, 'html', 'off');
  }

  render(tree: TreePayload, linear: LinearPayload): void {
    this.root.innerHTML = '';
    this.root.className = 'linear-view';

    const breadcrumb = document.createElement('div');
    breadcrumb.className = 'breadcrumb';
    const expand = document.createElement('button');
    expand.className = 'scope-up';
    expand.textContent = '⌃ expand scope';
    expand.disabled = this.state.focusNode === tree.root;
    expand.addEventListener('click', () => {
      const parent = findParent(tree, this.state.focusNode);
      if (parent) this.state.setFocus(parent);
    });
    const scope = document.createElement('span');
    scope.textContent = tree.nodes[this.state.focusNode]?.title || '(document)';
    breadcrumb.append(expand, scope);
    this.root.append(breadcrumb);

    const body = document.createElement('div');
    body.className = 'linear-body';
    for (const segment of linear.segments) {
      const block = document.createElement('section');
      block.className = 'segment';
      block.dataset.nodeId = segment.node_id;
      block.dataset.depth = String(segment.depth);

      const title = tree.nodes[segment.node_id]?.title;
      if (title) {
        const level = Math.min(Math.max(segment.depth, 1), 6);
        const heading = document.createElement(`h${level}`);
        heading.textContent = title;
        block.append(heading);
      }
      const fragment = document.createElement('div');
      fragment.className = 'segment-fragment';
      fragment.innerHTML = segment.fragment;
      block.append(fragment);

      block.addEventListener('click', () => this.openMenu(tree, block, segment.node_id));
      body.append(block);
    }
    this.root.append(body);
  }

  private openMenu(tree: TreePayload, block: HTMLElement, nodeId: string): void {
    const existing = block.querySelector('.segment-menu');
    if (existing) {
      existing.remove();
      return;
    }
    this.root
      .querySelectorAll('.segment-menu')
      .forEach((menu) => menu.remove());

    const menu = document.createElement('div');
    menu.className = 'segment-menu';

    const jump = document.createElement('button');
    jump.className = 'menu-jump';
    jump.textContent = 'open in tree';
    jump.addEventListener('click', (event) => {
      event.stopPropagation();
      this.state.select(nodeId);
      this.state.setFocus(findParent(tree, nodeId) ?? tree.root);
      this.state.setMode('tree');
    });

    const focus = document.createElement('button');
    focus.className = 'menu-focus';
    focus.textContent = 'focus subtree';
    focus.addEventListener('click', (event) => {
      event.stopPropagation();
      this.state.setFocus(nodeId);
    });

    const edit = document.createElement('button');
    edit.className = 'menu-edit';
    edit.textContent = 'edit node';
    edit.addEventListener('click', (event) => {
      event.stopPropagation();
      this.openEditor(menu, tree, nodeId);
    });

    menu.append(jump, focus, edit);
    block.append(menu);
  }

  private openEditor(menu: HTMLElement, tree: TreePayload, nodeId: string): void {
    const editor = document.createElement('textarea');
    editor.className = 'segment-editor';
    // whole node content, including the parts that are not exported
    editor.value = tree.nodes[nodeId].content;
    const save = document.createElement('button');
    save.className = 'menu-save';
    save.textContent = 'save';
    save.addEventListener('click', async (event) => {
      event.stopPropagation();
      await this.api.patchNode(this.docId, nodeId, { content: editor.value });
      this.onMutated();
    });
    menu.append(editor, save);
  }
}
