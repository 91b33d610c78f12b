// Tree view: the focus node's children rendered as editable cards.
//
// Card controls mirror the node card affordances: navigate to parent,
// open children, add a child, delete the node. Clicking a card toggles its
// blue-dot mark (context for the assistant); drag-and-drop reorders
// siblings through the move endpoint. Enter on a card opens its children,
// Escape collapses back to the parent.

import type { ApiClient } from './api.js';
import type { ViewState } from './state.js';
import type { TreePayload } from './types.js';

export class TreeView {
  constructor(
    private root: HTMLElement,
    private api: ApiClient,
    private docId: string,
    private state: ViewState,
    private onMutated: () => void,
  ) {}

  render(tree: TreePayload): void {
    this.root.innerHTML = '';
    this.root.className = 'tree-view';
    const focus = tree.nodes[this.state.focusNode];
    if (!focus) return;

    const header = document.createElement('div');
    header.className = 'tree-view-header';
    const upButton = document.createElement('button');
    upButton.textContent = '↑ parent';
    upButton.className = 'nav-up';
    upButton.disabled = this.state.focusNode === tree.root;
    upButton.addEventListener('click', () => {
      const parent = findParent(tree, this.state.focusNode);
      if (parent) this.state.setFocus(parent);
    });
    const title = document.createElement('span');
    title.className = 'focus-title';
    title.textContent = focus.title || '(untitled)';
    header.append(upButton, title);
    this.root.append(header);

    const cards = document.createElement('div');
    cards.className = 'cards';
    focus.children.forEach((childId, index) => {
      cards.append(this.card(tree, childId, index));
    });
    this.root.append(cards);

    const addButton = document.createElement('button');
    addButton.className = 'add-child';
    addButton.textContent = '+ add child';
    addButton.addEventListener('click', async () => {
      await this.api.addNode(this.docId, this.state.focusNode, 'New node');
      this.onMutated();
    });
    this.root.append(addButton);
  }

  private card(tree: TreePayload, nodeId: string, index: number): HTMLElement {
    const node = tree.nodes[nodeId];
    const card = document.createElement('article');
    card.className = 'card';
    card.dataset.nodeId = nodeId;
    card.tabIndex = 0;
    card.draggable = true;
    if (this.state.markedNodes.has(nodeId)) card.classList.add('marked');
    if (this.state.selectedNode === nodeId) card.classList.add('selected');

    const dot = document.createElement('span');
    dot.className = 'blue-dot';
    dot.title = 'marked as assistant context';
    card.append(dot);

    const titleInput = document.createElement('input');
    titleInput.className = 'card-title';
    titleInput.value = node.title;
    titleInput.addEventListener('change', async () => {
      await this.api.patchNode(this.docId, nodeId, { title: titleInput.value });
      this.onMutated();
    });
    card.append(titleInput);

    const content = document.createElement('div');
    content.className = 'card-content';
    content.innerHTML = node.content;
    card.append(content);

    const editor = document.createElement('textarea');
    editor.className = 'card-editor';
    editor.value = node.content;
    editor.hidden = true;
    editor.addEventListener('change', async () => {
      await this.api.patchNode(this.docId, nodeId, { content: editor.value });
      editor.hidden = true;
      this.onMutated();
    });
    card.append(editor);

    const controls = document.createElement('div');
    controls.className = 'card-controls';
    controls.append(
      this.control('edit', () => {
        editor.hidden = !editor.hidden;
      }),
      this.control('children', () => {
        this.state.select(nodeId);
        this.state.setFocus(nodeId);
      }),
      this.control('add child', async () => {
        await this.api.addNode(this.docId, nodeId, 'New node');
        this.onMutated();
      }),
      this.control('delete', async () => {
        await this.api.deleteNode(this.docId, nodeId);
        if (this.state.selectedNode === nodeId) this.state.select(tree.root);
        this.onMutated();
      }),
    );
    card.append(controls);

    // click to mark/unmark; the selection used for AI context follows the
    // last card interacted with
    card.addEventListener('click', (event) => {
      if (
        event.target instanceof HTMLButtonElement ||
        event.target instanceof HTMLInputElement ||
        event.target instanceof HTMLTextAreaElement
      ) {
        return;
      }
      this.state.select(nodeId);
      this.state.toggleMark(nodeId);
    });

    card.addEventListener('keydown', (event) => {
      if (event.key === 'Enter' && event.target === card) {
        this.state.select(nodeId);
        this.state.setFocus(nodeId);
      } else if (event.key === 'Escape') {
        const parent = findParent(tree, this.state.focusNode);
        if (parent) this.state.setFocus(parent);
      }
    });

    card.addEventListener('dragstart', (event) => {
      event.dataTransfer?.setData('text/treedoc-node', nodeId);
    });
    card.addEventListener('dragover', (event) => event.preventDefault());
    card.addEventListener('drop', async (event) => {
      event.preventDefault();
      const dragged = event.dataTransfer?.getData('text/treedoc-node');
      if (dragged && dragged !== nodeId) {
        await this.reorder(tree, dragged, index);
      }
    });

    return card;
  }

  /** Drop handler target: move `dragged` to `position` under the focus node. */
  async reorder(tree: TreePayload, dragged: string, position: number): Promise<void> {
    await this.api.moveNode(this.docId, dragged, this.state.focusNode, position);
    this.onMutated();
  }

  private control(label: string, onClick: () => void): HTMLButtonElement {
    const button = document.createElement('button');
    button.textContent = label;
    button.className = `ctl-${label.replace(' ', '-')}`;
    button.addEventListener('click', onClick);
    return button;
  }
}

export function findParent(tree: TreePayload, nodeId: string): string | null {
  for (const [id, node] of Object.entries(tree.nodes)) {
    if (node.children.includes(nodeId)) return id;
  }
  return null;
}
