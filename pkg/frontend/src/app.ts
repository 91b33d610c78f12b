// Three-column application shell: tree navigator | tree-or-linear view |
// chat + AI buttons. The middle column is driven by the shared ViewState;
// switching views keeps focus and selection.

import { ApiClient } from './api.js';
import { ChatPanel } from './chatPanel.js';
import { DiffDialog } from './diffDialog.js';
import { LinearView } from './linearView.js';
import { ViewState } from './state.js';
import { TreeView, findParent } from './treeView.js';
import type { TreePayload } from './types.js';

export class App {
  state!: ViewState;
  tree!: TreePayload;
  private navigator!: HTMLElement;
  private middle!: HTMLElement;
  private treeView!: TreeView;
  private linearView!: LinearView;
  private chatPanel!: ChatPanel;
  private dialog!: DiffDialog;
  private rendering = Promise.resolve();

  constructor(
    private root: HTMLElement,
    private api: ApiClient,
    private docId: string,
  ) {}

  async start(): Promise<void> {
    this.tree = await this.api.tree(this.docId);
    this.state = new ViewState(this.tree.root);
    this.dialog = new DiffDialog(this.api, this.docId);

    this.root.innerHTML = '';
    this.root.className = 'app';

    const left = document.createElement('aside');
    left.className = 'column column-left';
    const switcher = document.createElement('div');
    switcher.className = 'view-switcher';
    const treeButton = document.createElement('button');
    treeButton.className = 'switch-tree';
    treeButton.textContent = 'Tree';
    treeButton.addEventListener('click', () => this.state.setMode('tree'));
    const linearButton = document.createElement('button');
    linearButton.className = 'switch-linear';
    linearButton.textContent = 'Linear';
    linearButton.addEventListener('click', () => this.state.setMode('linear'));
    switcher.append(treeButton, linearButton);
    this.navigator = document.createElement('nav');
    this.navigator.className = 'navigator';
    left.append(switcher, this.navigator);

    this.middle = document.createElement('main');
    this.middle.className = 'column column-middle';

    const right = document.createElement('aside');
    right.className = 'column column-right';

    this.root.append(left, this.middle, right);

    this.treeView = new TreeView(this.middle, this.api, this.docId, this.state,
      () => void this.refresh());
    this.linearView = new LinearView(this.middle, this.api, this.docId,
      this.state, () => void this.refresh());
    this.chatPanel = new ChatPanel(right, this.api, this.docId, this.state,
      (suggestionId) => this.state.openDialog(suggestionId));
    this.chatPanel.render();

    this.state.onChange(() => void this.renderMiddle());
    await this.renderMiddle();
  }

  /** Re-fetch the tree after any mutation, then re-render. */
  async refresh(): Promise<void> {
    this.tree = await this.api.tree(this.docId);
    if (!this.tree.nodes[this.state.focusNode]) {
      this.state.focusNode = this.tree.root;
    }
    if (!this.tree.nodes[this.state.selectedNode]) {
      this.state.selectedNode = this.tree.root;
    }
    await this.renderMiddle();
  }

  private renderMiddle(): Promise<void> {
    // serialize renders so a slow /linear fetch cannot clobber a newer view
    this.rendering = this.rendering.then(() => this.renderMiddleNow());
    return this.rendering;
  }

  private async renderMiddleNow(): Promise<void> {
    this.renderNavigator();
    if (this.state.mode === 'tree') {
      this.treeView.render(this.tree);
    } else {
      const linear = await this.linearView.load();
      this.linearView.render(this.tree, linear);
    }
    await this.renderDialog();
  }

  private renderNavigator(): void {
    this.navigator.innerHTML = '';
    const walk = (nodeId: string, depth: number) => {
      const node = this.tree.nodes[nodeId];
      const entry = document.createElement('div');
      entry.className = 'nav-entry';
      entry.dataset.nodeId = nodeId;
      entry.style.paddingLeft = `${depth * 12}px`;
      entry.textContent = node.title || '(untitled)';
      if (nodeId === this.state.focusNode) entry.classList.add('focused');
      entry.addEventListener('click', () => {
        this.state.select(nodeId);
        this.state.setFocus(nodeId);
      });
      this.navigator.append(entry);
      for (const child of node.children) walk(child, depth + 1);
    };
    walk(this.tree.root, 0);
  }

  private async renderDialog(): Promise<void> {
    const open = this.root.querySelector('.confirm-dialog');
    if (open) open.remove();
    if (!this.state.openSuggestion) return;
    const pending = await this.api.suggestions(this.docId);
    const suggestion = pending.find(
      (s) => s.suggestion_id === this.state.openSuggestion,
    );
    if (!suggestion || suggestion.status !== 'pending') {
      this.state.openSuggestion = null;
      return;
    }
    this.dialog.open(this.root, suggestion, this.tree, () => {
      this.state.openSuggestion = null;
      void this.refresh();
    });
  }
}

export { ApiClient, ViewState, findParent };
