// Confirmation dialog: original text on the left, a word-level difference
// view of the proposed change on the right. An optional edit mode replaces
// the proposal; the difference view recomputes when edit mode closes, so
// what the user confirms is always the diff of what will actually land.

import type { ApiClient, ApiRequestError } from './api.js';
import { diffMarkup, diffTokens, stripTags, type Hunk } from './diff.js';
import type { ChildProposal, Suggestion, TreePayload } from './types.js';

export interface DialogOutcome {
  action: 'accepted' | 'rejected' | 'cancelled';
  editedPayload?: string;
}

function payloadText(suggestion: Suggestion): string {
  if (typeof suggestion.payload === 'string') return suggestion.payload;
  const items = Array.isArray(suggestion.payload)
    ? suggestion.payload
    : [suggestion.payload];
  return items
    .map((item: ChildProposal) => `<p><b>${item.title}</b></p>${item.content}`)
    .join('');
}

function originalText(suggestion: Suggestion, tree: TreePayload): string {
  const node = tree.nodes[suggestion.target];
  if (!node) return '';
  if (suggestion.kind === 'new_title') return node.title;
  if (suggestion.kind === 'new_content') return node.content;
  return ''; // child proposals diff against nothing
}

export function renderHunks(container: HTMLElement, hunks: Hunk[]): void {
  container.innerHTML = '';
  for (const hunk of hunks) {
    const span = document.createElement('span');
    span.className = `hunk hunk-${hunk.op}`;
    span.textContent = hunk.tokens.join(' ');
    container.append(span);
    container.append(document.createTextNode(' '));
  }
}

export class DiffDialog {
  private edited: string | null = null;

  constructor(
    private api: ApiClient,
    private docId: string,
  ) {}

  /** Builds the dialog element; resolve is called after accept/reject. */
  open(
    host: HTMLElement,
    suggestion: Suggestion,
    tree: TreePayload,
    onResolve: (outcome: DialogOutcome) => void,
  ): HTMLElement {
    this.edited = null;
    const dialog = document.createElement('div');
    dialog.className = 'confirm-dialog';
    dialog.dataset.suggestionId = suggestion.suggestion_id;

    const panes = document.createElement('div');
    panes.className = 'dialog-panes';
    const left = document.createElement('div');
    left.className = 'pane pane-original';
    left.textContent = stripTags(originalText(suggestion, tree)) || '(empty)';
    const right = document.createElement('div');
    right.className = 'pane pane-diff';
    panes.append(left, right);

    const refreshDiff = () => {
      const proposal = this.edited ?? payloadText(suggestion);
      const original = originalText(suggestion, tree);
      const hunks =
        suggestion.kind === 'new_title'
          ? diffTokens(
              original ? original.split(/\s+/) : [],
              proposal ? proposal.split(/\s+/) : [],
            )
          : diffMarkup(original, proposal);
      renderHunks(right, hunks);
    };
    refreshDiff();

    const editor = document.createElement('textarea');
    editor.className = 'dialog-editor';
    editor.value = payloadText(suggestion);
    editor.hidden = true;

    const editToggle = document.createElement('button');
    editToggle.className = 'dialog-edit';
    editToggle.textContent = 'edit';
    editToggle.addEventListener('click', () => {
      if (editor.hidden) {
        editor.hidden = false;
        editToggle.textContent = 'done editing';
      } else {
        editor.hidden = true;
        editToggle.textContent = 'edit';
        this.edited = editor.value;
        refreshDiff(); // the difference view updates once edit mode closes
      }
    });

    const accept = document.createElement('button');
    accept.className = 'dialog-accept';
    accept.textContent = 'accept';
    accept.addEventListener('click', async () => {
      try {
        const edited = this.editedPayload(suggestion);
        await this.api.accept(this.docId, suggestion.suggestion_id, edited);
        dialog.remove();
        onResolve({
          action: 'accepted',
          editedPayload: this.edited ?? undefined,
        });
      } catch (error) {
        this.showError(dialog, error as ApiRequestError);
      }
    });

    const reject = document.createElement('button');
    reject.className = 'dialog-reject';
    reject.textContent = 'reject';
    reject.addEventListener('click', async () => {
      try {
        await this.api.reject(this.docId, suggestion.suggestion_id);
        dialog.remove();
        onResolve({ action: 'rejected' });
      } catch (error) {
        this.showError(dialog, error as ApiRequestError);
      }
    });

    const buttons = document.createElement('div');
    buttons.className = 'dialog-buttons';
    buttons.append(editToggle, accept, reject);

    dialog.append(panes, editor, buttons);
    host.append(dialog);
    return dialog;
  }

  private editedPayload(
    suggestion: Suggestion,
  ): string | ChildProposal | ChildProposal[] | undefined {
    if (this.edited === null) return undefined;
    if (
      suggestion.kind === 'new_child' ||
      suggestion.kind === 'new_children_batch'
    ) {
      return JSON.parse(this.edited);
    }
    return this.edited;
  }

  private showError(dialog: HTMLElement, error: ApiRequestError): void {
    let banner = dialog.querySelector<HTMLElement>('.dialog-error');
    if (!banner) {
      banner = document.createElement('div');
      banner.className = 'dialog-error';
      dialog.prepend(banner);
    }
    // a 409 means someone resolved this suggestion elsewhere meanwhile
    banner.textContent =
      error.status === 409
        ? 'Already resolved elsewhere; refresh the suggestion list.'
        : `${error.code}: ${error.detail}`;
  }
}
