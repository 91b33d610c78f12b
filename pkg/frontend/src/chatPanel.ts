// Right column: chat with the writing assistant, AI editing buttons for the
// selected node, and the document search box.
//
// Assistant suggestions arrive as clickable cards: blue for content/title
// changes, green for new children. Clicking one opens the confirmation
// dialog; the document only changes if the user accepts there.

import type { ApiClient } from './api.js';
import type { ViewState } from './state.js';
import type { Suggestion } from './types.js';

const AI_BUTTONS: Array<{
  op: 'split' | 'outline_from_children' | 'paragraph' | 'outline_from_paragraph';
  label: string;
}> = [
  { op: 'split', label: 'Split into subsections' },
  { op: 'outline_from_children', label: 'Generate outline from children' },
  { op: 'paragraph', label: 'Generate paragraph' },
  { op: 'outline_from_paragraph', label: 'Generate outline' },
];

export class ChatPanel {
  private sessionId: string | undefined;
  private log!: HTMLElement;
  private results!: HTMLElement;

  constructor(
    private root: HTMLElement,
    private api: ApiClient,
    private docId: string,
    private state: ViewState,
    private onSuggestion: (suggestionId: string) => void,
  ) {}

  render(): void {
    this.root.innerHTML = '';
    this.root.className = 'chat-panel';

    const searchBox = document.createElement('div');
    searchBox.className = 'search-box';
    const searchInput = document.createElement('input');
    searchInput.placeholder = 'search document';
    const searchButton = document.createElement('button');
    searchButton.className = 'search-go';
    searchButton.textContent = 'search';
    this.results = document.createElement('ul');
    this.results.className = 'search-results';
    searchButton.addEventListener('click', async () => {
      const hits = await this.api.search(this.docId, searchInput.value);
      this.results.innerHTML = '';
      for (const hit of hits) {
        const item = document.createElement('li');
        item.dataset.nodeId = hit.id;
        item.textContent = `${hit.title || '(untitled)'} — ${hit.snippet}`;
        item.addEventListener('click', () => {
          this.state.select(hit.id);
          this.state.setMode('tree');
        });
        this.results.append(item);
      }
    });
    searchBox.append(searchInput, searchButton, this.results);
    this.root.append(searchBox);

    this.log = document.createElement('div');
    this.log.className = 'chat-log';
    this.root.append(this.log);

    const composer = document.createElement('div');
    composer.className = 'composer';
    const input = document.createElement('textarea');
    input.placeholder = 'ask the writing assistant';
    const send = document.createElement('button');
    send.className = 'chat-send';
    send.textContent = 'send';
    send.addEventListener('click', async () => {
      const message = input.value.trim();
      if (!message) return;
      input.value = '';
      this.addMessage('user', message);
      await this.sendTurn(message);
    });
    const reset = document.createElement('button');
    reset.className = 'chat-reset';
    reset.textContent = 'reset';
    reset.addEventListener('click', () => {
      this.sessionId = undefined;
      this.log.innerHTML = '';
    });
    composer.append(input, send, reset);
    this.root.append(composer);

    const buttons = document.createElement('div');
    buttons.className = 'ai-buttons';
    for (const { op, label } of AI_BUTTONS) {
      const button = document.createElement('button');
      button.className = `ai-${op}`;
      button.textContent = label;
      button.addEventListener('click', async () => {
        try {
          const { suggestion_id } = await this.api.aiOp(
            this.docId,
            this.state.selectedNode,
            op,
          );
          this.addSuggestionCard(suggestion_id, op === 'split');
        } catch (error) {
          this.addMessage('error', String(error));
        }
      });
      buttons.append(button);
    }
    this.root.append(buttons);
  }

  private async sendTurn(message: string): Promise<void> {
    try {
      const reply = await this.api.chat(
        this.docId,
        this.state.selectedNode,
        message,
        this.sessionId,
        [...this.state.markedNodes],
      );
      this.sessionId = reply.session_id;
      if (reply.assistant_text) {
        this.addMessage('assistant', reply.assistant_text);
      }
      const pending = await this.api.suggestions(this.docId, 'pending');
      const byId = new Map(pending.map((s) => [s.suggestion_id, s]));
      for (const suggestionId of reply.suggestion_ids) {
        const suggestion = byId.get(suggestionId);
        const isChild =
          suggestion !== undefined &&
          (suggestion.kind === 'new_child' ||
            suggestion.kind === 'new_children_batch');
        this.addSuggestionCard(suggestionId, isChild, suggestion);
      }
    } catch (error) {
      this.addMessage('error', String(error));
    }
  }

  private addMessage(role: string, text: string): void {
    const entry = document.createElement('div');
    entry.className = `chat-message chat-${role}`;
    entry.textContent = text;
    this.log.append(entry);
  }

  /** Blue card for title/content changes, green for new children. */
  addSuggestionCard(
    suggestionId: string,
    isChildSuggestion: boolean,
    suggestion?: Suggestion,
  ): void {
    const card = document.createElement('button');
    card.className = `suggestion-card ${
      isChildSuggestion ? 'suggestion-green' : 'suggestion-blue'
    }`;
    card.dataset.suggestionId = suggestionId;
    const kind = suggestion?.kind ?? (isChildSuggestion ? 'new child' : 'change');
    card.textContent = `Suggestion ${suggestionId}: ${kind} — click to review`;
    card.addEventListener('click', () => this.onSuggestion(suggestionId));
    this.log.append(card);
  }
}
