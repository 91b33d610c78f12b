// Typed client over the treedoc HTTP API. Every document write the UI makes
// goes through these endpoints; there is no client-side tree mutation that
// could bypass the suggestion review gate.

import type {
  ChatReply,
  ChildProposal,
  LinearPayload,
  SearchHit,
  Suggestion,
  TreePayload,
  Version,
} from './types.js';

export class ApiRequestError extends Error {
  constructor(
    public status: number,
    public code: string,
    public detail: string,
  ) {
    super(`${code}: ${detail}`);
  }
}

type FetchFn = typeof fetch;

export class ApiClient {
  constructor(
    private baseUrl: string,
    private fetchFn: FetchFn = (...args) => globalThis.fetch(...args),
  ) {}

  private async call<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, {
      method,
      headers: body === undefined ? {} : { 'content-type': 'application/json' },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const text = await response.text();
    const payload = text ? JSON.parse(text) : {};
    if (!response.ok) {
      throw new ApiRequestError(
        response.status,
        payload.error ?? `http_${response.status}`,
        payload.detail ?? text,
      );
    }
    return payload as T;
  }

  createDoc(title: string): Promise<{ doc_id: string; root: string }> {
    return this.call('POST', '/docs', { title });
  }

  tree(docId: string): Promise<TreePayload> {
    return this.call('GET', `/docs/${docId}/tree`);
  }

  addNode(
    docId: string,
    parent: string,
    title: string,
    content = '',
    position?: number,
  ): Promise<{ id: string }> {
    return this.call('POST', `/docs/${docId}/nodes`, {
      parent,
      title,
      content,
      position: position ?? null,
    });
  }

  patchNode(
    docId: string,
    nodeId: string,
    patch: { title?: string; content?: string },
  ): Promise<void> {
    return this.call('PATCH', `/docs/${docId}/nodes/${nodeId}`, patch);
  }

  deleteNode(docId: string, nodeId: string): Promise<{ removed: number }> {
    return this.call('DELETE', `/docs/${docId}/nodes/${nodeId}`);
  }

  moveNode(
    docId: string,
    nodeId: string,
    newParent: string,
    position: number,
  ): Promise<void> {
    return this.call('POST', `/docs/${docId}/nodes/${nodeId}/move`, {
      new_parent: newParent,
      position,
    });
  }

  linear(
    docId: string,
    root?: string,
    format: 'html' | 'markdown' = 'html',
    headings: 'on' | 'off' = 'on',
  ): Promise<LinearPayload> {
    const params = new URLSearchParams({ format, headings });
    if (root) params.set('root', root);
    return this.call('GET', `/docs/${docId}/linear?${params}`);
  }

  search(docId: string, q: string): Promise<SearchHit[]> {
    const params = new URLSearchParams({ q });
    return this.call('GET', `/docs/${docId}/search?${params}`);
  }

  aiOp(
    docId: string,
    nodeId: string,
    op: 'split' | 'outline_from_children' | 'paragraph' | 'outline_from_paragraph',
    userPrompt?: string,
  ): Promise<{ suggestion_id: string }> {
    return this.call('POST', `/docs/${docId}/nodes/${nodeId}/ai/${op}`, {
      user_prompt: userPrompt ?? null,
    });
  }

  chat(
    docId: string,
    selected: string,
    message: string,
    sessionId?: string,
    marked?: string[],
  ): Promise<ChatReply> {
    return this.call('POST', `/docs/${docId}/chat`, {
      session_id: sessionId ?? null,
      selected,
      marked: marked ?? null,
      message,
    });
  }

  suggestions(docId: string, status?: string): Promise<Suggestion[]> {
    const params = status ? `?${new URLSearchParams({ status })}` : '';
    return this.call('GET', `/docs/${docId}/suggestions${params}`);
  }

  accept(
    docId: string,
    suggestionId: string,
    editedPayload?: string | ChildProposal | ChildProposal[],
  ): Promise<{ nodes: string[] }> {
    return this.call('POST', `/docs/${docId}/suggestions/${suggestionId}/accept`, {
      edited_payload: editedPayload ?? null,
    });
  }

  reject(docId: string, suggestionId: string): Promise<void> {
    return this.call('POST', `/docs/${docId}/suggestions/${suggestionId}/reject`, {});
  }

  versions(docId: string, nodeId: string): Promise<Version[]> {
    return this.call('GET', `/docs/${docId}/nodes/${nodeId}/versions`);
  }

  restore(docId: string, nodeId: string, seq: number): Promise<void> {
    return this.call('POST', `/docs/${docId}/nodes/${nodeId}/versions/${seq}/restore`);
  }
}
