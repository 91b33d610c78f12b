// Wire types for the treedoc HTTP API.

export interface NodeRecord {
  title: string;
  content: string;
  children: string[];
}

export interface TreePayload {
  format: string;
  doc_id: string;
  root: string;
  nodes: Record<string, NodeRecord>;
  created_ms: number;
  modified_ms: number;
}

export interface Segment {
  node_id: string;
  depth: number;
  fragment: string;
}

export interface LinearPayload {
  text: string;
  segments: Segment[];
}

export type SuggestionKind =
  | 'new_title'
  | 'new_content'
  | 'new_child'
  | 'new_children_batch';

export interface ChildProposal {
  title: string;
  content: string;
}

export interface Suggestion {
  suggestion_id: string;
  kind: SuggestionKind;
  target: string;
  payload: string | ChildProposal | ChildProposal[];
  origin: string;
  status: 'pending' | 'accepted' | 'rejected';
  created_ms: number;
}

export interface Version {
  node_id: string;
  seq: number;
  label: string;
  title_snapshot: string;
  content_snapshot: string;
  created_ms: number;
}

export interface SearchHit {
  id: string;
  title: string;
  snippet: string;
}

export interface ChatReply {
  session_id: string;
  assistant_text: string;
  suggestion_ids: string[];
  budget_exhausted: boolean;
}

export interface ApiError {
  error: string;
  detail: string;
}
