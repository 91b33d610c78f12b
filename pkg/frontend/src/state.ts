// View state shared by the three columns. Switching between tree and linear
// mode is lossless: focus, selection, and marks survive the mode flip.

export type ViewMode = 'tree' | 'linear';

export interface ViewStateSnapshot {
  mode: ViewMode;
  focusNode: string;
  selectedNode: string;
  markedNodes: string[];
  openSuggestion: string | null;
}

type Listener = (state: ViewState) => void;

export class ViewState {
  mode: ViewMode = 'tree';
  focusNode: string;
  selectedNode: string;
  markedNodes = new Set<string>();
  openSuggestion: string | null = null;

  private listeners: Listener[] = [];

  constructor(root: string) {
    this.focusNode = root;
    this.selectedNode = root;
  }

  onChange(listener: Listener): void {
    this.listeners.push(listener);
  }

  private emit(): void {
    for (const listener of this.listeners) listener(this);
  }

  setMode(mode: ViewMode): void {
    if (this.mode !== mode) {
      this.mode = mode;
      this.emit();
    }
  }

  setFocus(nodeId: string): void {
    if (this.focusNode !== nodeId) {
      this.focusNode = nodeId;
      this.emit();
    }
  }

  select(nodeId: string): void {
    this.selectedNode = nodeId;
    this.emit();
  }

  /** Click-to-mark: toggles the blue-dot mark that feeds assistant context. */
  toggleMark(nodeId: string): void {
    if (this.markedNodes.has(nodeId)) {
      this.markedNodes.delete(nodeId);
    } else {
      this.markedNodes.add(nodeId);
    }
    this.emit();
  }

  openDialog(suggestionId: string): void {
    this.openSuggestion = suggestionId;
    this.emit();
  }

  closeDialog(): void {
    this.openSuggestion = null;
    this.emit();
  }

  snapshot(): ViewStateSnapshot {
    return {
      mode: this.mode,
      focusNode: this.focusNode,
      selectedNode: this.selectedNode,
      markedNodes: [...this.markedNodes].sort(),
      openSuggestion: this.openSuggestion,
    };
  }
}
